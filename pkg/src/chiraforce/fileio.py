"""JSON/CSV input and output for the CLI.

All interchange files carry a "schema": 1 field.  Output is deterministic:
dictionary key order is fixed by construction, floats are always rendered
with 17 significant digits, and complex values appear as [re, im] pairs.

Input schemas
-------------
model:     {"schema": 1, "label": str, "ground_energy_eV": float,
            "states": [{"energy_eV": float, "mu_D": [3 floats],
                        "m_bar_bohr_magnetons": [3 floats],
                        "Q_au": [[3x3 floats]]}, ...]}
           Moments convert to SI on load (Debye, Bohr magneton, e*a0^2).
beam:      {"schema": 1, "kind": "gaussian"|"plane_wave", "wavelength_nm": float,
            "handedness": "L"|"R"|"linear", "linear_angle_deg": float (optional),
            "axis": [3 floats], "focus": [3 floats],
            "power_W": float, "waist_um": float   (gaussian)
            "intensity_W_m2": float               (plane_wave)}
tensor:    {"schema": 1, "rank": int, "components": [[re, im] x 3^rank],
            "unit_tag": str}
positions: {"schema": 1, "positions_m": [[x, y, z], ...]}
"""

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .constants import (BOHR_MAGNETON, DEBYE_TO_COULOMB_METER, EV_TO_JOULE,
                        QUADRUPOLE_AU_TO_SI)
from .errors import SchemaError
from .molecule import MolecularModel, TransitionState
from .radiation import GaussianProfile, PlaneWaveProfile, make_beam
from .tensor_core import CartesianTensor

SCHEMA_VERSION = 1
FLOAT_FORMAT = ".17g"


# ---------------------------------------------------------------------------
# deterministic serialization
# ---------------------------------------------------------------------------

def format_float(value):
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        raise SchemaError(f"non-finite float {value!r} cannot be serialized")
    return format(value, FLOAT_FORMAT)


def canonical_json(obj, indent=0):
    """Render a record as JSON text with fixed float formatting and key order."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f"{inner}{json.dumps(str(k))}: {canonical_json(v, indent + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        rendered = [canonical_json(v, indent + 1) for v in seq]
        if all(not isinstance(v, (dict, list, tuple)) for v in seq) and \
                sum(len(r) for r in rendered) < 72:
            return "[" + ", ".join(rendered) + "]"
        return "[\n" + ",\n".join(inner + r for r in rendered) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{format_float(obj.real)}, {format_float(obj.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    raise SchemaError(f"cannot serialize object of type {type(obj).__name__}")


def complex_pairs(array):
    """Flatten a complex array to row-major [re, im] pairs."""
    flat = np.asarray(array, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def write_text(text, out=None):
    if out is None:
        print(text)
    else:
        Path(out).write_text(text + "\n")


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------

def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _check_document(doc, path, kind):
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"{path}: expected \"schema\": {SCHEMA_VERSION} in {kind} file")


def _vector(doc, key, path, length=3, default=None):
    if key not in doc:
        if default is not None:
            return np.asarray(default, dtype=float)
        raise SchemaError(f"{path}: missing field {key!r}")
    try:
        arr = np.asarray(doc[key], dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: field {key!r} must be numeric") from None
    if arr.shape != (length,):
        raise SchemaError(f"{path}: field {key!r} must have length {length}")
    return arr


def _number(doc, key, path, default=None):
    if key not in doc:
        if default is not None:
            return float(default)
        raise SchemaError(f"{path}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise SchemaError(f"{path}: field {key!r} must be a number")
    return float(value)


def load_model(path):
    """Read a molecular model file and convert moments to SI."""
    doc = _read_json(path)
    _check_document(doc, path, "model")
    label = doc.get("label", Path(path).stem)
    ground = _number(doc, "ground_energy_eV", path, default=0.0) * EV_TO_JOULE
    raw_states = doc.get("states")
    if not isinstance(raw_states, list) or not raw_states:
        raise SchemaError(f"{path}: field 'states' must be a non-empty list")
    states = []
    for n, entry in enumerate(raw_states):
        where = f"{path}: states[{n}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where} must be an object")
        energy = _number(entry, "energy_eV", where) * EV_TO_JOULE
        mu = _vector(entry, "mu_D", where, default=[0.0, 0.0, 0.0]) * DEBYE_TO_COULOMB_METER
        m_bar = _vector(entry, "m_bar_bohr_magnetons", where,
                        default=[0.0, 0.0, 0.0]) * BOHR_MAGNETON
        q_raw = entry.get("Q_au", [[0.0] * 3] * 3)
        try:
            q = np.asarray(q_raw, dtype=float)
        except (TypeError, ValueError):
            raise SchemaError(f"{where}: field 'Q_au' must be numeric") from None
        if q.shape != (3, 3):
            raise SchemaError(f"{where}: field 'Q_au' must be a 3x3 matrix")
        states.append(TransitionState(energy=energy, mu=mu, m_bar=m_bar,
                                      quadrupole=q * QUADRUPOLE_AU_TO_SI))
    return MolecularModel(label=label, ground_energy=ground, states=tuple(states))


def load_beam(path, profile_override=None):
    """Read a beam file; returns (profile, BeamMode).

    `profile_override` may name a second file whose profile fields replace
    the beam file's.
    """
    doc = _read_json(path)
    _check_document(doc, path, "beam")
    if profile_override is not None:
        override = _read_json(profile_override)
        _check_document(override, profile_override, "profile")
        doc = {**doc, **{k: v for k, v in override.items() if k != "schema"}}

    wavelength = _number(doc, "wavelength_nm", path) * 1e-9
    if wavelength <= 0:
        raise SchemaError(f"{path}: wavelength_nm must be positive")
    handedness = doc.get("handedness", "linear")
    if handedness not in ("L", "R", "linear"):
        raise SchemaError(f"{path}: handedness must be 'L', 'R' or 'linear'")
    angle = math.radians(_number(doc, "linear_angle_deg", path, default=0.0))
    axis = _vector(doc, "axis", path, default=[0.0, 0.0, 1.0])
    focus = _vector(doc, "focus", path, default=[0.0, 0.0, 0.0])

    kind = doc.get("kind", "gaussian")
    if kind == "gaussian":
        profile = GaussianProfile(waist=_number(doc, "waist_um", path) * 1e-6,
                                  power=_number(doc, "power_W", path),
                                  axis=axis, focus=focus)
    elif kind == "plane_wave":
        profile = PlaneWaveProfile(intensity=_number(doc, "intensity_W_m2", path))
    else:
        raise SchemaError(f"{path}: kind must be 'gaussian' or 'plane_wave'")

    beam = make_beam(wavelength, handedness=handedness, axis=axis, angle=angle)
    return profile, beam


def load_tensor(path):
    doc = _read_json(path)
    _check_document(doc, path, "tensor")
    rank = doc.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or not 0 <= rank <= 6:
        raise SchemaError(f"{path}: field 'rank' must be an integer in 0..6")
    comps = doc.get("components")
    if not isinstance(comps, list) or len(comps) != 3**rank:
        raise SchemaError(f"{path}: 'components' must list 3^rank = {3**rank} [re, im] pairs")
    flat = []
    for n, pair in enumerate(comps):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                           for x in pair)):
            raise SchemaError(f"{path}: components[{n}] must be a [re, im] pair")
        flat.append(complex(pair[0], pair[1]))
    unit_tag = doc.get("unit_tag", "")
    if not isinstance(unit_tag, str):
        raise SchemaError(f"{path}: 'unit_tag' must be a string")
    return CartesianTensor.from_flat(rank, flat, unit_tag)


def load_positions(path):
    doc = _read_json(path)
    _check_document(doc, path, "positions")
    raw = doc.get("positions_m")
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{path}: field 'positions_m' must be a non-empty list")
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: positions must be numeric") from None
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise SchemaError(f"{path}: positions_m must be a list of [x, y, z] triples")
    return arr


# ---------------------------------------------------------------------------
# output records
# ---------------------------------------------------------------------------

def tensor_record(t):
    return {"schema": SCHEMA_VERSION, "rank": t.rank,
            "components": complex_pairs(t.components), "unit_tag": t.unit_tag}


def average_result_record(result):
    record = {"schema": SCHEMA_VERSION,
              "rank": result.rank,
              "method": result.method_tag,
              "components": complex_pairs(result.averaged_tensor.components),
              "coefficients": (None if result.coefficients is None
                               else [[float(c.real), float(c.imag)]
                                     for c in result.coefficients]),
              "unit_tag": result.averaged_tensor.unit_tag}
    if result.standard_error is not None:
        record["standard_error"] = [float(x.real) for x in
                                    result.standard_error.components.reshape(-1)]
        record["n_samples"] = result.n_samples
    return record


def energy_shift_record(shift, inputs):
    return {"schema": SCHEMA_VERSION,
            "inputs": inputs,
            "part_alpha": shift.part_alpha,
            "part_G": shift.part_g,
            "part_A": shift.part_a,
            "total": shift.total,
            "residual_imag": shift.residual_imag}


def force_record(position, result, shift):
    return {"position_m": [float(x) for x in position],
            "force_N": [float(x) for x in result.force],
            "from_grad_w_N": [float(x) for x in result.from_grad_w],
            "from_grad_h_N": [float(x) for x in result.from_grad_h],
            "energy_shift_J": shift.total,
            "part_alpha": shift.part_alpha,
            "part_G": shift.part_g,
            "part_A": shift.part_a,
            "residual_imag": shift.residual_imag}


FORCE_CSV_COLUMNS = ("x_m", "y_m", "z_m", "Fx_N", "Fy_N", "Fz_N",
                     "Fx_grad_w_N", "Fy_grad_w_N", "Fz_grad_w_N",
                     "Fx_grad_h_N", "Fy_grad_h_N", "Fz_grad_h_N",
                     "energy_shift_J")


def force_csv(records):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FORCE_CSV_COLUMNS)
    for rec in records:
        row = (rec["position_m"] + rec["force_N"] + rec["from_grad_w_N"]
               + rec["from_grad_h_N"] + [rec["energy_shift_J"]])
        writer.writerow(format_float(x) for x in row)
    return buffer.getvalue().rstrip("\n")


SWEEP_CSV_COLUMNS = ("d_m", "trace_alpha", "trace_g_bar", "chiral_force_N",
                     "total_force_N")


def sweep_csv(table):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_CSV_COLUMNS)
    for row in table.rows:
        writer.writerow(format_float(x) for x in
                        (row.d, row.trace_alpha, row.trace_g_bar,
                         row.chiral_force, row.total_force))
    return buffer.getvalue().rstrip("\n")


def sweep_record(table):
    return {"schema": SCHEMA_VERSION,
            "rows": [{"d_m": r.d,
                      "trace_alpha": r.trace_alpha,
                      "trace_g_bar": r.trace_g_bar,
                      "chiral_force_N": r.chiral_force,
                      "total_force_N": r.total_force} for r in table.rows],
            "loglog_slope": table.loglog_slope}


def estimate_record(report):
    return {"schema": SCHEMA_VERSION,
            "d_m": report.d,
            "trace_alpha": report.trace_alpha,
            "trace_G_over_c": report.trace_g_over_c,
            "ratio": report.ratio,
            "reference_force_ratio": report.reference_force_ratio}
