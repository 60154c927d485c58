"""Command-line front end.

Subcommands
-----------
avg       tensor file -> orientation average (analytic or Monte Carlo) as JSON
energy    beam + model (+ optional positions) -> energy shift record(s)
force     beam + model + positions -> gradient force table (JSON or CSV)
estimate  molecular dimension or sweep -> trace-ratio / scaling report
verify    run the full claim registry; exit 0 iff everything passes

Exit codes: 0 success, 1 verification failure, 2 usage or file-format error,
3 physically invalid input (for example a near-resonant frequency).
"""

import argparse
import sys

import numpy as np

from . import __version__
from .errors import InputDomainError, SchemaError
from .estimates import estimate_ratio, scaling_sweep
from .fileio import (average_result_record, canonical_json, energy_shift_record,
                     estimate_record, force_csv, force_record, load_beam,
                     load_model, load_positions, load_tensor, sweep_csv,
                     sweep_record, write_text)
from .force_engine import energy_shift, gradient_force
from .molecule import build_response_tensors
from .radiation import intensity_at
from .rot_avg import rotational_average, rotational_average_exact, so3_sample_average
from .verify import VerifyConfig, run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INVALID_INPUT = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chiraforce",
        description=("Rotationally averaged optical energy shifts and "
                     "chirality-discriminating gradient forces on model molecules"))
    parser.add_argument("--version", action="version", version=f"chiraforce {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    avg = sub.add_parser("avg", help="orientation average of a tensor file")
    avg.add_argument("--tensor", required=True, metavar="FILE")
    avg.add_argument("--method", choices=("analytic", "mc"), default="analytic")
    avg.add_argument("--samples", type=int, default=20_000)
    avg.add_argument("--seed", type=int, default=42)
    avg.add_argument("--exact", action="store_true",
                     help="also report exact-rational coefficients (analytic only)")
    avg.add_argument("--out", metavar="FILE")

    energy = sub.add_parser("energy", help="orientation-averaged energy shift")
    energy.add_argument("--beam", required=True, metavar="FILE")
    energy.add_argument("--model", required=True, metavar="FILE")
    energy.add_argument("--profile", metavar="FILE",
                        help="optional profile file overriding the beam file's profile")
    energy.add_argument("--positions", metavar="FILE",
                        help="evaluate at these positions (default: the beam focus)")
    energy.add_argument("--out", metavar="FILE")

    force = sub.add_parser("force", help="gradient force at given positions")
    force.add_argument("--beam", required=True, metavar="FILE")
    force.add_argument("--model", required=True, metavar="FILE")
    force.add_argument("--profile", metavar="FILE")
    force.add_argument("--positions", required=True, metavar="FILE")
    force.add_argument("--format", choices=("json", "csv"), default="json")
    force.add_argument("--out", metavar="FILE")

    estimate = sub.add_parser("estimate", help="size-parameterized response estimates")
    group = estimate.add_mutually_exclusive_group(required=True)
    group.add_argument("--d-nm", type=float, metavar="X",
                       help="single molecular dimension in nm")
    group.add_argument("--sweep", metavar="a,b,c",
                       help="comma-separated dimensions in nm for a force sweep")
    estimate.add_argument("--format", choices=("json", "csv"), default="json")
    estimate.add_argument("--out", metavar="FILE")

    verify = sub.add_parser("verify", help="run the claim-verification registry")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--samples", type=int, default=20_000)
    verify.add_argument("--exact", action="store_true",
                        help="additionally require the exact-rational vanishing checks")
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--out", metavar="FILE")
    return parser


def _cmd_avg(args):
    t = load_tensor(args.tensor)
    if args.method == "analytic":
        result = rotational_average(t)
        record = average_result_record(result)
        if args.exact:
            exact = rotational_average_exact(t)
            record["exact_coefficients"] = [[str(re), str(im)] for re, im in exact]
    else:
        result = so3_sample_average(t, args.samples, args.seed)
        record = average_result_record(result)
        record["seed"] = args.seed
    write_text(canonical_json(record), args.out)
    return EXIT_OK


def _positions_or_focus(args, profile):
    if args.positions:
        return load_positions(args.positions)
    focus = getattr(profile, "focus", np.zeros(3))
    return np.asarray(focus, dtype=float).reshape(1, 3)


def _cmd_energy(args):
    profile, beam = load_beam(args.beam, args.profile)
    model = load_model(args.model)
    tensors = build_response_tensors(model, beam.omega)
    inputs = {"beam_file": args.beam, "model_file": args.model,
              "model_label": model.label, "handedness": beam.handedness_tag,
              "omega_rad_s": beam.omega}
    records = []
    for position in _positions_or_focus(args, profile):
        intensity, _ = intensity_at(profile, position)
        shift = energy_shift(beam, intensity, tensors)
        record = energy_shift_record(shift, inputs)
        record["position_m"] = [float(x) for x in position]
        record["intensity_W_m2"] = intensity
        records.append(record)
    payload = records[0] if len(records) == 1 else {"schema": 1, "shifts": records}
    write_text(canonical_json(payload), args.out)
    return EXIT_OK


def _cmd_force(args):
    profile, beam = load_beam(args.beam, args.profile)
    model = load_model(args.model)
    tensors = build_response_tensors(model, beam.omega)
    positions = load_positions(args.positions)
    records = []
    for position in positions:
        result = gradient_force(profile, beam, tensors, position)
        intensity, _ = intensity_at(profile, position)
        shift = energy_shift(beam, intensity, tensors)
        records.append(force_record(position, result, shift))
    if args.format == "csv":
        write_text(force_csv(records), args.out)
    else:
        payload = {"schema": 1,
                   "inputs": {"beam_file": args.beam, "model_file": args.model,
                              "model_label": model.label,
                              "handedness": beam.handedness_tag},
                   "forces": records}
        write_text(canonical_json(payload), args.out)
    return EXIT_OK


def _cmd_estimate(args):
    if args.d_nm is not None:
        report = estimate_ratio(args.d_nm * 1e-9)
        write_text(canonical_json(estimate_record(report)), args.out)
        return EXIT_OK
    try:
        values = [float(x) * 1e-9 for x in args.sweep.split(",") if x.strip()]
    except ValueError:
        raise SchemaError(f"--sweep expects comma-separated numbers, got {args.sweep!r}") from None
    table = scaling_sweep(values)
    if args.format == "csv":
        write_text(sweep_csv(table), args.out)
    else:
        write_text(canonical_json(sweep_record(table)), args.out)
    return EXIT_OK


def _cmd_verify(args):
    cfg = VerifyConfig(seed=args.seed, samples=args.samples, exact=args.exact,
                       workers=args.workers)
    report = run_verification(cfg)
    write_text(canonical_json(report), args.out)
    return EXIT_OK if report["all_passed"] else EXIT_VERIFY_FAILED


_COMMANDS = {
    "avg": _cmd_avg,
    "energy": _cmd_energy,
    "force": _cmd_force,
    "estimate": _cmd_estimate,
    "verify": _cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
