"""Uniform orientation (SO(3)) averaging of Cartesian tensors, ranks 2 to 5.

Analytic path
-------------
Averaging over all orientations is the orthogonal projection onto the
isotropic subspace of the given rank.  The projection coefficients solve the
Gram system

    <B_a, B_b> c_b = <B_a, T>

over the isotropic basis members B_a of `tensor_core`.  The Gram matrices are
formed and inverted once per rank in exact rational arithmetic (the rank-5
system is poorly conditioned enough in floating point to matter), then cached
as float matrices for the hot path.

Monte Carlo path
----------------
The independent numerical oracle.  Rotations are sampled uniformly on SO(3)
by drawing 4-component standard-normal vectors and normalizing them to unit
quaternions (the normalized-Gaussian scheme; uniform on the 3-sphere, hence
uniform in the Haar measure).  Samples are organized in fixed-size blocks of
BLOCK_SIZE; block b draws from a PCG64 generator seeded with
SeedSequence([master_seed, b]).  Results therefore depend only on the master
seed and the sample count, never on how blocks are scheduled across workers,
and block partial results are always reduced in block order.

Standard errors are per component, counting real and imaginary variance
together.  For large sample counts the implementation averages the rank-r
rotation-power operator per block and estimates errors from the spread of
block means (equivalent estimator, dramatically cheaper); small runs keep the
classic per-sample estimator.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InputDomainError
from .rational import as_exact, exact_contraction, exact_outer, invert_exact, solve_exact
from .tensor_core import (CartesianTensor, full_contraction, isotropic_basis,
                          isotropic_basis_exact, outer_product, tensor, MAX_RANK)

BLOCK_SIZE = 10_000
# below this sample count the per-sample path is used (better error dof)
DIRECT_PATH_MAX = 50_000

AVERAGEABLE_RANKS = (2, 3, 4, 5)


@dataclass(frozen=True)
class AverageResult:
    """Orientation average of a tensor.

    `averaged_tensor` is the lab-frame mean; for the analytic method it is an
    exact linear combination of the isotropic basis members with the given
    `coefficients`.  For the Monte Carlo method the tensor is the raw sample
    mean (kept unprojected so it stays an independent oracle), `coefficients`
    hold its least-squares isotropic decomposition when the rank supports
    one, and `standard_error` gives the per-component standard error of the
    mean.
    """

    rank: int
    averaged_tensor: CartesianTensor
    coefficients: tuple
    method_tag: str
    standard_error: CartesianTensor = None
    n_samples: int = None


@lru_cache(maxsize=None)
def _gram_exact(rank):
    members = isotropic_basis_exact(rank)
    return [[exact_contraction(a, b) for b in members] for a in members]


@lru_cache(maxsize=None)
def gram_inverse_exact(rank):
    """Exact Fraction inverse of the isotropic Gram matrix for this rank."""
    return tuple(tuple(row) for row in invert_exact(_gram_exact(rank)))


@lru_cache(maxsize=None)
def _gram_inverse_float(rank):
    return np.array([[float(x) for x in row] for row in gram_inverse_exact(rank)])


def projection_coefficients(t):
    """Isotropic-basis weights of the orientation average of `t`."""
    basis = isotropic_basis(t.rank)
    overlaps = np.array([full_contraction(member, t) for member in basis.members])
    return _gram_inverse_float(t.rank) @ overlaps


def rotational_average(t):
    """Analytic orientation average of a rank-2..5 tensor.

    Returns an AverageResult whose tensor is the projection of `t` onto the
    isotropic subspace; for rank 2 this is (trace/3) * delta.
    """
    if t.rank not in AVERAGEABLE_RANKS:
        raise InputDomainError(
            f"rotational average supports ranks {AVERAGEABLE_RANKS}, got rank {t.rank}")
    basis = isotropic_basis(t.rank)
    coeffs = projection_coefficients(t)
    comps = np.zeros((3,) * t.rank, dtype=complex)
    for c, member in zip(coeffs, basis.members):
        comps += c * member.components
    return AverageResult(rank=t.rank,
                         averaged_tensor=CartesianTensor(comps, t.unit_tag),
                         coefficients=tuple(coeffs),
                         method_tag="analytic")


def rotational_average_exact(t):
    """Projection coefficients of the average as exact (re, im) Fraction pairs.

    The float components of `t` convert exactly to rationals, so the returned
    coefficients are the exact average of the given binary-float tensor.
    """
    if t.rank not in AVERAGEABLE_RANKS:
        raise InputDomainError(
            f"rotational average supports ranks {AVERAGEABLE_RANKS}, got rank {t.rank}")
    members = isotropic_basis_exact(t.rank)
    gram = _gram_exact(t.rank)
    re = as_exact(t.components.real)
    im = as_exact(t.components.imag)
    rhs = [[exact_contraction(m, re), exact_contraction(m, im)] for m in members]
    solved = solve_exact(gram, rhs)
    return [(row[0], row[1]) for row in solved]


def averaged_observable(mol_tensor, field_vectors):
    """Orientation-averaged contraction of a molecular tensor with lab vectors.

    Contracts the analytic rotational average of `mol_tensor` with the outer
    product of the field vectors (one vector per tensor index, in order).
    """
    vectors = [np.asarray(v, dtype=complex) for v in field_vectors]
    if mol_tensor.rank != len(vectors):
        raise InputDomainError(
            f"rank-{mol_tensor.rank} tensor needs {mol_tensor.rank} field vectors, "
            f"got {len(vectors)}")
    avg = rotational_average(mol_tensor).averaged_tensor
    return full_contraction(avg, _outer_vectors(vectors))


def averaged_observable_exact(components_exact, vectors_exact):
    """Exact-rational averaged observable for real rational inputs.

    `components_exact` is an object array of Fractions (the molecular tensor),
    `vectors_exact` a list of length-3 Fraction arrays.  Returns a Fraction.
    """
    rank = components_exact.ndim
    if rank not in AVERAGEABLE_RANKS:
        raise InputDomainError(f"unsupported rank {rank} for exact average")
    members = isotropic_basis_exact(rank)
    gram = _gram_exact(rank)
    rhs = [[exact_contraction(m, components_exact)] for m in members]
    coeffs = [row[0] for row in solve_exact(gram, rhs)]
    field = exact_outer(*vectors_exact)
    total = Fraction(0)
    for c, m in zip(coeffs, members):
        total += c * exact_contraction(m, field)
    return total


def isotropic_member_observables_exact(rank, vectors_exact):
    """Exact contraction of every isotropic basis member with the vector set.

    When all of these vanish, the averaged observable vanishes identically
    for every molecular tensor of that rank.
    """
    field = exact_outer(*vectors_exact)
    return [exact_contraction(m, field) for m in isotropic_basis_exact(rank)]


def _outer_vectors(vectors):
    out = tensor(vectors[0])
    for v in vectors[1:]:
        out = outer_product(out, tensor(v))
    return out


# ---------------------------------------------------------------------------
# Monte Carlo machinery
# ---------------------------------------------------------------------------

def sample_rotations(rng, n):
    """Uniform SO(3) rotation matrices drawn from an existing Generator.

    Normalized 4-component standard-normal draws are uniform unit
    quaternions, hence Haar-uniform rotations.
    """
    q = rng.standard_normal((n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return _quaternions_to_matrices(q)


def random_rotations(n, seed, block_index=0):
    """Uniform SO(3) rotation matrices for one seeded sample block."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, block_index])))
    return sample_rotations(rng, n)


def _quaternions_to_matrices(q):
    w, x, y, z = q.T
    m = np.empty((q.shape[0], 3, 3))
    m[:, 0, 0] = 1 - 2 * (y * y + z * z)
    m[:, 0, 1] = 2 * (x * y - z * w)
    m[:, 0, 2] = 2 * (x * z + y * w)
    m[:, 1, 0] = 2 * (x * y + z * w)
    m[:, 1, 1] = 1 - 2 * (x * x + z * z)
    m[:, 1, 2] = 2 * (y * z - x * w)
    m[:, 2, 0] = 2 * (x * z - y * w)
    m[:, 2, 1] = 2 * (y * z + x * w)
    m[:, 2, 2] = 1 - 2 * (x * x + y * y)
    return m


def _block_plan(n_samples):
    sizes = [BLOCK_SIZE] * (n_samples // BLOCK_SIZE)
    if n_samples % BLOCK_SIZE:
        sizes.append(n_samples % BLOCK_SIZE)
    return sizes


def _block_operator(rotations, rank):
    """Mean of the rank-r rotation power operator over a batch of rotations.

    Returns a (3**r, 3**r) float matrix M with M @ vec(T) = mean_k vec(R_k T).
    Built from Kronecker splits so the per-sample cost stays a dense GEMM.
    """
    m = rotations.shape[0]
    if rank == 0:
        return np.ones((1, 1))
    v1 = rotations.reshape(m, 9)
    if rank == 1:
        return v1.mean(axis=0).reshape(3, 3)
    v2 = np.einsum("np,nq->npq", v1, v1).reshape(m, 81)
    if rank in (2, 3, 4):
        left, right = {2: (v1, v1), 3: (v2, v1), 4: (v2, v2)}[rank]
    else:
        v3 = np.einsum("np,nq->npq", v2, v1).reshape(m, 729)
        left, right = {5: (v2, v3), 6: (v3, v3)}[rank]
    flat = (left.T @ right) / m
    # axes come out factor-interleaved (A0,a0,A1,a1,...); regroup to
    # (A0..A_{r-1}, a0..a_{r-1})
    interleaved = flat.reshape((3,) * (2 * rank))
    perm = list(range(0, 2 * rank, 2)) + list(range(1, 2 * rank, 2))
    return interleaved.transpose(perm).reshape(3**rank, 3**rank)


_DIRECT_SUBSCRIPTS = {
    1: "nAa,a->nA",
    2: "nAa,nBb,ab->nAB",
    3: "nAa,nBb,nCc,abc->nABC",
    4: "nAa,nBb,nCc,nDd,abcd->nABCD",
    5: "nAa,nBb,nCc,nDd,nEe,abcde->nABCDE",
    6: "nAa,nBb,nCc,nDd,nEe,nFf,abcdef->nABCDEF",
}


def _rotated_samples(rotations, components):
    """Per-sample rotated copies of a tensor (leading sample axis)."""
    rank = components.ndim
    if rank == 0:
        return np.broadcast_to(components, (rotations.shape[0],))
    operands = [rotations] * rank + [components]
    return np.einsum(_DIRECT_SUBSCRIPTS[rank], *operands, optimize=True)


def so3_sample_average(t, n_samples, seed, workers=1):
    """Monte Carlo orientation average over uniformly sampled rotations.

    Parameters
    ----------
    t : CartesianTensor
        Tensor of rank <= 6.
    n_samples : int
        Number of rotations (>= 1).
    seed : int
        Master seed; fixed seed and count give bitwise-identical results.
    workers : int
        Sample blocks may be evaluated by up to this many threads; the
        result is independent of the worker count.

    Returns
    -------
    AverageResult
        Raw sample mean, per-component standard errors, and (for ranks 2..5)
        the least-squares isotropic decomposition of the mean.
    """
    if n_samples < 1:
        raise InputDomainError("n_samples must be >= 1")
    if t.rank > MAX_RANK:
        raise InputDomainError(f"rank {t.rank} exceeds {MAX_RANK}")
    sizes = _block_plan(n_samples)

    if n_samples <= DIRECT_PATH_MAX:
        mean, se = _mc_direct(t.components, sizes, seed, workers)
    else:
        mean, se = _mc_block_means(t.components, sizes, seed, workers)

    coeffs = None
    if t.rank in AVERAGEABLE_RANKS:
        mean_tensor = CartesianTensor(mean, t.unit_tag)
        coeffs = tuple(projection_coefficients(mean_tensor))
    return AverageResult(rank=t.rank,
                         averaged_tensor=CartesianTensor(mean, t.unit_tag),
                         coefficients=coeffs,
                         method_tag="monte_carlo",
                         standard_error=CartesianTensor(se.astype(complex), t.unit_tag),
                         n_samples=n_samples)


def _run_blocks(fn, n_blocks, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(n_blocks)))
    return [fn(b) for b in range(n_blocks)]


def _mc_direct(components, sizes, seed, workers):
    """Per-sample mean and standard error (small sample counts)."""
    n = sum(sizes)

    def one_block(b):
        rotations = random_rotations(sizes[b], seed, block_index=b)
        samples = _rotated_samples(rotations, components)
        s1 = samples.sum(axis=0)
        s2 = (samples.real**2 + samples.imag**2).sum(axis=0)
        return s1, s2

    results = _run_blocks(one_block, len(sizes), workers)
    total = np.zeros(components.shape, dtype=complex)
    total_sq = np.zeros(components.shape, dtype=float)
    for s1, s2 in results:
        total = total + s1
        total_sq = total_sq + s2
    mean = total / n
    if n > 1:
        var = np.maximum(total_sq - n * (np.abs(mean) ** 2), 0.0) / (n - 1)
        se = np.sqrt(var / n)
    else:
        se = np.zeros(components.shape)
    return mean, se


def _combine_block_means(block_means, sizes):
    """Weighted mean of per-block means plus the batch-means standard error."""
    n = sum(sizes)
    weights = np.asarray(sizes, dtype=float)
    shape = np.asarray(block_means[0]).shape
    mean = np.zeros(shape, dtype=complex)
    for w, bm in zip(weights, block_means):
        mean = mean + (w / n) * bm
    if len(sizes) > 1:
        spread = np.zeros(shape, dtype=float)
        for w, bm in zip(weights, block_means):
            spread += w * np.abs(bm - mean) ** 2
        se = np.sqrt(spread / (len(sizes) - 1) / n)
    else:
        se = np.zeros(shape)
    return mean, se


def _mc_block_means(components, sizes, seed, workers):
    """Blocked mean and batch-means standard error (large sample counts)."""
    rank = components.ndim
    flat = components.reshape(-1)

    def one_block(b):
        rotations = random_rotations(sizes[b], seed, block_index=b)
        op = _block_operator(rotations, rank)
        return (op @ flat).reshape(components.shape)

    block_means = _run_blocks(one_block, len(sizes), workers)
    return _combine_block_means(block_means, sizes)


def so3_sample_average_batch(tensors, n_samples, seed, workers=1):
    """Shared-rotation Monte Carlo averages of several same-rank tensors.

    Equivalent to calling `so3_sample_average` on each tensor with the same
    seed (identical results), but the per-block rotation operators are built
    once, which is what makes large-sample sweeps over many tensors cheap.
    """
    tensors = list(tensors)
    if not tensors:
        return []
    rank = tensors[0].rank
    if any(t.rank != rank for t in tensors):
        raise InputDomainError("batch averaging requires tensors of equal rank")
    if n_samples <= DIRECT_PATH_MAX:
        return [so3_sample_average(t, n_samples, seed, workers=workers) for t in tensors]
    sizes = _block_plan(n_samples)
    flats = [t.components.reshape(-1) for t in tensors]

    def one_block(b):
        rotations = random_rotations(sizes[b], seed, block_index=b)
        op = _block_operator(rotations, rank)
        return [(op @ flat).reshape((3,) * rank) for flat in flats]

    per_block = _run_blocks(one_block, len(sizes), workers)
    results = []
    for i, t in enumerate(tensors):
        mean, se = _combine_block_means([blocks[i] for blocks in per_block], sizes)
        coeffs = None
        if rank in AVERAGEABLE_RANKS:
            coeffs = tuple(projection_coefficients(CartesianTensor(mean, t.unit_tag)))
        results.append(AverageResult(
            rank=rank,
            averaged_tensor=CartesianTensor(mean, t.unit_tag),
            coefficients=coeffs,
            method_tag="monte_carlo",
            standard_error=CartesianTensor(se.astype(complex), t.unit_tag),
            n_samples=n_samples))
    return results


def so3_observable_mc(mol_tensor, field_vectors, n_samples, seed, workers=1):
    """Monte Carlo estimate of an averaged observable with its standard error.

    Evaluates the contraction of the sampled orientation average with the
    outer product of the field vectors, block by block, and returns
    (mean, standard_error) for the resulting scalar.
    """
    vectors = [np.asarray(v, dtype=complex) for v in field_vectors]
    if mol_tensor.rank != len(vectors):
        raise InputDomainError("one field vector per tensor index is required")
    field = _outer_vectors(vectors).components.reshape(-1)
    flat = mol_tensor.components.reshape(-1)
    sizes = _block_plan(n_samples)
    n = sum(sizes)

    def one_block(b):
        rotations = random_rotations(sizes[b], seed, block_index=b)
        if n <= DIRECT_PATH_MAX:
            samples = _rotated_samples(rotations, mol_tensor.components)
            vals = samples.reshape(sizes[b], -1) @ field
            return vals.sum(), (vals.real**2 + vals.imag**2).sum(), sizes[b]
        op = _block_operator(rotations, mol_tensor.rank)
        block_val = (op @ flat) @ field
        return block_val, None, sizes[b]

    results = _run_blocks(one_block, len(sizes), workers)
    if n <= DIRECT_PATH_MAX:
        s1 = sum(r[0] for r in results)
        s2 = sum(r[1] for r in results)
        mean = s1 / n
        if n > 1:
            var = max(s2 - n * abs(mean) ** 2, 0.0) / (n - 1)
            se = float(np.sqrt(var / n))
        else:
            se = 0.0
        return mean, se
    mean = sum((m_b / n) * val for val, _, m_b in results)
    if len(sizes) > 1:
        spread = sum(m_b * abs(val - mean) ** 2 for val, _, m_b in results)
        se = float(np.sqrt(spread / (len(sizes) - 1) / n))
    else:
        se = 0.0
    return mean, se
