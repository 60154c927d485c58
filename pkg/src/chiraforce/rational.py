"""Exact rational arithmetic helpers (Fractions over numpy object arrays).

Used for the pieces of the averaging machinery where exactness matters: the
isotropic-basis Gram matrices, their inverses, and the "identically zero"
vanishing checks.  Tensors here are numpy arrays with dtype=object holding
`fractions.Fraction` entries; complex data is handled as separate real and
imaginary parts.
"""

from fractions import Fraction

import numpy as np

from .errors import InputDomainError


def as_exact(array):
    """Convert a real float/int array to an object array of exact Fractions.

    Floats convert exactly (every finite double is a dyadic rational).
    """
    arr = np.asarray(array)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(*arr.shape):
        entry = arr[idx]
        out[idx] = entry if isinstance(entry, Fraction) else Fraction(entry.item() if hasattr(entry, "item") else entry)
    return out


def exact_zeros(shape):
    out = np.empty(shape, dtype=object)
    out[...] = Fraction(0)
    return out


def exact_outer(*arrays):
    """Outer product of exact arrays (all entries Fractions)."""
    out = arrays[0]
    for arr in arrays[1:]:
        out = np.multiply.outer(out, arr)
    return out


def exact_contraction(a, b):
    """Full index contraction sum(a*b) of two same-shape exact arrays."""
    if a.shape != b.shape:
        raise InputDomainError(f"shape mismatch in exact contraction: {a.shape} vs {b.shape}")
    total = Fraction(0)
    for idx in np.ndindex(*a.shape):
        total += a[idx] * b[idx]
    return total


def solve_exact(matrix, rhs_columns):
    """Solve M X = B exactly by Gauss-Jordan elimination over Fractions.

    `matrix` is an n x n list of lists of Fractions; `rhs_columns` an n x m
    list of lists.  Returns the n x m solution as lists of Fractions.
    """
    n = len(matrix)
    m = len(rhs_columns[0])
    aug = [[Fraction(matrix[i][j]) for j in range(n)]
           + [Fraction(rhs_columns[i][j]) for j in range(m)]
           for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise InputDomainError("singular matrix in exact solve")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def invert_exact(matrix):
    """Exact inverse of a square Fraction matrix."""
    n = len(matrix)
    identity = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return solve_exact(matrix, identity)


def determinant_exact(matrix):
    """Exact determinant via fraction-free-ish Gaussian elimination."""
    n = len(matrix)
    work = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        det *= work[col][col]
        inv = Fraction(1) / work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                factor = work[r][col] * inv
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return det


def rational_circle_point(t):
    """Exact point (cos, sin) on the unit circle from rational parameter t.

    Uses the tangent half-angle parameterization ((1-t^2)/(1+t^2), 2t/(1+t^2)),
    which enumerates all rational points on the circle.
    """
    t = Fraction(t)
    denom = 1 + t * t
    return (1 - t * t) / denom, 2 * t / denom
