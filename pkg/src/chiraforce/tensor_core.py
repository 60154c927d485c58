"""Dense complex Cartesian tensors over 3D space, ranks 0 through 6.

Components are stored as numpy complex arrays of shape (3,)*rank in row-major
index order, indices running 0..2.  Rotations act on every index:

    T'_{i'j'...} = R_{i'i} R_{j'j} ... T_{ij...}

The module also builds the isotropic (rotation-invariant) tensor bases of
ranks 2 to 5, which are the backbone of orientation averaging: rank 2 has the
Kronecker delta, rank 3 the Levi-Civita symbol, rank 4 the three products of
two deltas, and rank 5 the six independent epsilon-delta products.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InputDomainError
from .rational import as_exact

MAX_RANK = 6

ISOTROPIC_MEMBER_COUNTS = {2: 1, 3: 1, 4: 3, 5: 6}

# rank-4 members: delta pairs over the three pairings of indices (0,1,2,3)
_RANK4_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))

# rank-5 members: epsilon on the index triples containing index 0, delta on
# the remaining pair; these six span the 6-dimensional isotropic space
_RANK5_TRIPLES = tuple(t for t in itertools.combinations(range(5), 3) if 0 in t)


@dataclass(frozen=True)
class CartesianTensor:
    """Complex rank-r tensor (r <= 6) with a free-form unit annotation."""

    components: np.ndarray
    unit_tag: str = ""

    def __post_init__(self):
        arr = np.asarray(self.components, dtype=complex)
        if arr.ndim > MAX_RANK or arr.shape != (3,) * arr.ndim:
            raise InputDomainError(
                f"tensor components must have shape (3,)*rank with rank <= {MAX_RANK}, "
                f"got shape {arr.shape}")
        object.__setattr__(self, "components", arr)

    @property
    def rank(self):
        return self.components.ndim

    @classmethod
    def from_flat(cls, rank, flat, unit_tag=""):
        """Build from a row-major flat component list of length 3**rank."""
        flat = np.asarray(flat, dtype=complex)
        if flat.size != 3**rank:
            raise InputDomainError(
                f"rank-{rank} tensor needs {3**rank} components, got {flat.size}")
        return cls(flat.reshape((3,) * rank), unit_tag)

    def __add__(self, other):
        self._require_same_rank(other)
        return CartesianTensor(self.components + other.components, self.unit_tag)

    def __sub__(self, other):
        self._require_same_rank(other)
        return CartesianTensor(self.components - other.components, self.unit_tag)

    def __mul__(self, factor):
        return CartesianTensor(self.components * complex(factor), self.unit_tag)

    __rmul__ = __mul__

    def __neg__(self):
        return CartesianTensor(-self.components, self.unit_tag)

    def _require_same_rank(self, other):
        if self.rank != other.rank:
            raise InputDomainError(f"rank mismatch: {self.rank} vs {other.rank}")


@dataclass(frozen=True)
class IsotropicBasis:
    """Rotation-invariant basis tensors of a given rank."""

    rank: int
    members: tuple = field(default_factory=tuple)


def tensor(components, unit_tag=""):
    """Coercing constructor: accepts nested lists or arrays of any rank."""
    return CartesianTensor(np.asarray(components, dtype=complex), unit_tag)


def kronecker_delta():
    """The rank-2 identity tensor delta_ij."""
    return CartesianTensor(np.eye(3, dtype=complex))


def _levi_civita_array():
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return eps


def levi_civita():
    """The rank-3 fully antisymmetric tensor with eps_012 = +1."""
    return CartesianTensor(_levi_civita_array().astype(complex))


def outer_product(a, b):
    """Tensor (outer) product; result rank is rank(a) + rank(b) <= 6."""
    if a.rank + b.rank > MAX_RANK:
        raise InputDomainError(
            f"rank overflow in outer product: {a.rank} + {b.rank} = "
            f"{a.rank + b.rank} exceeds {MAX_RANK}")
    comps = np.multiply.outer(a.components, b.components)
    unit = " ".join(u for u in (a.unit_tag, b.unit_tag) if u)
    return CartesianTensor(comps, unit)


def full_contraction(a, b):
    """Sum over all index tuples of a*b (no implicit conjugation)."""
    if a.rank != b.rank:
        raise InputDomainError(
            f"full contraction requires equal ranks, got {a.rank} and {b.rank}")
    return complex(np.sum(a.components * b.components))


def rotate(t, rotation):
    """Apply a rotation matrix to every index of the tensor."""
    rotation = np.asarray(rotation, dtype=float)
    if rotation.shape != (3, 3):
        raise InputDomainError("rotation must be a 3x3 matrix")
    comps = t.components
    for axis in range(t.rank):
        comps = np.tensordot(rotation, comps, axes=([1], [axis]))
        comps = np.moveaxis(comps, 0, axis)
    return CartesianTensor(comps, t.unit_tag)


def _rank4_member_arrays():
    members = []
    for (p, q), (r, s) in _RANK4_PAIRINGS:
        arr = np.zeros((3,) * 4)
        for idx in itertools.product(range(3), repeat=4):
            arr[idx] = float(idx[p] == idx[q] and idx[r] == idx[s])
        members.append(arr)
    return members


def _rank5_member_arrays():
    eps = _levi_civita_array()
    members = []
    for triple in _RANK5_TRIPLES:
        pair = [i for i in range(5) if i not in triple]
        arr = np.zeros((3,) * 5)
        for idx in itertools.product(range(3), repeat=5):
            arr[idx] = (eps[idx[triple[0]], idx[triple[1]], idx[triple[2]]]
                        * float(idx[pair[0]] == idx[pair[1]]))
        members.append(arr)
    return members


def _member_arrays(rank):
    if rank == 2:
        return [np.eye(3)]
    if rank == 3:
        return [_levi_civita_array()]
    if rank == 4:
        return _rank4_member_arrays()
    if rank == 5:
        return _rank5_member_arrays()
    raise InputDomainError(f"isotropic basis unsupported for rank {rank} (need 2..5)")


def isotropic_basis(rank):
    """Isotropic tensor basis of the given rank (2 to 5).

    Parameters
    ----------
    rank : int
        Tensor rank; member counts are 1, 1, 3, 6 for ranks 2, 3, 4, 5.

    Returns
    -------
    IsotropicBasis
        Members as CartesianTensors with entries in {-1, 0, +1}.  Every
        member is a fixed point of the rotation action on all indices.
    """
    members = tuple(CartesianTensor(arr.astype(complex)) for arr in _member_arrays(rank))
    return IsotropicBasis(rank=rank, members=members)


def isotropic_basis_exact(rank):
    """Isotropic basis members as object arrays of exact Fractions."""
    return [as_exact(arr) for arr in _member_arrays(rank)]
