"""Exact linear algebra over the prime field GF(p).

Vectors and matrices are plain ``numpy`` int64 arrays whose entries are kept
reduced into ``[0, p)``; the field travels alongside them as a
:class:`FieldSpec`. Matrices act on row vectors (``v @ m``) unless a function
says otherwise, so the rows of a matrix are the images of the basis vectors.

Subspaces are stored by their canonical reduced row echelon basis, which makes
equality a plain entry-wise comparison and subspaces hashable.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatch

DTYPE = np.int64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@lru_cache(maxsize=None)
def _inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=DTYPE)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    table.flags.writeable = False
    return table


class FieldSpec:
    """The prime field GF(p), 2 <= p <= 97."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if not 2 <= p <= 97 or not _is_prime(p):
            raise ValueError(f"p must be a prime in [2, 97], got {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (FieldSpec, (self.p,))

    @property
    def inverses(self) -> np.ndarray:
        return _inverse_table(self.p)

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inverses[a])

    def __call__(self, x) -> np.ndarray:
        return np.asarray(x, dtype=DTYPE) % self.p

    def elements(self) -> range:
        return range(self.p)


def as_field(f) -> FieldSpec:
    return f if isinstance(f, FieldSpec) else FieldSpec(f)


_FLOAT_EXACT = 2**52


def matmul(field: FieldSpec, a, b) -> np.ndarray:
    """``a @ b`` reduced mod p (broadcasting like ``numpy.matmul``).

    Inputs must already be reduced. The product goes through float64 BLAS
    whenever every partial sum is provably below 2**52, which keeps it exact.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    if (field.p - 1) ** 2 * max(inner, 1) < _FLOAT_EXACT:
        out = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.rint(out).astype(DTYPE) % field.p
    return np.matmul(a.astype(DTYPE), b.astype(DTYPE)) % field.p


def matrix_power(field: FieldSpec, m, e: int) -> np.ndarray:
    m = field(m)
    result = np.eye(m.shape[0], dtype=DTYPE)
    while e:
        if e & 1:
            result = matmul(field, result, m)
        e >>= 1
        if e:
            m = matmul(field, m, m)
    return result


def is_nilpotent_matrix(field: FieldSpec, m) -> bool:
    """A square matrix is nilpotent iff its ``size``-th power vanishes."""
    m = field(m)
    return not matrix_power(field, m, m.shape[0]).any()


def _rref_inplace(a: np.ndarray, p: int) -> list[int]:
    inv = _inverse_table(p)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def rref(field: FieldSpec, m) -> tuple[int, np.ndarray]:
    """Return ``(rank, canonical)`` where ``canonical`` is the reduced row
    echelon form of ``m`` with zero rows dropped."""
    a = field(np.array(m, dtype=DTYPE, ndmin=2, copy=True))
    if a.size == 0:
        return 0, np.zeros((0, a.shape[1]), dtype=DTYPE)
    pivots = _rref_inplace(a, field.p)
    return len(pivots), a[: len(pivots)].copy()


def pivot_columns(basis: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in basis]


def _null_basis(p: int, reduced: np.ndarray, ncols: int) -> np.ndarray:
    """Basis of ``{v : reduced @ v = 0}`` given a matrix in RREF."""
    pivots = pivot_columns(reduced)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=DTYPE)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(pivots):
            out[t, pc] = (-reduced[i, f]) % p
    return out


class Subspace:
    """A subspace of GF(p)^n held by its canonical echelon basis."""

    __slots__ = ("field", "ambient", "basis", "_pivots", "_key")

    def __init__(self, field: FieldSpec, ambient: int, basis: np.ndarray, *, _canonical=False):
        field = as_field(field)
        basis = np.asarray(basis, dtype=DTYPE).reshape(-1, ambient)
        if not _canonical:
            _, basis = rref(field, basis) if basis.shape[0] else (0, basis)
        basis = np.ascontiguousarray(basis)
        basis.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient", int(ambient))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_pivots", None)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    # construction helpers
    @classmethod
    def span(cls, field, vectors, ambient: int | None = None) -> Subspace:
        field = as_field(field)
        arr = np.asarray(vectors if len(vectors) else [], dtype=DTYPE)
        if ambient is None:
            ambient = arr.shape[-1]
        arr = arr.reshape(-1, ambient)
        return cls(field, ambient, arr)

    @classmethod
    def zero(cls, field, ambient: int) -> Subspace:
        return cls(field, ambient, np.zeros((0, ambient), dtype=DTYPE), _canonical=True)

    @classmethod
    def full(cls, field, ambient: int) -> Subspace:
        return cls(field, ambient, np.eye(ambient, dtype=DTYPE), _canonical=True)

    # basic data
    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    @property
    def pivots(self) -> list[int]:
        if self._pivots is None:
            object.__setattr__(self, "_pivots", pivot_columns(self.basis))
        return self._pivots

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def _check(self, other: Subspace) -> None:
        if self.ambient != other.ambient or self.field != other.field:
            raise AmbientMismatch(
                f"subspaces of {self.field}^{self.ambient} and {other.field}^{other.ambient}"
            )

    # lattice operations
    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace(self.field, self.ambient, np.vstack([self.basis, other.basis]))

    def __and__(self, other: Subspace) -> Subspace:
        self._check(other)
        if self.is_full():
            return other
        if other.is_full():
            return self
        return (self.annihilator() + other.annihilator()).annihilator()

    def __le__(self, other: Subspace) -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        return all(other.contains(v) for v in self.basis)

    def __ge__(self, other: Subspace) -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient == other.ambient
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        if self._key is None:
            object.__setattr__(
                self, "_key", hash((self.field.p, self.ambient, self.basis.tobytes()))
            )
        return self._key

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.field})"

    # membership and coordinates
    def reduce(self, v) -> np.ndarray:
        """Reduce vectors (rows) modulo this subspace; the result vanishes on
        every pivot column, so it is a canonical coset representative."""
        p = self.field.p
        v = np.array(v, dtype=DTYPE) % p
        single = v.ndim == 1
        v = v.reshape(-1, self.ambient)
        if self.dim:
            coeff = v[:, self.pivots]
            v = (v - coeff @ self.basis) % p
        return v[0] if single else v

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=DTYPE)
        if v.shape[-1] != self.ambient:
            raise AmbientMismatch(f"vector of length {v.shape[-1]} vs ambient {self.ambient}")
        return not self.reduce(v).any()

    def contains_all(self, vs) -> bool:
        vs = np.asarray(vs, dtype=DTYPE).reshape(-1, self.ambient)
        return not self.reduce(vs).any() if vs.shape[0] else True

    def coords(self, v) -> np.ndarray:
        """Coordinates of vectors in this subspace w.r.t. the canonical basis."""
        v = np.asarray(v, dtype=DTYPE) % self.field.p
        return v[..., self.pivots]

    def complement_coords(self) -> list[int]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def annihilator(self) -> Subspace:
        """Subspace of the dual (coordinate dual basis) vanishing on ``self``."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient)
        if self.is_full():
            return Subspace.zero(self.field, self.ambient)
        null = _null_basis(self.field.p, self.basis, self.ambient)
        return Subspace(self.field, self.ambient, null)

    def image(self, m) -> Subspace:
        """Image under the linear map ``v -> v @ m``."""
        m = np.asarray(m, dtype=DTYPE)
        if self.dim == 0:
            return Subspace.zero(self.field, m.shape[1])
        return Subspace(self.field, m.shape[1], matmul(self.field, self.basis, m))


def span(field, vectors, ambient: int | None = None) -> Subspace:
    return Subspace.span(field, vectors, ambient)


def kernel(field, m) -> Subspace:
    """``{v : m @ v = 0}`` (column convention)."""
    field = as_field(field)
    m = field(np.array(m, dtype=DTYPE, ndmin=2))
    ncols = m.shape[1]
    _, red = rref(field, m)
    if red.shape[0] == 0:
        return Subspace.full(field, ncols)
    return Subspace(field, ncols, _null_basis(field.p, red, ncols))


def left_kernel(field, m) -> Subspace:
    """``{v : v @ m = 0}``: the kernel of a map in row convention."""
    return kernel(field, np.asarray(m).T)


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def contains(a: Subspace, v) -> bool:
    return a.contains(v)


def equal(a: Subspace, b: Subspace) -> bool:
    a._check(b)
    return a == b


def annihilator(u: Subspace) -> Subspace:
    return u.annihilator()


def sum_all(spaces: Iterable[Subspace], field, ambient: int) -> Subspace:
    rows = [s.basis for s in spaces if s.dim]
    if not rows:
        return Subspace.zero(field, ambient)
    return Subspace(field, ambient, np.vstack(rows))


def unit_vector(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=DTYPE)
    v[i] = 1
    return v


def all_vectors(field: FieldSpec, basis: Sequence[np.ndarray]):
    """Yield every GF(p)-combination of ``basis`` rows (p**len(basis) vectors)."""
    basis = np.asarray(basis, dtype=DTYPE)
    k = basis.shape[0]
    if k == 0:
        yield np.zeros(basis.shape[1], dtype=DTYPE)
        return
    p = field.p
    coeffs = np.zeros(k, dtype=DTYPE)
    for _ in range(p**k):
        yield (coeffs @ basis) % p
        for i in range(k):
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
