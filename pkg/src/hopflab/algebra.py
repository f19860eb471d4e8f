"""Finite-dimensional associative unital algebras given by structure constants.

``mult[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``; ``unit`` is the
coordinate vector of the identity. All subspace-valued results are
:class:`~hopflab.gfp.Subspace` objects in the algebra's coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gfp
from .errors import NotAnIdeal, NotCommutative, PreconditionError
from .gfp import DTYPE, FieldSpec, Subspace
from .report import VerificationReport

MAX_WITNESSES = 5


class Algebra:
    """Associative unital algebra over GF(p) held as a multiplication tensor."""

    def __init__(self, field, mult, unit):
        self.field = gfp.as_field(field)
        mult = self.field(mult)
        unit = self.field(unit)
        n = unit.shape[0]
        if mult.shape != (n, n, n):
            raise ValueError(f"mult tensor has shape {mult.shape}, expected {(n, n, n)}")
        mult.flags.writeable = False
        unit.flags.writeable = False
        self.mult = mult
        self.unit = unit
        self._flat = None

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    @property
    def p(self) -> int:
        return self.field.p

    def __repr__(self):
        return f"Algebra(dim={self.dim}, {self.field})"

    @property
    def flat(self) -> np.ndarray:
        """``mult`` reshaped to ``(n, n*n)`` for left contractions."""
        if self._flat is None:
            self._flat = self.mult.reshape(self.dim, self.dim * self.dim)
        return self._flat

    def multiply(self, a, b) -> np.ndarray:
        return multiply(a, b, self)

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of ``x -> a x`` in row convention (row j is ``a e_j``)."""
        n = self.dim
        return gfp.matmul(self.field, self.field(a), self.flat).reshape(n, n)

    def right_matrix(self, b) -> np.ndarray:
        """Matrix of ``x -> x b`` (row i is ``e_i b``)."""
        n = self.dim
        t = self.mult.transpose(1, 0, 2).reshape(n, n * n)
        return gfp.matmul(self.field, self.field(b), t).reshape(n, n)

    def power(self, a, e: int) -> np.ndarray:
        result = self.unit.copy()
        base = self.field(a)
        while e:
            if e & 1:
                result = self.multiply(result, base)
            e >>= 1
            if e:
                base = self.multiply(base, base)
        return result

    def multiply_rows(self, a, b) -> np.ndarray:
        """Row-wise products ``a[i] b[i]`` of two stacks of vectors."""
        f, n = self.field, self.dim
        a = f(np.atleast_2d(a))
        b = f(np.atleast_2d(b))
        t = gfp.matmul(f, a, self.flat).reshape(-1, n, n)  # [i, k, :] = a_i e_k
        return np.einsum("ik,ikz->iz", b, t) % f.p

    def power_rows(self, X, e: int) -> np.ndarray:
        """Row-wise powers ``X[i] ** e`` by repeated squaring."""
        base = self.field(np.atleast_2d(X))
        result = np.tile(self.unit, (base.shape[0], 1))
        while e:
            if e & 1:
                result = self.multiply_rows(result, base)
            e >>= 1
            if e:
                base = self.multiply_rows(base, base)
        return result

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.transpose(1, 0, 2)))

    def is_nilpotent_element(self, h) -> bool:
        """Nilpotency of ``h`` read off its left-multiplication matrix; the left
        regular representation is faithful, so this is exact."""
        return gfp.is_nilpotent_matrix(self.field, self.left_matrix(h))

    def frobenius_exponent(self) -> int:
        """Smallest m with p**m >= dim."""
        m = 0
        while self.p**m < self.dim:
            m += 1
        return m

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, vectors, self.dim)

    def unit_line(self) -> Subspace:
        return self.span([self.unit])


def multiply(a, b, A: Algebra) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != A.dim or b.shape[-1] != A.dim:
        raise ValueError(f"vectors of length {a.shape[-1]}, {b.shape[-1]} in dim-{A.dim} algebra")
    return gfp.matmul(A.field, A.field(b), A.left_matrix(a))


def associativity_defects(field: FieldSpec, M: np.ndarray, limit: int = MAX_WITNESSES) -> list:
    """Index tuples ``(i, j, k)`` with ``(e_i e_j) e_k != e_i (e_j e_k)``.

    Sparse tensors (structure constants of monomial bases) go through
    scipy.sparse; dense ones through a per-row BLAS loop.
    """
    n = M.shape[0]
    if np.count_nonzero(M) <= SPARSE_FACTOR * n * n:
        return _assoc_defects_sparse(field, M, limit)
    bad = []
    flat = M.reshape(n, n * n)
    right_inner = M.reshape(n * n, n)  # rows (j,k) -> e_j e_k
    for i in range(n):
        # (e_i e_j) e_k  and  e_i (e_j e_k), both indexed [j, k, m]
        lhs = gfp.matmul(field, M[i], flat).reshape(n, n, n)
        rhs = gfp.matmul(field, right_inner, M[i]).reshape(n, n, n)
        diff = np.argwhere((lhs != rhs).any(axis=2))
        for j, k in diff[: limit - len(bad)]:
            bad.append((i, int(j), int(k)))
        if len(bad) >= limit:
            break
    return bad


SPARSE_FACTOR = 16


def _assoc_defects_sparse(field: FieldSpec, M: np.ndarray, limit: int) -> list:
    from scipy import sparse

    n, p = M.shape[0], field.p
    pairs = sparse.csr_matrix(M.reshape(n * n, n))  # (a, b) -> e_a e_b
    flat = sparse.csr_matrix(M.reshape(n, n * n))  # x -> (k, z)
    lhs = (pairs @ flat).tocoo()  # [(i, j), (k, z)]
    by_left = sparse.csr_matrix(M.transpose(1, 0, 2).reshape(n, n * n))  # y -> (i, z)
    rhs = (pairs @ by_left).tocoo()  # [(j, k), (i, z)]
    j, k = np.divmod(rhs.row, n)
    i, z = np.divmod(rhs.col, n)
    rhs = sparse.coo_matrix((rhs.data, (i * n + j, k * n + z)), shape=(n * n, n * n))
    diff = (lhs.tocsr() - rhs.tocsr()).tocoo()
    keep = diff.data % p != 0
    rows, cols = diff.row[keep], diff.col[keep]
    out = sorted({(int(r // n), int(r % n), int(c // n)) for r, c in zip(rows, cols)})
    return out[:limit]


def check_associative_unital(A: Algebra) -> VerificationReport:
    """Exhaustive check of all n**3 associativity triples and both unit laws."""
    rep = VerificationReport(f"associative unital algebra (dim {A.dim})")
    n, f = A.dim, A.field
    bad = associativity_defects(f, A.mult)
    rep.add("associativity", not bad, bad)
    eye = np.eye(n, dtype=DTYPE)
    left = gfp.matmul(f, A.unit, A.flat).reshape(n, n)
    right = A.right_matrix(A.unit)
    rep.add("left unit", np.array_equal(left, eye), _rows_differing(left, eye))
    rep.add("right unit", np.array_equal(right, eye), _rows_differing(right, eye))
    return rep


def _rows_differing(a, b):
    return [int(i) for i in np.flatnonzero((a != b).any(axis=1))[:MAX_WITNESSES]]


def products(U: Subspace, V: Subspace, A: Algebra) -> np.ndarray:
    """All products ``u v`` of basis vectors, as rows (unreduced span)."""
    n = A.dim
    if U.dim == 0 or V.dim == 0:
        return np.zeros((0, n), dtype=DTYPE)
    left = gfp.matmul(A.field, U.basis, A.flat).reshape(U.dim, n, n)  # [a, j, k]
    prod = gfp.matmul(A.field, V.basis, left)  # [a, b, k]
    return prod.reshape(-1, n)


def subspace_product(U: Subspace, V: Subspace, A: Algebra) -> Subspace:
    """``span{u v : u in U, v in V}``."""
    return A.span(products(U, V, A))


def is_closed(S: Subspace, A: Algebra) -> bool:
    return S.contains_all(products(S, S, A))


def is_two_sided_ideal(I: Subspace, A: Algebra) -> bool:
    full = A.full()
    return I.contains_all(products(full, I, A)) and I.contains_all(products(I, full, A))


def _require_ideal(I: Subspace, A: Algebra) -> None:
    if I.ambient != A.dim:
        raise NotAnIdeal(f"subspace of ambient {I.ambient} in dim-{A.dim} algebra")
    if not is_two_sided_ideal(I, A):
        raise NotAnIdeal("subspace is not a two-sided ideal")


def generated_subalgebra(A: Algebra, gens, with_unit: bool = True) -> Subspace:
    """Smallest subspace containing ``gens`` (and the unit) closed under
    multiplication, by the closure iteration S <- S + S*S."""
    rows = [np.asarray(g) for g in gens]
    if with_unit:
        rows.append(A.unit)
    S = A.span(rows) if rows else A.zero()
    while True:
        nxt = S + A.span(products(S, S, A))
        if nxt == S:
            return S
        S = nxt


@dataclass(frozen=True)
class IdealChain:
    ideal: Subspace
    powers: list
    nilpotent: bool
    index: int | None

    @property
    def dims(self) -> list[int]:
        return [s.dim for s in self.powers]


def ideal_power_chain(I: Subspace, A: Algebra, *, check: bool = True) -> IdealChain:
    """Powers I, I^2, ... until they stop shrinking.

    ``powers`` holds distinct terms only; for a nilpotent ideal the last entry
    is the zero subspace and ``index`` is the least t with I^t = 0.
    """
    if check:
        _require_ideal(I, A)
    powers = [I]
    cur = I
    while not cur.is_zero():
        nxt = A.span(products(cur, I, A))
        if nxt == cur:
            break
        powers.append(nxt)
        cur = nxt
    nilpotent = cur.is_zero()
    return IdealChain(I, powers, nilpotent, len(powers) if nilpotent else None)


def ideal_power(chain: IdealChain, k: int) -> Subspace:
    """I^k for k >= 1 read from a computed chain (constant past stabilization)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return chain.powers[min(k, len(chain.powers)) - 1]


def frobenius_matrix(A: Algebra, times: int = 1) -> np.ndarray:
    """Matrix of a -> a**(p**times) in row convention.

    Only meaningful for commutative A, where the map is GF(p)-linear.
    """
    f = A.field
    n = A.dim
    F = A.power_rows(np.eye(n, dtype=DTYPE), A.p)
    return gfp.matrix_power(f, F, times)


def _require_commutative(A: Algebra) -> None:
    if not A.is_commutative():
        raise NotCommutative("operation requires a commutative algebra")


def commutative_radical(A: Algebra) -> Subspace:
    """Jacobson radical of a commutative algebra: the kernel of a -> a**(p**m)
    with p**m >= dim A, i.e. the nilradical."""
    _require_commutative(A)
    F = frobenius_matrix(A, A.frobenius_exponent())
    return gfp.left_kernel(A.field, F)


def lift_idempotent(a, A: Algebra) -> np.ndarray:
    _require_commutative(A)
    a = A.field(a)
    J = commutative_radical(A)
    if not J.contains((A.multiply(a, a) - a) % A.p):
        raise PreconditionError("a is not idempotent modulo the radical")
    return A.power(a, A.p ** A.frobenius_exponent())


def quotient_algebra(A: Algebra, I: Subspace, *, check: bool = True):
    """Return ``(A/I, projection)``.

    The quotient basis is the images of the unit vectors at the non-pivot
    coordinates of I's canonical basis; ``projection`` (dim A x dim A/I) maps
    a row vector of A to its coordinates in A/I.
    """
    if check:
        _require_ideal(I, A)
    proj = quotient_projection(I)
    comp = I.complement_coords()
    n = A.dim
    q = len(comp)
    sub = A.mult[np.ix_(comp, comp)].reshape(q * q, n)
    qmult = gfp.matmul(A.field, sub, proj).reshape(q, q, q)
    qunit = gfp.matmul(A.field, A.unit, proj)
    return Algebra(A.field, qmult, qunit), proj


def quotient_projection(I: Subspace) -> np.ndarray:
    comp = I.complement_coords()
    reduced = I.reduce(np.eye(I.ambient, dtype=DTYPE))
    return np.ascontiguousarray(reduced[:, comp])


def subalgebra_structure(A: Algebra, S: Subspace) -> Algebra:
    """Induced algebra on the canonical basis of a (unital) subalgebra S."""
    b = S.basis
    k = S.dim
    left = gfp.matmul(A.field, b, A.flat).reshape(k, A.dim, A.dim)
    prods = gfp.matmul(A.field, b, left)  # [a, b, :]
    if not S.contains_all(prods.reshape(-1, A.dim)):
        raise PreconditionError("subspace is not closed under multiplication")
    mult = S.coords(prods)
    if not S.contains(A.unit):
        raise PreconditionError("subspace does not contain the unit")
    return Algebra(A.field, mult, S.coords(A.unit))


def minimal_polynomial(A: Algebra, a, one=None) -> list[int]:
    """Monic minimal polynomial of ``a`` (coefficients low degree first).

    ``one`` replaces the unit, which lets the caller work inside a corner
    ``eA`` with identity ``e``.
    """
    f = A.field
    one = A.unit if one is None else f(one)
    powers = [one]
    span = Subspace.span(f, [one], A.dim)
    while True:
        nxt = A.multiply(powers[-1], a)
        if span.contains(nxt):
            break
        powers.append(nxt)
        span = span + Subspace.span(f, [nxt], A.dim)
    k = len(powers)
    # sum_i c_i a**i = 0: a one-dimensional kernel with c_k != 0
    sol = gfp.kernel(f, np.vstack(powers + [nxt]).T)
    v = sol.basis[-1]
    v = (v * f.inv(int(v[k]))) % f.p
    return [int(c) for c in v]


def poly_roots(field: FieldSpec, coeffs) -> list[int]:
    """Roots in GF(p) by exhaustive search."""
    p = field.p
    return [c for c in range(p) if sum(int(a) * pow(c, i, p) for i, a in enumerate(coeffs)) % p == 0]


def poly_eval(A: Algebra, coeffs, a, one=None) -> np.ndarray:
    one = A.unit if one is None else one
    result = np.zeros(A.dim, dtype=DTYPE)
    for c in reversed(list(coeffs)):
        result = (A.multiply(result, a) + int(c) * one) % A.p
    return result


def synthetic_divide(field: FieldSpec, coeffs, root: int) -> list[int]:
    """Quotient of a polynomial by (X - root), assuming root is a root."""
    p = field.p
    coeffs = [int(c) % p for c in coeffs]
    deg = len(coeffs) - 1
    q = [0] * deg
    carry = 0
    for i in range(deg, 0, -1):
        carry = (coeffs[i] + carry * root) % p
        q[i - 1] = carry
    return q


def binomial_mod(n: int, k: int, p: int) -> int:
    return math.comb(n, k) % p
