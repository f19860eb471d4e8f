"""Hopf algebras held as structure constants.

Conventions shared by every module:

* ``comult[i, j, k]`` is the coefficient of ``e_j (x) e_k`` in ``Delta(e_i)``;
  flattened, the tensor-square index of ``e_j (x) e_k`` is ``j * n + k``.
* ``counit[i]`` is ``epsilon(e_i)``.
* ``antipode[i, j]`` is the coefficient of ``e_j`` in ``S(e_i)`` (row
  convention, like every linear map in :mod:`hopflab.gfp`).
* The dual uses the coordinate dual basis, so ``dual(dual(H))`` is literally
  ``H`` again.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from . import gfp
from .algebra import Algebra
from .errors import AxiomFailure, HopfLabError, PreconditionError
from .gfp import DTYPE, Subspace
from .report import VerificationReport

MAX_WITNESSES = 5
# above this dimension Delta-multiplicativity is checked against a generating set
EXHAUSTIVE_COMPAT_DIM = 32


class HopfAlgebra:
    def __init__(self, field, mult, unit, comult, counit, antipode, labels=None, meta=""):
        self.alg = Algebra(field, mult, unit)
        f = self.alg.field
        n = self.alg.dim
        comult = f(comult)
        counit = f(counit)
        antipode = f(antipode)
        if comult.shape != (n, n, n):
            raise ValueError(f"comult tensor has shape {comult.shape}, expected {(n, n, n)}")
        if counit.shape != (n,) or antipode.shape != (n, n):
            raise ValueError("counit/antipode shape mismatch")
        for a in (comult, counit, antipode):
            a.flags.writeable = False
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("one label per basis vector required")
        self.meta = meta
        self._report: VerificationReport | None = None
        self._cache: dict = {}

    @classmethod
    def from_algebra(cls, A: Algebra, comult, counit, antipode, labels=None, meta=""):
        return cls(A.field, A.mult, A.unit, comult, counit, antipode, labels, meta)

    # shorthand
    @property
    def field(self):
        return self.alg.field

    @property
    def p(self) -> int:
        return self.alg.field.p

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def mult(self):
        return self.alg.mult

    @property
    def unit(self):
        return self.alg.unit

    def __repr__(self):
        tag = f", {self.meta}" if self.meta else ""
        return f"HopfAlgebra(dim={self.dim}, {self.field}{tag})"

    def tensors_equal(self, other: HopfAlgebra) -> bool:
        return (
            self.field == other.field
            and self.dim == other.dim
            and np.array_equal(self.mult, other.mult)
            and np.array_equal(self.unit, other.unit)
            and np.array_equal(self.comult, other.comult)
            and np.array_equal(self.counit, other.counit)
            and np.array_equal(self.antipode, other.antipode)
        )

    # element-level helpers
    def multiply(self, a, b):
        return self.alg.multiply(a, b)

    def delta(self, v) -> np.ndarray:
        """Delta(v) as an n x n coefficient matrix."""
        n = self.dim
        return gfp.matmul(self.field, self.field(v), self.comult.reshape(n, n * n)).reshape(n, n)

    def apply_antipode(self, v) -> np.ndarray:
        return gfp.matmul(self.field, self.field(v), self.antipode)

    def epsilon(self, v) -> int:
        return int(np.dot(self.field(v), self.counit) % self.p)

    def vector(self, coeffs: dict) -> np.ndarray:
        """Vector from ``{label: coefficient}``."""
        v = np.zeros(self.dim, dtype=DTYPE)
        for lab, c in coeffs.items():
            v[self.labels.index(lab)] += c
        return v % self.p

    def basis_vector(self, label: str) -> np.ndarray:
        return gfp.unit_vector(self.dim, self.labels.index(label))

    def full(self) -> Subspace:
        return self.alg.full()

    def span(self, vectors) -> Subspace:
        return self.alg.span(vectors)

    def span_labels(self, *labels) -> Subspace:
        return self.span([self.basis_vector(l) for l in labels])

    def unit_line(self) -> Subspace:
        return self.alg.unit_line()

    @property
    def verified(self) -> bool:
        return self._report is not None and self._report.overall


def tensor_matrix(field, rows) -> np.ndarray:
    return field(np.asarray(rows)).reshape(-1)


# ---------------------------------------------------------------- axioms


def _algebra_generators(A: Algebra) -> list[np.ndarray]:
    """Greedy generating set drawn from the basis vectors."""
    gens: list[np.ndarray] = []
    S = alg.generated_subalgebra(A, [])
    for i in range(A.dim):
        e = gfp.unit_vector(A.dim, i)
        if not S.contains(e):
            gens.append(e)
            S = alg.generated_subalgebra(A, gens)
            if S.is_full():
                break
    return gens


def verify_axioms(H: HopfAlgebra, *, exhaustive: bool | None = None) -> VerificationReport:
    """Check every Hopf algebra axiom on basis elements, with witnesses.

    Multiplicativity of Delta is checked on all basis pairs up to
    ``EXHAUSTIVE_COMPAT_DIM``; above that, on pairs (basis, generator) for a
    generating set of the algebra, which is equivalent.
    """
    rep = VerificationReport(f"Hopf axioms ({H.meta or 'dim %d' % H.dim})")
    rep.extend(alg.check_associative_unital(H.alg))
    f, n, p = H.field, H.dim, H.p
    M, D, eps, S, u = H.mult, H.comult, H.counit, H.antipode, H.unit
    eye = np.eye(n, dtype=DTYPE)
    Dflat = D.reshape(n, n * n)

    # coassociativity is associativity of the transposed tensor; witnesses are
    # dual-basis triples (j, k, l) where the coefficients of e_j (x) e_k (x) e_l differ
    bad = alg.associativity_defects(f, np.ascontiguousarray(D.transpose(1, 2, 0)))
    rep.add("coassociativity", not bad, bad)

    # counit laws
    left = np.einsum("j,ijk->ik", eps, D) % p
    right = gfp.matmul(f, D, eps)
    rep.add("left counit", np.array_equal(left, eye), alg._rows_differing(left, eye))
    rep.add("right counit", np.array_equal(right, eye), alg._rows_differing(right, eye))

    # counit is an algebra map
    eps_prod = gfp.matmul(f, M, eps)
    want = np.outer(eps, eps) % p
    rep.add("counit of unit", int(np.dot(u, eps) % p) == 1, int(np.dot(u, eps) % p))
    rep.add(
        "counit multiplicative",
        np.array_equal(eps_prod, want),
        [tuple(map(int, w)) for w in np.argwhere(eps_prod != want)[:MAX_WITNESSES]],
    )

    # Delta is an algebra map
    unit_delta = H.delta(u)
    want = np.outer(u, u) % p
    rep.add("Delta(1) = 1 (x) 1", np.array_equal(unit_delta, want),
            [tuple(map(int, w)) for w in np.argwhere(unit_delta != want)[:MAX_WITNESSES]])
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_COMPAT_DIM
    factors = [gfp.unit_vector(n, j) for j in range(n)] if exhaustive else _algebra_generators(H.alg)
    bad = []
    for g in factors:
        # Delta(e_i g) for all i, and Delta(e_i) Delta(g) for all i
        Rg = H.alg.right_matrix(g)
        lhs = gfp.matmul(f, Rg, Dflat).reshape(n, n, n)
        rhs = np.zeros((n, n, n), dtype=DTYPE)
        Cg = H.delta(g)
        for a, b in np.argwhere(Cg):
            Ra = H.alg.right_matrix(gfp.unit_vector(n, a))
            Rb = H.alg.right_matrix(gfp.unit_vector(n, b))
            term = gfp.matmul(f, Ra.T, gfp.matmul(f, D, Rb))
            rhs = (rhs + Cg[a, b] * term) % p
        rows = np.flatnonzero((lhs != rhs).reshape(n, -1).any(axis=1))
        j = int(np.flatnonzero(g)[0]) if exhaustive else tuple(map(int, np.flatnonzero(g)))
        bad.extend((int(i), j) for i in rows[: MAX_WITNESSES - len(bad)])
        if len(bad) >= MAX_WITNESSES:
            break
    rep.add("Delta multiplicative", not bad, bad)

    # antipode: m(S (x) id)Delta = u eps = m(id (x) S)Delta
    target = np.outer(eps, u) % p
    T = gfp.matmul(f, S, M.reshape(n, n * n))  # [a, (b, x)] = S(e_a) e_b
    left = gfp.matmul(f, Dflat, T.reshape(n * n, n))
    T2 = gfp.matmul(f, S, M)  # [a, b, x] = e_a S(e_b)
    right = gfp.matmul(f, Dflat, T2.reshape(n * n, n))
    rep.add("antipode left", np.array_equal(left, target), alg._rows_differing(left, target))
    rep.add("antipode right", np.array_equal(right, target), alg._rows_differing(right, target))
    H._report = rep
    return rep


def require_verified(H: HopfAlgebra) -> HopfAlgebra:
    rep = H._report if H._report is not None else verify_axioms(H)
    if not rep.overall:
        raise AxiomFailure("Hopf algebra failed axiom verification", rep)
    return H


# ---------------------------------------------------------------- duality


def dual(H: HopfAlgebra) -> HopfAlgebra:
    """Dual Hopf algebra on the coordinate dual basis (transposed tensors)."""
    mult = H.comult.transpose(1, 2, 0)
    comult = H.mult.transpose(2, 0, 1)
    labels = [l[:-1] if l.endswith("*") else l + "*" for l in H.labels]
    meta = H.meta[:-1] if H.meta.endswith("*") else (H.meta + "*" if H.meta else "")
    D = HopfAlgebra(H.field, mult, H.counit, comult, H.unit, H.antipode.T, labels, meta)
    if H.verified:
        D._report = VerificationReport(f"dual of verified {H.meta}")
    return D


def is_commutative(H: HopfAlgebra) -> bool:
    return H.alg.is_commutative()


def is_cocommutative(H: HopfAlgebra) -> bool:
    return bool(np.array_equal(H.comult, H.comult.transpose(0, 2, 1)))


def augmentation_ideal(H: HopfAlgebra) -> Subspace:
    return gfp.kernel(H.field, H.counit[None, :])


def plus_part(H: HopfAlgebra, U: Subspace) -> Subspace:
    """U^+ = U intersected with the kernel of the counit."""
    return U & augmentation_ideal(H)


# ---------------------------------------------------------------- subalgebras


def _delta_all(H: HopfAlgebra, rows) -> np.ndarray:
    n = H.dim
    rows = np.asarray(rows, dtype=DTYPE).reshape(-1, n)
    return gfp.matmul(H.field, rows, H.comult.reshape(n, n * n)).reshape(-1, n, n)


def delta_in_tensor_square(H: HopfAlgebra, U: Subspace) -> bool:
    """Delta(U) inside U (x) U."""
    if U.is_full():
        return True
    F = U.annihilator().basis
    C = _delta_all(H, U.basis)
    f = H.field
    return not gfp.matmul(f, F, C).any() and not gfp.matmul(f, C, F.T).any()


def is_hopf_subalgebra(H: HopfAlgebra, U: Subspace) -> bool:
    return (
        U.contains(H.unit)
        and alg.is_closed(U, H.alg)
        and delta_in_tensor_square(H, U)
        and U.contains_all(gfp.matmul(H.field, U.basis, H.antipode))
    )


def adjoint_actions(H: HopfAlgebra, k) -> tuple[np.ndarray, np.ndarray]:
    """Rows h = e_i of sum h1 k S(h2) and of sum S(h1) k h2."""
    f, n = H.field, H.dim
    M, S = H.mult, H.antipode
    Dflat = H.comult.reshape(n, n * n)
    Rk = H.alg.right_matrix(k)  # rows e_a k
    Q = gfp.matmul(f, S, M)  # [c, b, x] = e_c S(e_b)
    T = gfp.matmul(f, Rk, Q.reshape(n, n * n))
    left = gfp.matmul(f, Dflat, T.reshape(n * n, n))
    T2 = gfp.matmul(f, gfp.matmul(f, S, Rk), M.reshape(n, n * n))
    right = gfp.matmul(f, Dflat, T2.reshape(n * n, n))
    return left, right


def is_normal_hopf_subalgebra(H: HopfAlgebra, K: Subspace, *, witness: list | None = None) -> bool:
    """Both adjoint conditions on all basis pairs (h, k); K must already be a
    Hopf subalgebra."""
    if not is_hopf_subalgebra(H, K):
        raise PreconditionError("K is not a Hopf subalgebra")
    if is_commutative(H):
        return True
    for idx, k in enumerate(K.basis):
        left, right = adjoint_actions(H, k)
        for side, rows in (("left", left), ("right", right)):
            res = K.reduce(rows)
            if res.any():
                if witness is not None:
                    witness.append((side, int(np.flatnonzero(res.any(axis=1))[0]), idx))
                return False
    return True


@dataclass
class HopfSubalgebraHandle:
    parent: HopfAlgebra
    space: Subspace
    as_hopf: HopfAlgebra

    @property
    def dim(self) -> int:
        return self.space.dim

    def to_local(self, W: Subspace) -> Subspace:
        """A subspace of the parent lying inside ``space``, in local coordinates."""
        if not W <= self.space:
            raise PreconditionError("subspace is not contained in the Hopf subalgebra")
        return Subspace.span(self.parent.field, self.space.coords(W.basis), self.dim)

    def to_parent(self, W: Subspace) -> Subspace:
        return W.image(self.space.basis)


def hopf_subalgebra(H: HopfAlgebra, U: Subspace, *, check: bool = True, meta: str = "") -> HopfSubalgebraHandle:
    """Induced Hopf structure on the canonical basis of a Hopf subalgebra."""
    if check and not is_hopf_subalgebra(H, U):
        raise PreconditionError("subspace is not a Hopf subalgebra")
    f = H.field
    b = U.basis
    sub_alg = alg.subalgebra_structure(H.alg, U)
    piv = U.pivots
    C = _delta_all(H, b)
    comult = C[:, piv][:, :, piv]
    counit = gfp.matmul(f, b, H.counit)
    antipode = U.coords(gfp.matmul(f, b, H.antipode))
    labels = []
    for row in b:
        nz = np.flatnonzero(row)
        if len(nz) == 1 and row[nz[0]] == 1:
            labels.append(H.labels[nz[0]])
        else:
            labels.append("+".join(
                (H.labels[i] if row[i] == 1 else f"{row[i]}{H.labels[i]}") for i in nz
            ))
    sub = HopfAlgebra.from_algebra(sub_alg, comult, counit, antipode, labels, meta or f"sub({H.meta})")
    return HopfSubalgebraHandle(H, U, sub)


# ---------------------------------------------------------------- quotients


def hopf_ideal_of(H: HopfAlgebra, K: Subspace) -> Subspace:
    """The two-sided ideal H K^+ H."""
    Kp = plus_part(H, K)
    full = H.full()
    I = alg.subspace_product(full, Kp, H.alg)
    return I + alg.subspace_product(I, full, H.alg)


def quotient_hopf(H: HopfAlgebra, K: Subspace, *, check_normal: bool = True):
    """Return ``(H/K, projection)`` with H/K := H / H K^+."""
    if check_normal and not is_normal_hopf_subalgebra(H, K):
        raise PreconditionError("K is not a normal Hopf subalgebra")
    I = hopf_ideal_of(H, K)
    Q, proj = alg.quotient_algebra(H.alg, I)
    comp = I.complement_coords()
    f = H.field
    D = H.comult[comp]
    comult = gfp.matmul(f, gfp.matmul(f, proj.T, D), proj)
    counit = H.counit[comp]
    antipode = gfp.matmul(f, H.antipode[comp], proj)
    labels = [H.labels[c] for c in comp]
    out = HopfAlgebra.from_algebra(Q, comult, counit, antipode, labels, f"{H.meta}/K")
    if out.dim * K.dim != H.dim:
        raise HopfLabError(
            f"dim(H/K) = {out.dim} but dim H / dim K = {H.dim}/{K.dim}: inconsistent quotient"
        )
    return out, proj


# ---------------------------------------------------------------- Delta preimages


def delta_preimage(H: HopfAlgebra, W: Subspace) -> Subspace:
    """``{h : Delta(h) in W}`` for W in the n**2-dimensional tensor square."""
    n = H.dim
    if W.ambient != n * n:
        raise PreconditionError("W must live in the tensor square")
    ann = W.annihilator()
    if ann.dim == 0:
        return H.full()
    vals = gfp.matmul(H.field, H.comult.reshape(n, n * n), ann.basis.T)
    return gfp.left_kernel(H.field, vals)


def delta_preimage_split(H: HopfAlgebra, left: Subspace, right: Subspace) -> Subspace:
    """``{h : Delta(h) in left (x) H + H (x) right}``.

    That sum is the kernel of ``pi_left (x) pi_right``, so membership is tested
    against the functionals ``f (x) g`` with f, g in the annihilators; the
    tensor square itself is never materialised.
    """
    F = left.annihilator().basis
    G = right.annihilator().basis
    if F.shape[0] == 0 or G.shape[0] == 0:
        return H.full()
    f = H.field
    vals = gfp.matmul(f, gfp.matmul(f, F, H.comult), G.T)  # [h, a, b]
    return gfp.left_kernel(f, vals.reshape(H.dim, -1))


def tensor_sum_subspace(H: HopfAlgebra, left: Subspace, right: Subspace) -> Subspace:
    """``left (x) H + H (x) right`` as an explicit subspace (small n only)."""
    n = H.dim
    rows = []
    for a in left.basis:
        for j in range(n):
            rows.append(np.outer(a, gfp.unit_vector(n, j)).reshape(-1))
    for b in right.basis:
        for j in range(n):
            rows.append(np.outer(gfp.unit_vector(n, j), b).reshape(-1))
    return Subspace.span(H.field, rows, n * n)
