"""Coalgebra-side structure: coradical, coradical filtration, primitives,
group-likes and the identity component.

The Jacobson radical J of H* is only computed where it is provably right:
when H* is commutative (Frobenius kernel) or when the augmentation ideal of
H* is nilpotent (then J is that ideal and H is connected). Everything else
raises :class:`~hopflab.errors.UnsupportedClass`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebra as alg
from . import gfp
from . import hopf
from .errors import HopfLabError, IncompleteGroupLikes, UnsupportedClass
from .gfp import DTYPE, Subspace
from .hopf import HopfAlgebra, HopfSubalgebraHandle


@dataclass
class DualRadical:
    dual: HopfAlgebra
    radical: Subspace
    route: str  # "commutative" | "connected"


def dual_radical(H: HopfAlgebra) -> DualRadical:
    hit = H._cache.get("dual_radical")
    if hit is not None:
        return hit
    hit = _dual_radical(H)
    H._cache["dual_radical"] = hit
    return hit


def _dual_radical(H: HopfAlgebra) -> DualRadical:
    hopf.require_verified(H)
    K = hopf.dual(H)
    if K.alg.is_commutative():
        return DualRadical(K, alg.commutative_radical(K.alg), "commutative")
    aug = hopf.augmentation_ideal(K)
    if alg.ideal_power_chain(aug, K.alg, check=False).nilpotent:
        return DualRadical(K, aug, "connected")
    raise UnsupportedClass(
        "radical of the dual is only computed when the dual is commutative "
        "or its augmentation ideal is nilpotent"
    )


def coradical(H: HopfAlgebra) -> Subspace:
    """H_0 = ann(J) with J the radical of H*."""
    return dual_radical(H).radical.annihilator()


@dataclass
class FiltrationChain:
    parent: HopfAlgebra
    terms: list
    method: str  # "dual-radical" | "direct"

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)

    def term(self, n: int) -> Subspace:
        """H_n; the chain is constant (= H) past its last listed term."""
        return self.terms[min(n, len(self.terms) - 1)]

    def __len__(self) -> int:
        return len(self.terms)


def coradical_filtration_dual(H: HopfAlgebra) -> FiltrationChain:
    """H_n = ann(J^(n+1)) from the powers of the radical of H*."""
    dr = dual_radical(H)
    chain = alg.ideal_power_chain(dr.radical, dr.dual.alg, check=False)
    if not chain.nilpotent:
        raise HopfLabError("radical of the dual is not nilpotent")
    terms = [P.annihilator() for P in chain.powers]
    if not terms or not terms[-1].is_full():
        terms.append(H.full())
    return FiltrationChain(H, terms, "dual-radical")


def coradical_filtration_direct(H: HopfAlgebra, H0: Subspace | None = None) -> FiltrationChain:
    """H_n = Delta^-1(H (x) H_{n-1} + H_0 (x) H), iterated until H."""
    hopf.require_verified(H)
    if H0 is None:
        H0 = coradical(H)
    terms = [H0]
    while not terms[-1].is_full():
        nxt = hopf.delta_preimage_split(H, H0, terms[-1])
        if nxt == terms[-1]:
            raise HopfLabError("coradical filtration stalled below H; H0 is not the coradical")
        terms.append(nxt)
    return FiltrationChain(H, terms, "direct")


def is_connected(H: HopfAlgebra) -> bool:
    """H_0 = k, equivalently the augmentation ideal of H* is nilpotent."""
    hopf.require_verified(H)
    K = hopf.dual(H)
    return alg.ideal_power_chain(hopf.augmentation_ideal(K), K.alg, check=False).nilpotent


# ---------------------------------------------------------------- primitives


@dataclass
class PrimitiveSpace:
    parent: HopfAlgebra
    space: Subspace
    bracket: np.ndarray  # [a, b, c]: coefficient of basis c in [b_a, b_b]
    pmap_table: np.ndarray  # row a: b_a ** p in H coordinates
    closed_bracket: bool
    closed_pmap: bool

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    def pmap_coords(self) -> np.ndarray:
        return self.space.coords(self.pmap_table)

    def to_vector(self, coords) -> np.ndarray:
        f = self.parent.field
        return gfp.matmul(f, f(np.asarray(coords)), self.space.basis)


def primitive_map(H: HopfAlgebra) -> np.ndarray:
    """Rows: Delta(e_i) - e_i (x) 1 - 1 (x) e_i, flattened."""
    n, p = H.dim, H.p
    eye = np.eye(n, dtype=DTYPE)
    u = H.unit
    tail = np.einsum("ij,k->ijk", eye, u) + np.einsum("j,ik->ijk", u, eye)
    return ((H.comult - tail) % p).reshape(n, n * n)


def primitives(H: HopfAlgebra) -> PrimitiveSpace:
    hopf.require_verified(H)
    f, p = H.field, H.p
    P = gfp.left_kernel(f, primitive_map(H))
    B = P.basis
    d = P.dim
    if d:
        prods = gfp.matmul(f, B, H.alg.flat).reshape(d, H.dim, H.dim)  # [a, j, :] = b_a e_j
        ab = gfp.matmul(f, B, prods)  # [a, b, :] = b_a b_b
        br = (ab - ab.transpose(1, 0, 2)) % p
        flat_br = br.reshape(d * d, H.dim)
        closed_bracket = P.contains_all(flat_br)
        bracket = P.coords(flat_br).reshape(d, d, d) if closed_bracket else np.zeros((d, d, d), DTYPE)
        pm = H.alg.power_rows(B, p)
        closed_pmap = P.contains_all(pm)
    else:
        bracket = np.zeros((0, 0, 0), dtype=DTYPE)
        pm = np.zeros((0, H.dim), dtype=DTYPE)
        closed_bracket = closed_pmap = True
    return PrimitiveSpace(H, P, bracket, pm, closed_bracket, closed_pmap)


# ---------------------------------------------------------------- group-likes


@dataclass
class GroupLikeSet:
    parent: HopfAlgebra
    elements: list
    complete: bool
    coradical_dim: int
    # lifted primitive idempotents of H*, aligned with ``elements``
    idempotents: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def span(self) -> Subspace:
        return Subspace.span(self.parent.field, self.elements, self.parent.dim)

    def index_of(self, v) -> int:
        v = self.parent.field(np.asarray(v))
        for i, g in enumerate(self.elements):
            if np.array_equal(g, v):
                return i
        raise KeyError("not a listed group-like")

    def identity_index(self) -> int:
        return self.index_of(self.parent.unit)

    def multiplication_table(self) -> list[list[int]]:
        H = self.parent
        return [[self.index_of(H.multiply(g, h)) for h in self.elements] for g in self.elements]


def is_group_like(H: HopfAlgebra, g) -> bool:
    g = H.field(np.asarray(g))
    return H.epsilon(g) == 1 and np.array_equal(H.delta(g), np.outer(g, g) % H.p)


def split_idempotents(Q: alg.Algebra) -> list[np.ndarray]:
    """Orthogonal idempotents of a commutative semisimple algebra Q, refined
    until every rational (one-dimensional) component is separated.

    Each pass takes an idempotent e and an element b = e a, finds the roots r
    of the minimal polynomial m of b in eQ by exhaustive search, and splits off
    e_r = (m / (x - r))(b) / (m / (x - r))(r). Whatever is left carries the
    irreducible factors of degree > 1 and has no rational points.
    """
    f = Q.field
    n = Q.dim
    done: list[np.ndarray] = []
    todo = [Q.unit.copy()]
    while todo:
        e = todo.pop()
        eQ = alg.subspace_product(Q.span([e]), Q.full(), Q)
        if eQ.dim == 1:
            done.append(e)
            continue
        split = None
        for i in range(n):
            b = Q.multiply(e, gfp.unit_vector(n, i))
            m = alg.minimal_polynomial(Q, b, one=e)
            roots = alg.poly_roots(f, m)
            if len(m) - 1 == 1 or not roots:
                continue
            parts = []
            for r in roots:
                q = alg.synthetic_divide(f, m, r)
                val = alg.poly_eval(Q, q, b, one=e)
                scale = 0
                for k, c in enumerate(q):
                    scale = (scale + c * pow(r, k, f.p)) % f.p
                parts.append(val * f.inv(scale) % f.p)
            rest = (e - sum(parts)) % f.p
            if rest.any():
                parts.append(rest)
            if len(parts) > 1:
                split = parts
                break
        if split is None:
            done.append(e)  # no rational splitting left
        else:
            todo.extend(split)
    return done


def group_likes(H: HopfAlgebra) -> GroupLikeSet:
    """Group-likes of H as characters of H*, via idempotents of H*/J."""
    hopf.require_verified(H)
    f, n = H.field, H.dim
    dr = dual_radical(H)
    H0dim = n - dr.radical.dim
    if dr.route == "connected":
        one = H.unit.copy()
        return GroupLikeSet(H, [one], H0dim == 1, H0dim, [dr.dual.unit.copy()])
    K = dr.dual.alg
    Q, proj = alg.quotient_algebra(K, dr.radical, check=False)
    comp = dr.radical.complement_coords()
    elements, idems = [], []
    for e in split_idempotents(Q):
        eQ = alg.subspace_product(Q.span([e]), Q.full(), Q)
        if eQ.dim != 1:
            continue
        # character chi(e*_i): image of e*_i times e equals chi e
        piv = int(np.flatnonzero(e)[0])
        imgs = gfp.matmul(f, proj, Q.left_matrix(e))  # row i: pi(e*_i) e
        g = imgs[:, piv] * f.inv(int(e[piv])) % f.p
        if not is_group_like(H, g):
            raise HopfLabError("character of the dual did not give a group-like")
        lift = np.zeros(n, dtype=DTYPE)
        lift[comp] = e
        elements.append(g)
        idems.append(alg.lift_idempotent(lift, K))
    order = sorted(range(len(elements)), key=lambda i: (not np.array_equal(elements[i], H.unit), tuple(elements[i])))
    elements = [elements[i] for i in order]
    idems = [idems[i] for i in order]
    return GroupLikeSet(H, elements, len(elements) == H0dim, H0dim, idems)


def identity_component(H: HopfAlgebra, G: GroupLikeSet | None = None) -> HopfSubalgebraHandle:
    """H_e = ann((1 - e) H*) for the lifted idempotent e of H* at the character
    of evaluation at 1 (which is the counit of H*)."""
    if G is None:
        G = group_likes(H)
    if not G.complete:
        raise IncompleteGroupLikes(
            f"only {len(G)} rational group-likes for a coradical of dim {G.coradical_dim}"
        )
    f = H.field
    K = hopf.dual(H)
    e = G.idempotents[G.identity_index()]
    comp = (K.unit - e) % f.p
    ideal = alg.subspace_product(K.span([comp]), K.full(), K.alg)
    He = ideal.annihilator()
    return hopf.hopf_subalgebra(H, He, meta=f"identity component of {H.meta}")
