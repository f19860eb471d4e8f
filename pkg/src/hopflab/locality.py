"""Locality tests and the checkers built on them.

A finite-dimensional Hopf algebra is local exactly when its augmentation
ideal is nilpotent, so every verdict here is an ideal power chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import algebra as alg
from . import gfp
from . import hopf
from . import series as se
from . import structure as st
from .errors import IncompleteGroupLikes, PreconditionError, UnsupportedClass
from .gfp import Subspace
from .hopf import HopfAlgebra
from .report import VerificationReport

ENUMERATION_BUDGET = 10**6


@dataclass
class LocalityVerdict:
    is_local: bool
    nilpotency_index: int | None
    chain_dims: list

    def to_dict(self) -> dict:
        return {"is_local": self.is_local, "nilpotency_index": self.nilpotency_index,
                "chain_dims": list(self.chain_dims)}


def is_local(H: HopfAlgebra) -> LocalityVerdict:
    hopf.require_verified(H)
    chain = alg.ideal_power_chain(hopf.augmentation_ideal(H), H.alg, check=False)
    return LocalityVerdict(chain.nilpotent, chain.index if chain.nilpotent else None, chain.dims)


def _nilpotent_part_local(A: alg.Algebra, I: Subspace) -> bool:
    """Whether I (an ideal of the subalgebra it lives in) is nilpotent, by
    multiplying powers against I directly."""
    cur = I
    for _ in range(A.dim + 1):
        if cur.is_zero():
            return True
        nxt = alg.subspace_product(cur, I, A)
        if nxt == cur:
            return False
        cur = nxt
    return cur.is_zero()


# ---------------------------------------------------------------- Theorem A


@dataclass
class TheoremAReport:
    h_local: LocalityVerdict
    gamma1_local: LocalityVerdict
    cocommutative: bool
    equivalence_holds: bool
    counterexample_flag: bool
    h1_dim: int
    gamma1_dim: int
    dim: int

    def to_report(self) -> VerificationReport:
        rep = VerificationReport("H local <=> subalgebra generated by H_1 local")
        rep.note("dim H", self.dim)
        rep.note("dim H_1", self.h1_dim)
        rep.note("dim Gamma^1", self.gamma1_dim)
        rep.note("H local", self.h_local.is_local, self.h_local.chain_dims)
        rep.note("Gamma^1 local", self.gamma1_local.is_local, self.gamma1_local.chain_dims)
        rep.note("cocommutative", self.cocommutative)
        if self.cocommutative:
            rep.add("equivalence (cocommutative H)", self.equivalence_holds,
                    {"H local": self.h_local.is_local, "Gamma^1 local": self.gamma1_local.is_local})
        else:
            rep.note("counterexample_flag", self.counterexample_flag,
                     "non-cocommutative: reported, not asserted")
        return rep

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "h1_dim": self.h1_dim,
            "gamma1_dim": self.gamma1_dim,
            "h_local": self.h_local.to_dict(),
            "gamma1_local": self.gamma1_local.to_dict(),
            "cocommutative": self.cocommutative,
            "equivalence_holds": self.equivalence_holds,
            "counterexample_flag": self.counterexample_flag,
        }


def gamma1(H: HopfAlgebra) -> hopf.HopfSubalgebraHandle:
    """Hopf subalgebra generated by H_1, with its induced structure verified."""
    H1 = st.coradical_filtration_dual(H).term(1)
    S = alg.generated_subalgebra(H.alg, list(H1.basis))
    handle = hopf.hopf_subalgebra(H, S, meta=f"Gamma^1({H.meta})")
    hopf.require_verified(handle.as_hopf)
    return handle


def theorem_a_check(H: HopfAlgebra) -> TheoremAReport:
    hopf.require_verified(H)
    H1 = st.coradical_filtration_dual(H).term(1)
    g1 = gamma1(H)
    hl = is_local(H)
    gl = is_local(g1.as_hopf)
    coc = hopf.is_cocommutative(H)
    eq = hl.is_local == gl.is_local
    return TheoremAReport(hl, gl, coc, eq, (not coc) and not eq, H1.dim, g1.dim, H.dim)


# ---------------------------------------------------------------- Corollary B


@dataclass
class EngelCertificate:
    lcs_dims: list
    pmap_chains: list  # per basis element of g: dims-free list of chain vectors
    pmap_terminates: list  # per basis element: chain reached 0
    all_elements_nilpotent: Any  # True / False / "unknown(budget)"
    non_nilpotent_witness: list | None = None
    enumerated: int = 0

    @property
    def lie_nilpotent(self) -> bool:
        return bool(self.lcs_dims) and self.lcs_dims[-1] == 0

    def to_dict(self) -> dict:
        return {
            "lcs_dims": list(self.lcs_dims),
            "pmap_chain_lengths": [len(c) for c in self.pmap_chains],
            "pmap_terminates": list(self.pmap_terminates),
            "all_elements_nilpotent": self.all_elements_nilpotent,
            "non_nilpotent_witness": self.non_nilpotent_witness,
            "enumerated": self.enumerated,
        }


def lower_central_series(P: st.PrimitiveSpace) -> list[int]:
    """dims of g, [g, g], [g, [g, g]], ... until 0 or a repeat (bracket table only)."""
    f = P.parent.field
    d = P.dim
    if d == 0:
        return [0]
    cur = Subspace.full(f, d)
    dims = [d]
    while not cur.is_zero():
        # [b_a, v] for basis b_a of g and v in cur
        rows = np.einsum("kb,abc->akc", cur.basis, P.bracket).reshape(-1, d) % f.p
        nxt = Subspace.span(f, rows, d)
        if nxt == cur:
            break
        dims.append(nxt.dim)
        cur = nxt
    return dims


def pmap_chain(H: HopfAlgebra, x, limit: int | None = None) -> tuple[list, bool]:
    """x, x^[p], x^[p^2], ... in H until 0 or a repeat."""
    p = H.p
    limit = limit or H.dim + 1
    chain = [H.field(np.asarray(x))]
    seen = {chain[0].tobytes()}
    while chain[-1].any() and len(chain) <= limit:
        nxt = H.alg.power(chain[-1], p)
        key = nxt.tobytes()
        chain.append(nxt)
        if key in seen:
            break
        seen.add(key)
    return chain, not chain[-1].any()


def engel_certificate(P: st.PrimitiveSpace, budget: int = ENUMERATION_BUDGET) -> EngelCertificate:
    H = P.parent
    f = H.field
    chains, term = [], []
    for b in P.basis:
        c, t = pmap_chain(H, b)
        chains.append(c)
        term.append(t)
    lcs = lower_central_series(P)
    count = f.p ** P.dim
    if count > budget:
        return EngelCertificate(lcs, chains, term, "unknown(budget)", None, 0)
    witness = None
    for v in gfp.all_vectors(f, P.basis):
        if not H.alg.is_nilpotent_element(v):
            witness = [int(a) for a in v]
            break
    return EngelCertificate(lcs, chains, term, witness is None, witness, count)


def corollary_b_check(H: HopfAlgebra, budget: int = ENUMERATION_BUDGET) -> VerificationReport:
    """(i) H local, (ii) u(g) local, (iii) every primitive nilpotent.

    (ii) <=> (iii) is asserted for every connected H. The full equivalence
    with (i) goes through the cocommutative locality theorem, so it is asserted
    only for cocommutative H and reported otherwise.
    """
    hopf.require_verified(H)
    if not st.is_connected(H):
        raise PreconditionError("statement needs a connected Hopf algebra")
    rep = VerificationReport(f"connected locality via primitives ({H.meta})")
    P = st.primitives(H)
    rep.add("primitive space closed under bracket and p-th power",
            P.closed_bracket and P.closed_pmap, (P.closed_bracket, P.closed_pmap))
    i = is_local(H).is_local
    U = alg.generated_subalgebra(H.alg, list(P.basis))
    u = hopf.hopf_subalgebra(H, U, meta=f"u(g) in {H.meta}")
    ii = is_local(hopf.require_verified(u.as_hopf)).is_local
    cert = engel_certificate(P, budget)
    iii = cert.all_elements_nilpotent
    coc = hopf.is_cocommutative(H)
    rep.note("dim g", P.dim)
    rep.note("(i) H local", i)
    rep.note("(ii) u(g) local", ii, f"dim u(g) = {U.dim}")
    rep.note("(iii) all primitives nilpotent", iii,
             f"enumerated {cert.enumerated}" if iii != "unknown(budget)" else "beyond enumeration budget")
    rep.note("lower central series dims", cert.lcs_dims)
    rep.note("p-map chains terminate", cert.pmap_terminates)
    if cert.non_nilpotent_witness is not None:
        rep.note("non-nilpotent primitive", cert.non_nilpotent_witness)
    if iii == "unknown(budget)":
        rep.note("(iii) derived from (ii)", ii, "enumeration skipped")
        iii = ii
    rep.add("(ii) <=> (iii)", ii == iii, {"ii": ii, "iii": iii})
    # Engel direction: nilpotent bracket and terminating p-map chains force (ii)
    if cert.lie_nilpotent and all(cert.pmap_terminates):
        rep.add("Engel certificate => u(g) local", ii, cert.to_dict())
    if coc:
        rep.add("(i) <=> (ii) <=> (iii)", i == ii == iii, {"i": i, "ii": ii, "iii": iii})
    else:
        rep.note("(i) <=> (ii) [non-cocommutative, not asserted]", i == ii,
                 {"i": i, "ii": ii, "iii": iii})
    return rep


# ---------------------------------------------------------------- pointed case


def pointed_decomposition_check(H: HopfAlgebra) -> VerificationReport:
    """H local <=> (H_e local and k[G] local); dim H = dim H_e |G|;
    H / H_e^+ H has dimension |G| and |G| group-likes."""
    hopf.require_verified(H)
    if not hopf.is_cocommutative(H):
        raise PreconditionError("pointed decomposition is checked for cocommutative H")
    G = st.group_likes(H)
    if not G.complete:
        raise IncompleteGroupLikes(
            f"{len(G)} rational group-likes for a coradical of dim {G.coradical_dim}"
        )
    rep = VerificationReport(f"pointed decomposition ({H.meta})")
    He = st.identity_component(H, G)
    kG = hopf.hopf_subalgebra(H, G.span(), meta="k[G]")
    hopf.require_verified(He.as_hopf)
    hopf.require_verified(kG.as_hopf)
    rep.add("H_e is a Hopf subalgebra", hopf.is_hopf_subalgebra(H, He.space))
    rep.add("H_e is connected", st.is_connected(He.as_hopf))
    w: list = []
    rep.add("H_e is normal", hopf.is_normal_hopf_subalgebra(H, He.space, witness=w), w)
    h, e, g = is_local(H).is_local, is_local(He.as_hopf).is_local, is_local(kG.as_hopf).is_local
    rep.note("H local, H_e local, k[G] local", (h, e, g))
    rep.add("H local <=> H_e and k[G] local", h == (e and g), {"H": h, "H_e": e, "k[G]": g})
    rep.add("dim H = dim H_e * |G|", H.dim == He.dim * len(G), (H.dim, He.dim, len(G)))
    Q, _ = hopf.quotient_hopf(H, He.space, check_normal=False)
    hopf.require_verified(Q)
    GQ = st.group_likes(Q)
    rep.add("H / H_e^+ H has dim |G| and |G| group-likes",
            Q.dim == len(G) and len(GQ) == len(G) and GQ.complete, (Q.dim, len(GQ), len(G)))
    return rep


def subalgebra_locality_check(H: HopfAlgebra, trials: int = 20, seed: int = 0) -> VerificationReport:
    """Random subalgebras of a local H are local (augmentation part nilpotent)."""
    if not is_local(H).is_local:
        raise PreconditionError("subalgebra locality is only asserted inside a local H")
    rep = VerificationReport(f"subalgebras of a local algebra ({H.meta})")
    rng = np.random.default_rng(seed)
    f = H.field
    aug = hopf.augmentation_ideal(H)
    for t in range(trials):
        k = int(rng.integers(1, 4))
        coeffs = rng.integers(0, f.p, size=(k, aug.dim))
        gens = gfp.matmul(f, f(coeffs), aug.basis)
        S = alg.generated_subalgebra(H.alg, list(gens))
        ok = _nilpotent_part_local(H.alg, S & aug)
        rep.add(f"trial {t}: subalgebra of dim {S.dim} local", ok, gens.tolist())
    return rep


# ---------------------------------------------------------------- analysis


@dataclass
class Analysis:
    data: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)
    reports: dict = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(r.overall for r in self.reports.values())

    def to_dict(self) -> dict:
        return {
            "schema": "hopflab.analysis/1",
            **self.data,
            "skipped": list(self.skipped),
            "reports": {k: r.to_dict() for k, r in self.reports.items()},
            "overall": self.overall,
        }

    def summary(self) -> str:
        lines = []
        for k, v in self.data.items():
            lines.append(f"{k}: {v}")
        for s in self.skipped:
            lines.append(f"skipped: {s}")
        for r in self.reports.values():
            lines.append(r.summary())
        return "\n".join(lines)


def analyze(H: HopfAlgebra, *, with_duality: bool = True) -> Analysis:
    out = Analysis()
    rep = hopf.verify_axioms(H) if H._report is None else H._report
    d = out.data
    d["meta"] = H.meta
    d["p"] = H.p
    d["dim"] = H.dim
    d["axioms"] = rep.overall
    if not rep.overall:
        out.reports["axioms"] = rep
        out.skipped.append("all analyses: axioms fail")
        return out
    d["commutative"] = hopf.is_commutative(H)
    d["cocommutative"] = hopf.is_cocommutative(H)
    d["local"] = is_local(H).to_dict()
    d["antipode_invertible"] = gfp.rref(H.field, H.antipode)[0] == H.dim
    try:
        d["connected"] = st.is_connected(H)
        filt = st.coradical_filtration_dual(H)
        d["coradical_dims"] = list(filt.dims)
        P = st.primitives(H)
        d["primitive_dim"] = P.dim
        G = st.group_likes(H)
        d["group_likes"] = {"count": len(G), "complete": G.complete,
                            "coradical_dim": G.coradical_dim}
        ta = theorem_a_check(H)
        d["theorem_a"] = ta.to_dict()
        out.reports["theorem_a"] = ta.to_report()
        d["upper_series_dims"] = list(se.upper_power_series(H, check=False).dims)
    except UnsupportedClass as e:
        out.skipped.append(f"coalgebra structure: {e}")
        G = None
    K = hopf.dual(H)
    if K.alg.is_commutative():
        d["lower_series_dims_of_dual"] = list(se.lower_power_series(K, check=False).dims)
    else:
        out.skipped.append("lower series of the dual: dual not commutative")
    if d.get("connected"):
        out.reports["corollary_b"] = corollary_b_check(H)
    else:
        out.skipped.append("primitive-space locality check: not connected")
    if d["cocommutative"] and d.get("connected") and with_duality:
        out.reports["duality"] = se.verify_duality(H)
    elif with_duality:
        out.skipped.append("power-series duality: needs connected cocommutative H")
    if G is not None and d["cocommutative"] and G.complete:
        out.reports["pointed"] = pointed_decomposition_check(H)
    else:
        out.skipped.append("pointed decomposition: needs cocommutative H with complete group-likes")
    return out
