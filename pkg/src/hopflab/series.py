"""Upper and lower power series and checks of the statements relating them.

Lower series of a commutative K:  Gamma_n(K) = {a ** (p ** n)}, an image of a
linear map.  Upper series of H:  Gamma^0 = k,  Gamma^n = k<H_{p^(n-1)}>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from . import gfp
from . import hopf
from . import structure as st
from .errors import HopfLabError, NotCommutative, PreconditionError
from .gfp import Subspace
from .hopf import HopfAlgebra
from .report import VerificationReport


@dataclass
class SeriesChain:
    parent: HopfAlgebra
    kind: str  # "upper" | "lower"
    terms: list
    stabilized_at: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)

    def term(self, n: int) -> Subspace:
        return self.terms[min(n, len(self.terms) - 1)]

    def __len__(self) -> int:
        return len(self.terms)


def lower_power_series(K: HopfAlgebra, *, check: bool = True) -> SeriesChain:
    """Gamma_0 = K, Gamma_n = image of a -> a**(p**n), until two consecutive
    terms agree. Each term is checked to be a normal Hopf subalgebra."""
    if not K.alg.is_commutative():
        raise NotCommutative("the lower power series needs a commutative Hopf algebra")
    f = K.field
    F = alg.frobenius_matrix(K.alg)
    terms = [K.full()]
    power = np.eye(K.dim, dtype=gfp.DTYPE)
    while True:
        power = gfp.matmul(f, power, F)
        nxt = Subspace.span(f, power, K.dim)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    if check:
        for n, T in enumerate(terms):
            if not hopf.is_normal_hopf_subalgebra(K, T):
                raise HopfLabError(f"Gamma_{n} is not a normal Hopf subalgebra")
    return SeriesChain(K, "lower", terms, len(terms) - 1)


def upper_power_series(H: HopfAlgebra, *, check: bool = True) -> SeriesChain:
    """Gamma^0 = k, Gamma^n = subalgebra generated by H_{p^(n-1)}, until H."""
    filt = st.coradical_filtration_dual(H)
    p = H.p
    terms = [H.unit_line()]
    n = 1
    while not terms[-1].is_full():
        gens = filt.term(p ** (n - 1)).basis
        terms.append(alg.generated_subalgebra(H.alg, list(gens)))
        n += 1
    if check:
        for k, T in enumerate(terms):
            if not hopf.is_hopf_subalgebra(H, T):
                raise HopfLabError(f"Gamma^{k} is not a Hopf subalgebra")
    first = next(i for i, T in enumerate(terms) if T == terms[-1])
    return SeriesChain(H, "upper", terms, first)


# ---------------------------------------------------------------- helpers


def _local(H: HopfAlgebra) -> bool:
    return alg.ideal_power_chain(hopf.augmentation_ideal(H), H.alg, check=False).nilpotent


def _require_connected_cocommutative(H: HopfAlgebra) -> None:
    hopf.require_verified(H)
    if not hopf.is_cocommutative(H):
        raise PreconditionError("statement is only asserted for cocommutative H")
    if not st.is_connected(H):
        raise PreconditionError("statement is only asserted for connected H")


def _levels(upper: SeriesChain, lower: SeriesChain) -> range:
    return range(max(len(upper), len(lower)) + 1)


def _two_sided(H: HopfAlgebra, K: Subspace) -> Subspace:
    """H K^+ H."""
    return hopf.hopf_ideal_of(H, K)


def _witness(a: Subspace, b: Subspace):
    """A basis vector of one side missing from the other."""
    for v in a.basis:
        if not b.contains(v):
            return ("left-only", v.tolist())
    for v in b.basis:
        if not a.contains(v):
            return ("right-only", v.tolist())
    return None


def _pair(H: HopfAlgebra):
    upper = upper_power_series(H)
    K = hopf.dual(H)
    lower = lower_power_series(K)
    return upper, K, lower


# ---------------------------------------------------------------- checks


def verify_duality(H: HopfAlgebra) -> VerificationReport:
    """Gamma^n(H) = ann(H* Gamma_n(H*)^+ H*) and, mirrored,
    Gamma_n(H*) = ann(H Gamma^n(H)^+ H), for every level."""
    _require_connected_cocommutative(H)
    rep = VerificationReport(f"power-series duality ({H.meta})")
    upper, K, lower = _pair(H)
    rep.note("upper dims", list(upper.dims))
    rep.note("lower dims of dual", list(lower.dims))
    for n in _levels(upper, lower):
        Gu, Gl = upper.term(n), lower.term(n)
        lhs = _two_sided(K, Gl).annihilator()
        rep.add(f"Gamma^{n}(H) = ann(H* Gamma_{n}(H*)^+ H*)", Gu == lhs, _witness(Gu, lhs))
        rhs = _two_sided(H, Gu).annihilator()
        rep.add(f"Gamma_{n}(H*) = ann(H Gamma^{n}(H)^+ H)", Gl == rhs, _witness(Gl, rhs))
    return rep


def verify_factor_dims(H: HopfAlgebra) -> VerificationReport:
    """dim Gamma^n / Gamma^m = dim Gamma_m(H*) / Gamma_n(H*) for n >= m, with both
    quotient Hopf algebras built and axiom-checked."""
    _require_connected_cocommutative(H)
    rep = VerificationReport(f"factor dimensions ({H.meta})")
    upper, K, lower = _pair(H)
    top = max(len(upper), len(lower))
    for n in range(top):
        Un = hopf.hopf_subalgebra(H, upper.term(n))
        for m in range(n + 1):
            Lm = hopf.hopf_subalgebra(K, lower.term(m))
            q_up, _ = hopf.quotient_hopf(Un.as_hopf, Un.to_local(upper.term(m)))
            q_lo, _ = hopf.quotient_hopf(Lm.as_hopf, Lm.to_local(lower.term(n)))
            ok_ax = hopf.verify_axioms(q_up).overall and hopf.verify_axioms(q_lo).overall
            rep.add(f"quotients Gamma^{n}/Gamma^{m} and Gamma_{m}/Gamma_{n} are Hopf", ok_ax)
            ratio = lower.term(m).dim // lower.term(n).dim
            exact = lower.term(m).dim % lower.term(n).dim == 0
            dims = (q_up.dim, q_lo.dim, ratio)
            rep.add(
                f"dim Gamma^{n}/Gamma^{m} = dim Gamma_{m}(H*)/Gamma_{n}(H*)",
                exact and q_up.dim == q_lo.dim == ratio,
                dims,
            )
    return rep


def verify_radical_lemmas(H: HopfAlgebra) -> VerificationReport:
    """With J the radical of H* and J_n = Gamma_n(H*)^+: J_n in J^(p^n),
    J_n meet J^(p^n + 1) = J_n^2, the dimension formula for Gamma_(n-1)/Gamma_n,
    and H_(p^n - 1) inside ann(H* J_n H*)."""
    _require_connected_cocommutative(H)
    rep = VerificationReport(f"radical lemmas ({H.meta})")
    p = H.p
    K = hopf.dual(H)
    lower = lower_power_series(K)
    J = st.dual_radical(H).radical
    chain = alg.ideal_power_chain(J, K.alg, check=False)
    filt = st.coradical_filtration_dual(H)

    def Jn(n):
        return hopf.plus_part(K, lower.term(n))

    def Jpow(k):
        return alg.ideal_power(chain, k)

    for n in range(1, len(lower) + 2):
        q = p**n
        A = Jn(n)
        rep.add(f"J_{n} in J^{q}", A <= Jpow(q), n)
        meet = A & Jpow(q + 1)
        sq = alg.subspace_product(A, A, K.alg)
        rep.add(f"J_{n} meet J^{q + 1} = J_{n}^2", meet == sq, (meet.dim, sq.dim))

        prev = Jn(n - 1)
        r = p ** (n - 1)
        e1 = prev.dim - (prev & Jpow(r + 1)).dim
        big = alg.subspace_product(prev, K.full(), K.alg) + Jpow(r + 1)
        e2 = big.dim - Jpow(r + 1).dim
        Gp, Gn = lower.term(n - 1), lower.term(n)
        handle = hopf.hopf_subalgebra(K, Gp)
        quo, _ = hopf.quotient_hopf(handle.as_hopf, handle.to_local(Gn))
        ratio_ok = Gp.dim == Gn.dim * p**e1
        rep.add(
            f"dim Gamma_{n - 1}/Gamma_{n} = p^dim(J_{n - 1}/(J^{r + 1} meet J_{n - 1}))",
            ratio_ok and quo.dim == p**e1,
            (Gp.dim, Gn.dim, quo.dim, e1),
        )
        # dim (H*/Gamma_n)* / dim (H*/Gamma_{n-1})* with H*/Gamma := H*/(Gamma^+ H*)
        cod_n = K.dim - alg.subspace_product(A, K.full(), K.alg).dim
        cod_p = K.dim - alg.subspace_product(prev, K.full(), K.alg).dim
        rep.add(
            f"p^dim((J_{n - 1}H* + J^{r + 1})/J^{r + 1}) = dim(H*/Gamma_{n})/dim(H*/Gamma_{n - 1})",
            e1 == e2 and cod_n == cod_p * p**e2,
            (e1, e2, cod_n, cod_p),
        )
        W = _two_sided(K, lower.term(n)).annihilator()
        Hq = filt.term(q - 1)
        rep.add(f"H_{q - 1} in ann(H* J_{n} H*)", Hq <= W, (Hq.dim, W.dim))
    return rep


def verify_factor_equivalences(H: HopfAlgebra) -> VerificationReport:
    """Gamma^1 local, every Gamma^n/Gamma^(n-1) local, H local coincide; dually
    K/Gamma_1, every Gamma_(n-1)/Gamma_n, K connected coincide for K = H*."""
    _require_connected_cocommutative(H)
    rep = VerificationReport(f"factor equivalences ({H.meta})")
    upper, K, lower = _pair(H)

    g1 = _local(hopf.hopf_subalgebra(H, upper.term(1)).as_hopf)
    factors = []
    for n in range(1, len(upper)):
        handle = hopf.hopf_subalgebra(H, upper.term(n))
        quo, _ = hopf.quotient_hopf(handle.as_hopf, handle.to_local(upper.term(n - 1)))
        factors.append(_local(quo))
    h_local = _local(H)
    trio = (g1, all(factors), h_local)
    rep.note("Gamma^1 local, factors local, H local", trio, factors)
    rep.add("local: Gamma^1 <=> all factors <=> H", len(set(trio)) == 1, trio)

    top, _ = hopf.quotient_hopf(K, lower.term(1))
    c1 = st.is_connected(hopf_checked(top))
    cfactors = []
    for n in range(1, len(lower) + 1):
        handle = hopf.hopf_subalgebra(K, lower.term(n - 1))
        quo, _ = hopf.quotient_hopf(handle.as_hopf, handle.to_local(lower.term(n)))
        cfactors.append(st.is_connected(hopf_checked(quo)))
    k_conn = st.is_connected(hopf_checked(K))
    trio2 = (c1, all(cfactors), k_conn)
    rep.note("K/Gamma_1 connected, factors connected, K connected", trio2, cfactors)
    rep.add("connected: K/Gamma_1 <=> all factors <=> K", len(set(trio2)) == 1, trio2)
    rep.add("H local <=> H* connected", h_local == k_conn, (h_local, k_conn))
    return rep


def hopf_checked(H: HopfAlgebra) -> HopfAlgebra:
    return hopf.require_verified(H)


def verify_dim_inequality(H: HopfAlgebra, K: hopf.HopfSubalgebraHandle) -> VerificationReport:
    """dim H / dim K >= p^(dim H_n - dim K_n) for every n with K_i = H_i, i < n."""
    if not st.is_connected(H) or not st.is_connected(hopf_checked(K.as_hopf)):
        raise PreconditionError("dimension inequality needs connected H and K")
    rep = VerificationReport(f"dimension inequality ({H.meta}, dim K = {K.dim})")
    p = H.p
    fh = st.coradical_filtration_dual(H)
    fk = st.coradical_filtration_dual(K.as_hopf)
    n = 0
    while True:
        Hn = fh.term(n)
        Kn = K.to_parent(fk.term(n))
        gap = Hn.dim - Kn.dim
        rep.add(f"n={n}: dim H/dim K >= p^(dim H_{n} - dim K_{n})",
                H.dim >= K.dim * p**gap, (H.dim, K.dim, gap))
        if Hn != Kn or n >= max(len(fh), len(fk)):
            break
        n += 1
    return rep


def verify_series_normality(H: HopfAlgebra) -> VerificationReport:
    """Lower-series terms of H* are normal; upper-series terms of a connected
    cocommutative H are normal. Also dim(H/K) dim K = dim H for each."""
    rep = VerificationReport(f"series normality ({H.meta})")
    K = hopf.dual(H)
    if K.alg.is_commutative():
        lower = lower_power_series(K, check=False)
        for n, T in enumerate(lower.terms):
            ok = hopf.is_normal_hopf_subalgebra(K, T)
            rep.add(f"Gamma_{n}(H*) normal", ok)
            if ok:
                q, _ = hopf.quotient_hopf(K, T, check_normal=False)
                rep.add(f"dim(H*/Gamma_{n}) dim Gamma_{n} = dim H*", q.dim * T.dim == K.dim)
    else:
        rep.skip("dual is not commutative: no lower series")
    if hopf.is_cocommutative(H) and st.is_connected(H):
        upper = upper_power_series(H, check=False)
        for n, T in enumerate(upper.terms):
            w: list = []
            ok = hopf.is_normal_hopf_subalgebra(H, T, witness=w)
            rep.add(f"Gamma^{n}(H) normal", ok, w)
            if ok:
                q, _ = hopf.quotient_hopf(H, T, check_normal=False)
                rep.add(f"dim(H/Gamma^{n}) dim Gamma^{n} = dim H", q.dim * T.dim == H.dim)
    else:
        rep.skip("upper-series normality is only asserted for connected cocommutative H")
    return rep
