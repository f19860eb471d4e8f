"""Constructors for verified Hopf algebras.

Every public builder runs :func:`hopflab.hopf.verify_axioms` and raises
:class:`~hopflab.errors.AxiomFailure` instead of returning a structure that
fails it. The ``assemble_*`` functions return the raw, unverified tensors and
exist for fault injection.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import gfp
from .errors import AxiomFailure, ConstraintViolation, InvalidInput
from .gfp import DTYPE, FieldSpec, as_field
from .hopf import HopfAlgebra, verify_axioms

# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class GroupTable:
    order: int
    mult: tuple
    identity: int
    inverse: tuple
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(tuple(int(x) for x in row) for row in self.mult))
        object.__setattr__(self, "inverse", tuple(int(x) for x in self.inverse))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(self.order)))
        self.validate()

    def validate(self) -> None:
        n, m, e = self.order, self.mult, self.identity
        if len(m) != n or any(len(r) != n for r in m) or len(self.inverse) != n:
            raise InvalidInput("group table has the wrong shape")
        if any(not 0 <= x < n for r in m for x in r) or not 0 <= e < n:
            raise InvalidInput("group table entry out of range")
        for a in range(n):
            if m[e][a] != a or m[a][e] != a:
                raise InvalidInput(f"identity law fails at {a}")
            if m[a][self.inverse[a]] != e or m[self.inverse[a]][a] != e:
                raise InvalidInput(f"inverse law fails at {a}")
        for a, b, c in itertools.product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise InvalidInput(f"associativity fails at {(a, b, c)}")

    def power(self, g: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.mult[r][g]
        return r


def cyclic_group(n: int) -> GroupTable:
    labels = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return GroupTable(
        order=n,
        mult=[[(a + b) % n for b in range(n)] for a in range(n)],
        identity=0,
        inverse=[(-a) % n for a in range(n)],
        labels=tuple(labels),
    )


def direct_product(G: GroupTable, K: GroupTable) -> GroupTable:
    pairs = list(itertools.product(range(G.order), range(K.order)))
    idx = {pr: i for i, pr in enumerate(pairs)}
    mult = [
        [idx[(G.mult[a][c], K.mult[b][d])] for (c, d) in pairs] for (a, b) in pairs
    ]
    return GroupTable(
        order=len(pairs),
        mult=mult,
        identity=idx[(G.identity, K.identity)],
        inverse=[idx[(G.inverse[a], K.inverse[b])] for (a, b) in pairs],
        labels=tuple(f"({G.labels[a]},{K.labels[b]})" for a, b in pairs),
    )


def _checked(H: HopfAlgebra) -> HopfAlgebra:
    rep = verify_axioms(H)
    if not rep.overall:
        raise AxiomFailure(f"{H.meta}: axiom verification failed", rep)
    return H


def group_algebra(t: GroupTable, f) -> HopfAlgebra:
    f = as_field(f)
    n = t.order
    mult = np.zeros((n, n, n), dtype=DTYPE)
    comult = np.zeros((n, n, n), dtype=DTYPE)
    antipode = np.zeros((n, n), dtype=DTYPE)
    for a in range(n):
        for b in range(n):
            mult[a, b, t.mult[a][b]] = 1
        comult[a, a, a] = 1
        antipode[a, t.inverse[a]] = 1
    unit = gfp.unit_vector(n, t.identity)
    H = HopfAlgebra(f, mult, unit, comult, np.ones(n, dtype=DTYPE), antipode,
                    list(t.labels), f"k[G] order {n} over GF({f.p})")
    return _checked(H)


# ---------------------------------------------------------------- PBW rewriting

# An element is a dict {exponent tuple: coefficient mod p}.


def _add_into(acc: dict, elem: Mapping, coeff: int, p: int) -> None:
    for mono, c in elem.items():
        v = (acc.get(mono, 0) + coeff * c) % p
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)


class PBWNormalizer:
    """Normal-form multiplication on ordered monomials x_1^a_1 ... x_d^a_d.

    Out-of-order neighbours are swapped with ``x_j x_i -> x_i x_j + [x_j, x_i]``
    (j > i) and ``x_i^p`` is replaced by its power form. Every correction term
    has lower degree, and a swap keeps degree while removing an inversion, so
    rewriting terminates.
    """

    def __init__(self, p: int, d: int, brackets: Mapping, powers: Mapping):
        self.p = p
        self.d = d
        # linear forms: dict {generator index or None (the unit): coefficient}
        self.brackets = {k: self._form(v) for k, v in brackets.items()}
        self.powers = {k: self._form(v) for k, v in powers.items()}
        self._memo: dict = {}

    def _form(self, form: Mapping) -> dict:
        out: dict = {}
        for g, c in form.items():
            mono = [0] * self.d
            if g is not None:
                mono[g] = 1
            _add_into(out, {tuple(mono): 1}, c % self.p, self.p)
        return out

    def monomials(self) -> list[tuple]:
        return list(itertools.product(range(self.p), repeat=self.d))

    def gen(self, i: int) -> tuple:
        mono = [0] * self.d
        mono[i] = 1
        return tuple(mono)

    def mul_mono_gen(self, mono: tuple, i: int) -> dict:
        key = (mono, i)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        p = self.p
        nz = [k for k in range(self.d) if mono[k]]
        last = nz[-1] if nz else -1
        if last < i:
            m = list(mono)
            m[i] += 1
            out = {tuple(m): 1}
        elif last == i:
            m = list(mono)
            m[i] += 1
            if m[i] < p:
                out = {tuple(m): 1}
            else:
                m[i] = 0
                out = self.mul_elem_elem({tuple(m): 1}, self.powers.get(i, {}))
        else:
            # mono = prefix * x_last,  x_last x_i = x_i x_last + [x_last, x_i]
            m = list(mono)
            m[last] -= 1
            prefix = tuple(m)
            out = {}
            for t, c in self.mul_mono_gen(prefix, i).items():
                _add_into(out, self.mul_mono_gen(t, last), c, p)
            corr = self.brackets.get((last, i), {})
            if corr:
                _add_into(out, self.mul_elem_elem({prefix: 1}, corr), 1, p)
        self._memo[key] = out
        return out

    def mul_elem_gen(self, elem: Mapping, i: int) -> dict:
        out: dict = {}
        for mono, c in elem.items():
            _add_into(out, self.mul_mono_gen(mono, i), c, self.p)
        return out

    def word(self, mono: tuple) -> list[int]:
        return [k for k in range(self.d) for _ in range(mono[k])]

    def mul_elem_elem(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for mono, c in b.items():
            cur = dict(a)
            for g in self.word(mono):
                cur = self.mul_elem_gen(cur, g)
            _add_into(out, cur, c, self.p)
        return out

    def eval_word(self, word: Sequence[int]) -> dict:
        cur = {tuple([0] * self.d): 1}
        for g in word:
            cur = self.mul_elem_gen(cur, g)
        return cur

    def mult_tensor(self) -> np.ndarray:
        monos = self.monomials()
        index = {m: k for k, m in enumerate(monos)}
        n = len(monos)
        M = np.zeros((n, n, n), dtype=DTYPE)
        for a, ma in enumerate(monos):
            row: dict = {}
            for b, mb in enumerate(monos):
                if b == 0:
                    prod = {ma: 1}
                else:
                    nz = [k for k in range(self.d) if mb[k]]
                    last = nz[-1]
                    prev = list(mb)
                    prev[last] -= 1
                    prod = self.mul_elem_gen(row[tuple(prev)], last)
                row[mb] = prod
                for mono, c in prod.items():
                    M[a, b, index[mono]] = c
        return M


def monomial_label(names: Sequence[str], mono: tuple) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
    return " ".join(parts) if parts else "1"


def _to_vector(elem: Mapping, index: Mapping, n: int, p: int) -> np.ndarray:
    v = np.zeros(n, dtype=DTYPE)
    for mono, c in elem.items():
        v[index[mono]] = c % p
    return v


def _right_mult(M: np.ndarray, c: int) -> np.ndarray:
    return M[:, c, :]


def _tensor_product(f: FieldSpec, M: np.ndarray, C1: np.ndarray, C2: np.ndarray) -> np.ndarray:
    """(C1)(C2) in the algebra H (x) H, both given as n x n coefficient matrices."""
    out = np.zeros_like(C1)
    for c, d in np.argwhere(C2):
        term = gfp.matmul(f, gfp.matmul(f, _right_mult(M, c).T, C1), _right_mult(M, d))
        out = (out + C2[c, d] * term) % f.p
    return out


# ---------------------------------------------------------------- restricted Lie data


@dataclass
class RestrictedLieData:
    """Restricted Lie algebra on generators x_1..x_d.

    ``bracket[(j, i)]`` (j > i) and ``pmap[i]`` are coefficient vectors of
    length d. Consistency is certified by associativity of the built algebra.
    """

    field: FieldSpec
    d: int
    bracket: dict = field(default_factory=dict)
    pmap: dict = field(default_factory=dict)
    names: list = field(default_factory=list)

    def __post_init__(self):
        self.field = as_field(self.field)
        if not self.names:
            self.names = [f"x{i + 1}" for i in range(self.d)]
        for (j, i) in self.bracket:
            if not j > i:
                raise InvalidInput("brackets are stored as [x_j, x_i] with j > i")

    def forms(self):
        def lin(vec):
            return {k: int(c) for k, c in enumerate(vec) if int(c) % self.field.p}

        return ({k: lin(v) for k, v in self.bracket.items()},
                {k: lin(v) for k, v in self.pmap.items()})


def restricted_enveloping(L: RestrictedLieData, meta: str = "") -> HopfAlgebra:
    """u(g) on the PBW basis, all generators primitive.

    The coproduct of a PBW monomial is expanded by the binomial formula (the
    ordered factors never need rewriting since exponents stay below p); the
    antipode sends x^a to (-1)^|a| times the reversed word.
    """
    f = L.field
    p = f.p
    brackets, powers = L.forms()
    norm = PBWNormalizer(p, L.d, brackets, powers)
    monos = norm.monomials()
    index = {m: k for k, m in enumerate(monos)}
    n = len(monos)
    M = norm.mult_tensor()
    D = np.zeros((n, n, n), dtype=DTYPE)
    S = np.zeros((n, n), dtype=DTYPE)
    for a, ma in enumerate(monos):
        for mb in itertools.product(*(range(e + 1) for e in ma)):
            coeff = 1
            for e, b in zip(ma, mb):
                coeff = coeff * math.comb(e, b) % p
            if coeff:
                rest = tuple(e - b for e, b in zip(ma, mb))
                D[a, index[mb], index[rest]] = coeff
        word = norm.word(ma)[::-1]
        sign = (-1) ** len(word)
        S[a] = _to_vector(norm.eval_word(word), index, n, p) * sign % p
    counit = gfp.unit_vector(n, 0)
    labels = [monomial_label(L.names, m) for m in monos]
    H = HopfAlgebra(f, M, gfp.unit_vector(n, 0), D, counit, S, labels,
                    meta or f"u(g) d={L.d} over GF({p})")
    return _checked(H)


# ---------------------------------------------------------------- presentations


def _parse_word(names: Sequence[str], word) -> list[int]:
    if isinstance(word, str):
        toks = word.split()
        if toks == ["1"]:
            return []
    else:
        toks = list(word)
    out = []
    for t in toks:
        if isinstance(t, int):
            out.append(t)
            continue
        base, _, exp = t.partition("^")
        if base not in names:
            raise InvalidInput(f"unknown generator {base!r}")
        out.extend([names.index(base)] * (int(exp) if exp else 1))
    return out


def _parse_linear(names: Sequence[str], form: Mapping) -> dict:
    out: dict = {}
    for key, c in form.items():
        g = None if key in ("1", None) else (key if isinstance(key, int) else names.index(key))
        out[g] = out.get(g, 0) + int(c)
    return out


@dataclass
class Presentation:
    """Connected Hopf algebra given by generators and relations.

    * ``brackets``: ``{(a, b): {gen or "1": coeff}}`` meaning [a, b] = form;
      pairs may be given in either order, unlisted pairs commute.
    * ``powers``: ``{a: form}`` meaning a^p = form (default 0).
    * ``tails``: ``{a: [(word, word, coeff), ...]}`` added to the primitive part
      of Delta(a); words are space-separated generator names, ``"1"`` is the unit.
    * ``antipode``: ``{a: {word: coeff}}`` (default S(a) = -a).

    Right-hand sides of brackets and powers must have degree <= 1, tails
    degree <= 2 per side.
    """

    field: FieldSpec
    generators: list
    brackets: dict = field(default_factory=dict)
    powers: dict = field(default_factory=dict)
    tails: dict = field(default_factory=dict)
    antipode: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    meta: str = ""

    def __post_init__(self):
        self.field = as_field(self.field)
        names = list(self.generators)
        if len(set(names)) != len(names) or not names:
            raise InvalidInput("generator names must be distinct and non-empty")
        for (a, b) in self.brackets:
            if a == b or a not in names or b not in names:
                raise InvalidInput(f"bad bracket key {(a, b)}")
        for form in list(self.brackets.values()) + list(self.powers.values()):
            for key in form:
                if key not in ("1", None) and key not in names:
                    raise InvalidInput(f"linear form mentions unknown symbol {key!r}")
        for a, lst in self.tails.items():
            for wl, wr, _ in lst:
                if len(_parse_word(names, wl)) > 2 or len(_parse_word(names, wr)) > 2:
                    raise InvalidInput("coproduct tails must have degree <= 2 per side")

    def normalizer(self) -> PBWNormalizer:
        names = self.generators
        p = self.field.p
        br: dict = {}
        for (a, b), form in self.brackets.items():
            i, j = names.index(a), names.index(b)
            lin = _parse_linear(names, form)
            if i > j:
                key, sign = (i, j), 1
            else:
                key, sign = (j, i), -1
            acc = br.setdefault(key, {})
            for g, c in lin.items():
                acc[g] = (acc.get(g, 0) + sign * c) % p
        pw = {names.index(a): _parse_linear(names, form) for a, form in self.powers.items()}
        return PBWNormalizer(p, len(names), br, pw)


def assemble_presentation(P: Presentation) -> HopfAlgebra:
    """Build the tensors of a presentation without verifying them."""
    f = P.field
    p = f.p
    names = list(P.generators)
    norm = P.normalizer()
    monos = norm.monomials()
    index = {m: k for k, m in enumerate(monos)}
    n = len(monos)
    d = norm.d
    M = norm.mult_tensor()
    one = index[tuple([0] * d)]

    def vec(word) -> np.ndarray:
        return _to_vector(norm.eval_word(_parse_word(names, word)), index, n, p)

    gen_delta = []
    gen_S = []
    for i, name in enumerate(names):
        C = np.zeros((n, n), dtype=DTYPE)
        x = index[norm.gen(i)]
        C[x, one] += 1
        C[one, x] += 1
        for wl, wr, c in P.tails.get(name, []):
            C = (C + int(c) * np.outer(vec(wl), vec(wr))) % p
        gen_delta.append(C % p)
        if name in P.antipode:
            s = np.zeros(n, dtype=DTYPE)
            for w, c in P.antipode[name].items():
                s = (s + int(c) * vec(w)) % p
        else:
            s = (-gfp.unit_vector(n, x)) % p
        gen_S.append(s)

    D = np.zeros((n, n, n), dtype=DTYPE)
    S = np.zeros((n, n), dtype=DTYPE)
    D[one, one, one] = 1
    S[one, one] = 1
    for a, ma in enumerate(monos):
        if a == one:
            continue
        last = max(k for k in range(d) if ma[k])
        prev = list(ma)
        prev[last] -= 1
        b = index[tuple(prev)]
        # x^a = x^prev * x_last exactly, since the factors are in order
        D[a] = _tensor_product(f, M, D[b], gen_delta[last])
        # S is an anti-homomorphism: S(x^prev x_last) = S(x_last) S(x^prev)
        left = gfp.matmul(f, gen_S[last], M.reshape(n, n * n)).reshape(n, n)
        S[a] = gfp.matmul(f, S[b], left)
    counit = gfp.unit_vector(n, one)
    labels = [monomial_label(names, m) for m in monos]
    return HopfAlgebra(f, M, gfp.unit_vector(n, one), D, counit, S, labels, P.meta or "presentation")


def presentation_hopf(P: Presentation) -> HopfAlgebra:
    return _checked(assemble_presentation(P))


# ---------------------------------------------------------------- named families


def example_A_presentation(f, sigma, lam, mu, *, check: bool = True) -> Presentation:
    f = as_field(f)
    p = f.p
    s, l, m = int(sigma) % p, int(lam) % p, int(mu) % p
    if check:
        if pow(s, p, p) != s:
            raise ConstraintViolation("sigma^p != sigma")
        if l * s % p:
            raise ConstraintViolation(f"lambda*sigma = {l * s % p} != 0")
        if (1 - s) * m % p:
            raise ConstraintViolation(f"(1-sigma)*mu = {(1 - s) * m % p} != 0")
    return Presentation(
        f,
        ["x", "y", "z"],
        brackets={("x", "y"): {}, ("x", "z"): {"x": s}, ("y", "z"): {"y": 1 - s}},
        powers={"x": {}, "y": {}, "z": {"z": 1, "x": l, "y": m}},
        tails={"z": [("x", "y", 1)]},
        antipode={"x": {"x": -1}, "y": {"y": -1}, "z": {"z": -1, "x y": 1}},
        params={"sigma": s, "lambda": l, "mu": m},
        meta=f"A({s},{l},{m}) over GF({p})",
    )


def example_A(f, sigma, lam, mu) -> HopfAlgebra:
    return presentation_hopf(example_A_presentation(f, sigma, lam, mu))


def example_B_presentation(f, sigma) -> Presentation:
    f = as_field(f)
    s = int(sigma) % f.p
    return Presentation(
        f,
        ["x", "y", "z"],
        brackets={("x", "y"): {}, ("x", "z"): {"x": 1, "y": s}, ("y", "z"): {}},
        powers={"x": {"y": 1}, "y": {}, "z": {"z": 1}},
        tails={"z": [("x", "y", 1), ("y", "y", s)]},
        antipode={"x": {"x": -1}, "y": {"y": -1}, "z": {"z": -1, "x y": 1, "y y": s}},
        params={"sigma": s},
        meta=f"B({s}) over GF({f.p})",
    )


def example_B(f, sigma) -> HopfAlgebra:
    return presentation_hopf(example_B_presentation(f, sigma))


def valid_A_parameters(f) -> list[tuple[int, int, int]]:
    p = as_field(f).p
    return [
        (s, l, m)
        for s, l, m in itertools.product(range(p), repeat=3)
        if l * s % p == 0 and (1 - s) * m % p == 0
    ]


def truncated_line(f) -> HopfAlgebra:
    """GF(p)[t]/(t^p), t primitive."""
    f = as_field(f)
    return restricted_enveloping(RestrictedLieData(f, 1, names=["t"]), f"truncated line over GF({f.p})")


def witt_line(f) -> HopfAlgebra:
    """GF(p)[x]/(x^p - x), x primitive (dual to the group algebra of Z/p)."""
    f = as_field(f)
    return restricted_enveloping(
        RestrictedLieData(f, 1, pmap={0: [1]}, names=["x"]), f"witt line over GF({f.p})"
    )


def divided_line(f) -> HopfAlgebra:
    """u(g) with g = span{x, y}, x^[p] = y, y^[p] = 0; as an algebra GF(p)[x]/(x^(p^2))."""
    f = as_field(f)
    return restricted_enveloping(
        RestrictedLieData(f, 2, pmap={0: [0, 1]}, names=["x", "y"]), f"divided line over GF({f.p})"
    )


def heisenberg(f) -> HopfAlgebra:
    """u(heisenberg): [x, y] = z, z central, trivial p-map; dim p^3."""
    f = as_field(f)
    return restricted_enveloping(
        RestrictedLieData(f, 3, bracket={(1, 0): [0, 0, 1]}, names=["x", "y", "z"]),
        f"u(heisenberg) over GF({f.p})",
    )


def abelian_restricted(f, pmap_matrix, names=None) -> HopfAlgebra:
    """u(g) for abelian g with p-map given on the basis by ``pmap_matrix`` rows."""
    f = as_field(f)
    rows = np.asarray(pmap_matrix, dtype=DTYPE) % f.p
    d = rows.shape[0]
    return restricted_enveloping(
        RestrictedLieData(f, d, pmap={i: list(rows[i]) for i in range(d)}, names=names or []),
        f"u(abelian d={d}) over GF({f.p})",
    )


def truncated_polynomial(f, e: int) -> HopfAlgebra:
    """GF(p)[t]/(t^(p^e)) on the power basis with t primitive."""
    f = as_field(f)
    p = f.p
    n = p**e
    M = np.zeros((n, n, n), dtype=DTYPE)
    D = np.zeros((n, n, n), dtype=DTYPE)
    S = np.zeros((n, n), dtype=DTYPE)
    for a in range(n):
        for b in range(n - a):
            M[a, b, a + b] = 1
        for i in range(a + 1):
            D[a, i, a - i] = math.comb(a, i) % p
        S[a, a] = (-1) ** a % p
    labels = ["1", "t"] + [f"t^{a}" for a in range(2, n)]
    H = HopfAlgebra(f, M, gfp.unit_vector(n, 0), D, gfp.unit_vector(n, 0), S, labels[:n],
                    f"GF({p})[t]/(t^{n})")
    return _checked(H)


# ---------------------------------------------------------------- smash products


def smash_product(A: HopfAlgebra, G: GroupTable, action) -> HopfAlgebra:
    """A # kG for a group acting on A by Hopf automorphisms.

    ``action[g]`` is the matrix of ``a -> g . a`` in row convention. The basis
    is ordered A-major: index ``a * |G| + g``.
    """
    f = A.field
    n, m = A.dim, G.order
    T = [f(np.asarray(action[g])) for g in range(m)]
    eye = np.eye(n, dtype=DTYPE)
    for g in range(m):
        _check_automorphism(A, T[g], g)
    if not np.array_equal(T[G.identity], eye):
        raise InvalidInput("identity must act trivially")
    for g, h in itertools.product(range(m), repeat=2):
        if not np.array_equal(T[G.mult[g][h]], gfp.matmul(f, T[h], T[g])):
            raise InvalidInput(f"action is not a homomorphism at {(g, h)}")

    N = n * m
    M = np.zeros((N, N, N), dtype=DTYPE)
    D = np.zeros((N, N, N), dtype=DTYPE)
    S = np.zeros((N, N), dtype=DTYPE)
    counit = np.zeros(N, dtype=DTYPE)
    for g in range(m):
        Mg = gfp.matmul(f, T[g], A.mult)  # [a, b, x] = e_a (g . e_b)
        ginv = G.inverse[g]
        for h in range(m):
            gh = G.mult[g][h]
            M[g::m, h::m, gh::m] = Mg
        D[g::m, g::m, g::m] = A.comult
        counit[g::m] = A.counit
        S[g::m, ginv::m] = gfp.matmul(f, A.antipode, T[ginv])
    unit = np.zeros(N, dtype=DTYPE)
    unit[G.identity::m] = A.unit
    labels = []
    for a in range(n):
        for g in range(m):
            la, lg = A.labels[a], G.labels[g]
            labels.append(lg if la == "1" else (la if g == G.identity else f"{la}#{lg}"))
    H = HopfAlgebra(f, M, unit, D, counit, S, labels, f"({A.meta}) # k[G order {m}]")
    return _checked(H)


def _check_automorphism(A: HopfAlgebra, T: np.ndarray, g: int) -> None:
    f = A.field
    n = A.dim
    rank, _ = gfp.rref(f, T)
    if rank != n:
        raise InvalidInput(f"action of {g} is not invertible")
    # T(e_i e_j) = T(e_i) T(e_j)
    lhs = gfp.matmul(f, A.mult, T)
    left = gfp.matmul(f, T, A.alg.flat).reshape(n, n, n)  # [i, j, x] = T(e_i) e_j
    rhs = gfp.matmul(f, T, left)  # [i, j', x] = T(e_i) T(e_j')
    if not np.array_equal(lhs, rhs) or not np.array_equal(gfp.matmul(f, A.unit, T), A.unit):
        raise InvalidInput(f"action of {g} is not an algebra automorphism")
    dl = gfp.matmul(f, T, A.comult.reshape(n, n * n)).reshape(n, n, n)
    dr = gfp.matmul(f, gfp.matmul(f, T.T, A.comult), T)
    if not np.array_equal(dl, dr) or not np.array_equal(gfp.matmul(f, T, A.counit), A.counit):
        raise InvalidInput(f"action of {g} is not a coalgebra automorphism")
    if not np.array_equal(gfp.matmul(f, T, A.antipode), gfp.matmul(f, A.antipode, T)):
        raise InvalidInput(f"action of {g} does not commute with the antipode")


def scaling_action(A: HopfAlgebra, G: GroupTable, generator: int, weights) -> list:
    """Action of a cyclic group through diagonal scalings.

    ``weights[i]`` is the scalar by which the distinguished generator acts on
    basis vector i; other elements act by the corresponding powers.
    """
    f = A.field
    base = np.diag(f(weights))
    out = [None] * G.order
    cur = G.identity
    mat = np.eye(A.dim, dtype=DTYPE)
    for _ in range(G.order):
        out[cur] = mat
        cur = G.mult[cur][generator]
        mat = gfp.matmul(f, mat, base)
    if any(o is None for o in out):
        raise InvalidInput("scaling_action needs a cyclic group generated by `generator`")
    return out


def pbw_weights(A: HopfAlgebra, generator_scalars: Sequence[int]) -> list[int]:
    """Diagonal weights on a PBW basis from per-generator scalars (labels are
    read as monomials in the generator names ``A.labels`` were built with)."""
    p = A.p
    gens = [l for l in A.labels if l != "1" and " " not in l and "^" not in l]
    scal = dict(zip(gens, generator_scalars))
    out = []
    for lab in A.labels:
        w = 1
        if lab != "1":
            for tok in lab.split():
                base, _, e = tok.partition("^")
                w = w * pow(int(scal[base]), int(e) if e else 1, p) % p
        out.append(w)
    return out


def smash_demo(f=3) -> HopfAlgebra:
    """GF(3)[t]/(t^3) # k[C2] with the generator acting by t -> -t."""
    f = as_field(f)
    A = truncated_line(f)
    G = cyclic_group(2)
    return smash_product(A, G, scaling_action(A, G, 1, pbw_weights(A, [-1 % f.p])))


def smash_trivial_demo() -> HopfAlgebra:
    """GF(2)[t]/(t^2) # k[C2] with trivial action (a tensor product)."""
    f = FieldSpec(2)
    A = truncated_line(f)
    G = cyclic_group(2)
    return smash_product(A, G, [np.eye(A.dim, dtype=DTYPE)] * 2)
