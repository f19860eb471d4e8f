"""Shared fixture corpus for the test modules (built once per session)."""

from __future__ import annotations

import functools
import os

import numpy as np

from hopflab import algebra as alg
from hopflab import builders, hopf, locality
from hopflab.gfp import FieldSpec

SEED = int(os.environ.get("HOPFLAB_SEED", "20240611"))
PRIMES = (2, 3, 5)


@functools.lru_cache(maxsize=None)
def build(name: str, p, *args) -> hopf.HopfAlgebra:
    if name == "dual":
        return hopf.dual(build(p, *args))
    f = FieldSpec(p)
    if name == "A":
        return builders.example_A(f, *args)
    if name == "B":
        return builders.example_B(f, *args)
    if name == "cyclic":
        return builders.group_algebra(builders.cyclic_group(args[0]), f)
    if name == "klein":
        c2 = builders.cyclic_group(2)
        return builders.group_algebra(builders.direct_product(c2, c2), f)
    if name == "truncated":
        return builders.truncated_line(f)
    if name == "witt":
        return builders.witt_line(f)
    if name == "divided":
        return builders.divided_line(f)
    if name == "heisenberg":
        return builders.heisenberg(f)
    if name == "tpoly":
        return builders.truncated_polynomial(f, args[0])
    if name == "smash":
        return builders.smash_demo(f)
    if name == "smash-trivial":
        return builders.smash_trivial_demo()
    raise KeyError(name)


def ids(keys) -> list[str]:
    return ["-".join(map(str, k)) for k in keys]


def axiom_corpus() -> list[tuple]:
    keys = []
    for p in (2, 3):
        f = FieldSpec(p)
        keys += [("A", p, *t) for t in builders.valid_A_parameters(f)]
        keys += [("B", p, s) for s in range(p)]
    for p in PRIMES:
        keys += [("cyclic", p, n) for n in sorted({2, 3, 4, p})]
        keys += [("truncated", p), ("divided", p), ("witt", p)]
    keys += [("heisenberg", 2), ("heisenberg", 3), ("smash", 3), ("smash-trivial", 2)]
    return keys


# connected and cocommutative, with the series-duality statements asserted
CONNECTED_COCOMMUTATIVE = [
    ("truncated", 2), ("truncated", 3), ("truncated", 5),
    ("divided", 2), ("divided", 3), ("divided", 5),
    ("heisenberg", 2), ("heisenberg", 3),
    ("tpoly", 2, 2), ("tpoly", 2, 3), ("tpoly", 3, 2),
    ("dual", "tpoly", 2, 2), ("dual", "tpoly", 3, 2),
    ("dual", "divided", 3), ("dual", "divided", 5),
]
STRESS = [("heisenberg", 5)]

COCOMMUTATIVE = CONNECTED_COCOMMUTATIVE + [
    ("witt", 2), ("witt", 3), ("witt", 5),
    ("cyclic", 2, 2), ("cyclic", 2, 3), ("cyclic", 2, 4), ("cyclic", 3, 3), ("cyclic", 3, 2),
    ("cyclic", 5, 5), ("cyclic", 5, 4), ("klein", 2),
    ("dual", "cyclic", 3, 3), ("dual", "cyclic", 2, 2),
    ("smash", 3), ("smash-trivial", 2),
]

NON_COCOMMUTATIVE = [("A", 2, 0, 0, 0), ("A", 2, 1, 0, 1), ("A", 3, 0, 0, 0), ("A", 3, 1, 0, 2),
                     ("B", 2, 0), ("B", 2, 1), ("B", 3, 0), ("B", 3, 2)]


# ---------------------------------------------------------------- random smash products


def random_smash(rng: np.random.Generator, max_dim: int = 50) -> hopf.HopfAlgebra:
    """A # k[C_m] with A connected cocommutative and C_m acting by scalings."""
    while True:
        H = _random_smash(rng, max_dim)
        if H is not None:
            return H


def _random_smash(rng, max_dim):
    p = int(rng.choice(PRIMES))
    f = FieldSpec(p)
    kind = str(rng.choice(["truncated", "witt", "abelian2", "heisenberg"] if p == 2
                          else ["truncated", "witt", "abelian2"]))
    if kind == "truncated":
        A = builders.truncated_line(f)
    elif kind == "witt":
        A = builders.witt_line(f)
    elif kind == "heisenberg":
        A = builders.heisenberg(f)
    else:
        pm = rng.integers(0, p, size=(2, 2)) * rng.integers(0, 2)
        A = builders.abelian_restricted(f, pm, names=["u", "v"])
    # one scalar c for all generators keeps every relation; c^m = 1 makes C_m act
    c = int(rng.integers(1, p))
    order = next(k for k in range(1, p) if pow(c, k, p) == 1)
    m = order * int(rng.choice([1, 2, 3, 4] if p == 2 else [1, p]))
    if A.dim * m > max_dim:
        return None
    G = builders.cyclic_group(m)
    ngen = sum(1 for lab in A.labels if lab != "1" and " " not in lab and "^" not in lab)
    weights = builders.pbw_weights(A, [c] * ngen)
    return builders.smash_product(A, G, builders.scaling_action(A, G, 1 % m, weights))


# ---------------------------------------------------------------- fault injection


def _clone(H, **changes) -> hopf.HopfAlgebra:
    parts = dict(mult=H.mult.copy(), unit=H.unit.copy(), comult=H.comult.copy(),
                 counit=H.counit.copy(), antipode=H.antipode.copy())
    for k, fn in changes.items():
        parts[k] = fn(parts[k]) % H.p
    return hopf.HopfAlgebra(H.field, parts["mult"], parts["unit"], parts["comult"],
                            parts["counit"], parts["antipode"], list(H.labels), f"faulty {H.meta}")


def _bump(idx, by=1):
    def fn(a):
        a = a.copy()
        a[idx] += by
        return a
    return fn


def fault_corpus() -> dict:
    """name -> faulty tensors; every entry must fail verify_axioms."""
    t3 = build("truncated", 3)
    h2 = build("heisenberg", 2)
    c3 = build("cyclic", 3, 3)
    d3 = build("divided", 3)
    b2 = build("B", 2, 0)
    f3 = FieldSpec(3)
    faults = {
        "mult entry t*t": _clone(t3, mult=_bump((1, 1, 2))),
        "mult entry heisenberg": _clone(h2, mult=_bump((1, 2, 3))),
        "mult entry group algebra": _clone(c3, mult=_bump((1, 1, 0))),
        "comult entry": _clone(d3, comult=_bump((1, 1, 1))),
        "comult not multiplicative": _clone(c3, comult=lambda D: _grouplike_swap(D)),
        "antipode zeroed": _clone(t3, antipode=_bump((1, 1), 1)),
        "antipode identity on group": _clone(c3, antipode=lambda S: np.eye(3, dtype=S.dtype)),
        "antipode of B": _clone(b2, antipode=_bump((3, 3))),
        "counit": _clone(d3, counit=_bump(1)),
        "unit": _clone(t3, unit=_bump(1)),
        "lambda*sigma != 0": builders.assemble_presentation(
            builders.example_A_presentation(f3, 1, 1, 0, check=False)),
        "(1-sigma)*mu != 0": builders.assemble_presentation(
            builders.example_A_presentation(f3, 0, 0, 1, check=False)),
    }
    return faults


def _grouplike_swap(D):
    D = D.copy()
    D[1] = 0
    D[1, 1, 2] = 1  # Delta g = g (x) g^2
    return D


def dim_pairs():
    """(H, K) pairs of connected Hopf algebras with K a Hopf subalgebra."""
    out = []
    H = build("heisenberg", 3)
    for gens in (["z"], ["x"], ["x", "z"], ["x", "y"], []):
        S = alg.generated_subalgebra(H.alg, [H.basis_vector(g) for g in gens])
        out.append((H, S))
    D = build("divided", 3)
    out.append((D, alg.generated_subalgebra(D.alg, [D.basis_vector("y")])))
    T = build("tpoly", 2, 3)
    out.append((T, alg.generated_subalgebra(T.alg, [T.basis_vector("t^2")])))
    A = build("A", 2, 0, 0, 0)
    out.append((A, locality.gamma1(A).space))
    return out
