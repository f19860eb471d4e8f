"""Text formats: ``hsc/1`` (structure constants) and ``hpres/1`` (presentations).

Both are JSON with a canonical layout: keys sorted, sparse entries sorted by
index tuple, one entry per line. ``dumps(loads(s)) == s`` for canonical input.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import builders
from .errors import AxiomFailure, InvalidInput
from .gfp import DTYPE, FieldSpec
from .hopf import HopfAlgebra, verify_axioms

HSC = "hsc/1"
HPRES = "hpres/1"


class ParseError(InvalidInput):
    pass


# ---------------------------------------------------------------- canonical JSON


def _dump_value(v, indent: str) -> str:
    if isinstance(v, list) and v and all(isinstance(x, list) for x in v):
        inner = ",\n".join(indent + "  " + json.dumps(x, sort_keys=True) for x in v)
        return "[\n" + inner + "\n" + indent + "]"
    if isinstance(v, dict) and v:
        items = [
            f'{indent}  {json.dumps(k)}: {_dump_value(v[k], indent + "  ")}' for k in sorted(v)
        ]
        return "{\n" + ",\n".join(items) + "\n" + indent + "}"
    return json.dumps(v, ensure_ascii=False)


def canonical_json(doc: dict) -> str:
    return _dump_value(doc, "") + "\n"


def _parse_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"parse error at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("parse error at line 1 column 1: top level must be an object")
    return doc


# ---------------------------------------------------------------- hsc/1


def _sparse(arr: np.ndarray) -> list:
    return [[*map(int, idx), int(arr[tuple(idx)])] for idx in np.argwhere(arr)]


def to_hsc(H: HopfAlgebra) -> dict:
    return {
        "format": HSC,
        "p": H.p,
        "dim": H.dim,
        "labels": list(H.labels),
        "unit": [int(x) for x in H.unit],
        "counit": [int(x) for x in H.counit],
        "mult": _sparse(H.mult),
        "comult": _sparse(H.comult),
        "antipode": _sparse(H.antipode),
        "meta": H.meta,
    }


def _fill(entries, shape, p: int, name: str) -> np.ndarray:
    out = np.zeros(shape, dtype=DTYPE)
    seen = set()
    if not isinstance(entries, list):
        raise InvalidInput(f"{name}: expected a list of index tuples")
    for pos, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != len(shape) + 1 or not all(isinstance(x, int) for x in e):
            raise InvalidInput(f"{name}[{pos}]: expected {len(shape) + 1} integers")
        *idx, c = e
        if any(not 0 <= i < s for i, s in zip(idx, shape)):
            raise InvalidInput(f"{name}[{pos}]: index {tuple(idx)} out of range")
        if not 1 <= c < p:
            raise InvalidInput(f"{name}[{pos}]: coefficient {c} not in [1, {p})")
        if tuple(idx) in seen:
            raise InvalidInput(f"{name}[{pos}]: duplicate key {tuple(idx)}")
        seen.add(tuple(idx))
        out[tuple(idx)] = c
    return out


def _dense(v, n: int, p: int, name: str) -> np.ndarray:
    if not isinstance(v, list) or len(v) != n or not all(isinstance(x, int) for x in v):
        raise InvalidInput(f"{name}: expected {n} integers")
    if any(not 0 <= x < p for x in v):
        raise InvalidInput(f"{name}: residues must lie in [0, {p})")
    return np.array(v, dtype=DTYPE)


def from_hsc(doc: dict) -> HopfAlgebra:
    for key in ("format", "p", "dim", "unit", "counit", "mult", "comult", "antipode"):
        if key not in doc:
            raise InvalidInput(f"missing field {key!r}")
    if doc["format"] != HSC:
        raise InvalidInput(f"unsupported format tag {doc['format']!r}")
    try:
        f = FieldSpec(doc["p"])
    except (TypeError, ValueError) as e:
        raise InvalidInput(str(e)) from None
    n = doc["dim"]
    if not isinstance(n, int) or n < 1:
        raise InvalidInput("dim must be a positive integer")
    p = f.p
    labels = doc.get("labels") or [f"e{i}" for i in range(n)]
    if len(labels) != n:
        raise InvalidInput("labels: one per basis vector")
    return HopfAlgebra(
        f,
        _fill(doc["mult"], (n, n, n), p, "mult"),
        _dense(doc["unit"], n, p, "unit"),
        _fill(doc["comult"], (n, n, n), p, "comult"),
        _dense(doc["counit"], n, p, "counit"),
        _fill(doc["antipode"], (n, n), p, "antipode"),
        labels,
        doc.get("meta", ""),
    )


# ---------------------------------------------------------------- hpres/1


def _coef(c, params: dict):
    if isinstance(c, int):
        return c
    if isinstance(c, str):
        sign = -1 if c.startswith("-") else 1
        name = c.lstrip("-")
        if name in params:
            return sign * int(params[name])
    raise InvalidInput(f"coefficient {c!r} is neither an integer nor a bound parameter")


def _form(d: dict, params: dict) -> dict:
    if not isinstance(d, dict):
        raise InvalidInput("linear forms are objects {symbol: coefficient}")
    return {k: _coef(v, params) for k, v in d.items()}


def presentation_from_doc(doc: dict) -> builders.Presentation:
    if doc.get("format") != HPRES:
        raise InvalidInput(f"unsupported format tag {doc.get('format')!r}")
    try:
        f = FieldSpec(doc["p"])
        gens = list(doc["generators"])
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInput(f"bad presentation header: {e}") from None
    params = doc.get("params", {})
    brackets = {}
    for entry in doc.get("brackets", []):
        if not isinstance(entry, list) or len(entry) != 3:
            raise InvalidInput("brackets entries are [a, b, form]")
        a, b, form = entry
        brackets[(a, b)] = _form(form, params)
    powers = {g: _form(v, params) for g, v in doc.get("powers", {}).items()}
    tails = {
        g: [(wl, wr, _coef(c, params)) for wl, wr, c in lst] for g, lst in doc.get("tails", {}).items()
    }
    antipode = {g: _form(v, params) for g, v in doc.get("antipode", {}).items()}
    return builders.Presentation(f, gens, brackets, powers, tails, antipode, dict(params),
                                 doc.get("meta", ""))


def presentation_to_doc(P: builders.Presentation) -> dict:
    return {
        "format": HPRES,
        "p": P.field.p,
        "generators": list(P.generators),
        "brackets": [[a, b, dict(form)] for (a, b), form in sorted(P.brackets.items())],
        "powers": {g: dict(v) for g, v in P.powers.items()},
        "tails": {g: [[wl, wr, c] for wl, wr, c in lst] for g, lst in P.tails.items()},
        "antipode": {g: dict(v) for g, v in P.antipode.items()},
        "params": dict(P.params),
        "meta": P.meta,
    }


# ---------------------------------------------------------------- entry points


def loads(text: str, *, verify: bool = False) -> HopfAlgebra:
    """Parse an hsc/1 or hpres/1 document. Presentations are always built and
    verified; ``verify=True`` also verifies structure-constant documents."""
    doc = _parse_json(text)
    tag = doc.get("format")
    if tag == HPRES:
        return builders.presentation_hopf(presentation_from_doc(doc))
    H = from_hsc(doc)
    if verify:
        rep = verify_axioms(H)
        if not rep.overall:
            raise AxiomFailure("loaded tensors fail the Hopf axioms", rep)
    return H


def load(path, *, verify: bool = False) -> HopfAlgebra:
    return loads(Path(path).read_text(encoding="utf-8"), verify=verify)


def dumps(H: HopfAlgebra) -> str:
    return canonical_json(to_hsc(H))


def save(H: HopfAlgebra, path) -> None:
    Path(path).write_text(dumps(H), encoding="utf-8")


def canonicalize(text: str) -> str:
    """Re-emit a document in canonical layout (hsc/1 or hpres/1)."""
    doc = _parse_json(text)
    if doc.get("format") == HSC:
        return dumps(from_hsc(doc))
    return canonical_json(doc)


def family_doc(name: str, p: int, sigma: int = 0, lam: int = 0, mu: int = 0) -> dict:
    """hpres/1 document of the A or B family with symbolic parameters."""
    if name == "A":
        return {
            "format": HPRES,
            "p": p,
            "generators": ["x", "y", "z"],
            "brackets": [["x", "y", {}], ["x", "z", {"x": "sigma"}], ["y", "z", {"y": "one_minus_sigma"}]],
            "powers": {"x": {}, "y": {}, "z": {"z": 1, "x": "lambda", "y": "mu"}},
            "tails": {"z": [["x", "y", 1]]},
            "antipode": {"x": {"x": -1}, "y": {"y": -1}, "z": {"z": -1, "x y": 1}},
            "params": {"sigma": sigma % p, "lambda": lam % p, "mu": mu % p,
                       "one_minus_sigma": (1 - sigma) % p},
            "meta": f"A({sigma % p},{lam % p},{mu % p}) over GF({p})",
        }
    if name == "B":
        return {
            "format": HPRES,
            "p": p,
            "generators": ["x", "y", "z"],
            "brackets": [["x", "y", {}], ["x", "z", {"x": 1, "y": "sigma"}], ["y", "z", {}]],
            "powers": {"x": {"y": 1}, "y": {}, "z": {"z": 1}},
            "tails": {"z": [["x", "y", 1], ["y", "y", "sigma"]]},
            "antipode": {"x": {"x": -1}, "y": {"y": -1}, "z": {"z": -1, "x y": 1, "y y": "sigma"}},
            "params": {"sigma": sigma % p},
            "meta": f"B({sigma % p}) over GF({p})",
        }
    raise InvalidInput(f"unknown family {name!r}")
