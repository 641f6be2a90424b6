"""JSON and DOT serialization for posets, effect algebras, OMPs and algebras."""

from __future__ import annotations

import json
from typing import Any

from .algebras import MonadAlgebra, monad_algebra
from .effect import EffectAlgebra, effect_algebra
from .errors import KalmbachError
from .omp import OrthomodularPoset, orthomodular_poset
from .poset import BoundedPoset, validate_poset


class FormatError(KalmbachError):
    """The document is not in any of the supported JSON shapes (exit code 2)."""


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _field(doc: dict, key: str, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(f"field {key!r} must be a {kind.__name__}")
    return value


# posets ----------------------------------------------------------------------


def poset_to_json(P: BoundedPoset) -> dict:
    return {
        "elements": list(P.elements),
        "relation": [list(pair) for pair in P.cover_names()],
        "mode": "cover",
        "bottom": P.elements[P.bottom],
        "top": P.elements[P.top],
    }


def poset_from_json(doc: dict) -> BoundedPoset:
    elements = _field(doc, "elements", list)
    relation = _field(doc, "relation", list)
    if any(not isinstance(p, list) or len(p) != 2 for p in relation):
        raise FormatError("relation entries must be [lower, upper] pairs")
    mode = doc.get("mode", "cover")
    if mode not in ("cover", "full"):
        raise FormatError(f"mode must be 'cover' or 'full', not {mode!r}")
    return validate_poset(elements, [tuple(p) for p in relation], mode, doc.get("bottom"), doc.get("top"))


def omp_to_json(A: OrthomodularPoset) -> dict:
    doc = poset_to_json(A.carrier)
    doc["complement"] = {A.elements[x]: A.elements[c] for x, c in enumerate(A.complement)}
    return doc


def omp_from_json(doc: dict) -> OrthomodularPoset:
    P = poset_from_json(doc)
    complement = _field(doc, "complement", dict)
    return orthomodular_poset(P, {str(k): str(v) for k, v in complement.items()})


# effect algebras -------------------------------------------------------------


def ea_to_json(E: EffectAlgebra) -> dict:
    sums = [
        [E.elements[a], E.elements[b], E.elements[c]]
        for a, row in enumerate(E.oplus)
        for b, c in enumerate(row)
        if c is not None
    ]
    return {"elements": list(E.elements), "oplus": sums, "zero": E.elements[E.zero], "one": E.elements[E.one]}


def ea_from_json(doc: dict) -> EffectAlgebra:
    sums = _field(doc, "oplus", list)
    if any(not isinstance(t, list) or len(t) != 3 for t in sums):
        raise FormatError("oplus entries must be [a, b, a+b] triples")
    return effect_algebra(_field(doc, "elements", list), sums, str(_field(doc, "zero")), str(_field(doc, "one")))


# monad algebras --------------------------------------------------------------


def algebra_to_json(M: MonadAlgebra) -> dict:
    return {"poset": poset_to_json(M.carrier), "alpha": [list(p) for p in M.pairs()]}


def algebra_from_json(doc: dict) -> MonadAlgebra:
    P = poset_from_json(_field(doc, "poset", dict))
    pairs = _field(doc, "alpha", list)
    if any(not isinstance(p, list) or len(p) != 2 for p in pairs):
        raise FormatError("alpha entries must be [chain, value] pairs")
    return monad_algebra(P, {str(c): str(v) for c, v in pairs})


def detect_kind(doc: Any) -> str:
    if not isinstance(doc, dict):
        raise FormatError("top-level JSON value must be an object")
    if "alpha" in doc:
        return "algebra"
    if "oplus" in doc:
        return "ea"
    if "complement" in doc:
        return "omp"
    if "relation" in doc:
        return "poset"
    raise FormatError("cannot tell which structure this document describes")


READERS = {
    "poset": poset_from_json,
    "omp": omp_from_json,
    "ea": ea_from_json,
    "algebra": algebra_from_json,
}


def read_structure(doc: Any, kind: str = "auto"):
    kind = detect_kind(doc) if kind == "auto" else kind
    if kind not in READERS:
        raise FormatError(f"unknown structure kind {kind!r}")
    return kind, READERS[kind](doc)


# DOT -------------------------------------------------------------------------


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_dot(P: BoundedPoset, complement=None, name: str = "hasse") -> str:
    """Hasse diagram drawn bottom to top; complement pairs become dotted,
    undirected, non-ranking edges labelled with a perp sign."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in P.elements:
        lines.append(f"  {_q(x)};")
    for x, y in P.covers:
        lines.append(f"  {_q(P.elements[x])} -> {_q(P.elements[y])};")
    if complement is not None:
        for x, c in enumerate(complement):
            if x < c:
                lines.append(
                    f"  {_q(P.elements[x])} -> {_q(P.elements[c])}"
                    ' [style=dotted, dir=none, constraint=false, label="⊥"];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"


def structure_dot(kind: str, obj) -> str:
    if kind == "poset":
        return poset_dot(obj)
    if kind == "omp":
        return poset_dot(obj.carrier, obj.complement)
    if kind == "ea":
        return poset_dot(obj.order, obj.complements)
    if kind == "algebra":
        return poset_dot(obj.carrier)
    raise FormatError(f"cannot render {kind!r}")
