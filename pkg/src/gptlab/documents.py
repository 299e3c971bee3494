"""JSON descriptions of state spaces and states.

Rationals are written as JSON integers, decimal strings ("0.25") or
fraction strings ("3/4"). JSON numbers with a fractional part are read as
exact decimals; they are accepted for ball centres and radii and rejected
for polytope vertices, where exactness matters most.

The canonical form writes integers as JSON integers and every other
rational as a "p/q" string, so parse -> serialize -> parse is stable.
"""

from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction
from typing import Any, Mapping, Union

from .core import GENERATORS, Ball, Polytope, StateSpace, make_state_space
from .errors import DocumentError


def parse_rational(value: Any, *, allow_decimal_number: bool = False) -> Fraction:
    """Read one rational from its JSON encoding."""
    if isinstance(value, bool):
        raise DocumentError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (Decimal, float)):
        if not allow_decimal_number:
            raise DocumentError(f"non-integer JSON number {value} is not accepted here; "
                                "write it as a string such as \"1/3\" or \"0.25\"")
        return Fraction(Decimal(str(value)) if isinstance(value, float) else value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"cannot read {value!r} as a rational") from None
    raise DocumentError(f"expected a rational, got {type(value).__name__}")


def encode_rational(x) -> Union[int, str, float]:
    """Canonical JSON encoding: integer if integral, else "p/q"."""
    if isinstance(x, float):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _point(value: Any, *, allow_decimal_number: bool = False) -> tuple:
    if not isinstance(value, list):
        raise DocumentError(f"expected a list of rationals, got {value!r}")
    return tuple(parse_rational(v, allow_decimal_number=allow_decimal_number) for v in value)


def _positive_int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DocumentError(f"{name} must be a positive integer, got {value!r}")
    return value


def canonicalize(doc: Mapping) -> dict:
    """Validate a decoded document and return its canonical form."""
    if not isinstance(doc, Mapping):
        raise DocumentError("a space document must be a JSON object")
    kind = doc.get("type")
    if kind == "polytope":
        verts = doc.get("vertices")
        if not isinstance(verts, list) or not verts:
            raise DocumentError("polytope needs a non-empty \"vertices\" list")
        pts = [_point(v) for v in verts]
        if len({len(p) for p in pts}) != 1 or not pts[0]:
            raise DocumentError("vertices must share one positive dimension")
        return {"type": "polytope", "vertices": [[encode_rational(x) for x in p] for p in pts]}
    if kind == "ball":
        dim = _positive_int(doc.get("dim", 3), "dim")
        center = _point(doc.get("center", [0] * dim), allow_decimal_number=True)
        radius = parse_rational(doc.get("radius", 1), allow_decimal_number=True)
        if len(center) != dim:
            raise DocumentError("centre length differs from dim")
        if radius <= 0:
            raise DocumentError("radius must be positive")
        return {"type": "ball", "dim": dim, "center": [encode_rational(x) for x in center],
                "radius": encode_rational(radius)}
    if kind == "generator":
        name = doc.get("name")
        if name not in GENERATORS:
            raise DocumentError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
        params = doc.get("params") or {}
        if not isinstance(params, Mapping):
            raise DocumentError("params must be an object")
        out: dict = {}
        for key, val in sorted(params.items()):
            if key in ("c", "d", "n", "dim"):
                out[key] = _positive_int(val, key)
            elif key == "radius":
                out[key] = encode_rational(parse_rational(val, allow_decimal_number=True))
            elif key == "center":
                out[key] = [encode_rational(x) for x in _point(val, allow_decimal_number=True)]
            else:
                raise DocumentError(f"unknown generator parameter {key!r}")
        return {"type": "generator", "name": name, "params": out}
    raise DocumentError(f"unknown space type {kind!r}")


def _build(canon: dict) -> StateSpace:
    if canon["type"] == "polytope":
        return Polytope([[parse_rational(x) for x in v] for v in canon["vertices"]])
    if canon["type"] == "ball":
        return Ball(canon["dim"], [parse_rational(x) for x in canon["center"]],
                    parse_rational(canon["radius"]))
    params = dict(canon["params"])
    if "radius" in params:
        params["radius"] = parse_rational(params["radius"])
    if "center" in params:
        params["center"] = [parse_rational(x) for x in params["center"]]
    return make_state_space({"type": "generator", "name": canon["name"], "params": params})


def loads(text: str) -> Any:
    """Decode JSON, keeping non-integer numbers as exact decimals."""
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None


def parse_space(source: Union[str, Mapping]) -> tuple[StateSpace, dict]:
    """Build a space from JSON text or a decoded document.

    Returns the space and the canonical document.
    """
    doc = loads(source) if isinstance(source, str) else source
    canon = canonicalize(doc)
    try:
        return _build(canon), canon
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def serialize(canon: Mapping) -> str:
    return json.dumps(canon, sort_keys=True)


def space_document(space: StateSpace) -> dict:
    """Canonical document describing an existing space."""
    if isinstance(space, Ball):
        return {"type": "ball", "dim": space.dim, "center": [encode_rational(x) for x in space.center],
                "radius": encode_rational(space.radius)}
    return {"type": "polytope", "vertices": [[encode_rational(x) for x in v] for v in space.vertices]}


def parse_state(text: str, *, allow_decimal_number: bool = True) -> tuple:
    """A state given as a JSON list or as comma-separated rationals."""
    text = text.strip()
    if text.startswith("["):
        value = loads(text)
        return _point(value, allow_decimal_number=allow_decimal_number)
    parts = [p for p in text.split(",")]
    if not text or any(not p.strip() for p in parts):
        raise DocumentError(f"cannot read state {text!r}")
    return tuple(parse_rational(p) for p in parts)
