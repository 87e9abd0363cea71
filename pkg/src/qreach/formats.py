"""JSON reading and writing.

Rationals are strings ``"p/q"`` (or ``"p"``), Gaussian rationals are
``["re", "im"]`` pairs; floats are refused.  Output is canonical: the same
object always serializes to the same bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Optional

from .arith import GaussianRational, Poly, format_rational, parse_rational
from .automaton import And, Atom, Formula, Not, Or, QuantumAutomaton
from .linalg import ScaledOperator, Subspace, span, validate_scaled_unitary
from .unions import UnionSpace, prune
from .verdict import Verdict


class FormatError(ValueError):
    pass


def _reject_float(text):
    raise FormatError(f"floating point literal {text} not allowed; use \"p/q\"")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def load_file(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# scalars and vectors


def scalar_from_json(x) -> GaussianRational:
    if isinstance(x, list):
        if len(x) != 2:
            raise FormatError(f"Gaussian rational must be [re, im], got {x!r}")
        return GaussianRational(_rational(x[0]), _rational(x[1]))
    return GaussianRational(_rational(x), 0)


def _rational(x) -> Fraction:
    try:
        return parse_rational(x)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from None


def vector_from_json(v) -> tuple:
    if not isinstance(v, list):
        raise FormatError("vector must be a list")
    return tuple(scalar_from_json(x) for x in v)


def vector_to_json(v) -> list:
    return [GaussianRational.coerce(x).to_json() for x in v]


# subspaces, operators, unions


def subspace_from_json(obj) -> Subspace:
    _require(obj, ("dim", "basis"), "subspace")
    d = obj["dim"]
    if not isinstance(d, int) or d < 1:
        raise FormatError("subspace dim must be a positive integer")
    rows = [vector_from_json(r) for r in obj["basis"]]
    if any(len(r) != d for r in rows):
        raise FormatError(f"basis vectors must have length {d}")
    return span(rows, d)


def subspace_to_json(s: Subspace) -> dict:
    return {"dim": s.ambient_dim, "basis": [vector_to_json(r) for r in s.basis]}


def operator_from_json(obj) -> ScaledOperator:
    _require(obj, ("matrix",), "operator")
    rows = [vector_from_json(r) for r in obj["matrix"]]
    return validate_scaled_unitary(rows, _rational(obj.get("scale", "1")))


def operator_to_json(t: ScaledOperator) -> dict:
    return t.to_json()


def union_from_json(obj) -> UnionSpace:
    _require(obj, ("dim", "members"), "union")
    members = [subspace_from_json(m) for m in obj["members"]]
    return prune(members, obj["dim"])


def union_to_json(x: UnionSpace) -> dict:
    return {"dim": x.ambient_dim, "members": [subspace_to_json(m) for m in x.members]}


def automaton_from_json(obj) -> QuantumAutomaton:
    _require(obj, ("dim", "operators", "initial"), "automaton")
    ops = obj["operators"]
    if not isinstance(ops, dict) or not ops:
        raise FormatError("operators must be a nonempty object")
    actions = {name: operator_from_json(m) for name, m in ops.items()}
    return QuantumAutomaton(obj["dim"], actions, subspace_from_json(obj["initial"]))


def automaton_to_json(a: QuantumAutomaton) -> dict:
    return {
        "dim": a.ambient_dim,
        "operators": {name: op.to_json() for name, op in a.actions.items()},
        "initial": subspace_to_json(a.initial),
    }


# formulas


def formula_from_json(obj, defs: Optional[Mapping[str, Subspace]] = None) -> Formula:
    """Read a formula; a top-level ``"defs"`` table names reusable subspaces."""
    if defs is None and isinstance(obj, dict) and "defs" in obj:
        defs = {k: subspace_from_json(v) for k, v in obj["defs"].items()}
        obj = {k: v for k, v in obj.items() if k != "defs"}
    defs = defs or {}
    if not isinstance(obj, dict) or len(obj) != 1:
        raise FormatError(f"formula must be an object with one key, got {obj!r}")
    (key, val), = obj.items()
    if key == "atom":
        if isinstance(val, str):
            if val not in defs:
                raise FormatError(f"undefined subspace name {val!r}")
            return Atom(defs[val])
        return Atom(subspace_from_json(val))
    if key == "not":
        return Not(formula_from_json(val, defs))
    if key in ("and", "or"):
        if not isinstance(val, list) or not val:
            raise FormatError(f"{key} needs a nonempty list")
        args = [formula_from_json(g, defs) for g in val]
        return And(*args) if key == "and" else Or(*args)
    raise FormatError(f"unknown formula connective {key!r}")


def formula_to_json(f: Formula) -> dict:
    if isinstance(f, Atom):
        return {"atom": subspace_to_json(f.space)}
    if isinstance(f, Not):
        return {"not": formula_to_json(f.arg)}
    key = "and" if isinstance(f, And) else "or"
    return {key: [formula_to_json(g) for g in f.args]}


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"{what} is missing {', '.join(missing)}")


# generic conversion for reports


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, GaussianRational):
        return obj.to_json()
    if isinstance(obj, Poly):
        # coefficients, lowest degree first
        return {"coeffs": [to_jsonable(c) for c in obj.coeffs]}
    if isinstance(obj, Subspace):
        return subspace_to_json(obj)
    if isinstance(obj, UnionSpace):
        return union_to_json(obj)
    if isinstance(obj, ScaledOperator):
        return obj.to_json()
    if isinstance(obj, QuantumAutomaton):
        return automaton_to_json(obj)
    if isinstance(obj, (Atom, Not, And, Or)):
        return formula_to_json(obj)
    if isinstance(obj, Verdict):
        return {
            "property": obj.prop,
            "holds": obj.holds,
            "certificate": to_jsonable(obj.certificate),
        }
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    raise TypeError(f"cannot serialize {type(obj).__name__}")
