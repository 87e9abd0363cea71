import random

import pytest

from qreach.arith import GaussianRational
from qreach.automaton import And, Atom, Not, Or
from qreach.formats import (
    FormatError,
    automaton_from_json,
    automaton_to_json,
    dumps,
    formula_from_json,
    formula_to_json,
    loads,
    operator_from_json,
    scalar_from_json,
    subspace_from_json,
    subspace_to_json,
    union_from_json,
    union_to_json,
)
from qreach.linalg import NotScaledUnitary, span
from qreach.unions import prune

from support import e, rand_automaton, rand_subspace, vec, walk_automaton


def test_scalars():
    assert scalar_from_json(["1/2", "-3"]) == GaussianRational("1/2", -3)
    assert scalar_from_json("4") == 4
    with pytest.raises(FormatError):
        scalar_from_json(["1"])
    with pytest.raises(FormatError):
        scalar_from_json("1/0")


def test_floats_are_refused():
    with pytest.raises(FormatError, match="floating point"):
        loads('{"dim": 1.5}')


def test_subspace_is_canonicalized_on_load():
    obj = {"dim": 2, "basis": [["2", "2"], [["0", "0"], ["3", "0"]]]}
    s = subspace_from_json(obj)
    assert s == span([vec(1, 0), vec(0, 1)])
    assert subspace_to_json(span([vec(2, 4)])) == {"dim": 2, "basis": [[["1", "0"], ["2", "0"]]]}


def test_bad_subspaces():
    with pytest.raises(FormatError):
        subspace_from_json({"dim": 2, "basis": [["1"]]})
    with pytest.raises(FormatError):
        subspace_from_json({"basis": []})


def test_operator_validation_on_load():
    with pytest.raises(NotScaledUnitary):
        operator_from_json({"scale": "1", "matrix": [["1", "1"], ["0", "1"]]})
    t = operator_from_json({"scale": "2", "matrix": [["1", "1"], ["1", "-1"]]})
    assert t.scale == 2


def test_round_trips():
    rng = random.Random(51)
    for _ in range(10):
        a = rand_automaton(rng, rng.randint(1, 3), rng.randint(1, 3))
        text = dumps(a)
        back = automaton_from_json(loads(text))
        assert back == a and dumps(back) == text
        u = prune([rand_subspace(rng, 3, k) for k in (1, 1, 2)], 3)
        assert union_from_json(loads(dumps(union_to_json(u)))) == u
    w = walk_automaton()
    assert automaton_from_json(automaton_to_json(w)) == w


def test_formula_round_trip_and_defs():
    v, w = span([e(2, 0)]), span([e(2, 1)])
    f = And(Or(Atom(v), Atom(w)), Not(Atom(v)))
    assert formula_from_json(loads(dumps(formula_to_json(f)))) == f
    obj = {"defs": {"V": subspace_to_json(v)}, "or": [{"atom": "V"}, {"atom": subspace_to_json(w)}]}
    assert formula_from_json(obj) == Or(Atom(v), Atom(w))
    with pytest.raises(FormatError, match="undefined"):
        formula_from_json({"atom": "X"})
    with pytest.raises(FormatError):
        formula_from_json({"xor": []})
    with pytest.raises(FormatError):
        formula_from_json({"and": []})


def test_dumps_is_deterministic():
    a = walk_automaton()
    assert dumps(a) == dumps(automaton_from_json(loads(dumps(a))))
    assert "." not in dumps({"x": GaussianRational("1/3", 0)}).replace("...", "")
