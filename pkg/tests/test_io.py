import json

import pytest

from nliecoh import io as nio
from nliecoh.algebra import adjoint_representation, simple, sl2
from nliecoh.complexes import cochain_space

from conftest import DATA


def test_algebra_round_trip():
    for A in (simple(3), sl2()):
        text = nio.dumps(nio.algebra_to_json(A))
        B = nio.algebra_from_json(json.loads(text))
        assert B.structure == A.structure and B.names == A.names
        assert nio.dumps(nio.algebra_to_json(B)) == text


def test_rep_round_trip():
    A = simple(3)
    R = adjoint_representation(A)
    S = nio.rep_from_json(json.loads(nio.dumps(nio.rep_to_json(R))), A)
    assert all(S.action(k) == m for k, m in R.mu.items())


@pytest.mark.parametrize("obj,msg", [
    ({"n": 3, "dim": 3, "brackets": [{"args": [2, 1, 3], "value": {"1": "1"}}]}, "increasing"),
    ({"n": 3, "dim": 3, "brackets": [{"args": [1, 2, 3], "value": {"1": 0.5}}]}, "rational"),
    ({"n": 3, "dim": 3, "brackets": [{"args": [1, 2, 3], "value": {"1": "1/0"}}]}, "parse"),
    ({"n": 3}, "dim"),
    ({"n": 3, "dim": 3, "brackets": [{"args": [1, 2, 3], "value": {"1": "1"}},
                                     {"args": [1, 2, 3], "value": {"1": "1"}}]}, "duplicate"),
])
def test_algebra_errors(obj, msg):
    with pytest.raises(nio.InputError, match=msg):
        nio.algebra_from_json(obj)


def test_rep_shape_error():
    with pytest.raises(nio.InputError):
        nio.rep_from_json({"dim_v": 2, "mu": [{"args": [1, 2], "matrix": [["1"]]}]}, simple(3))


def test_cochain_normalizes_argument_order():
    A = simple(3)
    space = cochain_space(A, 1, "standard", 2)
    a = nio.cochain_from_json({"terms": [{"x": [[1, 2]], "y": 3, "value": ["5"]}]},
                              space, "standard", 2)
    b = nio.cochain_from_json({"terms": [{"x": [[2, 1]], "y": 3, "value": ["-5"]}]},
                              space, "standard", 2)
    assert a == b and sum(x != 0 for x in a) == 1
    back = nio.cochain_from_json(nio.cochain_to_json(space, a, "standard", 2), space, "standard", 2)
    assert back == a


def test_cochain_errors():
    A = simple(3)
    space = cochain_space(A, 1, "standard", 2)
    with pytest.raises(nio.InputError, match="repeated"):
        nio.cochain_from_json({"terms": [{"x": [[1, 1]], "y": 3, "value": ["1"]}]},
                              space, "standard", 2)
    assert not any(nio.cochain_from_json({"terms": [{"x": [[1, 1]], "y": 3, "value": ["0"]}]},
                                         space, "standard", 2))
    with pytest.raises(nio.InputError, match="complex"):
        nio.cochain_from_json({"complex": "alternate", "terms": []}, space, "standard", 2)
    with pytest.raises(nio.InputError, match="missing y"):
        nio.cochain_from_json({"terms": [{"x": [[1, 2]], "value": ["1"]}]}, space, "standard", 2)


def test_subalgebra_file():
    idx, kind = nio.subalgebra_from_json(json.loads((DATA / "ideal_abelian_part.json").read_text()), 6)
    assert idx == [4, 5] and kind == "ideal"
    with pytest.raises(nio.InputError):
        nio.subalgebra_from_json({"indices": [1, 1]}, 3)


def test_rep_spec():
    A = simple(3)
    assert nio.rep_spec("trivial:3", A).dim_v == 3
    assert nio.rep_spec(str(DATA / "simple3_adjoint_rep.json"), A).dim_v == 4
    with pytest.raises(nio.InputError):
        nio.rep_spec("trivial:-1", A)
