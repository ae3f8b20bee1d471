import pytest

from nliecoh.algebra import abelian, adjoint_representation, simple, sl2, trivial_representation
from nliecoh.complexes import (KINDS, cochain_space, cohomology, complexes_coincide_check,
                               delta_lie, delta_standard, differential, square_is_zero)
from nliecoh.linalg import matvec, span_rank

from conftest import SMALL, coefficient_reps, delta_square, theta_square


def kinds_for(A):
    return [k for k in KINDS if k != "lie" or A.n == 2]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_delta_squares_to_zero(name):
    A = SMALL[name]
    for R in coefficient_reps(A).values():
        for kind in kinds_for(A):
            for m in range(3):
                assert square_is_zero(A, R, kind, m), (kind, m)


def test_row_block_square_agrees_with_full_product():
    A, R = simple(3), adjoint_representation(simple(3))
    for kind in ("standard", "alternate", "leibniz"):
        assert square_is_zero(A, R, kind, 1, max_rows=10)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_chain_maps_commute(name):
    A = SMALL[name]
    for R in coefficient_reps(A).values():
        for m in range(3):
            lhs, rhs = delta_square(A, R, m)
            assert lhs == rhs, ("Δ", m)
            lhs, rhs = theta_square(A, R, m)
            assert lhs == rhs, ("Θ", m)


def test_literal_degree_zero_signs_break_the_squares():
    A = simple(3)
    R = adjoint_representation(A)
    lhs, rhs = delta_square(A, R, 0, literal=True)
    assert lhs != rhs
    lhs, rhs = theta_square(A, R, 0, literal=True)
    assert lhs != rhs
    # for even n the literal Δ⁰ is the working one
    A4 = simple(4)
    lhs, rhs = delta_square(A4, adjoint_representation(A4), 0, literal=True)
    assert lhs == rhs


def test_cochain_dimensions():
    A = simple(4)  # d = 5, Λ³ has 10 elements, Λ² has 10
    assert cochain_space(A, 2, "standard", 0).dim == 10 * 2
    assert cochain_space(A, 2, "standard", 2).dim == 10 * 5 * 2
    assert cochain_space(A, 2, "alternate", 0).dim == 5 * 2
    assert cochain_space(A, 2, "alternate", 2).dim == 10 * 10 * 2
    assert cochain_space(A, 2, "leibniz", 2).dim == 10 * 10 * 10 * 2


def test_lie_complex_needs_n2():
    with pytest.raises(ValueError):
        delta_lie(simple(3), adjoint_representation(simple(3)), 1)
    with pytest.raises(ValueError):
        differential(sl2(), adjoint_representation(sl2()), "bogus", 1)


def test_abelian_trivial_degree_one():
    A = abelian(3, 4)
    rep = cohomology(A, trivial_representation(A, 1), "standard", 1)
    assert rep.dim_H == rep.dim_cochains == 4


def test_sl2_lie_cohomology():
    A = sl2()
    triv = [cohomology(A, trivial_representation(A, 1), "lie", m).dim_H for m in range(4)]
    assert triv == [1, 0, 0, 1]
    adj = [cohomology(A, adjoint_representation(A), "lie", m).dim_H for m in range(4)]
    assert adj == [0, 0, 0, 0]


def test_simple3_adjoint_standard():
    A = simple(3)
    dims = [cohomology(A, adjoint_representation(A), "standard", m).dim_H for m in range(3)]
    assert dims == [10, 0, 1]


def test_representatives_are_independent_cocycles():
    A = simple(3)
    R = adjoint_representation(A)
    rep = cohomology(A, R, "alternate", 2)
    d = delta_standard(A, R, 2).matrix  # n = 3: the two complexes coincide
    prev = delta_standard(A, R, 1).matrix
    assert len(rep.representatives) == rep.dim_H
    for v in rep.representatives:
        assert all(x == 0 for x in matvec(d, v))
    image = [list(col) for col in zip(*prev.to_dense())]
    base = span_rank(image)
    assert span_rank(image + rep.representatives) == base + rep.dim_H


def test_report_json_fields():
    A = sl2()
    out = cohomology(A, trivial_representation(A, 1), "lie", 3).to_json()
    assert out["dim_H"] == 1 and out["dim_Z"] - out["dim_B"] == 1
    assert out["representatives"][0][0]["x"] == [[1, 2, 3]]


def test_complexes_coincide_only_for_n3():
    A = simple(3)
    R = adjoint_representation(A)
    for m in range(3):
        assert complexes_coincide_check(A, R, m)["identical"]
    for A in (simple(4), sl2()):
        out = complexes_coincide_check(A, adjoint_representation(A), 1)
        assert not out["identical"]
        assert out["witness"]["reason"] == "dimension mismatch"
