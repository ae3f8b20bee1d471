from pathlib import Path

import pytest

from nliecoh.algebra import abelian, adjoint_representation, simple, sl2, trivial_representation
from nliecoh.complexes import (chain_map_Delta, chain_map_Theta, delta_alternate, delta_leibniz,
                               delta_standard, leibniz_data)
from nliecoh.leibniz import induced_leibniz, leibniz_differential, rep_on_L_tensor_V
from nliecoh.linalg import matmul

DATA = Path(__file__).parent / "data"

SMALL = {
    "simple2": simple(2),
    "simple3": simple(3),
    "sl2": sl2(),
    "abelian3_3": abelian(3, 3),
}


def all_fixtures():
    """The full fixture list of the acceptance suite."""
    out = {f"abelian{n}_{d}": abelian(n, d) for n in (2, 3, 4) for d in range(1, 6)}
    out.update({"simple2": simple(2), "simple3": simple(3), "simple4": simple(4), "sl2": sl2()})
    return out


def coefficient_reps(A):
    return {"adjoint": adjoint_representation(A), "trivial": trivial_representation(A, 1)}


def delta_square(A, R, m, literal=False):
    """(Δ^{m+1}∘δ, d∘Δ^m) as matrices."""
    lhs = matmul(chain_map_Delta(A, R, m + 1, literal), delta_standard(A, R, m).matrix)
    data = leibniz_data(A, R)
    rhs = matmul(delta_leibniz(A, R, m, data).matrix, chain_map_Delta(A, R, m, literal))
    return lhs, rhs


def theta_square(A, R, m, literal=False):
    """(Θ^{m+1}∘δ_alt, d∘Θ^m) as matrices."""
    lhs = matmul(chain_map_Theta(A, R, m + 1, literal), delta_alternate(A, R, m).matrix)
    d = leibniz_differential(induced_leibniz(A), rep_on_L_tensor_V(A, R), m)
    rhs = matmul(d, chain_map_Theta(A, R, m, literal))
    return lhs, rhs


@pytest.fixture(params=sorted(SMALL))
def small_algebra(request):
    return SMALL[request.param]


# acceptance criteria report ----------------------------------------------------------

ACCEPTANCE = {}


def record(number, ok, detail=""):
    ACCEPTANCE[number] = (ok, detail)
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
