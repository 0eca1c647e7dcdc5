import math

import mpmath
import pytest

from schurzeta.analytic.zeta import (in_convergence_domain, mzv_eval, mzv_star_eval, schur_zeta_eval,
                                     schur_zeta_via_decomposition)
from schurzeta.shapes import Partition, parse_tableau
from schurzeta.values import NumericDomainError

ZETA3 = float(mpmath.zeta(3))


def tab(text, parts):
    return parse_tableau(text, Partition(parts))


def test_single_box_is_riemann_zeta():
    r = schur_zeta_eval(Partition((1,)), tab("[[2]]", (1,)))
    assert abs(r.value - math.pi ** 2 / 6) <= r.bound + 1e-15
    assert r.bound < 1e-10


def test_column_gives_zeta_1_2():
    r = schur_zeta_eval(Partition((1, 1)), tab("[[1],[2]]", (1, 1)))
    assert abs(r.value - ZETA3) <= r.bound + 1e-15
    assert round(r.value, 7) == 1.2020569


def test_row_gives_zeta_star():
    r = schur_zeta_eval(Partition((2,)), tab("[[2,2]]", (2,)))
    # symmetric square: 2 zeta*(2,2) = zeta(2)^2 + zeta(4)
    expected = float((mpmath.zeta(2) ** 2 + mpmath.zeta(4)) / 2)
    assert abs(r.value - expected) <= r.bound + 1e-15
    assert round(r.value, 7) == 1.8940657


Z = {n: float(mpmath.zeta(n)) for n in (2, 3, 4, 5)}
CLOSED_FORMS = {
    (2,): Z[2],
    (1, 2): Z[3],
    (1, 1, 2): Z[4],
    (2, 3): 3 * Z[2] * Z[3] - 5.5 * Z[5],
    (3, 2): 4.5 * Z[5] - 2 * Z[2] * Z[3],
}


@pytest.mark.parametrize("index", sorted(CLOSED_FORMS))
def test_mzv_closed_forms(index):
    r = mzv_eval(index)
    assert abs(r.value - CLOSED_FORMS[index]) <= r.bound + 1e-14


def test_mzv_star_examples():
    r = mzv_star_eval((1, 2))
    assert abs(r.value - 2 * ZETA3) <= r.bound + 1e-14
    r = mzv_star_eval((2, 3))
    assert abs(r.value - (CLOSED_FORMS[(2, 3)] + Z[5])) <= r.bound + 1e-14


def test_domain_errors():
    with pytest.raises(NumericDomainError, match=r"\(1,2\)"):
        schur_zeta_eval(Partition((2,)), tab("[[2,1]]", (2,)))
    with pytest.raises(NumericDomainError):
        mzv_eval((2, 1))
    assert in_convergence_domain(Partition((2, 1)), tab("[[1,2],[2]]", (2, 1)))
    assert not in_convergence_domain(Partition((2, 1)), tab("[[1,1],[2]]", (2, 1)))


@pytest.mark.parametrize("parts, s", [
    ((2,), "[[2,3]]"), ((1, 1), "[[1],[3]]"), ((2, 1), "[[1,2],[2]]"), ((2, 2), "[[1,1],[1,2]]"), ((3,), "[[1,2,2]]"),
])
@pytest.mark.parametrize("star", [False, True])
def test_decomposition_agrees(parts, s, star):
    shape = Partition(parts)
    st = tab(s, parts)
    direct = schur_zeta_eval(shape, st, 1e-8)
    decomposed = schur_zeta_via_decomposition(shape, st, 1e-8, star=star)
    assert direct.agrees_with(decomposed)
    assert direct.bound + decomposed.bound < 1e-6


def test_decomposition_two_three():
    r = schur_zeta_via_decomposition(Partition((2,)), tab("[[2,3]]", (2,)))
    assert r.info["terms"] == ["+(2,3)", "+(5)"]
