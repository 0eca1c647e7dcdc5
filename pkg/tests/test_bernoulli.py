from fractions import Fraction as F
import json

import pytest

from schurzeta.bernoulli import (Kind, b_from_c, bernoulli_table, c_from_b, hook_b_stirling,
                                 hook_b_stirling_table, verify_binomial_relations, verify_hook_bc_relation,
                                 verify_hook_recurrence, verify_hook_stirling)
from schurzeta.series import unit_inverse
from schurzeta.shapes import Partition, ShapeError, parse_tableau


def tab(text, parts):
    return parse_tableau(text, Partition(parts))


ONE = Partition((1,))
K1 = tab("[[1]]", (1,))


def test_classical_tables():
    b = bernoulli_table(ONE, K1, 4, Kind.B)
    assert [b[m] for m in range(5)] == [1, F(1, 2), F(1, 6), 0, F(-1, 30)]
    c = bernoulli_table(ONE, K1, 2, Kind.C)
    assert [c[m] for m in range(3)] == [1, F(-1, 2), F(1, 6)]


def test_negative_index_is_zero_and_out_of_range_raises():
    b = bernoulli_table(ONE, K1, 2)
    assert b[-1] == 0
    with pytest.raises(KeyError):
        b[3]


def test_column_constant_term_vanishes():
    for k in ("[[1],[1]]", "[[2],[3]]"):
        assert bernoulli_table(Partition((1, 1)), tab(k, (1, 1)), 2)[0] == 0


def test_binomial_transforms():
    b = bernoulli_table(ONE, K1, 6, Kind.B)
    c = bernoulli_table(ONE, K1, 6, Kind.C)
    assert b[0] == c[0]
    assert b[1] == c[0] + c[1] == F(1, 2)
    assert b_from_c(c) == b
    assert c_from_b(b) == c
    with pytest.raises(ValueError):
        b_from_c(b)


@pytest.mark.parametrize("parts, k, orders", [
    ((2, 1), "[[1,2],[3]]", 4), ((1, 1), "[[2],[1]]", 5), ((2, 2), "[[1,1],[2,3]]", 3), ((3,), "[[1,2,1]]", 6),
])
def test_binomial_relations(parts, k, orders):
    report = verify_binomial_relations(Partition(parts), tab(k, parts), orders)
    assert report.passed, report.counterexample


def test_poly_bernoulli_single_box():
    # classical poly-Bernoulli B_n^(2) from the generating function, independent of the table code
    order = 8
    from schurzeta.numeric import factorial
    x = [F(0)] + [F((-1) ** (n + 1), factorial(n)) for n in range(1, order + 2)]
    li2 = [F(0)] * (order + 2)
    power = [F(1)] + [F(0)] * (order + 1)
    for n in range(1, order + 2):
        nxt = [F(0)] * (order + 2)
        for i, a in enumerate(power):
            for j in range(1, order + 2 - i):
                nxt[i + j] += a * x[j]
        power = nxt
        li2 = [p + q / (n * n) for p, q in zip(li2, power)]
    inv = unit_inverse(x[1:], order)
    coeffs = [sum(li2[1 + i] * inv[n - i] for i in range(n + 1)) for n in range(order + 1)]
    expected = [c * factorial(n) for n, c in enumerate(coeffs)]
    table = bernoulli_table(ONE, tab("[[2]]", (1,)), order)
    assert [table[n] for n in range(order + 1)] == expected
    assert expected[:3] == [1, F(1, 4), F(-1, 36)]


def test_exports_are_stable():
    t = bernoulli_table(Partition((2, 1)), tab("[[1,1],[1]]", (2, 1)), 2)
    csv_text = t.to_csv()
    assert csv_text.splitlines()[0] == "m_1,m_2,numerator,denominator"
    assert "\r" not in csv_text
    data = json.loads(t.to_json())
    assert data["values"][0] == {"m": [0, 0], "value": "0/1"}
    assert t.to_json() == bernoulli_table(Partition((2, 1)), tab("[[1,1],[1]]", (2, 1)), 2).to_json()


HOOK_CASES = [((2, 1), "[[1,2],[2]]"), ((2, 1), "[[1,1],[2]]"), ((3, 1, 1), "[[1,1,2],[1],[2]]"),
              ((2, 1, 1), "[[2,3],[1],[2]]")]


@pytest.mark.parametrize("parts, k", HOOK_CASES)
def test_hook_recurrence(parts, k):
    report = verify_hook_recurrence(Partition(parts), tab(k, parts), 4)
    assert report.passed, report.counterexample


@pytest.mark.parametrize("parts, k", [c for c in HOOK_CASES if c[1] != "[[1,1],[2]]"])
def test_hook_bc_relation(parts, k):
    report = verify_hook_bc_relation(Partition(parts), tab(k, parts), 3)
    assert report.passed, report.counterexample


def test_bc_relation_rejects_unit_corner():
    with pytest.raises(ValueError):
        verify_hook_bc_relation(Partition((2, 1)), tab("[[1,1],[2]]", (2, 1)), 2)


@pytest.mark.parametrize("parts, k", [((2, 1), "[[1,1],[1]]"), ((2, 1), "[[2,1],[3]]"), ((2, 1, 1), "[[1,2],[3],[1]]")])
def test_hook_stirling(parts, k):
    report = verify_hook_stirling(Partition(parts), tab(k, parts), 5)
    assert report.passed, report.counterexample


def test_hook_stirling_point_values():
    k = tab("[[1,1],[1]]", (2, 1))
    table = bernoulli_table(Partition((2, 1)), k, 2)
    assert hook_b_stirling(2, 2, k, 0, 0) == 0 == table[0, 0]
    assert hook_b_stirling(2, 2, k, 1, 1) == table[1, 1]
    assert (hook_b_stirling_table(2, 2, k, (2, 2)) == table.values).all()


def test_hook_stirling_rejects_non_hooks():
    with pytest.raises(ShapeError):
        verify_hook_stirling(Partition((2, 2)), tab("[[1,1],[1,1]]", (2, 2)), 2)
