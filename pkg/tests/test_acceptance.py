"""One test per acceptance criterion; the summary prints a pass/fail line for each."""
import itertools
import json
import math
import os
import random
import subprocess
import sys
from fractions import Fraction as F

import mpmath
import numpy as np

from schurzeta.analytic.integrals import eta_classical_eval, eta_integral, mzv_integral_eval, mzv_star_integral_eval
from schurzeta.analytic.special import xi_special_value
from schurzeta.analytic.xi import xi_eval, xi_series_oracle
from schurzeta.analytic.zeta import mzv_eval, mzv_star_eval, schur_zeta_eval, schur_zeta_via_decomposition
from schurzeta.bernoulli import (Kind, bernoulli_table, hook_b_stirling_table, verify_binomial_relations,
                                 verify_hook_bc_relation, verify_hook_recurrence)
from schurzeta.numeric import factorial
from schurzeta.polylog import verify_derivative_lemma, verify_leading_coefficient
from schurzeta.shapes import Partition, Tableau, corners, parse_tableau

ONE = Partition((1,))


def partitions(n, largest=None):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest or n), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def weight_tableaux(shape, values=(1, 2, 3), corner_values=None):
    """Every tableau with the given entries, corners optionally restricted."""
    corner_set = set(shape.corners)
    choices = [corner_values if corner_values and c in corner_set else values for c in shape.cells]
    for combo in itertools.product(*choices):
        yield Tableau.from_cells(shape, dict(zip(shape.cells, combo)))


def hook(h, ell):
    return Partition((h,) + (1,) * (ell - 1))


def fraction_series_inverse(u, order):
    """Plain long division, kept separate from the package's series code."""
    out = []
    for n in range(order + 1):
        acc = F(0)
        for j in range(1, min(n, len(u) - 1) + 1):
            acc += u[j] * out[n - j]
        out.append((F(1) if n == 0 else -acc) / u[0])
    return out


def classical_oracle(order):
    """m! [t^m] of t/(1-e^{-t}) and of t/(e^t-1)."""
    # (1 - e^{-t}) / t and (e^t - 1) / t
    b_den = [F((-1) ** n, factorial(n + 1)) for n in range(order + 1)]
    c_den = [F(1, factorial(n + 1)) for n in range(order + 1)]
    b = [c * factorial(n) for n, c in enumerate(fraction_series_inverse(b_den, order))]
    c = [c * factorial(n) for n, c in enumerate(fraction_series_inverse(c_den, order))]
    return b, c


# ---------------------------------------------------------------------------


def test_criterion_01_corners(criterion):
    with criterion(1, "corner extraction of (4,4,3,1)", limit=1e-3):
        got = corners(Partition((4, 4, 3, 1)))
        assert {tuple(c) for c in got} == {(2, 4), (3, 3), (4, 1)}


def test_criterion_02_classical_reduction(criterion):
    with criterion(2, "single box, k=1: B and C tables against t/(1-e^-t) and t/(e^t-1)", limit=1.0):
        b_oracle, c_oracle = classical_oracle(8)
        k = Tableau(ONE, ((1,),))
        b = bernoulli_table(ONE, k, 8, Kind.B)
        c = bernoulli_table(ONE, k, 8, Kind.C)
        assert [b[m] for m in range(9)] == b_oracle
        assert [c[m] for m in range(9)] == c_oracle
        assert b_oracle[:5] == [1, F(1, 2), F(1, 6), 0, F(-1, 30)]


def test_criterion_03_binomial_relations(criterion):
    with criterion(3, "B/C binomial relations, |shape| <= 5, 20 samples, orders 5", limit=120.0):
        rng = random.Random(20240601)
        checked = 0
        for n in range(1, 6):
            for parts in partitions(n):
                shape = Partition(parts)
                pool = list(weight_tableaux(shape))
                sample = pool if len(pool) <= 20 else rng.sample(pool, 20)
                for k in sample:
                    report = verify_binomial_relations(shape, k, 5)
                    assert report.passed, report.counterexample
                    checked += report.checked
        assert checked > 0


def test_criterion_04_xi_special_values(criterion):
    with criterion(4, "xi at non-positive integers from the C table", limit=1.0):
        _, c_oracle = classical_oracle(2)
        k1 = Tableau(ONE, ((1,),))
        assert xi_special_value(ONE, k1, (1,)) == -c_oracle[1] == F(1, 2)
        assert xi_special_value(ONE, k1, (2,)) == c_oracle[2] == F(1, 6)
        cases = [(ONE, "[[1]]", 3), (ONE, "[[2]]", 3), (ONE, "[[3]]", 3),
                 (Partition((1, 1)), "[[1],[2]]", 3), (Partition((1, 1)), "[[2],[1]]", 3),
                 (Partition((2, 1)), "[[1,2],[2]]", 2), (Partition((2, 1)), "[[1,1],[1]]", 2)]
        for shape, text, order in cases:
            k = parse_tableau(text, shape)
            orders = (order,) * len(shape.corners)
            c = bernoulli_table(shape, k, orders, Kind.C)
            for m in itertools.product(range(order + 1), repeat=len(orders)):
                assert xi_special_value(shape, k, m) == (-1) ** sum(m) * c[m]


def test_criterion_05_derivative_lemma(criterion):
    with criterion(5, "derivative lemma on (2,1), (3,1), (2,1,1), orders 8, weights <= 3", limit=30.0):
        for shape in (hook(2, 2), hook(3, 2), hook(2, 3)):
            for k in weight_tableaux(shape):
                report = verify_derivative_lemma(shape, k, 8)
                assert report.passed, report.counterexample


def test_criterion_06_leading_coefficient(criterion):
    with criterion(6, "leading hook coefficient, l <= 4, weights <= 3", limit=5.0):
        for h, ell in itertools.product((2, 3), (2, 3, 4)):
            shape = hook(h, ell)
            for k in weight_tableaux(shape):
                report = verify_leading_coefficient(shape, k)
                assert report.passed, report.counterexample


HOOK_GRID = [(shape, k) for shape in (hook(2, 2), hook(3, 3)) for k in weight_tableaux(shape, (1, 2, 3), (2, 3))]


def test_criterion_07_hook_recurrence(criterion):
    with criterion(7, "hook recurrence on (2,1) and (3,1,1), corner weights >= 2, orders 5", limit=60.0):
        for shape, k in HOOK_GRID:
            report = verify_hook_recurrence(shape, k, 5)
            assert report.passed, report.counterexample


def test_criterion_08_hook_bc_relation(criterion):
    with criterion(8, "hook B-C relation on the same grid", limit=60.0):
        for shape, k in HOOK_GRID:
            report = verify_hook_bc_relation(shape, k, 5)
            assert report.passed, report.counterexample


def test_criterion_09_hook_stirling(criterion):
    with criterion(9, "Stirling formula for (2,1) and (2,1,1), weights <= 3, n, m <= 6", limit=60.0):
        for shape in (hook(2, 2), hook(2, 3)):
            h, ell = shape.parts[0], shape.length
            for k in weight_tableaux(shape):
                table = bernoulli_table(shape, k, (6, 6), Kind.B)
                assert (hook_b_stirling_table(h, ell, k, (6, 6)) == table.values).all(), k


def test_criterion_10_decomposition(criterion):
    with criterion(10, "direct vs MZV and zeta-star decompositions, tol 1e-6 per term", limit=300.0):
        for parts in ((2,), (1, 1), (2, 1), (2, 2)):
            shape = Partition(parts)
            for s in weight_tableaux(shape, (1, 2), (2, 3)):
                direct = schur_zeta_eval(shape, s, 1e-6)
                for star in (False, True):
                    via = schur_zeta_via_decomposition(shape, s, 1e-6, star=star)
                    assert abs(direct.value - via.value) <= direct.bound + via.bound, (parts, s, star)


def test_criterion_11_integral_representations(criterion):
    with criterion(11, "one-dimensional integrals for MZV and zeta-star", limit=120.0):
        for index in ((2,), (1, 2), (2, 3)):
            r = mzv_integral_eval(index)
            d = mzv_eval(index)
            assert abs(r.value - d.value) <= 1e-6, index
        for index in ((2, 2), (1, 2)):
            r = mzv_star_integral_eval(index)
            d = mzv_star_eval(index)
            assert abs(r.value - d.value) <= 1e-6, index


def xi_grid():
    for parts in ((1,), (1, 1), (2, 1)):
        shape = Partition(parts)
        ncorner = len(shape.corners)
        corner_values = None if parts == (1,) else (2, 3)
        for k in weight_tableaux(shape, (1, 2, 3), corner_values):
            for s in itertools.product((1.0, 1.5, 2.0), repeat=ncorner):
                yield shape, k, s


def test_criterion_12_xi_agreement(criterion):
    with criterion(12, "xi quadrature vs series oracle, and xi = zeta(2) for the single box", limit=300.0):
        for shape, k, s in xi_grid():
            q = xi_eval(shape, k, s)
            o = xi_series_oracle(shape, k, s)
            diff = abs(q.value - o.value)
            assert diff <= q.bound + o.bound, (shape.parts, k.rows, s, diff, q.bound, o.bound)
            assert q.bound + o.bound <= 1e-6, (shape.parts, k.rows, s)
        r = xi_eval(ONE, Tableau(ONE, ((1,),)), (1.0,))
        assert abs(r.value - math.pi ** 2 / 6) <= 1e-6


def test_criterion_13_eta(criterion):
    with criterion(13, "eta_1(s) = s zeta(s+1); eta_2 against the split-interval series", limit=60.0):
        for s in (1.0, 2.0, 3.0):
            r = eta_classical_eval(1, s)
            assert abs(r.value - s * float(mpmath.zeta(s + 1))) <= 1e-6
        terms = 48  # the Taylor series at 0 has radius pi; pi^-48 is negligible
        b = bernoulli_table(ONE, Tableau(ONE, ((2,),)), terms)
        for s in (1.0, 2.0, 0.5):
            head = sum(float(b[n]) * (-1) ** n / (factorial(n) * (n + s)) for n in range(terms + 1)) / math.gamma(s)
            oracle = head + eta_integral(2, s, lower=1.0).value
            assert abs(eta_classical_eval(2, s).value - oracle) <= 1e-5, s


def artifacts():
    """Text artifacts from several criteria, as they would be written to disk."""
    out = []
    out.append(bernoulli_table(Partition((2, 1)), Tableau.from_rows(((1, 2), (3,))), (4, 4), Kind.C).to_json())
    out.append(bernoulli_table(ONE, Tableau(ONE, ((2,),)), 8).to_csv())
    out.append(json.dumps(verify_hook_recurrence(hook(2, 2), Tableau.from_rows(((1, 2), (2,))), 4).to_dict(),
                          sort_keys=True))
    for r in (schur_zeta_eval(Partition((2, 1)), Tableau.from_rows(((1, 2), (2,))), 1e-8),
              xi_eval(Partition((1, 1)), Tableau.from_rows(((1,), (2,))), (1.5,)),
              xi_series_oracle(ONE, Tableau(ONE, ((2,),)), (1.5,)),
              eta_classical_eval(2, 1.0),
              mzv_star_integral_eval((1, 2))):
        out.append(json.dumps(r.to_dict(), sort_keys=True) + np.float64(r.value).tobytes().hex())
    return out


CLI_ARGS = [
    ["bernoulli", "--shape", "2,1", "--k", "[[1,2],[3]]", "--orders", "3", "--format", "csv"],
    ["xi", "--shape", "1,1", "--k", "[[3],[2]]", "--s", "2"],
    ["verify", "stirling-hook", "--shape", "2,1", "--orders", "4"],
]


def cli_bytes(args, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    env.pop("SCHURZETA_CACHE_DIR", None)
    proc = subprocess.run([sys.executable, "-m", "schurzeta.cli", *args], capture_output=True, env=env, check=True)
    return proc.stdout


def test_criterion_14_determinism(criterion):
    with criterion(14, "repeated runs give bit-identical artifacts"):
        assert artifacts() == artifacts()
        for args in CLI_ARGS:
            assert cli_bytes(args, 1) == cli_bytes(args, 2), args
