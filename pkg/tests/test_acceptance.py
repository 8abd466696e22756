"""Acceptance suite: one test per criterion, tolerances pinned.

Reference constants were computed independently at 50 digits with mpmath
and frozen here; the module recomputes them as a guard.
"""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction as F

import mpmath
import numpy as np
import pytest

from shiftlab import (Constant, Explicit, Periodic, Tail, TwoIsoFamily, WeightedShift,
                      aluthge_weights, defect, is_m_isometry, lambda_mean_weights,
                      matrix_aluthge, matrix_lambda_mean, matrix_mean, mean_weights,
                      oracle_defect, power_bounded_probe, power_norm, power_norms,
                      spectral_radius, truncate)
from shiftlab.theorems import LAMBDA_GRID, printed_u

from corpus import CORPUS, POSITIVE

mpmath.mp.dps = 50
criterion = pytest.mark.criterion

A_GRID = [F(-1, 2), F(0), F(1, 2), F(1), F(7)]
TWO_ISO = WeightedShift(TwoIsoFamily(0))

# D_2(1) of the mean transform of two-iso(0): (m_1 m_2)^2 - 2 m_1^2 + 1 at 50 digits
MEAN_DEFECT_REF = -0.0177336106542


def _two_iso_mp(j):
    return mpmath.sqrt(mpmath.mpf(j + 1) / j)


@criterion(1, "exact 2-isometry family: D_2 = 0 for n <= 1000, D_m = 0 for m = 3..8, n <= 200")
def test_criterion_01_two_iso_exact():
    start = time.perf_counter()
    for a in A_GRID:
        rep = is_m_isometry(TwoIsoFamily(a), 2, 1000)
        assert rep.mode == "exact-rational"
        assert rep.is_zero and all(v == 0 for v in rep.values)
        for m in range(3, 9):
            rep = is_m_isometry(TwoIsoFamily(a), m, 200)
            assert rep.is_zero and all(v == 0 for v in rep.values)
    assert time.perf_counter() - start < 1.0


@criterion(2, "Delta(Periodic[1/2, 2]) interior weights 1 at N=64; D_m(1) = 3 2^(m-3), m <= 10")
def test_criterion_02_thm_3_1():
    t = WeightedShift(Periodic((F(1, 2), 2)))
    delta = aluthge_weights(t, F(1, 2))
    assert all(delta.weights.exact(j, 2) == 1 for j in range(1, 63))
    sub = matrix_aluthge(truncate(t, 64), 0.5).subdiagonal()
    assert len(sub) == 62
    assert np.max(np.abs(sub - 1)) <= 4 * np.finfo(float).eps
    for m in range(1, 11):
        value = defect(t, m, 1)
        assert value == F(3, 8) * 2 ** m and value > 0


@criterion(3, "M(Periodic[1/2, 3/2]) weights 1; rho = sqrt(3)/2 to 1e-12; ||T^2|| = 3/4")
def test_criterion_03_thm_4_1():
    t = WeightedShift(Periodic((F(1, 2), F(3, 2))))
    mean = mean_weights(t)
    assert all(mean.weights.exact(j) == 1 for j in range(1, 63))
    assert np.array_equal(matrix_mean(truncate(t, 64)).subdiagonal(), np.ones(62))
    rho = spectral_radius(t)
    assert rho.exact and abs(rho.value - math.sqrt(3) / 2) <= 1e-12
    assert power_norm(t, 2) == F(3, 4)


@criterion(4, "D_2(1) of M(two-iso(0)) = -0.0177336 +- 5e-6, negative")
def test_criterion_04_mean_defect_constant():
    m1 = (_two_iso_mp(1) + _two_iso_mp(2)) / 2
    m2 = (_two_iso_mp(2) + _two_iso_mp(3)) / 2
    reference = (m1 * m2) ** 2 - 2 * m1 ** 2 + 1
    assert abs(float(reference) - MEAN_DEFECT_REF) <= 1e-12
    value = defect(mean_weights(TWO_ISO), 2, 1)
    assert abs(value - MEAN_DEFECT_REF) <= 5e-6
    assert value < 0
    # the closed-form fraction shown alongside the argument evaluates elsewhere
    printed = (48 * math.sqrt(6) + 68 * math.sqrt(3) - 108 * math.sqrt(2) - 337) / 184
    assert abs(printed - value) > 1


@criterion(5, "D_2(1) of Delta(two-iso(0)) = 1 - 2 sqrt 3 + sqrt 6 to 1e-12; "
              "nonzero on the lambda grid")
def test_criterion_05_aluthge_defect_constant():
    value = defect(aluthge_weights(TWO_ISO, F(1, 2)), 2, 1)
    expected = float(1 - 2 * mpmath.sqrt(3) + mpmath.sqrt(6))
    assert abs(value - expected) <= 1e-12
    assert abs(value - -0.014612) < 5e-7
    for lam in LAMBDA_GRID:
        rep = is_m_isometry(aluthge_weights(TWO_ISO, lam), 2, 64)
        assert not rep.is_zero, lam


@criterion(6, "u(1/2) = 6 sqrt 3, u(0) = 7/2 + 4 sqrt 3; min u >= 6 sqrt 3 - 1e-9 > 8; "
              "M_lambda witnesses")
def test_criterion_06_thm_4_3_chain():
    assert abs(printed_u(0.5) - 6 * math.sqrt(3)) <= 1e-12
    assert abs(printed_u(0.0) - (3.5 + 4 * math.sqrt(3))) <= 1e-12
    grid = [k / 1000 for k in range(1001)] + [float(v) for v in LAMBDA_GRID]
    low = min(printed_u(s) for s in grid)
    assert low >= 6 * math.sqrt(3) - 1e-9
    assert 6 * math.sqrt(3) - 1e-9 > 8
    for lam in (F(0),) + LAMBDA_GRID + (F(1),):
        rep = is_m_isometry(lambda_mean_weights(TWO_ISO, lam), 2, 64, stop_on_witness=True)
        assert not rep.is_zero, lam


@criterion(7, "oracle equivalence on the corpus, N=32: transforms and defects to 1e-10, < 5 s")
def test_criterion_07_oracle_equivalence():
    start = time.perf_counter()
    for name, shift in CORPUS.items():
        matrix = truncate(shift, 32)
        for lam in (0, F(3, 10), F(1, 2), F(7, 10), 1):
            pairs = [(matrix_aluthge(matrix, lam), aluthge_weights(shift, lam))]
            if name in POSITIVE:
                pairs.append((matrix_lambda_mean(matrix, lam), lambda_mean_weights(shift, lam)))
            for dense, closed in pairs:
                want = np.array([closed.entry(j) for j in range(1, 31)])
                assert np.max(np.abs(dense.subdiagonal() - want)) <= 1e-10, (name, lam)
        want = np.array([mean_weights(shift).entry(j) for j in range(1, 31)])
        assert np.max(np.abs(matrix_mean(matrix).subdiagonal() - want)) <= 1e-10, name
        for m in range(1, 5):
            for n in range(1, 9):
                assert abs(oracle_defect(matrix, m, n) - float(defect(shift, m, n))) <= 1e-10
    assert time.perf_counter() - start < 5.0


def _random_rational_shift(rng):
    def frac(lo=1, hi=40):
        return F(rng.randint(lo, hi), rng.randint(1, 12))

    kind = rng.choice(["periodic", "squares", "two-iso", "explicit", "constant"])
    if kind == "periodic":
        return Periodic(tuple(frac() for _ in range(rng.randint(1, 6))))
    if kind == "squares":
        return Periodic(tuple(frac() for _ in range(rng.randint(1, 6))), squared=True)
    if kind == "two-iso":
        return TwoIsoFamily(F(rng.randint(-11, 60), 12))
    if kind == "explicit":
        tail = rng.choice([Tail.repeat_last(), Tail.constant(frac()),
                           Tail.two_iso_extend(frac(0, 20))])
        return Explicit(tuple(frac() for _ in range(rng.randint(1, 8))), tail, squared=True)
    return Constant(frac())


@criterion(8, "defect recursion holds exactly on 1000 random rational shifts, m <= 6, n <= 32")
def test_criterion_08_defect_recursion():
    rng = random.Random(20240611)
    for _ in range(1000):
        seq = _random_rational_shift(rng)
        values = {m: is_m_isometry(seq, m, 33).values for m in range(1, 7)}
        assert all(isinstance(v, F) for v in values[6])
        for m in range(2, 7):
            for n in range(1, 33):
                expected = values[m - 1][n - 1] - seq.square(n) * values[m - 1][n]
                assert values[m][n - 1] == expected, (seq, m, n)


@criterion(9, "alpha = 1.05: ||M(alpha T)^n|| = alpha^n, witness at n = 284; "
              "||(alpha T)^(2k)|| < 1e-3 by k = 60")
def test_criterion_09_power_probe():
    alpha = F(21, 20)
    t = WeightedShift(Periodic((F(1, 2), F(3, 2)))).scaled(alpha)
    mean = mean_weights(t)
    norms, exact = power_norms(mean, 512)
    assert exact and all(v == alpha ** n for n, v in enumerate(norms, start=1))
    probe = power_bounded_probe(mean, 1, 512, 1e6)
    assert probe.verdict == "growth-witness" and probe.n == 284
    norms, exact = power_norms(t, 120)
    assert exact
    for k in range(1, 61):
        assert norms[2 * k - 1] == alpha ** (2 * k) * F(3, 4) ** k
    assert norms[119] < F(1, 1000)


@criterion(10, "verify --all exits 0 in under 10 s")
def test_criterion_10_verify_all():
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "shiftlab", "verify", "--all"],
                          capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    doc = json.loads(proc.stdout)
    failing = [f"{v['id']}: {c['name']} -> {c['observed']}"
               for v in doc["verdicts"] for c in v["checks"] if not c["pass"]]
    assert proc.returncode == 0, "failing checks:\n" + "\n".join(failing)
