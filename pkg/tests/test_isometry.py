import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from shiftlab import (Constant, DegenerateFitError, DomainError, Periodic,
                      RangeError, TwoIsoFamily, WeightedShift, aluthge_weights,
                      defect, fit_two_iso, is_m_isometry, lambda_mean_weights,
                      mean_weights, two_iso_weights)
from shiftlab.isometry import (EXACT_RADICAL, EXACT_RATIONAL, FLOATING, MAX_ORDER,
                               defect_mode)

from corpus import CORPUS

mpmath.mp.dps = 50


def mp_defect(weights, m, n):
    """Reference D_m(n) at 50 digits from a callable ``j -> a_j`` (mpf)."""
    total = mpmath.mpf(0)
    prod = mpmath.mpf(1)
    for k in range(m + 1):
        if k:
            prod *= weights(n + k - 1) ** 2
        total += (-1) ** k * math.comb(m, k) * prod
    return total


def two_iso_mp(j):
    return mpmath.sqrt(mpmath.mpf(j + 1) / j)


@pytest.mark.parametrize("n", [1, 2, 50, 999])
def test_two_iso_defect_zero(n):
    assert defect(TwoIsoFamily(0), 2, n) == 0


def test_constant_one_all_orders():
    for m in (1, 2, 5, 20):
        assert defect(Constant(1), m, 3) == 0


def test_thm_3_1_weights_defect():
    shift = Periodic((F(1, 2), 2))
    assert defect(shift, 2, 1) == F(3, 2)
    assert defect(shift, 1, 1) == F(3, 4)


def test_constant_two_witness():
    rep = is_m_isometry(Constant(2), 1, 10)
    assert rep.verdict == "nonzero-witness"
    assert rep.witness == (1, -3)


@pytest.mark.parametrize("a", [F(-1, 2), 0, F(1, 2), 1, 7])
def test_two_iso_exact_report(a):
    rep = is_m_isometry(two_iso_weights(a), 2, 1000)
    assert rep.is_zero and rep.mode == EXACT_RATIONAL and rep.tol_mode == "exact"
    for m in (3, 5):
        assert is_m_isometry(two_iso_weights(a), m, 100).is_zero


def test_aluthge_two_iso_radical_witness():
    shift = aluthge_weights(WeightedShift(TwoIsoFamily(0)), F(1, 2))
    rep = is_m_isometry(shift, 2, 10)
    assert rep.mode == EXACT_RADICAL
    n, value = rep.witness
    assert n == 1
    expected = 1 - 2 * mpmath.sqrt(3) + mpmath.sqrt(6)
    assert value == pytest.approx(float(expected), abs=1e-15)
    assert value == pytest.approx(-0.014612, abs=5e-7)


def test_radical_mode_decides_zero_exactly():
    # Aluthge(1/2) of the 1/2, 2 weights has b_j^4 = 1: a true 2-isometry
    shift = aluthge_weights(WeightedShift(Periodic((F(1, 2), 2))), F(1, 2))
    assert defect_mode(shift) == EXACT_RATIONAL
    two_iso_sq = WeightedShift(Periodic((2, 2), squared=True))
    delta = aluthge_weights(two_iso_sq, F(1, 2))
    assert defect_mode(delta) == EXACT_RADICAL
    # b_j^4 = 4 for all j, so D_1 = 1 - 2 with no radical cancellation issues
    assert defect(delta, 1, 1) == pytest.approx(-1.0, abs=1e-15)


def test_radical_vs_mpmath_on_grid():
    delta = aluthge_weights(WeightedShift(TwoIsoFamily(F(1, 3))), F(1, 2))

    def b(j):
        a = F(1, 3)
        s = lambda i: (mpmath.mpf(i + 1) + float(a)) / (i + float(a))  # noqa: E731
        return (s(j) * s(j + 1)) ** mpmath.mpf(0.25)

    for m in (1, 2, 3, 6):
        for n in (1, 2, 7):
            assert defect(delta, m, n) == pytest.approx(float(mp_defect(b, m, n)), abs=1e-13)


def test_mean_defect_matches_mpmath():
    m = mean_weights(WeightedShift(TwoIsoFamily(0)))

    def mj(j):
        return (two_iso_mp(j) + two_iso_mp(j + 1)) / 2

    expected = mp_defect(mj, 2, 1)
    assert float(expected) == pytest.approx(-0.0177336106542, abs=1e-12)
    assert defect(m, 2, 1) == pytest.approx(float(expected), abs=1e-14)
    assert defect_mode(m) == FLOATING


def test_lambda_mean_defect_matches_mpmath():
    lam = mpmath.mpf(3) / 10

    def mj(j):
        a, b = two_iso_mp(j), two_iso_mp(j + 1)
        return (a ** lam * b ** (1 - lam) + a ** (1 - lam) * b ** lam) / 2

    got = defect(lambda_mean_weights(WeightedShift(TwoIsoFamily(0)), F(3, 10)), 2, 1)
    assert got == pytest.approx(float(mp_defect(mj, 2, 1)), abs=1e-14)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_defect_matches_mpmath_corpus(name):
    shift = CORPUS[name]

    def w(j):
        return mpmath.mpf(shift.weight(j))

    # the reference uses the double-precision weights, so agreement is to rounding only
    for m in (1, 2, 4):
        for n in (1, 3, 8):
            ref = mp_defect(w, m, n)
            assert float(defect(shift, m, n)) == pytest.approx(float(ref), abs=1e-12)


rational_lists = st.lists(st.fractions(min_value=F(1, 10), max_value=3, max_denominator=12),
                          min_size=1, max_size=5)


@settings(max_examples=50, deadline=None)
@given(rational_lists, st.integers(2, 6), st.integers(1, 12))
def test_defect_recursion_exact(values, m, n):
    seq = Periodic(tuple(values))
    lhs = defect(seq, m, n)
    rhs = defect(seq, m - 1, n) - seq.square(n) * defect(seq, m - 1, n + 1)
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(0.2, 2.0), min_size=1, max_size=5), st.integers(2, 6),
       st.integers(1, 12))
def test_defect_recursion_floating(values, m, n):
    seq = Periodic(tuple(values))
    lhs = defect(seq, m, n)
    rhs = defect(seq, m - 1, n) - seq.square(n) * defect(seq, m - 1, n + 1)
    scale = sum(math.comb(m, k) * 4.0 ** k for k in range(m + 1))
    assert lhs == pytest.approx(rhs, abs=1e-12 * scale)


def test_order_limits():
    with pytest.raises(DomainError):
        defect(Constant(1), 0, 1)
    with pytest.raises(DomainError):
        defect(Constant(1), MAX_ORDER + 1, 1)
    with pytest.raises(DomainError):
        defect(Constant(1), 2, 0)
    assert defect(Constant(1), MAX_ORDER, 1) == 0


def test_floating_overflow_is_range_error():
    with pytest.raises(RangeError):
        defect(Constant(1e200), 3, 1)


def test_exact_rationals_do_not_overflow():
    assert defect(Constant(10 ** 50), 3, 1) != 0


def test_scale_aware_threshold(monkeypatch):
    # float 2-isometry weights: roundoff ~1e-16 relative to a scale of ~4
    seq = TwoIsoFamily(0.5)
    assert is_m_isometry(seq, 2, 200).is_zero
    assert is_m_isometry(seq, 2, 200).tol_mode == "scale-aware"
    rep = is_m_isometry(seq, 2, 200, tol=0.0)
    assert rep.tol_mode == "absolute"
    monkeypatch.setenv("SHIFTLAB_TOL", "0")
    assert is_m_isometry(seq, 2, 200).tol == 0.0


def test_bad_env_tol(monkeypatch):
    monkeypatch.setenv("SHIFTLAB_TOL", "-1")
    with pytest.raises(DomainError):
        is_m_isometry(TwoIsoFamily(0.5), 2, 5)


def test_report_serializes():
    doc = is_m_isometry(Periodic((F(1, 2), 2)), 2, 4).to_dict()
    assert doc["witness"] == {"n": 1, "value": "3/2", "float": 1.5}
    assert doc["values"] == ["3/2", "-6", "3/2", "-6"]


def test_stop_on_witness():
    rep = is_m_isometry(Periodic((F(1, 2), 2)), 2, 100, stop_on_witness=True)
    assert rep.n_range == (1, 1) and len(rep.values) == 1


@pytest.mark.parametrize("a", ["-0.9", "-0.5", "0", "1", "10", "1000000"])
def test_fit_round_trip(a):
    fit = fit_two_iso(two_iso_weights(F(a)))
    assert fit.consistent and not fit.isometry
    assert abs(fit.a_hat - F(a)) <= 1e-12


def test_fit_round_trip_float():
    fit = fit_two_iso(two_iso_weights(0.75))
    assert fit.consistent
    assert fit.a_hat == pytest.approx(0.75, abs=1e-12)


def test_fit_aluthge_inconsistent():
    fit = fit_two_iso(aluthge_weights(WeightedShift(TwoIsoFamily(0)), F(1, 2)))
    a_hat = 1 / (math.sqrt(3) - 1) - 1
    assert fit.a_hat == pytest.approx(a_hat, abs=1e-12)
    assert fit.a_hat == pytest.approx(0.366025, abs=5e-7)
    assert fit.residuals[1] == pytest.approx(abs(math.sqrt(2) - (3 + a_hat) / (2 + a_hat)),
                                             abs=1e-12)
    assert fit.residuals[1] == pytest.approx(0.008436, abs=5e-7)
    assert not fit.consistent


def test_fit_isometry_and_degenerate():
    fit = fit_two_iso(Constant(1))
    assert fit.consistent and fit.isometry and fit.a_hat is None
    with pytest.raises(DegenerateFitError):
        fit_two_iso(Periodic((1, 2)))
