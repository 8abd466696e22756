import math
from fractions import Fraction as F

import numpy as np
import pytest

from shiftlab import (Constant, DomainError, Explicit, Periodic, RangeError,
                      StructuralError, Tail, TruncatedMatrix, TwoIsoFamily,
                      WeightedShift, aluthge_weights, defect, lambda_mean_weights,
                      matrix_aluthge, matrix_lambda_mean, matrix_mean, mean_weights,
                      oracle_defect, polar_decompose, truncate)
from shiftlab.oracle import from_csv, from_json

from corpus import CORPUS, POSITIVE

LAMBDAS = [0, F(3, 10), F(1, 2), F(7, 10), 1]


def test_truncate_examples():
    m = truncate(Constant(1), 3).entries
    assert np.array_equal(m, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    sub = truncate(TwoIsoFamily(0), 4).subdiagonal(interior=False)
    assert sub == pytest.approx([math.sqrt(2), math.sqrt(1.5), math.sqrt(4 / 3)], abs=1e-15)
    sub = truncate(Periodic((F(1, 2), 2)), 5).subdiagonal(interior=False)
    assert list(sub) == [0.5, 2, 0.5, 2]


def test_truncate_limits():
    with pytest.raises(DomainError):
        truncate(Constant(1), 129)
    with pytest.raises(DomainError):
        truncate(Constant(1), 1)


def test_polar_examples():
    v, p = polar_decompose(truncate(Constant(1), 4))
    assert np.array_equal(np.diag(p.entries), [1, 1, 1, 0])
    assert np.array_equal(v.entries, truncate(Constant(1), 4).entries)
    _, p = polar_decompose(truncate(TwoIsoFamily(0), 4))
    assert np.diag(p.entries) == pytest.approx([math.sqrt(2), math.sqrt(1.5),
                                                math.sqrt(4 / 3), 0], abs=1e-15)
    v, _ = polar_decompose(truncate(Explicit((1, 0, 2), Tail.constant(1)), 5))
    assert v.entries[2, 1] == 0 and v.entries[1, 0] == 1


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_polar_round_trip(name):
    m = truncate(CORPUS[name], 64)
    v, p = polar_decompose(m)
    assert np.max(np.abs(v.entries @ p.entries - m.entries)) <= 1e-12
    proj = v.entries.conj().T @ v.entries
    assert np.max(np.abs(proj @ proj - proj)) <= 1e-12
    assert np.max(np.abs(proj - proj.conj().T)) <= 1e-12


def test_polar_rejects_non_shift():
    with pytest.raises(StructuralError):
        polar_decompose(TruncatedMatrix(np.ones((3, 3))))


def test_matrix_aluthge_examples():
    out = matrix_aluthge(truncate(TwoIsoFamily(0), 16), 0.5)
    assert out.entries[1, 0] == pytest.approx(3 ** 0.25, abs=1e-15)
    out = matrix_aluthge(truncate(Periodic((F(1, 2), 2)), 16), 0.5)
    assert np.max(np.abs(out.subdiagonal() - 1)) <= 1e-15
    for lam in LAMBDAS:
        out = matrix_aluthge(truncate(Constant(1), 8), lam)
        assert np.array_equal(out.subdiagonal(), np.ones(6))


def test_matrix_mean_examples():
    out = matrix_mean(truncate(Periodic((F(1, 2), F(3, 2))), 16))
    assert np.array_equal(out.subdiagonal(), np.ones(14))
    out = matrix_mean(truncate(Constant(F(5, 2)), 8))
    assert np.array_equal(out.subdiagonal(), np.full(6, 2.5))
    out = matrix_mean(truncate(TwoIsoFamily(0), 8))
    assert out.entries[1, 0] == pytest.approx(1.319479, abs=5e-7)


def _entries(shift, count):
    return np.array([shift.entry(j) for j in range(1, count + 1)])


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("lam", LAMBDAS)
def test_transform_equivalence(name, lam):
    shift = CORPUS[name]
    m = truncate(shift, 32)
    got = matrix_aluthge(m, lam).subdiagonal()
    assert np.max(np.abs(got - _entries(aluthge_weights(shift, lam), 30))) <= 1e-10
    got = matrix_mean(m).subdiagonal()
    assert np.max(np.abs(got - _entries(mean_weights(shift), 30))) <= 1e-10
    if name in POSITIVE:
        got = matrix_lambda_mean(m, lam).subdiagonal()
        assert np.max(np.abs(got - _entries(lambda_mean_weights(shift, lam), 30))) <= 1e-10


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_defect_equivalence(name):
    shift = CORPUS[name]
    m = truncate(shift, 32)
    for order in range(1, 5):
        for n in range(1, 9):
            assert oracle_defect(m, order, n) == pytest.approx(float(defect(shift, order, n)),
                                                               abs=1e-10)


def test_oracle_defect_examples():
    assert oracle_defect(truncate(Constant(1), 8), 3, 2) == 0
    assert abs(oracle_defect(truncate(TwoIsoFamily(0), 16), 2, 5)) <= 1e-12
    assert oracle_defect(truncate(Periodic((F(1, 2), 2)), 8), 2, 1) == 1.5


def test_oracle_defect_range():
    m = truncate(Constant(1), 8)
    oracle_defect(m, 4, 4)
    with pytest.raises(RangeError):
        oracle_defect(m, 4, 5)


def test_edge_row_is_cut():
    out = matrix_aluthge(truncate(Constant(1), 6), 0.5)
    assert out.subdiagonal(interior=False)[-1] == 0


def test_csv_json_round_trip():
    m = truncate(WeightedShift.from_angles(TwoIsoFamily(0), (0.4,)), 6)
    back = from_csv(m.to_csv())
    assert np.array_equal(back.entries, m.entries)
    back = from_json(m.to_json())
    assert np.array_equal(back.entries, m.entries)
    real = truncate(Constant(1), 3)
    assert real.to_csv() == "0,0,0\n1,0,0\n0,1,0\n"


def test_matrix_is_read_only():
    m = truncate(Constant(1), 3)
    with pytest.raises(ValueError):
        m.entries[0, 0] = 5
