"""Shared shift corpus: every family, exact and floating, with and without phases."""

from fractions import Fraction as F

from shiftlab import (Constant, Explicit, Periodic, PowerTower, Tail,
                      TwoIsoFamily, WeightedShift)

CORPUS = {
    "constant-1": WeightedShift(Constant(1)),
    "constant-3/2": WeightedShift(Constant(F(3, 2))),
    "two-iso(0)": WeightedShift(TwoIsoFamily(0)),
    "two-iso(-1/2)": WeightedShift(TwoIsoFamily(F(-1, 2))),
    "two-iso(7)": WeightedShift(TwoIsoFamily(7)),
    "two-iso(0.25 float)": WeightedShift(TwoIsoFamily(0.25)),
    "periodic(1/2,2)": WeightedShift(Periodic((F(1, 2), 2))),
    "periodic(1/2,3/2)": WeightedShift(Periodic((F(1, 2), F(3, 2)))),
    "periodic-squares(2,1/3,5)": WeightedShift(Periodic((2, F(1, 3), 5), squared=True)),
    "power-tower(2,1/2)": WeightedShift(PowerTower(2, F(1, 2))),
    "power-tower(4/5,7/10)": WeightedShift(PowerTower(F(4, 5), F(7, 10))),
    "explicit(3/2;two-iso 0)": WeightedShift(Explicit((F(3, 2),), Tail.two_iso_extend(0),
                                                      squared=True)),
    "explicit(1,0,2;const 1)": WeightedShift(Explicit((1, 0, 2), Tail.constant(1))),
    "phased periodic(1/2,3/2)": WeightedShift.from_angles(Periodic((F(1, 2), F(3, 2))),
                                                          (0.3, 1.1)),
}

POSITIVE = {k: v for k, v in CORPUS.items() if not v.weights.has_zero}
