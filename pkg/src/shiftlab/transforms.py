"""Closed-form weight maps for the Aluthge, Duggal, mean and lambda-mean transforms.

For a weighted shift with polar factors ``V`` (phases) and ``|T|``
(``diag(a_j)``) every transform is again a weighted shift with the same
phases, so each one is a lazy :class:`WeightSequence` built over the input's
weights.  Nothing is materialized; ``weight(j)`` reads ``a_j`` and
``a_{j+1}`` from the base sequence.

Zero weights: where ``a_j == 0`` the partial isometry kills ``e_j`` and the
transformed weight is 0 for every kind.  Where only ``a_{j+1} == 0`` the
factor ``a_{j+1} ** lam`` uses ``0 ** 0 == 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .weights import (Exactness, Number, WeightedShift, WeightSequence,
                      as_number)

__all__ = [
    "TransformKind", "AluthgeSequence", "MeanSequence", "LambdaMeanSequence",
    "aluthge_weights", "duggal_weights", "mean_weights", "lambda_mean_weights",
    "apply_transform",
]

HALF = Fraction(1, 2)


def _check_lambda(lam) -> Number:
    lam = as_number(lam)
    if not 0 <= lam <= 1:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    return lam


def _geometric(la: float, lb: float, lam: float) -> float:
    """``exp((1 - lam) * la + lam * lb)`` with ``0 * -inf`` read as 0."""
    total = 0.0
    if lam != 1:
        total += (1 - lam) * la
    if lam != 0:
        total += lam * lb
    return math.exp(total)


@dataclass(frozen=True)
class TransformKind:
    """One of ``aluthge`` (with lambda), ``duggal``, ``mean`` or ``lambda-mean``.

    ``canonical()`` resolves the aliases: Duggal is Aluthge(1), the mean
    transform is LambdaMean(0).
    """

    kind: str
    lam: Number | None = None

    KINDS = ("aluthge", "duggal", "mean", "lambda-mean")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown transform kind {self.kind!r}")
        if self.kind in ("aluthge", "lambda-mean"):
            if self.lam is None:
                raise DomainError(f"{self.kind} transform needs lambda")
            object.__setattr__(self, "lam", _check_lambda(self.lam))
        elif self.lam is not None:
            raise DomainError(f"{self.kind} transform takes no lambda")

    @classmethod
    def aluthge(cls, lam=HALF) -> "TransformKind":
        return cls("aluthge", lam)

    @classmethod
    def duggal(cls) -> "TransformKind":
        return cls("duggal")

    @classmethod
    def mean(cls) -> "TransformKind":
        return cls("mean")

    @classmethod
    def lambda_mean(cls, lam) -> "TransformKind":
        return cls("lambda-mean", lam)

    def canonical(self) -> "TransformKind":
        if self.kind == "duggal":
            return TransformKind.aluthge(1)
        if self.kind == "mean":
            return TransformKind.lambda_mean(0)
        return self

    def apply(self, shift: WeightedShift) -> WeightedShift:
        if self.kind == "aluthge":
            return aluthge_weights(shift, self.lam)
        if self.kind == "duggal":
            return duggal_weights(shift)
        if self.kind == "mean":
            return mean_weights(shift)
        return lambda_mean_weights(shift, self.lam)


@dataclass(frozen=True)
class AluthgeSequence(WeightSequence):
    """``b_j = a_j ** (1 - lam) * a_{j+1} ** lam``."""

    base: WeightSequence
    lam: Number
    family = "aluthge"

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))

    @property
    def exactness(self):
        level = self.base.exactness
        if self.lam in (0, 1):
            return level
        if self.lam == HALF:
            if level is Exactness.RATIONAL:
                return Exactness.SQUARE
            if level is Exactness.SQUARE:
                return Exactness.FOURTH
        return Exactness.FLOAT

    @property
    def has_zero(self):
        return self.base.has_zero

    @property
    def periodicity(self):
        return self.base.periodicity

    @property
    def nonincreasing(self):
        return self.base.nonincreasing

    def _exact(self, j):
        base = self.base
        if self.lam == 0:
            return base._exact(j)
        if self.lam == 1:
            a = base._exact(j)
            return a if a == 0 else base._exact(j + 1)
        # lam == 1/2: b_j**2 = a_j a_{j+1} (or b_j**4 = a_j**2 a_{j+1}**2)
        return base._exact(j) * base._exact(j + 1)

    def _float_weight(self, j):
        a = self.base.weight(j)
        if a == 0:
            return 0.0
        if self.lam == 0:
            return a
        nxt = self.base.weight(j + 1)
        if self.lam == 1 or nxt == 0:
            return nxt
        return _geometric(self.base.log_weight(j), self.base.log_weight(j + 1),
                          float(self.lam))


@dataclass(frozen=True)
class MeanSequence(WeightSequence):
    """``m_j = (a_j + a_{j+1}) / 2`` (and 0 where ``a_j == 0``)."""

    base: WeightSequence
    family = "mean"

    @property
    def exactness(self):
        if self.base.exactness is Exactness.RATIONAL:
            return Exactness.RATIONAL
        return Exactness.FLOAT

    @property
    def has_zero(self):
        return self.base.has_zero

    @property
    def periodicity(self):
        return self.base.periodicity

    @property
    def nonincreasing(self):
        return self.base.nonincreasing

    def _exact(self, j):
        a = self.base._exact(j)
        if a == 0:
            return a
        return (a + self.base._exact(j + 1)) / 2

    def _float_weight(self, j):
        a = self.base.weight(j)
        if a == 0:
            return 0.0
        return 0.5 * (a + self.base.weight(j + 1))


@dataclass(frozen=True)
class LambdaMeanSequence(WeightSequence):
    """``(a_j**lam a_{j+1}**(1-lam) + a_j**(1-lam) a_{j+1}**lam) / 2``.

    Requires strictly positive weights.  ``lam`` in {0, 1} coincides with
    the mean transform and ``lam == 1/2`` with the classical Aluthge
    transform; those cases keep their exactness certificates.
    """

    base: WeightSequence
    lam: Number
    family = "lambda-mean"

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))
        if self.base.has_zero:
            raise DomainError("lambda-mean transform needs all weights > 0")

    @property
    def _delegate(self) -> WeightSequence | None:
        if self.lam in (0, 1):
            return MeanSequence(self.base)
        if self.lam == HALF:
            return AluthgeSequence(self.base, HALF)
        return None

    @property
    def exactness(self):
        delegate = self._delegate
        return Exactness.FLOAT if delegate is None else delegate.exactness

    @property
    def has_zero(self):
        return False

    @property
    def periodicity(self):
        return self.base.periodicity

    @property
    def nonincreasing(self):
        return self.base.nonincreasing

    def _exact(self, j):
        return self._delegate._exact(j)

    def _float_weight(self, j):
        delegate = self._delegate
        if delegate is not None:
            return delegate.weight(j)
        la, lb = self.base.log_weight(j), self.base.log_weight(j + 1)
        lam = float(self.lam)
        return 0.5 * (_geometric(la, lb, 1 - lam) + _geometric(la, lb, lam))


def aluthge_weights(shift: WeightedShift, lam=HALF) -> WeightedShift:
    """The lambda-Aluthge transform ``|T|**lam V |T|**(1-lam)`` of a shift."""
    return shift.with_weights(AluthgeSequence(shift.weights, lam))


def duggal_weights(shift: WeightedShift) -> WeightedShift:
    """The Duggal transform ``|T| V``: weights ``a_{j+1}``."""
    return aluthge_weights(shift, 1)


def mean_weights(shift: WeightedShift) -> WeightedShift:
    """The mean transform ``(|T| V + V |T|) / 2``."""
    return shift.with_weights(MeanSequence(shift.weights))


def lambda_mean_weights(shift: WeightedShift, lam) -> WeightedShift:
    """The generalized mean ``(Delta_lam(T) + Delta_{1-lam}(T)) / 2``."""
    return shift.with_weights(LambdaMeanSequence(shift.weights, lam))


def apply_transform(shift: WeightedShift, kind: TransformKind) -> WeightedShift:
    return kind.apply(shift)
