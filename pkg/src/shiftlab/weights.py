"""Weight sequences and the unilateral weighted shifts they induce.

A weighted shift acts on the canonical basis of l^2 by
``T e_j = zeta_j * a_j * e_{j+1}`` with moduli ``a_j >= 0`` and unimodular
phases ``zeta_j``.  Everything about m-isometries and the transforms
depends on the moduli only, so sequences carry nonnegative weights and the
phases live on :class:`WeightedShift`.

Scalars given as ``int``, :class:`~fractions.Fraction` or ``str`` are exact;
Python floats are treated as real (floating-only) parameters.  A sequence
certifies how much of it is exact through :class:`Exactness`.
"""

from __future__ import annotations

import abc
import cmath
import enum
import math
import numbers
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DomainError, ExactnessError, UnboundedWeightsError

__all__ = [
    "DEFAULT_TOL", "Number", "Exactness", "WeightSequence", "Constant",
    "Periodic", "TwoIsoFamily", "PowerTower", "Tail", "Explicit",
    "ScaledSequence", "WeightedShift", "as_number", "sequence_of",
    "weight_at", "square_at", "is_isometry",
]

Number = Union[Fraction, float]

DEFAULT_TOL = 1e-9


def as_number(value) -> Number:
    """Normalize a scalar: exact inputs become Fractions, floats stay floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise DomainError(f"not a rational literal: {value!r}") from None
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, numbers.Real):
        value = float(value)
        if not math.isfinite(value):
            raise DomainError(f"non-finite parameter: {value}")
        return value
    raise TypeError(f"cannot interpret {value!r} as a real number")


def _nonnegative(value, what: str) -> Number:
    value = as_number(value)
    if value < 0:
        raise DomainError(f"{what} must be nonnegative, got {value}")
    return value


def _check_index(j) -> None:
    if isinstance(j, bool) or not isinstance(j, numbers.Integral) or j < 1:
        raise ValueError(f"weight index must be an integer >= 1, got {j!r}")


class Exactness(enum.Enum):
    """Which power of every weight is certified to be an exact rational.

    ``RATIONAL`` means ``a_j`` itself, ``SQUARE`` means ``a_j**2`` and
    ``FOURTH`` means ``a_j**4``.  Each level implies the weaker ones.
    """

    RATIONAL = 1
    SQUARE = 2
    FOURTH = 4
    FLOAT = 0

    @property
    def exponent(self) -> int:
        return self.value

    @property
    def rank(self) -> int:
        return _RANK[self]

    @staticmethod
    def weakest(*levels: "Exactness") -> "Exactness":
        return max(levels, key=lambda level: level.rank)


_RANK = {
    Exactness.RATIONAL: 0,
    Exactness.SQUARE: 1,
    Exactness.FOURTH: 2,
    Exactness.FLOAT: 3,
}


def _level_of(values, squared: bool = False) -> Exactness:
    if all(isinstance(v, Fraction) for v in values):
        return Exactness.SQUARE if squared else Exactness.RATIONAL
    return Exactness.FLOAT


def _root(q: Fraction, exponent: int) -> float:
    if exponent == 1:
        return float(q)
    if exponent == 2:
        return math.sqrt(q)
    return math.sqrt(math.sqrt(q))


def _log_fraction(q: Fraction) -> float:
    if q == 0:
        return -math.inf
    return math.log(q.numerator) - math.log(q.denominator)


class WeightSequence(abc.ABC):
    """A bounded sequence of nonnegative weights ``a_1, a_2, ...``.

    Subclasses are immutable.  Exact subclasses implement ``_exact`` (the
    rational ``a_j ** exactness.exponent``); floating ones implement
    ``_float_weight``.
    """

    family: str = "abstract"

    @property
    @abc.abstractmethod
    def exactness(self) -> Exactness:
        ...

    @property
    @abc.abstractmethod
    def has_zero(self) -> bool:
        """True if some weight vanishes."""

    @property
    def periodicity(self) -> tuple[int, int] | None:
        """``(start, period)`` with ``a_{j+period} == a_j`` for ``j >= start``."""
        return None

    @property
    def nonincreasing(self) -> bool:
        """True when ``a_{j+1} <= a_j`` is known to hold for every j."""
        return False

    def _exact(self, j: int) -> Fraction:
        raise ExactnessError(f"{type(self).__name__} has no exact weights")

    def _float_weight(self, j: int) -> float:
        return _root(self._exact(j), self.exactness.exponent)

    def weight(self, j: int) -> float:
        _check_index(j)
        if self.exactness is Exactness.FLOAT:
            return self._float_weight(j)
        return _root(self._exact(j), self.exactness.exponent)

    def exact(self, j: int, power: int | None = None) -> Fraction:
        """Exact ``a_j ** power``; ``power`` defaults to the certified exponent."""
        _check_index(j)
        e = self.exactness.exponent
        if e == 0:
            raise ExactnessError(f"{type(self).__name__} is floating-only")
        power = e if power is None else power
        if power % e:
            raise ExactnessError(
                f"a_j**{power} is not certified (only a_j**{e} is rational)")
        return self._exact(j) ** (power // e)

    def square(self, j: int) -> Number:
        """``a_j**2``, as a Fraction when the sequence certifies it."""
        if self.exactness in (Exactness.RATIONAL, Exactness.SQUARE):
            return self.exact(j, 2)
        w = self.weight(j)
        return w * w

    def is_zero(self, j: int) -> bool:
        if self.exactness is Exactness.FLOAT:
            return self.weight(j) == 0.0
        _check_index(j)
        return self._exact(j) == 0

    def log_weight(self, j: int) -> float:
        """``log(a_j)``, ``-inf`` for a zero weight."""
        _check_index(j)
        if self.exactness is Exactness.FLOAT:
            w = self._float_weight(j)
            return math.log(w) if w > 0 else -math.inf
        return _log_fraction(self._exact(j)) / self.exactness.exponent

    def head(self, count: int, start: int = 1) -> np.ndarray:
        """Weights ``a_start .. a_{start+count-1}`` as a float array."""
        return np.array([self.weight(j) for j in range(start, start + count)])


@dataclass(frozen=True)
class Constant(WeightSequence):
    """``a_j = c`` for every j; ``Constant(1)`` is the unilateral shift."""

    c: Number
    family = "constant"

    def __post_init__(self):
        object.__setattr__(self, "c", _nonnegative(self.c, "constant weight"))

    @property
    def exactness(self):
        return _level_of([self.c])

    @property
    def has_zero(self):
        return self.c == 0

    @property
    def periodicity(self):
        return (1, 1)

    @property
    def nonincreasing(self):
        return True

    def _exact(self, j):
        return self.c

    def _float_weight(self, j):
        return float(self.c)


@dataclass(frozen=True)
class Periodic(WeightSequence):
    """``a_j = values[(j - 1) % p]``.

    With ``squared=True`` the entries are the squares ``a_j**2``, which lets
    weights such as ``sqrt(3/2)`` stay exact.
    """

    values: tuple
    squared: bool = False
    family = "periodic"

    def __post_init__(self):
        values = tuple(_nonnegative(v, "periodic weight") for v in self.values)
        if not values:
            raise DomainError("a periodic sequence needs at least one weight")
        object.__setattr__(self, "values", values)

    @property
    def period(self) -> int:
        return len(self.values)

    @cached_property
    def exactness(self):
        return _level_of(self.values, self.squared)

    @property
    def has_zero(self):
        return any(v == 0 for v in self.values)

    @property
    def periodicity(self):
        return (1, self.period)

    @property
    def nonincreasing(self):
        return all(v == self.values[0] for v in self.values)

    def _exact(self, j):
        return self.values[(j - 1) % self.period]

    def _float_weight(self, j):
        v = float(self.values[(j - 1) % self.period])
        return math.sqrt(v) if self.squared else v


@dataclass(frozen=True)
class TwoIsoFamily(WeightSequence):
    """``a_j = sqrt((j + 1 + a) / (j + a))`` for a parameter ``a > -1``.

    These are exactly the non-isometric 2-isometric weighted shifts.
    """

    a: Number
    family = "two-iso"

    def __post_init__(self):
        a = as_number(self.a)
        if not a > -1:
            raise DomainError(f"two-isometric family needs a > -1, got {a}")
        object.__setattr__(self, "a", a)

    @property
    def exactness(self):
        return Exactness.SQUARE if isinstance(self.a, Fraction) else Exactness.FLOAT

    @property
    def has_zero(self):
        return False

    @property
    def nonincreasing(self):
        return True

    def _exact(self, j):
        return 1 + 1 / (j + self.a)

    def _float_weight(self, j):
        return math.sqrt(1.0 + 1.0 / (j + self.a))


@dataclass(frozen=True)
class PowerTower(WeightSequence):
    """``a_j = x ** (((lam - 1) / lam) ** j)``, evaluated in the log domain.

    Its ``lam``-Aluthge transform is the unilateral shift.  The sequence is
    bounded only for ``lam >= 1/2`` (ratio magnitude at most 1) or ``x == 1``;
    for ``lam < 1/2`` the odd-index exponents diverge to ``-inf`` times
    ``log x`` and the weights blow up on one parity or the other.
    """

    x: Number
    lam: Number
    family = "power-tower"

    def __post_init__(self):
        x, lam = as_number(self.x), as_number(self.lam)
        if not x > 0:
            raise DomainError(f"power tower base must be positive, got {x}")
        if not 0 < lam < 1:
            raise DomainError(f"power tower needs lambda in (0, 1), got {lam}")
        if lam < Fraction(1, 2) and x != 1:
            raise UnboundedWeightsError(
                f"power tower with lambda={lam} < 1/2 is unbounded for x={x} != 1")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "lam", lam)

    @property
    def ratio(self) -> float:
        return float((self.lam - 1) / self.lam)

    @property
    def exactness(self):
        return Exactness.FLOAT

    @property
    def has_zero(self):
        return False

    @property
    def periodicity(self):
        if self.x == 1:
            return (1, 1)
        if self.lam == Fraction(1, 2):
            return (1, 2)
        return None

    @property
    def nonincreasing(self):
        return self.x == 1

    def log_weight(self, j):
        _check_index(j)
        return self.ratio ** j * math.log(self.x)

    def _float_weight(self, j):
        return math.exp(self.log_weight(j))


@dataclass(frozen=True)
class Tail:
    """How an :class:`Explicit` sequence continues past its listed values."""

    rule: str
    value: Number | None = None

    RULES = ("constant", "repeat-last", "two-iso-extend")

    def __post_init__(self):
        if self.rule not in self.RULES:
            raise DomainError(f"unknown tail rule {self.rule!r}")
        if self.rule == "repeat-last":
            if self.value is not None:
                raise DomainError("repeat-last takes no parameter")
            return
        if self.value is None:
            raise DomainError(f"tail rule {self.rule!r} needs a parameter")
        value = as_number(self.value)
        if self.rule == "constant" and value < 0:
            raise DomainError("constant tail must be nonnegative")
        if self.rule == "two-iso-extend" and not value > -1:
            raise DomainError("two-iso-extend needs a > -1")
        object.__setattr__(self, "value", value)

    @classmethod
    def constant(cls, c) -> "Tail":
        return cls("constant", c)

    @classmethod
    def repeat_last(cls) -> "Tail":
        return cls("repeat-last")

    @classmethod
    def two_iso_extend(cls, a) -> "Tail":
        return cls("two-iso-extend", a)


@dataclass(frozen=True)
class Explicit(WeightSequence):
    """A finite list of weights continued by a declared :class:`Tail`."""

    values: tuple
    tail: Tail
    squared: bool = False
    family = "explicit"

    def __post_init__(self):
        values = tuple(_nonnegative(v, "explicit weight") for v in self.values)
        if not values:
            raise DomainError("an explicit sequence needs at least one value")
        if not isinstance(self.tail, Tail):
            raise DomainError(
                "an explicit sequence needs a tail rule; defect checks "
                "quantify over every index")
        object.__setattr__(self, "values", values)

    @cached_property
    def exactness(self):
        level = _level_of(self.values, self.squared)
        if self.tail.rule == "constant":
            tail = _level_of([self.tail.value])
        elif self.tail.rule == "two-iso-extend":
            tail = (Exactness.SQUARE if isinstance(self.tail.value, Fraction)
                    else Exactness.FLOAT)
        else:
            tail = level
        return Exactness.weakest(level, tail)

    @property
    def has_zero(self):
        return (any(v == 0 for v in self.values)
                or (self.tail.rule == "constant" and self.tail.value == 0))

    @property
    def periodicity(self):
        if self.tail.rule == "two-iso-extend":
            return None
        return (len(self.values) + 1, 1)

    @property
    def nonincreasing(self):
        n = len(self.values) + 2
        if self.exactness is Exactness.FLOAT:
            seq = [self.weight(j) for j in range(1, n + 1)]
        else:
            seq = [self.exact(j) for j in range(1, n + 1)]
        return all(x >= y for x, y in zip(seq, seq[1:]))

    def _exact(self, j):
        e = self.exactness.exponent
        n = len(self.values)
        if j <= n:
            v = self.values[j - 1]
            return v ** (e // 2) if self.squared else v ** e
        if self.tail.rule == "constant":
            return self.tail.value ** e
        if self.tail.rule == "repeat-last":
            return self._exact(n)
        return 1 + 1 / (j + self.tail.value)

    def _float_weight(self, j):
        n = len(self.values)
        if j <= n:
            v = float(self.values[j - 1])
            return math.sqrt(v) if self.squared else v
        if self.tail.rule == "constant":
            return float(self.tail.value)
        if self.tail.rule == "repeat-last":
            return self._float_weight(n)
        return math.sqrt(1.0 + 1.0 / (j + self.tail.value))


@dataclass(frozen=True)
class ScaledSequence(WeightSequence):
    """``alpha * a_j``; the weights of ``alpha * T``."""

    base: WeightSequence
    alpha: Number
    family = "scale"

    def __post_init__(self):
        alpha = as_number(self.alpha)
        if not alpha > 0:
            raise DomainError(f"scale factor must be positive, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def exactness(self):
        if isinstance(self.alpha, Fraction):
            return self.base.exactness
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
        return self.alpha ** self.exactness.exponent * self.base._exact(j)

    def _float_weight(self, j):
        return float(self.alpha) * self.base.weight(j)

    def log_weight(self, j):
        return math.log(self.alpha) + self.base.log_weight(j)


@dataclass(frozen=True)
class WeightedShift:
    """The operator ``T e_j = zeta_j a_j e_{j+1}`` on l^2.

    ``phases`` is repeated periodically; ``None`` means all phases are 1.
    Where ``a_j == 0`` the phase is recorded as 0 (the partial isometry of
    the polar decomposition kills ``e_j``).
    """

    weights: WeightSequence
    phases: tuple | None = field(default=None)

    def __post_init__(self):
        if not isinstance(self.weights, WeightSequence):
            raise TypeError("weights must be a WeightSequence")
        if self.phases is not None:
            phases = tuple(complex(z) for z in self.phases)
            if not phases:
                raise DomainError("phase list must be nonempty")
            for z in phases:
                if abs(abs(z) - 1.0) > 1e-12:
                    raise DomainError(f"phase {z} is not unimodular")
            if all(z == 1 for z in phases):
                phases = None
            object.__setattr__(self, "phases", phases)

    @classmethod
    def from_angles(cls, weights: WeightSequence, angles) -> "WeightedShift":
        return cls(weights, tuple(cmath.exp(1j * float(t)) for t in angles))

    @property
    def exactness(self) -> Exactness:
        return self.weights.exactness

    def weight(self, j: int) -> float:
        return self.weights.weight(j)

    def square(self, j: int) -> Number:
        return self.weights.square(j)

    def head(self, count: int, start: int = 1) -> np.ndarray:
        return self.weights.head(count, start)

    def phase(self, j: int) -> complex:
        if self.weights.is_zero(j):
            return 0j
        if self.phases is None:
            return 1 + 0j
        return self.phases[(j - 1) % len(self.phases)]

    def entry(self, j: int) -> complex:
        """The matrix entry ``<T e_j, e_{j+1}> = zeta_j a_j``."""
        return self.phase(j) * self.weight(j)

    def with_weights(self, weights: WeightSequence) -> "WeightedShift":
        return WeightedShift(weights, self.phases)

    def scaled(self, alpha) -> "WeightedShift":
        return self.with_weights(ScaledSequence(self.weights, alpha))


def sequence_of(obj) -> WeightSequence:
    if isinstance(obj, WeightedShift):
        return obj.weights
    if isinstance(obj, WeightSequence):
        return obj
    raise TypeError(f"expected a WeightedShift or WeightSequence, got {type(obj).__name__}")


def weight_at(obj, j: int) -> float:
    return sequence_of(obj).weight(j)


def square_at(obj, j: int) -> Number:
    return sequence_of(obj).square(j)


def is_isometry(obj, n_max: int = 256, tol: float = DEFAULT_TOL) -> bool:
    """True iff every weight up to ``n_max`` equals 1.

    Exact sequences are compared exactly; floating ones within ``tol``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    seq = sequence_of(obj)
    if seq.exactness is not Exactness.FLOAT:
        return all(seq.exact(j) == 1 for j in range(1, n_max + 1))
    return all(abs(seq.weight(j) - 1.0) <= tol for j in range(1, n_max + 1))
