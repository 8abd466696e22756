"""Power norms and spectral radius of weighted shifts.

For nonnegative weights ``||T^n|| = sup_j a_j a_{j+1} ... a_{j+n-1}``.  The
supremum is attained within one period for (eventually) periodic
sequences and at ``j = 1`` for nonincreasing ones; otherwise it is taken
over a finite window of starting indices and is only a lower bound.
"""

from __future__ import annotations

import io
import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .weights import Exactness, Number, ScaledSequence, sequence_of

__all__ = [
    "DEFAULT_WINDOW", "PowerNormTable", "SpectralRadius", "ProbeResult",
    "power_norm", "power_norms", "power_norm_table", "spectral_radius",
    "power_bounded_probe",
]

DEFAULT_WINDOW = 4096
# direct products up to this power, log-domain sums beyond
LOG_DOMAIN_POWER = 64
# exact-rational products are used while the start set stays this small
EXACT_STARTS_LIMIT = 256


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _starts(seq, window: int) -> tuple[int, bool]:
    """Number of starting indices to scan and whether that scan is exhaustive."""
    per = seq.periodicity
    if per is not None:
        start, period = per
        return start + period - 1, True
    if seq.nonincreasing:
        return 1, True
    if window < 1:
        raise DomainError("window must be >= 1")
    return window, False


def power_norms(shift, n_max: int, window: int = DEFAULT_WINDOW) -> tuple[list, bool]:
    """``[||T^1||, ..., ||T^n_max||]`` and whether the supremum is exact.

    Rational (or rational-square) sequences with a small start set are
    multiplied exactly: norms are Fractions for rational weights and
    correctly rounded floats for rational squares.
    """
    if n_max < 1:
        raise DomainError("power must be >= 1")
    seq = sequence_of(shift)
    count, exhaustive = _starts(seq, window)
    level = seq.exactness

    if level in (Exactness.RATIONAL, Exactness.SQUARE) and count <= EXACT_STARTS_LIMIT:
        e = level.exponent
        starts = range(1, count + 1)
        running = [Fraction(1)] * count
        norms = []
        for n in range(1, n_max + 1):
            running = [r * seq.exact(j + n - 1, e) for r, j in zip(running, starts)]
            best = max(running)
            norms.append(best if e == 1 else math.sqrt(best))
        return norms, exhaustive

    total = count + n_max - 1
    logs = np.array([seq.log_weight(j) for j in range(1, total + 1)])
    zero = np.isneginf(logs)
    weights = np.where(zero, 0.0, np.exp(np.where(zero, 0.0, logs)))
    log_cum = np.concatenate([[0.0], np.cumsum(np.where(zero, 0.0, logs))])
    zero_cum = np.concatenate([[0], np.cumsum(zero)])
    idx = np.arange(count)
    running = np.ones(count)
    norms = []
    for n in range(1, n_max + 1):
        if n <= LOG_DOMAIN_POWER:
            running = running * weights[idx + n - 1]
            norms.append(float(running.max()))
        else:
            sums = log_cum[idx + n] - log_cum[idx]
            sums = np.where(zero_cum[idx + n] - zero_cum[idx] > 0, -np.inf, sums)
            norms.append(float(np.exp(sums.max())))
    return norms, exhaustive


def power_norm(shift, n: int, window: int = DEFAULT_WINDOW) -> Number:
    """``||T^n||``; see the module docstring for when the value is exact."""
    return power_norms(shift, n, window)[0][-1]


@dataclass(frozen=True)
class PowerNormTable:
    """``||T^n||`` and the root estimates ``||T^n||**(1/n)``."""

    powers: tuple
    norms: tuple
    radius_estimates: tuple
    exact_window: bool

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "norm", "estimate"])
        for n, norm, est in zip(self.powers, self.norms, self.radius_estimates):
            writer.writerow([n, _fmt(norm), _fmt(est)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "powers": list(self.powers),
            "norms": [float(v) for v in self.norms],
            "radius_estimates": [float(v) for v in self.radius_estimates],
            "exact_window": self.exact_window,
        }


def power_norm_table(shift, n_max: int = 32, window: int = DEFAULT_WINDOW,
                     powers=None) -> PowerNormTable:
    powers = tuple(range(1, n_max + 1)) if powers is None else tuple(sorted(powers))
    norms, exhaustive = power_norms(shift, max(powers), window)
    picked = tuple(norms[n - 1] for n in powers)
    estimates = tuple(float(v) ** (1.0 / n) for n, v in zip(powers, picked))
    return PowerNormTable(powers, picked, estimates, exhaustive)


@dataclass(frozen=True)
class SpectralRadius:
    """Spectral radius with the last few root estimates for convergence checks."""

    value: float
    exact: bool
    estimates: tuple

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "exact": self.exact,
            "estimates": [[n, e] for n, e in self.estimates],
        }


def spectral_radius(shift, max_power: int = 256, window: int = DEFAULT_WINDOW,
                    keep: int = 5) -> SpectralRadius:
    """Spectral radius of a weighted shift.

    Eventually periodic sequences give the geometric mean of one period of
    the tail exactly; otherwise ``||T^max_power||**(1/max_power)``.
    """
    if max_power < 2:
        raise DomainError("max_power must be >= 2")
    seq = sequence_of(shift)
    table = power_norm_table(seq, max_power, window)
    estimates = tuple(zip(table.powers, table.radius_estimates))[-keep:]

    per = seq.periodicity
    if per is None:
        return SpectralRadius(table.radius_estimates[-1], False, estimates)
    start, period = per
    js = range(start, start + period)
    level = seq.exactness
    if level is not Exactness.FLOAT:
        prod = math.prod(seq.exact(j) for j in js)
        value = float(prod) ** (1.0 / (period * level.exponent))
    else:
        logs = [seq.log_weight(j) for j in js]
        value = 0.0 if any(math.isinf(v) for v in logs) else math.exp(math.fsum(logs) / period)
    return SpectralRadius(value, True, estimates)


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of scanning ``||(alpha T)^n||`` against a bound."""

    verdict: str
    n: int | None
    norm: Number | None
    norms: tuple
    bound: float
    exact_window: bool

    @property
    def bounded(self) -> bool:
        return self.verdict == "bounded-so-far"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "norm": None if self.norm is None else float(self.norm),
            "bound": self.bound,
            "exact_window": self.exact_window,
        }


def power_bounded_probe(shift, alpha=1, n_max: int = 512, bound: float = 1e6,
                        window: int = DEFAULT_WINDOW) -> ProbeResult:
    """Scan ``||(alpha T)^n||`` for ``n <= n_max``; report the first excess over ``bound``."""
    seq = sequence_of(shift)
    if alpha != 1:
        seq = ScaledSequence(seq, alpha)
    norms, exhaustive = power_norms(seq, n_max, window)
    for n, norm in enumerate(norms, start=1):
        if norm > bound:
            return ProbeResult("growth-witness", n, norm, tuple(norms), bound, exhaustive)
    return ProbeResult("bounded-so-far", None, None, tuple(norms), bound, exhaustive)
