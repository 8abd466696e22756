"""m-isometry defects of weighted shifts and the 2-isometric weight family.

For a weighted shift, ``T`` is an m-isometry iff for every ``n >= 1``

    D_m(n) = 1 + sum_{k=1}^{m} (-1)^k C(m, k) s_k(n) = 0,
    s_k(n) = a_n**2 a_{n+1}**2 ... a_{n+k-1}**2,

which is ``sum_k (-1)^k C(m, k) ||T^k e_n||^2``.  Three arithmetic modes:

``exact-rational``
    the squares ``a_j**2`` are certified rationals; every ``D_m(n)`` is a
    Fraction.
``exact-radical``
    only ``a_j**4`` is rational (the Aluthge transform at lambda = 1/2 of
    an exact sequence).  Then ``s_k = sqrt(P_k)`` with ``P_k`` rational, and
    ``D_m(n) == 0`` is decided exactly by grouping square roots by their
    squarefree part (square roots of distinct squarefree integers are
    linearly independent over the rationals).
``floating``
    double precision with a compensated sum; a value counts as zero when
    ``|D| <= rel_tol * max(1, sum_k C(m, k) s_k)``.
"""

from __future__ import annotations

import math
import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import factorint

from .errors import DegenerateFitError, DomainError, RangeError
from .weights import (DEFAULT_TOL, Exactness, Number, TwoIsoFamily,
                      sequence_of)

__all__ = [
    "MAX_ORDER", "DEFAULT_N_MAX", "EXACT_RATIONAL", "EXACT_RADICAL", "FLOATING",
    "DefectReport", "TwoIsoFit", "defect", "defect_mode", "is_m_isometry",
    "two_iso_weights", "fit_two_iso", "default_rel_tol",
]

MAX_ORDER = 64
DEFAULT_N_MAX = 256

EXACT_RATIONAL = "exact-rational"
EXACT_RADICAL = "exact-radical"
FLOATING = "floating"


def default_rel_tol() -> float:
    """Relative zero threshold for floating defects (``SHIFTLAB_TOL`` overrides)."""
    raw = os.environ.get("SHIFTLAB_TOL")
    if raw is None:
        return DEFAULT_TOL
    value = float(raw)
    if not value >= 0:
        raise DomainError(f"SHIFTLAB_TOL must be nonnegative, got {raw!r}")
    return value


def _binomials(m: int) -> list[int]:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise DomainError(f"order m must be an integer >= 1, got {m!r}")
    if m > MAX_ORDER:
        raise DomainError(f"order m={m} exceeds the supported maximum {MAX_ORDER}")
    return [math.comb(m, k) for k in range(m + 1)]


def _check_n(n) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"index n must be an integer >= 1, got {n!r}")


def defect_mode(obj) -> str:
    level = sequence_of(obj).exactness
    if level in (Exactness.RATIONAL, Exactness.SQUARE):
        return EXACT_RATIONAL
    if level is Exactness.FOURTH:
        return EXACT_RADICAL
    return FLOATING


@lru_cache(maxsize=8192)
def _squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * f`` with ``f`` squarefree."""
    s = f = 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


def _rational_defect(binom, squares) -> Fraction:
    total = Fraction(1)
    s = Fraction(1)
    for k in range(1, len(binom)):
        s *= squares[k - 1]
        total += (-1) ** k * binom[k] * s
    return total


def _radical_defect(binom, fourths) -> tuple[float, bool]:
    """Evaluate ``sum_k (-1)^k C(m,k) sqrt(P_k)``; return ``(value, is_zero)``."""
    groups: dict[int, Fraction] = defaultdict(Fraction)
    p = Fraction(1)
    for k in range(len(binom)):
        if k:
            p *= fourths[k - 1]
        if p == 0:
            break
        s, f = _squarefree_split(p.numerator * p.denominator)
        groups[f] += (-1) ** k * binom[k] * Fraction(s, p.denominator)
    nonzero = {f: c for f, c in groups.items() if c != 0}
    value = math.fsum(float(c) * math.sqrt(f) for f, c in nonzero.items())
    return value, not nonzero


def _float_defect(binom, squares) -> tuple[float, float]:
    """Return ``(D, scale)`` where ``scale = sum_k C(m,k) s_k``."""
    terms = [1.0]
    s = 1.0
    for k in range(1, len(binom)):
        s *= squares[k - 1]
        terms.append((-1) ** k * binom[k] * s)
    if not all(math.isfinite(t) for t in terms):
        raise RangeError("floating overflow while forming weight products")
    value = math.fsum(terms)
    scale = math.fsum(abs(t) for t in terms)
    if not (math.isfinite(value) and math.isfinite(scale)):
        raise RangeError("floating overflow while forming weight products")
    return value, scale


def _powers(seq, mode: str, lo: int, hi: int) -> list:
    if mode == EXACT_RATIONAL:
        return [seq.exact(j, 2) for j in range(lo, hi + 1)]
    if mode == EXACT_RADICAL:
        return [seq.exact(j, 4) for j in range(lo, hi + 1)]
    return [seq.square(j) for j in range(lo, hi + 1)]


def defect(shift, m: int, n: int) -> Number:
    """``D_m(n)``: a Fraction in exact-rational mode, a float otherwise."""
    binom = _binomials(m)
    _check_n(n)
    seq = sequence_of(shift)
    mode = defect_mode(seq)
    powers = _powers(seq, mode, n, n + m - 1)
    if mode == EXACT_RATIONAL:
        return _rational_defect(binom, powers)
    if mode == EXACT_RADICAL:
        value, is_zero = _radical_defect(binom, powers)
        return 0.0 if is_zero else value
    return _float_defect(binom, powers)[0]


@dataclass(frozen=True)
class DefectReport:
    """Per-index defects ``D_m(n)`` over ``n_range`` and the resulting verdict.

    ``witness`` is ``(n, D_m(n))`` for the least violating index.
    """

    m: int
    n_range: tuple[int, int]
    values: tuple
    mode: str
    tol: float
    verdict: str
    witness: tuple[int, Number] | None
    tol_mode: str = field(default="absolute")

    @property
    def is_zero(self) -> bool:
        return self.verdict == "all-zero"

    def to_dict(self, max_values: int | None = 64) -> dict:
        values = self.values if max_values is None else self.values[:max_values]
        witness = None
        if self.witness is not None:
            n, value = self.witness
            witness = {"n": n, "value": _encode(value), "float": float(value)}
        return {
            "m": self.m,
            "n_range": list(self.n_range),
            "mode": self.mode,
            "tol": self.tol,
            "tol_mode": self.tol_mode,
            "verdict": self.verdict,
            "witness": witness,
            "values": [_encode(v) for v in values],
        }


def _encode(value):
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def is_m_isometry(shift, m: int, n_max: int = DEFAULT_N_MAX,
                  tol: float | None = None, *, n_min: int = 1,
                  stop_on_witness: bool = False) -> DefectReport:
    """Evaluate ``D_m(n)`` for ``n_min <= n <= n_max`` and decide all-zero.

    Exact modes decide zero exactly and ignore ``tol``.  In floating mode an
    explicit ``tol`` is an absolute threshold; ``None`` selects the
    scale-aware threshold ``rel_tol * max(1, sum_k C(m,k) s_k(n))``.
    """
    binom = _binomials(m)
    _check_n(n_min)
    if n_max < n_min:
        raise DomainError(f"n_max={n_max} is below n_min={n_min}")
    seq = sequence_of(shift)
    mode = defect_mode(seq)
    powers = _powers(seq, mode, n_min, n_max + m - 1)
    rel = default_rel_tol()

    values = []
    witness = None
    for n in range(n_min, n_max + 1):
        window = powers[n - n_min:n - n_min + m]
        if mode == EXACT_RATIONAL:
            value = _rational_defect(binom, window)
            violates = value != 0
        elif mode == EXACT_RADICAL:
            value, is_zero = _radical_defect(binom, window)
            violates = not is_zero
            if is_zero:
                value = 0.0
        else:
            value, scale = _float_defect(binom, window)
            threshold = rel * max(1.0, scale) if tol is None else tol
            violates = abs(value) > threshold
        values.append(value)
        if violates and witness is None:
            witness = (n, value)
            if stop_on_witness:
                break

    if mode == FLOATING:
        report_tol, tol_mode = (rel, "scale-aware") if tol is None else (tol, "absolute")
    else:
        report_tol, tol_mode = 0.0, "exact"
    return DefectReport(
        m=m,
        n_range=(n_min, n_min + len(values) - 1),
        values=tuple(values),
        mode=mode,
        tol=report_tol,
        verdict="all-zero" if witness is None else "nonzero-witness",
        witness=witness,
        tol_mode=tol_mode,
    )


def two_iso_weights(a) -> TwoIsoFamily:
    """The 2-isometric weights ``sqrt((j + 1 + a) / (j + a))``, ``a > -1``."""
    return TwoIsoFamily(a)


@dataclass(frozen=True)
class TwoIsoFit:
    """Result of matching weights against the 2-isometric family.

    ``a_hat`` is None in the isometry case (all weights 1).
    """

    a_hat: Number | None
    residuals: tuple
    consistent: bool
    isometry: bool = False


def fit_two_iso(shift, j_max: int = 64, tol: float = DEFAULT_TOL) -> TwoIsoFit:
    """Recover ``a`` from ``u_j = 1 / (a_j**2 - 1) = j + a`` at ``j = 1``.

    The remaining indices up to ``j_max`` only validate the fit; residuals
    are ``|a_j**2 - (j + 1 + a_hat) / (j + a_hat)|``.  Exact sequences give
    an exact ``a_hat``.
    """
    if j_max < 2:
        raise DomainError("j_max must be >= 2")
    seq = sequence_of(shift)
    squares = [seq.square(j) for j in range(1, j_max + 1)]

    if abs(squares[0] - 1) <= tol:
        residuals = tuple(abs(s - 1) for s in squares)
        if all(r <= tol for r in residuals):
            return TwoIsoFit(None, residuals, True, isometry=True)
        raise DegenerateFitError(
            "a_1 == 1 but some later weight differs from 1; no 2-isometric "
            "shift has a single unit weight")

    a_hat = 1 / (squares[0] - 1) - 1
    residuals = []
    for j, s in enumerate(squares, start=1):
        den = j + a_hat
        residuals.append(math.inf if den == 0 else abs(s - (den + 1) / den))
    consistent = a_hat > -1 and all(r <= tol for r in residuals)
    return TwoIsoFit(a_hat, tuple(residuals), consistent)
