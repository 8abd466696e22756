"""Dense-matrix oracle: finite truncations of weighted shifts.

This path is deliberately independent of :mod:`shiftlab.transforms` and
:mod:`shiftlab.isometry`.  It compresses a shift to ``span{e_1..e_N}``,
polar-decomposes the matrix, forms transforms by matrix products and
computes defects from ``||M^k e_n||^2`` by repeated matrix-vector products.

Edge semantics: ``T e_N`` is cut to 0, so ``|T|`` has a zero in position
``N``.  Transformed entries ``(j+1, j)`` are reliable for ``j <= N - 2``
("interior") and defects need ``n + m <= N``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RangeError, StructuralError
from .weights import WeightedShift, WeightSequence

__all__ = [
    "MAX_DIM", "TruncatedMatrix", "truncate", "polar_decompose",
    "matrix_aluthge", "matrix_mean", "matrix_lambda_mean", "oracle_defect",
    "from_csv", "from_json",
]

MAX_DIM = 128
STRUCTURE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class TruncatedMatrix:
    """A dense ``N x N`` matrix with a note on where it came from."""

    entries: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        entries = np.array(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise StructuralError(f"expected a square matrix, got shape {entries.shape}")
        if entries.shape[0] > MAX_DIM:
            raise DomainError(f"dimension {entries.shape[0]} exceeds the oracle limit {MAX_DIM}")
        if not np.iscomplexobj(entries):
            entries = entries.astype(float)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def subdiagonal(self, interior: bool = True) -> np.ndarray:
        """Entries ``(j+1, j)``; ``interior`` drops the last, cut-affected one."""
        sub = np.diagonal(self.entries, offset=-1)
        return sub[:-1] if interior else sub

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        real = not np.iscomplexobj(self.entries) or not np.any(self.entries.imag)
        for row in self.entries:
            writer.writerow([_fmt(z, real) for z in row])
        return buf.getvalue()

    def to_json(self) -> str:
        entries = self.entries
        doc = {"dim": self.dim, "provenance": self.provenance}
        if np.iscomplexobj(entries) and np.any(entries.imag):
            doc["real"] = entries.real.tolist()
            doc["imag"] = entries.imag.tolist()
        else:
            doc["real"] = np.real(entries).tolist()
        return json.dumps(doc)


def _fmt(z, real: bool) -> str:
    if real:
        return format(float(np.real(z)), ".17g")
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}j"


def from_csv(text: str, provenance: str = "csv import") -> TruncatedMatrix:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    values = [[complex(cell.strip()) for cell in row] for row in rows]
    entries = np.array(values)
    if not np.any(entries.imag):
        entries = entries.real
    return TruncatedMatrix(entries, provenance)


def from_json(text: str) -> TruncatedMatrix:
    doc = json.loads(text)
    entries = np.array(doc["real"], dtype=float)
    if "imag" in doc:
        entries = entries + 1j * np.array(doc["imag"], dtype=float)
    return TruncatedMatrix(entries, doc.get("provenance", "json import"))


def truncate(shift, dim: int) -> TruncatedMatrix:
    """Compress a shift to ``span{e_1, ..., e_dim}``."""
    if isinstance(shift, WeightSequence):
        shift = WeightedShift(shift)
    if dim < 2:
        raise DomainError("truncation dimension must be >= 2")
    if dim > MAX_DIM:
        raise DomainError(f"dimension {dim} exceeds the oracle limit {MAX_DIM}")
    entries = [shift.entry(j) for j in range(1, dim)]
    dtype = complex if any(z.imag for z in entries) else float
    m = np.zeros((dim, dim), dtype=dtype)
    for j, z in enumerate(entries):
        m[j + 1, j] = z if dtype is complex else z.real
    return TruncatedMatrix(m, f"truncate(dim={dim})")


def polar_decompose(matrix: TruncatedMatrix) -> tuple[TruncatedMatrix, TruncatedMatrix]:
    """``M = V P`` with ``P = (M* M)^(1/2)`` and ``V`` the partial isometry.

    Only matrices with diagonal ``M* M`` (shift truncations) are accepted,
    so ``P`` is the entrywise square root of that diagonal and
    ``V = M P^+`` with the pseudo-inverse taken on the diagonal.
    """
    m = matrix.entries
    gram = m.conj().T @ m
    off = gram - np.diag(np.diag(gram))
    if off.size and np.max(np.abs(off)) > STRUCTURE_TOL:
        raise StructuralError("M*M is not diagonal; not a weighted shift truncation")
    p = np.sqrt(np.maximum(np.real(np.diag(gram)), 0.0))
    p_pinv = np.divide(1.0, p, out=np.zeros_like(p), where=p > 0)
    v = m @ np.diag(p_pinv)
    note = matrix.provenance
    return (TruncatedMatrix(v, f"V of {note}"), TruncatedMatrix(np.diag(p), f"|T| of {note}"))


def _diag_power(p: TruncatedMatrix, exponent: float) -> np.ndarray:
    # numpy gives 0.0 ** 0 == 1.0, matching |T|^0 = I
    return np.diag(np.diag(p.entries).real ** exponent)


def matrix_aluthge(matrix: TruncatedMatrix, lam) -> TruncatedMatrix:
    """``|T|^lam V |T|^(1 - lam)`` by dense multiplication."""
    lam = float(lam)
    if not 0 <= lam <= 1:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    v, p = polar_decompose(matrix)
    out = _diag_power(p, lam) @ v.entries @ _diag_power(p, 1 - lam)
    return TruncatedMatrix(out, f"aluthge(lam={lam}) of {matrix.provenance}")


def matrix_mean(matrix: TruncatedMatrix) -> TruncatedMatrix:
    """``(|T| V + V |T|) / 2`` by dense multiplication."""
    v, p = polar_decompose(matrix)
    out = 0.5 * (p.entries @ v.entries + v.entries @ p.entries)
    return TruncatedMatrix(out, f"mean of {matrix.provenance}")


def matrix_lambda_mean(matrix: TruncatedMatrix, lam) -> TruncatedMatrix:
    """``(Delta_lam(M) + Delta_{1-lam}(M)) / 2``."""
    lam = float(lam)
    out = 0.5 * (matrix_aluthge(matrix, lam).entries
                 + matrix_aluthge(matrix, 1 - lam).entries)
    return TruncatedMatrix(out, f"lambda-mean(lam={lam}) of {matrix.provenance}")


def oracle_defect(matrix: TruncatedMatrix, m: int, n: int) -> float:
    """``sum_k (-1)^k C(m, k) ||M^k e_n||^2`` from explicit matrix powers."""
    if m < 1 or n < 1:
        raise DomainError("m and n must be >= 1")
    if n + m > matrix.dim:
        raise RangeError(
            f"n + m = {n + m} exceeds dimension {matrix.dim}; truncation would leak")
    x = np.zeros(matrix.dim, dtype=matrix.entries.dtype)
    x[n - 1] = 1.0
    terms = []
    for k in range(m + 1):
        if k:
            x = matrix.entries @ x
        terms.append((-1) ** k * math.comb(m, k) * float(np.vdot(x, x).real))
    return math.fsum(terms)
