"""Log/exp bridge between PC matrices and skew-symmetric log-ratio matrices.

The elementwise log of a PC matrix is skew-symmetric (``log(1/x) = -log x``),
and the elementwise exp of any skew-symmetric matrix is a PC matrix. These
two maps are the exponential map of the group and its inverse; both are
exact here because PC matrices already store their log representation.
The skew matrices of dimension n form a vector space of dimension n(n-1)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    LOG_ENTRY_LIMIT,
    DEFAULT_TOLERANCE,
    PCMatrix,
    Tolerance,
    _canonical_skew,
    _pc_from_log,
)
from .errors import DimensionMismatchError, DimensionTooSmallError, NotSkewError, NotSquareError


@dataclass(frozen=True, eq=False)
class SkewMatrix:
    """Immutable skew-symmetric matrix of log-ratios, canonicalized so the
    lower triangle is the exact negation of the upper and the diagonal is
    exactly zero."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        e = self.entries
        if e.shape != (self.n, self.n):
            raise NotSquareError(f"shape {e.shape} does not match n={self.n}")
        if not np.all(np.isfinite(e)):
            raise NotSkewError("entries must be finite")
        if np.any(e != -e.T):
            raise NotSkewError("entries are not canonically skew-symmetric")

    def __repr__(self):
        return f"SkewMatrix(n={self.n}, entries={self.entries.tolist()!r})"


def _skew_from_array(raw: np.ndarray) -> SkewMatrix:
    canon = _canonical_skew(np.asarray(raw, dtype=float))
    return SkewMatrix(n=canon.shape[0], entries=canon)


def new_skew(raw, tol: Tolerance = DEFAULT_TOLERANCE) -> SkewMatrix:
    """Validate a raw array as skew-symmetric (within ``tol.numeric_eps``)
    and canonicalize it."""
    arr = np.asarray(raw, dtype=float)
    if not is_skew(arr, tol):
        raise NotSkewError("matrix is not skew-symmetric within tolerance")
    return _skew_from_array(arr)


def is_skew(raw, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff ``max |raw[i][j] + raw[j][i]| <= tol.numeric_eps``."""
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        return False
    return bool(np.abs(arr + arr.T).max() <= tol.numeric_eps)


def log_map(m: PCMatrix) -> SkewMatrix:
    """Elementwise natural log of a PC matrix; exact (no recomputation)."""
    return SkewMatrix(n=m.n, entries=m.log_entries)


def exp_map(a: SkewMatrix) -> PCMatrix:
    """Elementwise exponential, onto the PC matrix group.

    Raises OverflowError when any |entry| exceeds the representable bound.
    """
    if np.abs(a.entries).max(initial=0.0) > LOG_ENTRY_LIMIT:
        raise OverflowError(f"skew entries exceed {LOG_ENTRY_LIMIT}; exp is not representable")
    return _pc_from_log(a.entries)


def frobenius_inner(a: SkewMatrix, b: SkewMatrix) -> float:
    """Frobenius inner product sum_ij a[i][j] * b[i][j]."""
    if a.n != b.n:
        raise DimensionMismatchError(f"dimension mismatch: {a.n} vs {b.n}")
    return float(np.sum(a.entries * b.entries))


def one_param_subgroup(a: SkewMatrix, t: float) -> PCMatrix:
    """The curve t -> exp(t * a); a one-parameter subgroup of the group:
    the value at s+t is the Hadamard product of the values at s and t."""
    scaled = t * a.entries
    if not np.all(np.isfinite(scaled)) or np.abs(scaled).max(initial=0.0) > LOG_ENTRY_LIMIT:
        raise OverflowError(f"t * entries exceed {LOG_ENTRY_LIMIT}; exp is not representable")
    return _pc_from_log(scaled)


def algebra_dim(n: int) -> int:
    """Dimension of the skew log space: n(n-1)/2. The canonical basis
    returned by :func:`canonical_basis` spans it with exactly this rank."""
    if n < 2:
        raise DimensionTooSmallError(f"dimension must be >= 2, got {n}")
    return n * (n - 1) // 2


def canonical_basis(n: int) -> list[SkewMatrix]:
    """Basis {E_ij - E_ji : i < j} in lexicographic order."""
    if n < 2:
        raise DimensionTooSmallError(f"dimension must be >= 2, got {n}")
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n))
            e[i, j] = 1.0
            basis.append(_skew_from_array(e))
    return basis


class DetTraceResult(NamedTuple):
    det_of_exp: float
    exp_of_trace: float
    equal: bool


def det_trace_check(a: SkewMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> DetTraceResult:
    """Compare the ordinary determinant of exp(a) against e^trace(a).

    The trace of a skew matrix is 0, so e^trace is always 1, while the
    determinant of the materialized PC matrix generally is not: the
    determinant identity familiar from the matrix exponential does not carry
    over to the elementwise map. Equality is judged at ``tol.numeric_eps``
    relative.
    """
    det = float(np.linalg.det(exp_map(a).entries))
    exp_tr = float(np.exp(np.trace(a.entries)))
    scale = max(abs(det), abs(exp_tr))
    equal = abs(det - exp_tr) <= tol.numeric_eps * scale
    return DetTraceResult(det_of_exp=det, exp_of_trace=exp_tr, equal=equal)
