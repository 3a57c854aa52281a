"""Pairwise-comparison matrix domain types and the Hadamard group operations.

A pairwise-comparison (PC) matrix holds strictly positive ratio judgments
``m[i][j]`` with unit diagonal and reciprocal symmetry ``m[j][i] = 1/m[i][j]``.
Matrices of a fixed dimension form an abelian group under the elementwise
(Hadamard) product: the identity is the all-ones matrix and the inverse of a
matrix is its transpose.

Internally every matrix is stored through its elementwise logarithm, a
skew-symmetric array canonicalized so that the lower triangle is the exact
negation of the upper triangle and the diagonal is exactly zero. Group
operations act on this log representation, which keeps the group laws exact
in floating point: ``M * M^T`` is the all-ones matrix bit for bit, and
inversion is an exact involution. Ratio entries are materialized once, at
construction, and both arrays are frozen.

Consistency is a property of triads: indices ``i < j < k`` are consistent
when ``m[i][k] * m[k][j] == m[i][j]``. The inconsistency indicator of a
matrix is the worst symmetric relative deviation from that condition over
all triads; it is scale-free, lives in ``[0, 1)``, and is zero exactly on
consistent matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    BadDiagonalError,
    DimensionMismatchError,
    DimensionTooSmallError,
    EntryRangeError,
    NonPositiveEntryError,
    NotSkewError,
    NotSquareError,
    ReciprocityViolationError,
)

# Ratio judgments accepted from callers; products of two in-range matrices
# stay far below the exp overflow bound.
ENTRY_MIN = 1e-15
ENTRY_MAX = 1e15

# |log entry| bound for any constructed matrix; exp overflows double just
# above 709, so fail loudly instead of materializing infinities.
LOG_ENTRY_LIMIT = 700.0

DEFAULT_RECIP_TOL = 1e-6


@dataclass(frozen=True)
class Tolerance:
    """Comparison tolerances: ``consistency_eps`` for triad consistency
    decisions, ``numeric_eps`` for generic floating-point equality."""

    consistency_eps: float = 1e-9
    numeric_eps: float = 1e-12

    def __post_init__(self):
        for name in ("consistency_eps", "numeric_eps"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{name} must lie in (0, 1), got {v!r}")


DEFAULT_TOLERANCE = Tolerance()


def _canonical_skew(raw: np.ndarray) -> np.ndarray:
    """Rebuild ``raw`` from its strict upper triangle so that the lower
    triangle is the exact negation and the diagonal is exactly zero."""
    upper = np.triu(raw, 1)
    canon = upper - upper.T
    canon.flags.writeable = False
    return canon


@dataclass(frozen=True, eq=False)
class PCMatrix:
    """Immutable PC matrix.

    ``log_entries`` is the canonical skew-symmetric log representation and is
    the authoritative value; ``entries`` is its elementwise exponential.
    ``recip_tol`` records the reciprocity tolerance used at construction
    (0.0 for matrices produced by exact group operations). Build instances
    with :func:`new_pc_matrix` or the other module functions rather than
    directly.
    """

    n: int
    log_entries: np.ndarray
    entries: np.ndarray = field(repr=False)
    recip_tol: float = 0.0

    def __post_init__(self):
        L = self.log_entries
        if L.shape != (self.n, self.n):
            raise NotSquareError(f"log matrix shape {L.shape} does not match n={self.n}")
        if not np.all(np.isfinite(L)):
            raise NotSkewError("log matrix has non-finite entries")
        if np.any(L != -L.T):
            raise NotSkewError("log matrix is not canonically skew-symmetric")

    def __repr__(self):
        return f"PCMatrix(n={self.n}, entries={self.entries.tolist()!r})"


@dataclass(frozen=True)
class Triad:
    """Index triple ``i < j < k`` with the three ratio values linking it,
    named by their matrix positions. Consistent when
    ``value_ik * value_kj == value_ij``."""

    i: int
    j: int
    k: int
    value_ik: float
    value_kj: float
    value_ij: float

    def __post_init__(self):
        if not (0 <= self.i < self.j < self.k):
            raise ValueError(f"triad indices must be strictly increasing, got {(self.i, self.j, self.k)}")

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)


def _pc_from_log(log_matrix: np.ndarray, recip_tol: float = 0.0) -> PCMatrix:
    """Construct a PCMatrix from any skew log array (canonicalizing it)."""
    canon = _canonical_skew(np.asarray(log_matrix, dtype=float))
    if np.abs(canon).max(initial=0.0) > LOG_ENTRY_LIMIT:
        raise OverflowError(
            f"log entries exceed {LOG_ENTRY_LIMIT}; ratio entries are not representable"
        )
    entries = np.exp(canon)
    entries.flags.writeable = False
    return PCMatrix(n=canon.shape[0], log_entries=canon, entries=entries, recip_tol=recip_tol)


def new_pc_matrix(raw, recip_tol: float = DEFAULT_RECIP_TOL) -> PCMatrix:
    """Validate a raw square array of ratio judgments and build a PCMatrix.

    The upper triangle is kept; the lower triangle and the diagonal are
    canonicalized (exact reciprocals, unit diagonal). Validation happens on
    the raw values first: entries must be finite, strictly positive and
    within ``[ENTRY_MIN, ENTRY_MAX]``; the diagonal must be within
    ``recip_tol`` of 1; and ``raw[i][j] * raw[j][i]`` must be within
    ``recip_tol`` of 1 for every pair.

    Raises NotSquareError, DimensionTooSmallError, NonPositiveEntryError,
    EntryRangeError, BadDiagonalError or ReciprocityViolationError.
    """
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    if n < 2:
        raise DimensionTooSmallError(f"a PC matrix needs dimension >= 2, got {n}")
    if not (0.0 < recip_tol < 1.0):
        raise ValueError(f"recip_tol must lie in (0, 1), got {recip_tol!r}")

    finite = np.isfinite(arr)
    if not finite.all() or (arr <= 0.0).any():
        i, j = divmod(int(np.argmax(~finite | (arr <= 0.0))), n)
        raise NonPositiveEntryError(f"entry ({i}, {j}) = {arr[i, j]!r} is not a positive finite ratio")
    if (arr < ENTRY_MIN).any() or (arr > ENTRY_MAX).any():
        i, j = divmod(int(np.argmax((arr < ENTRY_MIN) | (arr > ENTRY_MAX))), n)
        raise EntryRangeError(
            f"entry ({i}, {j}) = {arr[i, j]!r} outside guard range [{ENTRY_MIN}, {ENTRY_MAX}]"
        )

    diag_dev = np.abs(np.diagonal(arr) - 1.0)
    if (diag_dev > recip_tol).any():
        i = int(np.argmax(diag_dev))
        raise BadDiagonalError(f"diagonal entry ({i}, {i}) = {arr[i, i]!r} is not 1 within {recip_tol}")

    recip_dev = np.abs(arr * arr.T - 1.0)
    if (recip_dev > recip_tol).any():
        i, j = divmod(int(np.argmax(recip_dev)), n)
        raise ReciprocityViolationError(
            f"entries ({i}, {j}) and ({j}, {i}) multiply to {arr[i, j] * arr[j, i]!r}, "
            f"not 1 within {recip_tol}"
        )

    logs = np.zeros_like(arr)
    upper = np.triu_indices(n, 1)
    logs[upper] = np.log(arr[upper])
    return _pc_from_log(logs, recip_tol=recip_tol)


def identity(n: int) -> PCMatrix:
    """All-ones matrix, the group identity."""
    if n < 2:
        raise DimensionTooSmallError(f"a PC matrix needs dimension >= 2, got {n}")
    return _pc_from_log(np.zeros((n, n)))


def hadamard(a: PCMatrix, b: PCMatrix) -> PCMatrix:
    """Elementwise product of two PC matrices of equal dimension."""
    if a.n != b.n:
        raise DimensionMismatchError(f"dimension mismatch: {a.n} vs {b.n}")
    return _pc_from_log(a.log_entries + b.log_entries)


def hadamard_inverse(m: PCMatrix) -> PCMatrix:
    """Group inverse, which equals the transpose: ``hadamard(m, result)`` is
    the all-ones matrix exactly."""
    return _pc_from_log(-m.log_entries)


@lru_cache(maxsize=64)
def _triples(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays (ii, jj, kk) of all triples i<j<k in lexicographic order."""
    combos = np.array(list(itertools.combinations(range(n), 3)), dtype=int).reshape(-1, 3)
    ii, jj, kk = combos[:, 0].copy(), combos[:, 1].copy(), combos[:, 2].copy()
    for a in (ii, jj, kk):
        a.flags.writeable = False
    return ii, jj, kk


def _triad_deviations(m: PCMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Per-triad symmetric relative deviation from multiplicative closure.

    The triad log defect is d = log m_ij + log m_jk - log m_ik; the deviation
    reported is 1 - exp(-|d|) = min(|1 - r|, |1 - 1/r|) for the triad ratio r.
    Computed from the log representation so matrices whose logs close exactly
    measure exactly zero.
    """
    ii, jj, kk = _triples(m.n)
    L = m.log_entries
    defect = L[ii, jj] + L[jj, kk] - L[ii, kk]
    dev = -np.expm1(-np.abs(defect))
    return ii, jj, kk, dev


def inconsistency(m: PCMatrix) -> float:
    """Worst triad deviation, in [0, 1); 0 exactly iff every triad closes.

    Dimension 2 has no triads and reports 0. Invariant under transposition
    and under simultaneous row/column permutation.
    """
    if m.n < 3:
        return 0.0
    return float(_triad_deviations(m)[3].max())


def is_consistent(m: PCMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff every triad's deviation is within ``tol.consistency_eps``."""
    if m.n < 3:
        return True
    return bool(_triad_deviations(m)[3].max() <= tol.consistency_eps)


def worst_triad(m: PCMatrix) -> tuple[Triad, float]:
    """Triad attaining the inconsistency maximum, with its deviation.

    Ties resolve to the lexicographically first (i, j, k).
    """
    if m.n < 3:
        raise DimensionTooSmallError(f"triads need dimension >= 3, got {m.n}")
    ii, jj, kk, dev = _triad_deviations(m)
    pos = int(np.argmax(dev))
    i, j, k = int(ii[pos]), int(jj[pos]), int(kk[pos])
    triad = Triad(
        i=i, j=j, k=k,
        value_ik=float(m.entries[i, k]),
        value_kj=float(m.entries[k, j]),
        value_ij=float(m.entries[i, j]),
    )
    return triad, float(dev[pos])
