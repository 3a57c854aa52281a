"""Consistency-driven approximation for matrices larger than 3x3.

An n x n PC matrix contains C(n, 3) principal 3x3 submatrices (delete the
same row and column indices). One approximation step decomposes every
submatrix, keeps its consistent factor, and rebuilds the full matrix by
taking the geometric mean of the factor values at each position. A fixed
off-diagonal pair (i, j) occurs in exactly n-2 submatrices (one per choice
of the third index), so the mean at (i, j) runs over those n-2 occurrences,
determined by enumeration. Geometric means of reciprocal pairs are
reciprocal, so each step lands back in the group.

Consistent matrices are fixed points of the step; iterating drives the
inconsistency of a general matrix toward zero. The per-position reduction
is a sum of logs, so the result does not depend on the order in which
submatrices are processed; averaging the raw submatrix entries instead of
the consistent factors would reproduce the input unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    DEFAULT_TOLERANCE,
    PCMatrix,
    Tolerance,
    _pc_from_log,
    _triples,
    inconsistency,
)
from .errors import DimensionTooSmallError


@dataclass(frozen=True)
class SubmatrixSelection:
    """Principal 3x3 submatrix at strictly increasing ``indices``;
    ``sub[p][q] = M[indices[p]][indices[q]]``."""

    indices: tuple[int, int, int]
    sub: PCMatrix


class TraceStep(NamedTuple):
    index: int
    inconsistency: float
    max_change: float


@dataclass(frozen=True)
class IterationTrace:
    """Per-step record of the reconstruction loop. ``steps[0]`` describes
    the input matrix (change 0); ``final`` is the last matrix produced."""

    steps: list[TraceStep]
    final: PCMatrix
    converged: bool


def _require_triads(n: int):
    if n < 3:
        raise DimensionTooSmallError(f"submatrix approximation needs dimension >= 3, got {n}")


def submatrices3(m: PCMatrix) -> list[SubmatrixSelection]:
    """All C(n, 3) principal 3x3 submatrices in lexicographic index order."""
    _require_triads(m.n)
    ii, jj, kk = _triples(m.n)
    out = []
    for i, j, k in zip(ii.tolist(), jj.tolist(), kk.tolist()):
        idx = np.array([i, j, k])
        sub = _pc_from_log(m.log_entries[np.ix_(idx, idx)], recip_tol=m.recip_tol)
        out.append(SubmatrixSelection(indices=(i, j, k), sub=sub))
    return out


def approximate_once(m: PCMatrix) -> PCMatrix:
    """One reconstruction step: geometric mean of the consistent factors of
    all principal 3x3 submatrices.

    For a submatrix with log slots a = L[i,j], b = L[i,k], c = L[j,k] the
    consistent factor contributes a - x at (i,j), b + x at (i,k) and c - x
    at (j,k), where x = (a - b + c)/3 is its cyclic log parameter; the
    contributions of all n-2 submatrices containing a pair are averaged.
    """
    _require_triads(m.n)
    n = m.n
    L = m.log_entries
    ii, jj, kk = _triples(n)
    a = L[ii, jj]
    b = L[ii, kk]
    c = L[jj, kk]
    x = (a - b + c) / 3.0
    acc = np.zeros((n, n))
    np.add.at(acc, (ii, jj), a - x)
    np.add.at(acc, (ii, kk), b + x)
    np.add.at(acc, (jj, kk), c - x)
    return _pc_from_log(acc / (n - 2), recip_tol=m.recip_tol)


def iterate_to_consistency(
    m: PCMatrix,
    tol: Tolerance = DEFAULT_TOLERANCE,
    max_iter: int = 100,
) -> IterationTrace:
    """Apply :func:`approximate_once` until the inconsistency drops to
    ``tol.consistency_eps`` or ``max_iter`` steps have run.

    ``max_change`` per step is the largest relative entry change
    (``e^|delta log| - 1``). A matrix that is already consistent converges
    at step 0 with a single trace entry.
    """
    _require_triads(m.n)
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    current = m
    value = inconsistency(current)
    steps = [TraceStep(index=0, inconsistency=value, max_change=0.0)]
    converged = value <= tol.consistency_eps
    iteration = 0
    while not converged and iteration < max_iter:
        iteration += 1
        nxt = approximate_once(current)
        change = float(np.expm1(np.abs(nxt.log_entries - current.log_entries)).max())
        value = inconsistency(nxt)
        steps.append(TraceStep(index=iteration, inconsistency=value, max_change=change))
        current = nxt
        converged = value <= tol.consistency_eps
    return IterationTrace(steps=steps, final=current, converged=converged)
