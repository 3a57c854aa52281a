"""Shared fixtures and independent oracle helpers.

Oracles here deliberately avoid the library's log-space code paths: they
work on plain entry arrays with direct float arithmetic so that tests can
cross-check the implementation against a second route.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from pcdecomp import new_pc_matrix

EXAM_RAW = [[1.0, 2.0, 5.0], [0.5, 1.0, 3.0], [0.2, 1.0 / 3.0, 1.0]]

EXAM_CSV = "1,2,5\n0.5,1,3\n0.2,0.3333333333,1\n"


@pytest.fixture
def exam_matrix():
    return new_pc_matrix(EXAM_RAW)


def random_pc(rng: np.random.Generator, n: int, low: float = 1.0 / 9.0, high: float = 9.0):
    """Random PC matrix with upper entries log-uniform in [low, high]."""
    raw = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            raw[i, j] = math.exp(rng.uniform(math.log(low), math.log(high)))
            raw[j, i] = 1.0 / raw[i, j]
    return new_pc_matrix(raw, recip_tol=1e-9)


def consistent_pc(rng: np.random.Generator, n: int):
    """Random consistent PC matrix built as a ratio table of positive weights."""
    w = rng.uniform(0.5, 5.0, size=n)
    raw = w[:, None] / w[None, :]
    np.fill_diagonal(raw, 1.0)
    return new_pc_matrix(raw, recip_tol=1e-9)


def brute_inconsistency(entries: np.ndarray) -> float:
    """Enumerate triads on plain entries: max of min(|1-r|, |1-1/r|)."""
    n = entries.shape[0]
    worst = 0.0
    for i, j, k in itertools.combinations(range(n), 3):
        r = entries[i, j] * entries[j, k] / entries[i, k]
        worst = max(worst, min(abs(1.0 - r), abs(1.0 - 1.0 / r)))
    return worst


def brute_worst_triad(entries: np.ndarray) -> tuple[tuple[int, int, int], float]:
    """First triad attaining the brute-force maximum, lexicographic order."""
    n = entries.shape[0]
    best = None
    best_dev = -1.0
    for i, j, k in itertools.combinations(range(n), 3):
        r = entries[i, j] * entries[j, k] / entries[i, k]
        dev = min(abs(1.0 - r), abs(1.0 - 1.0 / r))
        if dev > best_dev:
            best, best_dev = (i, j, k), dev
    return best, best_dev


def max_rel_diff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a / b - 1.0).max())
