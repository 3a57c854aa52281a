"""Weight extraction by geometric row means, ranking, and reconstruction.

The solution vector of a PC matrix is the normalized vector of geometric
means of its rows; for a consistent matrix built from weights w the
construction ``[w_i / w_j]`` is recovered exactly. All means run in log
space for stability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PCMatrix, _pc_from_log
from .errors import DimensionTooSmallError, LabelMismatchError


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Strictly positive weights summing to 1."""

    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.ndim != 1 or v.size < 2:
            raise DimensionTooSmallError(f"need at least 2 weights, got shape {v.shape}")
        if not np.all(np.isfinite(v)) or (v <= 0.0).any():
            raise ValueError("weights must be finite and strictly positive")
        if abs(float(v.sum()) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {float(v.sum())!r}")

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __repr__(self):
        return f"WeightVector({self.values.tolist()!r})"


def _row_log_means(m: PCMatrix) -> np.ndarray:
    return m.log_entries.mean(axis=1)


def geometric_mean_weights(m: PCMatrix) -> WeightVector:
    """Normalized geometric means of the rows."""
    g = np.exp(_row_log_means(m))
    w = g / g.sum()
    w.flags.writeable = False
    return WeightVector(values=w)


def matrix_from_weights(w: WeightVector) -> PCMatrix:
    """Consistent PC matrix ``[w_i / w_j]``; a fixed point of the weight
    extraction round trip."""
    lw = np.log(w.values)
    return _pc_from_log(lw[:, None] - lw[None, :])


def rank_entities(w: WeightVector, labels: list[str]) -> list[str]:
    """Labels sorted by descending weight; ties keep the original order."""
    if len(labels) != w.n:
        raise LabelMismatchError(f"{len(labels)} labels for {w.n} weights")
    order = sorted(range(w.n), key=lambda i: -w.values[i])
    return [labels[i] for i in order]


def reconstruction_error(m: PCMatrix) -> float:
    """Worst symmetric relative deviation between ``m`` and the consistent
    matrix rebuilt from its weights; 0 exactly when ``m`` is consistent.

    Measured in log space (``e^|log m_ij - log r_ij| - 1``), which makes the
    value exactly invariant under transposition.
    """
    lw = _row_log_means(m)
    delta = m.log_entries - (lw[:, None] - lw[None, :])
    return float(np.expm1(np.abs(delta)).max())
