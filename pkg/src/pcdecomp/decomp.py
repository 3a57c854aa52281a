"""Exact split of a 3x3 PC matrix into an orthogonal and a consistent factor.

Every 3x3 PC matrix factors uniquely as ``M = M_H * M_L`` (Hadamard product)
where ``M_L`` is consistent and ``M_H`` has the cyclic one-parameter form
``[[1, k, 1/k], [1/k, 1, k], [k, 1/k, 1]]``. In log space the two factors
live in complementary subspaces that are orthogonal under the Frobenius
inner product: the line spanned by upper triangle ``(x, -x, x)`` and the
plane of additively consistent skews, upper triangle ``(y, y+z, z)``.
The consistent factor carries all the weight information; the orthogonal
factor carries all the inconsistency.

Ratio slot convention for a 3x3 matrix: a = log m01, b = log m02,
c = log m12 (upper triangle read row by row). The split solves
a = x + y, b = -x + (y + z), c = x + z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCE, PCMatrix, Tolerance, hadamard, hadamard_inverse
from .errors import MembershipViolationError, WrongDimensionError
from .liealg import SkewMatrix, _skew_from_array, exp_map, log_map

_H_PATTERN = np.array([[0.0, 1.0, -1.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])


@dataclass(frozen=True)
class OrthoComponent:
    """The cyclic factor: ``matrix = [[1, k, 1/k], [1/k, 1, k], [k, 1/k, 1]]``
    with k > 0; its log has upper triangle (ln k, -ln k, ln k)."""

    k: float
    matrix: PCMatrix


@dataclass(frozen=True)
class ConsistentComponent:
    """The consistent factor ``[[1, y, y*z], [1/y, 1, z], [1/(y*z), 1/z, 1]]``
    with y, z > 0; consistent by construction (m01 * m12 = m02)."""

    y: float
    z: float
    matrix: PCMatrix


@dataclass(frozen=True)
class DecompositionResult:
    """Factor pair plus the additive parameters ``log_params = (x, y, z)``
    of the log-space split; ``ortho.k = e^x``, ``consistent.y = e^y``,
    ``consistent.z = e^z``, and ``hadamard(ortho.matrix, consistent.matrix)``
    reconstructs the input."""

    ortho: OrthoComponent
    consistent: ConsistentComponent
    log_params: tuple[float, float, float]


def _require_3x3(n: int, what: str):
    if n != 3:
        raise WrongDimensionError(f"{what} is defined for 3x3 matrices, got n={n}")


def split_additive(a: SkewMatrix) -> tuple[SkewMatrix, SkewMatrix, float, float, float]:
    """Split a 3x3 skew matrix into its cyclic and consistent parts.

    Returns (A_h, A_l, x, y, z) with A_h upper triangle (x, -x, x),
    A_l upper triangle (y, y+z, z) and A_h + A_l equal to the input up to
    one rounding step per entry.
    """
    _require_3x3(a.n, "the additive split")
    ea = a.entries
    p, q, r = ea[0, 1], ea[0, 2], ea[1, 2]
    # x is a third of the triad log defect, associated exactly as the core
    # consistency metric computes it, so exactly-consistent inputs get an
    # exactly zero cyclic part
    x = ((p + r) - q) / 3.0
    y = (2.0 * p + q - r) / 3.0
    z = (2.0 * r - p + q) / 3.0
    a_h = _skew_from_array(x * _H_PATTERN)
    a_l = _skew_from_array(np.array([[0.0, y, y + z], [0.0, 0.0, z], [0.0, 0.0, 0.0]]))
    return a_h, a_l, float(x), float(y), float(z)


def decompose(m: PCMatrix) -> DecompositionResult:
    """Factor a 3x3 PC matrix as ``ortho.matrix * consistent.matrix``.

    With upper entries (xi, eta, gamma) at slots (0,1), (0,2), (1,2):
    ``k = (xi*gamma/eta)^(1/3)``, ``y = (xi^2*eta/gamma)^(1/3)``,
    ``z = (gamma^2*eta/xi)^(1/3)``, all evaluated in log space.
    """
    _require_3x3(m.n, "the decomposition")
    a_h, a_l, x, y, z = split_additive(log_map(m))
    ortho = OrthoComponent(k=math.exp(x), matrix=exp_map(a_h))
    consistent = ConsistentComponent(y=math.exp(y), z=math.exp(z), matrix=exp_map(a_l))
    return DecompositionResult(ortho=ortho, consistent=consistent, log_params=(x, y, z))


def is_in_H(m: PCMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Membership in the cyclic subgroup: m01 = m12 = 1/m02, each ratio
    within ``tol.consistency_eps``."""
    _require_3x3(m.n, "H membership")
    L = m.log_entries
    dev_pair = abs(math.expm1(L[0, 1] - L[1, 2]))
    dev_recip = abs(math.expm1(L[0, 1] + L[0, 2]))
    return dev_pair <= tol.consistency_eps and dev_recip <= tol.consistency_eps


def is_in_L(m: PCMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Membership in the consistent subgroup: m01 * m12 = m02 within
    ``tol.consistency_eps``."""
    _require_3x3(m.n, "L membership")
    L = m.log_entries
    return abs(math.expm1(L[0, 1] + L[1, 2] - L[0, 2])) <= tol.consistency_eps


def hl_closure_check(m: PCMatrix, other: PCMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Witness subgroup closure: for two matrices in the same subgroup
    (both in H or both in L), check that their Hadamard product and their
    inverses stay in that subgroup.

    Raises MembershipViolationError when the inputs do not share a subgroup.
    """
    if is_in_H(m, tol) and is_in_H(other, tol):
        member = is_in_H
    elif is_in_L(m, tol) and is_in_L(other, tol):
        member = is_in_L
    else:
        raise MembershipViolationError("inputs do not both belong to H or both to L")
    product = hadamard(m, other)
    return (
        member(product, tol)
        and member(hadamard_inverse(m), tol)
        and member(hadamard_inverse(other), tol)
    )
