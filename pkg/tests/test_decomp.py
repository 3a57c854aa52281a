import math

import numpy as np
import pytest

from conftest import consistent_pc, random_pc
from pcdecomp import (
    decompose,
    frobenius_inner,
    geometric_mean_weights,
    hadamard,
    hadamard_inverse,
    hl_closure_check,
    identity,
    inconsistency,
    is_consistent,
    is_in_H,
    is_in_L,
    log_map,
    matrix_from_weights,
    new_pc_matrix,
    new_skew,
    split_additive,
    WeightVector,
)
from pcdecomp.errors import MembershipViolationError, WrongDimensionError


def h_matrix(k: float):
    return new_pc_matrix([[1, k, 1 / k], [1 / k, 1, k], [k, 1 / k, 1]], recip_tol=1e-9)


def l_matrix(y: float, z: float):
    return new_pc_matrix(
        [[1, y, y * z], [1 / y, 1, z], [1 / (y * z), 1 / z, 1]], recip_tol=1e-9
    )


class TestSplitAdditive:
    def test_zero_splits_to_zero(self):
        a_h, a_l, x, y, z = split_additive(new_skew(np.zeros((3, 3))))
        assert (x, y, z) == (0.0, 0.0, 0.0)
        assert np.array_equal(a_h.entries, np.zeros((3, 3)))
        assert np.array_equal(a_l.entries, np.zeros((3, 3)))

    def test_exam_log_split(self):
        a, b, c = math.log(2.0), math.log(5.0), math.log(3.0)
        skew = new_skew([[0, a, b], [-a, 0, c], [-b, -c, 0]])
        a_h, a_l, x, y, z = split_additive(skew)
        # oracle: the closed-form parameters evaluated directly
        assert x == pytest.approx((a - b + c) / 3.0, rel=1e-14)
        assert y == (2.0 * a + b - c) / 3.0
        assert z == (2.0 * c - a + b) / 3.0
        assert x == pytest.approx(math.log(6.0 / 5.0) / 3.0, rel=1e-14)
        assert np.array_equal(a_h.entries[0], [0.0, x, -x])
        assert a_l.entries[0, 1] == y
        assert a_l.entries[1, 2] == z
        assert a_l.entries[0, 2] == y + z
        assert np.abs(a_h.entries + a_l.entries - skew.entries).max() <= 1e-15

    def test_consistent_input_has_no_cyclic_part(self):
        a, c = math.log(2.0), math.log(3.0)
        b = a + c  # additively consistent by construction
        skew = new_skew([[0, a, b], [-a, 0, c], [-b, -c, 0]])
        a_h, a_l, x, _, _ = split_additive(skew)
        assert x == 0.0
        assert np.array_equal(a_h.entries, np.zeros((3, 3)))
        assert np.abs(a_l.entries - skew.entries).max() <= 1e-15

    def test_wrong_dimension(self):
        with pytest.raises(WrongDimensionError):
            split_additive(new_skew(np.zeros((4, 4))))


class TestDecompose:
    def test_exam_parameters(self, exam_matrix):
        result = decompose(exam_matrix)
        # oracle: cube-root formulas on (xi, eta, gamma) = (2, 5, 3)
        assert result.ortho.k == pytest.approx((2.0 * 3.0 / 5.0) ** (1 / 3), rel=1e-13)
        assert result.consistent.y == pytest.approx((2.0 ** 2 * 5.0 / 3.0) ** (1 / 3), rel=1e-13)
        assert result.consistent.z == pytest.approx((3.0 ** 2 * 5.0 / 2.0) ** (1 / 3), rel=1e-13)
        assert result.ortho.k * result.consistent.y == pytest.approx(2.0, rel=1e-12)
        assert result.ortho.k * result.consistent.z == pytest.approx(3.0, rel=1e-12)

    def test_exam_reconstruction(self, exam_matrix):
        result = decompose(exam_matrix)
        product = hadamard(result.ortho.matrix, result.consistent.matrix)
        assert np.abs(product.entries / exam_matrix.entries - 1.0).max() <= 1e-13

    def test_component_shapes(self, exam_matrix):
        result = decompose(exam_matrix)
        x, y, z = result.log_params
        ortho_logs = log_map(result.ortho.matrix).entries
        assert np.array_equal(ortho_logs[0], [0.0, x, -x])
        assert ortho_logs[1, 2] == x
        assert result.ortho.matrix.entries[0, 1] == result.ortho.k
        cons_logs = log_map(result.consistent.matrix).entries
        assert cons_logs[0, 1] == y
        assert cons_logs[1, 2] == z
        assert cons_logs[0, 2] == y + z
        assert is_consistent(result.consistent.matrix)

    def test_consistent_matrix_decomposes_trivially(self):
        m = new_pc_matrix([[1, 2, 6], [0.5, 1, 3], [1 / 6, 1 / 3, 1]])
        result = decompose(m)
        assert result.ortho.k == pytest.approx(1.0, abs=1e-15)
        assert np.array_equal(result.ortho.matrix.entries, np.ones((3, 3)))
        assert np.abs(result.consistent.matrix.entries / m.entries - 1.0).max() <= 1e-14

    def test_identity_decomposes_to_identities(self):
        result = decompose(identity(3))
        assert result.ortho.k == 1.0
        assert result.consistent.y == 1.0
        assert result.consistent.z == 1.0
        assert np.array_equal(result.ortho.matrix.entries, np.ones((3, 3)))
        assert np.array_equal(result.consistent.matrix.entries, np.ones((3, 3)))

    def test_wrong_dimension(self):
        with pytest.raises(WrongDimensionError):
            decompose(identity(4))

    def test_round_trip_batch(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            m = random_pc(rng, 3)
            result = decompose(m)
            product = hadamard(result.ortho.matrix, result.consistent.matrix)
            assert np.abs(product.entries / m.entries - 1.0).max() <= 1e-12
            logs = log_map(result.consistent.matrix).entries
            assert logs[0, 1] + logs[1, 2] - logs[0, 2] == 0.0  # consistent bit-exactly in logs
            inner = frobenius_inner(log_map(result.ortho.matrix), log_map(result.consistent.matrix))
            assert abs(inner) <= 1e-10


class TestMembership:
    def test_identity_in_both(self):
        assert is_in_H(identity(3))
        assert is_in_L(identity(3))

    def test_exam_components(self, exam_matrix):
        result = decompose(exam_matrix)
        assert is_in_H(result.ortho.matrix)
        assert not is_in_L(result.ortho.matrix)
        assert is_in_L(result.consistent.matrix)
        assert not is_in_H(result.consistent.matrix)

    def test_parametric_families(self):
        assert is_in_H(h_matrix(2.5))
        assert not is_in_L(h_matrix(2.5))
        assert is_in_L(l_matrix(1.8, 0.4))
        assert not is_in_H(l_matrix(1.8, 0.4))

    def test_wrong_dimension(self):
        with pytest.raises(WrongDimensionError):
            is_in_H(identity(4))
        with pytest.raises(WrongDimensionError):
            is_in_L(identity(4))


class TestClosure:
    def test_h_product_multiplies_parameters(self):
        m, other = h_matrix(2.0), h_matrix(3.0)
        assert hl_closure_check(m, other)
        product = hadamard(m, other)
        assert is_in_H(product)
        assert product.entries[0, 1] == pytest.approx(6.0, rel=1e-12)

    def test_l_product_stays_consistent(self):
        assert hl_closure_check(l_matrix(2.0, 0.5), l_matrix(0.7, 3.0))

    def test_h_element_with_inverse(self):
        m = h_matrix(4.0)
        assert hl_closure_check(m, hadamard_inverse(m))
        assert np.array_equal(hadamard(m, hadamard_inverse(m)).entries, np.ones((3, 3)))

    def test_mixed_membership_rejected(self):
        with pytest.raises(MembershipViolationError):
            hl_closure_check(h_matrix(2.0), l_matrix(1.5, 2.0))


class TestDirectProductStructure:
    def test_unique_factorization(self, exam_matrix):
        result = decompose(exam_matrix)
        # move mass between the factors: the H part stays in H but the
        # compensating cofactor falls out of L
        perturbed_h = h_matrix(result.ortho.k * 1.001)
        cofactor = hadamard(exam_matrix, hadamard_inverse(perturbed_h))
        assert is_in_H(perturbed_h)
        assert not is_in_L(cofactor)

    def test_consistency_iff_trivial_cyclic_factor(self):
        rng = np.random.default_rng(32)
        for _ in range(50):
            m = random_pc(rng, 3)
            k = decompose(m).ortho.k
            assert is_consistent(m) == (abs(k - 1.0) <= 1e-9)
        c = consistent_pc(rng, 3)
        assert abs(decompose(c).ortho.k - 1.0) <= 1e-12

    def test_indicator_sees_only_the_cyclic_factor(self, exam_matrix):
        result = decompose(exam_matrix)
        base = inconsistency(exam_matrix)
        for values in ([0.2, 0.3, 0.5], [1 / 3, 1 / 3, 1 / 3], [0.7, 0.2, 0.1]):
            other = matrix_from_weights(WeightVector(values=np.array(values)))
            recombined = hadamard(result.ortho.matrix, other)
            assert inconsistency(recombined) == pytest.approx(base, abs=1e-12)

    def test_weights_come_from_consistent_factor(self):
        rng = np.random.default_rng(33)
        for _ in range(100):
            m = random_pc(rng, 3)
            result = decompose(m)
            w_full = geometric_mean_weights(m).values
            w_cons = geometric_mean_weights(result.consistent.matrix).values
            assert np.abs(w_full - w_cons).max() <= 1e-12
