import math

import numpy as np
import pytest

from conftest import EXAM_RAW, consistent_pc, random_pc
from pcdecomp import (
    WeightVector,
    decompose,
    geometric_mean_weights,
    hadamard_inverse,
    identity,
    is_consistent,
    matrix_from_weights,
    new_pc_matrix,
    rank_entities,
    reconstruction_error,
)
from pcdecomp.errors import LabelMismatchError


def independent_weights(raw):
    """Oracle: plain-math geometric row means, no numpy, no log matrices."""
    n = len(raw)
    means = [math.exp(sum(math.log(v) for v in row) / n) for row in raw]
    total = sum(means)
    return [g / total for g in means]


class TestWeightVector:
    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            WeightVector(values=np.array([0.5, 0.4]))

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            WeightVector(values=np.array([1.2, -0.2]))

    def test_rejects_single_weight(self):
        with pytest.raises(ValueError):
            WeightVector(values=np.array([1.0]))


class TestGeometricMeanWeights:
    def test_exam_weights(self, exam_matrix):
        w = geometric_mean_weights(exam_matrix)
        assert [round(v, 2) for v in w.values] == [0.58, 0.31, 0.11]
        oracle = independent_weights(EXAM_RAW)
        assert np.abs(w.values - oracle).max() <= 1e-12

    def test_identity_uniform(self):
        w = geometric_mean_weights(identity(4))
        assert np.array_equal(w.values, np.full(4, 0.25))

    def test_recovers_generating_weights(self):
        generating = WeightVector(values=np.array([0.4, 0.4, 0.2]))
        w = geometric_mean_weights(matrix_from_weights(generating))
        assert np.abs(w.values - generating.values).max() <= 1e-14

    def test_round_trip_random(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            n = int(rng.integers(2, 9))
            raw = rng.uniform(0.1, 5.0, size=n)
            generating = WeightVector(values=raw / raw.sum())
            w = geometric_mean_weights(matrix_from_weights(generating))
            assert np.abs(w.values - generating.values).max() <= 1e-14


class TestMatrixFromWeights:
    def test_uniform_gives_identity(self):
        w = WeightVector(values=np.full(3, 1.0 / 3.0))
        assert np.array_equal(matrix_from_weights(w).entries, np.ones((3, 3)))

    def test_ratio_table(self):
        raw = np.array([1.0, 2.0, 3.0, 4.0])
        w = WeightVector(values=raw / raw.sum())
        m = matrix_from_weights(w)
        assert m.entries[1, 0] == pytest.approx(2.0, rel=1e-14)
        assert m.entries[3, 2] == pytest.approx(4.0 / 3.0, rel=1e-14)
        assert is_consistent(m)

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(42)
        raw = rng.uniform(0.2, 3.0, size=5)
        w = WeightVector(values=raw / raw.sum())
        m = matrix_from_weights(w)
        perm = rng.permutation(5)
        permuted = new_pc_matrix(m.entries[np.ix_(perm, perm)], recip_tol=1e-9)
        w_perm = geometric_mean_weights(permuted)
        assert np.abs(w_perm.values - w.values[perm]).max() <= 1e-12


class TestRanking:
    def test_exam_order(self, exam_matrix):
        w = geometric_mean_weights(exam_matrix)
        assert rank_entities(w, ["A", "B", "C"]) == ["A", "B", "C"]

    def test_uniform_keeps_original_order(self):
        w = geometric_mean_weights(identity(3))
        assert rank_entities(w, ["x", "y", "z"]) == ["x", "y", "z"]

    def test_sorted_descending(self):
        w = WeightVector(values=np.array([0.2, 0.5, 0.3]))
        assert rank_entities(w, ["1st", "2nd", "3rd"]) == ["2nd", "3rd", "1st"]

    def test_label_mismatch(self):
        w = WeightVector(values=np.array([0.5, 0.5]))
        with pytest.raises(LabelMismatchError):
            rank_entities(w, ["only"])


class TestReconstructionError:
    def test_zero_on_consistent(self):
        rng = np.random.default_rng(43)
        assert reconstruction_error(consistent_pc(rng, 5)) <= 1e-12

    def test_positive_on_exam(self, exam_matrix):
        assert reconstruction_error(exam_matrix) > 0.01

    def test_matches_literal_composition(self, exam_matrix):
        # oracle: rebuild the matrix from its weights and compare entrywise
        rebuilt = matrix_from_weights(geometric_mean_weights(exam_matrix))
        direct = np.max(
            np.abs(exam_matrix.entries - rebuilt.entries)
            / np.minimum(exam_matrix.entries, rebuilt.entries)
        )
        assert reconstruction_error(exam_matrix) == pytest.approx(direct, rel=1e-12)

    def test_transpose_invariant_exactly(self):
        rng = np.random.default_rng(44)
        m = random_pc(rng, 4)
        assert reconstruction_error(hadamard_inverse(m)) == reconstruction_error(m)


class TestDecompositionLink:
    def test_cyclic_factor_has_uniform_weights(self, exam_matrix):
        ortho = decompose(exam_matrix).ortho.matrix
        w = geometric_mean_weights(ortho)
        assert np.array_equal(w.values, np.full(3, 1.0 / 3.0))
