import numpy as np
import pytest
from hypothesis import given, settings

from wignerlift.errors import DimensionMismatch, NotInTable, ZeroVector
from wignerlift.hilbert import basis_vector, random_state, random_unitary, transition_probability
from wignerlift.projective import (
    CallableOracle,
    MatrixOracle,
    TabulatedOracle,
    apply_oracle,
    canonicalize,
    check_probability_preservation,
    ray_equal,
)

from conftest import complex_vectors

RT2 = 1.0 / np.sqrt(2.0)


class TestCanonicalize:
    def test_phase_and_modulus_removed(self):
        np.testing.assert_allclose(canonicalize([0, 2j]).rep, [0, 1], atol=1e-15)

    def test_real_superposition(self):
        np.testing.assert_allclose(canonicalize([1, 1]).rep, [RT2, RT2], atol=1e-15)

    def test_imaginary_pivot(self):
        # (i, 1): multiply by -i, then normalize
        np.testing.assert_allclose(canonicalize([1j, 1]).rep, [RT2, -1j * RT2],
                                   atol=1e-15)

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            canonicalize(np.zeros(3))

    def test_pivot_skips_negligible_components(self):
        r = canonicalize([1e-15 * 1j, 3j])
        assert abs(r.rep[1] - 1.0) < 1e-12

    @settings(max_examples=80, deadline=None)
    @given(complex_vectors())
    def test_idempotent(self, v):
        first = canonicalize(v).rep
        second = canonicalize(first).rep
        np.testing.assert_allclose(second, first, atol=1e-15)

    @settings(max_examples=40, deadline=None)
    @given(complex_vectors())
    def test_invariants(self, v):
        rep = canonicalize(v).rep
        assert np.linalg.norm(rep) == pytest.approx(1.0, abs=1e-12)
        pivot = next(i for i in range(rep.size) if abs(rep[i]) > 1e-9)
        assert rep[pivot].imag == pytest.approx(0.0, abs=1e-12)
        assert rep[pivot].real > 0


class TestRayEqual:
    def test_same_ray_rescaled(self):
        v = np.array([0.3 - 1j, 2.0, 0.1j])
        assert ray_equal(canonicalize(v), canonicalize(np.exp(0.7j) * 3.0 * v))

    def test_distinct_basis_rays(self):
        assert not ray_equal(canonicalize([1, 0]), canonicalize([0, 1]))

    def test_small_perturbation_distinguished(self):
        # 1 - P = eps^2 / (1 + eps^2) ~ 1e-6 for eps = 1e-3, above eq_tol = 1e-9
        eps = 1e-3
        r = canonicalize([1.0, 0.0])
        s = canonicalize([1.0, eps])
        expected_gap = eps**2 / (1.0 + eps**2)
        measured_gap = 1.0 - transition_probability(r.rep, s.rep)
        assert measured_gap == pytest.approx(expected_gap, rel=1e-9)
        assert not ray_equal(r, s)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            ray_equal(canonicalize([1, 0]), canonicalize([1, 0, 0]))

    def test_equivalence_relation(self):
        v = random_state(4, 21)
        a = canonicalize(v)
        b = canonicalize(1j * v)
        c = canonicalize(-2.5 * v)
        assert ray_equal(a, a)
        assert ray_equal(a, b) and ray_equal(b, a)
        assert ray_equal(a, b) and ray_equal(b, c) and ray_equal(a, c)


class TestOracles:
    def test_identity_induced(self):
        oracle = MatrixOracle(np.eye(2))
        r = canonicalize([1, 1])
        assert ray_equal(apply_oracle(oracle, r), r)

    def test_conjugating_identity(self):
        oracle = MatrixOracle(np.eye(2), conjugate_input=True)
        image = apply_oracle(oracle, canonicalize([1 + 1j, 1]))
        np.testing.assert_allclose(image.rep, canonicalize([1 - 1j, 1]).rep, atol=1e-15)

    def test_unitary_induced_on_basis(self):
        u = random_unitary(3, 5)
        oracle = MatrixOracle(u)
        image = apply_oracle(oracle, canonicalize(basis_vector(3, 0)))
        np.testing.assert_allclose(image.rep, canonicalize(u[:, 0]).rep, atol=1e-15)

    def test_rank_deficient_matrix_rejected(self):
        with pytest.raises(ValueError):
            MatrixOracle(np.array([[1.0, 1.0], [1.0, 1.0]]))

    def test_domain_dim_checked(self):
        oracle = MatrixOracle(np.eye(2))
        with pytest.raises(DimensionMismatch):
            oracle.apply(canonicalize([1, 0, 0]))

    def test_callable_annihilation_raises(self):
        oracle = CallableOracle(lambda v: np.zeros(2), 2, 2)
        with pytest.raises(ZeroVector):
            oracle.apply(canonicalize([1, 0]))

    def test_tabulated_lookup(self):
        e0, e1 = basis_vector(2, 0), basis_vector(2, 1)
        oracle = TabulatedOracle(2, 2, [(e0, e1), (e1, e0)])
        assert ray_equal(oracle.apply(canonicalize(e0)), canonicalize(e1))
        # same ray, different representative
        assert ray_equal(oracle.apply(canonicalize(5j * e0)), canonicalize(e1))

    def test_tabulated_miss(self):
        e0, e1 = basis_vector(2, 0), basis_vector(2, 1)
        oracle = TabulatedOracle(2, 2, [(e0, e0)])
        with pytest.raises(NotInTable):
            oracle.apply(canonicalize(e0 + e1))

    def test_tabulated_duplicate_domain_rejected(self):
        e0 = basis_vector(2, 0)
        with pytest.raises(ValueError):
            TabulatedOracle(2, 2, [(e0, e0), (2j * e0, e0)])


class TestPreservationCheck:
    @pytest.mark.parametrize("dim", range(2, 9))
    def test_unitary_oracles_pass(self, dim):
        for seed in (0, 1, 2):
            oracle = MatrixOracle(random_unitary(dim, seed))
            report = check_probability_preservation(oracle, dim, trials=10, seed=seed)
            assert report.passed
            assert report.max_abs_deviation < 1e-10

    def test_constant_oracle_fails_with_orthogonal_worst_pair(self):
        target = basis_vector(3, 0)
        oracle = CallableOracle(lambda v: target, 3, 3)
        report = check_probability_preservation(oracle, 3, trials=5, seed=0)
        assert not report.passed
        assert report.max_abs_deviation == pytest.approx(1.0, abs=1e-12)
        worst_v, worst_w = report.worst_pair
        assert transition_probability(worst_v.rep, worst_w.rep) < 1e-12

    def test_perturbed_unitary_fails_at_perturbation_scale(self):
        rng = np.random.default_rng(8)
        u = random_unitary(4, 8)
        e = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        e /= np.linalg.norm(e, axis=0, keepdims=True)
        oracle = MatrixOracle(u + 0.01 * e)
        report = check_probability_preservation(oracle, 4, trials=20, seed=9)
        assert not report.passed
        assert report.max_abs_deviation > 1e-4

    def test_orthogonality_preserved_by_passing_oracles(self):
        u = random_unitary(4, 13)
        oracle = MatrixOracle(u)
        rng = np.random.default_rng(13)
        for _ in range(20):
            v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            w = w - v * (np.vdot(v, w) / np.vdot(v, v))  # force P(v, w) = 0
            assert transition_probability(v, w) < 1e-12
            img_v = oracle.apply(canonicalize(v)).rep
            img_w = oracle.apply(canonicalize(w)).rep
            assert transition_probability(img_v, img_w) < 1e-9

    def test_trials_validated(self):
        oracle = MatrixOracle(np.eye(2))
        with pytest.raises(ValueError):
            check_probability_preservation(oracle, 2, trials=0, seed=0)
