import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wignerlift.errors import DimensionMismatch, EmptyInput, ZeroVector
from wignerlift.hilbert import (
    ToleranceConfig,
    basis_vector,
    inner_product,
    random_state,
    random_unitary,
    span,
    subspace_contains,
    transition_probability,
)

from conftest import complex_vectors, nonzero_scalars

E1 = basis_vector(2, 0)
E2 = basis_vector(2, 1)


class TestInnerProduct:
    def test_unit_basis(self):
        assert inner_product(E1, E1) == 1 + 0j

    def test_orthogonal_basis(self):
        assert inner_product(E1, E2) == 0j

    def test_direct_expansion(self):
        # <(1,i)|(i,1)> = conj(1)*i + conj(i)*1 = i - i = 0
        assert inner_product([1, 1j], [1j, 1]) == 0j

    def test_conjugate_linear_first_argument(self):
        v = np.array([1 + 2j, 0.5 - 1j])
        w = np.array([-0.3j, 2.0 + 0j])
        alpha = 0.7 - 1.3j
        assert inner_product(alpha * v, w) == pytest.approx(
            np.conj(alpha) * inner_product(v, w))
        assert inner_product(v, alpha * w) == pytest.approx(
            alpha * inner_product(v, w))

    def test_self_product_real_nonnegative(self):
        v = np.array([1 + 2j, -3j, 0.5])
        ip = inner_product(v, v)
        assert ip.imag == 0.0
        assert ip.real >= 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            inner_product([1, 0], [1, 0, 0])


class TestTransitionProbability:
    def test_same_state(self):
        assert transition_probability(E1, E1) == 1.0

    def test_equal_superposition(self):
        # the half-probability of a basis state against e1 + e2
        assert transition_probability(E1, E1 + E2) == pytest.approx(0.5, abs=1e-12)

    def test_scaling_invariance_example(self):
        rng = np.random.default_rng(7)
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert transition_probability(2 * v, 1j * w) == pytest.approx(
            transition_probability(v, w), abs=1e-12)

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVector):
            transition_probability(np.zeros(2), E1)
        with pytest.raises(ZeroVector):
            transition_probability(E1, np.zeros(2))

    @settings(max_examples=60, deadline=None)
    @given(complex_vectors(paired=True), nonzero_scalars, nonzero_scalars)
    def test_scaling_invariance(self, vw, lam, mu):
        v, w = vw
        assert transition_probability(lam * v, mu * w) == pytest.approx(
            transition_probability(v, w), abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(complex_vectors(paired=True))
    def test_symmetry_is_exact(self, vw):
        v, w = vw
        assert transition_probability(v, w) == transition_probability(w, v)

    @settings(max_examples=60, deadline=None)
    @given(complex_vectors(paired=True))
    def test_cauchy_schwarz(self, vw):
        v, w = vw
        assert transition_probability(v, w) <= 1.0 + 1e-12


class TestSpan:
    def test_full_basis(self):
        assert span([E1, E2]).dim == 2

    def test_colinear_inputs(self):
        assert span([np.array([1.0, 1.0]), np.array([2.0, 2.0])]).dim == 1

    def test_single_vector_frame(self):
        s = span([E1])
        assert s.dim == 1
        np.testing.assert_allclose(s.frame[:, 0], E1)

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            span([])

    def test_frame_orthonormal(self):
        rng = np.random.default_rng(3)
        vecs = [rng.standard_normal(5) + 1j * rng.standard_normal(5) for _ in range(3)]
        s = span(vecs)
        gram = s.frame.conj().T @ s.frame
        np.testing.assert_allclose(gram, np.eye(s.dim), atol=1e-12)

    def test_idempotent(self):
        rng = np.random.default_rng(11)
        vecs = [rng.standard_normal(6) + 1j * rng.standard_normal(6) for _ in range(4)]
        s1 = span(vecs)
        s2 = span([s1.frame[:, i] for i in range(s1.dim)])
        assert s2.dim == s1.dim
        np.testing.assert_allclose(s2.projector(), s1.projector(), atol=1e-9)


class TestSubspaceContains:
    def test_member(self):
        assert subspace_contains(span([E1]), E1)

    def test_non_member(self):
        assert not subspace_contains(span([E1]), E2)

    def test_linear_combination(self):
        assert subspace_contains(span([E1, E2]), E1 + 1j * E2)

    def test_errors(self):
        with pytest.raises(DimensionMismatch):
            subspace_contains(span([E1]), basis_vector(3, 0))
        with pytest.raises(ZeroVector):
            subspace_contains(span([E1]), np.zeros(2))


class TestRandomState:
    def test_unit_norm(self):
        for dim in (1, 2, 5, 17):
            assert np.linalg.norm(random_state(dim, 0)) == pytest.approx(1.0, abs=1e-12)

    def test_deterministic(self):
        np.testing.assert_array_equal(random_state(4, 123), random_state(4, 123))

    def test_seeds_differ(self):
        assert not np.allclose(random_state(4, 5), random_state(4, 6))


class TestRandomUnitary:
    def test_unitarity(self):
        u = random_unitary(5, 9)
        assert np.max(np.abs(u.conj().T @ u - np.eye(5))) < 1e-12

    def test_determinant_modulus(self):
        assert abs(np.linalg.det(random_unitary(4, 2))) == pytest.approx(1.0, abs=1e-10)

    def test_deterministic(self):
        np.testing.assert_array_equal(random_unitary(3, 7), random_unitary(3, 7))

    def test_preserves_transition_probability(self):
        for seed in range(5):
            u = random_unitary(4, seed)
            v = random_state(4, 100 + seed)
            w = random_state(4, 200 + seed)
            assert transition_probability(u @ v, u @ w) == pytest.approx(
                transition_probability(v, w), abs=1e-10)


class TestToleranceConfig:
    def test_defaults(self):
        tol = ToleranceConfig()
        assert tol.eq_tol == 1e-9
        assert tol.rank_tol == 1e-8

    @pytest.mark.parametrize("kwargs", [
        {"eq_tol": 0.0}, {"eq_tol": -1e-9}, {"eq_tol": 1.5}, {"rank_tol": 0.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            ToleranceConfig(**kwargs)
