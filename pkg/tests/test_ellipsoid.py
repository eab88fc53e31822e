import numpy as np
import pytest

from qsteer.ellipsoid import (
    DegenerateMarginalError,
    PovmElement,
    ZeroProbabilityError,
    canonical_form,
    normalized_volume,
    steered_point,
    steering_ellipsoid,
)
from qsteer.monogamy import concurrence, singlet_state, w_state, werner_state
from qsteer.states import (
    bloch_vector,
    partial_trace,
    pauli_decomposition,
    random_mixed_state,
    random_pure_state,
    spin_correlation_matrix,
)

from conftest import random_single_qubit_density


class TestCanonicalForm:
    def test_balanced_marginal_is_fixed_point(self):
        # Werner already has a = 0, so the filter is the identity.
        original = werner_state().matrix
        out = canonical_form(original).data
        np.testing.assert_allclose(out, original, atol=1e-12)

    def test_w_state_filter(self):
        out = canonical_form(w_state(), steering_qubit=0)
        a_tilde = bloch_vector(partial_trace(out, [0]))
        assert np.linalg.norm(a_tilde) < 1e-9
        v = normalized_volume(partial_trace(out, [0, 1]))
        assert v == pytest.approx(0.25, abs=1e-9)

    def test_degenerate_marginal_raises(self, rng):
        rho = np.kron(np.diag([1.0, 0.0]).astype(complex), random_single_qubit_density(rng))
        with pytest.raises(DegenerateMarginalError):
            canonical_form(rho, steering_qubit=0)

    def test_preserves_volume(self, rng):
        for _ in range(25):
            rho = random_mixed_state(2, seed=rng).matrix
            canon = canonical_form(rho).data
            assert normalized_volume(canon) == pytest.approx(normalized_volume(rho), abs=1e-9)

    def test_volume_equals_canonical_t_determinant(self, rng):
        for _ in range(25):
            rho = random_mixed_state(2, seed=rng).matrix
            t_canon = spin_correlation_matrix(canonical_form(rho))
            assert normalized_volume(rho) == pytest.approx(abs(np.linalg.det(t_canon)), abs=1e-9)


class TestSteeringEllipsoid:
    def test_singlet_fills_bloch_ball(self):
        ell = steering_ellipsoid(singlet_state())
        np.testing.assert_allclose(ell.center, [0, 0, 0], atol=1e-12)
        np.testing.assert_allclose(ell.semiaxes, [1, 1, 1], atol=1e-12)
        assert ell.normalized_volume == pytest.approx(1.0, abs=1e-12)

    def test_random_pure_entangled_fills_bloch_ball(self, rng):
        psi = random_pure_state(2, seed=rng)
        assert concurrence(psi.matrix) > 0.01
        assert steering_ellipsoid(psi).normalized_volume == pytest.approx(1.0, abs=1e-9)

    def test_werner_sphere(self):
        ell = steering_ellipsoid(werner_state())
        np.testing.assert_allclose(ell.semiaxes, [2 / 3] * 3, atol=1e-9)
        assert ell.normalized_volume == pytest.approx(8 / 27, abs=1e-12)
        assert not ell.degenerate

    def test_product_state_collapses_to_point(self, rng):
        rho_b = random_single_qubit_density(rng)
        rho = np.kron(np.diag([1.0, 0.0]).astype(complex), rho_b)
        ell = steering_ellipsoid(rho)
        assert ell.degenerate
        assert ell.normalized_volume == 0.0
        np.testing.assert_allclose(ell.center, bloch_vector(rho_b), atol=1e-12)
        np.testing.assert_allclose(ell.semiaxes, [0, 0, 0])

    def test_orientation_is_symmetric_psd(self, rng):
        for _ in range(50):
            ell = steering_ellipsoid(random_mixed_state(2, seed=rng).matrix)
            np.testing.assert_allclose(ell.orientation, ell.orientation.T, atol=1e-10)
            assert np.linalg.eigvalsh(ell.orientation)[0] > -1e-10

    def test_volume_is_product_of_semiaxes(self, rng):
        for _ in range(50):
            ell = steering_ellipsoid(random_mixed_state(2, seed=rng).matrix)
            assert ell.normalized_volume == pytest.approx(float(np.prod(ell.semiaxes)), abs=1e-9)

    def test_semiaxes_descending(self, rng):
        ell = steering_ellipsoid(random_mixed_state(2, seed=rng).matrix)
        assert ell.semiaxes[0] >= ell.semiaxes[1] >= ell.semiaxes[2]

    def test_to_dict_schema(self):
        payload = steering_ellipsoid(werner_state()).to_dict()
        assert set(payload) == {"center", "Q", "semiaxes", "volume", "degenerate"}
        assert len(payload["center"]) == 3
        assert len(payload["Q"]) == 3 and all(len(row) == 3 for row in payload["Q"])


class TestNormalizedVolume:
    def test_bell_state(self):
        assert normalized_volume(singlet_state()) == pytest.approx(1.0, abs=1e-12)

    def test_werner(self):
        assert normalized_volume(werner_state()) == pytest.approx(8 / 27, abs=1e-12)

    def test_product_state(self, rng):
        rho = np.kron(random_single_qubit_density(rng), random_single_qubit_density(rng))
        assert normalized_volume(rho) == pytest.approx(0.0, abs=1e-12)

    def test_reverse_direction_matches_swapped_state(self, rng):
        rho = random_mixed_state(2, seed=rng).matrix
        swap = np.zeros((4, 4))
        for i, j in enumerate((0, 2, 1, 3)):
            swap[i, j] = 1.0
        swapped = swap @ rho @ swap.T
        assert normalized_volume(rho, steering_qubit=1) == pytest.approx(
            normalized_volume(swapped, steering_qubit=0), abs=1e-12
        )

    def test_in_unit_interval(self, rng):
        for _ in range(100):
            v = normalized_volume(random_mixed_state(2, seed=rng).matrix)
            assert -1e-12 <= v <= 1 + 1e-12


class TestSteeredPoint:
    def test_uninformative_measurement_gives_marginal(self, rng):
        decomp = pauli_decomposition(random_mixed_state(2, seed=rng).matrix)
        out = steered_point(decomp, PovmElement(0.5, np.zeros(3)))
        np.testing.assert_allclose(out, decomp.b, atol=1e-12)

    def test_singlet_antipodal(self):
        decomp = pauli_decomposition(singlet_state())
        out = steered_point(decomp, PovmElement(0.5, np.array([0.0, 0.0, 1.0])))
        np.testing.assert_allclose(out, [0, 0, -1], atol=1e-12)

    def test_product_state_is_unsteerable(self, rng):
        rho = np.kron(random_single_qubit_density(rng), random_single_qubit_density(rng))
        decomp = pauli_decomposition(rho)
        for _ in range(10):
            e = rng.standard_normal(3)
            e /= np.linalg.norm(e)
            np.testing.assert_allclose(steered_point(decomp, PovmElement(1.0, e)), decomp.b, atol=1e-12)

    def test_zero_probability_outcome_raises(self, rng):
        rho = np.kron(np.diag([1.0, 0.0]).astype(complex), random_single_qubit_density(rng))
        decomp = pauli_decomposition(rho)
        with pytest.raises(ZeroProbabilityError):
            steered_point(decomp, PovmElement(0.5, np.array([0.0, 0.0, -1.0])))

    def test_points_stay_in_bloch_ball(self, rng):
        for _ in range(50):
            decomp = pauli_decomposition(random_mixed_state(2, seed=rng).matrix)
            for _ in range(20):
                e = rng.standard_normal(3)
                e /= np.linalg.norm(e)
                assert np.linalg.norm(steered_point(decomp, PovmElement(1.0, e))) <= 1 + 1e-8

    def test_points_satisfy_ellipsoid_form(self, rng):
        checked = 0
        while checked < 25:
            rho = random_mixed_state(2, seed=rng).matrix
            ell = steering_ellipsoid(rho)
            if ell.degenerate or np.linalg.eigvalsh(ell.orientation)[0] <= 1e-10:
                continue
            decomp = pauli_decomposition(rho)
            for _ in range(20):
                e = rng.standard_normal(3)
                e /= np.linalg.norm(e)
                delta = steered_point(decomp, PovmElement(1.0, e)) - ell.center
                assert delta @ np.linalg.solve(ell.orientation, delta) <= 1 + 1e-6
            checked += 1


class TestPovmElement:
    def test_rejects_negative_weight(self):
        with pytest.raises(ValueError):
            PovmElement(-0.1, np.zeros(3))

    def test_rejects_long_direction(self):
        with pytest.raises(ValueError):
            PovmElement(0.5, np.array([1.0, 1.0, 0.0]))
