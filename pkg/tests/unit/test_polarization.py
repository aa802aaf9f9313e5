"""
편광 기저 테스트
"""
import numpy as np
import pytest

from core.enums import Polarization
from core.exceptions import ParaxialConstraintError
from domain.entities.envelope import VectorEnvelope
from domain.entities.grid import TransverseGrid
from domain.physics.dispersion import frequency_arrays
from domain.physics.polarization import (
    amplitude_weight,
    basis_at,
    circular_components,
    polarization_field,
    slowly_varying_phase,
    slowly_varying_polarization,
    wave_vector,
    zeroth_order_basis,
)


K0 = 4.0


@pytest.fixture
def random_points(rng):
    """분산 곡면 위의 (q, ϑ) 쌍, ϑ = |q|/(√2·k₀)"""
    q_vec = rng.uniform(-3.0, 3.0, size=(50, 2))
    vartheta = np.hypot(q_vec[:, 0], q_vec[:, 1]) / (np.sqrt(2.0) * K0)
    return q_vec, vartheta


class TestExactBasis:
    """ε⁽¹⁾, ε⁽²⁾, k̂"""

    def test_transverse_and_normalized(self, random_points):
        for q_vec, vartheta in zip(*random_points):
            basis = basis_at(q_vec, vartheta)
            k = wave_vector(q_vec, vartheta, K0)
            for eps in (basis.eps1, basis.eps2):
                assert abs(np.dot(eps, k)) <= 1e-12 * np.linalg.norm(k)
                assert np.linalg.norm(eps) == pytest.approx(1.0, abs=1e-12)
            assert abs(np.dot(basis.eps1, basis.eps2)) < 1e-12

    def test_right_handed(self, random_points):
        """ε⁽¹⁾ × ε⁽²⁾ = k̂"""
        for q_vec, vartheta in zip(*random_points):
            basis = basis_at(q_vec, vartheta)
            k = wave_vector(q_vec, vartheta, K0)
            k_hat = k / np.linalg.norm(k)
            assert np.allclose(np.cross(basis.eps1, basis.eps2), k_hat, atol=1e-12)

    def test_second_has_no_z_component(self):
        basis = basis_at((0.3, -0.4), 0.7)
        assert basis.eps2[2] == 0.0
        assert np.allclose(basis.eps2, [0.8, 0.6, 0.0])

    def test_on_axis_convention(self):
        """q = 0 에서 q̂ = x̂"""
        basis = zeroth_order_basis((0.0, 0.0))
        assert np.allclose(basis.eps1, [1.0, 0.0, 0.0])
        assert np.allclose(basis.eps2, [0.0, 1.0, 0.0])

    def test_limit_reduces_to_zeroth_order(self):
        exact = basis_at((1.0, 2.0), 1e-9)
        zeroth = zeroth_order_basis((1.0, 2.0))
        assert np.allclose(exact.eps1, zeroth.eps1, atol=1e-8)

    def test_beyond_constraint(self):
        with pytest.raises(ParaxialConstraintError):
            basis_at((1.0, 0.0), 1.2)

    def test_vectorized_matches_pointwise(self):
        qx = np.array([[0.1, -0.5], [0.0, 2.0]])
        qy = np.array([[0.3, 0.2], [0.0, -1.0]])
        param = np.array([[0.1, 0.4], [0.0, 0.9]])
        field = polarization_field(qx, qy, param, Polarization.FIRST)
        for i in range(2):
            for j in range(2):
                point = basis_at((qx[i, j], qy[i, j]), param[i, j])
                assert np.allclose(field[:, i, j], point.eps1, atol=1e-15)


class TestSlowlyVarying:
    """𝓔⁽λ⁾ 와 가중치 w"""

    def test_weight_at_origin_is_one(self, unit_constants):
        assert amplitude_weight(0.0, 1.0, unit_constants) == 1.0

    def test_weight_decreasing(self, unit_constants):
        weight = amplitude_weight(np.linspace(0.0, 5.0, 100), 1.0, unit_constants)
        assert np.all(np.diff(weight) < 0)
        assert np.all(weight > 0)

    def test_magnitude_is_weight(self, unit_constants, rng):
        for _ in range(20):
            q_vec = rng.uniform(-2.0, 2.0, size=2)
            z, t = rng.uniform(-10.0, 10.0, size=2)
            value = slowly_varying_polarization(q_vec, 1.0, z, t, Polarization.FIRST, unit_constants)
            expected = amplitude_weight(np.hypot(*q_vec), 1.0, unit_constants)
            assert value.magnitude == pytest.approx(expected, rel=1e-12)

    def test_phase_cancels_fresnel_at_t_zero(self, unit_constants):
        """t = 0 에서 z 위상 × exp(−iq²cz/(2Ω₀)) = 1"""
        q = np.linspace(0.0, 2.0, 30)
        z = 37.0
        _, omega0 = frequency_arrays(q, 1.0, unit_constants)
        product = slowly_varying_phase(q, 1.0, z, 0.0, unit_constants) * np.exp(-1j * q ** 2 * z / (2 * omega0))
        assert np.allclose(product, 1.0, atol=1e-12)

    def test_polarization_direction(self, unit_constants):
        value = slowly_varying_polarization((0.0, 0.5), 1.0, 0.0, 0.0, Polarization.SECOND, unit_constants)
        assert value.vec[1] == 0
        assert value.vec[0].real < 0


class TestCircularComponents:
    """σ± 성분"""

    def test_x_polarized(self):
        grid = TransverseGrid.square(4, 1.0)
        samples = np.zeros((3, 4, 4), dtype=complex)
        samples[0] = 1.0
        field = VectorEnvelope(grid=grid, samples=samples, omega=1.0)
        plus, minus = circular_components(field)
        assert np.allclose(plus.samples, 1 / np.sqrt(2))
        assert np.allclose(minus.samples, 1 / np.sqrt(2))

    def test_circular_input(self):
        grid = TransverseGrid.square(4, 1.0)
        samples = np.zeros((3, 4, 4), dtype=complex)
        samples[0] = 1.0
        samples[1] = 1j
        field = VectorEnvelope(grid=grid, samples=samples, omega=1.0)
        plus, minus = circular_components(field)
        assert np.allclose(plus.samples, np.sqrt(2))
        assert np.allclose(minus.samples, 0.0)
