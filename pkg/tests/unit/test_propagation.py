"""
각스펙트럼 전파 테스트
"""
import numpy as np
import pytest

from core.enums import ModeFamily, Polarization, PropagationModel
from core.exceptions import (
    AliasingError,
    GridMismatchError,
    InsufficientPlanesError,
    InvalidParameterError,
    NonFiniteFieldError,
    ParaxialConstraintError,
)
from core.models import ModeSpec
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.grid import TransverseGrid
from domain.modes.operations import make_mode, rayleigh_range
from domain.propagation.operations import (
    apply_time_phase,
    assemble_monochromatic_field,
    assemble_via_plane_waves,
    continuous_spectrum,
    evolve_in_time,
    fft_forward,
    fft_inverse,
    from_continuous_spectrum,
    get_propagator,
    near_nyquist_power,
    paraxial_residual,
    propagate,
    propagated_planes,
    spectral_power_beyond,
)
from utils.beam_metrics import relative_l2
from utils.spectral import fft2c

MODELS = [PropagationModel.EXACT, PropagationModel.PARAXIAL]


def _plane_wave(grid: TransverseGrid, bins: int, omega: float) -> ScalarEnvelope:
    """qx = bins·Δq 평면파"""
    x, _ = grid.mesh()
    return ScalarEnvelope(grid=grid, samples=np.exp(1j * bins * grid.dqx * x), omega=omega)


class TestPropagator:
    """전파기 기본 성질"""

    @pytest.mark.parametrize("model", MODELS)
    def test_zero_distance_is_copy(self, model, band_limited, unit_constants, run_settings):
        result = propagate(band_limited, 0.0, model, constants=unit_constants, settings=run_settings)
        assert np.array_equal(result.samples, band_limited.samples)
        assert result.model == model
        assert result is not band_limited

    @pytest.mark.parametrize("model", MODELS)
    def test_unitary(self, model, band_limited, unit_constants, run_settings):
        propagator = get_propagator(model, unit_constants, run_settings)
        for dz in (-50.0, -3.0, 7.5, 40.0):
            result = propagator.propagate(band_limited, dz)
            assert result.norm() == pytest.approx(band_limited.norm(), rel=1e-12)
            assert result.z == dz

    @pytest.mark.parametrize("model", MODELS)
    def test_composition_and_reversibility(self, model, band_limited, unit_constants, run_settings):
        propagator = get_propagator(model, unit_constants, run_settings)
        two_steps = propagator.propagate(propagator.propagate(band_limited, 12.0), 25.0)
        one_step = propagator.propagate(band_limited, 37.0)
        assert relative_l2(two_steps, one_step) < 1e-12

        back = propagator.propagate(propagator.propagate(band_limited, 30.0), -30.0)
        assert relative_l2(back, band_limited) < 1e-12

    def test_input_not_modified(self, band_limited, unit_constants, run_settings):
        before = band_limited.samples.copy()
        propagate(band_limited, 10.0, PropagationModel.EXACT, constants=unit_constants, settings=run_settings)
        assert np.array_equal(band_limited.samples, before)
        assert not band_limited.samples.flags.writeable

    def test_models_differ_beyond_narrow_limit(self, band_limited, unit_constants, run_settings):
        exact = propagate(band_limited, 40.0, PropagationModel.EXACT, constants=unit_constants, settings=run_settings)
        paraxial = propagate(band_limited, 40.0, PropagationModel.PARAXIAL,
                             constants=unit_constants, settings=run_settings)
        assert relative_l2(exact, paraxial) > 1e-6

    @staticmethod
    def _model_gap(w0: float, unit_constants, run_settings) -> float:
        """허리 w0 Gaussian (k₀ = 1) 을 10·z_R 전파한 두 모델의 상대 L2 차이"""
        mode = make_mode(ModeSpec(family=ModeFamily.GAUSSIAN, w0=w0, omega=1.0), TransverseGrid.square(64, w0 / 8))
        z = 10.0 * rayleigh_range(w0, 1.0)
        exact = propagate(mode, z, PropagationModel.EXACT, constants=unit_constants, settings=run_settings)
        paraxial = propagate(mode, z, PropagationModel.PARAXIAL, constants=unit_constants, settings=run_settings)
        return relative_l2(exact, paraxial)

    def test_models_agree_for_narrow_divergence(self, unit_constants, run_settings):
        assert self._model_gap(1000.0, unit_constants, run_settings) <= 1e-4

    def test_model_gap_is_quadratic_in_divergence(self, unit_constants, run_settings):
        """발산각 2/(k₀w0) 를 절반으로 줄이면 차이가 약 1/4"""
        wide = self._model_gap(20.0, unit_constants, run_settings)
        narrow = self._model_gap(40.0, unit_constants, run_settings)
        assert wide > 1e-2
        assert 3.5 <= wide / narrow <= 4.5

    def test_unknown_model(self):
        with pytest.raises(InvalidParameterError) as exc:
            get_propagator("spherical")
        assert "exact" in exc.value.details["available"]


class TestGuards:
    """정의역 / 앨리어싱 / 유한성 가드"""

    def test_constraint_violation(self, small_grid, unit_constants, run_settings):
        # 20·Δq ≈ 1.96 > √2·ω/c
        envelope = _plane_wave(small_grid, 20, omega=1.0)
        with pytest.raises(ParaxialConstraintError) as exc:
            propagate(envelope, 1.0, PropagationModel.EXACT, constants=unit_constants, settings=run_settings)
        assert exc.value.details["power_fraction"] == pytest.approx(1.0)

    def test_aliasing_raise(self, small_grid, unit_constants, run_settings):
        envelope = _plane_wave(small_grid, 31, omega=10.0)
        with pytest.raises(AliasingError):
            propagate(envelope, 1.0, PropagationModel.PARAXIAL, constants=unit_constants, settings=run_settings)

    def test_aliasing_warn(self, small_grid, unit_constants, run_settings):
        warn = run_settings.model_copy(update={"aliasing_policy": "warn"})
        envelope = _plane_wave(small_grid, 31, omega=10.0)
        result = propagate(envelope, 1.0, PropagationModel.PARAXIAL, constants=unit_constants, settings=warn)
        assert result.norm() == pytest.approx(envelope.norm(), rel=1e-12)

    def test_non_finite(self, small_grid, unit_constants, run_settings):
        samples = np.zeros(small_grid.shape, dtype=complex)
        samples[3, 3] = np.nan
        envelope = ScalarEnvelope(grid=small_grid, samples=samples, omega=1.0)
        with pytest.raises(NonFiniteFieldError):
            propagate(envelope, 1.0, PropagationModel.EXACT, constants=unit_constants, settings=run_settings)

    def test_non_finite_distance(self, band_limited, unit_constants, run_settings):
        with pytest.raises(InvalidParameterError):
            propagate(band_limited, np.inf, PropagationModel.EXACT, constants=unit_constants, settings=run_settings)


class TestPolarizationPromotion:
    """스칼라 → 벡터 승격"""

    def test_paraxial_first_is_transverse(self, band_limited, unit_constants, run_settings):
        vector = propagate(band_limited, 5.0, PropagationModel.PARAXIAL, Polarization.FIRST,
                           unit_constants, run_settings)
        assert isinstance(vector, VectorEnvelope)
        assert np.max(np.abs(vector.samples[2])) < 1e-15

    def test_exact_second_is_transverse(self, band_limited, unit_constants, run_settings):
        vector = propagate(band_limited, 5.0, PropagationModel.EXACT, Polarization.SECOND,
                           unit_constants, run_settings)
        assert np.max(np.abs(vector.samples[2])) < 1e-15

    def test_exact_first_has_longitudinal_part(self, band_limited, unit_constants, run_settings):
        vector = propagate(band_limited, 0.0, PropagationModel.EXACT, Polarization.FIRST,
                           unit_constants, run_settings)
        assert vector.component(2).norm() > 1e-3

    @pytest.mark.parametrize("model", MODELS)
    def test_promotion_commutes_with_propagation(self, model, band_limited, unit_constants, run_settings):
        propagator = get_propagator(model, unit_constants, run_settings)
        promoted_first = propagator.propagate(propagator.propagate(band_limited, 0.0, Polarization.FIRST), 20.0)
        promoted_last = propagator.propagate(band_limited, 20.0, Polarization.FIRST)
        assert relative_l2(promoted_first, promoted_last) < 1e-10

    def test_vector_cannot_be_promoted_again(self, band_limited, unit_constants, run_settings):
        propagator = get_propagator(PropagationModel.EXACT, unit_constants, run_settings)
        vector = propagator.propagate(band_limited, 0.0, Polarization.FIRST)
        with pytest.raises(InvalidParameterError):
            propagator.propagate(vector, 1.0, Polarization.SECOND)


class TestParaxialResidual:
    """유한 차분 근축 잔차"""

    def _gaussian(self, dx: float) -> ScalarEnvelope:
        grid = TransverseGrid.square(int(256 / dx), dx)
        spec = ModeSpec(family=ModeFamily.GAUSSIAN, w0=20.0, omega=1.0)
        return make_mode(spec, grid)

    def test_second_order_convergence(self, unit_constants, run_settings):
        residuals = []
        for dx, h in ((2.0, 8.0), (1.0, 4.0)):
            planes = propagated_planes(self._gaussian(dx), 100.0, h, PropagationModel.PARAXIAL,
                                       unit_constants, run_settings)
            residuals.append(paraxial_residual(planes, 1.0))
        assert 3.5 <= residuals[0] / residuals[1] <= 4.5

    def test_plane_wave_on_discrete_dispersion_vanishes(self, small_grid):
        """e^{iqx−iβz}, sin(βh) = −λ_q·h/(2k₀), λ_q = 이산 Laplacian 고유값"""
        k0, h = 1.0, 2.0
        q = 3 * small_grid.dqx
        eigenvalue = -4.0 / small_grid.dx ** 2 * np.sin(q * small_grid.dx / 2.0) ** 2
        beta = np.arcsin(-eigenvalue * h / (2.0 * k0)) / h
        x, _ = small_grid.mesh()
        planes = [
            ScalarEnvelope(grid=small_grid, samples=np.exp(1j * (q * x - beta * z)), omega=1.0, z=z)
            for z in (-h, 0.0, h)
        ]
        assert paraxial_residual(planes, k0) < 1e-12

    def test_exact_broad_beam_does_not_satisfy_paraxial_equation(self, unit_constants, run_settings):
        """w0·k₀ = 6: Exact 전파의 잔차는 q²Θ² 만큼 남음"""
        mode = make_mode(ModeSpec(family=ModeFamily.GAUSSIAN, w0=6.0, omega=1.0), TransverseGrid.square(64, 0.75))
        residuals = {
            model: paraxial_residual(propagated_planes(mode, 20.0, 1.0, model, unit_constants, run_settings), 1.0)
            for model in MODELS
        }
        assert residuals[PropagationModel.EXACT] > 1e-3
        assert residuals[PropagationModel.EXACT] > 3.0 * residuals[PropagationModel.PARAXIAL]

    def test_requires_three_planes(self, band_limited):
        with pytest.raises(InsufficientPlanesError):
            paraxial_residual([band_limited, band_limited], 1.0)

    def test_uneven_spacing(self, band_limited):
        planes = [band_limited.with_samples(band_limited.samples, z=z) for z in (0.0, 1.0, 3.0)]
        with pytest.raises(InvalidParameterError):
            paraxial_residual(planes, 1.0)

    def test_grid_mismatch(self, band_limited):
        other = ScalarEnvelope(grid=TransverseGrid.square(64, 0.5), samples=band_limited.samples,
                               omega=1.0, z=2.0)
        planes = [band_limited, band_limited.with_samples(band_limited.samples, z=1.0), other]
        with pytest.raises(GridMismatchError):
            paraxial_residual(planes, 1.0)


class TestTimeAndAssembly:
    """시간 위상, 연속 스펙트럼, 필드 조립"""

    def test_time_phase_zero_is_identity(self, band_limited, unit_constants, run_settings):
        spectrum = fft2c(band_limited.samples)
        result = apply_time_phase(spectrum, band_limited.grid, 0.0, 1.0, unit_constants, run_settings)
        assert np.array_equal(result, spectrum)

    def test_time_phase_keeps_zero_bin(self, band_limited, unit_constants, run_settings):
        spectrum = fft2c(band_limited.samples)
        result = apply_time_phase(spectrum, band_limited.grid, 37.0, 1.0, unit_constants, run_settings)
        center = (band_limited.grid.ny // 2, band_limited.grid.nx // 2)
        assert result[center] == spectrum[center]
        assert np.allclose(np.abs(result), np.abs(spectrum), rtol=1e-12, atol=0.0)
        assert not np.allclose(result, spectrum)

    def test_evolve_preserves_norm(self, band_limited, unit_constants, run_settings):
        evolved = evolve_in_time(band_limited, 25.0, unit_constants, run_settings)
        assert evolved.t == 25.0
        assert evolved.norm() == pytest.approx(band_limited.norm(), rel=1e-12)

    def test_time_phase_beyond_constraint(self, small_grid, unit_constants, run_settings):
        envelope = _plane_wave(small_grid, 20, omega=1.0)
        with pytest.raises(ParaxialConstraintError):
            apply_time_phase(fft2c(envelope.samples), small_grid, 1.0, 1.0, unit_constants, run_settings)

    def test_continuous_spectrum_round_trip(self, band_limited):
        back = from_continuous_spectrum(continuous_spectrum(band_limited), band_limited)
        assert relative_l2(back, band_limited) < 1e-13

    def test_continuous_spectrum_is_unitary(self, band_limited):
        """Σ|b|²Δq² = Σ|f|²Δx²"""
        grid = band_limited.grid
        b = continuous_spectrum(band_limited)
        assert np.sum(np.abs(b) ** 2) * grid.dqx * grid.dqy == pytest.approx(band_limited.norm() ** 2, rel=1e-12)

    def test_assembly_routes_agree(self, band_limited, unit_constants):
        direct = assemble_monochromatic_field(band_limited, 1.0, 3.0, 2.0, unit_constants)
        via_plane_waves = assemble_via_plane_waves(band_limited, 1.0, 3.0, 2.0, unit_constants)
        assert relative_l2(via_plane_waves, direct) < 1e-10

    def test_assembly_is_periodic_in_time(self, band_limited, unit_constants):
        """t → t + 2π/ω"""
        omega = 1.7
        now = assemble_monochromatic_field(band_limited, omega, 3.0, 2.0, unit_constants)
        later = assemble_monochromatic_field(band_limited, omega, 3.0, 2.0 + 2.0 * np.pi / omega, unit_constants)
        half = assemble_monochromatic_field(band_limited, omega, 3.0, 2.0 + np.pi / omega, unit_constants)
        assert relative_l2(later, now) < 1e-12
        assert relative_l2(half, now.with_samples(-now.samples)) < 1e-12

    def test_assembly_rejects_non_positive_omega(self, band_limited, unit_constants):
        with pytest.raises(InvalidParameterError):
            assemble_monochromatic_field(band_limited, 0.0, 0.0, 0.0, unit_constants)

    def test_spectral_diagnostics(self, band_limited):
        assert spectral_power_beyond(band_limited, 1.0) < 1e-20
        assert near_nyquist_power(band_limited, bins=2) < 1e-20
        assert spectral_power_beyond(band_limited, 0.0) > 0.9

    def test_fft_round_trip(self, band_limited):
        spectrum = fft_forward(band_limited)
        assert np.sum(np.abs(spectrum) ** 2) == pytest.approx(np.sum(np.abs(band_limited.samples) ** 2), rel=1e-12)
        back = fft_inverse(spectrum, band_limited)
        assert relative_l2(back, band_limited) < 1e-13
        assert back.omega == band_limited.omega

    def test_fft_inverse_rejects_nan(self, band_limited):
        spectrum = fft_forward(band_limited)
        spectrum[0, 0] = np.inf
        with pytest.raises(NonFiniteFieldError):
            fft_inverse(spectrum, band_limited)

    def test_diagnostics_follow_run_settings(self, rng, small_grid, run_settings, monkeypatch):
        noise = ScalarEnvelope(grid=small_grid, samples=rng.standard_normal(small_grid.shape) + 0j, omega=1.0)
        wide_guard = run_settings.model_copy(update={"aliasing_guard_bins": 5, "threads": 3})
        assert near_nyquist_power(noise, settings=wide_guard) == pytest.approx(near_nyquist_power(noise, bins=5),
                                                                              rel=1e-12)
        assert near_nyquist_power(noise, settings=wide_guard) > near_nyquist_power(noise, bins=1)

        seen = []

        def recording_fft2c(samples, workers=None):
            seen.append(workers)
            return fft2c(samples)

        monkeypatch.setattr("domain.propagation.operations.fft2c", recording_fft2c)
        near_nyquist_power(noise, settings=wide_guard)
        spectral_power_beyond(noise, 1.0, settings=wide_guard)
        assert seen == [3, 3]
