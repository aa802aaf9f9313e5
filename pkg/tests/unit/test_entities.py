"""
격자 / 포락선 엔티티와 빔 측정 테스트
"""
import numpy as np
import pytest

from core.exceptions import GridMismatchError, InvalidParameterError
from core.models import GridConfig, QuadratureSpec
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.grid import TransverseGrid
from utils.beam_metrics import centroid, peak_position, relative_l2, second_moment_width, winding_number


class TestTransverseGrid:
    """원점 중심 격자"""

    def test_origin_at_half_index(self):
        grid = TransverseGrid(nx=8, ny=4, dx=0.5, dy=2.0)
        assert grid.shape == (4, 8)
        assert grid.x[4] == 0.0
        assert grid.y[2] == 0.0
        assert grid.qx[4] == 0.0
        assert grid.dqx == pytest.approx(2 * np.pi / 4.0)
        assert grid.q_nyquist == (pytest.approx(2 * np.pi), pytest.approx(np.pi / 2))

    def test_odd_size_rejected(self):
        with pytest.raises(InvalidParameterError):
            TransverseGrid(nx=7, ny=8, dx=1.0, dy=1.0)

    def test_non_positive_spacing(self):
        with pytest.raises(InvalidParameterError):
            TransverseGrid.square(8, 0.0)

    def test_conjugate_to_quadrature(self):
        quad = QuadratureSpec(q_max=0.5, n_q=32)
        grid = TransverseGrid.conjugate_to(quad)
        assert grid.nx == 32
        assert grid.dx == pytest.approx(2 * np.pi)
        assert grid.dqx == pytest.approx(quad.dq)

    def test_from_config_defaults_dy(self):
        grid = TransverseGrid.from_config(GridConfig(nx=16, ny=16, dx=0.25))
        assert grid.dy == 0.25

    def test_config_defaults_to_square_grid(self):
        config = GridConfig(nx=64, dx=1.0)
        assert (config.nx, config.ny, config.dy) == (64, 64, 1.0)
        assert TransverseGrid.from_config(config).shape == (64, 64)

        assert GridConfig.model_validate({"nx": 64, "ny": None, "dx": 1.0}).ny == 64
        assert GridConfig(dx=1.0).ny == 256
        assert GridConfig(nx=64, ny=32, dx=1.0).ny == 32

    def test_require_same(self):
        with pytest.raises(GridMismatchError):
            TransverseGrid.square(8, 1.0).require_same(TransverseGrid.square(8, 2.0))


class TestEnvelope:
    """불변 포락선"""

    def test_samples_are_read_only_copies(self, small_grid):
        source = np.ones(small_grid.shape, dtype=complex)
        envelope = ScalarEnvelope(grid=small_grid, samples=source, omega=1.0)
        source[0, 0] = 5.0
        assert envelope.samples[0, 0] == 1.0
        with pytest.raises(ValueError):
            envelope.samples[0, 0] = 2.0

    def test_shape_mismatch(self, small_grid):
        with pytest.raises(InvalidParameterError):
            ScalarEnvelope(grid=small_grid, samples=np.ones((4, 4)), omega=1.0)

    def test_non_positive_omega(self, small_grid):
        with pytest.raises(InvalidParameterError):
            ScalarEnvelope(grid=small_grid, samples=np.ones(small_grid.shape), omega=0.0)

    def test_vector_from_components(self, band_limited):
        vector = VectorEnvelope.from_components([band_limited, band_limited, band_limited])
        assert vector.components == 3
        assert vector.norm() == pytest.approx(np.sqrt(3.0) * band_limited.norm())
        assert np.array_equal(vector.component(1).samples, band_limited.samples)

    def test_vector_component_tags_must_match(self, band_limited):
        moved = band_limited.with_samples(band_limited.samples, z=1.0)
        with pytest.raises(InvalidParameterError):
            VectorEnvelope.from_components([band_limited, moved, band_limited])


class TestBeamMetrics:
    """폭, 중심, 피크, 회전수"""

    @pytest.fixture
    def shifted_gaussian(self):
        grid = TransverseGrid.square(128, 0.5)
        x, y = grid.mesh()
        samples = np.exp(-((x - 3.0) ** 2 + (y + 2.0) ** 2) / 4.0 ** 2)
        return ScalarEnvelope(grid=grid, samples=samples, omega=1.0)

    def test_centroid_and_peak(self, shifted_gaussian):
        cx, cy = centroid(shifted_gaussian)
        assert cx == pytest.approx(3.0, abs=1e-10)
        assert cy == pytest.approx(-2.0, abs=1e-10)
        assert peak_position(shifted_gaussian) == (3.0, -2.0)

    def test_second_moment_width_is_waist(self, shifted_gaussian):
        assert second_moment_width(shifted_gaussian, "x") == pytest.approx(4.0, rel=1e-10)
        assert second_moment_width(shifted_gaussian, "y") == pytest.approx(4.0, rel=1e-10)
        with pytest.raises(InvalidParameterError):
            second_moment_width(shifted_gaussian, "z")

    def test_relative_l2(self, band_limited):
        doubled = band_limited.with_samples(2 * band_limited.samples)
        assert relative_l2(doubled, band_limited) == pytest.approx(1.0)
        other = ScalarEnvelope(grid=TransverseGrid.square(32, 1.0), samples=np.ones((32, 32)), omega=1.0)
        with pytest.raises(GridMismatchError):
            relative_l2(other, band_limited)

    def test_winding_outside_grid(self, shifted_gaussian):
        with pytest.raises(InvalidParameterError):
            winding_number(shifted_gaussian, 100.0)

    def test_winding_of_vortex(self, small_grid):
        x, y = small_grid.mesh()
        vortex = ScalarEnvelope(grid=small_grid, samples=(x - 1j * y) ** 2 * np.exp(-(x ** 2 + y ** 2) / 64.0),
                                omega=1.0)
        assert winding_number(vortex, 6.0) == -2
