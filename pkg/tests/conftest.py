"""
공통 pytest 픽스처

모든 테스트는 무차원 단위 (c = ħ = ε₀ = 1, ω = 1) 와
전역 설정의 복사본을 사용 (전역 settings 는 변경하지 않음)
"""
import numpy as np
import pytest

from application.services.selftest_service import random_envelope
from config.settings import get_settings
from core.models import PhysicalConstants
from domain.entities.grid import TransverseGrid


@pytest.fixture
def unit_constants() -> PhysicalConstants:
    """c = ħ = ε₀ = 1"""
    return PhysicalConstants.dimensionless()


@pytest.fixture
def run_settings():
    """무차원 / raise 정책 설정 복사본"""
    return get_settings().model_copy(update={"dimensionless_units": True, "aliasing_policy": "raise"})


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def small_grid() -> TransverseGrid:
    """64 × 64, dx = 1 (Nyquist π)"""
    return TransverseGrid.square(64, 1.0)


@pytest.fixture
def band_limited(rng, small_grid):
    """|q| < 1 대역 제한 단위 노름 포락선 (ω = 1)"""
    return random_envelope(rng, small_grid, 1.0, 1.0)
