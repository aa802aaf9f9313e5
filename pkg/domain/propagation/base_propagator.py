"""
MPQ 전파기 베이스 클래스

각 전파 모델(Exact / Paraxial)의 기반이 되는 추상 클래스
각스펙트럼 방법: FFT → 모델 위상 곱 → 역 FFT
"""
from abc import ABC, abstractmethod
from typing import Optional, Union

import numpy as np

from config.settings import Settings, get_constants, get_settings
from core.enums import SQRT2, AliasingPolicy, Polarization, PropagationModel
from core.exceptions import (
    AliasingError,
    InvalidParameterError,
    NonFiniteFieldError,
    ParaxialConstraintError,
)
from core.models import PhysicalConstants
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.grid import TransverseGrid
from utils.logger import get_logger, log_domain_violation
from utils.spectral import fft2c, ifft2c

logger = get_logger(__name__)

Envelope = Union[ScalarEnvelope, VectorEnvelope]


def power_fraction(spectrum: np.ndarray, mask: np.ndarray) -> float:
    power = np.abs(spectrum) ** 2
    if power.ndim == 3:
        power = power.sum(axis=0)
    total = power.sum()
    if total == 0:
        return 0.0
    return float(power[mask].sum() / total)


def nyquist_band_mask(grid: TransverseGrid, bins: int) -> np.ndarray:
    """Nyquist 에서 bins 개 이내의 스펙트럼 샘플 (형태 (ny, nx))"""
    qx, qy = grid.q_mesh()
    qnx, qny = grid.q_nyquist
    eps = 1e-9
    near_x = np.abs(qx) >= qnx - bins * grid.dqx - eps * grid.dqx
    near_y = np.abs(qy) >= qny - bins * grid.dqy - eps * grid.dqy
    return near_x | near_y


class BasePropagator(ABC):
    """
    전파 모델 베이스 클래스

    모든 전파기는 이 클래스를 상속받아 모델 위상과 편광 승격 인자를 구현
    입력 포락선은 변경하지 않고 항상 새 포락선을 반환
    """

    model: PropagationModel

    def __init__(self, constants: Optional[PhysicalConstants] = None,
                 settings: Optional[Settings] = None):
        self.constants = constants if constants is not None else get_constants()
        self.settings = settings if settings is not None else get_settings()

    # ===== 추상 메서드 (필수 구현) =====
    @abstractmethod
    def phase_rate(self, grid: TransverseGrid, omega: float) -> np.ndarray:
        """
        단위 거리당 스펙트럼 위상 κ(q) (rad/m)

        전파 인자는 exp(−i·κ(q)·dz)

        Args:
            grid: 횡 격자
            omega: 각주파수

        Returns:
            np.ndarray: (ny, nx)
        """
        pass

    @abstractmethod
    def polarization_factor(self, grid: TransverseGrid, omega: float,
                            polarization: Polarization) -> np.ndarray:
        """
        스칼라 → 벡터 승격 시 스펙트럼에 곱하는 3-벡터 인자

        Returns:
            np.ndarray: (3, ny, nx)
        """
        pass

    # ===== 가드 =====
    def check_finite(self, envelope: Envelope) -> None:
        """NaN/Inf 샘플 거부"""
        if not envelope.is_finite():
            raise NonFiniteFieldError("포락선에 NaN/Inf 샘플이 있습니다", {"grid": envelope.grid.describe()})

    def check_constraint(self, spectrum: np.ndarray, grid: TransverseGrid, omega: float) -> None:
        """
        ϑ ≤ 1 제약: q > √2·ω/c 영역의 파워 비율이 허용치를 넘으면 에러

        Raises:
            ParaxialConstraintError: 위반 (details 에 파워 비율)
        """
        q_limit = SQRT2 * omega / self.constants.c
        beyond = np.sqrt(grid.q_squared()) > q_limit
        if not beyond.any():
            return
        fraction = power_fraction(spectrum, beyond)
        if fraction > self.settings.constraint_power_tolerance:
            details = {"power_fraction": fraction, "q_limit": q_limit, "model": self.model.value}
            log_domain_violation("propagate", details)
            raise ParaxialConstraintError("spectral content beyond paraxial constraint ϑ ≤ 1", details)

    def check_aliasing(self, spectrum: np.ndarray, grid: TransverseGrid) -> float:
        """
        Nyquist 가드 대역 파워 검사

        Returns:
            float: 가드 대역 파워 비율

        Raises:
            AliasingError: 정책이 raise 이고 임계값 초과
        """
        mask = nyquist_band_mask(grid, self.settings.aliasing_guard_bins)
        fraction = power_fraction(spectrum, mask)
        if fraction > self.settings.aliasing_power_threshold:
            details = {
                "power_fraction": fraction,
                "threshold": self.settings.aliasing_power_threshold,
                "bins": self.settings.aliasing_guard_bins,
            }
            if AliasingPolicy(self.settings.aliasing_policy) == AliasingPolicy.RAISE:
                log_domain_violation("propagate", details)
                raise AliasingError("Nyquist 근처 스펙트럼 파워가 임계값을 넘었습니다", details)
            logger.warning(f"앨리어싱 경고 | {details}")
        return fraction

    # ===== 공통 메서드 =====
    def propagate(self, envelope: Envelope, dz: float,
                  polarization: Optional[Polarization] = None) -> Envelope:
        """
        포락선을 dz 만큼 전파

        Args:
            envelope: 스칼라 또는 벡터 포락선
            dz: 전파 거리 (음수면 역전파)
            polarization: 지정하면 스칼라 입력을 벡터로 승격 (명시적 opt-in)

        Returns:
            같은 타입 (승격 시 VectorEnvelope), z 태그 += dz, model 태그 갱신

        Raises:
            NonFiniteFieldError: 입력 샘플 비유한
            ParaxialConstraintError: ϑ > 1 스펙트럼 파워
            AliasingError: Nyquist 근처 파워 (정책 raise)
        """
        if not np.isfinite(dz):
            raise InvalidParameterError("dz는 유한해야 합니다", {"dz": dz})
        if polarization is not None and isinstance(envelope, VectorEnvelope):
            raise InvalidParameterError("벡터 포락선은 다시 승격할 수 없습니다")
        self.check_finite(envelope)

        if dz == 0 and polarization is None:
            return envelope.with_samples(envelope.samples, model=self.model)

        grid = envelope.grid
        spectrum = fft2c(envelope.samples, workers=self.settings.threads)
        self.check_constraint(spectrum, grid, envelope.omega)
        self.check_aliasing(spectrum, grid)

        if dz != 0:
            spectrum = spectrum * np.exp(-1j * self.phase_rate(grid, envelope.omega) * dz)

        tags = {"z": envelope.z + dz, "model": self.model}
        if polarization is not None:
            vector = spectrum[np.newaxis] * self.polarization_factor(
                grid, envelope.omega, Polarization(polarization)
            )
            samples = ifft2c(vector, workers=self.settings.threads)
            return VectorEnvelope(grid=grid, samples=samples, omega=envelope.omega, t=envelope.t, **tags)

        samples = ifft2c(spectrum, workers=self.settings.threads)
        logger.debug(f"전파 완료 | model={self.model.value} dz={dz:.6g} z={tags['z']:.6g}")
        return envelope.with_samples(samples, **tags)

    def __repr__(self):
        return f"<{self.__class__.__name__}(model={self.model.value})>"
