"""
MPQ 전파 연산 모듈

FFT 변환, 모델별 전파, 시간 위상, 단색 필드 조립, 근축 잔차, 스펙트럼 진단
"""
from typing import Dict, Optional, Sequence, Type, Union

import numpy as np

from config.settings import Settings, get_constants, get_settings
from core.enums import SQRT2, Polarization, PropagationModel
from core.exceptions import (
    GridMismatchError,
    InsufficientPlanesError,
    InvalidParameterError,
    NonFiniteFieldError,
    ParaxialConstraintError,
)
from core.models import PhysicalConstants
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.grid import TransverseGrid
from domain.physics.dispersion import carrier_phase_rate
from domain.propagation.base_propagator import BasePropagator, power_fraction, nyquist_band_mask
from domain.propagation.exact_propagator import ExactPropagator
from domain.propagation.paraxial_propagator import ParaxialPropagator
from utils.logger import get_logger, log_domain_violation
from utils.spectral import fft2c, ifft2c

logger = get_logger(__name__)

Envelope = Union[ScalarEnvelope, VectorEnvelope]

# 사용 가능한 전파기 클래스 매핑
PROPAGATOR_CLASSES: Dict[PropagationModel, Type[BasePropagator]] = {
    PropagationModel.EXACT: ExactPropagator,
    PropagationModel.PARAXIAL: ParaxialPropagator,
}


def get_propagator(model: PropagationModel,
                   constants: Optional[PhysicalConstants] = None,
                   settings: Optional[Settings] = None) -> BasePropagator:
    """
    모델에 맞는 전파기 생성

    Raises:
        InvalidParameterError: 지원하지 않는 모델
    """
    try:
        propagator_class = PROPAGATOR_CLASSES[PropagationModel(model)]
    except (KeyError, ValueError):
        raise InvalidParameterError(
            f"지원하지 않는 전파 모델: {model}",
            {"available": [m.value for m in PROPAGATOR_CLASSES]}
        )
    return propagator_class(constants=constants, settings=settings)


# ===== FFT =====
def fft_forward(envelope: ScalarEnvelope, workers: Optional[int] = None) -> np.ndarray:
    """
    유니터리 순방향 변환 (q = 0 이 중앙)

    Raises:
        NonFiniteFieldError: NaN/Inf 샘플
    """
    if not envelope.is_finite():
        raise NonFiniteFieldError("포락선에 NaN/Inf 샘플이 있습니다")
    return fft2c(envelope.samples, workers=workers)


def fft_inverse(spectrum: np.ndarray, like: ScalarEnvelope,
                workers: Optional[int] = None) -> ScalarEnvelope:
    """
    역변환: 스펙트럼을 like 의 격자/태그를 가진 포락선으로

    Raises:
        NonFiniteFieldError: NaN/Inf 스펙트럼
    """
    if not np.isfinite(spectrum).all():
        raise NonFiniteFieldError("스펙트럼에 NaN/Inf 값이 있습니다")
    return like.with_samples(ifft2c(spectrum, workers=workers))


# ===== 전파 =====
def propagate(envelope: Envelope, dz: float, model: PropagationModel,
              polarization: Optional[Polarization] = None,
              constants: Optional[PhysicalConstants] = None,
              settings: Optional[Settings] = None) -> Envelope:
    """
    각스펙트럼 전파

    Args:
        envelope: 입력 포락선 (변경되지 않음)
        dz: 전파 거리 (m), 음수 허용
        model: EXACT (위상 q²c/(2Ω₀)) 또는 PARAXIAL (위상 q²c/(2ω))
        polarization: 스칼라 → 벡터 승격 (EXACT: ε⁽λ⁾·w, PARAXIAL: e⁽λ⁾)

    Returns:
        새 포락선
    """
    return get_propagator(model, constants, settings).propagate(envelope, dz, polarization)


# ===== 시간 위상 =====
def apply_time_phase(spectrum: np.ndarray, grid: TransverseGrid, t: float, k0: float,
                     constants: Optional[PhysicalConstants] = None,
                     settings: Optional[Settings] = None) -> np.ndarray:
    """
    반송파 표현의 시간 위상 exp[−iω₀t(√(1+ϑ⁴) − 1)], ϑ = q/(√2k₀)

    Raises:
        ParaxialConstraintError: ϑ > 1 영역에 허용치 이상의 파워
    """
    settings = settings if settings is not None else get_settings()
    q = np.sqrt(grid.q_squared())
    vartheta = q / (SQRT2 * k0)
    beyond = vartheta > 1.0
    if beyond.any():
        fraction = power_fraction(spectrum, beyond)
        if fraction > settings.constraint_power_tolerance:
            details = {"power_fraction": fraction, "k0": k0}
            log_domain_violation("apply_time_phase", details)
            raise ParaxialConstraintError("spectral content beyond paraxial constraint ϑ ≤ 1", details)
    if t == 0:
        return np.array(spectrum, copy=True)
    rate = carrier_phase_rate(np.minimum(vartheta, 1.0), k0, constants)
    return spectrum * np.exp(-1j * rate * t)


def evolve_in_time(envelope: Envelope, t: float,
                   constants: Optional[PhysicalConstants] = None,
                   settings: Optional[Settings] = None) -> Envelope:
    """fft → apply_time_phase → ifft, t 태그 += t"""
    consts = constants if constants is not None else get_constants()
    settings = settings if settings is not None else get_settings()
    k0 = envelope.omega / consts.c
    spectrum = fft2c(envelope.samples, workers=settings.threads)
    evolved = apply_time_phase(spectrum, envelope.grid, t, k0, consts, settings)
    return envelope.with_samples(ifft2c(evolved, workers=settings.threads), t=envelope.t + t)


# ===== 연속 스펙트럼 규약 =====
def continuous_spectrum(envelope: ScalarEnvelope) -> np.ndarray:
    """
    연속 Fourier 진폭 b(q) = (2π)⁻¹ ∫d²x e^{−iq·x} f(x)

    이산 근사: dx·dy/(2π) · Σ_x e^{−iq·x} f(x)
    """
    grid = envelope.grid
    scale = grid.cell_area / (2.0 * np.pi) * np.sqrt(grid.nx * grid.ny)
    return fft2c(envelope.samples) * scale


def from_continuous_spectrum(amplitudes: np.ndarray, like: ScalarEnvelope) -> ScalarEnvelope:
    """continuous_spectrum 의 역: f(x) = (2π)⁻¹ Σ_q b(q) e^{iq·x} Δqx·Δqy"""
    grid = like.grid
    scale = grid.dqx * grid.dqy / (2.0 * np.pi) * np.sqrt(grid.nx * grid.ny)
    return like.with_samples(ifft2c(amplitudes) * scale)


# ===== 단색 필드 조립 =====
def field_prefactor(omega: float, constants: Optional[PhysicalConstants] = None) -> float:
    """ħ^{1/2}(4πε₀cω)^{−1/2}"""
    consts = constants if constants is not None else get_constants()
    return float(np.sqrt(consts.hbar / (4.0 * np.pi * consts.eps0 * consts.c * omega)))


def plane_wave_prefactor(omega: float, constants: Optional[PhysicalConstants] = None) -> float:
    """평면파 적분 내부 인자 (ħ/(16π³ε₀cω))^{1/2}"""
    consts = constants if constants is not None else get_constants()
    return float(np.sqrt(consts.hbar / (16.0 * np.pi ** 3 * consts.eps0 * consts.c * omega)))


def _carrier(omega: float, z: float, t: float, c: float) -> complex:
    return complex(np.exp(-1j * omega * (t - z / c)))


def assemble_monochromatic_field(envelope: Envelope, omega: float, z: float, t: float,
                                 constants: Optional[PhysicalConstants] = None) -> Envelope:
    """
    양의 주파수 벡터 퍼텐셜 슬라이스 Â⁽⁺⁾ (ω 밀도, 𝓛/L 상수 제외)

    = ħ^{1/2}(4πε₀cω)^{−1/2} · e^{−iω(t − z/c)} · 포락선

    Raises:
        InvalidParameterError: ω ≤ 0
    """
    if not omega > 0:
        raise InvalidParameterError("omega는 양수여야 합니다", {"omega": omega})
    consts = constants if constants is not None else get_constants()
    factor = field_prefactor(omega, consts) * _carrier(omega, z, t, consts.c)
    return envelope.with_samples(envelope.samples * factor)


def assemble_via_plane_waves(envelope: Envelope, omega: float, z: float, t: float,
                             constants: Optional[PhysicalConstants] = None) -> Envelope:
    """
    평면파 적분 경로의 조립

    Â⁽⁺⁾ = (ħ/(16π³ε₀cω))^{1/2} · e^{−iω(t − z/c)} · Σ_q b(q) e^{iq·x} Δq²
    (b 는 연속 스펙트럼, 성분별로 계산)

    assemble_monochromatic_field 와 (2π)·(16π³)^{−1/2} = (4π)^{−1/2} 로 일치
    """
    if not omega > 0:
        raise InvalidParameterError("omega는 양수여야 합니다", {"omega": omega})
    consts = constants if constants is not None else get_constants()
    grid = envelope.grid
    samples = envelope.samples
    flat = samples[np.newaxis] if samples.ndim == 2 else samples

    spectra = np.stack([
        continuous_spectrum(ScalarEnvelope(grid=grid, samples=component, omega=envelope.omega))
        for component in flat
    ])
    synthesis = ifft2c(spectra) * (grid.dqx * grid.dqy * np.sqrt(grid.nx * grid.ny))
    field = plane_wave_prefactor(omega, consts) * _carrier(omega, z, t, consts.c) * synthesis
    return envelope.with_samples(field.reshape(samples.shape))


# ===== 근축 잔차 =====
def _laplacian(samples: np.ndarray, grid: TransverseGrid) -> np.ndarray:
    d2x = (np.roll(samples, -1, axis=-1) - 2.0 * samples + np.roll(samples, 1, axis=-1)) / grid.dx ** 2
    d2y = (np.roll(samples, -1, axis=-2) - 2.0 * samples + np.roll(samples, 1, axis=-2)) / grid.dy ** 2
    return d2x + d2y


def paraxial_residual(planes: Sequence[ScalarEnvelope], k0: float) -> float:
    """
    근축 방정식 잔차 ‖∂²ₓΨ + ∂²ᵧΨ + 2ik₀∂_zΨ‖ / ‖Ψ‖ (중앙 평면)

    2차 중앙 차분 (횡 방향은 주기 경계), z 간격은 평면 태그에서 계산

    Args:
        planes: 등간격 z 평면의 포락선 (3개 이상, z 순서)
        k0: 반송파 파수

    Returns:
        float: 음이 아닌 잔차

    Raises:
        InsufficientPlanesError: 평면 3개 미만
        GridMismatchError: 평면 격자 불일치
        InvalidParameterError: z 간격 불균일 또는 0
    """
    if len(planes) < 3:
        raise InsufficientPlanesError("잔차 계산에는 z 평면 3개가 필요합니다", {"given": len(planes)})

    middle = len(planes) // 2
    below, center, above = planes[middle - 1], planes[middle], planes[middle + 1]
    for plane in (below, above):
        if plane.grid != center.grid:
            raise GridMismatchError("평면 격자가 다릅니다", {"grid": center.grid.describe()})

    h_low = center.z - below.z
    h_high = above.z - center.z
    if h_low <= 0 or not np.isclose(h_low, h_high, rtol=1e-9, atol=0.0):
        raise InvalidParameterError(
            "z 평면은 등간격이고 증가 순서여야 합니다",
            {"z": [below.z, center.z, above.z]}
        )

    grid = center.grid
    dz_term = (above.samples - below.samples) / (h_low + h_high)
    residual = _laplacian(center.samples, grid) + 2j * k0 * dz_term
    norm = center.norm()
    if norm == 0:
        raise InvalidParameterError("영 필드의 잔차는 정의되지 않습니다")
    value = float(np.sqrt(np.sum(np.abs(residual) ** 2) * grid.cell_area) / norm)
    logger.debug(f"근축 잔차 h={h_low:.6g} dx={grid.dx:.6g}: {value:.6e}")
    return value


def propagated_planes(envelope: ScalarEnvelope, z_center: float, h: float,
                      model: PropagationModel,
                      constants: Optional[PhysicalConstants] = None,
                      settings: Optional[Settings] = None) -> list:
    """z_center − h, z_center, z_center + h 의 세 평면 (잔차 입력용)"""
    propagator = get_propagator(model, constants, settings)
    offset = z_center - envelope.z
    return [propagator.propagate(envelope, offset + step) for step in (-h, 0.0, h)]


# ===== 스펙트럼 진단 =====
def spectral_power_beyond(envelope: Envelope, q_limit: float,
                          settings: Optional[Settings] = None) -> float:
    """|q| > q_limit 영역의 파워 비율"""
    settings = settings if settings is not None else get_settings()
    spectrum = fft2c(envelope.samples, workers=settings.threads)
    return power_fraction(spectrum, np.sqrt(envelope.grid.q_squared()) > q_limit)


def near_nyquist_power(envelope: Envelope, bins: Optional[int] = None,
                       settings: Optional[Settings] = None) -> float:
    """Nyquist 에서 bins 개 이내의 파워 비율 (bins 생략 시 settings.aliasing_guard_bins)"""
    settings = settings if settings is not None else get_settings()
    bins = bins if bins is not None else settings.aliasing_guard_bins
    spectrum = fft2c(envelope.samples, workers=settings.threads)
    return power_fraction(spectrum, nyquist_band_mask(envelope.grid, bins))
