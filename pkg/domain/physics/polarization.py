"""
MPQ 편광 기저 모듈

정확한 횡 편광 기저 ε⁽λ⁾(q, ϑ), 0차 극한 e⁽λ⁾(q),
느리게 변하는 편광 벡터 𝓔⁽λ⁾(q, ω, z, t)

규약:
- ε⁽²⁾ = ẑ × q̂ (z 성분 0)
- ε⁽¹⁾ = [q̂(1 − ϑ²) − ẑ·√2ϑ]/√(1 + ϑ⁴)
- (ε⁽¹⁾, ε⁽²⁾, k̂) 는 오른손 좌표계 (ε⁽¹⁾ × ε⁽²⁾ = k̂, ε⁽¹⁾ ∝ ε⁽²⁾ × k)
- q = 0 에서는 q̂ = x̂
"""
from typing import Optional, Sequence, Tuple

import numpy as np

from config.settings import get_constants
from core.enums import SQRT2, VARTHETA_ROUNDING_TOL, Polarization
from core.exceptions import ParaxialConstraintError
from core.models import PhysicalConstants
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.optics import PolarizationBasis, SlowlyVaryingPolarization
from domain.physics.dispersion import frequency_arrays
from utils.logger import get_logger

logger = get_logger(__name__)


def _check_parameter(param) -> np.ndarray:
    param = np.asarray(param, dtype=float)
    if np.any(param < 0) or np.any(param > 1.0 + VARTHETA_ROUNDING_TOL):
        raise ParaxialConstraintError(
            "beyond paraxial constraint ϑ ≤ 1",
            {"max": float(np.max(param)), "min": float(np.min(param))}
        )
    return np.minimum(param, 1.0)


def _unit_directions(qx: np.ndarray, qy: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    q = np.hypot(qx, qy)
    on_axis = q == 0
    safe = np.where(on_axis, 1.0, q)
    return np.where(on_axis, 1.0, qx / safe), np.where(on_axis, 0.0, qy / safe)


# ===== 벡터화 기저 =====
def polarization_field(qx: np.ndarray, qy: np.ndarray, param, polarization: int) -> np.ndarray:
    """
    스펙트럼 격자 전체의 ε⁽λ⁾

    Args:
        qx, qy: 횡 파수 배열 (같은 형태)
        param: ϑ 또는 Θ (스칼라 또는 같은 형태의 배열)
        polarization: λ (1 또는 2)

    Returns:
        np.ndarray: (3, ...) 실수 배열
    """
    qx = np.asarray(qx, dtype=float)
    qy = np.asarray(qy, dtype=float)
    ux, uy = _unit_directions(qx, qy)

    if Polarization(polarization) == Polarization.SECOND:
        return np.stack([-uy, ux, np.zeros_like(ux)])

    param = np.broadcast_to(_check_parameter(param), ux.shape)
    p2 = param ** 2
    norm = np.sqrt(1.0 + p2 ** 2)
    return np.stack([ux * (1.0 - p2) / norm, uy * (1.0 - p2) / norm, -SQRT2 * param / norm])


def zeroth_order_field(qx: np.ndarray, qy: np.ndarray, polarization: int) -> np.ndarray:
    """0차 기저 e⁽¹⁾ = q̂, e⁽²⁾ = ẑ × q̂, (3, ...) 배열"""
    return polarization_field(qx, qy, 0.0, polarization)


def amplitude_weight(q, omega, constants: Optional[PhysicalConstants] = None):
    """
    진폭 가중치 w(q, ω) = (ω²/Ω₀² / ((1 + Θ⁴)(1 + Θ²)⁴))^{1/4} ∈ (0, 1]

    q = 0 에서 1, q 가 커질수록 감소
    """
    theta, omega0 = frequency_arrays(q, omega, constants)
    theta = np.asarray(theta)
    ratio = np.asarray(omega, dtype=float) / np.asarray(omega0)
    weight = (ratio ** 2 / ((1.0 + theta ** 4) * (1.0 + theta ** 2) ** 4)) ** 0.25
    return float(weight) if weight.ndim == 0 else weight


def slowly_varying_phase(q, omega: float, z: float, t: float,
                         constants: Optional[PhysicalConstants] = None) -> np.ndarray:
    """
    𝓔⁽λ⁾ 의 위상 인자 exp[i(ω − Ω₀√(1+Θ⁴))t − i(ω − Ω₀)z/c]

    ω − Ω₀ = −Ω₀Θ² 형태로 계산 (작은 q 에서 상쇄 없음)
    """
    consts = constants if constants is not None else get_constants()
    theta, omega0 = frequency_arrays(q, omega, consts)
    theta = np.asarray(theta)
    omega0 = np.asarray(omega0)
    t2 = theta ** 2
    t4 = t2 ** 2
    time_rate = -omega0 * (t2 + t4 / (np.sqrt(1.0 + t4) + 1.0))
    space_rate = -omega0 * t2 / consts.c
    return np.exp(1j * (time_rate * t - space_rate * z))


def slowly_varying_field(qx: np.ndarray, qy: np.ndarray, omega: float, z: float, t: float,
                         polarization: int,
                         constants: Optional[PhysicalConstants] = None) -> np.ndarray:
    """스펙트럼 격자 전체의 𝓔⁽λ⁾, (3, ...) 복소 배열"""
    q = np.hypot(qx, qy)
    theta, _ = frequency_arrays(q, omega, constants)
    basis = polarization_field(qx, qy, theta, polarization)
    weight = amplitude_weight(q, omega, constants)
    phase = slowly_varying_phase(q, omega, z, t, constants)
    return basis * (weight * phase)[np.newaxis]


# ===== 점 단위 연산 =====
def basis_at(q_vec: Sequence[float], vartheta: float) -> PolarizationBasis:
    """
    정확한 편광 기저 (ε⁽¹⁾, ε⁽²⁾)

    Args:
        q_vec: 횡 파수 벡터 (qx, qy)
        vartheta: ϑ (주파수 영역에서는 Θ), 0 ≤ ϑ ≤ 1

    Returns:
        PolarizationBasis

    Raises:
        ParaxialConstraintError: ϑ > 1
    """
    qx, qy = float(q_vec[0]), float(q_vec[1])
    eps1 = polarization_field(np.array(qx), np.array(qy), vartheta, Polarization.FIRST)
    eps2 = polarization_field(np.array(qx), np.array(qy), vartheta, Polarization.SECOND)
    ux, uy = _unit_directions(np.array(qx), np.array(qy))
    return PolarizationBasis(
        eps1=np.asarray(eps1, dtype=float).reshape(3),
        eps2=np.asarray(eps2, dtype=float).reshape(3),
        q_hat=np.array([float(ux), float(uy), 0.0]),
        vartheta_like=float(min(vartheta, 1.0)),
    )


def zeroth_order_basis(q_vec: Sequence[float]) -> PolarizationBasis:
    """0차 기저 e⁽¹⁾ = q̂, e⁽²⁾ = ẑ × q̂"""
    return basis_at(q_vec, 0.0)


def wave_vector(q_vec: Sequence[float], vartheta: float, k0: float) -> np.ndarray:
    """분산 곡면 위의 파동 벡터 k = q + ẑ·k₀(1 − ϑ²)"""
    vartheta = float(_check_parameter(vartheta))
    return np.array([float(q_vec[0]), float(q_vec[1]), k0 * (1.0 - vartheta ** 2)])


def slowly_varying_polarization(q_vec: Sequence[float], omega: float, z: float, t: float,
                                polarization: int,
                                constants: Optional[PhysicalConstants] = None) -> SlowlyVaryingPolarization:
    """
    느리게 변하는 편광 벡터 𝓔⁽λ⁾(q, ω, z, t)

    = ε⁽λ⁾(q̂, Θ) · w(q, ω) · exp[i(ω − Ω₀√(1+Θ⁴))t − i(ω − Ω₀)z/c]

    Args:
        q_vec: (qx, qy) rad/m
        omega: 각주파수 (rad/s)
        z: 전파 거리 (m)
        t: 시간 (s)
        polarization: λ
        constants: 물리 상수

    Returns:
        SlowlyVaryingPolarization: |vec| = w(q, ω)
    """
    vec = slowly_varying_field(
        np.array(float(q_vec[0])), np.array(float(q_vec[1])), omega, z, t, polarization, constants
    )
    return SlowlyVaryingPolarization(vec=np.asarray(vec).reshape(3), omega=omega, z=z, t=t)


def circular_components(field: VectorEnvelope) -> Tuple[ScalarEnvelope, ScalarEnvelope]:
    """
    원편광 성분 σ± = (Ax ∓ iAy)/√2

    q 의존 기저의 스핀-궤도 결합 확인용: LG(p, l) 을 λ=1 로 승격하면
    σ+ 는 l − 1, σ− 는 l + 1 의 회전수를 가짐
    """
    ax, ay = field.samples[0], field.samples[1]
    base = field.component(0)
    return (
        base.with_samples((ax - 1j * ay) / SQRT2),
        base.with_samples((ax + 1j * ay) / SQRT2),
    )
