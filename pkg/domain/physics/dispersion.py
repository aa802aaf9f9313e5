"""
MPQ 분산 관계 모듈

일반화된 분산 관계 ζ/k₀ = 1 − q²/(2k₀²) 와 파생 스펙트럼 양
(ϑ, θ, Θ, Ω₀, n(ϑ), Dirac Jacobian)

모든 함수는 순수 함수 (공유 상태 없음, 스레드 안전)
스칼라 입력은 float, 배열 입력은 np.ndarray 를 반환
"""
import math
from typing import Optional, Tuple, Union

import numpy as np

from config.settings import get_constants
from core.enums import SQRT2, VARTHETA_ROUNDING_TOL
from core.exceptions import InvalidParameterError, ParaxialConstraintError, PhysicsDomainError
from core.models import (
    CarrierParams,
    DispersionPoint,
    FrequencyPoint,
    PhysicalConstants,
    QuantizationConfig,
)
from utils.logger import get_logger, log_domain_violation

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]


def _out(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def _constants(constants: Optional[PhysicalConstants]) -> PhysicalConstants:
    return constants if constants is not None else get_constants()


def _require_positive(name: str, value: ArrayLike) -> None:
    if not np.all(np.asarray(value) > 0):
        raise PhysicsDomainError(f"{name}는 양수여야 합니다", {name: value})


# ===== 반송파 기준 (q, ϑ, ζ) =====
def vartheta_of_q(q: ArrayLike, k0: float) -> ArrayLike:
    """ϑ = q/(√2·k₀)"""
    _require_positive("k0", k0)
    return _out(np.asarray(q, dtype=float) / (SQRT2 * k0))


def zeta_of_q(q: ArrayLike, k0: float) -> ArrayLike:
    """
    종 파수 ζ = k₀(1 − q²/(2k₀²))

    Args:
        q: 횡 파수 크기 (rad/m), 0 ≤ q ≤ √2·k₀
        k0: 반송파 파수 (rad/m)

    Returns:
        ζ ∈ [0, k₀]

    Raises:
        ParaxialConstraintError: q > √2·k₀ (ϑ > 1)
    """
    _require_positive("k0", k0)
    q = np.asarray(q, dtype=float)
    if np.any(q < 0):
        raise InvalidParameterError("q는 음수일 수 없습니다", {"q_min": float(q.min())})

    vartheta = q / (SQRT2 * k0)
    if np.any(vartheta > 1.0 + VARTHETA_ROUNDING_TOL):
        details = {"vartheta_max": float(vartheta.max()), "k0": k0}
        log_domain_violation("zeta_of_q", details)
        raise ParaxialConstraintError("beyond paraxial constraint ϑ ≤ 1", details)

    zeta = k0 * (1.0 - vartheta ** 2)
    return _out(np.maximum(zeta, 0.0))


def dispersion_point(q: float, k0: float) -> DispersionPoint:
    """단색 반송파 스펙트럼 점 (q, ϑ, ζ)"""
    zeta = zeta_of_q(q, k0)
    vartheta = min(float(q) / (SQRT2 * k0), 1.0)
    return DispersionPoint(q=float(q), vartheta=vartheta, zeta=zeta)


def carrier_params(k0: float, constants: Optional[PhysicalConstants] = None) -> CarrierParams:
    """반송파 (k₀, ω₀ = c·k₀)"""
    c = _constants(constants).c
    return CarrierParams(k0=k0, omega0=c * k0)


def paraxial_symbol(q: ArrayLike, k0: float, zeta: ArrayLike) -> ArrayLike:
    """
    평면파 근축 방정식의 심볼 −q² + 2k₀(k₀ − ζ)

    분산 곡면 위에서 정확히 0
    """
    q = np.asarray(q, dtype=float)
    return _out(-q ** 2 + 2.0 * k0 * (k0 - np.asarray(zeta, dtype=float)))


def carrier_phase_rate(vartheta: ArrayLike, k0: float,
                       constants: Optional[PhysicalConstants] = None) -> ArrayLike:
    """반송파 표현의 시간 위상 속도 ω₀(√(1+ϑ⁴) − 1) (rad/s)"""
    c = _constants(constants).c
    vartheta = np.asarray(vartheta, dtype=float)
    # √(1+x)−1 = x/(√(1+x)+1): 작은 ϑ 에서 상쇄 방지
    v4 = vartheta ** 4
    return _out(c * k0 * v4 / (np.sqrt(1.0 + v4) + 1.0))


# ===== 발산각 관계 =====
def vartheta_of_theta(theta: ArrayLike) -> ArrayLike:
    """
    정확한 관계 ϑ√2 = −cot θ + √(2 + cot²θ)

    작은 θ 의 상쇄를 피하려고 동치식 ϑ√2 = 2/(cot θ + √(2 + cot²θ)) 로 계산

    Args:
        theta: 발산 반각 (rad), 0 ≤ θ ≤ π/2 (θ = 0 은 극한값 0)

    Returns:
        ϑ ∈ [0, 1], θ 에 대해 단조 증가

    Raises:
        PhysicsDomainError: θ 가 [0, π/2] 밖
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > math.pi / 2 + VARTHETA_ROUNDING_TOL):
        details = {"theta_min": float(theta.min()), "theta_max": float(theta.max())}
        log_domain_violation("vartheta_of_theta", details)
        raise PhysicsDomainError("θ는 (0, π/2] 범위여야 합니다", details)

    theta = np.minimum(theta, math.pi / 2)
    with np.errstate(divide="ignore"):
        cot = np.cos(theta) / np.sin(theta)
        value = np.where(theta > 0, 2.0 / (cot + np.sqrt(2.0 + cot ** 2)), 0.0)
    return _out(np.minimum(value / SQRT2, 1.0))


def theta_of_vartheta(vartheta: ArrayLike) -> ArrayLike:
    """vartheta_of_theta 의 역함수 θ = atan2(√2ϑ, 1 − ϑ²)"""
    vartheta = np.asarray(vartheta, dtype=float)
    if np.any(vartheta < 0) or np.any(vartheta > 1.0 + VARTHETA_ROUNDING_TOL):
        raise ParaxialConstraintError(
            "beyond paraxial constraint ϑ ≤ 1",
            {"vartheta_max": float(vartheta.max())}
        )
    vartheta = np.minimum(vartheta, 1.0)
    return _out(np.arctan2(SQRT2 * vartheta, 1.0 - vartheta ** 2))


def vartheta_series(theta: ArrayLike) -> ArrayLike:
    """
    3차 급수 ϑ√2 ≃ θ − θ³/6

    정확한 관계와의 차이는 O(θ⁵), 선행 계수 2/15
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta >= 1):
        raise InvalidParameterError("급수는 0 ≤ θ < 1 에서만 사용합니다")
    return _out((theta - theta ** 3 / 6.0) / SQRT2)


# ===== 주파수 영역 (Θ, Ω₀) =====
def frequency_arrays(q: ArrayLike, omega: ArrayLike,
                     constants: Optional[PhysicalConstants] = None) -> Tuple[ArrayLike, ArrayLike]:
    """
    벡터화된 (Θ, Ω₀)

    Θ = √2·q·c/(ω + √(ω² + 2q²c²)), Ω₀ = (ω + √(ω² + 2q²c²))/2
    Ω₀ 은 이차식의 양의 근으로 직접 계산 (q = 0 에서 0/0 없음)
    """
    _require_positive("omega", omega)
    c = _constants(constants).c
    q = np.asarray(q, dtype=float)
    omega = np.asarray(omega, dtype=float)
    qc = q * c
    root = np.sqrt(omega ** 2 + 2.0 * qc ** 2)
    theta = SQRT2 * qc / (omega + root)
    omega0 = 0.5 * (omega + root)
    return _out(theta), _out(omega0)


def theta_omega_point(q: float, omega: float,
                      constants: Optional[PhysicalConstants] = None) -> FrequencyPoint:
    """
    주파수 영역 스펙트럼 점

    Args:
        q: 횡 파수 (rad/m), q ≥ 0
        omega: 각주파수 (rad/s), ω > 0
        constants: 물리 상수 (None이면 설정 단위계)

    Returns:
        FrequencyPoint: (q, ω, Θ, Ω₀)

    Raises:
        PhysicsDomainError: ω ≤ 0
    """
    if not omega > 0:
        log_domain_violation("theta_omega_point", {"omega": omega})
        raise PhysicsDomainError("omega는 양수여야 합니다", {"omega": omega})
    if q < 0:
        raise InvalidParameterError("q는 음수일 수 없습니다", {"q": q})

    theta, omega0 = frequency_arrays(q, omega, constants)
    if theta > 1.0:
        # 정의상 Θ < 1 이지만 입력이 비정상(inf 등)이면 여기서 차단
        raise ParaxialConstraintError("Θ > 1", {"q": q, "omega": omega, "Theta": theta})
    return FrequencyPoint(q=float(q), omega=float(omega), Theta=theta, Omega0=omega0)


def omega0_from_theta(theta: float, q: float,
                      constants: Optional[PhysicalConstants] = None) -> float:
    """항등식 Ω₀/c = q/(Θ√2) 에서 Ω₀ (q > 0, 검증용)"""
    if not (theta > 0 and q > 0):
        raise InvalidParameterError("Θ, q 모두 양수여야 합니다", {"Theta": theta, "q": q})
    return _constants(constants).c * q / (theta * SQRT2)


def q_for_theta(theta: ArrayLike, omega: float,
                constants: Optional[PhysicalConstants] = None) -> ArrayLike:
    """
    주어진 Θ 에 해당하는 횡 파수 q = √2·Θ·ω/(c(1 − Θ²))

    Raises:
        PhysicsDomainError: Θ ∉ [0, 1)
    """
    _require_positive("omega", omega)
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta >= 1):
        raise PhysicsDomainError("Θ는 [0, 1) 범위여야 합니다", {"Theta": theta.tolist()})
    c = _constants(constants).c
    return _out(SQRT2 * theta * omega / (c * (1.0 - theta ** 2)))


def dispersion_omega(k0: ArrayLike, q: float,
                     constants: Optional[PhysicalConstants] = None) -> ArrayLike:
    """ω(k₀) = c·k₀ − q²c/(2k₀) (근이 Ω₀/c 인 함수)"""
    c = _constants(constants).c
    k0 = np.asarray(k0, dtype=float)
    return _out(c * k0 - q ** 2 * c / (2.0 * k0))


def dirac_jacobian(q: ArrayLike, omega: ArrayLike,
                   constants: Optional[PhysicalConstants] = None) -> ArrayLike:
    """
    δ(ω − ω(k₀)) 변수 변환 Jacobian 1/(1 + Θ²)

    = c / |dω/dk₀| at k₀ = Ω₀/c
    """
    theta, _ = frequency_arrays(q, omega, constants)
    return _out(1.0 / (1.0 + np.asarray(theta) ** 2))


# ===== 양자화 모드 선택 =====
def n_index(vartheta: float, k0: float, config: QuantizationConfig) -> int:
    """
    n(ϑ) = IP[k₀L/(2π)·(1 − ϑ²)]

    정수 격자점 근처의 부동소수 오차는 그 정수로 반올림

    Args:
        vartheta: 0 ≤ ϑ ≤ 1
        k0: 반송파 파수 (rad/m)
        config: 양자화 길이 L

    Returns:
        int: 음이 아닌 정수
    """
    if vartheta < 0 or vartheta > 1.0 + VARTHETA_ROUNDING_TOL:
        raise ParaxialConstraintError("beyond paraxial constraint ϑ ≤ 1", {"vartheta": vartheta})
    _require_positive("k0", k0)

    x = k0 * config.L / (2.0 * math.pi) * (1.0 - min(vartheta, 1.0) ** 2)
    nearest = round(x)
    if abs(x - nearest) <= VARTHETA_ROUNDING_TOL * max(1.0, abs(x)):
        return max(int(nearest), 0)
    return max(int(math.floor(x)), 0)


if __name__ == "__main__":
    from core.models import PhysicalConstants as _PC

    unit = _PC.dimensionless()
    print("=== 분산 관계 예시 (c = 1) ===")
    point = theta_omega_point(1.0, 1.0, unit)
    print(f"q = ω/c: Θ = {point.Theta:.6f}, Ω₀ = {point.Omega0:.6f}")
    print(f"Jacobian: {dirac_jacobian(1.0, 1.0, unit):.6f}")
    print(f"ϑ(θ=0.1) = {vartheta_of_theta(0.1):.7f}")
