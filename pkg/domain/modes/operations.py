"""
MPQ 모드 연산 모듈

모드 생성, 내적, 분해/재구성, Gaussian 빔 해석해, coherent-state 오라클
"""
from typing import Dict, List, Optional, Tuple, Type, Union

import numpy as np
from scipy.special import factorial

from config.settings import get_constants
from core.enums import ModeFamily
from core.exceptions import GridMismatchError, InvalidParameterError
from core.models import ModeSpec, PhysicalConstants
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.grid import TransverseGrid
from domain.entities.optics import ModeCoefficients
from domain.modes.base_mode import BaseModeFamily, Indices
from domain.modes.gaussian_modes import GaussianMode, HermiteGaussianMode, LaguerreGaussianMode
from utils.logger import get_logger

logger = get_logger(__name__)

Envelope = Union[ScalarEnvelope, VectorEnvelope]

# 사용 가능한 모드 계열 클래스 매핑
MODE_FAMILY_CLASSES: Dict[ModeFamily, Type[BaseModeFamily]] = {
    ModeFamily.GAUSSIAN: GaussianMode,
    ModeFamily.HERMITE_GAUSSIAN: HermiteGaussianMode,
    ModeFamily.LAGUERRE_GAUSSIAN: LaguerreGaussianMode,
}


def get_mode_family(family: ModeFamily, w0: float) -> BaseModeFamily:
    """
    계열 인스턴스 생성

    Raises:
        InvalidParameterError: 지원하지 않는 계열
    """
    try:
        family_class = MODE_FAMILY_CLASSES[ModeFamily(family)]
    except (KeyError, ValueError):
        raise InvalidParameterError(
            f"지원하지 않는 모드 계열: {family}",
            {"available": [f.value for f in MODE_FAMILY_CLASSES]}
        )
    return family_class(w0)


def mode_indices(family: ModeFamily, order: int) -> List[Indices]:
    """차수 order 이하의 기저 인덱스 (HG: n+m ≤ N, LG: 2p+|l| ≤ N)"""
    if order < 0:
        raise InvalidParameterError("차수는 음수일 수 없습니다", {"order": order})
    return get_mode_family(family, 1.0).indices_up_to(order)


# ===== 모드 생성 =====
def make_mode(spec: ModeSpec, grid: TransverseGrid) -> ScalarEnvelope:
    """
    허리 평면 (z = 0) 의 단위 노름 모드

    Args:
        spec: 모드 사양
        grid: 횡 격자

    Returns:
        ScalarEnvelope: omega = spec.omega

    Raises:
        ResolutionError: 격자가 w0 또는 모드 차수를 해상하지 못함
    """
    family = get_mode_family(spec.family, spec.w0)
    samples = family.sample(grid, spec.indices)
    logger.debug(f"모드 생성 | {spec.family.value}{spec.indices} w0={spec.w0:.6g}")
    return ScalarEnvelope(grid=grid, samples=samples, omega=spec.omega)


def rayleigh_range(w0: float, k0: float) -> float:
    """z_R = k₀·w0²/2"""
    return k0 * w0 ** 2 / 2.0


def gaussian_divergence(w0: float, k0: float) -> float:
    """원거리 1/e² 강도 반각 2/(k₀·w0)"""
    return 2.0 / (k0 * w0)


def gaussian_beam(grid: TransverseGrid, w0: float, omega: float, z: float,
                  constants: Optional[PhysicalConstants] = None) -> ScalarEnvelope:
    """
    근축 Gaussian 빔 해석해

    Ψ(r, z) = N/(1 + iz/z_R) · exp(−r²/(w0²(1 + iz/z_R)))
    N 은 z = 0 에서 이산 노름 1 이 되는 상수 (make_mode 와 같은 값)
    폭 w(z) = w0√(1 + (z/z_R)²), 축 위 진폭 1/√(1 + (z/z_R)²), Gouy 위상 −atan(z/z_R)
    """
    consts = constants if constants is not None else get_constants()
    k0 = omega / consts.c
    z_r = rayleigh_range(w0, k0)
    x, y = grid.mesh()
    r2 = x ** 2 + y ** 2
    waist = np.exp(-r2 / w0 ** 2)
    norm = np.sqrt(np.sum(waist ** 2) * grid.cell_area)
    q = 1.0 + 1j * z / z_r
    samples = np.exp(-r2 / (w0 ** 2 * q)) / (q * norm)
    return ScalarEnvelope(grid=grid, samples=samples, omega=omega, z=z)


# ===== 내적 / 분해 =====
def mode_overlap(f: Envelope, g: Envelope) -> complex:
    """
    Hermitian 내적 Σ f*·g·dx·dy (벡터면 성분 합)

    Raises:
        GridMismatchError: 격자 불일치
    """
    if f.grid != g.grid:
        raise GridMismatchError("격자가 일치하지 않습니다", {"f": f.grid.describe(), "g": g.grid.describe()})
    return complex(np.sum(np.conj(f.samples) * g.samples) * f.grid.cell_area)


def decompose(f: ScalarEnvelope, family: ModeFamily, w0: float, order: int) -> ModeCoefficients:
    """
    모드 전개 계수 c_k = ⟨mode_k, f⟩

    Raises:
        ResolutionError: 격자가 차수 order 를 해상하지 못함
    """
    basis = get_mode_family(family, w0).basis(f.grid, order)
    coefficients = {
        indices: complex(np.sum(np.conj(mode) * f.samples) * f.grid.cell_area)
        for indices, mode in basis
    }
    logger.debug(f"모드 분해 | {ModeFamily(family).value} N={order} 계수 {len(coefficients)}개")
    return ModeCoefficients(family=ModeFamily(family), w0=w0, order=order,
                            coefficients=coefficients, omega=f.omega)


def reconstruct(coeffs: ModeCoefficients, grid: TransverseGrid) -> ScalarEnvelope:
    """Σ c_k·mode_k"""
    family = get_mode_family(coeffs.family, coeffs.w0)
    family.check_resolution(grid, coeffs.order)
    samples = np.zeros(grid.shape, dtype=np.complex128)
    for indices, value in coeffs.coefficients.items():
        samples += value * family.sample(grid, indices)
    return ScalarEnvelope(grid=grid, samples=samples, omega=coeffs.omega)


def coherent_state_coefficients(alpha: float, order: int) -> np.ndarray:
    """
    변위 Gaussian 의 HG(n, 0) 계수 c_n = e^{−α²/2}·αⁿ/√n!

    x 방향으로 x0 만큼 변위된 허리 w0 Gaussian 에서 α = x0/w0
    """
    n = np.arange(order + 1)
    return np.exp(-alpha ** 2 / 2.0) * float(alpha) ** n / np.sqrt(factorial(n))


def plane_wave_overlap(q: Tuple[float, float], x: Tuple[float, float]) -> complex:
    """⟨x|q⟩ = e^{iq·x}/(2π)"""
    return complex(np.exp(1j * (q[0] * x[0] + q[1] * x[1])) / (2.0 * np.pi))
