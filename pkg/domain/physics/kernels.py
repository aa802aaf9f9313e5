"""
MPQ 회절 커널 모듈

Maxwell-paraxial 커널 F⁽λ⁾, 근축 Green 함수 P⁽λ⁾, 준직교 적분을
대역 제한 2D 스펙트럼 구적으로 계산

구적 격자:
- q_a = (a − n_q/2)·Δq, Δq = 2·q_max/n_q (축당 n_q 점)
- 원판 지시함수 q < q_max (엄격 부등호, 활성 집합이 원점 대칭)
- 선택적 코사인 테이퍼: q ≤ q₁ 에서 1, q₁ < q < q_max 에서 ½(1 + cos(π(q − q₁)/(q_max − q₁)))
  q₁ = (1 − f)·q_max, f = settings.kernel_taper_fraction

점 값은 분리 가능한 지수 행렬로 합성 (행렬 Fourier 변환)
ψ(x, y) = Σ_a Σ_b e^{i qy_a Δy} S[a, b] e^{i qx_b Δx}
같은 입력이면 같은 순서로 합산 → 결과 비트 동일
"""
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from config.settings import Settings, get_constants, get_settings
from core.enums import SQRT2, Polarization, PropagationModel, TaperWindow
from core.exceptions import InvalidParameterError, ParaxialConstraintError, PhysicsDomainError
from core.models import PhysicalConstants, QuadratureSpec
from domain.entities.grid import TransverseGrid
from domain.entities.optics import KernelValue
from domain.physics.dispersion import frequency_arrays, q_for_theta
from domain.physics.polarization import (
    amplitude_weight,
    slowly_varying_field,
    slowly_varying_phase,
    zeroth_order_field,
)
from utils.logger import get_logger

logger = get_logger(__name__)

Point = Tuple[float, float]


# ===== 구적 격자 =====
def quadrature_axis(quad: QuadratureSpec) -> np.ndarray:
    """q_a = (a − n_q/2)·Δq"""
    return (np.arange(quad.n_q) - quad.n_q // 2) * quad.dq


def spectral_window(q: np.ndarray, quad: QuadratureSpec,
                    taper_fraction: Optional[float] = None) -> np.ndarray:
    """
    원판 지시함수 × (선택) 코사인 테이퍼

    Args:
        q: 횡 파수 크기 배열
        quad: 구적 사양 (window 가 NONE 이면 지시함수만)
        taper_fraction: 테이퍼 폭 비율 (None이면 settings)

    Returns:
        np.ndarray: [0, 1] 실수 배열
    """
    inside = (q < quad.q_max).astype(float)
    if quad.window == TaperWindow.NONE:
        return inside

    fraction = taper_fraction if taper_fraction is not None else get_settings().kernel_taper_fraction
    q1 = (1.0 - fraction) * quad.q_max
    ramp = 0.5 * (1.0 + np.cos(np.pi * (q - q1) / (quad.q_max - q1)))
    return inside * np.where(q <= q1, 1.0, ramp)


def _quadrature_mesh(quad: QuadratureSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    axis = quadrature_axis(quad)
    qx, qy = np.meshgrid(axis, axis, indexing="xy")
    return qx, qy, np.hypot(qx, qy)


def _check_domain(quad: QuadratureSpec, omega: float, model: PropagationModel,
                  consts: PhysicalConstants, settings: Settings) -> None:
    if not omega > 0:
        raise PhysicsDomainError("omega는 양수여야 합니다", {"omega": omega})
    theta_max, _ = frequency_arrays(quad.q_max, omega, consts)
    if theta_max > 1.0:
        raise ParaxialConstraintError("Θ(q_max, ω) > 1", {"q_max": quad.q_max, "Theta": theta_max})
    if model == PropagationModel.PARAXIAL:
        q_paraxial = omega / consts.c
        if quad.q_max > SQRT2 * q_paraxial:
            raise ParaxialConstraintError(
                "beyond paraxial constraint ϑ ≤ 1",
                {"q_max": quad.q_max, "omega_over_c": q_paraxial}
            )
        if quad.q_max >= q_paraxial:
            details = {"q_max": quad.q_max, "omega_over_c": q_paraxial}
            if settings.paraxial_region_policy == "raise":
                raise ParaxialConstraintError("q_max ≥ ω/c: outside the paraxial region", details)
            logger.warning(f"q_max ≥ ω/c: 근축 영역 𝒞_ω 밖 (q_max={quad.q_max:.6g})")


def phase_under_resolved(quad: QuadratureSpec, omega: float, z: float,
                         model: PropagationModel,
                         constants: Optional[PhysicalConstants] = None) -> bool:
    """
    Fresnel 위상 q²cz/(2Ω₀) 이 q_max 에서 인접 샘플 간 π 이상 변하면 True

    Paraxial 모델은 Ω₀ 대신 ω
    """
    consts = constants if constants is not None else get_constants()
    if model == PropagationModel.EXACT:
        _, scale = frequency_arrays(quad.q_max, omega, consts)
    else:
        scale = omega
    step = consts.c * abs(z) / scale * quad.q_max * quad.dq
    return bool(step >= np.pi)


def _spectral_amplitudes(quad: QuadratureSpec, omega: float, z: float, t: float,
                         polarization: Optional[int], model: PropagationModel,
                         consts: PhysicalConstants, settings: Settings) -> np.ndarray:
    """
    구적 가중치 Δq²/(2π)² 를 포함한 스펙트럼 진폭 S_c(q), (C, n_q, n_q)

    polarization 이 None 이면 편광을 제거한 스칼라 (C = 1)
    """
    qx, qy, q = _quadrature_mesh(quad)
    window = spectral_window(q, quad, settings.kernel_taper_fraction)
    measure = quad.dq ** 2 / (2.0 * np.pi) ** 2

    if model == PropagationModel.EXACT:
        _, omega0 = frequency_arrays(q, omega, consts)
        fresnel = np.exp(-1j * q ** 2 * consts.c * z / (2.0 * omega0))
        if polarization is None:
            # 편광 방향만 제거 (가중치/위상은 유지)
            scalar = amplitude_weight(q, omega, consts) * slowly_varying_phase(q, omega, z, t, consts)
            vec = scalar[np.newaxis]
        else:
            vec = slowly_varying_field(qx, qy, omega, z, t, polarization, consts)
    else:
        fresnel = np.exp(-1j * q ** 2 * consts.c * z / (2.0 * omega))
        if polarization is None:
            vec = np.ones((1,) + q.shape)
        else:
            vec = zeroth_order_field(qx, qy, polarization)

    return vec * (measure * window * fresnel)[np.newaxis]


def _synthesize(amplitudes: np.ndarray, axis: np.ndarray,
                xs: np.ndarray, ys: np.ndarray, x_src: Point) -> np.ndarray:
    """
    행렬 Fourier 합성: out[c, i, j] = Σ_ab Ey[i, a]·S_c[a, b]·Ex[j, b]

    Args:
        amplitudes: (C, n, n): 행 a 는 qy, 열 b 는 qx
        axis: 구적 축
        xs, ys: 출력 x, y 좌표 (1D)
        x_src: 소스 위치

    Returns:
        np.ndarray: (C, len(ys), len(xs))
    """
    ex = np.exp(1j * np.outer(np.asarray(xs, dtype=float) - x_src[0], axis))
    ey = np.exp(1j * np.outer(np.asarray(ys, dtype=float) - x_src[1], axis))
    return np.stack([ey @ component @ ex.T for component in amplitudes])


def _resolve(constants: Optional[PhysicalConstants],
             settings: Optional[Settings]) -> Tuple[PhysicalConstants, Settings]:
    consts = constants if constants is not None else get_constants()
    return consts, settings if settings is not None else get_settings()


def _evaluate(x: Point, z: float, x_src: Point, omega: float, t: float,
              polarization: Optional[int], quad: QuadratureSpec,
              model: PropagationModel, constants: Optional[PhysicalConstants],
              settings: Optional[Settings]) -> KernelValue:
    consts, settings = _resolve(constants, settings)
    _check_domain(quad, omega, model, consts, settings)

    amplitudes = _spectral_amplitudes(quad, omega, z, t, polarization, model, consts, settings)
    value = _synthesize(amplitudes, quadrature_axis(quad), [x[0]], [x[1]], x_src)[:, 0, 0]

    flagged = phase_under_resolved(quad, omega, z, model, consts)
    if flagged:
        logger.warning(
            f"구적 위상 해상도 부족 | model={model.value} z={z:.6g} n_q={quad.n_q} q_max={quad.q_max:.6g}"
        )

    return KernelValue(
        value=value,
        x=(float(x[0]), float(x[1])),
        z=float(z),
        x_src=(float(x_src[0]), float(x_src[1])),
        omega=float(omega),
        t=float(t),
        polarization=Polarization(polarization) if polarization is not None else Polarization.FIRST,
        model=model,
        under_resolved=flagged,
    )


# ===== 커널 =====
def mp_kernel(x: Point, z: float, x_src: Point, omega: float, t: float, polarization: int,
              quad: QuadratureSpec,
              constants: Optional[PhysicalConstants] = None,
              settings: Optional[Settings] = None) -> KernelValue:
    """
    Maxwell-paraxial 커널

    F⁽λ⁾ = (2π)⁻² ∫_{q<q_max} d²q 𝓔⁽λ⁾(q, ω, z, t) exp[i q·(x − x_src) − i q²cz/(2Ω₀)]

    t = 0 에서는 𝓔 의 z 위상과 Fresnel 위상이 정확히 상쇄되어 z 에 무관
    지연 시간 t = z/c 에서 근축 Green 함수와 O(Θ²) 범위로 일치

    Args:
        x: 관측 위치 (m)
        z: 전파 거리 (m)
        x_src: 소스 위치 (m)
        omega: 각주파수 (rad/s)
        t: 시간 (s)
        polarization: λ
        quad: 구적 사양
        constants: 물리 상수
        settings: 설정 (테이퍼 폭)

    Returns:
        KernelValue: 복소 3-벡터 (under_resolved 플래그 포함)

    Raises:
        ParaxialConstraintError: Θ(q_max, ω) > 1
    """
    return _evaluate(x, z, x_src, omega, t, polarization, quad, PropagationModel.EXACT, constants, settings)


def paraxial_green(x: Point, z: float, x_src: Point, omega: float, polarization: int,
                   quad: QuadratureSpec,
                   constants: Optional[PhysicalConstants] = None,
                   settings: Optional[Settings] = None) -> KernelValue:
    """
    근축 Green 함수

    P⁽λ⁾ = ∫_{𝒞_ω} d²q/(2π)² e⁽λ⁾(q) exp[i q·(x − x_src) − i q²cz/(2ω)]

    Raises:
        ParaxialConstraintError: q_max > √2·ω/c, 또는 paraxial_region_policy="raise" 에서 q_max ≥ ω/c
    """
    return _evaluate(x, z, x_src, omega, 0.0, polarization, quad, PropagationModel.PARAXIAL, constants, settings)


def scalar_paraxial_green(x: Point, z: float, x_src: Point, omega: float,
                          quad: QuadratureSpec,
                          constants: Optional[PhysicalConstants] = None,
                          settings: Optional[Settings] = None) -> complex:
    """편광을 1로 바꾼 근축 Green 함수 (Fresnel 오라클 비교용)"""
    value = _evaluate(x, z, x_src, omega, 0.0, None, quad, PropagationModel.PARAXIAL, constants, settings)
    return complex(value.value[0])


def fresnel_kernel(x: Point, z: float, x_src: Point, omega: float,
                   constants: Optional[PhysicalConstants] = None) -> complex:
    """
    해석적 Fresnel 커널 ω/(2πicz)·exp[iω|x − x_src|²/(2cz)]

    Raises:
        InvalidParameterError: z = 0
    """
    if z == 0:
        raise InvalidParameterError("Fresnel 커널은 z ≠ 0 에서만 정의됩니다")
    c = (constants if constants is not None else get_constants()).c
    r2 = (x[0] - x_src[0]) ** 2 + (x[1] - x_src[1]) ** 2
    return complex(omega / (2j * np.pi * c * z) * np.exp(1j * omega * r2 / (2.0 * c * z)))


def fresnel_distance(q_max: float, omega: float, phase: float,
                     constants: Optional[PhysicalConstants] = None) -> float:
    """창 가장자리 근축 Fresnel 위상 q_max²cz/(2ω) 이 phase 가 되는 z"""
    c = (constants if constants is not None else get_constants()).c
    return float(2.0 * omega * phase / (c * q_max ** 2))


def kernel_map(grid: TransverseGrid, z: float, x_src: Point, omega: float, t: float,
               polarization: Optional[int], quad: QuadratureSpec,
               model: PropagationModel = PropagationModel.EXACT,
               constants: Optional[PhysicalConstants] = None,
               settings: Optional[Settings] = None) -> np.ndarray:
    """
    격자 전체의 커널 값

    Args:
        grid: 출력 격자
        polarization: λ (None이면 스칼라)
        model: EXACT → F⁽λ⁾, PARAXIAL → P⁽λ⁾

    Returns:
        np.ndarray: (C, ny, nx) 복소 배열 (C = 3, 스칼라면 1)
    """
    consts, settings = _resolve(constants, settings)
    _check_domain(quad, omega, model, consts, settings)
    if model == PropagationModel.PARAXIAL:
        t = 0.0
    amplitudes = _spectral_amplitudes(quad, omega, z, t, polarization, model, consts, settings)
    logger.debug(f"커널 맵 합성 | grid={grid.describe()} n_q={quad.n_q} model={model.value}")
    return _synthesize(amplitudes, quadrature_axis(quad), grid.x, grid.y, x_src)


def mp_kernel_cauchy(x: Point, z: float, x_src: Point, omega: float, t: float, polarization: int,
                     quad: QuadratureSpec,
                     constants: Optional[PhysicalConstants] = None,
                     settings: Optional[Settings] = None) -> Dict[str, object]:
    """
    n_q 와 2·n_q 구적의 Cauchy 차이

    Returns:
        dict: coarse, fine (KernelValue), difference (상대 차이)
    """
    coarse = mp_kernel(x, z, x_src, omega, t, polarization, quad, constants, settings)
    fine = mp_kernel(x, z, x_src, omega, t, polarization, quad.refined(), constants, settings)
    scale = max(np.linalg.norm(fine.value), np.finfo(float).tiny)
    difference = float(np.linalg.norm(fine.value - coarse.value) / scale)
    logger.debug(f"Cauchy 차이 n_q={quad.n_q}→{2 * quad.n_q}: {difference:.3e}")
    return {"coarse": coarse, "fine": fine, "difference": difference}


# ===== 준직교성 =====
def orthogonality_weight(q, omega: float, constants: Optional[PhysicalConstants] = None):
    """W(q, ω) = (ω²/Ω₀² / ((1+Θ⁴)(1+Θ²)⁴))^{1/2} = w(q, ω)²"""
    weight = np.asarray(amplitude_weight(q, omega, constants)) ** 2
    return float(weight) if weight.ndim == 0 else weight


def orthogonality_integral(x1: Point, x2: Point, omega: float, quad: QuadratureSpec,
                           force_unit_weight: bool = False,
                           constants: Optional[PhysicalConstants] = None,
                           settings: Optional[Settings] = None) -> complex:
    """
    준직교 적분 (2π)⁻² ∫ d²q W(q, ω)·T(q)²·exp[i q·(x1 − x2)]

    Hermitian 쌍 ∫d²x F⁽λ⁾(x; x1)*·F⁽λ⁾(x; x2) 와 같은 값
    (T = 창 함수, 커널 두 개에 각각 한 번씩 적용되므로 제곱)

    Args:
        x1, x2: 소스 위치
        omega: 각주파수
        quad: 구적 사양
        force_unit_weight: True면 W ≡ 1
        constants: 물리 상수
        settings: 설정 (테이퍼 폭)

    Returns:
        complex
    """
    consts, settings = _resolve(constants, settings)
    _check_domain(quad, omega, PropagationModel.EXACT, consts, settings)

    qx, qy, q = _quadrature_mesh(quad)
    weight = np.ones_like(q) if force_unit_weight else orthogonality_weight(q, omega, consts)
    window = spectral_window(q, quad, settings.kernel_taper_fraction) ** 2
    amplitudes = (quad.dq ** 2 / (2.0 * np.pi) ** 2 * weight * window)[np.newaxis]
    separation = (x1[0] - x2[0], x1[1] - x2[1])
    value = _synthesize(amplitudes, quadrature_axis(quad), [separation[0]], [separation[1]], (0.0, 0.0))
    return complex(value[0, 0, 0])


def weighted_pairing_bruteforce(x1: Point, x2: Point, omega: float, quad: QuadratureSpec,
                                polarization: int = Polarization.FIRST,
                                other_polarization: Optional[int] = None,
                                z: float = 0.0, t: float = 0.0,
                                constants: Optional[PhysicalConstants] = None,
                                settings: Optional[Settings] = None) -> complex:
    """
    공간 구적 Σ_x Σ_c F⁽λ⁾_c(x; x1)*·F⁽μ⁾_c(x; x2)·dx²

    구적과 정확히 FFT 공액인 격자 (dx = π/q_max, n_q 점) 위에서 계산하므로
    이산 Parseval 이 정확히 성립
    """
    mu = polarization if other_polarization is None else other_polarization
    grid = TransverseGrid.conjugate_to(quad)
    first = kernel_map(grid, z, x1, omega, t, polarization, quad, PropagationModel.EXACT, constants, settings)
    second = kernel_map(grid, z, x2, omega, t, mu, quad, PropagationModel.EXACT, constants, settings)
    return complex(np.sum(np.conj(first) * second) * grid.cell_area)


# ===== 협폭 빔 극한 =====
def narrow_beam_discrepancy(theta_max: float, omega: float, n_q: int = 64,
                            polarization: int = Polarization.SECOND,
                            z: float = 0.0, t: float = 0.0,
                            window: TaperWindow = TaperWindow.NONE,
                            constants: Optional[PhysicalConstants] = None,
                            settings: Optional[Settings] = None) -> float:
    """
    ‖F⁽λ⁾ − P⁽λ⁾‖ / ‖P⁽λ⁾‖ (구적 공액 창 전체)

    q_max 는 Θ(q_max, ω) = theta_max 가 되도록 선택
    λ = 2 에서는 편광 방향이 같아 차이가 가중치 w − 1 와 위상차로만 생김
    - z = 0, t = 0: w − 1 = O(Θ²)
    - 지연 시간 t = z/c: 위상차 ≈ Θ²·q²cz/(4ω), z 를 fresnel_distance 로 고정하면 O(Θ²)
    (λ = 1 은 ε⁽¹⁾ 의 z 성분 때문에 O(Θ))

    Args:
        theta_max: Θ_max ∈ (0, 1)
        omega: 각주파수
        n_q: 축당 구적 점 수
        polarization: λ
        z, t: 평가 평면과 시간
        window: 창 함수

    Returns:
        float: 상대 L2 차이
    """
    consts, settings = _resolve(constants, settings)
    q_max = q_for_theta(theta_max, omega, consts)
    quad = QuadratureSpec(q_max=q_max, n_q=n_q, window=window)
    grid = TransverseGrid.conjugate_to(quad)

    exact = kernel_map(grid, z, (0.0, 0.0), omega, t, polarization, quad,
                       PropagationModel.EXACT, consts, settings)
    paraxial = kernel_map(grid, z, (0.0, 0.0), omega, 0.0, polarization, quad,
                          PropagationModel.PARAXIAL, consts, settings)
    discrepancy = float(np.linalg.norm(exact - paraxial) / np.linalg.norm(paraxial))
    logger.debug(f"협폭 빔 차이 Θ_max={theta_max:.3g} z={z:.6g} t={t:.6g}: {discrepancy:.3e}")
    return discrepancy


def relative_kernel_error(values: Sequence[complex], references: Sequence[complex]) -> float:
    """점별 상대 오차의 최댓값 max|v − r|/|r|"""
    values = np.asarray(values, dtype=complex)
    references = np.asarray(references, dtype=complex)
    return float(np.max(np.abs(values - references) / np.abs(references)))
