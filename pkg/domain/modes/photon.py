"""
MPQ 단일 광자 파동함수 모듈

ψ(x′, z, t) = ∫d²x F⁽λ⁾(x′, z, x, ω, t)·ψ_nm(x, ω) 를 스펙트럼에서 계산
- EXACT: 모드 스펙트럼 × 𝓔⁽λ⁾(q, ω, z, t) × exp(−iq²cz/(2Ω₀))
- PARAXIAL: propagate(make_mode(spec), z, PARAXIAL, λ) 와 같은 경로
"""
from typing import List, Optional, Sequence

import numpy as np

from config.settings import Settings, get_constants, get_settings
from core.enums import Polarization, PropagationModel
from core.models import ModeSpec, PhysicalConstants, QuadratureSpec
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.grid import TransverseGrid
from domain.entities.optics import PhotonWavefunction
from domain.modes.operations import make_mode
from domain.physics.dispersion import frequency_arrays
from domain.physics.kernels import spectral_window
from domain.physics.polarization import amplitude_weight, slowly_varying_field, slowly_varying_phase
from domain.propagation.operations import assemble_monochromatic_field, get_propagator
from utils.logger import get_logger
from utils.spectral import fft2c, ifft2c

logger = get_logger(__name__)


def _exact_wavefunction(mode: ScalarEnvelope, polarization: Polarization, z: float, t: float,
                        quad: Optional[QuadratureSpec], vector: bool,
                        constants: PhysicalConstants, settings: Settings):
    grid = mode.grid
    omega = mode.omega
    propagator = get_propagator(PropagationModel.EXACT, constants, settings)
    propagator.check_finite(mode)

    spectrum = fft2c(mode.samples, workers=settings.threads)
    propagator.check_constraint(spectrum, grid, omega)
    propagator.check_aliasing(spectrum, grid)

    qx, qy = grid.q_mesh()
    q = np.hypot(qx, qy)
    _, omega0 = frequency_arrays(q, omega, constants)
    fresnel = np.exp(-1j * q ** 2 * constants.c * z / (2.0 * omega0))
    if quad is not None:
        fresnel = fresnel * spectral_window(q, quad, settings.kernel_taper_fraction)

    tags = {"omega": omega, "z": z, "t": t, "model": PropagationModel.EXACT}
    if vector:
        factor = slowly_varying_field(qx, qy, omega, z, t, polarization, constants) * fresnel[np.newaxis]
        samples = ifft2c(spectrum[np.newaxis] * factor, workers=settings.threads)
        return VectorEnvelope(grid=grid, samples=samples, **tags)

    factor = amplitude_weight(q, omega, constants) * slowly_varying_phase(q, omega, z, t, constants) * fresnel
    samples = ifft2c(spectrum * factor, workers=settings.threads)
    return ScalarEnvelope(grid=grid, samples=samples, **tags)


def photon_wavefunction(spec: ModeSpec, grid: TransverseGrid, z: float, t: float,
                        model: PropagationModel,
                        quad: Optional[QuadratureSpec] = None,
                        vector: bool = True,
                        physical_slice: bool = False,
                        constants: Optional[PhysicalConstants] = None,
                        settings: Optional[Settings] = None) -> PhotonWavefunction:
    """
    단일 광자 MP 파동함수 (주파수 슬라이스 하나)

    Args:
        spec: 모드 사양 (ω, λ 포함)
        grid: 횡 격자
        z, t: 평가 평면과 시간
        model: EXACT 또는 PARAXIAL
        quad: 지정하면 스펙트럼을 q < q_max (및 창 함수) 로 절단
        vector: False면 편광 방향을 제거한 스칼라 파동함수
        physical_slice: True면 ħ^{1/2}(4πε₀cω)^{−1/2}·e^{−iω(t−z/c)} 를 곱함
        constants: 물리 상수
        settings: 설정

    Returns:
        PhotonWavefunction

    Raises:
        ResolutionError: 모드를 격자가 해상하지 못함
        ParaxialConstraintError / AliasingError: propagate 와 동일
    """
    consts = constants if constants is not None else get_constants()
    settings = settings if settings is not None else get_settings()
    polarization = Polarization(spec.polarization)
    mode = make_mode(spec, grid)

    if PropagationModel(model) == PropagationModel.EXACT:
        envelope = _exact_wavefunction(mode, polarization, z, t, quad, vector, consts, settings)
    else:
        if quad is not None:
            window = spectral_window(np.sqrt(grid.q_squared()), quad, settings.kernel_taper_fraction)
            spectrum = fft2c(mode.samples, workers=settings.threads) * window
            mode = mode.with_samples(ifft2c(spectrum, workers=settings.threads))
        propagator = get_propagator(PropagationModel.PARAXIAL, consts, settings)
        envelope = propagator.propagate(mode, z, polarization if vector else None)
        envelope = envelope.with_samples(envelope.samples, t=t)

    if physical_slice:
        envelope = assemble_monochromatic_field(envelope, spec.omega, z, t, consts)

    logger.debug(
        f"광자 파동함수 | model={PropagationModel(model).value} λ={int(polarization)} "
        f"z={z:.6g} t={t:.6g} norm={envelope.norm():.6g}"
    )
    return PhotonWavefunction(
        envelope=envelope,
        polarization=polarization,
        omega=spec.omega,
        z=z,
        t=t,
        model=PropagationModel(model),
        physical_slice=physical_slice,
    )


def photon_wavefunction_slices(spec: ModeSpec, grid: TransverseGrid, omegas: Sequence[float],
                               z: float, t: float, model: PropagationModel,
                               **kwargs) -> List[PhotonWavefunction]:
    """
    광대역 광자: 주파수별 독립 슬라이스 목록

    각 슬라이스는 spec 의 ω 만 바꿔 photon_wavefunction 으로 계산
    """
    return [
        photon_wavefunction(spec.model_copy(update={"omega": float(omega)}), grid, z, t, model, **kwargs)
        for omega in omegas
    ]
