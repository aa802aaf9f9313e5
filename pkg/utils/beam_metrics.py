"""
MPQ 빔 측정 유틸리티

노름, 상대 L2 오차, 2차 모멘트 폭, 중심, 피크 위치, 위상 회전수
"""
from typing import Tuple, Union

import numpy as np
from scipy.ndimage import map_coordinates

from core.exceptions import GridMismatchError, InvalidParameterError
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope

Envelope = Union[ScalarEnvelope, VectorEnvelope]


def _intensity(envelope: Envelope) -> np.ndarray:
    intensity = np.abs(envelope.samples) ** 2
    return intensity.sum(axis=0) if intensity.ndim == 3 else intensity


def l2_norm(envelope: Envelope) -> float:
    """√(Σ|Ψ|²·dx·dy)"""
    return envelope.norm()


def relative_l2(value: Envelope, reference: Envelope) -> float:
    """
    ‖value − reference‖ / ‖reference‖

    Raises:
        GridMismatchError: 격자 불일치
    """
    if value.grid != reference.grid:
        raise GridMismatchError("격자가 일치하지 않습니다", {"value": value.grid.describe()})
    diff = np.sqrt(np.sum(np.abs(value.samples - reference.samples) ** 2))
    ref = np.sqrt(np.sum(np.abs(reference.samples) ** 2))
    if ref == 0:
        raise InvalidParameterError("기준 필드의 노름이 0입니다")
    return float(diff / ref)


def centroid(envelope: Envelope) -> Tuple[float, float]:
    """강도 가중 중심 (x̄, ȳ)"""
    intensity = _intensity(envelope)
    total = intensity.sum()
    x, y = envelope.grid.mesh()
    return float((intensity * x).sum() / total), float((intensity * y).sum() / total)


def second_moment_width(envelope: Envelope, axis: str = "x") -> float:
    """
    2차 모멘트 폭 2√⟨(x − x̄)²⟩

    Gaussian 에서는 1/e² 강도 반경 w 와 같음
    """
    if axis not in ("x", "y"):
        raise InvalidParameterError("axis는 'x' 또는 'y' 입니다", {"axis": axis})
    intensity = _intensity(envelope)
    total = intensity.sum()
    x, y = envelope.grid.mesh()
    coord = x if axis == "x" else y
    mean = (intensity * coord).sum() / total
    variance = (intensity * (coord - mean) ** 2).sum() / total
    return float(2.0 * np.sqrt(variance))


def peak_position(envelope: Envelope) -> Tuple[float, float]:
    """최대 강도 샘플 위치 (x, y)"""
    intensity = _intensity(envelope)
    iy, ix = np.unravel_index(int(np.argmax(intensity)), intensity.shape)
    return float(envelope.grid.x[ix]), float(envelope.grid.y[iy])


def winding_number(envelope: ScalarEnvelope, radius: float,
                   center: Tuple[float, float] = (0.0, 0.0), samples: int = 64) -> int:
    """
    원 위의 위상 회전수

    반지름 radius 의 원을 3차 스플라인으로 보간 샘플링하고
    래핑된 위상차를 합산해 2π 로 나눔

    Args:
        envelope: 스칼라 포락선
        radius: 원 반지름 (m)
        center: 원 중심 (m)
        samples: 원 위 샘플 수

    Returns:
        int: 회전수 (LG(p, l) 이면 l)
    """
    grid = envelope.grid
    phi = 2.0 * np.pi * np.arange(samples) / samples
    cols = (center[0] + radius * np.cos(phi)) / grid.dx + grid.nx // 2
    rows = (center[1] + radius * np.sin(phi)) / grid.dy + grid.ny // 2
    if cols.min() < 0 or rows.min() < 0 or cols.max() > grid.nx - 1 or rows.max() > grid.ny - 1:
        raise InvalidParameterError("원이 격자 밖으로 나갑니다", {"radius": radius, "center": center})

    coords = np.vstack([rows, cols])
    real = map_coordinates(envelope.samples.real, coords, order=3)
    imag = map_coordinates(envelope.samples.imag, coords, order=3)
    phase = np.angle(real + 1j * imag)
    steps = np.angle(np.exp(1j * np.diff(np.append(phase, phase[0]))))
    return int(np.rint(steps.sum() / (2.0 * np.pi)))
