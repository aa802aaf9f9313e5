"""
MPQ 스펙트럼 변환 모듈

원점 중심 격자용 유니터리 FFT 헬퍼
모든 전파/모드 연산이 이 모듈을 통해 변환
"""
from typing import Optional

import numpy as np
from scipy import fft as sfft

from config.settings import settings

_AXES = (-2, -1)


def _workers(workers: Optional[int]) -> int:
    return workers if workers is not None else settings.threads


def fft2c(samples: np.ndarray, workers: Optional[int] = None) -> np.ndarray:
    """
    원점 중심 유니터리 2D FFT

    인덱스 n/2 가 x = 0 및 q = 0 에 대응 (마지막 두 축에 적용)

    Args:
        samples: (..., ny, nx) 복소 배열
        workers: FFT worker 수 (None이면 settings.threads)

    Returns:
        np.ndarray: 같은 배치의 스펙트럼 (q = 0 이 중앙)
    """
    shifted = sfft.ifftshift(samples, axes=_AXES)
    spectrum = sfft.fft2(shifted, axes=_AXES, norm="ortho", workers=_workers(workers))
    return sfft.fftshift(spectrum, axes=_AXES)


def ifft2c(spectrum: np.ndarray, workers: Optional[int] = None) -> np.ndarray:
    """fft2c의 역변환"""
    shifted = sfft.ifftshift(spectrum, axes=_AXES)
    samples = sfft.ifft2(shifted, axes=_AXES, norm="ortho", workers=_workers(workers))
    return sfft.fftshift(samples, axes=_AXES)


def centered_coordinates(n: int, d: float) -> np.ndarray:
    """x_j = (j − n/2)·d"""
    return (np.arange(n) - n // 2) * d


def centered_wavenumbers(n: int, d: float) -> np.ndarray:
    """fft2c 스펙트럼 배치에 맞는 각파수 (rad/m), 간격 2π/(n·d)"""
    return 2.0 * np.pi * sfft.fftshift(sfft.fftfreq(n, d))
