"""
MPQ Gaussian / Hermite-Gaussian / Laguerre-Gaussian 모드 계열

허리 평면 프로파일 (노름은 샘플링 후 이산 정규화):
- Gaussian: exp(−r²/w0²)
- HG(n, m): H_n(√2x/w0)·H_m(√2y/w0)·exp(−r²/w0²)
- LG(p, l): (√2r/w0)^|l|·L_p^|l|(2r²/w0²)·exp(−r²/w0²)·exp(ilφ)
"""
from typing import List

import numpy as np
from scipy.special import eval_genlaguerre, eval_hermite

from core.enums import ModeFamily
from core.exceptions import InvalidParameterError
from domain.modes.base_mode import BaseModeFamily, Indices


def _envelope(x: np.ndarray, y: np.ndarray, w0: float) -> np.ndarray:
    return np.exp(-(x ** 2 + y ** 2) / w0 ** 2)


class GaussianMode(BaseModeFamily):
    """기본 Gaussian (= HG(0,0) = LG(0,0))"""

    family = ModeFamily.GAUSSIAN

    def profile(self, x, y, indices: Indices) -> np.ndarray:
        if tuple(indices) != (0, 0):
            raise InvalidParameterError("Gaussian 모드는 인덱스 (0, 0) 만 가집니다", {"indices": indices})
        return _envelope(x, y, self.w0)

    def indices_up_to(self, order: int) -> List[Indices]:
        return [(0, 0)]

    def order_of(self, indices: Indices) -> int:
        return 0


class HermiteGaussianMode(BaseModeFamily):
    """Hermite-Gaussian HG(n, m), 차수 n + m"""

    family = ModeFamily.HERMITE_GAUSSIAN

    def profile(self, x, y, indices: Indices) -> np.ndarray:
        n, m = indices
        if n < 0 or m < 0:
            raise InvalidParameterError("HG 인덱스는 음수일 수 없습니다", {"indices": indices})
        scale = np.sqrt(2.0) / self.w0
        return eval_hermite(n, scale * x) * eval_hermite(m, scale * y) * _envelope(x, y, self.w0)

    def indices_up_to(self, order: int) -> List[Indices]:
        return [(n, total - n) for total in range(order + 1) for n in range(total, -1, -1)]

    def order_of(self, indices: Indices) -> int:
        return indices[0] + indices[1]


class LaguerreGaussianMode(BaseModeFamily):
    """Laguerre-Gaussian LG(p, l), 차수 2p + |l|, 회전수 l"""

    family = ModeFamily.LAGUERRE_GAUSSIAN

    def profile(self, x, y, indices: Indices) -> np.ndarray:
        p, l = indices
        if p < 0:
            raise InvalidParameterError("LG 방사 차수 p는 음수일 수 없습니다", {"indices": indices})
        r2 = (x ** 2 + y ** 2) / self.w0 ** 2
        radial = (2.0 * r2) ** (abs(l) / 2.0) * eval_genlaguerre(p, abs(l), 2.0 * r2)
        return radial * np.exp(-r2) * np.exp(1j * l * np.arctan2(y, x))

    def indices_up_to(self, order: int) -> List[Indices]:
        result = []
        for total in range(order + 1):
            for l in range(-total, total + 1):
                if (total - abs(l)) % 2 == 0:
                    result.append(((total - abs(l)) // 2, l))
        return result

    def order_of(self, indices: Indices) -> int:
        return 2 * indices[0] + abs(indices[1])
