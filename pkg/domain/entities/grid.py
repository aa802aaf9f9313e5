"""
MPQ 횡 격자 엔티티

원점 중심 좌표 격자와 FFT 공액 스펙트럼 격자
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from core.exceptions import GridMismatchError, InvalidParameterError
from core.models import GridConfig, QuadratureSpec
from utils.spectral import centered_coordinates, centered_wavenumbers


@dataclass(frozen=True)
class TransverseGrid:
    """
    횡 평면 격자

    비즈니스 규칙:
    - nx, ny 는 짝수 (인덱스 n/2 가 x = 0, q = 0)
    - 스펙트럼 간격 Δq = 2π/(n·d), Nyquist q_nyq = π/d
    - 배열 인덱스는 [iy, ix] (행 = y)
    """
    nx: int
    ny: int
    dx: float
    dy: float

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2 or self.nx % 2 or self.ny % 2:
            raise InvalidParameterError(
                "격자 크기는 2 이상의 짝수여야 합니다",
                {"nx": self.nx, "ny": self.ny}
            )
        if not (self.dx > 0 and self.dy > 0) or not np.isfinite([self.dx, self.dy]).all():
            raise InvalidParameterError(
                "격자 간격은 양의 유한값이어야 합니다",
                {"dx": self.dx, "dy": self.dy}
            )

    @classmethod
    def from_config(cls, config: GridConfig) -> "TransverseGrid":
        """GridConfig 에서 생성"""
        return cls(nx=config.nx, ny=config.ny, dx=config.dx, dy=config.dy)

    @classmethod
    def square(cls, n: int, d: float) -> "TransverseGrid":
        """n × n 정사각 격자"""
        return cls(nx=n, ny=n, dx=d, dy=d)

    @classmethod
    def conjugate_to(cls, quad: QuadratureSpec) -> "TransverseGrid":
        """구적 격자와 정확히 FFT 공액인 공간 격자 (dx = π/q_max)"""
        d = np.pi / quad.q_max
        return cls(nx=quad.n_q, ny=quad.n_q, dx=d, dy=d)

    # ===== 좌표 =====
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def cell_area(self) -> float:
        """dx·dy"""
        return self.dx * self.dy

    @cached_property
    def x(self) -> np.ndarray:
        return centered_coordinates(self.nx, self.dx)

    @cached_property
    def y(self) -> np.ndarray:
        return centered_coordinates(self.ny, self.dy)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """(X, Y) 배열, 형태 (ny, nx)"""
        return np.meshgrid(self.x, self.y, indexing="xy")

    # ===== 스펙트럼 =====
    @cached_property
    def qx(self) -> np.ndarray:
        return centered_wavenumbers(self.nx, self.dx)

    @cached_property
    def qy(self) -> np.ndarray:
        return centered_wavenumbers(self.ny, self.dy)

    def q_mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """(QX, QY) 배열, 형태 (ny, nx)"""
        return np.meshgrid(self.qx, self.qy, indexing="xy")

    def q_squared(self) -> np.ndarray:
        qx, qy = self.q_mesh()
        return qx ** 2 + qy ** 2

    @property
    def dqx(self) -> float:
        return 2.0 * np.pi / (self.nx * self.dx)

    @property
    def dqy(self) -> float:
        return 2.0 * np.pi / (self.ny * self.dy)

    @property
    def q_nyquist(self) -> Tuple[float, float]:
        """축별 Nyquist 파수 (π/dx, π/dy)"""
        return (np.pi / self.dx, np.pi / self.dy)

    # ===== 검증 =====
    def require_same(self, other: "TransverseGrid") -> None:
        """같은 격자가 아니면 GridMismatchError"""
        if self != other:
            raise GridMismatchError(
                "격자가 일치하지 않습니다",
                {"left": self.describe(), "right": other.describe()}
            )

    def describe(self) -> dict:
        """헤더/매니페스트용 dict"""
        return {"nx": self.nx, "ny": self.ny, "dx": self.dx, "dy": self.dy}
