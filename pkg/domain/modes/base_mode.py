"""
MPQ 모드 계열 베이스 클래스

모든 횡 모드 계열 (Gaussian / HG / LG) 의 기반이 되는 추상 클래스
모드는 허리 평면 z = 0 에서 이산 L2 노름 1 로 샘플링
"""
from abc import ABC, abstractmethod
from typing import List, Tuple

import numpy as np

from core.enums import MIN_EXTENT_PER_WAIST, MIN_SAMPLES_PER_WAIST, ModeFamily
from core.exceptions import InvalidParameterError, ResolutionError
from domain.entities.grid import TransverseGrid
from utils.logger import get_logger

logger = get_logger(__name__)

Indices = Tuple[int, int]


class BaseModeFamily(ABC):
    """
    횡 모드 계열 베이스 클래스

    하위 클래스는 비정규화 프로파일과 차수별 인덱스 열거를 구현
    """

    family: ModeFamily

    def __init__(self, w0: float):
        if not w0 > 0:
            raise InvalidParameterError("w0는 양수여야 합니다", {"w0": w0})
        self.w0 = w0

    # ===== 추상 메서드 (필수 구현) =====
    @abstractmethod
    def profile(self, x: np.ndarray, y: np.ndarray, indices: Indices) -> np.ndarray:
        """
        비정규화 모드 프로파일

        Args:
            x, y: 좌표 메쉬 (ny, nx)
            indices: 계열 인덱스

        Returns:
            np.ndarray: 복소 배열 (ny, nx)
        """
        pass

    @abstractmethod
    def indices_up_to(self, order: int) -> List[Indices]:
        """차수 order 이하의 인덱스 목록 (결정적 순서)"""
        pass

    @abstractmethod
    def order_of(self, indices: Indices) -> int:
        """인덱스의 모드 차수"""
        pass

    # ===== 공통 메서드 =====
    def check_resolution(self, grid: TransverseGrid, order: int = 0) -> None:
        """
        격자 해상도 검사

        - w0 당 최소 8 샘플, 전체 크기 ≥ 4·w0
        - 차수 N: 반폭 ≥ w0(√((2N+1)/2) + 2.5), 국소 파장당 8 샘플

        Raises:
            ResolutionError: 조건 불충족
        """
        spacing = max(grid.dx, grid.dy)
        half_span = min(grid.nx * grid.dx, grid.ny * grid.dy) / 2.0
        turning = self.w0 * (np.sqrt((2 * order + 1) / 2.0) + 2.5)
        max_spacing = 2.0 * np.pi * self.w0 / (np.sqrt(2.0) * np.sqrt(2 * order + 1) * 8.0)

        details = {"w0": self.w0, "order": order, "grid": grid.describe()}
        if self.w0 / spacing < MIN_SAMPLES_PER_WAIST:
            raise ResolutionError("격자가 w0 를 해상하지 못합니다 (w0 당 8 샘플 미만)", details)
        if 2.0 * half_span < MIN_EXTENT_PER_WAIST * self.w0:
            raise ResolutionError("격자 크기가 4·w0 보다 작습니다", details)
        if order > 0 and (half_span < turning or spacing > max_spacing):
            raise ResolutionError(f"격자가 차수 {order} 모드를 해상하지 못합니다", details)

    def sample(self, grid: TransverseGrid, indices: Indices) -> np.ndarray:
        """
        이산 노름 1 로 정규화된 모드 샘플

        Raises:
            ResolutionError: 격자 해상도 부족
        """
        self.check_resolution(grid, self.order_of(indices))
        x, y = grid.mesh()
        values = np.asarray(self.profile(x, y, indices), dtype=np.complex128)
        norm = np.sqrt(np.sum(np.abs(values) ** 2) * grid.cell_area)
        return values / norm

    def basis(self, grid: TransverseGrid, order: int) -> List[Tuple[Indices, np.ndarray]]:
        """차수 order 까지의 (인덱스, 샘플) 목록"""
        self.check_resolution(grid, order)
        return [(indices, self.sample(grid, indices)) for indices in self.indices_up_to(order)]

    def __repr__(self):
        return f"<{self.__class__.__name__}(w0={self.w0})>"
