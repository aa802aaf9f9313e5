"""
MPQ 포락선 필드 엔티티

횡 격자 위에 샘플링된 스칼라/벡터 포락선
값은 불변 (쓰기 금지 버퍼), 연산 결과는 항상 새 객체
"""
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from core.enums import PropagationModel
from core.exceptions import GridMismatchError, InvalidParameterError
from domain.entities.grid import TransverseGrid


def _frozen_copy(samples: np.ndarray, shape: tuple) -> np.ndarray:
    array = np.array(samples, dtype=np.complex128, copy=True)
    if array.shape != shape:
        raise InvalidParameterError(
            "샘플 배열 형태가 격자와 맞지 않습니다",
            {"expected": shape, "actual": array.shape}
        )
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScalarEnvelope:
    """
    스칼라 포락선 Ψ(x, y)

    Attributes:
        grid: 횡 격자
        samples: (ny, nx) 복소 샘플
        omega: 반송파 각주파수 (rad/s); k0 = ω/c
        z: 누적 전파 거리 (m)
        t: 시간 (s)
        model: 마지막으로 적용된 전파 모델 (None이면 생성 직후)
    """
    grid: TransverseGrid
    samples: np.ndarray
    omega: float
    z: float = 0.0
    t: float = 0.0
    model: Optional[PropagationModel] = None

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen_copy(self.samples, self.grid.shape))
        if not self.omega > 0:
            raise InvalidParameterError("omega는 양수여야 합니다", {"omega": self.omega})

    @property
    def components(self) -> int:
        return 1

    def norm(self) -> float:
        """이산 L2 노름 √(Σ|Ψ|²·dx·dy)"""
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.grid.cell_area))

    def with_samples(self, samples: np.ndarray, **updates) -> "ScalarEnvelope":
        """샘플(및 태그)만 바꾼 새 포락선"""
        return replace(self, samples=samples, **updates)

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.samples).all())


@dataclass(frozen=True, eq=False)
class VectorEnvelope:
    """
    3성분 (x, y, z) 벡터 포락선

    세 성분이 같은 격자와 태그를 공유하도록 (3, ny, nx) 배열 하나로 보관
    """
    grid: TransverseGrid
    samples: np.ndarray
    omega: float
    z: float = 0.0
    t: float = 0.0
    model: Optional[PropagationModel] = None

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen_copy(self.samples, (3,) + self.grid.shape))
        if not self.omega > 0:
            raise InvalidParameterError("omega는 양수여야 합니다", {"omega": self.omega})

    @classmethod
    def from_components(cls, components: Sequence[ScalarEnvelope]) -> "VectorEnvelope":
        """세 스칼라 성분에서 생성 (격자/태그 일치 필수)"""
        if len(components) != 3:
            raise InvalidParameterError("벡터 포락선은 세 성분이 필요합니다", {"given": len(components)})
        first = components[0]
        for other in components[1:]:
            if other.grid != first.grid:
                raise GridMismatchError("성분 격자가 다릅니다", {"grid": first.grid.describe()})
            if (other.omega, other.z, other.t, other.model) != (first.omega, first.z, first.t, first.model):
                raise InvalidParameterError("성분 태그가 다릅니다")
        return cls(
            grid=first.grid,
            samples=np.stack([c.samples for c in components]),
            omega=first.omega,
            z=first.z,
            t=first.t,
            model=first.model,
        )

    @property
    def components(self) -> int:
        return 3

    def component(self, index: int) -> ScalarEnvelope:
        """Cartesian 성분 (0: x, 1: y, 2: z)"""
        return ScalarEnvelope(
            grid=self.grid,
            samples=self.samples[index],
            omega=self.omega,
            z=self.z,
            t=self.t,
            model=self.model,
        )

    def norm(self) -> float:
        """이산 L2 노름 √(Σ|A|²·dx·dy)"""
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.grid.cell_area))

    def with_samples(self, samples: np.ndarray, **updates) -> "VectorEnvelope":
        return replace(self, samples=samples, **updates)

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.samples).all())

