"""
MPQ 광학 값 객체

편광 기저, 느리게 변하는 편광 벡터, 커널 값, 광자 파동함수, 모드 계수
"""
from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple, Union

import numpy as np

from core.enums import ModeFamily, Polarization, PropagationModel
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope


@dataclass(frozen=True, eq=False)
class PolarizationBasis:
    """
    정확한 횡 편광 기저 ε⁽¹⁾, ε⁽²⁾ (실수 3-벡터)

    (ε⁽¹⁾, ε⁽²⁾, k̂) 는 오른손 좌표계: ε⁽¹⁾ × ε⁽²⁾ = k̂
    """
    eps1: np.ndarray
    eps2: np.ndarray
    q_hat: np.ndarray
    vartheta_like: float

    def eps(self, polarization: int) -> np.ndarray:
        """λ 번째 기저 벡터"""
        return self.eps1 if Polarization(polarization) == Polarization.FIRST else self.eps2


@dataclass(frozen=True, eq=False)
class SlowlyVaryingPolarization:
    """𝓔⁽λ⁾(q, ω, z, t): 진폭 가중치와 위상을 포함한 복소 3-벡터"""
    vec: np.ndarray
    omega: float
    z: float
    t: float

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.vec))


@dataclass(frozen=True, eq=False)
class KernelValue:
    """회절 커널 한 점의 값"""
    value: np.ndarray
    x: Tuple[float, float]
    z: float
    x_src: Tuple[float, float]
    omega: float
    t: float
    polarization: Polarization
    model: PropagationModel
    under_resolved: bool = False

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.value).all())


@dataclass(frozen=True, eq=False)
class PhotonWavefunction:
    """
    단일 광자 MP 파동함수 ψ(x′, z, t) (주파수 슬라이스 하나)

    envelope 가 VectorEnvelope 면 편광 포함, ScalarEnvelope 면 편광 제거 형태
    """
    envelope: Union[ScalarEnvelope, VectorEnvelope]
    polarization: Polarization
    omega: float
    z: float
    t: float
    model: PropagationModel
    physical_slice: bool = False

    @property
    def samples(self) -> np.ndarray:
        return self.envelope.samples

    def norm(self) -> float:
        return self.envelope.norm()


@dataclass
class ModeCoefficients:
    """
    모드 전개 계수

    Attributes:
        family: 모드 계열
        w0: 기저 빔 허리
        order: 절단 차수 N
        coefficients: {(i, j): c} (HG: (n, m), LG: (p, l))
        omega: 원본 필드의 각주파수 (재구성 포락선 태그)
    """
    family: ModeFamily
    w0: float
    order: int
    coefficients: Dict[Tuple[int, int], complex] = field(default_factory=dict)
    omega: float = 1.0

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.coefficients)

    def get(self, indices: Tuple[int, int]) -> complex:
        """계수 조회 (없으면 0)"""
        return self.coefficients.get(tuple(indices), 0j)

    def order_of(self, indices: Tuple[int, int]) -> int:
        """HG: n+m, LG: 2p+|l|"""
        i, j = indices
        if self.family == ModeFamily.LAGUERRE_GAUSSIAN:
            return 2 * i + abs(j)
        return i + j

    def total_power(self) -> float:
        """Σ|c|²"""
        return float(sum(abs(c) ** 2 for c in self.coefficients.values()))

    def truncated(self, order: int) -> "ModeCoefficients":
        """차수 order 이하만 남긴 계수"""
        kept = {
            key: value for key, value in self.coefficients.items()
            if self.order_of(key) <= order
        }
        return ModeCoefficients(self.family, self.w0, order, kept, self.omega)

    def largest(self, count: int = 5) -> Dict[Tuple[int, int], complex]:
        """크기 순 상위 계수"""
        ordered = sorted(self.coefficients.items(), key=lambda item: -abs(item[1]))
        return dict(ordered[:count])
