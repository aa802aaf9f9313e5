"""
MPQ Pydantic DTO 모델

물리 파라미터 값 객체 및 CLI 실행 설정
라이브러리와 CLI에서 공통 사용
"""
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.enums import (
    MIN_QUADRATURE_SAMPLES,
    ModeFamily,
    Polarization,
    PropagationModel,
    TaperWindow,
)


# ===== 공통 베이스 모델 =====
class MPQBaseModel(BaseModel):
    """MPQ 공통 베이스 모델"""
    model_config = ConfigDict(
        use_enum_values=False,
        validate_assignment=True,
        extra="forbid",
    )


class MPQValueModel(MPQBaseModel):
    """불변 값 객체"""
    model_config = ConfigDict(
        use_enum_values=False,
        frozen=True,
        extra="forbid",
    )


# ===== 물리 상수 / 반송파 =====
class PhysicalConstants(MPQValueModel):
    """물리 상수 (기본값은 CODATA SI)"""
    c: float = Field(default=299792458.0, gt=0, description="광속 (m/s)")
    hbar: float = Field(default=1.054571817e-34, gt=0, description="환산 플랑크 상수 (J·s)")
    eps0: float = Field(default=8.8541878128e-12, gt=0, description="진공 유전율 (F/m)")

    @classmethod
    def dimensionless(cls) -> "PhysicalConstants":
        """c = ħ = ε₀ = 1 단위계"""
        return cls(c=1.0, hbar=1.0, eps0=1.0)


class CarrierParams(MPQValueModel):
    """반송파 평면파 파라미터"""
    k0: float = Field(..., gt=0, description="반송파 파수 (rad/m)")
    omega0: float = Field(..., gt=0, description="반송파 각주파수 (rad/s), c·k0")


class QuantizationConfig(MPQValueModel):
    """z 방향 양자화 길이"""
    L: float = Field(..., gt=0, description="양자화 길이 (m)")


# ===== 스펙트럼 점 =====
class DispersionPoint(MPQValueModel):
    """단색 반송파 기준 스펙트럼 점 (q, ϑ, ζ)"""
    q: float = Field(..., ge=0, description="횡 파수 크기 (rad/m)")
    vartheta: float = Field(..., ge=0, le=1, description="발산 파라미터 ϑ = q/(√2·k0)")
    zeta: float = Field(..., ge=0, description="종 파수 ζ = k0(1 − ϑ²) (rad/m)")


class FrequencyPoint(MPQValueModel):
    """주파수 영역 스펙트럼 점 (q, ω, Θ, Ω₀)"""
    q: float = Field(..., ge=0, description="횡 파수 (rad/m)")
    omega: float = Field(..., gt=0, description="각주파수 (rad/s)")
    Theta: float = Field(..., ge=0, le=1, description="Θ (무차원)")
    Omega0: float = Field(..., gt=0, description="Ω₀ (rad/s)")


# ===== 구적 / 모드 사양 =====
class QuadratureSpec(MPQValueModel):
    """
    2D 스펙트럼 구적 사양

    격자: q_a = (a − n_q/2)·Δq, Δq = 2·q_max/n_q, 원판 지시함수 q < q_max
    """
    q_max: float = Field(..., gt=0, description="스펙트럼 절단 (rad/m)")
    n_q: int = Field(default=256, description="축당 샘플 수")
    window: TaperWindow = Field(default=TaperWindow.NONE, description="절단 창 함수")

    @field_validator("n_q")
    @classmethod
    def validate_n_q(cls, v: int) -> int:
        """샘플 수 검증 (짝수, 최소 16)"""
        if v < MIN_QUADRATURE_SAMPLES or v % 2:
            raise ValueError(f"n_q는 {MIN_QUADRATURE_SAMPLES} 이상의 짝수여야 합니다")
        return v

    @property
    def dq(self) -> float:
        """스펙트럼 샘플 간격"""
        return 2.0 * self.q_max / self.n_q

    def refined(self) -> "QuadratureSpec":
        """n_q를 두 배로 늘린 사양 (Cauchy 수렴 검사용)"""
        return self.model_copy(update={"n_q": 2 * self.n_q})


class ModeSpec(MPQValueModel):
    """빔 모드 사양 (Gaussian / HG(n,m) / LG(p,l))"""
    family: ModeFamily = Field(default=ModeFamily.GAUSSIAN, description="모드 계열")
    w0: float = Field(..., gt=0, description="빔 허리 (m)")
    omega: float = Field(..., gt=0, description="각주파수 (rad/s)")
    polarization: Polarization = Field(default=Polarization.FIRST, description="편광 λ")
    n: int = Field(default=0, ge=0, description="HG x 차수")
    m: int = Field(default=0, ge=0, description="HG y 차수")
    p: int = Field(default=0, ge=0, description="LG 방사 차수")
    l: int = Field(default=0, description="LG 방위 차수 (음수 허용)")

    @model_validator(mode="after")
    def validate_indices(self) -> "ModeSpec":
        """계열에 맞지 않는 인덱스 검증"""
        if self.family == ModeFamily.GAUSSIAN and any((self.n, self.m, self.p, self.l)):
            raise ValueError("Gaussian 모드는 인덱스를 가질 수 없습니다")
        if self.family == ModeFamily.HERMITE_GAUSSIAN and (self.p or self.l):
            raise ValueError("HG 모드는 (n, m) 인덱스만 사용합니다")
        if self.family == ModeFamily.LAGUERRE_GAUSSIAN and (self.n or self.m):
            raise ValueError("LG 모드는 (p, l) 인덱스만 사용합니다")
        return self

    @property
    def indices(self) -> Tuple[int, int]:
        """계열별 인덱스 쌍"""
        if self.family == ModeFamily.LAGUERRE_GAUSSIAN:
            return (self.p, self.l)
        return (self.n, self.m)

    @property
    def order(self) -> int:
        """모드 차수 (HG: n+m, LG: 2p+|l|)"""
        if self.family == ModeFamily.LAGUERRE_GAUSSIAN:
            return 2 * self.p + abs(self.l)
        return self.n + self.m


# ===== CLI 실행 설정 =====
class GridConfig(MPQBaseModel):
    """횡 격자 설정"""
    nx: int = Field(default=256, ge=2, description="x 샘플 수")
    ny: int = Field(..., ge=2, description="y 샘플 수, 생략하면 nx")
    dx: float = Field(..., gt=0, description="x 간격 (m)")
    dy: float = Field(..., gt=0, description="y 간격 (m), 생략하면 dx")

    @model_validator(mode="before")
    @classmethod
    def default_square(cls, data):
        """ny, dy 생략 시 정사각 격자"""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if data.get("ny") is None:
            data["ny"] = data.get("nx") if data.get("nx") is not None else 256
        if data.get("dy") is None and "dx" in data:
            data["dy"] = data["dx"]
        return data


class DispersionRunConfig(MPQBaseModel):
    """dispersion 명령 설정"""
    k0: float = Field(..., gt=0, description="반송파 파수 (rad/m); ω = c·k0")
    q_min: float = Field(default=0.0, ge=0, description="q 시작값")
    q_max: float = Field(..., ge=0, description="q 끝값")
    n_points: int = Field(default=11, ge=1, description="행 수")
    L: Optional[float] = Field(default=None, gt=0, description="양자화 길이 (n(ϑ) 열 추가)")

    @model_validator(mode="after")
    def validate_range(self) -> "DispersionRunConfig":
        """범위 순서 검증"""
        if self.q_max < self.q_min:
            raise ValueError("q_max는 q_min 이상이어야 합니다")
        return self


class PropagateRunConfig(MPQBaseModel):
    """propagate 명령 설정"""
    grid: GridConfig
    mode: ModeSpec
    model: PropagationModel = Field(default=PropagationModel.PARAXIAL)
    z_planes: List[float] = Field(default_factory=lambda: [0.0], min_length=1)
    promote_polarization: bool = Field(default=False, description="𝓔⁽λ⁾ 벡터 승격")


class CompareRunConfig(MPQBaseModel):
    """compare 명령 설정"""
    grid: GridConfig
    mode: ModeSpec
    z: float = Field(..., description="전파 거리 (m)")


class KernelRunConfig(MPQBaseModel):
    """kernel 명령 설정"""
    omega: float = Field(..., gt=0)
    quad: QuadratureSpec
    model: PropagationModel = Field(default=PropagationModel.EXACT)
    polarization: Polarization = Field(default=Polarization.FIRST)
    points: List[Tuple[float, float]] = Field(default_factory=lambda: [(0.0, 0.0)], min_length=1)
    x_src: Tuple[float, float] = Field(default=(0.0, 0.0))
    z: float = Field(default=0.0)
    t: float = Field(default=0.0)
    write_map: bool = Field(default=False, description="구적 공액 격자 전체를 MPF1로 저장")


class OrthogonalityRunConfig(MPQBaseModel):
    """orthogonality 명령 설정"""
    omega: float = Field(..., gt=0)
    quad: QuadratureSpec
    x1: Tuple[float, float] = Field(default=(0.0, 0.0))
    x2: Tuple[float, float] = Field(default=(0.0, 0.0))
    force_unit_weight: bool = Field(default=False)


class SelftestRunConfig(MPQBaseModel):
    """selftest 명령 설정"""
    seed: Optional[int] = Field(default=None, description="None이면 settings.selftest_seed")


# ===== selftest 결과 =====
class CriterionResult(MPQBaseModel):
    """acceptance 기준 하나의 결과"""
    index: int = Field(..., ge=1, description="기준 번호")
    name: str
    passed: bool
    measured: Dict[str, Any] = Field(default_factory=dict, description="측정값")
    expected: Dict[str, Any] = Field(default_factory=dict, description="허용 범위")
    message: str = Field(default="")


class SelftestReport(MPQBaseModel):
    """selftest 보고서"""
    version: str
    seed: int
    units: str = Field(default="dimensionless")
    criteria: List[CriterionResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    @property
    def failures(self) -> List[CriterionResult]:
        return [c for c in self.criteria if not c.passed]
