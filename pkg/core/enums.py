"""
MPQ 열거형 상수 모듈

시스템 전반에서 사용되는 상수 정의
타입 안정성 및 일관성 보장
"""
import math
from enum import Enum, IntEnum


class PropagationModel(str, Enum):
    """전파 모델"""
    EXACT = "exact"  # Maxwell-paraxial (Ω₀ 위상 + 𝓔 가중치/편광)
    PARAXIAL = "paraxial"  # 근축 Green 함수 (ω 위상 + 0차 편광)


class ModeFamily(str, Enum):
    """모드 계열"""
    GAUSSIAN = "gaussian"
    HERMITE_GAUSSIAN = "hg"  # HG(n, m)
    LAGUERRE_GAUSSIAN = "lg"  # LG(p, l)


class Polarization(IntEnum):
    """편광 인덱스 λ"""
    FIRST = 1  # ε⁽¹⁾ (q̂, ẑ 평면)
    SECOND = 2  # ε⁽²⁾ = ẑ × q̂


class TaperWindow(str, Enum):
    """스펙트럼 절단 창 함수"""
    NONE = "none"
    COSINE = "cosine"


class AliasingPolicy(str, Enum):
    """앨리어싱 가드 동작"""
    RAISE = "raise"
    WARN = "warn"


class UnitSystem(str, Enum):
    """파일 헤더 단위계"""
    SI = "SI"
    DIMENSIONLESS = "dimensionless"


class ExitCode(IntEnum):
    """CLI 종료 코드"""
    SUCCESS = 0
    UNEXPECTED = 1
    CONFIG_ERROR = 2
    PHYSICS_DOMAIN_ERROR = 3
    SELFTEST_FAILURE = 4


class LogLevel(str, Enum):
    """로그 레벨"""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


# 상수 정의
SQRT2 = math.sqrt(2.0)
VARTHETA_ROUNDING_TOL = 1e-12  # ϑ = 1 경계의 부동소수 반올림 허용폭
MIN_QUADRATURE_SAMPLES = 16  # QuadratureSpec.n_q 최솟값
MIN_SAMPLES_PER_WAIST = 8  # make_mode 해상도 조건
MIN_EXTENT_PER_WAIST = 4  # make_mode 격자 크기 조건
MPF1_MAGIC = b"MPF1"


if __name__ == "__main__":
    print("=== MPQ 열거형 상수 ===")
    print(f"전파 모델: {[e.value for e in PropagationModel]}")
    print(f"모드 계열: {[e.value for e in ModeFamily]}")
    print(f"편광: {[int(e) for e in Polarization]}")
    print(f"종료 코드: {[(e.name, int(e)) for e in ExitCode]}")
