"""
MPQ 환경설정 모듈

Pydantic Settings를 사용한 환경변수 관리
라이브러리와 CLI에서 공통으로 사용
"""
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from scipy import constants as sc

from core.models import PhysicalConstants


class Settings(BaseSettings):
    """
    애플리케이션 전역 설정

    .env 파일 및 MPQ_ 접두사 환경변수에서 자동 로드
    타입 검증 및 기본값 제공
    """

    # ===== 로깅 설정 =====
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO",
        description="로그 레벨"
    )
    log_file: str = Field(
        default="",
        description="로그 파일 경로 (빈 문자열이면 파일 로그 비활성화)"
    )

    # ===== 병렬 처리 =====
    threads: int = Field(
        default=1,
        description="FFT worker 수 (MPQ_THREADS, CLI --threads 가 우선)"
    )

    # ===== 단위계 =====
    dimensionless_units: bool = Field(
        default=False,
        description=(
            "무차원 모드\n"
            "  - False: SI 단위 (CODATA 상수)\n"
            "  - True: c = ħ = ε₀ = 1, 길이는 1/k₀ 단위"
        )
    )

    # ===== 전파 가드 =====
    aliasing_policy: Literal["raise", "warn"] = Field(
        default="raise",
        description="Nyquist 근처 스펙트럼 파워 검출 시 동작"
    )
    aliasing_power_threshold: float = Field(
        default=1e-6,
        description="Nyquist 근처 허용 파워 비율"
    )
    aliasing_guard_bins: int = Field(
        default=2,
        description="Nyquist 가드 대역 폭 (bin 수)"
    )
    constraint_power_tolerance: float = Field(
        default=1e-12,
        description="ϑ > 1 영역에 허용되는 스펙트럼 파워 비율"
    )

    # ===== 커널 구적 =====
    paraxial_region_policy: Literal["raise", "warn"] = Field(
        default="warn",
        description="근축 커널에서 q_max ≥ ω/c (𝒞_ω 밖) 일 때 동작"
    )
    kernel_taper_fraction: float = Field(
        default=0.25,
        description="코사인 테이퍼 폭 (q_max 대비 비율)"
    )

    # ===== selftest / 출력 =====
    selftest_seed: int = Field(
        default=20240601,
        description="selftest 난수 시드"
    )
    output_dir: str = Field(
        default="./output",
        description="CLI 출력 디렉토리"
    )

    # ===== Pydantic Settings 설정 =====
    model_config = SettingsConfigDict(
        env_prefix="MPQ_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    @field_validator("threads", "aliasing_guard_bins")
    @classmethod
    def validate_positive_int(cls, v: int) -> int:
        """양의 정수 검증"""
        if v < 1:
            raise ValueError("1 이상의 정수여야 합니다")
        return v

    @field_validator("aliasing_power_threshold", "constraint_power_tolerance")
    @classmethod
    def validate_threshold(cls, v: float) -> float:
        """파워 비율 임계값 검증"""
        if not (0 < v < 1):
            raise ValueError("임계값은 (0, 1) 범위여야 합니다")
        return v

    @field_validator("kernel_taper_fraction")
    @classmethod
    def validate_taper(cls, v: float) -> float:
        """테이퍼 비율 검증"""
        if not (0 < v <= 1):
            raise ValueError("kernel_taper_fraction은 (0, 1] 범위여야 합니다")
        return v

    def unit_system(self) -> str:
        """파일 헤더용 단위계 이름"""
        return "dimensionless" if self.dimensionless_units else "SI"


# 전역 설정 인스턴스
settings = Settings()


def get_settings() -> Settings:
    """설정 인스턴스 반환"""
    return settings


def get_constants(dimensionless: Optional[bool] = None) -> PhysicalConstants:
    """
    단위계에 맞는 물리 상수 반환

    Args:
        dimensionless: None이면 전역 설정을 따름

    Returns:
        PhysicalConstants: c, ħ, ε₀
    """
    if dimensionless is None:
        dimensionless = settings.dimensionless_units
    if dimensionless:
        return PhysicalConstants.dimensionless()
    return PhysicalConstants(c=sc.c, hbar=sc.hbar, eps0=sc.epsilon_0)


if __name__ == "__main__":
    print("=== MPQ 설정 정보 ===")
    print(f"로그 레벨: {settings.log_level}")
    print(f"FFT threads: {settings.threads}")
    print(f"단위계: {settings.unit_system()}")
    print(f"앨리어싱 정책: {settings.aliasing_policy} (임계값 {settings.aliasing_power_threshold})")
    print(f"물리 상수: {get_constants()}")
