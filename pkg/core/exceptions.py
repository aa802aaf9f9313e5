"""
MPQ 커스텀 예외 모듈

계층별, 기능별 예외 클래스 정의
CLI 종료 코드와 1:1로 매핑
"""
from core.enums import ExitCode


# ===== 기본 예외 클래스 =====
class MPQException(Exception):
    """MPQ 최상위 예외 클래스"""

    exit_code: ExitCode = ExitCode.UNEXPECTED

    def __init__(self, message: str, details: dict = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self):
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message


# ===== 설정 관련 예외 =====
class ConfigurationError(MPQException):
    """설정 오류"""
    exit_code = ExitCode.CONFIG_ERROR


class InvalidParameterError(ConfigurationError):
    """잘못된 파라미터"""
    pass


class GridMismatchError(ConfigurationError):
    """서로 다른 격자 간 연산"""
    pass


class ResolutionError(ConfigurationError):
    """격자가 모드/차수를 해상하지 못함"""
    pass


# ===== 물리 영역 예외 =====
class PhysicsDomainError(MPQException):
    """물리적 정의역 위반"""
    exit_code = ExitCode.PHYSICS_DOMAIN_ERROR


class ParaxialConstraintError(PhysicsDomainError):
    """ϑ ≤ 1 제약 위반"""
    pass


class AliasingError(PhysicsDomainError):
    """Nyquist 근처 스펙트럼 파워 과다"""
    pass


class NonFiniteFieldError(PhysicsDomainError):
    """NaN/Inf 샘플"""
    pass


class InsufficientPlanesError(PhysicsDomainError):
    """잔차 계산에 필요한 z 평면 부족"""
    pass


# ===== 파일 I/O 예외 =====
class FieldFileError(MPQException):
    """필드 파일 오류"""
    exit_code = ExitCode.CONFIG_ERROR


class InvalidMagicError(FieldFileError):
    """MPF1 매직 불일치"""
    pass


class CorruptPayloadError(FieldFileError):
    """헤더와 payload 길이 불일치"""
    pass


# ===== selftest 예외 =====
class SelftestFailure(MPQException):
    """acceptance 기준 실패"""
    exit_code = ExitCode.SELFTEST_FAILURE


def exit_code_for(error: BaseException) -> ExitCode:
    """
    예외를 CLI 종료 코드로 매핑

    Args:
        error: 발생한 예외

    Returns:
        ExitCode: MPQException이면 해당 계열 코드, 그 외는 UNEXPECTED
    """
    if isinstance(error, MPQException):
        return error.exit_code
    return ExitCode.UNEXPECTED
