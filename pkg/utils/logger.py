"""
MPQ 로깅 모듈

Loguru 기반 로깅, 라이브러리와 CLI 공통
콘솔 출력은 stderr 로만 보내 stdout/결과 파일과 섞이지 않게 함
"""
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from config.settings import settings

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{extra[name]}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[name]}:{function}:{line} | {message}"

logger.configure(extra={"name": "mpq"})


def _add_file_sinks(log_file: str, level: str) -> None:
    """실행 로그 + 에러 전용 로그 (rotation, retention, zip 압축)"""
    log_path = Path(log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)

    common = {"format": FILE_FORMAT, "rotation": "10 MB", "compression": "zip", "encoding": "utf-8"}
    logger.add(str(log_path), level=level, retention="30 days", **common)
    logger.add(str(log_path.parent / "error.log"), level="ERROR", retention="90 days", **common)


def setup_logger(level: Optional[str] = None) -> None:
    """
    Loguru 로거 초기화

    CLI 가 --log-level 로 다시 호출할 수 있음 (기존 sink 는 모두 교체)

    Args:
        level: None이면 settings.log_level
    """
    level = level or settings.log_level
    logger.remove()
    logger.add(sys.stderr, format=CONSOLE_FORMAT, level=level, colorize=True, backtrace=True, diagnose=False)

    if settings.log_file:
        _add_file_sinks(settings.log_file, level)
    logger.debug(f"로거 초기화 | level={level} file={settings.log_file or '-'}")


def get_logger(name: Optional[str] = None):
    """
    모듈용 로거

    사용 예:
        logger = get_logger(__name__)
        logger.info("전파 완료")
    """
    return logger.bind(name=name) if name else logger


setup_logger()


# ===== 편의 함수 =====
def log_run_start(command: str, params: dict) -> None:
    """CLI 실행 시작"""
    logger.info(f"실행 시작 | {command} | {params}")


def log_domain_violation(operation: str, details: dict) -> None:
    """물리 정의역 위반 (예외 직전)"""
    logger.error(f"정의역 위반 | {operation} | {details}")


def log_error_with_context(error: Exception, context: dict) -> None:
    """예외 + 실행 컨텍스트"""
    logger.error(f"{type(error).__name__}: {error} | 컨텍스트: {context}")
