"""
설정 / 예외 / 종료 코드 테스트
"""
import pytest
from pydantic import ValidationError
from scipy import constants as sc

from config.settings import Settings, get_constants
from core.enums import ExitCode
from core.exceptions import (
    AliasingError,
    CorruptPayloadError,
    GridMismatchError,
    InvalidParameterError,
    MPQException,
    ParaxialConstraintError,
    SelftestFailure,
    exit_code_for,
)


class TestSettings:
    """MPQ_ 환경변수 설정"""

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("MPQ_THREADS", raising=False)
        monkeypatch.delenv("MPQ_DIMENSIONLESS_UNITS", raising=False)
        settings = Settings(_env_file=None)
        assert settings.threads == 1
        assert settings.aliasing_policy == "raise"
        assert settings.unit_system() == "SI"

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("MPQ_THREADS", "4")
        monkeypatch.setenv("MPQ_DIMENSIONLESS_UNITS", "true")
        settings = Settings(_env_file=None)
        assert settings.threads == 4
        assert settings.unit_system() == "dimensionless"

    @pytest.mark.parametrize("field, value", [
        ("threads", 0),
        ("aliasing_guard_bins", 0),
        ("aliasing_power_threshold", 1.5),
        ("constraint_power_tolerance", 0.0),
        ("kernel_taper_fraction", 0.0),
        ("aliasing_policy", "ignore"),
    ])
    def test_validation(self, field, value):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, **{field: value})

    def test_constants(self):
        unit = get_constants(dimensionless=True)
        assert (unit.c, unit.hbar, unit.eps0) == (1.0, 1.0, 1.0)
        si = get_constants(dimensionless=False)
        assert si.c == sc.c


class TestExceptions:
    """예외 계층과 종료 코드"""

    @pytest.mark.parametrize("error, code", [
        (InvalidParameterError("x"), ExitCode.CONFIG_ERROR),
        (GridMismatchError("x"), ExitCode.CONFIG_ERROR),
        (CorruptPayloadError("x"), ExitCode.CONFIG_ERROR),
        (ParaxialConstraintError("x"), ExitCode.PHYSICS_DOMAIN_ERROR),
        (AliasingError("x"), ExitCode.PHYSICS_DOMAIN_ERROR),
        (SelftestFailure("x"), ExitCode.SELFTEST_FAILURE),
        (RuntimeError("x"), ExitCode.UNEXPECTED),
    ])
    def test_exit_codes(self, error, code):
        assert exit_code_for(error) == code

    def test_details(self):
        error = InvalidParameterError("잘못된 값", {"omega": -1.0})
        assert isinstance(error, MPQException)
        assert error.details == {"omega": -1.0}
        assert InvalidParameterError("x").details == {}
