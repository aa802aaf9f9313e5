"""
애플리케이션 서비스 테스트
"""
import json

import numpy as np
import pytest

from application.services.dispersion_service import DISPERSION_COLUMNS, DispersionService
from application.services.selftest_service import REPORT_NAME, SelftestService
from core.exceptions import InvalidParameterError, SelftestFailure
from core.models import DispersionRunConfig, SelftestRunConfig


class TestDispersionService:
    """분산 표"""

    def test_columns_without_quantization(self, unit_constants, run_settings):
        service = DispersionService(unit_constants, run_settings)
        frame = service.table(DispersionRunConfig(k0=2.0, q_max=2.0, n_points=3))
        assert list(frame.columns) == DISPERSION_COLUMNS
        assert frame["vartheta"].tolist() == pytest.approx([0.0, 0.5 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)])
        assert frame["zeta"].iloc[0] == 2.0
        assert frame["Omega0"].iloc[0] == pytest.approx(2.0)

    def test_quantization_column(self, unit_constants, run_settings):
        service = DispersionService(unit_constants, run_settings)
        frame = service.table(DispersionRunConfig(k0=2 * np.pi, q_max=0.0, n_points=1, L=10.0))
        assert frame["n"].tolist() == [10]

    def test_negative_q(self, unit_constants, run_settings):
        with pytest.raises(ValueError):
            DispersionRunConfig(k0=1.0, q_min=-1.0, q_max=0.5)
        with pytest.raises(InvalidParameterError):
            DispersionService(unit_constants, run_settings).table(
                DispersionRunConfig.model_construct(k0=1.0, q_min=-1.0, q_max=0.5, n_points=3, L=None)
            )


class TestSelftestService:
    """selftest 보고서"""

    def test_fast_criteria_pass(self, run_settings):
        service = SelftestService(settings=run_settings)
        service.criteria = [c for c in service.criteria if c[1] in ("dispersion_identities", "divergence_series",
                                                                     "polarization_basis")]
        report = service.run(SelftestRunConfig(seed=7))
        assert report.seed == 7
        assert [c.index for c in report.criteria] == [1, 2, 3]
        assert report.passed

    def test_failure_writes_report_then_raises(self, run_settings, tmp_path):
        service = SelftestService(settings=run_settings)
        service.criteria = [(1, "always_fails", lambda rng: (False, {"error": 1.0}, {"max": 0.0}))]
        with pytest.raises(SelftestFailure) as exc:
            service.run_selftest(SelftestRunConfig(), tmp_path)
        assert exc.value.details["failed"] == ["always_fails"]

        report = json.loads((tmp_path / REPORT_NAME).read_text(encoding="utf-8"))
        assert report["criteria"][0]["passed"] is False
        assert report["criteria"][0]["measured"] == {"error": 1.0}

    def test_domain_error_is_recorded_as_failure(self, run_settings):
        def raises(rng):
            raise InvalidParameterError("bad")

        service = SelftestService(settings=run_settings)
        service.criteria = [(1, "raises", raises)]
        report = service.run()
        assert not report.passed
        assert report.criteria[0].message == "InvalidParameterError: bad"
