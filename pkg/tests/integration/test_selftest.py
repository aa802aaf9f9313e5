"""
selftest 통합 테스트 (느림)

pytest -m slow 로 실행
"""
import json

import pytest

from core.enums import ExitCode
from presentation.cli import main


@pytest.mark.slow
def test_selftest_passes_and_is_repeatable(tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    assert main(["selftest", "--output-dir", str(first)]) == ExitCode.SUCCESS
    assert main(["selftest", "--output-dir", str(second)]) == ExitCode.SUCCESS

    report = (first / "selftest_report.json").read_bytes()
    assert report == (second / "selftest_report.json").read_bytes()
    assert (first / "manifest.json").read_bytes() != b""

    parsed = json.loads(report)
    assert parsed["units"] == "dimensionless"
    assert all(criterion["passed"] for criterion in parsed["criteria"])
    assert [c["index"] for c in parsed["criteria"]] == list(range(1, len(parsed["criteria"]) + 1))
