"""
CLI 통합 테스트

main(argv) 를 직접 호출하고 출력 디렉토리의 파일을 검사
"""
import json
from pathlib import Path

import numpy as np
import pytest

from core.enums import ExitCode, ModeFamily, PropagationModel
from core.models import ModeSpec
from domain.entities.envelope import VectorEnvelope
from domain.entities.grid import TransverseGrid
from domain.modes.operations import make_mode
from infrastructure.io.field_file import read_field
from infrastructure.io.table_writer import read_csv
from presentation.cli import build_parser, main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GAUSSIAN = ["--nx", "64", "--dx", "1.0", "--family", "gaussian", "--w0", "8", "--omega", "1"]


def _run(command: str, output_dir: Path, *args: str) -> int:
    return main([command, "--output-dir", str(output_dir), "--dimensionless", *args])


def _manifest(output_dir: Path) -> dict:
    return json.loads((output_dir / "manifest.json").read_text(encoding="utf-8"))


class TestParser:
    """argparse 구성"""

    def test_subcommands(self):
        parser = build_parser()
        for command in ("dispersion", "propagate", "compare", "kernel", "orthogonality", "selftest"):
            assert parser.parse_args([command]).command == command

    def test_command_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestDispersionCommand:
    """dispersion → dispersion.csv"""

    def test_table(self, tmp_path):
        code = _run("dispersion", tmp_path, "--k0", "1", "--q-max", "1", "--n-points", "5", "--L", "100")
        assert code == ExitCode.SUCCESS
        frame = read_csv(tmp_path / "dispersion.csv")
        assert list(frame.columns) == ["q", "vartheta", "zeta", "theta", "Theta", "Omega0", "jacobian", "n"]
        assert len(frame) == 5
        assert frame["vartheta"].iloc[0] == 0.0
        assert frame["q"].iloc[-1] == 1.0

        manifest = _manifest(tmp_path)
        assert manifest["command"] == "dispersion"
        assert manifest["units"] == "dimensionless"
        assert manifest["outputs"] == ["dispersion.csv"]
        assert manifest["parameters"]["k0"] == 1.0

    def test_beyond_constraint_exit_code(self, tmp_path):
        assert _run("dispersion", tmp_path, "--k0", "1", "--q-max", "2") == ExitCode.PHYSICS_DOMAIN_ERROR

    def test_invalid_range_exit_code(self, tmp_path):
        code = _run("dispersion", tmp_path, "--k0", "1", "--q-min", "0.5", "--q-max", "0.1")
        assert code == ExitCode.CONFIG_ERROR
        assert not (tmp_path / "manifest.json").exists()


class TestPropagateCommand:
    """propagate → field_zNNN.mpf1 + 요약"""

    def test_zero_distance_is_bit_exact(self, tmp_path):
        code = _run("propagate", tmp_path, *GAUSSIAN, "--z", "0")
        assert code == ExitCode.SUCCESS

        header, field = read_field(tmp_path / "field_z000.mpf1")
        mode = make_mode(ModeSpec(family=ModeFamily.GAUSSIAN, w0=8.0, omega=1.0), TransverseGrid.square(64, 1.0))
        assert field.samples.tobytes() == mode.samples.tobytes()
        assert header["model"] == "paraxial"
        assert header["units"] == "dimensionless"

        summary = json.loads((tmp_path / "propagate_summary.json").read_text(encoding="utf-8"))
        assert summary["planes"][0]["norm"] == pytest.approx(1.0, abs=1e-12)
        assert _manifest(tmp_path)["outputs"] == ["field_z000.mpf1", "propagate_summary.json"]

    def test_config_file_with_flag_override(self, tmp_path):
        code = _run("propagate", tmp_path, "--config", str(FIXTURES / "propagate_run.json"), "--model", "exact")
        assert code == ExitCode.SUCCESS

        _, near = read_field(tmp_path / "field_z000.mpf1")
        header, far = read_field(tmp_path / "field_z001.mpf1")
        assert header["model"] == "exact"
        assert header["z"] == 10.0
        assert far.norm() == pytest.approx(near.norm(), rel=1e-12)
        assert _manifest(tmp_path)["parameters"]["model"] == "exact"

    def test_promoted_field_is_vector(self, tmp_path):
        code = _run("propagate", tmp_path, *GAUSSIAN, "--z", "5", "--promote", "--polarization", "2")
        assert code == ExitCode.SUCCESS
        header, field = read_field(tmp_path / "field_z000.mpf1")
        assert header["components"] == 3
        assert isinstance(field, VectorEnvelope)
        assert np.max(np.abs(field.samples[2])) < 1e-15

    def test_under_resolved_grid_exit_code(self, tmp_path):
        args = ["--nx", "64", "--dx", "2.0", "--family", "gaussian", "--w0", "8", "--omega", "1"]
        assert _run("propagate", tmp_path, *args, "--z", "1") == ExitCode.CONFIG_ERROR

    def test_constraint_violation_exit_code(self, tmp_path):
        """ω = 0.05 이면 스펙트럼 대부분이 √2·ω 밖"""
        args = ["--nx", "64", "--dx", "1.0", "--family", "gaussian", "--w0", "8", "--omega", "0.05"]
        assert _run("propagate", tmp_path, *args, "--z", "10") == ExitCode.PHYSICS_DOMAIN_ERROR

    def test_missing_config_file(self, tmp_path):
        code = _run("propagate", tmp_path, "--config", str(tmp_path / "absent.json"))
        assert code == ExitCode.CONFIG_ERROR


class TestCompareCommand:
    """compare → exact / paraxial"""

    def test_outputs(self, tmp_path):
        assert _run("compare", tmp_path, *GAUSSIAN, "--z", "20") == ExitCode.SUCCESS
        summary = json.loads((tmp_path / "compare_summary.json").read_text(encoding="utf-8"))
        assert 0.0 < summary["relative_l2"] < 0.5
        _, exact = read_field(tmp_path / "exact.mpf1")
        _, paraxial = read_field(tmp_path / "paraxial.mpf1")
        assert exact.model == PropagationModel.EXACT
        assert paraxial.model == PropagationModel.PARAXIAL


class TestKernelCommands:
    """kernel / orthogonality"""

    def test_kernel_values_and_map(self, tmp_path):
        code = _run("kernel", tmp_path, "--omega", "1", "--q-max", "0.5", "--n-q", "32",
                    "--point", "1", "0", "--point", "0", "1", "--z", "5", "--t", "5", "--write-map")
        assert code == ExitCode.SUCCESS

        frame = read_csv(tmp_path / "kernel_values.csv")
        assert len(frame) == 2
        assert frame["x"].tolist() == [1.0, 0.0]

        header, field = read_field(tmp_path / "kernel_map.mpf1")
        assert header["components"] == 3
        assert header["nx"] == 32
        assert header["dx"] == pytest.approx(np.pi / 0.5)
        assert field.is_finite()
        assert _manifest(tmp_path)["outputs"] == ["kernel_map.mpf1", "kernel_values.csv"]

    def test_paraxial_kernel_beyond_constraint(self, tmp_path):
        code = _run("kernel", tmp_path, "--omega", "1", "--q-max", "2", "--n-q", "32", "--model", "paraxial")
        assert code == ExitCode.PHYSICS_DOMAIN_ERROR

    def test_invalid_quadrature(self, tmp_path):
        assert _run("kernel", tmp_path, "--omega", "1", "--q-max", "0.5", "--n-q", "15") == ExitCode.CONFIG_ERROR

    def test_orthogonality_coincident(self, tmp_path):
        code = _run("orthogonality", tmp_path, "--omega", "1", "--q-max", "0.01", "--n-q", "1024")
        assert code == ExitCode.SUCCESS
        result = json.loads((tmp_path / "orthogonality.json").read_text(encoding="utf-8"))
        assert result["relative_to_reference"] == pytest.approx(1.0, abs=1e-3)
        assert result["weight_at_origin"] == pytest.approx(1.0)
        assert set(result["value"]) == {"re", "im"}
