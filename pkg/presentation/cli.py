"""
MPQ 명령줄 인터페이스

사용법:
    python -m presentation.cli dispersion --k0 1e7 --q-max 1e6 --n-points 11
    python -m presentation.cli propagate --config run.json --z 0 0.01 0.02
    python -m presentation.cli selftest --output-dir ./output/selftest

설정 우선순위: 명령줄 플래그 > --config JSON > 기본값
종료 코드: 0 성공, 2 설정 오류, 3 물리 정의역 오류, 4 selftest 실패, 1 예기치 못한 오류
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from application.services.dispersion_service import DispersionService
from application.services.kernel_service import KernelService
from application.services.propagation_service import PropagationService
from application.services.selftest_service import SelftestService
from config.settings import Settings, get_settings
from core import __version__
from core.enums import ExitCode, ModeFamily, PropagationModel, TaperWindow
from core.exceptions import InvalidParameterError, MPQException, exit_code_for
from core.models import (
    CompareRunConfig,
    DispersionRunConfig,
    KernelRunConfig,
    OrthogonalityRunConfig,
    PropagateRunConfig,
    SelftestRunConfig,
)
from infrastructure.io.manifest import write_manifest
from infrastructure.io.table_writer import write_csv
from utils.logger import get_logger, log_error_with_context, log_run_start, setup_logger

logger = get_logger(__name__)


# ===== 파서 =====
def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON 설정 파일 (플래그가 우선)")
    common.add_argument("--output-dir", type=Path, help="출력 디렉토리 (기본: MPQ_OUTPUT_DIR)")
    common.add_argument("--threads", type=int, help="FFT worker 수 (MPQ_THREADS 보다 우선)")
    common.add_argument("--dimensionless", action="store_true", default=None,
                        help="무차원 단위 (c = ħ = ε₀ = 1)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    return common


def _add_grid_mode_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nx", type=int)
    parser.add_argument("--ny", type=int)
    parser.add_argument("--dx", type=float, help="x 간격 (m)")
    parser.add_argument("--dy", type=float, help="y 간격 (m, 기본: dx)")
    parser.add_argument("--family", choices=[f.value for f in ModeFamily])
    parser.add_argument("--w0", type=float, help="허리 반경 (m)")
    parser.add_argument("--omega", type=float, help="각주파수 (rad/s)")
    parser.add_argument("--polarization", type=int, choices=[1, 2])
    for index in ("n", "m", "p", "l"):
        parser.add_argument(f"--{index}", type=int, help=f"모드 인덱스 {index}")


def _add_quadrature_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega", type=float, help="각주파수 (rad/s)")
    parser.add_argument("--q-max", type=float, help="스펙트럼 절단 (rad/m)")
    parser.add_argument("--n-q", type=int, help="축당 구적 점 수")
    parser.add_argument("--window", choices=[w.value for w in TaperWindow])


def build_parser() -> argparse.ArgumentParser:
    """서브커맨드 파서 생성"""
    parser = argparse.ArgumentParser(
        prog="mpq",
        description="Maxwell-paraxial 양자화 빔 툴킷",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()

    dispersion = subparsers.add_parser("dispersion", parents=[common], help="분산 관계 표 (CSV)")
    dispersion.add_argument("--k0", type=float, help="반송파 파수 (rad/m)")
    dispersion.add_argument("--q-min", type=float)
    dispersion.add_argument("--q-max", type=float)
    dispersion.add_argument("--n-points", type=int)
    dispersion.add_argument("--L", type=float, dest="L", help="양자화 길이 (n 열 추가)")

    propagate = subparsers.add_parser("propagate", parents=[common], help="모드 전파 (MPF1 + 요약)")
    _add_grid_mode_arguments(propagate)
    propagate.add_argument("--model", choices=[m.value for m in PropagationModel])
    propagate.add_argument("--z", type=float, nargs="+", help="z 평면 목록 (m)")
    propagate.add_argument("--promote", action="store_true", default=None, help="편광 벡터로 승격")

    compare = subparsers.add_parser("compare", parents=[common], help="EXACT / PARAXIAL 비교")
    _add_grid_mode_arguments(compare)
    compare.add_argument("--z", type=float, help="전파 거리 (m)")

    kernel = subparsers.add_parser("kernel", parents=[common], help="MP 커널 / 근축 Green 함수 값")
    _add_quadrature_arguments(kernel)
    kernel.add_argument("--model", choices=[m.value for m in PropagationModel])
    kernel.add_argument("--polarization", type=int, choices=[1, 2])
    kernel.add_argument("--point", type=float, nargs=2, action="append", metavar=("X", "Y"))
    kernel.add_argument("--x-src", type=float, nargs=2, metavar=("X", "Y"))
    kernel.add_argument("--z", type=float)
    kernel.add_argument("--t", type=float)
    kernel.add_argument("--write-map", action="store_true", default=None)

    orthogonality = subparsers.add_parser("orthogonality", parents=[common], help="준직교 적분")
    _add_quadrature_arguments(orthogonality)
    orthogonality.add_argument("--x1", type=float, nargs=2, metavar=("X", "Y"))
    orthogonality.add_argument("--x2", type=float, nargs=2, metavar=("X", "Y"))
    orthogonality.add_argument("--force-unit-weight", action="store_true", default=None)

    selftest = subparsers.add_parser("selftest", parents=[common], help="acceptance 기준 실행")
    selftest.add_argument("--seed", type=int)

    return parser


# ===== 설정 병합 =====
def _load_config_file(path: Optional[Path]) -> Dict[str, Any]:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidParameterError("설정 파일을 읽을 수 없습니다", {"path": str(path), "error": str(e)}) from e
    if not isinstance(data, dict):
        raise InvalidParameterError("설정 파일 최상위는 JSON 객체여야 합니다", {"path": str(path)})
    return data


def _merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """중첩 dict 병합 (overrides 의 None 은 무시)"""
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict):
            merged[key] = _merge(merged.get(key) or {}, value)
        else:
            merged[key] = value
    return merged


def _pick(args: argparse.Namespace, *names: str) -> Dict[str, Any]:
    return {name: getattr(args, name, None) for name in names}


def _grid_mode_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    grid = _pick(args, "nx", "ny", "dx", "dy")
    mode = _pick(args, "family", "w0", "omega", "polarization", "n", "m", "p", "l")
    return {"grid": grid, "mode": mode}


def _quadrature_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {"q_max": args.q_max, "n_q": args.n_q, "window": args.window}


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """명령별 플래그 → 설정 dict (지정한 값만)"""
    if args.command == "dispersion":
        return _pick(args, "k0", "q_min", "q_max", "n_points", "L")
    if args.command == "propagate":
        return {**_grid_mode_overrides(args), "model": args.model, "z_planes": args.z,
                "promote_polarization": args.promote}
    if args.command == "compare":
        return {**_grid_mode_overrides(args), "z": args.z}
    if args.command == "kernel":
        return {"omega": args.omega, "quad": _quadrature_overrides(args), "model": args.model,
                "polarization": args.polarization, "points": args.point, "x_src": args.x_src,
                "z": args.z, "t": args.t, "write_map": args.write_map}
    if args.command == "orthogonality":
        return {"omega": args.omega, "quad": _quadrature_overrides(args), "x1": args.x1, "x2": args.x2,
                "force_unit_weight": args.force_unit_weight}
    return {"seed": args.seed}


def _run_settings(args: argparse.Namespace) -> Settings:
    """전역 설정 복사본에 공통 플래그 적용"""
    updates = {
        "threads": args.threads,
        "dimensionless_units": args.dimensionless,
        "log_level": args.log_level,
        "output_dir": str(args.output_dir) if args.output_dir is not None else None,
    }
    updates = {key: value for key, value in updates.items() if value is not None}
    run_settings = get_settings().model_copy(update=updates)
    if run_settings.threads < 1:
        raise InvalidParameterError("--threads 는 1 이상이어야 합니다", {"threads": run_settings.threads})
    return run_settings


# ===== 명령 실행 =====
Handler = Tuple[type, Callable[[BaseModel, Settings, Path], List[str]]]


def _dispersion(config: DispersionRunConfig, run_settings: Settings, output_dir: Path) -> List[str]:
    frame = DispersionService(settings=run_settings).table(config)
    write_csv(output_dir / "dispersion.csv", frame)
    return ["dispersion.csv"]


def _propagate(config: PropagateRunConfig, run_settings: Settings, output_dir: Path) -> List[str]:
    return PropagationService(settings=run_settings).run_propagate(config, output_dir)


def _compare(config: CompareRunConfig, run_settings: Settings, output_dir: Path) -> List[str]:
    return PropagationService(settings=run_settings).run_compare(config, output_dir)


def _kernel(config: KernelRunConfig, run_settings: Settings, output_dir: Path) -> List[str]:
    return KernelService(settings=run_settings).run_kernel(config, output_dir)


def _orthogonality(config: OrthogonalityRunConfig, run_settings: Settings, output_dir: Path) -> List[str]:
    return KernelService(settings=run_settings).run_orthogonality(config, output_dir)


def _selftest(config: SelftestRunConfig, run_settings: Settings, output_dir: Path) -> List[str]:
    return SelftestService(settings=run_settings).run_selftest(config, output_dir)


COMMANDS: Dict[str, Handler] = {
    "dispersion": (DispersionRunConfig, _dispersion),
    "propagate": (PropagateRunConfig, _propagate),
    "compare": (CompareRunConfig, _compare),
    "kernel": (KernelRunConfig, _kernel),
    "orthogonality": (OrthogonalityRunConfig, _orthogonality),
    "selftest": (SelftestRunConfig, _selftest),
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI 진입점

    Args:
        argv: 인자 목록 (None이면 sys.argv[1:])

    Returns:
        int: 종료 코드
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        run_settings = _run_settings(args)
        setup_logger(run_settings.log_level)

        config_class, handler = COMMANDS[args.command]
        raw = _merge(_load_config_file(args.config), _overrides(args))
        config = config_class.model_validate(raw)

        output_dir = Path(run_settings.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        parameters = config.model_dump(mode="json")
        log_run_start(args.command, parameters)

        outputs = handler(config, run_settings, output_dir)
        units = "dimensionless" if args.command == "selftest" else run_settings.unit_system()
        write_manifest(output_dir, args.command, parameters, units, outputs)
        logger.info(f"완료 | {args.command} → {output_dir} ({len(outputs)} files)")
        return int(ExitCode.SUCCESS)

    except ValidationError as e:
        logger.error(f"설정 검증 실패 | {args.command} | {e.errors(include_url=False)}")
        return int(ExitCode.CONFIG_ERROR)
    except MPQException as e:
        log_error_with_context(e, {"command": args.command})
        return int(exit_code_for(e))
    except Exception as e:
        log_error_with_context(e, {"command": args.command})
        return int(ExitCode.UNEXPECTED)


if __name__ == "__main__":
    sys.exit(main())
