"""
MPQ Propagation Service

propagate / compare 실행: 모드 생성 → 전파 → MPF1 기록 → 요약
"""
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from config.settings import Settings, get_constants, get_settings
from core.enums import PropagationModel, UnitSystem
from core.models import CompareRunConfig, PhysicalConstants, PropagateRunConfig
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.grid import TransverseGrid
from domain.modes.operations import make_mode
from domain.propagation.operations import get_propagator, near_nyquist_power
from infrastructure.io.field_file import write_field
from infrastructure.io.table_writer import write_json
from utils.beam_metrics import centroid, peak_position, relative_l2, second_moment_width
from utils.logger import get_logger

logger = get_logger(__name__)

Envelope = Union[ScalarEnvelope, VectorEnvelope]


def summarize(envelope: Envelope, settings: Optional[Settings] = None) -> Dict[str, object]:
    """전파 결과 요약: 노름, 피크, 중심, 폭"""
    return {
        "z": envelope.z,
        "components": envelope.components,
        "model": envelope.model.value if envelope.model is not None else None,
        "norm": envelope.norm(),
        "peak": list(peak_position(envelope)),
        "centroid": list(centroid(envelope)),
        "width_x": second_moment_width(envelope, "x"),
        "width_y": second_moment_width(envelope, "y"),
        "near_nyquist_power": near_nyquist_power(envelope, settings=settings),
    }


class PropagationService:
    """
    전파 서비스

    허리 평면 모드를 요청한 z 평면들로 각각 전파 (평면마다 z = 0 에서 출발)
    """

    def __init__(self, constants: Optional[PhysicalConstants] = None,
                 settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else get_settings()
        self.constants = constants if constants is not None else get_constants(self.settings.dimensionless_units)
        self.units = UnitSystem(self.settings.unit_system())

    def propagate_planes(self, config: PropagateRunConfig) -> Tuple[ScalarEnvelope, List[Envelope]]:
        """
        모드 생성 후 z 평면별 전파

        Returns:
            (허리 평면 모드, z 평면별 포락선)

        Raises:
            ResolutionError: 격자 해상도 부족
            ParaxialConstraintError / AliasingError: 전파 가드
        """
        grid = TransverseGrid.from_config(config.grid)
        mode = make_mode(config.mode, grid)
        propagator = get_propagator(config.model, self.constants, self.settings)
        polarization = config.mode.polarization if config.promote_polarization else None
        planes = [propagator.propagate(mode, float(z), polarization) for z in config.z_planes]
        logger.info(f"전파 완료 | model={config.model.value} planes={len(planes)}")
        return mode, planes

    def run_propagate(self, config: PropagateRunConfig, output_dir: Path) -> List[str]:
        """
        propagate 명령: field_zNNN.mpf1 + propagate_summary.json

        Returns:
            List[str]: 기록한 파일 이름
        """
        _, planes = self.propagate_planes(config)
        outputs = []
        summaries = []
        for index, plane in enumerate(planes):
            name = f"field_z{index:03d}.mpf1"
            write_field(output_dir / name, plane, self.units)
            outputs.append(name)
            summaries.append({"file": name, **summarize(plane, self.settings)})

        write_json(output_dir / "propagate_summary.json", {"planes": summaries})
        outputs.append("propagate_summary.json")
        return outputs

    def compare(self, config: CompareRunConfig) -> Dict[str, object]:
        """
        같은 모드를 EXACT / PARAXIAL 로 z 만큼 전파해 비교

        Returns:
            dict: exact, paraxial (포락선), relative_l2 (paraxial 기준)
        """
        grid = TransverseGrid.from_config(config.grid)
        mode = make_mode(config.mode, grid)
        exact = get_propagator(PropagationModel.EXACT, self.constants, self.settings).propagate(mode, config.z)
        paraxial = get_propagator(PropagationModel.PARAXIAL, self.constants, self.settings).propagate(mode, config.z)
        difference = relative_l2(exact, paraxial)
        logger.info(f"모델 비교 | z={config.z:.6g} relative L2={difference:.3e}")
        return {"exact": exact, "paraxial": paraxial, "relative_l2": difference}

    def run_compare(self, config: CompareRunConfig, output_dir: Path) -> List[str]:
        """compare 명령: exact.mpf1, paraxial.mpf1, compare_summary.json"""
        result = self.compare(config)
        write_field(output_dir / "exact.mpf1", result["exact"], self.units)
        write_field(output_dir / "paraxial.mpf1", result["paraxial"], self.units)
        write_json(output_dir / "compare_summary.json", {
            "relative_l2": result["relative_l2"],
            "exact": summarize(result["exact"], self.settings),
            "paraxial": summarize(result["paraxial"], self.settings),
        })
        return ["exact.mpf1", "paraxial.mpf1", "compare_summary.json"]
