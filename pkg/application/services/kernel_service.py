"""
MPQ Kernel Service

kernel / orthogonality 실행
"""
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from config.settings import Settings, get_constants, get_settings
from core.enums import PropagationModel, UnitSystem
from core.models import KernelRunConfig, OrthogonalityRunConfig, PhysicalConstants
from domain.entities.envelope import VectorEnvelope
from domain.entities.grid import TransverseGrid
from domain.entities.optics import KernelValue
from domain.physics.kernels import (
    kernel_map,
    mp_kernel,
    orthogonality_integral,
    orthogonality_weight,
    paraxial_green,
)
from infrastructure.io.field_file import write_field
from infrastructure.io.table_writer import rows_to_frame, write_csv, write_json
from utils.logger import get_logger

logger = get_logger(__name__)

KERNEL_COLUMNS = [
    "x", "y", "z", "t",
    "ex_re", "ex_im", "ey_re", "ey_im", "ez_re", "ez_im",
    "under_resolved",
]


def kernel_row(value: KernelValue) -> Dict[str, object]:
    """KernelValue → CSV 행"""
    row = {"x": value.x[0], "y": value.x[1], "z": value.z, "t": value.t}
    for label, component in zip(("ex", "ey", "ez"), value.value):
        row[f"{label}_re"] = float(component.real)
        row[f"{label}_im"] = float(component.imag)
    row["under_resolved"] = int(value.under_resolved)
    return row


class KernelService:
    """
    회절 커널 서비스

    점별 커널 값 표, (선택) 구적 공액 격자 전체 맵, 준직교 적분
    """

    def __init__(self, constants: Optional[PhysicalConstants] = None,
                 settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else get_settings()
        self.constants = constants if constants is not None else get_constants(self.settings.dimensionless_units)
        self.units = UnitSystem(self.settings.unit_system())

    def evaluate(self, config: KernelRunConfig) -> List[KernelValue]:
        """
        요청한 점들의 커널 값

        EXACT → F⁽λ⁾(x, z, x_src, ω, t), PARAXIAL → P⁽λ⁾(x, z, x_src, ω)

        Raises:
            ParaxialConstraintError: Θ(q_max, ω) > 1 또는 근축 모델의 q_max > √2·ω/c
        """
        values = []
        for point in config.points:
            if config.model == PropagationModel.EXACT:
                value = mp_kernel(point, config.z, config.x_src, config.omega, config.t,
                                  config.polarization, config.quad, self.constants, self.settings)
            else:
                value = paraxial_green(point, config.z, config.x_src, config.omega,
                                       config.polarization, config.quad, self.constants, self.settings)
            values.append(value)
        flagged = sum(v.under_resolved for v in values)
        if flagged:
            logger.warning(f"구적 위상 해상도 부족 점 {flagged}개 (n_q 를 늘리세요)")
        return values

    def run_kernel(self, config: KernelRunConfig, output_dir: Path) -> List[str]:
        """kernel 명령: kernel_values.csv (+ kernel_map.mpf1)"""
        values = self.evaluate(config)
        write_csv(output_dir / "kernel_values.csv", rows_to_frame([kernel_row(v) for v in values], KERNEL_COLUMNS))
        outputs = ["kernel_values.csv"]

        if config.write_map:
            grid = TransverseGrid.conjugate_to(config.quad)
            samples = kernel_map(grid, config.z, config.x_src, config.omega, config.t,
                                 config.polarization, config.quad, config.model, self.constants, self.settings)
            envelope = VectorEnvelope(grid=grid, samples=samples, omega=config.omega,
                                      z=config.z, t=config.t, model=config.model)
            write_field(output_dir / "kernel_map.mpf1", envelope, self.units)
            outputs.append("kernel_map.mpf1")
        return outputs

    def orthogonality(self, config: OrthogonalityRunConfig) -> Dict[str, object]:
        """
        준직교 적분과 비교 기준값

        Returns:
            dict: value, weight_at_origin, coincidence_reference (= q_max²/(4π)), relative_to_reference
        """
        value = orthogonality_integral(config.x1, config.x2, config.omega, config.quad,
                                       config.force_unit_weight, self.constants, self.settings)
        reference = config.quad.q_max ** 2 / (4.0 * np.pi)
        result = {
            "value": value,
            "weight_at_origin": orthogonality_weight(0.0, config.omega, self.constants),
            "coincidence_reference": reference,
            "relative_to_reference": abs(value) / reference,
            "force_unit_weight": config.force_unit_weight,
        }
        logger.info(f"준직교 적분 | value={value:.6e} reference={reference:.6e}")
        return result

    def run_orthogonality(self, config: OrthogonalityRunConfig, output_dir: Path) -> List[str]:
        """orthogonality 명령: orthogonality.json"""
        write_json(output_dir / "orthogonality.json", self.orthogonality(config))
        return ["orthogonality.json"]
