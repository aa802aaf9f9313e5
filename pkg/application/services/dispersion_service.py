"""
MPQ Dispersion Service

분산 관계 표 (q, ϑ, ζ, θ, Θ, Ω₀, Jacobian[, n]) 생성
"""
from typing import Optional

import numpy as np
import pandas as pd

from config.settings import Settings, get_constants, get_settings
from core.models import DispersionRunConfig, PhysicalConstants, QuantizationConfig
from domain.physics.dispersion import (
    dirac_jacobian,
    frequency_arrays,
    n_index,
    theta_of_vartheta,
    vartheta_of_q,
    zeta_of_q,
)
from utils.logger import get_logger

logger = get_logger(__name__)

DISPERSION_COLUMNS = ["q", "vartheta", "zeta", "theta", "Theta", "Omega0", "jacobian"]


class DispersionService:
    """
    분산 관계 표 서비스

    반송파 k₀ 의 ϑ, ζ 와 같은 ω = c·k₀ 에서의 Θ, Ω₀, Jacobian 을 한 행에 기록
    """

    def __init__(self, constants: Optional[PhysicalConstants] = None,
                 settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else get_settings()
        self.constants = constants if constants is not None else get_constants(self.settings.dimensionless_units)

    def table(self, config: DispersionRunConfig) -> pd.DataFrame:
        """
        분산 표 생성

        Args:
            config: k0, q 범위, 행 수, (선택) 양자화 길이 L

        Returns:
            pd.DataFrame: DISPERSION_COLUMNS (+ "n")

        Raises:
            ParaxialConstraintError: q_max > √2·k₀
        """
        q = np.linspace(config.q_min, config.q_max, config.n_points)
        omega = self.constants.c * config.k0

        zeta = np.atleast_1d(zeta_of_q(q, config.k0))
        vartheta = np.atleast_1d(vartheta_of_q(q, config.k0))
        theta = np.atleast_1d(theta_of_vartheta(vartheta))
        big_theta, omega0 = frequency_arrays(q, omega, self.constants)
        jacobian = dirac_jacobian(q, omega, self.constants)

        frame = pd.DataFrame({
            "q": q,
            "vartheta": vartheta,
            "zeta": zeta,
            "theta": theta,
            "Theta": np.atleast_1d(big_theta),
            "Omega0": np.atleast_1d(omega0),
            "jacobian": np.atleast_1d(jacobian),
        }, columns=DISPERSION_COLUMNS)

        if config.L is not None:
            quantization = QuantizationConfig(L=config.L)
            frame["n"] = [n_index(float(v), config.k0, quantization) for v in vartheta]

        logger.info(f"분산 표 생성 | k0={config.k0:.6g} rows={len(frame)}")
        return frame
