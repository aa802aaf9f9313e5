"""
MPQ Paraxial 전파기

위상 κ(q) = q²c/(2ω), 승격 인자 e⁽λ⁾(q) (0차 편광)
"""
import numpy as np

from core.enums import Polarization, PropagationModel
from domain.entities.grid import TransverseGrid
from domain.physics.polarization import zeroth_order_field
from domain.propagation.base_propagator import BasePropagator


class ParaxialPropagator(BasePropagator):
    """근축 Green 함수 모델"""

    model = PropagationModel.PARAXIAL

    def phase_rate(self, grid: TransverseGrid, omega: float) -> np.ndarray:
        return grid.q_squared() * self.constants.c / (2.0 * omega)

    def polarization_factor(self, grid: TransverseGrid, omega: float,
                            polarization: Polarization) -> np.ndarray:
        qx, qy = grid.q_mesh()
        return zeroth_order_field(qx, qy, polarization)
