"""
MPQ Exact (Maxwell-paraxial) 전파기

위상 κ(q) = q²c/(2Ω₀), 승격 인자 ε⁽λ⁾(q̂, Θ)·w(q, ω)
"""
import numpy as np

from core.enums import Polarization, PropagationModel
from domain.entities.grid import TransverseGrid
from domain.physics.dispersion import frequency_arrays
from domain.physics.polarization import amplitude_weight, polarization_field
from domain.propagation.base_propagator import BasePropagator


class ExactPropagator(BasePropagator):
    """Ω₀ 위상을 쓰는 정확한 모델"""

    model = PropagationModel.EXACT

    def phase_rate(self, grid: TransverseGrid, omega: float) -> np.ndarray:
        q2 = grid.q_squared()
        _, omega0 = frequency_arrays(np.sqrt(q2), omega, self.constants)
        return q2 * self.constants.c / (2.0 * omega0)

    def polarization_factor(self, grid: TransverseGrid, omega: float,
                            polarization: Polarization) -> np.ndarray:
        qx, qy = grid.q_mesh()
        q = np.hypot(qx, qy)
        theta, _ = frequency_arrays(q, omega, self.constants)
        weight = amplitude_weight(q, omega, self.constants)
        return polarization_field(qx, qy, theta, polarization) * weight[np.newaxis]
