from .grid import TransverseGrid
from .envelope import ScalarEnvelope, VectorEnvelope
from .optics import (
    KernelValue,
    ModeCoefficients,
    PhotonWavefunction,
    PolarizationBasis,
    SlowlyVaryingPolarization,
)

__all__ = [
    "TransverseGrid",
    "ScalarEnvelope",
    "VectorEnvelope",
    "PolarizationBasis",
    "SlowlyVaryingPolarization",
    "KernelValue",
    "PhotonWavefunction",
    "ModeCoefficients",
]
