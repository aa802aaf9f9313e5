from .dispersion_service import DispersionService
from .kernel_service import KernelService
from .propagation_service import PropagationService
from .selftest_service import SelftestService

__all__ = ["DispersionService", "KernelService", "PropagationService", "SelftestService"]
