from .base_mode import BaseModeFamily
from .gaussian_modes import GaussianMode, HermiteGaussianMode, LaguerreGaussianMode

__all__ = ["BaseModeFamily", "GaussianMode", "HermiteGaussianMode", "LaguerreGaussianMode"]
