from .base_propagator import BasePropagator
from .exact_propagator import ExactPropagator
from .paraxial_propagator import ParaxialPropagator

__all__ = ["BasePropagator", "ExactPropagator", "ParaxialPropagator"]
