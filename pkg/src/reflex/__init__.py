"""Exact discriminant-form arithmetic, reflective cosets and compatibility graphs."""

from .errors import *  # noqa: F401,F403
from .lattice import (
    Coset,
    DiscriminantGroup,
    Lattice,
    discriminant_group,
    enumerate_cosets,
    make_lattice,
    pm_classes,
)
from .product import ProductCandidate, compatible, reflective_divisor, validate
from .reflect import ReflectiveClass, classify_reflective, induced_reflection

__version__ = "0.1.0"
