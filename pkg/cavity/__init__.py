"""
Cavity package for the Casimir expulsion project.

This package models open trapezoid and parallel nanocavities made of perfect
mirrors: their geometry, the angular kernels of the virtual-ray model, and the
noncompensated (expulsion) forces, torques and optimal wing lengths that
follow from them.
"""

__version__ = "0.1.0"

from .errors import CavityError
from .geometry import CavityConfig, ValidatedConfig, WingSide, validate
from .forces import total_force

__all__ = ['CavityError', 'CavityConfig', 'ValidatedConfig', 'WingSide',
           'validate', 'total_force', '__version__']
