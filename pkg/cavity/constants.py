"""
constants.py - Physical constants of the perfect-mirror Casimir model

The values are CODATA 2018 and are pinned: every result in this project is
reproducible bit-for-bit only against these exact numbers.
"""

import math
from dataclasses import dataclass
from typing import Dict


@dataclass(frozen=True)
class PhysicalConstants:
    """Reduced Planck constant and light velocity (SI units)."""

    hbar: float = 1.054571817e-34
    c: float = 299792458.0

    @property
    def casimir_prefactor(self) -> float:
        """The factor hbar*c*pi^2/240 shared by every pressure formula (J*m)."""
        return self.hbar * self.c * math.pi ** 2 / 240.0

    def to_dict(self) -> Dict[str, float]:
        return {'hbar': self.hbar, 'c': self.c}


CONSTANTS = PhysicalConstants()
