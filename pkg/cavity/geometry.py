"""
geometry.py - Cavity configurations, limit angles and the separation parameter

A cavity is two flat mirror wings of length R in the (x, z) plane, extruded
by L along y. The right wing starts at the origin and rises at the angle phi;
the left wing starts at (-dx, -a) and falls at the angle phi. Every point r
of a wing sees the opposite wing between two limit angles, measured from the
wing's own outward direction.
"""

import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from .errors import (
    AngleOutOfRange,
    DegenerateTriangle,
    NonPositiveDimension,
    NumericalDomain,
    PointOutsideWing,
    SingularSeparation,
)

logger = logging.getLogger(__name__)

# Rounding slack accepted on arccos arguments before they are clamped.
ARCCOS_TOLERANCE = 1e-12

# |sin(phi - theta2)| below this makes the separation parameter singular.
SINGULAR_SINE = 1e-15

# Relative start of the integration domain for the triangle (a = 0).
APEX_CUTOFF = 1e-9

Point = Tuple[float, float]


class WingSide(Enum):
    """The two wings of a cavity."""

    RIGHT = "right"
    LEFT = "left"

    @property
    def other(self) -> 'WingSide':
        return WingSide.LEFT if self is WingSide.RIGHT else WingSide.RIGHT


@dataclass(frozen=True)
class CavityConfig:
    """
    Geometric scenario of one cavity.

    Attributes:
        a: Plate separation at the narrow end (m)
        R: Wing length (m)
        L: Cavity width along y (m)
        phi: Half-opening angle of each wing (rad)
        dx: Shift of the left wing against the x axis (m)
    """

    a: float
    R: float
    L: float = 1.0
    phi: float = 0.0
    dx: float = 0.0

    def evolve(self, **changes: float) -> 'CavityConfig':
        """Return an unvalidated copy with some fields replaced."""
        fields = self.to_dict()
        fields.update(changes)
        return CavityConfig(**fields)

    def scaled(self, factor: float) -> 'CavityConfig':
        """Scale every in-plane length (a, R, dx) by factor; L is kept."""
        return self.evolve(a=self.a * factor, R=self.R * factor, dx=self.dx * factor)

    def to_dict(self) -> Dict[str, float]:
        return {key: float(value) for key, value in asdict(self).items()}


@dataclass(frozen=True)
class ValidatedConfig(CavityConfig):
    """A configuration that passed validate(); only validate() creates these."""

    @property
    def r_start(self) -> float:
        """Lower end of the integration domain along each wing."""
        return APEX_CUTOFF * self.R if self.a == 0 else 0.0

    @property
    def cutoff(self) -> Optional[float]:
        """Relative apex cutoff when the cavity is a triangle, otherwise None."""
        return APEX_CUTOFF if self.a == 0 else None


@dataclass(frozen=True)
class LimitAngles:
    """Angular bounds of the virtual rays leaving one wing point (rad)."""

    theta1: float
    theta2: float


@dataclass(frozen=True)
class PointSet:
    """The four construction points of the directing-vector formulas."""

    m0: Point
    m1: Point
    m2: Point
    m3: Point


def max_opening_angle(a: float, dx: float) -> float:
    """
    Largest admissible half-opening angle, arccot(dx/a).

    Beyond it the left wing's near end crosses the line of the right wing and
    the pair forms a different (two-cavity) configuration.
    """
    if dx == 0:
        return math.pi / 2
    return math.atan2(a, dx)


def validate(config: CavityConfig) -> ValidatedConfig:
    """
    Check a configuration against the admissible domain.

    Args:
        config: Configuration to check

    Returns:
        ValidatedConfig: The same values tagged as valid

    Raises:
        NonPositiveDimension: If R or L is not positive, or a or dx is negative
        DegenerateTriangle: If a = 0 together with a shift or a zero opening
        AngleOutOfRange: If phi is negative or exceeds arccot(dx/a)
    """
    if isinstance(config, ValidatedConfig):
        return config

    a, R, L, phi, dx = config.a, config.R, config.L, config.phi, config.dx
    for name, value in (('a', a), ('R', R), ('L', L), ('dx', dx)):
        if not math.isfinite(value):
            raise NonPositiveDimension(f"{name} must be finite, got {value!r}", field=name)
    if R <= 0:
        raise NonPositiveDimension(f"Wing length R must be positive, got {R!r}", field='R')
    if L <= 0:
        raise NonPositiveDimension(f"Cavity width L must be positive, got {L!r}", field='L')
    if a < 0:
        raise NonPositiveDimension(f"Separation a must be non-negative, got {a!r}", field='a')
    if dx < 0:
        raise NonPositiveDimension(f"Shift dx must be non-negative, got {dx!r}", field='dx')

    if a == 0 and dx > 0:
        raise DegenerateTriangle("A triangle (a = 0) cannot be shifted")
    if a == 0 and phi == 0:
        raise DegenerateTriangle("Closed slit: a = 0 with phi = 0 leaves no cavity")

    if not math.isfinite(phi) or phi < 0:
        raise AngleOutOfRange(f"Opening angle must be a non-negative number, got {phi!r}")
    limit = max_opening_angle(a, dx)
    if dx == 0 and phi >= limit:
        raise AngleOutOfRange(f"Opening angle {phi!r} rad must stay below pi/2")
    if dx > 0 and phi > limit:
        raise AngleOutOfRange(
            f"Opening angle {phi!r} rad exceeds arccot(dx/a) = {limit!r} rad",
            limit=limit,
        )

    return ValidatedConfig(a=float(a), R=float(R), L=float(L), phi=float(phi), dx=float(dx))


def _check_point(config: ValidatedConfig, r: float) -> None:
    if not 0 <= r <= config.R:
        raise PointOutsideWing(f"r = {r!r} lies outside the wing [0, {config.R!r}]", r=r)


def point_set(config: ValidatedConfig, r: float, side: WingSide) -> PointSet:
    """
    Construction points for a point r on the given wing.

    M1 is the wing point itself; M2 and M3 are the far and near ends used by
    the directing vectors; M0 is the origin (narrow end of the right wing).
    """
    _check_point(config, r)
    a, R, phi, dx = config.a, config.R, config.phi, config.dx
    cos_p, sin_p = math.cos(phi), math.sin(phi)
    m3 = (-dx, -a)
    if side is WingSide.RIGHT:
        m1 = (r * cos_p, r * sin_p)
        m2 = (R * cos_p - dx, -R * sin_p - a)
    else:
        m1 = (r * cos_p - dx, -r * sin_p - a)
        m2 = (R * cos_p, R * sin_p)
    return PointSet(m0=(0.0, 0.0), m1=m1, m2=m2, m3=m3)


def _arccos(argument: float, what: str) -> float:
    """arccos with rounding slack: clamps within tolerance, refuses beyond it."""
    if not math.isfinite(argument) or abs(argument) > 1.0 + ARCCOS_TOLERANCE:
        raise NumericalDomain(f"arccos argument {argument!r} out of range for {what}",
                              argument=argument)
    return math.acos(max(-1.0, min(1.0, argument)))


def _ratio(numerator: float, norm: float, what: str) -> float:
    if norm == 0:
        raise NumericalDomain(f"Zero-length ray for {what}")
    return numerator / norm


def limit_angles_unshifted(config: ValidatedConfig, r: float) -> LimitAngles:
    """Limit angles of the unshifted trapezoid (right wing, dx ignored)."""
    _check_point(config, r)
    a, R, phi = config.a, config.R, config.phi
    cos_p, sin_p = math.cos(phi), math.sin(phi)

    norm1 = math.sqrt((a + (R + r) * sin_p) ** 2 + ((r - R) * cos_p) ** 2)
    theta1 = _arccos(_ratio(-(r + a * sin_p - R * math.cos(2 * phi)), norm1, 'theta1'), 'theta1')

    # sqrt(a^2 + r^2 + 2 r a sin(phi)), written as the shifted form with dx = 0
    norm2 = math.hypot(r * cos_p, a + r * sin_p)
    theta2 = _arccos(_ratio(-(r + a * sin_p), norm2, 'theta2'), 'theta2')
    return LimitAngles(theta1=theta1, theta2=theta2)


def limit_angles_right(config: ValidatedConfig, r: float) -> LimitAngles:
    """
    Limit angles at a point of the right wing for an arbitrary shift.

    Theta1 is the angle between the wing direction and the ray to the far
    end of the left wing, theta2 the one to its near end.

    Args:
        config: Validated configuration
        r: Distance of the point from the narrow end of the wing

    Returns:
        LimitAngles: The pair (theta1, theta2)
    """
    _check_point(config, r)
    a, R, phi, dx = config.a, config.R, config.phi, config.dx
    cos_p, sin_p = math.cos(phi), math.sin(phi)

    norm1 = math.sqrt((a + (R + r) * sin_p) ** 2 + (dx + (r - R) * cos_p) ** 2)
    numerator1 = r + a * sin_p + dx * cos_p - R * math.cos(2 * phi)
    theta1 = _arccos(_ratio(numerator1, -norm1, 'theta1 (right)'), 'theta1 (right)')

    norm2 = math.hypot(dx + r * cos_p, a + r * sin_p)
    numerator2 = r + a * sin_p + dx * cos_p
    theta2 = _arccos(_ratio(numerator2, -norm2, 'theta2 (right)'), 'theta2 (right)')
    return LimitAngles(theta1=theta1, theta2=theta2)


def limit_angles_left(config: ValidatedConfig, r: float) -> LimitAngles:
    """
    Limit angles at a point of the shifted left wing.

    Theta1 looks at the far end of the right wing, theta2 at its near end
    (the origin). Both are measured from the left wing's outward direction,
    so the unshifted cavity gives the same angles on both wings.
    """
    _check_point(config, r)
    a, R, phi, dx = config.a, config.R, config.phi, config.dx
    cos_p, sin_p = math.cos(phi), math.sin(phi)

    norm1 = math.sqrt((a + (R + r) * sin_p) ** 2 + (dx + (R - r) * cos_p) ** 2)
    numerator1 = R + r + a * sin_p - dx * cos_p - 2 * R * cos_p ** 2
    theta1 = _arccos(_ratio(numerator1, -norm1, 'theta1 (left)'), 'theta1 (left)')

    norm2 = math.hypot(r * cos_p - dx, a + r * sin_p)
    numerator2 = r + a * sin_p - dx * cos_p
    theta2 = _arccos(_ratio(numerator2, -norm2, 'theta2 (left)'), 'theta2 (left)')
    return LimitAngles(theta1=theta1, theta2=theta2)


def limit_angles(config: ValidatedConfig, r: float, side: WingSide) -> LimitAngles:
    if side is WingSide.RIGHT:
        return limit_angles_right(config, r)
    return limit_angles_left(config, r)


def s_parameter(config: ValidatedConfig, r: float, theta2: float) -> float:
    """
    Effective separation entering the pressures as s^-4.

    For the unshifted cavity this is the perpendicular distance from the wing
    point to the opposite wing; for parallel plates it is exactly a.

    Raises:
        SingularSeparation: If sin(phi - theta2) vanishes
    """
    phi = config.phi
    denominator = math.sin(phi - theta2)
    if abs(denominator) < SINGULAR_SINE:
        raise SingularSeparation(
            f"sin(phi - theta2) = {denominator!r} is singular at r = {r!r}", r=r)
    # the sine ratio is exactly 1 at phi = 0, which keeps s == a bit-for-bit
    return (math.sin(2 * phi - theta2) / denominator) * (config.a + r * math.sin(phi))


def describe(config: CavityConfig) -> Dict[str, Any]:
    """Configuration echo used in logs and output metadata."""
    echo: Dict[str, Any] = config.to_dict()
    echo['phi_deg'] = math.degrees(config.phi)
    if isinstance(config, ValidatedConfig) and config.cutoff is not None:
        echo['apex_cutoff'] = config.cutoff
    return echo
