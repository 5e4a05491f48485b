"""
forces.py - Integrated wing forces, torque and expulsion effectiveness

The local pressures from kernel.py are integrated along each wing and
multiplied by the cavity width L. Per-wing forces keep each wing's own z
sense, in which negative z points at the opposite wing; the totals are plain
sums, right wing first. The torque is the y component of the moment of that
same (p_x, p_z) load about the centroid of the two wing segments, per unit
width.

Usage:
    config = validate(CavityConfig(a=4e-10, R=2e-9, phi=math.radians(1)))
    total = total_force(config)
    best = find_reff(config, 0.1 * config.a, 100 * config.a)
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import integrate

from .errors import (
    CavityError,
    DivisionByZeroForce,
    InvalidBracket,
    InvalidSampleCount,
    NotUnimodal,
    QuadratureNonConvergence,
)
from .geometry import (
    CavityConfig,
    ValidatedConfig,
    WingSide,
    max_opening_angle,
    point_set,
    validate,
)
from .kernel import specific_force
from .optimize import golden_section_maximize, scan_maxima

logger = logging.getLogger(__name__)

# Relative tolerance of the wing integrals (max-norm over [p_x, p_z, moment]).
RTOL = 1e-10
# Absolute floor so that compensated integrals near zero terminate.
ABS_FLOOR = 1e-30
QUAD_LIMIT = 10000

DEFAULT_SAMPLES = 512
SCAN_POINTS = 64
REFF_RTOL = 1e-4
ANGLE_TOL = 1e-7

SIDES = (WingSide.RIGHT, WingSide.LEFT)


@dataclass(frozen=True, eq=False)
class ForceProfile:
    """Specific forces sampled on a uniform grid along one wing."""

    r_over_R: np.ndarray
    p_x: np.ndarray
    p_z: np.ndarray
    side: WingSide
    config: CavityConfig

    @property
    def r(self) -> np.ndarray:
        return self.r_over_R * self.config.R

    @property
    def samples(self) -> List[Tuple[float, float, float]]:
        return [(float(u), float(px), float(pz))
                for u, px, pz in zip(self.r_over_R, self.p_x, self.p_z)]

    def __len__(self) -> int:
        return int(self.r_over_R.size)


@dataclass(frozen=True)
class WingForce:
    """Integrated force on one wing (N)."""

    f_x: float
    f_z: float
    side: WingSide
    quadrature_error: float


@dataclass(frozen=True)
class TotalForce:
    """
    Forces on the whole configuration.

    Attributes:
        f_x_total: Sum of the per-wing x forces (N)
        f_z_total: Sum of the per-wing z forces (N)
        per_wing: Right then left wing forces
        torque_y: Moment about the centroid per unit width (N m / m),
            positive anticlockwise with the (x, z) plane seen from +y
    """

    f_x_total: float
    f_z_total: float
    per_wing: Tuple[WingForce, WingForce]
    torque_y: float

    def wing(self, side: WingSide) -> WingForce:
        return self.per_wing[0] if side is WingSide.RIGHT else self.per_wing[1]


@dataclass(frozen=True)
class EffectivenessResult:
    """Best wing length found by find_reff."""

    w_x: float
    r_eff: float
    f_at_reff: float
    interior: bool = True


@dataclass(frozen=True)
class AngleOptimum:
    """Opening angle that maximizes |F_x| at fixed R and shift."""

    phi: float
    f_x: float
    interior: bool = True


@dataclass(frozen=True)
class TrapezoidEstimate:
    """Fixed-grid trapezoid integral with its Richardson error estimate (N)."""

    f_x: float
    f_z: float
    error_x: float
    error_z: float
    side: WingSide
    n_intervals: int


def force_profile(config: ValidatedConfig, side: WingSide,
                  n_samples: int = DEFAULT_SAMPLES) -> ForceProfile:
    """
    Sample p_x and p_z uniformly along one wing.

    The grid runs over [0, R], or [eps R, R] for a triangle. A failing
    sample aborts the profile; the offending r is added to the error details.

    Args:
        config: Validated configuration
        side: Wing to sample
        n_samples: Number of grid points, at least 2

    Returns:
        ForceProfile: Samples in increasing r
    """
    if n_samples < 2:
        raise InvalidSampleCount(f"A profile needs at least 2 samples, got {n_samples}",
                                 n_samples=n_samples)
    config = validate(config)
    grid = np.linspace(config.r_start, config.R, n_samples)
    grid[-1] = config.R
    p_x = np.empty(n_samples)
    p_z = np.empty(n_samples)
    for i, r in enumerate(grid):
        try:
            force = specific_force(config, float(r), side)
        except CavityError as exc:
            exc.details.setdefault('r', float(r))
            exc.details.setdefault('side', side.value)
            raise
        p_x[i], p_z[i] = force.p_x, force.p_z
    logger.debug("Sampled %d points on the %s wing", n_samples, side.value)
    return ForceProfile(r_over_R=grid / config.R, p_x=p_x, p_z=p_z, side=side, config=config)


def _centroid(config: ValidatedConfig) -> Tuple[float, float]:
    """Mean of the two wing midpoints."""
    half = 0.5 * config.R
    x_bar = half * math.cos(config.phi) - 0.5 * config.dx
    z_bar = -0.5 * config.a
    return x_bar, z_bar


def _load_density(config: ValidatedConfig, side: WingSide, r: float) -> np.ndarray:
    """[p_x, p_z, moment / R] at one wing point."""
    force = specific_force(config, r, side)
    x, z = point_set(config, r, side).m1
    x_bar, z_bar = _centroid(config)
    # y component of (x - x_bar, z - z_bar) x (p_x, p_z)
    moment = (z - z_bar) * force.p_x - (x - x_bar) * force.p_z
    return np.array([force.p_x, force.p_z, moment / config.R])


def _breakpoints(config: ValidatedConfig) -> Optional[List[float]]:
    lo, hi = config.r_start, config.R
    points = set()
    if config.a == 0:
        # geometric refinement toward the apex
        points.update(float(p) for p in np.geomspace(lo, hi, 20)[1:-1])
    for candidate in (config.dx, config.R - config.dx):
        if lo < candidate < hi:
            points.add(float(candidate))
    return sorted(points) or None


def _integrate_load(config: ValidatedConfig, side: WingSide,
                    rtol: float = RTOL) -> Tuple[np.ndarray, float]:
    """Integrate the load density over one wing; returns (integrals, error)."""
    result, error, info = integrate.quad_vec(
        lambda r: _load_density(config, side, r),
        config.r_start, config.R,
        epsabs=ABS_FLOOR, epsrel=rtol, norm='max', limit=QUAD_LIMIT,
        points=_breakpoints(config), full_output=True,
    )
    if info.status == 1:
        raise QuadratureNonConvergence(
            f"Integral over the {side.value} wing did not converge: {info.message}",
            side=side.value, error=float(error), intervals=int(info.intervals.shape[0]),
        )
    if info.status == 2:
        logger.warning("Roundoff limited the %s wing integral (error %.3g)",
                       side.value, error)
    logger.debug("%s wing integral: %s error=%.3g evaluations=%d",
                 side.value, result, error, info.neval)
    return np.asarray(result, dtype=float), float(error)


def integrate_wing(config: ValidatedConfig, side: WingSide, rtol: float = RTOL) -> WingForce:
    """
    Integrated x and z force on one wing.

    Args:
        config: Validated configuration
        side: Wing to integrate
        rtol: Relative tolerance of the adaptive quadrature

    Returns:
        WingForce: L times the integrals of p_x and p_z along the wing

    Raises:
        QuadratureNonConvergence: If the subdivision limit is reached
    """
    config = validate(config)
    integrals, error = _integrate_load(config, side, rtol)
    return WingForce(f_x=config.L * float(integrals[0]), f_z=config.L * float(integrals[1]),
                     side=side, quadrature_error=config.L * error)


def total_force(config: ValidatedConfig, rtol: float = RTOL) -> TotalForce:
    """Sum of both wings (right then left) and the centroid torque."""
    config = validate(config)
    wings = []
    moment = 0.0
    for side in SIDES:
        integrals, error = _integrate_load(config, side, rtol)
        wings.append(WingForce(f_x=config.L * float(integrals[0]),
                               f_z=config.L * float(integrals[1]),
                               side=side, quadrature_error=config.L * error))
        moment += float(integrals[2])
    right, left = wings
    return TotalForce(
        f_x_total=right.f_x + left.f_x,
        f_z_total=right.f_z + left.f_z,
        per_wing=(right, left),
        torque_y=moment * config.R,
    )


def torque(config: ValidatedConfig, rtol: float = RTOL) -> float:
    """
    Moment of the Casimir load about the configuration centroid.

    The load is (p_x, p_z) at each wing point, the field whose integrals are
    f_x_total and f_z_total. The result is the y component of the moment per
    unit width: for shifted parallel plates the z parts cancel and it equals
    a times the right-wing x force per unit width.
    """
    config = validate(config)
    return config.R * sum(float(_integrate_load(config, side, rtol)[0][2]) for side in SIDES)


def _f_x(config: ValidatedConfig, side: Optional[WingSide] = None) -> float:
    """x force of one wing, or of both when side is None."""
    sides = SIDES if side is None else (side,)
    return sum(integrate_wing(config, s).f_x for s in sides)


def expulsion_effectiveness(config: ValidatedConfig,
                            side: Optional[WingSide] = None) -> float:
    """
    W_x = |F_x| / R, the expulsion force gained per unit wing length.

    F_x is the configuration total by default, or one wing's force when side
    is given.
    """
    config = validate(config)
    return abs(_f_x(config, side)) / config.R


def find_reff(config: ValidatedConfig, r_min: float, r_max: float,
              n_scan: int = SCAN_POINTS, rtol: float = REFF_RTOL,
              side: Optional[WingSide] = None) -> EffectivenessResult:
    """
    Wing length that maximizes the expulsion effectiveness.

    W_x is scanned on n_scan log-spaced lengths across [r_min, r_max]. A
    single maximum is refined by golden-section search in log R to the
    relative tolerance rtol; several separated maxima are reported instead
    of picking one. A maximum at the edge of the bracket is returned with
    interior=False.

    Args:
        config: Configuration whose R is varied (a, L, phi, dx are kept)
        r_min: Smallest wing length of the bracket (m)
        r_max: Largest wing length of the bracket (m)
        n_scan: Number of scan points
        rtol: Relative tolerance on the returned length
        side: Wing whose effectiveness is maximized; both wings when None

    Returns:
        EffectivenessResult: W_x, R_eff and F_x at R_eff (of the same wing)

    Raises:
        InvalidBracket: Unless 0 < r_min < r_max
        NotUnimodal: If the scan finds several maxima; carries their lengths
    """
    if not (math.isfinite(r_min) and math.isfinite(r_max) and 0 < r_min < r_max):
        raise InvalidBracket(f"Need 0 < r_min < r_max, got [{r_min!r}, {r_max!r}]",
                             r_min=r_min, r_max=r_max)
    if n_scan < 3:
        raise InvalidSampleCount(f"The scan needs at least 3 points, got {n_scan}",
                                 n_samples=n_scan)

    def effectiveness(log_r: float) -> float:
        return expulsion_effectiveness(validate(config.evolve(R=math.exp(log_r))), side)

    log_grid = np.linspace(math.log(r_min), math.log(r_max), n_scan)
    values = [effectiveness(float(x)) for x in log_grid]
    peaks = scan_maxima(values)
    if len(peaks) > 1:
        candidates = [math.exp(float(log_grid[i])) for i in peaks]
        raise NotUnimodal(f"W_x has {len(peaks)} separated maxima on the bracket",
                          candidates)

    peak = peaks[0]
    interior = 0 < peak < n_scan - 1
    if interior:
        best = golden_section_maximize(effectiveness, float(log_grid[peak - 1]),
                                       float(log_grid[peak + 1]), tol=rtol)
        r_eff, w_x = math.exp(best.argmax), best.maximum
    else:
        r_eff, w_x = math.exp(float(log_grid[peak])), values[peak]
        logger.warning("W_x is largest at the bracket edge R = %.6g m", r_eff)

    f_x = _f_x(validate(config.evolve(R=r_eff)), side)
    logger.info("R_eff = %.6g m with W_x = %.6g N/m and F_x = %.6g N", r_eff, w_x, f_x)
    return EffectivenessResult(w_x=w_x, r_eff=r_eff, f_at_reff=f_x, interior=interior)


def find_optimal_angle(config: ValidatedConfig, phi_min: float = 0.0,
                       phi_max: Optional[float] = None, n_scan: int = SCAN_POINTS,
                       tol: float = ANGLE_TOL) -> AngleOptimum:
    """
    Opening angle with the largest |F_x| at fixed wing length and shift.

    The upper end defaults to 10 degrees and is capped at the largest
    admissible angle for the configuration's a and dx.
    """
    limit = max_opening_angle(config.a, config.dx)
    if phi_max is None:
        phi_max = math.radians(10.0)
    if config.dx == 0:
        phi_max = min(phi_max, float(np.nextafter(limit, 0.0)))
    else:
        phi_max = min(phi_max, limit)
    if not (math.isfinite(phi_min) and 0 <= phi_min < phi_max):
        raise InvalidBracket(f"Need 0 <= phi_min < phi_max, got [{phi_min!r}, {phi_max!r}]",
                             phi_min=phi_min, phi_max=phi_max)

    def magnitude(phi: float) -> float:
        return abs(_f_x(validate(config.evolve(phi=phi))))

    grid = np.linspace(phi_min, phi_max, n_scan)
    values = [magnitude(float(phi)) for phi in grid]
    peaks = scan_maxima(values)
    if len(peaks) > 1:
        raise NotUnimodal(f"|F_x| has {len(peaks)} separated maxima in phi",
                          [float(grid[i]) for i in peaks])

    peak = peaks[0]
    interior = 0 < peak < n_scan - 1
    if interior:
        best = golden_section_maximize(magnitude, float(grid[peak - 1]),
                                       float(grid[peak + 1]), tol=tol)
        phi = best.argmax
    else:
        phi = float(grid[peak])
        logger.warning("|F_x| is largest at the bracket edge phi = %.6g rad", phi)
    f_x = _f_x(validate(config.evolve(phi=phi)))
    return AngleOptimum(phi=phi, f_x=f_x, interior=interior)


def force_ratio(config: ValidatedConfig) -> float:
    """
    Ratio of total expulsion to total compression, F_x / F_z.

    Raises:
        DivisionByZeroForce: If F_z vanishes
    """
    total = total_force(config)
    if total.f_z_total == 0:
        raise DivisionByZeroForce("Total z force is zero")
    return total.f_x_total / total.f_z_total


def trapezoid_wing_force(config: ValidatedConfig, side: WingSide,
                         n_intervals: int = 16) -> TrapezoidEstimate:
    """
    Wing force by the trapezoid rule on a uniform grid.

    The error estimate is the Richardson difference against the same rule on
    every other grid point, (T_n - T_n/2) / 3.
    """
    if n_intervals < 2 or n_intervals % 2:
        raise InvalidSampleCount(f"Need an even number of intervals, got {n_intervals}",
                                 n_samples=n_intervals)
    profile = force_profile(config, side, n_intervals + 1)
    r = profile.r
    fine = np.array([integrate.trapezoid(profile.p_x, r), integrate.trapezoid(profile.p_z, r)])
    coarse = np.array([integrate.trapezoid(profile.p_x[::2], r[::2]),
                       integrate.trapezoid(profile.p_z[::2], r[::2])])
    L = profile.config.L
    error = (fine - coarse) / 3.0
    return TrapezoidEstimate(f_x=L * float(fine[0]), f_z=L * float(fine[1]),
                             error_x=L * float(error[0]), error_z=L * float(error[1]),
                             side=side, n_intervals=n_intervals)
