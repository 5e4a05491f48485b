"""
kernel.py - Angular kernels and local specific forces

The x and z pressures at a wing point are the Casimir prefactor over s^4
times an angular kernel: A2 integrates sin(t - 2 phi)^4 cos(t - phi) and A1
integrates sin(t - 2 phi)^4 sin(t - phi) over t in [theta1, theta2]. The
quadrature versions integrate the raw integrands and serve as an independent
oracle.

The closed forms substitute u = t - 2 phi and split both kernels into the
integrals of sin(u)^4 cos(u) and sin(u)^5. Each difference between the limits
is factored through sin((u2 - u1) / 2), so a narrow window keeps full relative
precision instead of cancelling two O(1) antiderivative values.

Sign convention: every ray pulls the plate toward the wing element it meets.
The z pressure therefore points at the opposite wing (negative, compressive)
and the x pressure follows the mean ray direction, +hbar c pi^2 A2 / (240 s^4).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy import integrate

from .constants import CONSTANTS, PhysicalConstants
from .errors import NonPositiveSeparation, QuadratureNonConvergence
from .geometry import ValidatedConfig, WingSide, limit_angles, s_parameter

logger = logging.getLogger(__name__)

# Oracle settings: absolute tolerance and QUADPACK subdivision budget.
QUAD_EPSABS = 1e-13
MAX_SUBDIVISIONS = 2 ** 10


@dataclass(frozen=True)
class KernelValue:
    """Both angular kernels for one (phi, theta1, theta2) triple."""

    a1: float
    a2: float


@dataclass(frozen=True)
class SpecificForce:
    """
    Local force per unit area at one wing point.

    Attributes:
        p_x: Pressure along x in the wing's own frame (N/m^2)
        p_z: Pressure along z in the wing's own frame (N/m^2)
        r: Distance of the point from the narrow end (m)
        side: Wing the point belongs to
    """

    p_x: float
    p_z: float
    r: float
    side: WingSide


def a2_antiderivative(phi, theta):
    """Antiderivative in theta of sin(theta - 2 phi)^4 cos(theta - phi)."""
    return (-90.0 * np.sin(phi - theta)
            + 20.0 * np.sin(5.0 * phi - 3.0 * theta)
            + 60.0 * np.sin(3.0 * phi - theta)
            - 3.0 * np.sin(9.0 * phi - 5.0 * theta)
            - 5.0 * np.sin(7.0 * phi - 3.0 * theta)) / 240.0


def a1_antiderivative(phi, theta):
    """Antiderivative in theta of sin(theta - 2 phi)^4 sin(theta - phi)."""
    return (-90.0 * np.cos(phi - theta)
            + 20.0 * np.cos(5.0 * phi - 3.0 * theta)
            - 60.0 * np.cos(3.0 * phi - theta)
            - 3.0 * np.cos(9.0 * phi - 5.0 * theta)
            + 5.0 * np.cos(7.0 * phi - 3.0 * theta)) / 240.0


def _spread4(x: float, y: float) -> float:
    """x^4 + x^3 y + x^2 y^2 + x y^3 + y^4, evaluated symmetrically in x and y."""
    p = x * y
    return (x * x) ** 2 + (y * y) ** 2 + p * (x * x + y * y) + p * p


def _sin5_divided(x: float, y: float) -> float:
    """(W(y) - W(x)) / (y - x) for W(w) = w^3 (4/3 - w + w^2 / 5)."""
    p = x * y
    square = x * x + y * y + p
    cube = (x * x) * x + (y * y) * y + p * (x + y)
    return 4.0 / 3.0 * square - cube + _spread4(x, y) / 5.0


def _window_integrals(u1: float, u2: float) -> Tuple[float, float]:
    """
    Integrals of sin(u)^4 cos(u) and sin(u)^5 over [u1, u2], u1 <= u2.

    sin^5 integrates to W(1 - cos u) near u = 0 and to 16/15 - W(1 + cos u)
    near u = pi; the branch is picked by the side of pi/2 the window sits on.
    """
    mid = 0.5 * (u1 + u2)
    step = math.sin(0.5 * (u2 - u1))
    s1, s2 = math.sin(u1), math.sin(u2)
    # sin u2 - sin u1 and cos u1 - cos u2
    d_sin = 2.0 * math.cos(mid) * step
    d_cos = 2.0 * math.sin(mid) * step
    quartic_cos = d_sin * _spread4(s1, s2) / 5.0
    if math.cos(mid) >= 0:
        w1, w2 = 2.0 * math.sin(0.5 * u1) ** 2, 2.0 * math.sin(0.5 * u2) ** 2
    else:
        w1, w2 = 2.0 * math.cos(0.5 * u1) ** 2, 2.0 * math.cos(0.5 * u2) ** 2
    quintic = d_cos * _sin5_divided(w1, w2)
    return quartic_cos, quintic


def kernel_value(phi: float, theta1: float, theta2: float) -> KernelValue:
    """
    Both closed-form kernels for one triple.

    Swapping the limits flips the sign of both values exactly.
    """
    if theta2 < theta1:
        flipped = kernel_value(phi, theta2, theta1)
        return KernelValue(a1=-flipped.a1, a2=-flipped.a2)
    quartic_cos, quintic = _window_integrals(theta1 - 2.0 * phi, theta2 - 2.0 * phi)
    c, s = math.cos(phi), math.sin(phi)
    # cos(u + phi) and sin(u + phi) expanded
    return KernelValue(a1=c * quintic + s * quartic_cos,
                       a2=c * quartic_cos - s * quintic)


def a2_closed(phi: float, theta1: float, theta2: float) -> float:
    """
    Closed-form x kernel.

    Args:
        phi: Half-opening angle (rad)
        theta1: Lower limit angle (rad)
        theta2: Upper limit angle (rad)

    Returns:
        float: Integral of sin(t - 2 phi)^4 cos(t - phi) from theta1 to theta2
    """
    return kernel_value(phi, theta1, theta2).a2


def a1_closed(phi: float, theta1: float, theta2: float) -> float:
    """Closed-form z kernel, the sine counterpart of a2_closed."""
    return kernel_value(phi, theta1, theta2).a1


def _adaptive(integrand: Callable[[float], float], theta1: float, theta2: float,
              max_subdivisions: int, what: str) -> float:
    result = integrate.quad(integrand, theta1, theta2, epsabs=QUAD_EPSABS, epsrel=0.0,
                            limit=max_subdivisions, full_output=1)
    if len(result) > 3:
        raise QuadratureNonConvergence(
            f"{what} quadrature did not reach {QUAD_EPSABS} on [{theta1}, {theta2}]: "
            f"{result[3]}",
            abserr=float(result[1]),
        )
    value, abserr, info = result
    logger.debug("%s quadrature: value=%.17g err=%.3g evaluations=%d",
                 what, value, abserr, info['neval'])
    return float(value)


def a2_quad(phi: float, theta1: float, theta2: float,
            max_subdivisions: int = MAX_SUBDIVISIONS) -> float:
    """
    Adaptive quadrature of the x-kernel integrand.

    Raises:
        QuadratureNonConvergence: If the absolute tolerance is not reached
    """
    return _adaptive(lambda t: np.sin(t - 2.0 * phi) ** 4 * np.cos(t - phi),
                     theta1, theta2, max_subdivisions, 'A2')


def a1_quad(phi: float, theta1: float, theta2: float,
            max_subdivisions: int = MAX_SUBDIVISIONS) -> float:
    """Adaptive quadrature of the z-kernel integrand."""
    return _adaptive(lambda t: np.sin(t - 2.0 * phi) ** 4 * np.sin(t - phi),
                     theta1, theta2, max_subdivisions, 'A1')


def specific_force(config: ValidatedConfig, r: float, side: WingSide,
                   constants: PhysicalConstants = CONSTANTS) -> SpecificForce:
    """
    Local x and z pressures at distance r along one wing.

    p_z = -P A1 is compressive and p_x = +P A2 points along the rays, with
    P = hbar c pi^2 / (240 s^4). Long parallel plates thus have their ends
    pushed toward the middle.

    Geometry errors (NumericalDomain, SingularSeparation, PointOutsideWing)
    propagate unchanged.
    """
    angles = limit_angles(config, r, side)
    s = s_parameter(config, r, angles.theta2)
    kernels = kernel_value(config.phi, angles.theta1, angles.theta2)
    scale = constants.casimir_prefactor / s ** 4
    return SpecificForce(p_x=scale * kernels.a2, p_z=-scale * kernels.a1, r=r, side=side)


def classical_casimir_pressure(a: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """
    Ideal parallel-mirror pressure -hbar c pi^2 / (240 a^4).

    Raises:
        NonPositiveSeparation: If a is not positive
    """
    if not a > 0:
        raise NonPositiveSeparation(f"Separation must be positive, got {a!r}", a=a)
    return -constants.casimir_prefactor / a ** 4
