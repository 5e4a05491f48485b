"""
Acceptance checks against published values of the shifted trapezoid cavity.

These compare against numbers read off plots and prose at a separation that
is not stated with them (a = 4e-10 m), so they are expected-to-fail
rather than hard requirements: a pass is reported as XPASS. The figures for
shifted cavities describe the right wing, so those checks use its force.
"""

import math

import pytest

from cavity.forces import find_reff, force_ratio, integrate_wing, total_force
from cavity.geometry import CavityConfig, WingSide, validate

pytestmark = [pytest.mark.published, pytest.mark.slow]

A = 4e-10
R_EFF = 1.85e-9
ONE_DEGREE = math.radians(1.0)

unconfirmed = pytest.mark.xfail(strict=False, reason="published value at an assumed separation")


def cavity(R=R_EFF, dx=0.0, phi=ONE_DEGREE):
    return validate(CavityConfig(a=A, R=R, L=1.0, phi=phi, dx=dx))


def right_wing(config):
    return integrate_wing(config, WingSide.RIGHT)


@unconfirmed
def test_reff_unshifted():
    """Test the optimal wing length of the unshifted trapezoid."""
    result = find_reff(cavity(), 0.1 * A, 100 * A)
    assert result.r_eff == pytest.approx(R_EFF, rel=0.10)


@unconfirmed
def test_force_at_reff():
    """Test the expulsion force of one wing at the optimal length."""
    assert right_wing(cavity()).f_x == pytest.approx(-5.7, rel=0.15)


@unconfirmed
def test_force_after_small_shift():
    """Test the right-wing force at its optimum after a shift of half a separation."""
    shifted = find_reff(cavity(dx=0.5 * A), 0.1 * A, 100 * A, side=WingSide.RIGHT)
    before = right_wing(cavity()).f_x

    assert 2 <= shifted.f_at_reff / before <= 6
    assert abs(shifted.f_at_reff) == pytest.approx(21.0, rel=0.15)


@unconfirmed
def test_ratio_limits_for_long_wings():
    """Test |F_x / F_z| for long wings with and without shift."""
    assert abs(force_ratio(cavity(R=1000 * A))) == pytest.approx(4.2e-3, rel=0.15)
    shifted = right_wing(cavity(R=1000 * A, dx=0.5 * A))
    assert abs(shifted.f_x / shifted.f_z) == pytest.approx(1.3e-2, rel=0.15)


@unconfirmed
def test_ratio_at_shifted_optimum():
    """Test |F_x / F_z| of the right wing at R = a after a shift of half a separation."""
    wing = right_wing(cavity(R=A, dx=0.5 * A))
    assert abs(wing.f_x / wing.f_z) == pytest.approx(0.46, rel=0.15)


@unconfirmed
def test_small_shift_retains_force():
    """Test that a shift of 5% of R keeps about 99% of the expulsion force."""
    before = total_force(cavity()).f_x_total
    after = total_force(cavity(dx=0.05 * R_EFF)).f_x_total
    assert abs(after) / abs(before) == pytest.approx(0.99, abs=0.02)


@unconfirmed
def test_per_wing_force_exceeds_total_after_shift():
    """Test that per-wing forces are about ten times the total after a 5% shift."""
    total = total_force(cavity(dx=0.05 * R_EFF))
    largest = max(abs(wing.f_x) for wing in total.per_wing)
    assert 5 <= largest / abs(total.f_x_total) <= 20
