"""Fringe shifts and visibility reductions from rotation and gravity.

The lateral fringe displacement caused by a constant acceleration a is
a (L/v)^2; rotation enters through the Coriolis acceleration 2 v Omega and
a misaligned grating bar through g sin(tilt). With a Gaussian velocity
spread the shifted patterns average and the sinusoidal contrast drops by
the closed-form factors below. The mass bounds invert the Coriolis factor
at the 1/e visibility criterion.
"""

import math
from dataclasses import dataclass

from .constants import HBAR
from .errors import InvalidParameter


@dataclass(frozen=True)
class ShiftResult:
    """Lateral fringe displacement, absolute and as a fraction of a period."""

    displacement: float       # [m]
    period_fraction: float    # displacement / grating period

    @classmethod
    def for_geometry(cls, displacement, geom):
        return cls(displacement=displacement, period_fraction=displacement / geom.period)


def coriolis_shift(geom, beam, env):
    """Rotation-induced fringe displacement 2 Omega L^2 / v."""
    dx = 2.0 * env.rotation_rate * geom.separation ** 2 / beam.speed
    return ShiftResult.for_geometry(dx, geom)


def coriolis_reduction(geom, beam, env):
    """Velocity-averaged contrast factor for the rotation shift.

    exp(-8 [pi Omega L^2 sigma_v / (d v^2)]^2); equals 1 for a
    monochromatic beam or a non-rotating frame.
    """
    inner = (
        math.pi * env.rotation_rate * geom.separation ** 2 * beam.speed_sigma
        / (geom.period * beam.speed ** 2)
    )
    return math.exp(-8.0 * inner * inner)


def gravity_shift(geom, beam, env):
    """Gravity-induced fringe displacement g sin(tilt) L^2 / v^2."""
    dx = env.gravity * math.sin(geom.tilt) * geom.separation ** 2 / beam.speed ** 2
    return ShiftResult.for_geometry(dx, geom)


def gravity_reduction(geom, beam, env):
    """Velocity-averaged contrast factor for the gravity shift.

    exp(-2 [pi g sin(tilt) L^2 sigma_v / (d v^3)]^2), implemented with the
    published prefactor 2. An independent quadrature average of the same
    shift gives a slightly different value; see oracle.velocity_average_oracle,
    which reports both sides without forcing agreement.
    """
    inner = (
        math.pi * env.gravity * math.sin(geom.tilt) * geom.separation ** 2
        * beam.speed_sigma / (geom.period * beam.speed ** 3)
    )
    return math.exp(-2.0 * inner * inner)


def mass_bound_fixed_period(period, speed_sigma, rotation_rate):
    """Largest mass keeping the rotation factor above 1/e at fixed period.

    The interferometer is assumed to track the first self-imaging order as
    the mass grows, so the separation scales with m and the bound
    hbar (sqrt(2) pi / (Omega d^3 sigma_v))^(1/2) is velocity independent.
    """
    _require_positive(period=period, speed_sigma=speed_sigma, rotation_rate=rotation_rate)
    return HBAR * math.sqrt(
        math.sqrt(2.0) * math.pi / (rotation_rate * period ** 3 * speed_sigma)
    )


def mass_bound_fixed_length(separation, speed, speed_sigma, rotation_rate):
    """Largest mass keeping the rotation factor above 1/e at fixed length.

    Here the grating period shrinks with 1/sqrt(m) instead, giving
    hbar v^3 / (4 pi Omega^2 L^3 sigma_v^2).
    """
    _require_positive(
        separation=separation, speed=speed, speed_sigma=speed_sigma, rotation_rate=rotation_rate
    )
    return HBAR * speed ** 3 / (
        4.0 * math.pi * rotation_rate ** 2 * separation ** 3 * speed_sigma ** 2
    )


def velocity_selection_limit(min_period, max_separation, rotation_rate):
    """Mass-independent bound on sigma_v / v^2 once d and L hit hardware limits.

    d_min / (sqrt(8) pi Omega L_max^2), in s/m. A beam exactly at the bound
    sits exactly at the 1/e contrast criterion.
    """
    _require_positive(
        min_period=min_period, max_separation=max_separation, rotation_rate=rotation_rate
    )
    return min_period / (math.sqrt(8.0) * math.pi * rotation_rate * max_separation ** 2)


def sagnac_phase(geom, beam, env):
    """Rotation phase 2 m Omega A / hbar over the enclosed area A = N d L.

    When the separation equals N self-imaging lengths, the fringe shift in
    periods equals this phase over 2 pi.
    """
    area = geom.talbot_order * geom.period * geom.separation
    return 2.0 * beam.mass * env.rotation_rate * area / HBAR


def _require_positive(**kwargs):
    for name, value in kwargs.items():
        if not value > 0:
            raise InvalidParameter(f"{name} must be positive, got {value}")
