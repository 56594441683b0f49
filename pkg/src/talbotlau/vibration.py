"""Fringe shifts and contrast factors for oscillating gratings.

Only transverse grating motion matters at sub-micrometer amplitudes; the
other rigid-body modes couple in weakly. A displacement x_k of grating k
moves the pattern by the composite x1 - 2 x2 + x3 (the factor two on the
middle grating comes from the symmetric imaging geometry), and averaging
the shifted pattern over the uncontrolled oscillation phase turns each
harmonic motion into a Bessel-type contrast factor.

These formulas treat the beam as monochromatic; velocity averaging on top
of grating motion is handled numerically by the oracle module.
"""

import math
from dataclasses import dataclass

from .errors import InvalidParameter
from .inertial import ShiftResult
from .specfun import bessel_j0


@dataclass(frozen=True)
class CommonPendulum:
    """All three gratings swing together: same amplitude, same phase."""

    amplitude: float       # [m]
    frequency: float       # [Hz]

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise InvalidParameter(f"amplitude must be >= 0, got {self.amplitude}")
        if not self.frequency > 0:
            raise InvalidParameter(f"frequency must be positive, got {self.frequency}")


@dataclass(frozen=True)
class TorsionPendulum:
    """Rigid rotation oscillation about a pivot on the beam axis.

    ``pivot_offset`` is the longitudinal position of the first grating
    relative to the axis of rotation, so 0, -L and -2L put the pivot in the
    plane of gratings 1, 2 and 3. The angular velocity oscillates with peak
    value ``peak_rotation_rate``. The static (zero-frequency) limit has its
    own closed form, torsion_static_reduction; frequency 0 is rejected here
    because the shift formula carries 1/f.
    """

    peak_rotation_rate: float   # [rad/s]
    frequency: float            # [Hz]
    pivot_offset: float         # [m], first grating relative to pivot

    def __post_init__(self):
        if not self.peak_rotation_rate >= 0:
            raise InvalidParameter(
                f"peak rotation rate must be >= 0, got {self.peak_rotation_rate}"
            )
        if not self.frequency > 0:
            raise InvalidParameter(f"frequency must be positive, got {self.frequency}")


@dataclass(frozen=True)
class IndependentHarmonic:
    """Each grating oscillates harmonically with no phase relation."""

    amplitudes: tuple           # (A1, A2, A3) [m]
    frequencies: tuple = None   # optional (f1, f2, f3) [Hz]; contrast is independent of them

    def __post_init__(self):
        if len(self.amplitudes) != 3 or any(a < 0 for a in self.amplitudes):
            raise InvalidParameter(f"need three amplitudes >= 0, got {self.amplitudes}")
        object.__setattr__(self, "amplitudes", tuple(float(a) for a in self.amplitudes))
        if self.frequencies is not None:
            if len(self.frequencies) != 3 or any(f <= 0 for f in self.frequencies):
                raise InvalidParameter(f"need three frequencies > 0, got {self.frequencies}")
            object.__setattr__(self, "frequencies", tuple(float(f) for f in self.frequencies))


@dataclass(frozen=True)
class GaussianJitter:
    """Independent Gaussian position scatter of the three gratings."""

    sigmas: tuple               # (sigma1, sigma2, sigma3) [m]

    def __post_init__(self):
        if len(self.sigmas) != 3 or any(s < 0 for s in self.sigmas):
            raise InvalidParameter(f"need three standard deviations >= 0, got {self.sigmas}")
        object.__setattr__(self, "sigmas", tuple(float(s) for s in self.sigmas))


# Convention: the oscillation phase is sampled when the molecule crosses the
# first grating, and the displacement evolves as sin(phase - 2 pi f t) with t
# measured from that crossing. Contrast factors do not depend on this choice.

def pendulum_shift(mode, geom, beam, phase):
    """Pattern displacement for a common pendulum motion at a given phase.

    A [sin(phi) - 2 sin(phi - a) + sin(phi - 2a)] with a = 2 pi f L / v;
    an integer number of oscillations per stage (f L / v integer) cancels
    exactly.
    """
    a = 2.0 * math.pi * mode.frequency * geom.separation / beam.speed
    dx = mode.amplitude * (
        math.sin(phase) - 2.0 * math.sin(phase - a) + math.sin(phase - 2.0 * a)
    )
    return ShiftResult.for_geometry(dx, geom)


def pendulum_reduction(mode, geom, beam):
    """Phase-averaged contrast factor |J0(8 pi (A/d) sin^2(pi f L / v))|."""
    half = math.pi * mode.frequency * geom.separation / beam.speed
    arg = 8.0 * math.pi * (mode.amplitude / geom.period) * math.sin(half) ** 2
    return abs(bessel_j0(arg))


def torsion_shift(mode, geom, beam, phase):
    """Pattern displacement for a torsional oscillation at a given phase.

    Omega0/(2 pi f) [z0 cos(phi) - 2 (z0+L) cos(phi - a) + (z0+2L) cos(phi - 2a)]
    with a = 2 pi f L / v. The term of a grating lying in the pivot plane
    vanishes.
    """
    z0 = mode.pivot_offset
    sep = geom.separation
    a = 2.0 * math.pi * mode.frequency * sep / beam.speed
    bracket = (
        z0 * math.cos(phase)
        - 2.0 * (z0 + sep) * math.cos(phase - a)
        + (z0 + 2.0 * sep) * math.cos(phase - 2.0 * a)
    )
    dx = mode.peak_rotation_rate / (2.0 * math.pi * mode.frequency) * bracket
    return ShiftResult.for_geometry(dx, geom)


def torsion_reduction(mode, geom, beam):
    """Phase-averaged contrast factor of the torsional mode.

    |J0(sqrt(8) (Omega0 L / f d) sin(pi f L / v) sqrt(1 + (1 + z0/L)^2
    - (z0/L)(2 + z0/L) cos(2 pi f L / v)))|. For f -> 0 this approaches
    torsion_static_reduction independently of the pivot position.
    """
    sep = geom.separation
    u = mode.pivot_offset / sep
    gamma = math.pi * mode.frequency * sep / beam.speed
    bracket = 1.0 + (1.0 + u) ** 2 - u * (2.0 + u) * math.cos(2.0 * gamma)
    arg = (
        math.sqrt(8.0)
        * mode.peak_rotation_rate * sep / (mode.frequency * geom.period)
        * math.sin(gamma)
        * math.sqrt(max(bracket, 0.0))
    )
    return abs(bessel_j0(arg))


def torsion_static_reduction(peak_rotation_rate, geom, beam):
    """Zero-frequency limit of the torsional factor, |J0(4 pi Omega0 L^2 / (d v))|."""
    arg = (
        4.0 * math.pi * peak_rotation_rate * geom.separation ** 2
        / (geom.period * beam.speed)
    )
    return abs(bessel_j0(arg))


def independent_reduction(mode, geom):
    """Contrast factor for uncorrelated harmonic motion of the gratings.

    |J0(2 pi A1/d) J0(4 pi A2/d) J0(2 pi A3/d)|; the middle grating enters
    with a doubled argument and the oscillation frequencies drop out.
    """
    d = geom.period
    a1, a2, a3 = mode.amplitudes
    return abs(
        bessel_j0(2.0 * math.pi * a1 / d)
        * bessel_j0(4.0 * math.pi * a2 / d)
        * bessel_j0(2.0 * math.pi * a3 / d)
    )


def gaussian_reduction(mode, geom):
    """Contrast factor for Gaussian position scatter of the gratings.

    exp(-2 pi^2 (s1^2 + 4 s2^2 + s3^2) / d^2), the characteristic function
    of the composite displacement x1 - 2 x2 + x3.
    """
    s1, s2, s3 = mode.sigmas
    return math.exp(
        -2.0 * math.pi ** 2 * (s1 ** 2 + 4.0 * s2 ** 2 + s3 ** 2) / geom.period ** 2
    )
