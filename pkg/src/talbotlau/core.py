"""Geometry, beam and environment models plus the self-imaging relations.

Everything is stored in SI units. All value types are immutable and every
constructor enforces its invariants, so no partially valid object is ever
observable. Operations are pure functions and safe to share across workers.
"""

import math
from dataclasses import dataclass

from .constants import PLANCK
from .errors import InvalidParameter


@dataclass(frozen=True)
class InterferometerGeometry:
    """Three equal gratings: period, neighbour separation, order, bar tilt."""

    period: float                 # grating period [m]
    separation: float             # distance between neighbouring gratings [m]
    talbot_order: int = 1         # operating self-imaging order
    tilt: float = 0.0             # grating-bar tilt from vertical [rad]

    def __post_init__(self):
        if not self.period > 0:
            raise InvalidParameter(f"grating period must be positive, got {self.period}")
        if not self.separation > 0:
            raise InvalidParameter(f"grating separation must be positive, got {self.separation}")
        if not (isinstance(self.talbot_order, int) and self.talbot_order >= 1):
            raise InvalidParameter(f"self-imaging order must be an integer >= 1, got {self.talbot_order}")
        if not abs(self.tilt) < math.pi / 2:
            raise InvalidParameter(f"bar tilt must satisfy |tilt| < pi/2, got {self.tilt}")


@dataclass(frozen=True)
class BeamModel:
    """Particle beam with a Gaussian forward-velocity distribution."""

    mass: float                   # particle mass [kg]
    speed: float                  # mean forward velocity [m/s]
    speed_sigma: float = 0.0      # velocity standard deviation [m/s]

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidParameter(f"mass must be positive, got {self.mass}")
        if not self.speed > 0:
            raise InvalidParameter(f"speed must be positive, got {self.speed}")
        if not self.speed_sigma >= 0:
            raise InvalidParameter(f"velocity spread must be >= 0, got {self.speed_sigma}")
        if not self.speed_sigma < self.speed:
            raise InvalidParameter(
                f"Gaussian beam model needs speed_sigma < speed "
                f"(got sigma={self.speed_sigma}, speed={self.speed})"
            )


@dataclass(frozen=True)
class InertialEnvironment:
    """Laboratory-frame perturbations: rotation and gravity.

    ``rotation_rate`` is the angular-velocity component parallel to the
    grating bars; its sign encodes the sense of rotation.
    """

    rotation_rate: float = 0.0    # [rad/s]
    gravity: float = 9.81         # [m/s^2]

    def __post_init__(self):
        if not self.gravity >= 0:
            raise InvalidParameter(f"gravity must be >= 0, got {self.gravity}")


def de_broglie_wavelength(beam):
    """Matter wavelength h/(m v) of the beam's mean velocity class [m]."""
    return PLANCK / (beam.mass * beam.speed)


def talbot_length(geom, beam):
    """Self-imaging distance period^2 / wavelength [m]."""
    return geom.period ** 2 * beam.mass * beam.speed / PLANCK


def flight_time(geom, beam):
    """Transit time through both stages, 2 L / v [s]."""
    return 2.0 * geom.separation / beam.speed
