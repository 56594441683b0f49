"""Brute-force validation of the closed-form shift and contrast formulas.

The perturbations considered here are at most linear in position and
momentum, so classical trajectories carry the full information about the
fringe displacement: a molecule crossing the gratings at times t, t + L/v
and t + 2L/v sees the pattern shifted by the grating-displacement composite
x1 - 2 x2 + x3 plus a (L/v)^2 for any constant acceleration a. Averaging
exp(2 pi i shift / d) over the uncontrolled phases and the velocity
distribution yields the visibility; nothing here reuses the closed forms it
is meant to check.

Sampled averages are evaluated in fixed-size batches whose complex
accumulators are merged in batch order, so results are reproducible for a
given seed regardless of how the batches are scheduled.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import InertialEnvironment
from .errors import InvalidParameter
from .inertial import coriolis_reduction, gravity_reduction
from .specfun import QuadratureSpec, gauss_average
from .vibration import (
    CommonPendulum,
    GaussianJitter,
    IndependentHarmonic,
    TorsionPendulum,
    gaussian_reduction,
    independent_reduction,
    pendulum_reduction,
    torsion_reduction,
)

_BATCHES = 100


@dataclass(frozen=True)
class TrajectoryScenario:
    """One Monte Carlo configuration: geometry, beam, perturbations, RNG."""

    geometry: object
    beam: object
    perturbations: tuple
    seed: int = 0
    sample_count: int = 1_000_000

    def __post_init__(self):
        object.__setattr__(self, "perturbations", tuple(self.perturbations))
        if len(self.perturbations) == 0:
            raise InvalidParameter("scenario needs at least one perturbation")
        if not self.sample_count >= 1:
            raise InvalidParameter(f"sample_count must be >= 1, got {self.sample_count}")


@dataclass(frozen=True)
class OracleResult:
    visibility: float             # |<exp(2 pi i shift / d)>|
    mean_shift: float             # [m]
    standard_error: float
    closed_form: float            # product of matching closed-form factors
    relative_discrepancy: float   # (visibility - closed_form) / closed_form


@dataclass(frozen=True)
class FormulaComparison:
    """A closed-form value next to its independent quadrature average."""

    closed_form: float
    averaged: float
    relative_discrepancy: float


@dataclass(frozen=True)
class VelocityAverageReport:
    coriolis: FormulaComparison
    gravity: FormulaComparison


def _draw_count(perturbation):
    if isinstance(perturbation, (CommonPendulum, TorsionPendulum)):
        return 1
    if isinstance(perturbation, (IndependentHarmonic, GaussianJitter)):
        return 3
    if isinstance(perturbation, InertialEnvironment):
        return 0
    raise InvalidParameter(f"unsupported perturbation {perturbation!r}")


def _perturbation_shift(perturbation, geom, speeds, draws):
    """Pattern shift contribution of one perturbation, vectorized over samples.

    ``draws`` holds uniform phases in [0, 2 pi) for oscillation modes and
    standard-normal deviates for Gaussian jitter.
    """
    sep = geom.separation
    transit = sep / speeds
    if isinstance(perturbation, CommonPendulum):
        phi = draws[0]
        a = 2.0 * math.pi * perturbation.frequency * transit
        return perturbation.amplitude * (
            np.sin(phi) - 2.0 * np.sin(phi - a) + np.sin(phi - 2.0 * a)
        )
    if isinstance(perturbation, TorsionPendulum):
        phi = draws[0]
        z0 = perturbation.pivot_offset
        a = 2.0 * math.pi * perturbation.frequency * transit
        bracket = (
            z0 * np.cos(phi)
            - 2.0 * (z0 + sep) * np.cos(phi - a)
            + (z0 + 2.0 * sep) * np.cos(phi - 2.0 * a)
        )
        return perturbation.peak_rotation_rate / (2.0 * math.pi * perturbation.frequency) * bracket
    if isinstance(perturbation, IndependentHarmonic):
        a1, a2, a3 = perturbation.amplitudes
        freqs = perturbation.frequencies or (0.0, 0.0, 0.0)
        x1 = a1 * np.sin(draws[0])
        x2 = a2 * np.sin(draws[1] - 2.0 * math.pi * freqs[1] * transit)
        x3 = a3 * np.sin(draws[2] - 2.0 * math.pi * freqs[2] * 2.0 * transit)
        return x1 - 2.0 * x2 + x3
    if isinstance(perturbation, GaussianJitter):
        s1, s2, s3 = perturbation.sigmas
        return s1 * draws[0] - 2.0 * s2 * draws[1] + s3 * draws[2]
    if isinstance(perturbation, InertialEnvironment):
        acceleration = (
            2.0 * speeds * perturbation.rotation_rate
            + perturbation.gravity * math.sin(geom.tilt)
        )
        return acceleration * transit ** 2
    raise InvalidParameter(f"unsupported perturbation {perturbation!r}")


def composite_shift(scenario, speed, draws):
    """Pattern shift of a single molecule at the given speed and phase draws.

    ``draws`` is one tuple of floats per perturbation, in scenario order:
    a single oscillation phase for the pendulum modes, three phases for
    independent gratings, three standard-normal deviates for jitter, and an
    empty tuple for the inertial environment.
    """
    total = 0.0
    speeds = np.array([float(speed)])
    for perturbation, draw in zip(scenario.perturbations, draws, strict=True):
        if len(draw) != _draw_count(perturbation):
            raise InvalidParameter(
                f"{type(perturbation).__name__} expects {_draw_count(perturbation)} draws, "
                f"got {len(draw)}"
            )
        arrays = tuple(np.array([float(value)]) for value in draw)
        total += float(_perturbation_shift(perturbation, scenario.geometry, speeds, arrays)[0])
    return total


def _closed_form_factor(perturbation, geom, beam):
    if isinstance(perturbation, CommonPendulum):
        return pendulum_reduction(perturbation, geom, beam)
    if isinstance(perturbation, TorsionPendulum):
        return torsion_reduction(perturbation, geom, beam)
    if isinstance(perturbation, IndependentHarmonic):
        return independent_reduction(perturbation, geom)
    if isinstance(perturbation, GaussianJitter):
        return gaussian_reduction(perturbation, geom)
    if isinstance(perturbation, InertialEnvironment):
        return coriolis_reduction(geom, beam, perturbation) * gravity_reduction(
            geom, beam, perturbation
        )
    raise InvalidParameter(f"unsupported perturbation {perturbation!r}")


def visibility_oracle(scenario, phase_offset=0.0):
    """Monte Carlo visibility for a scenario, with a batched error estimate.

    Oscillation phases are uniform in [0, 2 pi), velocities Gaussian with
    non-positive draws resampled. ``phase_offset`` adds a constant to every
    phase draw; the result is statistically unchanged, which is the
    convention-independence check.
    """
    rng = np.random.default_rng(scenario.seed)
    n = scenario.sample_count
    beam = scenario.beam
    geom = scenario.geometry

    if beam.speed_sigma > 0:
        speeds = rng.normal(beam.speed, beam.speed_sigma, n)
        bad = speeds <= 0
        while bad.any():                      # reject unphysical velocities
            speeds[bad] = rng.normal(beam.speed, beam.speed_sigma, int(bad.sum()))
            bad = speeds <= 0
    else:
        speeds = np.full(n, beam.speed)

    shifts = np.zeros(n)
    for perturbation in scenario.perturbations:
        count = _draw_count(perturbation)
        if isinstance(perturbation, GaussianJitter):
            draws = tuple(rng.standard_normal(n) for _ in range(count))
        else:
            draws = tuple(
                rng.uniform(0.0, 2.0 * math.pi, n) + phase_offset for _ in range(count)
            )
        shifts += _perturbation_shift(perturbation, geom, speeds, draws)

    phasors = np.exp(2j * math.pi * shifts / geom.period)

    # fixed batch structure, merged in order
    batches = np.array_split(phasors, min(_BATCHES, n))
    total = 0.0 + 0.0j
    batch_means = []
    for batch in batches:
        batch_sum = batch.sum()
        total += batch_sum
        batch_means.append(batch_sum / batch.size)
    mean_phasor = total / n
    visibility = abs(mean_phasor)

    if len(batch_means) >= 2 and visibility > 0:
        direction = mean_phasor / visibility
        projections = np.real(np.array(batch_means) * np.conj(direction))
        standard_error = float(projections.std(ddof=1) / math.sqrt(len(batch_means)))
    else:
        standard_error = 0.0

    closed = 1.0
    for perturbation in scenario.perturbations:
        closed *= _closed_form_factor(perturbation, geom, beam)
    discrepancy = (visibility - closed) / closed if closed > 0 else math.inf

    return OracleResult(
        visibility=float(visibility),
        mean_shift=float(shifts.mean()),
        standard_error=standard_error,
        closed_form=float(closed),
        relative_discrepancy=float(discrepancy),
    )


def velocity_average_oracle(geom, beam, env, spec=None):
    """Deterministic velocity averages of the rotation and gravity shifts.

    Integrates exp(2 pi i shift(v) / d) over the beam's Gaussian velocity
    distribution by quadrature and reports each result next to the
    corresponding closed form. The gravity closed form is known to carry a
    smaller exponent prefactor than a first-order average of its own shift
    produces, so a nonzero discrepancy there is expected and is reported,
    not corrected.
    """
    if not beam.speed_sigma > 0:
        raise InvalidParameter("velocity averaging needs speed_sigma > 0")
    if spec is None:
        spec = QuadratureSpec()

    sep = geom.separation

    def coriolis_phasor(v):
        return np.exp(2j * math.pi * (2.0 * env.rotation_rate * sep ** 2 / v) / geom.period)

    def gravity_phasor(v):
        dx = env.gravity * math.sin(geom.tilt) * sep ** 2 / v ** 2
        return np.exp(2j * math.pi * dx / geom.period)

    reports = []
    for phasor, closed in (
        (coriolis_phasor, coriolis_reduction(geom, beam, env)),
        (gravity_phasor, gravity_reduction(geom, beam, env)),
    ):
        averaged = abs(gauss_average(phasor, beam.speed, beam.speed_sigma, spec))
        discrepancy = (averaged - closed) / closed if closed > 0 else math.inf
        reports.append(
            FormulaComparison(
                closed_form=float(closed),
                averaged=float(averaged),
                relative_discrepancy=float(discrepancy),
            )
        )
    return VelocityAverageReport(coriolis=reports[0], gravity=reports[1])
