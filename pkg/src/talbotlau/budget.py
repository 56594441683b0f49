"""Design budgets: compose every applicable contrast factor for a setup.

Factors from independent perturbations are multiplied together. That
composition rule is an assumption, not a theorem, so every report carries a
note saying so. Bessel-type factors are monotone in their amplitude only up
to the first Bessel zero; a note is emitted when a budget leaves that
regime.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import J0_FIRST_ZERO
from .errors import InvalidParameter
from .inertial import coriolis_reduction, gravity_reduction
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

COMPOSITION_NOTE = (
    "combined value assumes independent perturbations compose multiplicatively"
)
TORSION_NOTE = (
    "torsion factor omitted: estimating it requires the pivot position; "
    "supply one to include it"
)
MONOTONE_NOTE = (
    "a Bessel-factor argument exceeds the first Bessel zero; factors are no "
    "longer monotone in amplitude there"
)

DEFAULT_FREQUENCY_BAND = (10.0, 2000.0, 1.0)


@dataclass(frozen=True)
class ReductionReport:
    """Named contrast factors; None marks a factor not applicable."""

    coriolis: float = None
    gravity: float = None
    pendulum_worst: float = None
    pendulum_worst_frequency: float = None
    torsion: float = None
    independent: float = None
    jitter: float = None

    def listed(self):
        pairs = [
            ("coriolis", self.coriolis),
            ("gravity", self.gravity),
            ("pendulum_worst", self.pendulum_worst),
            ("torsion", self.torsion),
            ("independent", self.independent),
            ("jitter", self.jitter),
        ]
        return [(name, value) for name, value in pairs if value is not None]


@dataclass(frozen=True)
class DesignBudget:
    geometry: object
    beam: object
    environment: object
    factors: ReductionReport
    combined: float
    notes: tuple


def evaluate_budget(geom, beam, env=None, vibration_amplitude=None,
                    frequency_band=DEFAULT_FREQUENCY_BAND, torsion=None, jitter=None):
    """Evaluate all applicable contrast factors for a proposed experiment.

    The pendulum factor is the worst case over ``frequency_band``
    (start, stop, step in Hz); the independent-grating factor applies
    ``vibration_amplitude`` to all three gratings. The torsion factor is
    included only when a TorsionPendulum (with its pivot) is supplied.
    """
    notes = [COMPOSITION_NOTE]
    fields = {}

    if env is not None:
        fields["coriolis"] = coriolis_reduction(geom, beam, env)
        fields["gravity"] = gravity_reduction(geom, beam, env)

    arguments = []
    if vibration_amplitude is not None:
        if vibration_amplitude < 0:
            raise InvalidParameter(f"vibration amplitude must be >= 0, got {vibration_amplitude}")
        start, stop, step = frequency_band
        if not (start > 0 and stop >= start and step > 0):
            raise InvalidParameter(f"bad frequency band {frequency_band}")
        grid = np.arange(start, stop + step / 2.0, step)
        worst_value = math.inf
        worst_frequency = start
        for f in grid:
            value = pendulum_reduction(CommonPendulum(vibration_amplitude, float(f)), geom, beam)
            if value < worst_value:
                worst_value = value
                worst_frequency = float(f)
        fields["pendulum_worst"] = worst_value
        fields["pendulum_worst_frequency"] = worst_frequency
        arguments.append(8.0 * math.pi * vibration_amplitude / geom.period)

        independent_mode = IndependentHarmonic(
            (vibration_amplitude, vibration_amplitude, vibration_amplitude)
        )
        fields["independent"] = independent_reduction(independent_mode, geom)
        arguments.append(4.0 * math.pi * vibration_amplitude / geom.period)

    if torsion is not None:
        if not isinstance(torsion, TorsionPendulum):
            raise InvalidParameter("torsion must be a TorsionPendulum")
        fields["torsion"] = torsion_reduction(torsion, geom, beam)
    else:
        notes.append(TORSION_NOTE)

    if jitter is not None:
        if not isinstance(jitter, GaussianJitter):
            raise InvalidParameter("jitter must be a GaussianJitter")
        fields["jitter"] = gaussian_reduction(jitter, geom)

    if any(arg > J0_FIRST_ZERO for arg in arguments):
        notes.append(MONOTONE_NOTE)

    report = ReductionReport(**fields)
    combined = 1.0
    for _, value in report.listed():
        combined *= value

    return DesignBudget(
        geometry=geom,
        beam=beam,
        environment=env,
        factors=report,
        combined=combined,
        notes=tuple(notes),
    )


FORMULA_NAMES = {
    "coriolis": "coriolis-velocity-average",
    "gravity": "gravity-velocity-average",
    "pendulum_worst": "common-pendulum-phase-average-worst-frequency",
    "torsion": "torsion-pendulum-phase-average",
    "independent": "independent-grating-phase-average",
    "jitter": "gaussian-jitter-characteristic-function",
}


def budget_to_csv_rows(budget):
    rows = ["factor,value,formula_ref"]
    for name, value in budget.factors.listed():
        rows.append(f"{name},{value:.12e},{FORMULA_NAMES[name]}")
    rows.append(f"combined,{budget.combined:.12e},product-of-factors")
    return rows


def budget_to_text(budget):
    lines = ["contrast budget"]
    width = max((len(name) for name, _ in budget.factors.listed()), default=8)
    for name, value in budget.factors.listed():
        lines.append(f"  {name:<{width}}  {value:.6f}")
        if name == "pendulum_worst" and budget.factors.pendulum_worst_frequency is not None:
            lines.append(
                f"  {'':{width}}  (worst frequency "
                f"{budget.factors.pendulum_worst_frequency:.0f} Hz)"
            )
    lines.append(f"  {'combined':<{width}}  {budget.combined:.6f}")
    for note in budget.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)
