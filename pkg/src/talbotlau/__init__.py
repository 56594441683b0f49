"""Dephasing and vibration budgets for three-grating Talbot-Lau interferometry."""

from .budget import DesignBudget, ReductionReport, evaluate_budget
from .core import (
    BeamModel,
    InertialEnvironment,
    InterferometerGeometry,
    de_broglie_wavelength,
    flight_time,
    talbot_length,
)
from .errors import (
    DegenerateFit,
    InvalidParameter,
    InvalidVisibility,
    LineNotFound,
    MalformedQuantity,
    NonFiniteInput,
    QuadratureNotConverged,
    TooFewSamples,
    ToolkitError,
)
from .fringe import FringeScan, VisibilityEstimate, extract_visibility, synthesize_scan
from .inertial import (
    ShiftResult,
    coriolis_reduction,
    coriolis_shift,
    gravity_reduction,
    gravity_shift,
    mass_bound_fixed_length,
    mass_bound_fixed_period,
    sagnac_phase,
    velocity_selection_limit,
)
from .oracle import (
    OracleResult,
    TrajectoryScenario,
    composite_shift,
    velocity_average_oracle,
    visibility_oracle,
)
from .specfun import QuadratureSpec, bessel_j0, fit_sinusoid, gauss_average
from .spectrum import (
    AccelTrace,
    SpectrumLine,
    analyze_trace,
    isolation_gain,
    predict_sweep,
)
from .units import format_quantity, parse_quantity
from .vibration import (
    CommonPendulum,
    GaussianJitter,
    IndependentHarmonic,
    TorsionPendulum,
    gaussian_reduction,
    independent_reduction,
    pendulum_reduction,
    pendulum_shift,
    torsion_reduction,
    torsion_shift,
    torsion_static_reduction,
)

__version__ = "0.1.0"
