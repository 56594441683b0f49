"""Pydantic request/response models for the computation service.

All fields are SI; unit handling lives entirely in the CLI.
"""

from pydantic import BaseModel, Field

from ..presets import EARTH_ROTATION_RATE


class GeometryIn(BaseModel):
    period_m: float
    separation_m: float
    talbot_order: int = 1
    tilt_rad: float = 0.0


class BeamIn(BaseModel):
    mass_kg: float
    speed_m_s: float
    speed_sigma_m_s: float = 0.0


class EnvironmentIn(BaseModel):
    rotation_rate_rad_s: float = EARTH_ROTATION_RATE
    gravity_m_s2: float = 9.81


class SetupIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    environment: EnvironmentIn = EnvironmentIn()


class ShiftOut(BaseModel):
    displacement_m: float
    period_fraction: float


class ReductionOut(BaseModel):
    reduction: float


class GeometryOut(BaseModel):
    de_broglie_wavelength_m: float
    talbot_length_m: float
    flight_time_s: float


class PendulumShiftIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    amplitude_m: float
    frequency_hz: float
    phase_rad: float = 0.0


class PendulumReductionIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    amplitude_m: float
    frequency_hz: float


class TorsionShiftIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    peak_rotation_rate_rad_s: float
    frequency_hz: float
    pivot_offset_m: float
    phase_rad: float = 0.0


class TorsionReductionIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    peak_rotation_rate_rad_s: float
    frequency_hz: float
    pivot_offset_m: float


class IndependentReductionIn(BaseModel):
    geometry: GeometryIn
    amplitudes_m: tuple[float, float, float]


class GaussianReductionIn(BaseModel):
    geometry: GeometryIn
    sigmas_m: tuple[float, float, float]


class SagnacOut(BaseModel):
    phase_rad: float
    period_fraction: float      # phase / 2 pi


class MassLimitFixedPeriodIn(BaseModel):
    period_m: float
    speed_sigma_m_s: float
    rotation_rate_rad_s: float


class MassLimitFixedLengthIn(BaseModel):
    separation_m: float
    speed_m_s: float
    speed_sigma_m_s: float
    rotation_rate_rad_s: float


class MassLimitOut(BaseModel):
    mass_kg: float
    mass_amu: float


class VelocitySelectionIn(BaseModel):
    min_period_m: float
    max_separation_m: float
    rotation_rate_rad_s: float


class VelocitySelectionOut(BaseModel):
    limit_s_per_m: float


class SweepIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    amplitude_m: float
    frequencies_hz: list[float]
    mode_kind: str = "pendulum"


class SweepPoint(BaseModel):
    frequency_hz: float
    reduction: float


class SweepOut(BaseModel):
    points: list[SweepPoint]


class TorsionSweepIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    peak_rotation_rate_rad_s: float
    pivot_offset_m: float
    frequencies_hz: list[float]


class PerturbationIn(BaseModel):
    """Tagged perturbation for oracle scenarios."""

    kind: str                                   # pendulum|torsion|independent|gaussian|inertial
    amplitude_m: float | None = None
    frequency_hz: float | None = None
    peak_rotation_rate_rad_s: float | None = None
    pivot_offset_m: float | None = None
    amplitudes_m: tuple[float, float, float] | None = None
    frequencies_hz: tuple[float, float, float] | None = None
    sigmas_m: tuple[float, float, float] | None = None
    rotation_rate_rad_s: float | None = None
    gravity_m_s2: float | None = None


class OracleCompareIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    perturbations: list[PerturbationIn]
    seed: int = 0
    samples: int = Field(default=1_000_000, ge=1, le=100_000_000)


class OracleCompareOut(BaseModel):
    visibility: float
    mean_shift_m: float
    standard_error: float
    closed_form: float
    relative_discrepancy: float


class VelocityAverageIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    environment: EnvironmentIn = EnvironmentIn()
    relative_tolerance: float = 1e-6
    node_count: int = 61


class FormulaComparisonOut(BaseModel):
    closed_form: float
    averaged: float
    relative_discrepancy: float


class VelocityAverageOut(BaseModel):
    coriolis: FormulaComparisonOut
    gravity: FormulaComparisonOut


class SynthesizeIn(BaseModel):
    visibility: float
    offset_counts: float
    phase_rad: float = 0.0
    period_m: float
    n_points: int = 50
    span_m: float | None = None
    noise: str = "none"
    seed: int = 0


class ScanOut(BaseModel):
    positions_m: list[float]
    counts: list[float]
    period_m: float


class FitIn(BaseModel):
    positions_m: list[float]
    counts: list[float]
    period_m: float


class FitOut(BaseModel):
    visibility: float
    phase_rad: float
    offset_counts: float
    visibility_stderr: float
    degenerate: bool
    clamped: bool


class TraceIn(BaseModel):
    sample_rate_hz: float
    volts: list[float]
    sensitivity_v_per_ms2: float = 0.316


class SpectrumLineOut(BaseModel):
    frequency_hz: float
    volts: float
    acceleration_ms2: float
    displacement_m: float


class SpectrumOut(BaseModel):
    lines: list[SpectrumLineOut]


class IsolationGainIn(BaseModel):
    before: TraceIn
    after: TraceIn
    frequency_hz: float


class IsolationGainOut(BaseModel):
    gain_db: float


class TorsionBudgetIn(BaseModel):
    peak_rotation_rate_rad_s: float
    frequency_hz: float
    pivot_offset_m: float


class BudgetIn(BaseModel):
    geometry: GeometryIn
    beam: BeamIn
    environment: EnvironmentIn | None = None
    vibration_amplitude_m: float | None = None
    frequency_band_hz: tuple[float, float, float] = (10.0, 2000.0, 1.0)
    torsion: TorsionBudgetIn | None = None
    jitter_sigmas_m: tuple[float, float, float] | None = None


class BudgetFactorOut(BaseModel):
    name: str
    value: float
    formula_ref: str


class BudgetOut(BaseModel):
    factors: list[BudgetFactorOut]
    pendulum_worst_frequency_hz: float | None
    combined: float
    notes: list[str]


class HealthOut(BaseModel):
    status: str
    version: str
