"""FastAPI surface over the computation library.

Every endpoint is a pure function of its request body, so the service is
stateless and safe behind any number of workers. Domain validation errors
map to 400; a quadrature that cannot reach its tolerance maps to 500 with
code "not-converged" so clients can distinguish bad input from numerical
failure.
"""

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..budget import FORMULA_NAMES, evaluate_budget
from ..constants import ATOMIC_MASS
from ..core import (
    BeamModel,
    InertialEnvironment,
    InterferometerGeometry,
    de_broglie_wavelength,
    flight_time,
    talbot_length,
)
from ..errors import QuadratureNotConverged, ToolkitError
from ..fringe import FringeScan, extract_visibility, synthesize_scan
from .. import inertial, oracle, spectrum, vibration
from ..presets import PRESETS
from ..specfun import QuadratureSpec
from . import schemas


def _geometry(model):
    return InterferometerGeometry(
        period=model.period_m,
        separation=model.separation_m,
        talbot_order=model.talbot_order,
        tilt=model.tilt_rad,
    )


def _beam(model):
    return BeamModel(
        mass=model.mass_kg,
        speed=model.speed_m_s,
        speed_sigma=model.speed_sigma_m_s,
    )


def _environment(model):
    return InertialEnvironment(
        rotation_rate=model.rotation_rate_rad_s,
        gravity=model.gravity_m_s2,
    )


def _perturbation(model):
    kind = model.kind
    if kind == "pendulum":
        return vibration.CommonPendulum(model.amplitude_m, model.frequency_hz)
    if kind == "torsion":
        return vibration.TorsionPendulum(
            model.peak_rotation_rate_rad_s, model.frequency_hz, model.pivot_offset_m
        )
    if kind == "independent":
        return vibration.IndependentHarmonic(model.amplitudes_m, model.frequencies_hz)
    if kind == "gaussian":
        return vibration.GaussianJitter(model.sigmas_m)
    if kind == "inertial":
        return InertialEnvironment(
            rotation_rate=model.rotation_rate_rad_s or 0.0,
            gravity=model.gravity_m_s2 if model.gravity_m_s2 is not None else 9.81,
        )
    raise ToolkitError(f"unknown perturbation kind {kind!r}")


def _shift_out(result):
    return schemas.ShiftOut(
        displacement_m=result.displacement, period_fraction=result.period_fraction
    )


def create_app():
    app = FastAPI(title="talbotlau", version=__version__)

    @app.exception_handler(QuadratureNotConverged)
    async def _not_converged(request: Request, exc: QuadratureNotConverged):
        return JSONResponse(
            status_code=500, content={"detail": str(exc), "code": "not-converged"}
        )

    @app.exception_handler(ToolkitError)
    async def _domain_error(request: Request, exc: ToolkitError):
        return JSONResponse(
            status_code=400, content={"detail": str(exc), "code": "invalid-input"}
        )

    @app.get("/health", response_model=schemas.HealthOut)
    def health():
        return schemas.HealthOut(status="ok", version=__version__)

    @app.get("/presets")
    def presets():
        return PRESETS

    @app.post("/geometry/derived", response_model=schemas.GeometryOut)
    def geometry_derived(body: schemas.SetupIn):
        geom, beam = _geometry(body.geometry), _beam(body.beam)
        return schemas.GeometryOut(
            de_broglie_wavelength_m=de_broglie_wavelength(beam),
            talbot_length_m=talbot_length(geom, beam),
            flight_time_s=flight_time(geom, beam),
        )

    # ------------------------------------------------------------------ shifts

    @app.post("/shift/coriolis", response_model=schemas.ShiftOut)
    def shift_coriolis(body: schemas.SetupIn):
        return _shift_out(
            inertial.coriolis_shift(_geometry(body.geometry), _beam(body.beam),
                                    _environment(body.environment))
        )

    @app.post("/shift/gravity", response_model=schemas.ShiftOut)
    def shift_gravity(body: schemas.SetupIn):
        return _shift_out(
            inertial.gravity_shift(_geometry(body.geometry), _beam(body.beam),
                                   _environment(body.environment))
        )

    @app.post("/shift/pendulum", response_model=schemas.ShiftOut)
    def shift_pendulum(body: schemas.PendulumShiftIn):
        mode = vibration.CommonPendulum(body.amplitude_m, body.frequency_hz)
        return _shift_out(
            vibration.pendulum_shift(mode, _geometry(body.geometry), _beam(body.beam),
                                     body.phase_rad)
        )

    @app.post("/shift/torsion", response_model=schemas.ShiftOut)
    def shift_torsion(body: schemas.TorsionShiftIn):
        mode = vibration.TorsionPendulum(
            body.peak_rotation_rate_rad_s, body.frequency_hz, body.pivot_offset_m
        )
        return _shift_out(
            vibration.torsion_shift(mode, _geometry(body.geometry), _beam(body.beam),
                                    body.phase_rad)
        )

    @app.post("/shift/sagnac", response_model=schemas.SagnacOut)
    def shift_sagnac(body: schemas.SetupIn):
        phase = inertial.sagnac_phase(
            _geometry(body.geometry), _beam(body.beam), _environment(body.environment)
        )
        return schemas.SagnacOut(phase_rad=phase, period_fraction=phase / (2.0 * math.pi))

    # -------------------------------------------------------------- reductions

    @app.post("/visibility/coriolis", response_model=schemas.ReductionOut)
    def visibility_coriolis(body: schemas.SetupIn):
        return schemas.ReductionOut(
            reduction=inertial.coriolis_reduction(
                _geometry(body.geometry), _beam(body.beam), _environment(body.environment)
            )
        )

    @app.post("/visibility/gravity", response_model=schemas.ReductionOut)
    def visibility_gravity(body: schemas.SetupIn):
        return schemas.ReductionOut(
            reduction=inertial.gravity_reduction(
                _geometry(body.geometry), _beam(body.beam), _environment(body.environment)
            )
        )

    @app.post("/visibility/pendulum", response_model=schemas.ReductionOut)
    def visibility_pendulum(body: schemas.PendulumReductionIn):
        mode = vibration.CommonPendulum(body.amplitude_m, body.frequency_hz)
        return schemas.ReductionOut(
            reduction=vibration.pendulum_reduction(mode, _geometry(body.geometry),
                                                   _beam(body.beam))
        )

    @app.post("/visibility/torsion", response_model=schemas.ReductionOut)
    def visibility_torsion(body: schemas.TorsionReductionIn):
        mode = vibration.TorsionPendulum(
            body.peak_rotation_rate_rad_s, body.frequency_hz, body.pivot_offset_m
        )
        return schemas.ReductionOut(
            reduction=vibration.torsion_reduction(mode, _geometry(body.geometry),
                                                  _beam(body.beam))
        )

    @app.post("/visibility/independent", response_model=schemas.ReductionOut)
    def visibility_independent(body: schemas.IndependentReductionIn):
        mode = vibration.IndependentHarmonic(body.amplitudes_m)
        return schemas.ReductionOut(
            reduction=vibration.independent_reduction(mode, _geometry(body.geometry))
        )

    @app.post("/visibility/gaussian", response_model=schemas.ReductionOut)
    def visibility_gaussian(body: schemas.GaussianReductionIn):
        mode = vibration.GaussianJitter(body.sigmas_m)
        return schemas.ReductionOut(
            reduction=vibration.gaussian_reduction(mode, _geometry(body.geometry))
        )

    # ------------------------------------------------------------- mass limits

    @app.post("/mass-limit/fixed-period", response_model=schemas.MassLimitOut)
    def mass_limit_fixed_period(body: schemas.MassLimitFixedPeriodIn):
        mass = inertial.mass_bound_fixed_period(
            body.period_m, body.speed_sigma_m_s, body.rotation_rate_rad_s
        )
        return schemas.MassLimitOut(mass_kg=mass, mass_amu=mass / ATOMIC_MASS)

    @app.post("/mass-limit/fixed-length", response_model=schemas.MassLimitOut)
    def mass_limit_fixed_length(body: schemas.MassLimitFixedLengthIn):
        mass = inertial.mass_bound_fixed_length(
            body.separation_m, body.speed_m_s, body.speed_sigma_m_s, body.rotation_rate_rad_s
        )
        return schemas.MassLimitOut(mass_kg=mass, mass_amu=mass / ATOMIC_MASS)

    @app.post("/mass-limit/velocity-selection", response_model=schemas.VelocitySelectionOut)
    def mass_limit_velocity_selection(body: schemas.VelocitySelectionIn):
        return schemas.VelocitySelectionOut(
            limit_s_per_m=inertial.velocity_selection_limit(
                body.min_period_m, body.max_separation_m, body.rotation_rate_rad_s
            )
        )

    # ------------------------------------------------------------------ sweeps

    @app.post("/sweep/pendulum", response_model=schemas.SweepOut)
    def sweep_pendulum(body: schemas.SweepIn):
        pairs = spectrum.predict_sweep(
            _geometry(body.geometry), _beam(body.beam), body.amplitude_m,
            body.frequencies_hz, body.mode_kind,
        )
        return schemas.SweepOut(
            points=[schemas.SweepPoint(frequency_hz=f, reduction=r) for f, r in pairs]
        )

    @app.post("/sweep/torsion", response_model=schemas.SweepOut)
    def sweep_torsion(body: schemas.TorsionSweepIn):
        geom, beam = _geometry(body.geometry), _beam(body.beam)
        points = []
        for f in body.frequencies_hz:
            mode = vibration.TorsionPendulum(
                body.peak_rotation_rate_rad_s, float(f), body.pivot_offset_m
            )
            points.append(
                schemas.SweepPoint(
                    frequency_hz=float(f),
                    reduction=vibration.torsion_reduction(mode, geom, beam),
                )
            )
        return schemas.SweepOut(points=points)

    # ------------------------------------------------------------------ oracle

    @app.post("/oracle/compare", response_model=schemas.OracleCompareOut)
    def oracle_compare(body: schemas.OracleCompareIn):
        scenario = oracle.TrajectoryScenario(
            geometry=_geometry(body.geometry),
            beam=_beam(body.beam),
            perturbations=tuple(_perturbation(p) for p in body.perturbations),
            seed=body.seed,
            sample_count=body.samples,
        )
        result = oracle.visibility_oracle(scenario)
        return schemas.OracleCompareOut(
            visibility=result.visibility,
            mean_shift_m=result.mean_shift,
            standard_error=result.standard_error,
            closed_form=result.closed_form,
            relative_discrepancy=result.relative_discrepancy,
        )

    @app.post("/oracle/velocity-average", response_model=schemas.VelocityAverageOut)
    def oracle_velocity_average(body: schemas.VelocityAverageIn):
        report = oracle.velocity_average_oracle(
            _geometry(body.geometry), _beam(body.beam), _environment(body.environment),
            QuadratureSpec(body.node_count, body.relative_tolerance),
        )
        def out(side):
            return schemas.FormulaComparisonOut(
                closed_form=side.closed_form,
                averaged=side.averaged,
                relative_discrepancy=side.relative_discrepancy,
            )
        return schemas.VelocityAverageOut(coriolis=out(report.coriolis),
                                          gravity=out(report.gravity))

    # ------------------------------------------------------------------ fringe

    @app.post("/fringe/synthesize", response_model=schemas.ScanOut)
    def fringe_synthesize(body: schemas.SynthesizeIn):
        scan = synthesize_scan(
            body.visibility, body.offset_counts, body.phase_rad, body.period_m,
            n_points=body.n_points, span=body.span_m, noise=body.noise, seed=body.seed,
        )
        return schemas.ScanOut(
            positions_m=list(scan.positions), counts=list(scan.counts),
            period_m=scan.period,
        )

    @app.post("/fringe/fit", response_model=schemas.FitOut)
    def fringe_fit(body: schemas.FitIn):
        scan = FringeScan(
            positions=tuple(body.positions_m), counts=tuple(body.counts),
            period=body.period_m,
        )
        estimate = extract_visibility(scan)
        return schemas.FitOut(
            visibility=estimate.visibility,
            phase_rad=estimate.phase,
            offset_counts=estimate.offset,
            visibility_stderr=estimate.visibility_stderr,
            degenerate=estimate.degenerate,
            clamped=estimate.clamped,
        )

    # ---------------------------------------------------------------- spectrum

    @app.post("/spectrum/analyze", response_model=schemas.SpectrumOut)
    def spectrum_analyze(body: schemas.TraceIn):
        trace = spectrum.AccelTrace(
            sample_rate=body.sample_rate_hz, volts=tuple(body.volts),
            sensitivity=body.sensitivity_v_per_ms2,
        )
        lines = spectrum.analyze_trace(trace)
        return schemas.SpectrumOut(
            lines=[
                schemas.SpectrumLineOut(
                    frequency_hz=line.frequency, volts=line.volts,
                    acceleration_ms2=line.acceleration, displacement_m=line.displacement,
                )
                for line in lines
            ]
        )

    @app.post("/spectrum/gain", response_model=schemas.IsolationGainOut)
    def spectrum_gain(body: schemas.IsolationGainIn):
        def lines_of(trace_in):
            trace = spectrum.AccelTrace(
                sample_rate=trace_in.sample_rate_hz, volts=tuple(trace_in.volts),
                sensitivity=trace_in.sensitivity_v_per_ms2,
            )
            return spectrum.analyze_trace(trace), trace
        before_lines, before_trace = lines_of(body.before)
        after_lines, _ = lines_of(body.after)
        tolerance = before_trace.sample_rate / len(before_trace.volts) / 2.0
        gain = spectrum.isolation_gain(before_lines, after_lines, body.frequency_hz,
                                       tolerance=tolerance)
        return schemas.IsolationGainOut(gain_db=gain)

    # ------------------------------------------------------------------ budget

    @app.post("/budget", response_model=schemas.BudgetOut)
    def budget(body: schemas.BudgetIn):
        torsion_mode = None
        if body.torsion is not None:
            torsion_mode = vibration.TorsionPendulum(
                body.torsion.peak_rotation_rate_rad_s,
                body.torsion.frequency_hz,
                body.torsion.pivot_offset_m,
            )
        jitter_mode = None
        if body.jitter_sigmas_m is not None:
            jitter_mode = vibration.GaussianJitter(body.jitter_sigmas_m)
        result = evaluate_budget(
            _geometry(body.geometry),
            _beam(body.beam),
            env=_environment(body.environment) if body.environment is not None else None,
            vibration_amplitude=body.vibration_amplitude_m,
            frequency_band=body.frequency_band_hz,
            torsion=torsion_mode,
            jitter=jitter_mode,
        )
        factors = [
            schemas.BudgetFactorOut(name=name, value=value, formula_ref=FORMULA_NAMES[name])
            for name, value in result.factors.listed()
        ]
        return schemas.BudgetOut(
            factors=factors,
            pendulum_worst_frequency_hz=result.factors.pendulum_worst_frequency,
            combined=result.combined,
            notes=list(result.notes),
        )

    return app


app = create_app()
