"""Command-line client for the computation service.

The CLI parses quantity strings, reads and writes the CSV formats, and
delegates every computation to the HTTP service. By default the service
runs in-process (no sockets); ``--server`` points the same client at a
remote instance. Exit codes: 0 success, 1 input error, 2 numerical
non-convergence.
"""

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import httpx

from .errors import MalformedQuantity, QuadratureNotConverged, ToolkitError
from .fringe import FringeScan, read_scan_csv, write_scan_csv
from .presets import PRESETS
from .spectrum import DEFAULT_SENSITIVITY, SPECTRUM_HEADER, read_trace_csv
from .units import parse_quantity_with_dimension

_PLACEHOLDER_MASS = 1.0   # kg; used only where the formula is mass free


class CliInputError(Exception):
    pass


class CliComputeError(Exception):
    pass


# ---------------------------------------------------------------------------
# quantity converters (bare numbers are taken as SI)
# ---------------------------------------------------------------------------

def _si(text, *dimensions):
    try:
        return float(text)
    except ValueError:
        pass
    value, dimension = parse_quantity_with_dimension(text)
    if dimensions and dimension not in dimensions:
        raise MalformedQuantity(
            f"{text!r} has dimension {dimension}, expected {' or '.join(dimensions)}"
        )
    return value


def _converter(*dimensions):
    def convert(text):
        try:
            return _si(text, *dimensions)
        except MalformedQuantity as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return convert


qty_length = _converter("length")
qty_velocity = _converter("velocity")
qty_mass = _converter("mass")
qty_angle = _converter("angle")
qty_frequency = _converter("frequency")
qty_angular_rate = _converter("angular_velocity")


def parse_grid(text, unit_dimension="frequency"):
    """Parse 'start:stop:step' (last part may carry the unit) or one value."""
    parts = text.split(":")
    if len(parts) == 1:
        return [_si(parts[0], unit_dimension)]
    if len(parts) != 3:
        raise MalformedQuantity(f"grid must be 'start:stop:step', got {text!r}")
    step = _si(parts[2], unit_dimension)
    start = float(parts[0])
    stop = float(parts[1])
    if step <= 0 or stop < start:
        raise MalformedQuantity(f"bad grid {text!r}")
    values = []
    k = 0
    while True:
        value = start + k * step
        if value > stop + step * 1e-9:
            break
        values.append(value)
        k += 1
    return values


# ---------------------------------------------------------------------------
# service client
# ---------------------------------------------------------------------------

class ServiceClient:
    """Thin HTTP client; in-process ASGI unless a server URL is given."""

    def __init__(self, server=None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")   # starlette testclient deprecation
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app())

    def post(self, path, payload):
        response = self._client.post(path, json=payload)
        if response.status_code == 200:
            return response.json()
        try:
            body = response.json()
        except ValueError:
            body = {"detail": response.text}
        detail = body.get("detail", "request failed")
        if response.status_code == 500 and body.get("code") == "not-converged":
            raise CliComputeError(str(detail))
        raise CliInputError(str(detail))


# ---------------------------------------------------------------------------
# parameter resolution: flag > config file > preset
# ---------------------------------------------------------------------------

class Resolver:
    def __init__(self, args, config, preset):
        self.args = args
        self.config = config
        self.preset = preset

    def get(self, flag, converter=None, preset_key=None, default=None, required=False):
        value = getattr(self.args, flag.replace("-", "_"), None)
        if value is None and flag in self.config:
            raw = self.config[flag]
            value = converter(raw) if converter else float(raw)
        if value is None and preset_key is not None and preset_key in self.preset:
            value = self.preset[preset_key]
        if value is None:
            if required:
                raise CliInputError(f"missing required parameter --{flag}")
            value = default
        # flags parsed as raw strings (grids, frequencies) still need conversion
        if isinstance(value, str) and converter not in (None, str):
            value = converter(value)
        return value


def load_config(path):
    config = {}
    try:
        with open(path) as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CliInputError(f"bad config line {raw.rstrip()!r}")
                key, value = (part.strip() for part in line.split("=", 1))
                config[key] = value
    except OSError as exc:
        raise CliInputError(f"cannot read config file: {exc}") from None
    return config


def _geometry_payload(r, need_tilt=False, need_separation=True):
    return {
        "period_m": r.get("d", _si, "period", required=True),
        "separation_m": r.get(
            "L", _si, "separation", default=None if need_separation else 1.0,
            required=need_separation,
        ),
        "talbot_order": int(r.get("N", lambda t: int(t), "talbot_order", default=1)),
        "tilt_rad": r.get(
            "theta-g", _si, "tilt", default=None if need_tilt else 0.0,
            required=need_tilt,
        ),
    }


def _beam_payload(r, need_mass=False, sigma_default=0.0):
    return {
        "mass_kg": r.get(
            "m", _si, "mass", default=None if need_mass else _PLACEHOLDER_MASS,
            required=need_mass,
        ),
        "speed_m_s": r.get("v", _si, "speed", required=True),
        "speed_sigma_m_s": r.get("sigma-v", _si, "speed_sigma", default=sigma_default),
    }


def _environment_payload(r, need_omega=False):
    return {
        "rotation_rate_rad_s": r.get(
            "omega", _si, "rotation_rate", default=None if need_omega else 0.0,
            required=need_omega,
        ),
        "gravity_m_s2": r.get("g", float, "gravity", default=9.81),
    }


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit_text(pairs):
    for name, value in pairs:
        if isinstance(value, float):
            print(f"{name} = {value:.12g}")
        else:
            print(f"{name} = {value}")


def _emit_csv(header, rows):
    print(header)
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, float):
                cells.append(f"{cell:.12e}")
            elif isinstance(cell, bool):
                cells.append("true" if cell else "false")
            else:
                cells.append(str(cell))
        print(",".join(cells))


def _emit(args, header, rows, text_pairs):
    if args.format == "csv":
        _emit_csv(header, rows)
    else:
        _emit_text(text_pairs)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def cmd_shift(args, client, r):
    kind = args.kind
    if kind in ("coriolis", "gravity", "sagnac"):
        payload = {
            "geometry": _geometry_payload(r, need_tilt=(kind == "gravity")),
            "beam": _beam_payload(r, need_mass=(kind == "sagnac")),
            "environment": _environment_payload(r, need_omega=(kind != "gravity")),
        }
        if kind == "sagnac":
            data = client.post("/shift/sagnac", payload)
            _emit(args, "kind,phase_rad,period_fraction",
                  [(kind, data["phase_rad"], data["period_fraction"])],
                  [("sagnac phase [rad]", data["phase_rad"]),
                   ("fringe shift [periods]", data["period_fraction"])])
            return
        data = client.post(f"/shift/{kind}", payload)
    elif kind == "pendulum":
        payload = {
            "geometry": _geometry_payload(r),
            "beam": _beam_payload(r),
            "amplitude_m": r.get("A", _si, "vibration_amplitude", required=True),
            "frequency_hz": r.get("f", _si, required=True),
            "phase_rad": r.get("phi0", _si, default=0.0),
        }
        data = client.post("/shift/pendulum", payload)
    elif kind == "torsion":
        payload = {
            "geometry": _geometry_payload(r),
            "beam": _beam_payload(r),
            "peak_rotation_rate_rad_s": r.get("omega0", _si, required=True),
            "frequency_hz": r.get("f", _si, required=True),
            "pivot_offset_m": r.get("z0", _si, required=True),
            "phase_rad": r.get("phi0", _si, default=0.0),
        }
        data = client.post("/shift/torsion", payload)
    else:
        raise CliInputError(f"unknown shift kind {kind!r}")
    _emit(args, "kind,displacement_m,period_fraction",
          [(kind, data["displacement_m"], data["period_fraction"])],
          [("displacement [m]", data["displacement_m"]),
           ("fraction of a period", data["period_fraction"])])


def cmd_visibility(args, client, r):
    kind = args.kind
    if kind in ("coriolis", "gravity"):
        payload = {
            "geometry": _geometry_payload(r, need_tilt=(kind == "gravity")),
            "beam": _beam_payload(r),
            "environment": _environment_payload(r, need_omega=(kind == "coriolis")),
        }
        data = client.post(f"/visibility/{kind}", payload)
    elif kind == "pendulum":
        payload = {
            "geometry": _geometry_payload(r),
            "beam": _beam_payload(r),
            "amplitude_m": r.get("A", _si, "vibration_amplitude", required=True),
            "frequency_hz": r.get("f", _si, required=True),
        }
        data = client.post("/visibility/pendulum", payload)
    elif kind == "torsion":
        payload = {
            "geometry": _geometry_payload(r),
            "beam": _beam_payload(r),
            "peak_rotation_rate_rad_s": r.get("omega0", _si, required=True),
            "frequency_hz": r.get("f", _si, required=True),
            "pivot_offset_m": r.get("z0", _si, required=True),
        }
        data = client.post("/visibility/torsion", payload)
    elif kind == "independent":
        payload = {
            "geometry": _geometry_payload(r, need_separation=False),
            "amplitudes_m": [
                r.get("A1", _si, required=True),
                r.get("A2", _si, required=True),
                r.get("A3", _si, required=True),
            ],
        }
        data = client.post("/visibility/independent", payload)
    elif kind == "gaussian":
        payload = {
            "geometry": _geometry_payload(r, need_separation=False),
            "sigmas_m": [
                r.get("sigma-a1", _si, required=True),
                r.get("sigma-a2", _si, required=True),
                r.get("sigma-a3", _si, required=True),
            ],
        }
        data = client.post("/visibility/gaussian", payload)
    else:
        raise CliInputError(f"unknown visibility kind {kind!r}")
    _emit(args, "kind,reduction", [(kind, data["reduction"])],
          [(f"{kind} reduction", data["reduction"])])


def cmd_mass_limit(args, client, r):
    kind = args.kind
    if kind == "fixed-period":
        payload = {
            "period_m": r.get("d", _si, "period", required=True),
            "speed_sigma_m_s": r.get("sigma-v", _si, "speed_sigma", required=True),
            "rotation_rate_rad_s": r.get("omega", _si, "rotation_rate", required=True),
        }
        data = client.post("/mass-limit/fixed-period", payload)
    elif kind == "fixed-length":
        payload = {
            "separation_m": r.get("L", _si, "separation", required=True),
            "speed_m_s": r.get("v", _si, "speed", required=True),
            "speed_sigma_m_s": r.get("sigma-v", _si, "speed_sigma", required=True),
            "rotation_rate_rad_s": r.get("omega", _si, "rotation_rate", required=True),
        }
        data = client.post("/mass-limit/fixed-length", payload)
    elif kind == "velocity-selection":
        payload = {
            "min_period_m": r.get("d-min", _si, required=True),
            "max_separation_m": r.get("L-max", _si, required=True),
            "rotation_rate_rad_s": r.get("omega", _si, "rotation_rate", required=True),
        }
        data = client.post("/mass-limit/velocity-selection", payload)
        _emit(args, "kind,limit_s_per_m", [(kind, data["limit_s_per_m"])],
              [("velocity selection limit [s/m]", data["limit_s_per_m"])])
        return
    else:
        raise CliInputError(f"unknown mass-limit kind {kind!r}")
    _emit(args, "kind,mass_kg,mass_amu",
          [(kind, data["mass_kg"], data["mass_amu"])],
          [("mass bound [kg]", data["mass_kg"]),
           ("mass bound [amu]", data["mass_amu"])])


def cmd_sweep(args, client, r):
    frequencies = parse_grid(r.get("f", str, required=True))
    geometry = _geometry_payload(r)
    beam = _beam_payload(r)
    if args.kind == "pendulum":
        base = {
            "geometry": geometry,
            "beam": beam,
            "amplitude_m": r.get("A", _si, "vibration_amplitude", required=True),
            "mode_kind": "pendulum",
        }
        path = "/sweep/pendulum"
    elif args.kind == "torsion":
        base = {
            "geometry": geometry,
            "beam": beam,
            "peak_rotation_rate_rad_s": r.get("omega0", _si, required=True),
            "pivot_offset_m": r.get("z0", _si, required=True),
        }
        path = "/sweep/torsion"
    else:
        raise CliInputError(f"unknown sweep kind {args.kind!r}")

    jobs = max(1, args.jobs)
    chunk_size = max(1, math.ceil(len(frequencies) / jobs))
    chunks = [frequencies[i:i + chunk_size] for i in range(0, len(frequencies), chunk_size)]

    def run_chunk(chunk):
        return client.post(path, {**base, "frequencies_hz": chunk})["points"]

    if len(chunks) == 1:
        results = [run_chunk(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(run_chunk, chunks))   # merged in input order

    rows = [(p["frequency_hz"], p["reduction"]) for chunk in results for p in chunk]
    if args.format == "text":
        _emit_text([(f"reduction at {f:g} Hz", v) for f, v in rows])
    else:
        _emit_csv("frequency_hz,reduction", rows)


def _oracle_perturbation(args, r):
    mode = args.mode
    if mode == "pendulum":
        return {
            "kind": "pendulum",
            "amplitude_m": r.get("A", _si, "vibration_amplitude", required=True),
            "frequency_hz": r.get("f", _si, required=True),
        }
    if mode == "torsion":
        return {
            "kind": "torsion",
            "peak_rotation_rate_rad_s": r.get("omega0", _si, required=True),
            "frequency_hz": r.get("f", _si, required=True),
            "pivot_offset_m": r.get("z0", _si, required=True),
        }
    if mode == "independent":
        return {
            "kind": "independent",
            "amplitudes_m": [
                r.get("A1", _si, required=True),
                r.get("A2", _si, required=True),
                r.get("A3", _si, required=True),
            ],
        }
    if mode == "gaussian":
        return {
            "kind": "gaussian",
            "sigmas_m": [
                r.get("sigma-a1", _si, required=True),
                r.get("sigma-a2", _si, required=True),
                r.get("sigma-a3", _si, required=True),
            ],
        }
    if mode == "inertial":
        return {
            "kind": "inertial",
            "rotation_rate_rad_s": r.get("omega", _si, "rotation_rate", default=0.0),
            "gravity_m_s2": r.get("g", float, "gravity", default=9.81),
        }
    raise CliInputError(f"unknown oracle mode {mode!r}")


def cmd_oracle(args, client, r):
    if args.kind == "compare":
        payload = {
            "geometry": _geometry_payload(r, need_tilt=False),
            "beam": _beam_payload(r),
            "perturbations": [_oracle_perturbation(args, r)],
            "seed": args.seed,
            "samples": args.samples,
        }
        data = client.post("/oracle/compare", payload)
        _emit(args,
              "mode,closed_form_r,oracle_r,standard_error,relative_discrepancy,mean_shift_m,samples,seed",
              [(args.mode, data["closed_form"], data["visibility"],
                data["standard_error"], data["relative_discrepancy"],
                data["mean_shift_m"], args.samples, args.seed)],
              [("closed-form reduction", data["closed_form"]),
               ("oracle reduction", data["visibility"]),
               ("standard error", data["standard_error"]),
               ("relative discrepancy", data["relative_discrepancy"]),
               ("mean shift [m]", data["mean_shift_m"])])
        return
    if args.kind == "velocity-average":
        payload = {
            "geometry": _geometry_payload(r, need_tilt=True),
            "beam": _beam_payload(r),
            "environment": _environment_payload(r, need_omega=True),
            "relative_tolerance": args.rtol,
            "node_count": args.nodes,
        }
        data = client.post("/oracle/velocity-average", payload)
        rows = []
        pairs = []
        for effect in ("coriolis", "gravity"):
            side = data[effect]
            rows.append((effect, side["closed_form"], side["averaged"],
                         side["relative_discrepancy"]))
            pairs.extend([
                (f"{effect} closed-form reduction", side["closed_form"]),
                (f"{effect} velocity-average reduction", side["averaged"]),
                (f"{effect} relative discrepancy", side["relative_discrepancy"]),
            ])
        _emit(args, "effect,closed_form_r,velocity_average_r,relative_discrepancy",
              rows, pairs)
        return
    raise CliInputError(f"unknown oracle subcommand {args.kind!r}")


def cmd_synthesize(args, client, r):
    payload = {
        "visibility": args.V,
        "offset_counts": args.offset,
        "phase_rad": r.get("phase", _si, default=0.0),
        "period_m": r.get("d", _si, "period", required=True),
        "n_points": args.points,
        "span_m": r.get("span", _si, default=None),
        "noise": args.noise,
        "seed": args.seed,
    }
    data = client.post("/fringe/synthesize", payload)
    scan = FringeScan(positions=tuple(data["positions_m"]), counts=tuple(data["counts"]),
                      period=data["period_m"])
    if args.out:
        try:
            write_scan_csv(scan, args.out)
        except OSError as exc:
            raise CliInputError(f"cannot write scan: {exc}") from None
    else:
        write_scan_csv(scan, sys.stdout)


def cmd_fit(args, client, r):
    period = r.get("d", _si, "period", required=True)
    try:
        scan = read_scan_csv(args.infile, period)
    except OSError as exc:
        raise CliInputError(f"cannot read scan: {exc}") from None
    payload = {
        "positions_m": list(scan.positions),
        "counts": list(scan.counts),
        "period_m": scan.period,
    }
    data = client.post("/fringe/fit", payload)
    _emit(args, "visibility,phase_rad,offset_counts,visibility_stderr,degenerate,clamped",
          [(data["visibility"], data["phase_rad"], data["offset_counts"],
            data["visibility_stderr"], data["degenerate"], data["clamped"])],
          [("visibility", data["visibility"]),
           ("phase [rad]", data["phase_rad"]),
           ("offset [counts]", data["offset_counts"]),
           ("visibility stderr", data["visibility_stderr"]),
           ("degenerate", data["degenerate"]),
           ("clamped", data["clamped"])])


def _trace_payload(path, args):
    rate = args.rate
    try:
        trace = read_trace_csv(path, sample_rate=rate, sensitivity=args.sensitivity)
    except OSError as exc:
        raise CliInputError(f"cannot read trace: {exc}") from None
    return {
        "sample_rate_hz": trace.sample_rate,
        "volts": list(trace.volts),
        "sensitivity_v_per_ms2": trace.sensitivity,
    }


def cmd_spectrum(args, client, r):
    if args.kind == "analyze":
        if not args.infile:
            raise CliInputError("spectrum analyze needs --in")
        data = client.post("/spectrum/analyze", _trace_payload(args.infile, args))
        rows = [
            (line["frequency_hz"], line["volts"], line["acceleration_ms2"],
             line["displacement_m"])
            for line in data["lines"]
        ]
        if args.format == "text":
            if not rows:
                print("no lines above the noise floor")
            for f, u, a, x in rows:
                print(f"{f:.6g} Hz: {u:.6g} V -> {a:.6g} m/s^2 -> {x:.6g} m")
        else:
            _emit_csv(SPECTRUM_HEADER, rows)
        return
    if args.kind == "gain":
        if not (args.before and args.after):
            raise CliInputError("spectrum gain needs --before and --after")
        payload = {
            "before": _trace_payload(args.before, args),
            "after": _trace_payload(args.after, args),
            "frequency_hz": r.get("at", _si, required=True),
        }
        data = client.post("/spectrum/gain", payload)
        _emit(args, "frequency_hz,gain_db",
              [(r.get("at", _si), data["gain_db"])],
              [("isolation gain [dB]", data["gain_db"])])
        return
    raise CliInputError(f"unknown spectrum subcommand {args.kind!r}")


def cmd_budget(args, client, r):
    payload = {
        "geometry": _geometry_payload(r, need_tilt=True),
        "beam": _beam_payload(r, need_mass=True),
        "environment": _environment_payload(r, need_omega=True),
        "vibration_amplitude_m": r.get("A", _si, "vibration_amplitude"),
        "frequency_band_hz": _band(r.get("f-band", str, default="10:2000:1Hz")),
    }
    torsion_rate = r.get("torsion-omega0", _si)
    if torsion_rate is not None:
        payload["torsion"] = {
            "peak_rotation_rate_rad_s": torsion_rate,
            "frequency_hz": r.get("torsion-f", _si, required=True),
            "pivot_offset_m": r.get("z0", _si, required=True),
        }
    sigma1 = r.get("sigma-a1", _si)
    if sigma1 is not None:
        payload["jitter_sigmas_m"] = [
            sigma1,
            r.get("sigma-a2", _si, required=True),
            r.get("sigma-a3", _si, required=True),
        ]
    data = client.post("/budget", payload)
    if args.format == "csv":
        rows = [(f["name"], f["value"], f["formula_ref"]) for f in data["factors"]]
        rows.append(("combined", data["combined"], "product-of-factors"))
        _emit_csv("factor,value,formula_ref", rows)
    else:
        print("contrast budget")
        width = max((len(f["name"]) for f in data["factors"]), default=8)
        for factor in data["factors"]:
            print(f"  {factor['name']:<{width}}  {factor['value']:.6f}")
            if factor["name"] == "pendulum_worst" and data["pendulum_worst_frequency_hz"]:
                print(f"  {'':{width}}  (worst frequency "
                      f"{data['pendulum_worst_frequency_hz']:.0f} Hz)")
        print(f"  {'combined':<{width}}  {data['combined']:.6f}")
        for note in data["notes"]:
            print(f"  note: {note}")


def _band(text):
    grid_parts = text.split(":")
    if len(grid_parts) != 3:
        raise CliInputError(f"frequency band must be 'start:stop:step', got {text!r}")
    step = _si(grid_parts[2], "frequency")
    return [float(grid_parts[0]), float(grid_parts[1]), step]


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliInputError(message)


def _common_flags(parser):
    parser.add_argument("--format", choices=("text", "csv"), default="text")
    parser.add_argument("--server", help="base URL of a running service; default in-process")
    parser.add_argument("--config", help="key = value parameter file; flags override it")
    parser.add_argument("--preset", choices=sorted(PRESETS), help="built-in parameter set")
    parser.add_argument("--jobs", type=int, default=1, help="parallel requests for sweeps")


def _setup_flags(parser):
    parser.add_argument("--d", type=qty_length, help="grating period, e.g. 990nm")
    parser.add_argument("--L", type=qty_length, help="grating separation, e.g. 0.38m")
    parser.add_argument("--N", type=int, help="self-imaging order (default 1)")
    parser.add_argument("--theta-g", type=qty_angle, help="grating-bar tilt, e.g. 1mrad")
    parser.add_argument("--m", "--mass", dest="m", type=qty_mass, help="particle mass, e.g. 840amu")
    parser.add_argument("--v", type=qty_velocity, help="mean speed, e.g. 200m/s")
    parser.add_argument("--sigma-v", type=qty_velocity, help="speed spread, e.g. 20m/s")
    parser.add_argument("--omega", type=qty_angular_rate,
                        help="frame rotation rate, e.g. 5.55e-5rad/s")
    parser.add_argument("--g", type=float, help="gravitational acceleration [m/s^2]")


def _mode_flags(parser):
    parser.add_argument("--A", type=qty_length, help="oscillation amplitude, e.g. 15nm")
    parser.add_argument("--f", type=str, help="frequency (or start:stop:step grid for sweeps)")
    parser.add_argument("--phi0", type=qty_angle, help="oscillation phase at the first grating")
    parser.add_argument("--omega0", type=qty_angular_rate,
                        help="peak angular velocity of the torsion mode")
    parser.add_argument("--z0", type=qty_length,
                        help="first grating position relative to the pivot; "
                             "write negatives as --z0=-0.38m")
    parser.add_argument("--A1", type=qty_length)
    parser.add_argument("--A2", type=qty_length)
    parser.add_argument("--A3", type=qty_length)
    parser.add_argument("--sigma-a1", type=qty_length)
    parser.add_argument("--sigma-a2", type=qty_length)
    parser.add_argument("--sigma-a3", type=qty_length)


def build_parser():
    parser = _Parser(prog="talbotlau",
                     description="Talbot-Lau dephasing toolkit (thin client)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shift", help="fringe displacement of one perturbation")
    p.add_argument("kind", choices=("coriolis", "gravity", "sagnac", "pendulum", "torsion"))
    _common_flags(p); _setup_flags(p); _mode_flags(p)

    p = sub.add_parser("visibility", help="closed-form contrast factor")
    p.add_argument("kind", choices=("coriolis", "gravity", "pendulum", "torsion",
                                    "independent", "gaussian"))
    _common_flags(p); _setup_flags(p); _mode_flags(p)

    p = sub.add_parser("mass-limit", help="mass bounds at the 1/e contrast criterion")
    p.add_argument("kind", choices=("fixed-period", "fixed-length", "velocity-selection"))
    _common_flags(p); _setup_flags(p)
    p.add_argument("--d-min", type=qty_length, help="smallest manufacturable period")
    p.add_argument("--L-max", type=qty_length, help="largest practical separation")

    p = sub.add_parser("sweep", help="contrast factor over a frequency grid (CSV)")
    p.add_argument("kind", choices=("pendulum", "torsion"))
    _common_flags(p); _setup_flags(p); _mode_flags(p)

    p = sub.add_parser("oracle", help="brute-force checks of the closed forms")
    p.add_argument("kind", choices=("compare", "velocity-average"))
    _common_flags(p); _setup_flags(p); _mode_flags(p)
    p.add_argument("--mode", choices=("pendulum", "torsion", "independent", "gaussian",
                                      "inertial"))
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rtol", type=float, default=1e-6)
    p.add_argument("--nodes", type=int, default=61)

    p = sub.add_parser("synthesize", help="generate a fringe scan CSV")
    _common_flags(p)
    p.add_argument("--V", type=float, required=True, help="fringe visibility in [0, 1]")
    p.add_argument("--offset", type=float, required=True, help="mean counts per point")
    p.add_argument("--phase", type=str, help="fringe phase, e.g. 1.0472rad")
    p.add_argument("--d", type=qty_length, help="grating period")
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--span", type=qty_length, help="scan span (default two periods)")
    p.add_argument("--noise", choices=("none", "poisson"), default="none")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("fit", help="extract visibility from a scan CSV")
    _common_flags(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--d", type=qty_length, help="grating period")

    p = sub.add_parser("spectrum", help="accelerometer spectra and isolation gain")
    p.add_argument("kind", choices=("analyze", "gain"))
    _common_flags(p)
    p.add_argument("--in", dest="infile")
    p.add_argument("--before")
    p.add_argument("--after")
    p.add_argument("--at", type=qty_frequency, help="frequency at which to compare, e.g. 50Hz")
    p.add_argument("--rate", type=qty_frequency, help="sample rate for volts-only traces")
    p.add_argument("--sensitivity", type=float, default=DEFAULT_SENSITIVITY,
                   help="sensor sensitivity [V/(m/s^2)]")

    p = sub.add_parser("budget", help="combined contrast budget for a design")
    _common_flags(p); _setup_flags(p)
    p.add_argument("--A", type=qty_length, help="controlled vibration amplitude")
    p.add_argument("--f-band", type=str, help="pendulum worst-case grid, default 10:2000:1Hz")
    p.add_argument("--torsion-omega0", type=qty_angular_rate)
    p.add_argument("--torsion-f", type=qty_frequency)
    p.add_argument("--z0", type=qty_length)
    p.add_argument("--sigma-a1", type=qty_length)
    p.add_argument("--sigma-a2", type=qty_length)
    p.add_argument("--sigma-a3", type=qty_length)

    return parser


_HANDLERS = {
    "shift": cmd_shift,
    "visibility": cmd_visibility,
    "mass-limit": cmd_mass_limit,
    "sweep": cmd_sweep,
    "oracle": cmd_oracle,
    "synthesize": cmd_synthesize,
    "fit": cmd_fit,
    "spectrum": cmd_spectrum,
    "budget": cmd_budget,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = load_config(args.config) if getattr(args, "config", None) else {}
        preset = PRESETS[args.preset] if getattr(args, "preset", None) else {}
        client = ServiceClient(getattr(args, "server", None))
        resolver = Resolver(args, config, preset)
        _HANDLERS[args.command](args, client, resolver)
        return 0
    except (CliInputError, MalformedQuantity) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CliComputeError, QuadratureNotConverged) as exc:
        print(f"error: computation did not converge: {exc}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        # library validation triggered before the request was sent
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
