"""Accelerometer traces: spectral lines, isolation gain, sweep predictions.

The calibration chain is voltage -> acceleration -> displacement:
a = U / k and x = a / (2 pi f)^2 for a sensor with sensitivity k. Tone
amplitudes are estimated from a Hann-windowed DFT with the matching
amplitude correction and parabolic peak interpolation; every synthetic
fixture in the test suite is built with the same convention.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, LineNotFound, TooFewSamples
from .vibration import CommonPendulum, IndependentHarmonic, independent_reduction, pendulum_reduction

DEFAULT_SENSITIVITY = 0.316  # V / (m/s^2)

_MIN_SAMPLES = 16
_ABSOLUTE_FLOOR = 1e-12      # m, displacement below which a peak is noise
_RELATIVE_FLOOR = 0.01       # voltage fraction of the strongest line


@dataclass(frozen=True)
class AccelTrace:
    """Accelerometer voltage samples at a fixed rate."""

    sample_rate: float        # [Hz]
    volts: tuple              # sensor output [V]
    sensitivity: float = DEFAULT_SENSITIVITY   # [V / (m/s^2)]

    def __post_init__(self):
        object.__setattr__(self, "volts", tuple(float(u) for u in self.volts))
        if not self.sample_rate > 0:
            raise InvalidParameter(f"sample rate must be positive, got {self.sample_rate}")
        if len(self.volts) < _MIN_SAMPLES:
            raise TooFewSamples(
                f"need at least {_MIN_SAMPLES} samples, got {len(self.volts)}"
            )
        if not self.sensitivity > 0:
            raise InvalidParameter(f"sensitivity must be positive, got {self.sensitivity}")


@dataclass(frozen=True)
class SpectrumLine:
    """One vibration tone converted through the calibration chain."""

    frequency: float          # [Hz]
    volts: float              # voltage amplitude [V]
    acceleration: float       # [m/s^2]
    displacement: float       # [m]

    @classmethod
    def from_voltage(cls, frequency, volts, sensitivity):
        acceleration = volts / sensitivity
        displacement = acceleration / (2.0 * math.pi * frequency) ** 2
        return cls(frequency, volts, acceleration, displacement)


def analyze_trace(trace):
    """Extract spectral lines from a trace.

    Hann-windowed rfft, single-sided amplitude correction 2/sum(w), DC bin
    dropped, local maxima refined by a parabolic fit across the peak bin.
    A peak is treated as numerical noise and suppressed when its displacement
    falls below 1e-12 m or its voltage below 1% of the strongest line's
    (displacement scales as 1/frequency^2, so the relative floor must act on
    the voltage spectrum to avoid discarding genuine high-frequency tones).
    """
    u = np.asarray(trace.volts, dtype=float)
    n = u.size
    window = 0.5 - 0.5 * np.cos(2.0 * math.pi * np.arange(n) / n)   # periodic Hann
    window_sum = window.sum()
    spectrum = np.fft.rfft(window * u)
    amplitudes = 2.0 * np.abs(spectrum) / window_sum
    bin_width = trace.sample_rate / n

    candidates = []
    for k in range(1, amplitudes.size - 1):
        a0 = amplitudes[k]
        if a0 <= 0 or a0 < amplitudes[k - 1] or a0 <= amplitudes[k + 1]:
            continue
        left, right = amplitudes[k - 1], amplitudes[k + 1]
        denom = left - 2.0 * a0 + right
        delta = 0.5 * (left - right) / denom if denom != 0 else 0.0
        frequency = (k + delta) * bin_width
        amplitude = a0 - 0.25 * (left - right) * delta
        if frequency > 0:
            candidates.append(
                SpectrumLine.from_voltage(frequency, float(amplitude), trace.sensitivity)
            )

    if not candidates:
        return []
    strongest_volts = max(line.volts for line in candidates)
    return [
        line
        for line in candidates
        if line.displacement >= _ABSOLUTE_FLOOR
        and line.volts >= _RELATIVE_FLOOR * strongest_volts
    ]


def isolation_gain(before, after, frequency, tolerance=None):
    """Attenuation 20 log10(x_before / x_after) at a matched line [dB].

    ``tolerance`` is the maximum line-to-request frequency mismatch; when
    omitted it defaults to half the finest line spacing of each list (or 5%
    of the requested frequency for single-line lists).
    """
    x_before = _matched_displacement(before, frequency, tolerance)
    x_after = _matched_displacement(after, frequency, tolerance)
    if x_after <= 0:
        raise InvalidParameter("matched line in the after spectrum has zero displacement")
    return 20.0 * math.log10(x_before / x_after)


def _matched_displacement(lines, frequency, tolerance):
    if not lines:
        raise LineNotFound(f"no lines to match near {frequency} Hz")
    if tolerance is None:
        freqs = sorted(line.frequency for line in lines)
        gaps = [b - a for a, b in zip(freqs, freqs[1:])]
        tolerance = min(gaps) / 2.0 if gaps else 0.05 * frequency
    best = min(lines, key=lambda line: abs(line.frequency - frequency))
    if abs(best.frequency - frequency) > tolerance:
        raise LineNotFound(
            f"no line within {tolerance:g} Hz of {frequency} Hz "
            f"(closest at {best.frequency:g} Hz)"
        )
    return best.displacement


def predict_sweep(geom, beam, amplitude, frequencies, mode_kind="pendulum"):
    """Predicted contrast factor at fixed amplitude across a frequency grid.

    ``mode_kind`` selects the common-pendulum formula (frequency dependent,
    periodic with period v/L) or the independent-grating formula (flat in
    frequency).
    Returns a list of (frequency, reduction) pairs in grid order.
    """
    if len(frequencies) == 0:
        raise InvalidParameter("frequency grid must not be empty")
    if any(f <= 0 for f in frequencies):
        raise InvalidParameter("sweep frequencies must be positive")
    if mode_kind == "pendulum":
        return [
            (float(f), pendulum_reduction(CommonPendulum(amplitude, float(f)), geom, beam))
            for f in frequencies
        ]
    if mode_kind == "independent":
        mode = IndependentHarmonic((amplitude, amplitude, amplitude))
        value = independent_reduction(mode, geom)
        return [(float(f), value) for f in frequencies]
    raise InvalidParameter(f"mode_kind must be 'pendulum' or 'independent', got {mode_kind!r}")


# ---------------------------------------------------------------------------
# CSV input: "time_s,volts" rows or bare "volts" with an explicit rate
# ---------------------------------------------------------------------------

def read_trace_csv(path_or_file, sample_rate=None, sensitivity=DEFAULT_SENSITIVITY):
    if hasattr(path_or_file, "read"):
        content = path_or_file.read()
    else:
        with open(path_or_file) as fh:
            content = fh.read()
    lines = [line.strip() for line in content.splitlines() if line.strip()]
    if not lines:
        raise InvalidParameter("empty trace file")

    header = lines[0].replace(" ", "")
    if header == "time_s,volts":
        times = []
        volts = []
        for line in lines[1:]:
            try:
                t_text, u_text = line.split(",")
                times.append(float(t_text))
                volts.append(float(u_text))
            except ValueError:
                raise InvalidParameter(f"bad trace row {line!r}") from None
        if len(times) < 2:
            raise TooFewSamples("need at least two timestamped samples")
        step = times[1] - times[0]
        if step <= 0:
            raise InvalidParameter("time column must increase")
        deviations = [abs((b - a) - step) for a, b in zip(times, times[1:])]
        if max(deviations) > 1e-6 * step:
            raise InvalidParameter("time column must be uniformly spaced")
        rate = 1.0 / step
    elif header == "volts":
        if sample_rate is None:
            raise InvalidParameter("volts-only traces need an explicit sample rate")
        try:
            volts = [float(line) for line in lines[1:]]
        except ValueError as exc:
            raise InvalidParameter(f"bad trace row: {exc}") from None
        rate = sample_rate
    else:
        raise InvalidParameter("trace CSV header must be 'time_s,volts' or 'volts'")

    return AccelTrace(sample_rate=rate, volts=tuple(volts), sensitivity=sensitivity)


SPECTRUM_HEADER = "freq_hz,volts,accel_ms2,displacement_m"


def spectrum_to_csv_rows(lines):
    rows = [SPECTRUM_HEADER]
    for line in lines:
        rows.append(
            f"{line.frequency:.12e},{line.volts:.12e},"
            f"{line.acceleration:.12e},{line.displacement:.12e}"
        )
    return rows
