"""Interferogram scans: synthesis, visibility extraction, CSV round trip.

A scan is the transmitted count rate versus third-grating displacement. The
pattern is modeled as a pure sinusoid with offset, which is what every
contrast formula in this package addresses; higher harmonics of real
near-field patterns are out of scope.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFit, InvalidParameter, InvalidVisibility
from .specfun import fit_sinusoid


@dataclass(frozen=True)
class FringeScan:
    """Sampled counts versus third-grating displacement."""

    positions: tuple     # strictly increasing displacements [m]
    counts: tuple        # non-negative count rates
    period: float        # grating period [m]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(float(x) for x in self.positions))
        object.__setattr__(self, "counts", tuple(float(c) for c in self.counts))
        if len(self.positions) != len(self.counts):
            raise InvalidParameter("positions and counts must have equal length")
        if len(self.positions) < 5:
            raise InvalidParameter(f"need at least 5 samples, got {len(self.positions)}")
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise InvalidParameter("positions must be strictly increasing")
        if any(c < 0 for c in self.counts):
            raise InvalidParameter("counts must be non-negative")
        if not self.period > 0:
            raise InvalidParameter(f"period must be positive, got {self.period}")


@dataclass(frozen=True)
class VisibilityEstimate:
    """Fitted sinusoid contrast with its uncertainty and quality flags."""

    visibility: float          # in [0, 1]
    phase: float               # [rad]
    offset: float              # [counts]
    visibility_stderr: float
    degenerate: bool = False   # flat scan, visibility pinned to 0
    clamped: bool = False      # raw fit left [0, 1] and was clamped


def synthesize_scan(visibility, offset, phase, period, n_points=50, span=None,
                    noise="none", seed=0):
    """Generate a scan with counts offset * (1 + V cos(2 pi x / d - phase)).

    ``span`` defaults to two periods. With ``noise="poisson"`` each point is
    Poisson-sampled from its mean, deterministically for a given seed.
    """
    if not 0.0 <= visibility <= 1.0:
        raise InvalidVisibility(f"visibility must lie in [0, 1], got {visibility}")
    if not offset > 0:
        raise InvalidParameter(f"offset must be positive, got {offset}")
    if not period > 0:
        raise InvalidParameter(f"period must be positive, got {period}")
    if span is None:
        span = 2.0 * period
    if span < period:
        raise InvalidParameter(f"span must cover at least one period, got {span}")
    if n_points < 5:
        raise InvalidParameter(f"need at least 5 points, got {n_points}")
    if noise not in ("none", "poisson"):
        raise InvalidParameter(f"noise must be 'none' or 'poisson', got {noise!r}")

    positions = np.linspace(0.0, span, n_points)
    means = offset * (1.0 + visibility * np.cos(2.0 * math.pi * positions / period - phase))
    if noise == "poisson":
        counts = np.random.default_rng(seed).poisson(means).astype(float)
    else:
        counts = means
    return FringeScan(positions=tuple(positions), counts=tuple(counts), period=period)


def extract_visibility(scan):
    """Fit the scan and return contrast, phase, offset and error bar.

    A flat scan of positive counts yields visibility 0 with the degenerate
    flag set instead of an error; a raw contrast outside [0, 1] is clamped
    and flagged. The error bar comes from the residual covariance of the
    linear fit.
    """
    try:
        fit = fit_sinusoid(scan.positions, scan.counts, scan.period)
    except DegenerateFit:
        if len(set(scan.counts)) == 1 and scan.counts[0] > 0:
            return VisibilityEstimate(
                visibility=0.0,
                phase=0.0,
                offset=scan.counts[0],
                visibility_stderr=math.inf,
                degenerate=True,
            )
        raise

    if fit.offset <= 0:
        raise DegenerateFit(f"fitted offset is not positive ({fit.offset:.3g})")

    raw = fit.amplitude / fit.offset
    clamped = raw > 1.0
    visibility = min(raw, 1.0)

    # propagate cov(offset, a, b) through V = sqrt(a^2 + b^2) / offset
    cov = np.asarray(fit.covariance)
    angle_terms = np.array([math.cos(fit.phase), math.sin(fit.phase)])
    jac = np.array([
        -fit.amplitude / fit.offset ** 2,
        angle_terms[0] / fit.offset,
        angle_terms[1] / fit.offset,
    ])
    variance = float(jac @ cov @ jac)
    stderr = math.sqrt(max(variance, 0.0))

    return VisibilityEstimate(
        visibility=float(visibility),
        phase=fit.phase,
        offset=fit.offset,
        visibility_stderr=stderr,
        degenerate=False,
        clamped=clamped,
    )


# ---------------------------------------------------------------------------
# CSV scan format: header "position_m,counts", one row per sample, LF endings
# ---------------------------------------------------------------------------

SCAN_HEADER = "position_m,counts"


def write_scan_csv(scan, path_or_file):
    """Write a scan; floats use repr so the round trip is bit exact."""
    def _write(fh):
        fh.write(SCAN_HEADER + "\n")
        for x, c in zip(scan.positions, scan.counts):
            fh.write(f"{x!r},{c!r}\n")

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w", newline="\n") as fh:
            _write(fh)


def read_scan_csv(path_or_file, period):
    """Read a scan written by write_scan_csv (or any matching CSV)."""
    if hasattr(path_or_file, "read"):
        content = path_or_file.read()
    else:
        with open(path_or_file) as fh:
            content = fh.read()
    lines = [line for line in content.splitlines() if line.strip()]
    if not lines or lines[0].strip() != SCAN_HEADER:
        raise InvalidParameter(f"scan CSV must start with header {SCAN_HEADER!r}")
    positions = []
    counts = []
    for line in lines[1:]:
        try:
            x_text, c_text = line.split(",")
            positions.append(float(x_text))
            counts.append(float(c_text))
        except ValueError:
            raise InvalidParameter(f"bad scan CSV row {line!r}") from None
    return FringeScan(positions=tuple(positions), counts=tuple(counts), period=period)


def scan_to_csv_text(scan):
    buffer = io.StringIO()
    write_scan_csv(scan, buffer)
    return buffer.getvalue()
