"""Tradeoff sweeps over the allowed radar SNR loss, and CSV emission.

A sweep walks an ascending grid of SNR-loss values (dB, all <= 0), converts
each to a target-power threshold, solves the closed form, and records the
capacity and operating regime. Beam-pattern sweeps tabulate the transmit
power versus direction for a handful of loss values. CSV output is
deterministic: fixed header, 17-significant-digit floats, '.' decimal
separator, LF line endings.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .closed_form import CaseTag, solve_closed_form
from .metrics import beam_pattern, default_angle_grid
from .model import RadarSnrSpec, Scenario, resolve_radar_spec

__all__ = [
    "DEFAULT_BEAMPATTERN_LOSSES_DB",
    "TradeoffPoint",
    "beampattern_sweep",
    "default_loss_grid_db",
    "emit_csv",
    "tradeoff_sweep",
    "write_beampattern_csv",
    "write_tradeoff_csv",
]

TRADEOFF_HEADER = ("snr_loss_db", "gamma", "capacity_bits", "case")
BEAMPATTERN_HEADER = ("snr_loss_db", "angle_deg", "power")

# no loss, then progressively looser radar requirements
DEFAULT_BEAMPATTERN_LOSSES_DB = (-20.0, -10.0, -5.0, 0.0)


@dataclass(frozen=True)
class TradeoffPoint:
    """One point of the capacity versus radar-SNR-loss tradeoff."""

    snr_loss_db: float
    gamma: float
    capacity_bits: float
    case: CaseTag


def default_loss_grid_db() -> np.ndarray:
    """-40 dB to 0 dB in 0.25 dB steps."""
    return np.linspace(-40.0, 0.0, 161)


def _check_loss_grid(losses) -> np.ndarray:
    grid = np.asarray(losses, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("loss grid must be a nonempty 1-D array")
    if np.any(np.isnan(grid)) or np.any(grid > 0.0):
        raise ValueError("loss grid entries must be <= 0 dB")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("loss grid must be strictly ascending")
    return grid


def tradeoff_sweep(scenario: Scenario, losses_db=None) -> list[TradeoffPoint]:
    """Capacity and regime at each allowed SNR loss (ascending, <= 0 dB)."""
    grid = default_loss_grid_db() if losses_db is None else _check_loss_grid(losses_db)
    points = []
    for loss in grid:
        spec = resolve_radar_spec(RadarSnrSpec(snr_loss_db=float(loss)), scenario)
        solution = solve_closed_form(scenario, spec.gamma)
        points.append(
            TradeoffPoint(
                snr_loss_db=float(loss),
                gamma=spec.gamma,
                capacity_bits=solution.capacity_bits,
                case=solution.case,
            )
        )
    return points


def beampattern_sweep(scenario: Scenario, losses_db=None, angle_grid=None):
    """Beam pattern of the optimal covariance at each SNR loss.

    Returns a list of (snr_loss_db, BeamPattern) pairs over the default
    0.25-degree grid unless ``angle_grid`` (radians) is given.
    """
    if losses_db is None:
        losses_db = DEFAULT_BEAMPATTERN_LOSSES_DB
    grid = _check_loss_grid(losses_db)
    if angle_grid is None:
        angle_grid = default_angle_grid()
    out = []
    for loss in grid:
        spec = resolve_radar_spec(RadarSnrSpec(snr_loss_db=float(loss)), scenario)
        solution = solve_closed_form(scenario, spec.gamma)
        pattern = beam_pattern(solution.covariance, scenario.geometry, angle_grid)
        out.append((float(loss), pattern))
    return out


def _format_field(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError(f"unsupported CSV field type: {value!r}")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    raise TypeError(f"unsupported CSV field type: {value!r}")


def emit_csv(rows, header, destination) -> Path:
    """Write rows to ``destination`` deterministically; returns the path.

    Floats carry 17 significant digits (lossless round trip), lines end in
    LF regardless of platform. I/O errors are re-raised with the path.
    """
    path = Path(destination)
    try:
        with open(path, "w", newline="", encoding="ascii") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_format_field(v) for v in row])
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc
    return path


def write_tradeoff_csv(points, destination) -> Path:
    """Emit tradeoff points with columns snr_loss_db,gamma,capacity_bits,case."""
    rows = (
        (p.snr_loss_db, p.gamma, p.capacity_bits, p.case.value) for p in points
    )
    return emit_csv(rows, TRADEOFF_HEADER, destination)


def write_beampattern_csv(patterns, destination) -> Path:
    """Emit (loss, pattern) pairs in long form: snr_loss_db,angle_deg,power."""

    def rows():
        for loss, pattern in patterns:
            for angle, power in zip(pattern.angles, pattern.power):
                yield (loss, math.degrees(float(angle)), float(power))

    return emit_csv(rows(), BEAMPATTERN_HEADER, destination)
