"""Performance evaluators on an arbitrary transmit covariance.

These take any Hermitian PSD covariance, not just the closed-form optimum,
so the verification oracles and sweeps can score candidate designs with the
same code paths.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import ArrayGeometry, Scenario

__all__ = [
    "BeamPattern",
    "beam_pattern",
    "capacity_from_covariance",
    "channel_power",
    "default_angle_grid",
    "radar_snr",
    "receive_beamformer",
]

# 0.25 degree steps over [-90, 90]
DEFAULT_PATTERN_POINTS = 721

# tiny negative quadratic-form values are rounding dust; anything larger
# means the matrix is not PSD
_PSD_ATOL = 1e-9

_HALF_PI_TOL = math.pi / 2.0 + 1e-12


@dataclass(frozen=True)
class BeamPattern:
    """Transmit power versus direction: angles in radians, power >= 0."""

    angles: np.ndarray
    power: np.ndarray


def _as_covariance(covariance, dim: int) -> np.ndarray:
    r = np.asarray(covariance, dtype=np.complex128)
    if r.shape != (dim, dim):
        raise ValueError(f"covariance must have shape ({dim}, {dim}), got {r.shape}")
    return r


def channel_power(covariance, channel) -> float:
    """Received signal power h^H R h (real for Hermitian R)."""
    h = np.asarray(channel, dtype=np.complex128)
    if h.ndim != 1:
        raise ValueError(f"channel must be 1-D, got shape {h.shape}")
    r = _as_covariance(covariance, h.size)
    return float(np.vdot(h, r @ h).real)


def capacity_from_covariance(covariance, channel) -> float:
    """Spectral efficiency log2(1 + h^H R h) in bits (noise power 1)."""
    return math.log2(1.0 + max(channel_power(covariance, channel), 0.0))


def receive_beamformer(scenario: Scenario) -> np.ndarray:
    """Unit-norm receive weights matched to the target direction.

    This is the SNR-optimal choice for a point target; radar_snr with any
    other unit-norm weights can only be lower.
    """
    at = scenario.target_steering
    w = at / np.linalg.norm(at)
    w.setflags(write=False)
    return w


def radar_snr(covariance, scenario: Scenario, weights=None) -> float:
    """Radar output SNR after receive beamforming (noise power 1).

    With the default matched weights this reduces to
    target_amplitude^2 * ||a_r||^2 * (a_t^H R a_t). Explicit ``weights``
    must be unit norm to 1e-9.
    """
    at = scenario.target_steering
    r = _as_covariance(covariance, at.size)
    target_power = float(np.vdot(at, r @ at).real)
    amp_sq = scenario.target_amplitude**2
    if weights is None:
        return amp_sq * scenario.steering_norm_sq * target_power
    w = np.asarray(weights, dtype=np.complex128)
    if w.shape != at.shape:
        raise ValueError(f"weights must have shape {at.shape}, got {w.shape}")
    wnorm_sq = float(np.vdot(w, w).real)
    if abs(wnorm_sq - 1.0) > 1e-9:
        raise ValueError(f"receive weights must be unit norm, got ||w||^2 = {wnorm_sq!r}")
    return amp_sq * abs(np.vdot(w, at)) ** 2 * target_power / wnorm_sq


def default_angle_grid() -> np.ndarray:
    """Angles for beam-pattern evaluation: [-90, 90] degrees in 0.25 deg steps."""
    return np.deg2rad(np.linspace(-90.0, 90.0, DEFAULT_PATTERN_POINTS))


def beam_pattern(covariance, geometry: ArrayGeometry, angle_grid=None) -> BeamPattern:
    """Transmit power a(phi)^H R a(phi) over a grid of directions.

    Rounding dust below zero is clamped; genuinely negative values raise,
    since they mean the covariance is not PSD.
    """
    if angle_grid is None:
        angles = default_angle_grid()
    else:
        angles = np.asarray(angle_grid, dtype=np.float64)
        if angles.ndim != 1 or angles.size == 0:
            raise ValueError("angle_grid must be a nonempty 1-D array")
        if np.any(np.isnan(angles)) or angles.min() < -_HALF_PI_TOL or angles.max() > _HALF_PI_TOL:
            raise ValueError("angle_grid entries must lie in [-pi/2, pi/2] rad")
    m = geometry.num_antennas
    r = _as_covariance(covariance, m)
    # rows of A are steering vectors at each grid angle
    phase = -2.0 * math.pi * geometry.spacing_over_wavelength
    a = np.exp(1j * phase * np.outer(np.sin(angles), np.arange(m)))
    power = np.einsum("nm,nm->n", a.conj() @ r, a).real
    scale = max(1.0, float(np.abs(np.trace(r))))
    if power.min() < -_PSD_ATOL * scale:
        raise ValueError(
            f"covariance is not PSD: pattern value {power.min()!r} at "
            f"{math.degrees(angles[power.argmin()]):.2f} deg"
        )
    power = np.maximum(power, 0.0)
    angles = angles.copy()
    angles.setflags(write=False)
    power.setflags(write=False)
    return BeamPattern(angles=angles, power=power)
