"""Source and correlation-channel models for the Monte-Carlo harness.

The source is a stationary unit-variance Gauss-Markov (AR(1)) chain; the
correlation channel perturbs a frame at a few random positions with
Gaussian magnitudes, producing the decoder's side information
y = x + e. Both are driven by an explicit numpy Generator so trials can
be replayed bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SourceSpec", "ChannelSpec", "gauss_markov", "apply_channel"]


@dataclass(frozen=True)
class SourceSpec:
    """Zero-mean, unit-variance AR(1) source with lag-1 correlation rho."""

    rho: float = 0.9

    def __post_init__(self) -> None:
        if not -1.0 < self.rho < 1.0:
            raise ValueError(f"rho must lie in (-1, 1), got {self.rho}")


@dataclass(frozen=True)
class ChannelSpec:
    """Sparse Bernoulli-Gaussian disturbance: errors_per_frame distinct
    positions, magnitudes ~ N(0, sigma_e^2)."""

    errors_per_frame: int = 1
    sigma_e: float = 0.0

    def __post_init__(self) -> None:
        if self.errors_per_frame < 0:
            raise ValueError(f"errors_per_frame must be >= 0, got {self.errors_per_frame}")
        if not self.sigma_e >= 0.0:
            raise ValueError(f"sigma_e must be >= 0, got {self.sigma_e}")


def gauss_markov(spec: SourceSpec, length: int, rng: np.random.Generator) -> np.ndarray:
    """x_0 ~ N(0,1); x_i = rho x_{i-1} + sqrt(1 - rho^2) w_i.

    The sqrt(1 - rho^2) innovation scaling keeps the marginal variance at
    exactly 1 for every sample, so frames are stationary from index 0.
    """
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    w = rng.standard_normal(length)
    x = np.empty(length)
    x[0] = w[0]
    scale = np.sqrt(1.0 - spec.rho**2)
    for i in range(1, length):
        x[i] = spec.rho * x[i - 1] + scale * w[i]
    return x


def apply_channel(
    x: np.ndarray, ch: ChannelSpec, rng: np.random.Generator
) -> tuple[np.ndarray, tuple[int, ...], np.ndarray]:
    """y = x + e; returns (y, true_locations, true_magnitudes).

    Positions are distinct and uniform; a drawn magnitude of exactly zero
    (the sigma_e = 0 case) leaves the sample untouched and is excluded
    from the ground truth, which is defined as "positions where y differs
    from x".
    """
    x = np.asarray(x, dtype=np.float64)
    frame_len = len(x)
    if ch.errors_per_frame > frame_len:
        raise ValueError(
            f"errors_per_frame = {ch.errors_per_frame} exceeds frame length {frame_len}"
        )
    positions = rng.choice(frame_len, size=ch.errors_per_frame, replace=False)
    values = rng.normal(0.0, ch.sigma_e, ch.errors_per_frame)
    y = x.copy()
    y[positions] += values
    hit = values != 0.0
    order = np.argsort(positions[hit])
    locations = tuple(int(p) for p in positions[hit][order])
    magnitudes = values[hit][order]
    return y, locations, magnitudes
