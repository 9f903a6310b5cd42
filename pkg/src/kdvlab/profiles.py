"""Sampled complex field profiles on uniform 1-D grids.

A :class:`SampledProfile` holds nondimensionalized field values w(zeta) on
a uniform grid in the co-moving coordinate zeta: for KdV-scaled fields
w = u / alpha**2, for mKdV-scaled fields w = v / alpha.  ``scale_alpha``
records the alpha used, so physical values can be recovered.

Topology is either ``"periodic"`` (length = n * spacing, the right
endpoint is excluded) or ``"truncated"`` (a window, both endpoints
included).  An optional boolean ``mask`` marks the samples that norm
computations should keep; it exists for singular profiles whose grids
approach a pole.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = ["SampledProfile", "PERIODIC", "TRUNCATED"]

PERIODIC = "periodic"
TRUNCATED = "truncated"

_MIN_SAMPLES = 16


@dataclass(frozen=True, eq=False)
class SampledProfile:
    samples: np.ndarray
    spacing: float
    start: float
    topology: str
    scale_alpha: float = 1.0
    mask: np.ndarray | None = None

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=complex)
        if samples.ndim != 1 or samples.size < _MIN_SAMPLES:
            raise ValueError(f"profile needs >= {_MIN_SAMPLES} samples on a 1-D grid")
        object.__setattr__(self, "samples", samples)
        if not (self.spacing > 0.0 and np.isfinite(self.spacing)):
            raise ValueError("spacing must be positive and finite")
        if self.topology not in (PERIODIC, TRUNCATED):
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.scale_alpha <= 0.0:
            raise ValueError("scale_alpha must be positive")
        if self.mask is not None:
            mask = np.asarray(self.mask, dtype=bool)
            if mask.shape != samples.shape:
                raise ValueError("mask must match the sample grid")
            if not mask.any():
                raise ValueError("mask keeps no samples")
            object.__setattr__(self, "mask", mask)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def length(self) -> float:
        """Domain length: full period if periodic, window width if truncated."""
        if self.topology == PERIODIC:
            return self.n * self.spacing
        return (self.n - 1) * self.spacing

    @property
    def grid(self) -> np.ndarray:
        return self.start + self.spacing * np.arange(self.n)

    @property
    def is_periodic(self) -> bool:
        return self.topology == PERIODIC

    def keep(self) -> np.ndarray:
        """Boolean selector of samples that enter norms."""
        if self.mask is None:
            return np.ones(self.n, dtype=bool)
        return self.mask

    def with_samples(self, samples: np.ndarray) -> "SampledProfile":
        """Same grid, mask and scaling, new values."""
        return replace(self, samples=np.asarray(samples, dtype=complex))

    def reflection_indices(self) -> np.ndarray:
        """Index map j -> j' with zeta[j'] = -zeta[j], for symmetric grids.

        Periodic grids must start at -length/2 (index 0 is its own mirror
        modulo the period); truncated grids must be symmetric about 0.
        """
        n = self.n
        if self.topology == PERIODIC:
            if abs(self.start + self.length / 2.0) > 1e-9 * self.length:
                raise ValueError("periodic grid is not centered on zeta=0")
            return (-np.arange(n)) % n
        end = self.start + (n - 1) * self.spacing
        if abs(self.start + end) > 1e-9 * max(1.0, abs(end)):
            raise ValueError("truncated grid is not symmetric about zeta=0")
        return np.arange(n - 1, -1, -1)
