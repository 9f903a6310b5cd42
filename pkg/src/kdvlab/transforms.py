"""Maps between solutions: Miura, Galilean shifts, PT symmetry, Cole-Hopf.

PT acts on traveling profiles in the co-moving coordinate: sending
x -> -x, t -> -t flips zeta, and time reversal conjugates a complex field,
so PT: f(zeta) -> conj(f(-zeta)).  Profiles must live on grids that are
symmetric about zeta = 0 for this to be a grid permutation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .profiles import SampledProfile
from .residual import differentiate

__all__ = [
    "miura",
    "galilean_shift",
    "pt_transform",
    "SymmetryClass",
    "classify",
    "cole_hopf",
    "PT_EVEN",
    "PT_ODD",
    "PT_NONE",
]

PT_EVEN = "PT_EVEN"
PT_ODD = "PT_ODD"
PT_NONE = "NONE"

# exp argument beyond which cole_hopf rescales to stay inside double range
_EXP_GUARD = 690.0


def miura(v: SampledProfile, sign: int, complexified: bool = False) -> SampledProfile:
    """Map an mKdV profile to a KdV one.

    sign selects u = v**2 + v' or u = v**2 - v'; with ``complexified=True``
    the map is u = -v**2 +/- i v', which sends focusing-mKdV profiles to
    KdV.  Either way the image rides at the same reduced velocity as v.
    """
    if sign not in (-1, +1):
        raise ValueError("sign must be +1 or -1")
    v1 = differentiate(v, 1).samples
    w = v.samples
    if complexified:
        u = -w * w + sign * 1j * v1
    else:
        u = w * w + sign * v1
    return v.with_samples(u)


def galilean_shift(u: SampledProfile, c: float, beta: float) -> tuple[SampledProfile, float]:
    """Shift a KdV profile by a constant: (u + beta, c - 6*beta).

    The shifted pair is again a traveling-wave solution; shifts compose
    additively.
    """
    return u.with_samples(u.samples + beta), float(c - 6.0 * beta)


def pt_transform(f: SampledProfile) -> SampledProfile:
    """conj(f(-zeta)) on a grid symmetric about zeta = 0."""
    idx = f.reflection_indices()
    return f.with_samples(np.conj(f.samples[idx]))


@dataclass(frozen=True)
class SymmetryClass:
    """PT classification with the norm of the smaller symmetry defect."""

    tag: str
    deviation: float

    def to_dict(self) -> dict:
        return {"class": self.tag, "deviation": self.deviation}


def classify(f: SampledProfile, tol: float = 1e-10) -> SymmetryClass:
    """PT_EVEN if f = PT(f), PT_ODD if f = -PT(f) (relative L2 defect < tol)."""
    g = pt_transform(f).samples
    w = f.samples
    norm = np.linalg.norm(w)
    if norm == 0.0:
        return SymmetryClass(PT_EVEN, 0.0)
    d_even = float(np.linalg.norm(w - g) / norm)
    d_odd = float(np.linalg.norm(w + g) / norm)
    if d_even < tol and d_even <= d_odd:
        return SymmetryClass(PT_EVEN, d_even)
    if d_odd < tol:
        return SymmetryClass(PT_ODD, d_odd)
    return SymmetryClass(PT_NONE, min(d_even, d_odd))


def cole_hopf(v: SampledProfile) -> SampledProfile:
    """psi = exp(integral of v from 0), so that v = psi'/psi.

    Uses trapezoidal cumulative integration on the grid and normalizes
    psi(0) = 1 (zeta = 0 must be a grid point).  The wave function then
    satisfies psi''/psi = v**2 + v' to differentiation accuracy.  If the
    integral grows beyond double range, psi is rescaled by a constant and
    a warning reports the factor (v = psi'/psi is scale-invariant).
    """
    w = v.samples
    h = v.spacing
    grid = v.grid
    i0 = int(np.argmin(np.abs(grid)))
    if abs(grid[i0]) > 1e-9 * max(1.0, abs(grid[0])):
        raise ValueError("cole_hopf needs zeta = 0 on the grid")
    integral = np.concatenate(([0.0 + 0j], np.cumsum(0.5 * h * (w[1:] + w[:-1]))))
    integral -= integral[i0]
    shift = float(np.max(integral.real))
    if shift > _EXP_GUARD:
        warnings.warn(
            f"cole_hopf: integral of v reaches {shift:.3g}; rescaling psi by exp(-{shift:.6g})",
            RuntimeWarning,
            stacklevel=2,
        )
        integral -= shift
    return v.with_samples(np.exp(integral))
