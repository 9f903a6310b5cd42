"""Closed-form complex traveling-wave families of KdV and mKdV.

The equations, in the sign conventions used throughout the package:

    KdV:              u_t - 6 u u_x + u_xxx = 0
    mKdV defocusing:  v_t - 6 v^2 v_x + v_xxx = 0
    mKdV focusing:    v_t + 6 v^2 v_x + v_xxx = 0

Every family is a profile in the co-moving coordinate
zeta = alpha * (x - c * alpha**2 * t) with a reduced velocity c and
amplitudes fixed by the family's constraint equations; ``resolve`` turns a
:class:`SolutionSpec` into those constants and ``eval_profile`` /
``eval_field`` evaluate the complex field.

Two families are real and singular at zeta = 0 (cosech forms); their grid
builders exclude a configurable pole neighborhood.

The sum-of-sn family velocity is stored as c = -(1+m), the value the
traveling-wave reduction actually requires (sn'' = -(1+m) sn + 2m sn^3
leaves no other choice); ``paper_velocities=True`` substitutes the
published value 5(m-5) so the discrepancy can be demonstrated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .elliptic import complete_K, jacobi, period
from .profiles import PERIODIC, TRUNCATED, SampledProfile

__all__ = [
    "EquationKind",
    "Family",
    "SolutionSpec",
    "ResolvedParams",
    "resolve",
    "eval_profile",
    "eval_field",
    "intensity",
    "superpose",
    "profile_zeta_period",
    "periodic_profile",
    "truncated_profile",
    "singular_profile",
    "default_profile",
    "conjugate_spec",
    "KDV_FAMILIES",
    "MKDV_FAMILIES",
    "SINGULAR_FAMILIES",
    "COMPLEX_FAMILIES",
    "DEFAULT_POLE_EPSILON",
]

DEFAULT_POLE_EPSILON = 0.15


class EquationKind(enum.Enum):
    KDV = "kdv"
    MKDV_DEFOCUSING = "mkdv-defocusing"
    MKDV_FOCUSING = "mkdv-focusing"


class Family(str, enum.Enum):
    """Catalog families; values double as CLI/JSON identifiers."""

    KDV_CNOIDAL = "kdv-cnoidal"
    KDV_SECH2 = "kdv-sech2"
    KDV_CN2_SNDN = "kdv-cn2-sndn"
    KDV_CN2_SNCN = "kdv-cn2-sncn"
    KDV_COSECH = "kdv-cosech"
    MKDV_SN_CN = "mkdv-sn-cn"
    MKDV_SN_DN = "mkdv-sn-dn"
    MKDV_SN = "mkdv-sn"
    MKDV_ICN = "mkdv-icn"
    MKDV_COSECH_COTH = "mkdv-cosech-coth"


KDV_FAMILIES = (
    Family.KDV_CNOIDAL,
    Family.KDV_SECH2,
    Family.KDV_CN2_SNDN,
    Family.KDV_CN2_SNCN,
    Family.KDV_COSECH,
)
MKDV_FAMILIES = (
    Family.MKDV_SN_CN,
    Family.MKDV_SN_DN,
    Family.MKDV_SN,
    Family.MKDV_ICN,
    Family.MKDV_COSECH_COTH,
)
SINGULAR_FAMILIES = (Family.KDV_COSECH, Family.MKDV_COSECH_COTH)
#: families whose profiles are genuinely complex
COMPLEX_FAMILIES = (
    Family.KDV_CN2_SNDN,
    Family.KDV_CN2_SNCN,
    Family.MKDV_SN_CN,
    Family.MKDV_SN_DN,
    Family.MKDV_ICN,
)

# which optional knobs each family accepts
_USES_M = {f: f not in SINGULAR_FAMILIES and f is not Family.KDV_SECH2 for f in Family}
_USES_BRANCH = {
    Family.KDV_CN2_SNDN,
    Family.KDV_CN2_SNCN,
    Family.KDV_COSECH,
    Family.MKDV_SN_CN,
    Family.MKDV_SN_DN,
    Family.MKDV_ICN,
}
_USES_AMP_SIGN = {
    Family.MKDV_SN_CN,
    Family.MKDV_SN_DN,
    Family.MKDV_SN,
    Family.MKDV_COSECH_COTH,
}


@dataclass(frozen=True)
class SolutionSpec:
    """A family plus its free parameters.

    alpha is the inverse length scale (> 0); m the modulus parameter;
    beta the Galilean offset (kdv-cn2-sncn only); branch the sign of the
    imaginary component relative to the real one; amp_sign the overall
    sign of the amplitude for the mKdV families.
    """

    family: Family
    alpha: float = 1.0
    m: float | None = None
    beta: float = 0.0
    branch: int = +1
    amp_sign: int = +1


@dataclass(frozen=True)
class ResolvedParams:
    """Amplitudes and velocity implied by a family's constraint equations.

    A and B carry the physical scaling (alpha**2 for KdV families, alpha
    for mKdV ones); c is the dimensionless reduced velocity in
    zeta = alpha*(x - c*alpha**2*t); offset is the additive constant.
    """

    A: float
    B: float
    c: float
    offset: float
    equation: EquationKind

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "c": self.c,
            "offset": self.offset,
            "equation": self.equation.value,
        }


def _validate(spec: SolutionSpec) -> None:
    if not isinstance(spec.family, Family):
        raise ValueError(f"unknown family {spec.family!r}")
    if not (spec.alpha > 0.0 and np.isfinite(spec.alpha)):
        raise ValueError("alpha must be positive and finite")
    if spec.branch not in (-1, +1) or spec.amp_sign not in (-1, +1):
        raise ValueError("branch and amp_sign must be +1 or -1")

    fam = spec.family
    if _USES_M[fam]:
        if spec.m is None:
            raise ValueError(f"family {fam.value} requires the modulus parameter m")
        if not (0.0 <= spec.m <= 1.0):
            raise ValueError(f"modulus parameter m={spec.m} outside [0, 1]")
    elif fam is Family.KDV_SECH2:
        if spec.m is not None and spec.m != 1.0:
            raise ValueError("kdv-sech2 is the m=1 soliton; m must be omitted or 1")
    elif spec.m is not None:
        raise ValueError(f"family {fam.value} takes no modulus parameter")

    if spec.beta != 0.0 and fam is not Family.KDV_CN2_SNCN:
        raise ValueError(f"beta is only meaningful for {Family.KDV_CN2_SNCN.value}")
    if spec.branch == -1 and fam not in _USES_BRANCH:
        raise ValueError(f"family {fam.value} has no branch sign")
    if spec.amp_sign == -1 and fam not in _USES_AMP_SIGN:
        raise ValueError(f"family {fam.value} has no amplitude sign")


def resolve(spec: SolutionSpec, paper_velocities: bool = False) -> ResolvedParams:
    """Apply the family's constraint equations.

    With ``paper_velocities=True`` the mkdv-sn family uses the published
    velocity 5(m-5) instead of the corrected -(1+m); the residual oracle
    rejects it, which is the point.
    """
    _validate(spec)
    fam, a = spec.family, spec.alpha
    a2 = a * a
    m = spec.m
    br, sg = float(spec.branch), float(spec.amp_sign)

    if fam is Family.KDV_CNOIDAL:
        return ResolvedParams(-2.0 * m * a2, 0.0, 4.0 * (2.0 * m - 1.0), 0.0, EquationKind.KDV)
    if fam is Family.KDV_SECH2:
        return ResolvedParams(-2.0 * a2, 0.0, 4.0, 0.0, EquationKind.KDV)
    if fam is Family.KDV_CN2_SNDN:
        return ResolvedParams(-m * a2, br * np.sqrt(m) * a2, 2.0 * m - 1.0, 0.0, EquationKind.KDV)
    if fam is Family.KDV_CN2_SNCN:
        A = -m * a2
        return ResolvedParams(A, br * A, (5.0 * m - 4.0) - 6.0 * spec.beta, spec.beta * a2, EquationKind.KDV)
    if fam is Family.KDV_COSECH:
        return ResolvedParams(a2, br * a2, 1.0, 0.0, EquationKind.KDV)
    if fam is Family.MKDV_SN_CN:
        A = sg * np.sqrt(m) / 2.0 * a
        return ResolvedParams(A, br * A, m / 2.0 - 1.0, 0.0, EquationKind.MKDV_DEFOCUSING)
    if fam is Family.MKDV_SN_DN:
        return ResolvedParams(
            sg * np.sqrt(m) / 2.0 * a, br * 0.5 * a, 0.5 - m, 0.0, EquationKind.MKDV_DEFOCUSING
        )
    if fam is Family.MKDV_SN:
        c = 5.0 * (m - 5.0) if paper_velocities else -(1.0 + m)
        return ResolvedParams(sg * np.sqrt(m) * a, 0.0, c, 0.0, EquationKind.MKDV_DEFOCUSING)
    if fam is Family.MKDV_ICN:
        return ResolvedParams(0.0, br * np.sqrt(m) * a, 2.0 * m - 1.0, 0.0, EquationKind.MKDV_DEFOCUSING)
    if fam is Family.MKDV_COSECH_COTH:
        A = sg * 0.5 * a
        return ResolvedParams(A, A, -0.5, 0.0, EquationKind.MKDV_DEFOCUSING)
    raise AssertionError(fam)


def _csch(z: np.ndarray) -> np.ndarray:
    return 1.0 / np.sinh(z)


def _check_pole(fam: Family, zeta: np.ndarray) -> None:
    if fam in SINGULAR_FAMILIES and np.any(np.abs(zeta) < 1e-8):
        raise ValueError(f"{fam.value} has a pole at zeta=0")


def eval_profile(spec: SolutionSpec, zeta, paper_velocities: bool = False):
    """Complex field value of the family's closed form at co-moving zeta.

    Returns a complex scalar or array in physical units (alpha**2 scale
    for KdV families, alpha for mKdV ones).
    """
    p = resolve(spec, paper_velocities)
    fam = spec.family
    zeta = np.asarray(zeta, dtype=float)
    _check_pole(fam, zeta)

    if fam in SINGULAR_FAMILIES:
        csch = _csch(zeta)
        coth = np.cosh(zeta) * csch
        if fam is Family.KDV_COSECH:
            out = p.A * csch * csch + p.B * csch * coth + 0j
        else:
            out = p.A * csch + p.B * coth + 0j
        return out if out.ndim else complex(out)

    m = 1.0 if fam is Family.KDV_SECH2 else spec.m
    sn, cn, dn = jacobi(zeta, m)
    if fam in (Family.KDV_CNOIDAL, Family.KDV_SECH2):
        out = p.A * cn * cn + 0j
    elif fam is Family.KDV_CN2_SNDN:
        out = p.A * cn * cn + 1j * p.B * sn * dn
    elif fam is Family.KDV_CN2_SNCN:
        out = p.A * cn * cn + 1j * p.B * sn * cn + p.offset
    elif fam is Family.MKDV_SN_CN:
        out = p.A * sn + 1j * p.B * cn
    elif fam is Family.MKDV_SN_DN:
        out = p.A * sn + 1j * p.B * dn
    elif fam is Family.MKDV_SN:
        out = p.A * sn + 0j
    elif fam is Family.MKDV_ICN:
        out = 1j * p.B * cn
    else:
        raise AssertionError(fam)
    return out if out.ndim else complex(out)


def eval_field(spec: SolutionSpec, x, t: float, paper_velocities: bool = False):
    """Evaluate the traveling wave at physical (x, t)."""
    p = resolve(spec, paper_velocities)
    zeta = spec.alpha * (np.asarray(x, dtype=float) - p.c * spec.alpha**2 * t)
    return eval_profile(spec, zeta, paper_velocities)


def intensity(spec: SolutionSpec, zeta):
    """|field|**2 at co-moving zeta."""
    u = np.asarray(eval_profile(spec, zeta))
    out = u.real**2 + u.imag**2
    return out if out.ndim else float(out)


def conjugate_spec(spec: SolutionSpec) -> SolutionSpec:
    """The complex-conjugate partner (branch flipped)."""
    if spec.family not in _USES_BRANCH:
        raise ValueError(f"family {spec.family.value} has no conjugate branch pair")
    return SolutionSpec(
        spec.family, spec.alpha, spec.m, spec.beta, -spec.branch, spec.amp_sign
    )


def _field_scale(spec: SolutionSpec) -> float:
    eq = resolve(spec).equation
    return spec.alpha**2 if eq is EquationKind.KDV else spec.alpha


def profile_zeta_period(spec: SolutionSpec) -> float:
    """Fundamental period in zeta of the family's profile.

    Raises for the soliton (m=1), sech2 and singular families, which are
    not periodic.
    """
    _validate(spec)
    fam = spec.family
    if fam in SINGULAR_FAMILIES or fam is Family.KDV_SECH2:
        raise ValueError(f"family {fam.value} is not periodic")
    kinds = {
        Family.KDV_CNOIDAL: ("cn2",),
        Family.KDV_CN2_SNDN: ("cn2", "sn*dn"),
        Family.KDV_CN2_SNCN: ("cn2", "sn*cn"),
        Family.MKDV_SN_CN: ("sn", "cn"),
        Family.MKDV_SN_DN: ("sn", "dn"),
        Family.MKDV_SN: ("sn",),
        Family.MKDV_ICN: ("cn",),
    }[fam]
    # component periods are 2K or 4K, so the combined period is their max
    return max(period(k, spec.m) for k in kinds)


def periodic_profile(
    spec: SolutionSpec, n: int = 256, n_periods: int = 1, paper_velocities: bool = False
) -> SampledProfile:
    """Sample one (or more) fundamental periods, nondimensionalized, centered on 0."""
    P = profile_zeta_period(spec) * n_periods
    count = n * n_periods
    h = P / count
    zeta = -P / 2.0 + h * np.arange(count)
    w = eval_profile(spec, zeta, paper_velocities) / _field_scale(spec)
    return SampledProfile(w, h, float(zeta[0]), PERIODIC, scale_alpha=spec.alpha)


def truncated_profile(
    spec: SolutionSpec, half_width: float = 20.0, h: float = 0.01, paper_velocities: bool = False
) -> SampledProfile:
    """Sample a symmetric window [-half_width, half_width] in zeta (soliton cases)."""
    count = int(round(2.0 * half_width / h))
    zeta = -half_width + h * np.arange(count + 1)
    w = eval_profile(spec, zeta, paper_velocities) / _field_scale(spec)
    return SampledProfile(w, h, float(zeta[0]), TRUNCATED, scale_alpha=spec.alpha)


def singular_profile(
    spec: SolutionSpec,
    pole_epsilon: float = DEFAULT_POLE_EPSILON,
    zeta_max: float = 20.0,
    h: float = 0.002,
    edge_rows: int = 6,
) -> SampledProfile:
    """One-sided grid [pole_epsilon, zeta_max] for the singular families.

    The first and last ``edge_rows`` samples are masked out of norms: they
    are where one-sided difference stencils apply, and next to the pole
    those stencils see the blow-up region.
    """
    if spec.family not in SINGULAR_FAMILIES:
        raise ValueError(f"family {spec.family.value} is not singular")
    if pole_epsilon <= 0:
        raise ValueError("pole_epsilon must be positive")
    count = int(round((zeta_max - pole_epsilon) / h))
    zeta = pole_epsilon + h * np.arange(count + 1)
    w = eval_profile(spec, zeta) / _field_scale(spec)
    mask = np.ones(zeta.size, dtype=bool)
    mask[:edge_rows] = False
    mask[-edge_rows:] = False
    return SampledProfile(w, h, float(zeta[0]), TRUNCATED, scale_alpha=spec.alpha, mask=mask)


def default_profile(spec: SolutionSpec, paper_velocities: bool = False) -> SampledProfile:
    """The grid the verification tools use if none is specified.

    Periodic families: one fundamental period, 256 samples (spectral
    differentiation).  Solitons (m=1): |zeta| <= 20 with h=0.01 (8th-order
    differences).  Singular families: one-sided pole-masked grid.
    """
    fam = spec.family
    if fam in SINGULAR_FAMILIES:
        return singular_profile(spec)
    if fam is Family.KDV_SECH2 or spec.m == 1.0:
        return truncated_profile(spec, paper_velocities=paper_velocities)
    return periodic_profile(spec, paper_velocities=paper_velocities)


def superpose(
    spec_a: SolutionSpec,
    spec_b: SolutionSpec,
    sign: int,
    zeta: np.ndarray,
    topology: str = TRUNCATED,
) -> SampledProfile:
    """Pointwise sum (sign=+1) or difference (sign=-1) of two family profiles.

    Both specs must share alpha, modulus parameter and field scaling; the
    result is nondimensionalized like any other profile.  The caller
    supplies the uniform zeta grid (and topology, which for periodic grids
    must hold a whole number of whatever period the combination has).
    """
    if sign not in (-1, +1):
        raise ValueError("sign must be +1 or -1")
    if spec_a.alpha != spec_b.alpha or spec_a.m != spec_b.m:
        raise ValueError("superpose requires matching alpha and m")
    eq_a = resolve(spec_a).equation
    eq_b = resolve(spec_b).equation
    if (eq_a is EquationKind.KDV) != (eq_b is EquationKind.KDV):
        raise ValueError("superpose requires fields with the same scaling (both KdV or both mKdV)")
    zeta = np.asarray(zeta, dtype=float)
    if zeta.ndim != 1 or zeta.size < 2:
        raise ValueError("zeta grid must be 1-D")
    h = zeta[1] - zeta[0]
    if not np.allclose(np.diff(zeta), h, rtol=1e-9, atol=0):
        raise ValueError("zeta grid must be uniform")
    wa = eval_profile(spec_a, zeta) / _field_scale(spec_a)
    wb = eval_profile(spec_b, zeta) / _field_scale(spec_b)
    return SampledProfile(wa + sign * wb, float(h), float(zeta[0]), topology, scale_alpha=spec_a.alpha)
