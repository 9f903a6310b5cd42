"""Jacobi elliptic functions sn, cn, dn and the complete elliptic integral K.

Convention
----------
Everything here is parameterized by the *modulus parameter* ``m = k**2``,
not the modulus ``k``.  So ``jacobi(z, 0.5)`` means sn(z | m=0.5), matching
``scipy.special.ellipj`` and ``mpmath.ellipfun(..., m=...)`` but *not*
libraries that take ``k``.  Valid range is ``0 <= m <= 1``.

The evaluation uses the arithmetic-geometric mean with the descending
Landen transformation (DLMF 22.20(ii)): spectrally accurate, no series
truncation to tune.  For ``m`` within 1e-10 of 1 the hyperbolic limits are
used directly, since the AGM backward recursion loses accuracy there.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = ["EllipticTriple", "complete_K", "jacobi", "period", "PERIOD_FACTORS"]

_M_ONE_CUTOFF = 1.0 - 1e-10
_MAX_AGM_ITER = 32


class EllipticTriple(NamedTuple):
    """Values of (sn, cn, dn) at a common real argument.

    Satisfies sn**2 + cn**2 = 1 and dn**2 + m*sn**2 = 1 to machine accuracy.
    Fields are scalars or arrays, matching the argument shape.
    """

    sn: np.ndarray
    cn: np.ndarray
    dn: np.ndarray


def _check_m(m: float, allow_one: bool) -> float:
    m = float(m)
    if not np.isfinite(m) or m < 0.0 or m > 1.0:
        raise ValueError(f"modulus parameter m={m} outside [0, 1]")
    if not allow_one and m == 1.0:
        raise ValueError("K diverges at m=1")
    return m


def complete_K(m: float) -> float:
    """Quarter period K(m) = pi / (2 AGM(1, sqrt(1-m))), for 0 <= m < 1.

    Relative accuracy is a few ulp; K(0) is exactly pi/2.  Raises on m=1
    (logarithmic divergence) and on m outside [0, 1).
    """
    m = _check_m(m, allow_one=False)
    a, b = 1.0, float(np.sqrt(1.0 - m))
    for _ in range(_MAX_AGM_ITER):
        if abs(a - b) <= 2e-16 * a:
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    return float(np.pi / (a + b))


def jacobi(zeta, m: float) -> EllipticTriple:
    """Evaluate (sn, cn, dn)(zeta, m) for real zeta (scalar or array).

    The argument is reduced modulo the 4K period before the Landen
    recursion so accuracy does not degrade for |zeta| >> K.  dn is
    recovered from the Pythagorean identity in the cancellation-free form
    sqrt((1-m) + m*cn**2), which keeps dn**2 + m*sn**2 - 1 at roundoff
    for every input.
    """
    m = _check_m(m, allow_one=True)
    zeta = np.asarray(zeta, dtype=float)
    if not np.all(np.isfinite(zeta)):
        raise ValueError("jacobi argument must be finite")

    if m > _M_ONE_CUTOFF:
        sn = np.tanh(zeta)
        cn = 1.0 / np.cosh(zeta)
        # 1 - m*sn**2 cancels catastrophically for |zeta| >~ 18; the
        # equivalent (1-m) + m*cn**2 keeps full accuracy in the tails
        dn = np.sqrt((1.0 - m) + m * cn * cn)
        return EllipticTriple(sn, cn, dn)

    K = complete_K(m)
    zr = zeta - 4.0 * K * np.round(zeta / (4.0 * K))

    # descending AGM scale: a_n, c_n with c_n -> 0 quadratically
    a_seq = [1.0]
    c_seq = [float(np.sqrt(m))]
    b = float(np.sqrt(1.0 - m))
    n = 0
    while abs(c_seq[-1]) > 1e-16 and n < _MAX_AGM_ITER:
        a_prev = a_seq[-1]
        a_seq.append(0.5 * (a_prev + b))
        c_seq.append(0.5 * (a_prev - b))
        b = float(np.sqrt(a_prev * b))
        n += 1

    phi = (2.0**n) * a_seq[n] * zr
    for j in range(n, 0, -1):
        ratio = np.clip(c_seq[j] / a_seq[j] * np.sin(phi), -1.0, 1.0)
        phi = 0.5 * (phi + np.arcsin(ratio))

    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt((1.0 - m) + m * cn * cn)
    return EllipticTriple(sn, cn, dn)


# Fundamental real periods in units of K(m).  sn and cn are 2K-antiperiodic
# (period 4K) while dn is 2K-periodic, so the products follow:
# sn*cn picks up (-1)*(-1) over 2K and is 2K-periodic, sn*dn picks up
# (-1)*(+1) and needs the full 4K.
PERIOD_FACTORS = {
    "sn": 4.0,
    "cn": 4.0,
    "dn": 2.0,
    "sn*cn": 2.0,
    "sn*dn": 4.0,
    "cn2": 2.0,
}


def period(kind: str, m: float) -> float:
    """Fundamental real period of one of the six profile building blocks.

    ``kind`` is one of 'sn', 'cn', 'dn', 'sn*cn', 'sn*dn', 'cn2'.  At m=0
    dn is constant; its period is returned as 2K(0) = pi by convention.
    Raises for m=1 (non-periodic hyperbolic limit).
    """
    if kind not in PERIOD_FACTORS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(PERIOD_FACTORS)}")
    m = _check_m(m, allow_one=True)
    if m == 1.0:
        raise ValueError("non-periodic at m=1")
    return PERIOD_FACTORS[kind] * complete_K(m)
