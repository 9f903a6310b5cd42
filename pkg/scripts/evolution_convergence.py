#!/usr/bin/env python3
"""Time-step convergence study for the integrating-factor RK4 stepper.

Transports the fundamental soliton for t=0.5 at a ladder of step sizes
and prints the L2 error against the analytically translated profile;
successive ratios should sit near 16 (4th order) until the spatial floor.
"""

import numpy as np

from kdvlab.catalog import EquationKind, Family, SolutionSpec, eval_profile
from kdvlab.evolve import EvolutionConfig, evolve
from kdvlab.profiles import PERIODIC, SampledProfile


def run():
    spec = SolutionSpec(Family.KDV_SECH2)
    length, n = 20.0 * np.pi, 512
    h = length / n
    z = -length / 2 + h * np.arange(n)
    u0 = SampledProfile(np.asarray(eval_profile(spec, z)), h, float(z[0]), PERIODIC)

    print(f"{'dt':>10s} {'L2 error':>12s} {'ratio':>7s}")
    previous = None
    for dt in (4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4):
        result = evolve(u0, EvolutionConfig(EquationKind.KDV, t_end=0.5, dt=dt), analytic_ref=spec)
        ratio = f"{previous / result.error_l2:7.1f}" if previous else "      -"
        print(f"{dt:10.1e} {result.error_l2:12.3e} {ratio}")
        previous = result.error_l2


if __name__ == "__main__":
    run()
