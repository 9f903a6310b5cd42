"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion.  Everything here is oracle- or property-based and
runs at desk scale (the evolution criterion dominates, ~30 s).
"""

import json
import time

import numpy as np
import pytest

from kdvlab.catalog import (
    EquationKind,
    Family,
    SolutionSpec,
    conjugate_spec,
    default_profile,
    eval_profile,
    intensity,
    periodic_profile,
    resolve,
    singular_profile,
    superpose,
    truncated_profile,
)
from kdvlab.cli import main as cli_main
from kdvlab.elliptic import complete_K, jacobi
from kdvlab.evolve import EvolutionConfig, evolve
from kdvlab.lax import (
    SchrodingerProblem,
    bound_states,
    complex_scarf,
    isospectral_check,
    scarf_superpotential,
    sech2_well,
    susy_pair,
)
from kdvlab.profiles import PERIODIC, TRUNCATED, SampledProfile
from kdvlab.residual import traveling_residual, velocity_scan
from kdvlab.transforms import PT_EVEN, PT_ODD, classify, miura

M_GRID = (0.05, 0.25, 0.5, 0.75, 0.95)


def _criterion(num, ok, detail=""):
    print(f"[acceptance] criterion {num}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_01_elliptic_identities():
    rng = np.random.default_rng(2024)
    worst1 = worst2 = 0.0
    for z, m in zip(rng.uniform(-40, 40, 10_000), rng.uniform(0, 1, 10_000)):
        sn, cn, dn = jacobi(z, m)
        worst1 = max(worst1, abs(sn * sn + cn * cn - 1.0))
        worst2 = max(worst2, abs(dn * dn + m * sn * sn - 1.0))
    k0 = abs(complete_K(0.0) - np.pi / 2)
    k25 = abs(complete_K(0.25) - 1.68575)
    ok = worst1 < 1e-12 and worst2 < 1e-12 and k0 < 1e-14 and k25 < 1e-5
    _criterion(
        1, ok, f"(identity defects {worst1:.2e}/{worst2:.2e}, K(0) err {k0:.1e}, K(0.25) err {k25:.1e})"
    )


def _verification_cases():
    for m in M_GRID + (1.0,):
        yield SolutionSpec(Family.KDV_CNOIDAL, m=m)
        yield SolutionSpec(Family.KDV_CN2_SNDN, m=m)
        for beta in (0.0, 0.3, -0.3):
            yield SolutionSpec(Family.KDV_CN2_SNCN, m=m, beta=beta)
        yield SolutionSpec(Family.MKDV_SN_CN, m=m)
        yield SolutionSpec(Family.MKDV_SN_DN, m=m)
        yield SolutionSpec(Family.MKDV_SN, m=m)
        yield SolutionSpec(Family.MKDV_ICN, m=m)
    yield SolutionSpec(Family.KDV_SECH2)
    yield SolutionSpec(Family.KDV_COSECH)
    yield SolutionSpec(Family.MKDV_COSECH_COTH)


def test_criterion_02_family_verification():
    worst_spectral = worst_fd = 0.0
    count = 0
    for spec in _verification_cases():
        params = resolve(spec)
        profile = default_profile(spec)
        rel = traveling_residual(profile, params.c, params.equation).relative
        count += 1
        if profile.is_periodic:
            worst_spectral = max(worst_spectral, rel)
        else:
            worst_fd = max(worst_fd, rel)
    ok = worst_spectral < 1e-8 and worst_fd < 1e-6
    _criterion(
        2, ok, f"({count} cases; worst spectral {worst_spectral:.2e}, worst FD {worst_fd:.2e})"
    )


def _basis_parts(spec):
    """Profile decomposition w = A f + (i?) B g + offset on the default grid,
    with A, B, offset in nondimensional units."""
    fam = spec.family
    profile = default_profile(spec)
    z = profile.grid
    if fam in (Family.KDV_COSECH, Family.MKDV_COSECH_COTH):
        csch = 1 / np.sinh(z)
        coth = np.cosh(z) * csch
        f, g = (csch**2, csch * coth) if fam is Family.KDV_COSECH else (csch, coth)
        return profile, f, g, 1.0
    sn, cn, dn = jacobi(z, spec.m if fam is not Family.KDV_SECH2 else 1.0)
    f = {
        Family.KDV_CNOIDAL: cn * cn,
        Family.KDV_SECH2: cn * cn,
        Family.KDV_CN2_SNDN: cn * cn,
        Family.KDV_CN2_SNCN: cn * cn,
        Family.MKDV_SN_CN: sn,
        Family.MKDV_SN_DN: sn,
        Family.MKDV_SN: sn,
        Family.MKDV_ICN: np.zeros_like(sn),
    }[fam]
    g = {
        Family.KDV_CNOIDAL: np.zeros_like(sn),
        Family.KDV_SECH2: np.zeros_like(sn),
        Family.KDV_CN2_SNDN: sn * dn,
        Family.KDV_CN2_SNCN: sn * cn,
        Family.MKDV_SN_CN: cn,
        Family.MKDV_SN_DN: dn,
        Family.MKDV_SN: np.zeros_like(sn),
        Family.MKDV_ICN: cn,
    }[fam]
    return profile, f, g, 1j


def test_criterion_03_negative_controls():
    # (a) the purely imaginary difference profile is no KdV solution at any velocity
    spec = SolutionSpec(Family.KDV_CN2_SNDN, m=0.5)
    prof = periodic_profile(spec)
    diff = superpose(spec, conjugate_spec(spec), -1, prof.grid, topology=PERIODIC)
    min_rel = min(
        traveling_residual(diff, float(c), EquationKind.KDV).relative
        for c in np.linspace(-10.0, 10.0, 81)
    )
    _, scan_report = velocity_scan(diff, EquationKind.KDV, -10.0, 10.0, 81)
    ok_a = min_rel > 0.1 and scan_report.relative > 0.1

    # (b) published sum-of-sn velocity fails, corrected one passes
    ok_b = True
    for m in M_GRID:
        sn_spec = SolutionSpec(Family.MKDV_SN, m=m)
        prof_sn = periodic_profile(sn_spec)
        bad = traveling_residual(prof_sn, 5.0 * (m - 5.0), EquationKind.MKDV_DEFOCUSING).relative
        good = traveling_residual(prof_sn, -(1.0 + m), EquationKind.MKDV_DEFOCUSING).relative
        ok_b = ok_b and bad > 0.1 and good < 1e-8

    # (c) 1% on any nonzero resolved constant lifts the relative residual
    ok_c = True
    worst_c = np.inf
    for spec in (
        SolutionSpec(Family.KDV_CNOIDAL, m=0.25),
        SolutionSpec(Family.KDV_SECH2),
        SolutionSpec(Family.KDV_CN2_SNDN, m=0.25),
        SolutionSpec(Family.KDV_CN2_SNDN, m=0.75),
        # at m=0.75 this family's velocity is only -0.25, so a 1% nudge is
        # absolutely tiny; m=0.25 (c=-2.75) probes the same constraint
        SolutionSpec(Family.KDV_CN2_SNCN, m=0.25),
        SolutionSpec(Family.KDV_COSECH),
        SolutionSpec(Family.MKDV_SN_CN, m=0.25),
        SolutionSpec(Family.MKDV_SN_DN, m=0.75),
        SolutionSpec(Family.MKDV_SN, m=0.5),
        SolutionSpec(Family.MKDV_ICN, m=0.75),
        SolutionSpec(Family.MKDV_COSECH_COTH),
    ):
        params = resolve(spec)
        scale = spec.alpha**2 if params.equation is EquationKind.KDV else spec.alpha
        profile, f, g, unit = _basis_parts(spec)
        # near the pole the derivative terms dwarf everything; judge the
        # singular families where all terms are commensurate
        extra = np.abs(profile.grid) >= 1.5 if spec.family in (
            Family.KDV_COSECH, Family.MKDV_COSECH_COTH) else None
        A, B = params.A / scale, params.B / scale
        offset = params.offset / scale
        for name, pert in (
            ("A", (A * 1.01) * f + unit * B * g + offset),
            ("B", A * f + unit * (B * 1.01) * g + offset),
            ("c", None),
        ):
            const = {"A": A, "B": B, "c": params.c}[name]
            if abs(const) < 1e-12:
                continue  # a 1% multiplicative nudge of zero is a no-op
            if pert is None:
                rel = traveling_residual(profile, params.c * 1.01, params.equation, extra).relative
            else:
                rel = traveling_residual(
                    profile.with_samples(pert), params.c, params.equation, extra
                ).relative
            worst_c = min(worst_c, rel)
            ok_c = ok_c and rel > 1e-3

    _criterion(3, ok_a and ok_b and ok_c, f"(scan floor {min_rel:.2f}, weakest perturbation {worst_c:.2e})")


def test_criterion_04_miura_soundness():
    worst = 0.0
    for fam in (Family.MKDV_SN_CN, Family.MKDV_SN_DN, Family.MKDV_SN, Family.MKDV_ICN):
        for m in (0.25, 0.75):
            spec = SolutionSpec(fam, m=m)
            # n=128: the doubly-chained spectral derivative (v' inside the
            # map, u''' in the residual) has a k_max^4-scaled roundoff
            # floor; the elliptic spectra are fully resolved well below this
            v = periodic_profile(spec, n=128)
            c = resolve(spec).c
            for sign in (+1, -1):
                rel = traveling_residual(miura(v, sign), c, EquationKind.KDV).relative
                worst = max(worst, rel)
    sing = SolutionSpec(Family.MKDV_COSECH_COTH)
    v = singular_profile(sing, pole_epsilon=0.5, h=0.01)
    extra = np.abs(v.grid) >= 0.75
    for sign in (+1, -1):
        rel = traveling_residual(miura(v, sign), -0.5, EquationKind.KDV, extra).relative
        worst = max(worst, rel)

    # the m=1 kink maps exactly onto the offset cn^2 + i sn cn family
    spec = SolutionSpec(Family.MKDV_SN_CN, m=1.0)
    vk = truncated_profile(spec)
    u = miura(vk, -1)
    target = eval_profile(SolutionSpec(Family.KDV_CN2_SNCN, m=1.0, beta=0.25, branch=-1), vk.grid)
    pointwise = float(np.max(np.abs(u.samples - target)))
    ok = worst < 1e-8 and pointwise < 1e-10
    _criterion(4, ok, f"(worst residual {worst:.2e}, kink identity defect {pointwise:.2e})")


def test_criterion_05_symmetry():
    ok = True
    for fam in (Family.KDV_CN2_SNDN, Family.KDV_CN2_SNCN):
        for m in (0.25, 0.75, 1.0):
            tag = classify(default_profile(SolutionSpec(fam, m=m)), tol=1e-10).tag
            ok = ok and tag == PT_EVEN
    for fam in (Family.MKDV_SN_CN, Family.MKDV_SN_DN, Family.MKDV_ICN):
        for m in (0.25, 0.75, 1.0):
            tag = classify(default_profile(SolutionSpec(fam, m=m)), tol=1e-10).tag
            ok = ok and tag == PT_ODD

    worst = 0.0
    zeta = np.linspace(-8.0, 8.0, 401)
    for spec in (
        SolutionSpec(Family.KDV_CN2_SNDN, m=0.4),
        SolutionSpec(Family.KDV_CN2_SNCN, m=0.4, beta=0.2),
        SolutionSpec(Family.MKDV_SN_DN, m=0.4),
    ):
        defect = np.max(
            np.abs(np.asarray(eval_profile(conjugate_spec(spec), zeta)) - np.conj(eval_profile(spec, zeta)))
        )
        worst = max(worst, float(defect))
    ok = ok and worst < 1e-14
    _criterion(5, ok, f"(conjugate-pair defect {worst:.2e})")


def test_criterion_06_intensities():
    zeta = np.linspace(-9.0, 9.0, 1201)
    dev1 = np.max(np.abs(intensity(SolutionSpec(Family.MKDV_SN_CN, m=0.64), zeta) - 0.64 / 4))
    dev2 = np.max(np.abs(intensity(SolutionSpec(Family.MKDV_SN_DN, m=0.3, alpha=2.0), zeta) - 1.0))
    peak_super = np.max(intensity(SolutionSpec(Family.KDV_CN2_SNDN, m=1.0), zeta))
    peak_fund = np.max(intensity(SolutionSpec(Family.KDV_SECH2), zeta))
    ok = dev1 < 1e-12 and dev2 < 1e-12 and peak_super == 1.0 and peak_fund / peak_super == 4.0
    _criterion(
        6, ok, f"(constancy defects {dev1:.1e}/{dev2:.1e}, peak ratio {peak_fund / peak_super})"
    )


def _soliton_cell(spec, length, n):
    h = length / n
    z = -length / 2 + h * np.arange(n)
    scale = spec.alpha**2 if resolve(spec).equation is EquationKind.KDV else spec.alpha
    w = np.asarray(eval_profile(spec, z)) / scale
    return SampledProfile(w, h, float(z[0]), PERIODIC, scale_alpha=spec.alpha)


def test_criterion_07_evolution():
    t0 = time.monotonic()
    length = 40.0 * np.pi
    ok = True
    details = []
    for spec in (SolutionSpec(Family.KDV_SECH2), SolutionSpec(Family.KDV_CN2_SNDN, m=1.0)):
        u0 = _soliton_cell(spec, length, 1024)
        cfg = EvolutionConfig(EquationKind.KDV, t_end=1.0, dt=1e-4)
        result = evolve(u0, cfg, analytic_ref=spec)
        i1, i2, i3 = result.invariants_initial
        d1 = result.drift_I1 / (1 + abs(i1))
        d2 = result.drift_I2 / (1 + abs(i2))
        d3 = result.drift_I3 / (1 + abs(i3))
        ok = ok and result.error_l2 < 1e-6 and d1 < 1e-8 and d2 < 1e-8 and d3 < 1e-6
        details.append(f"{spec.family.value}: err {result.error_l2:.1e}, drifts {d1:.1e}/{d2:.1e}/{d3:.1e}")

    # fourth-order convergence under dt halving (ratio within a factor 2 of 16)
    spec = SolutionSpec(Family.KDV_SECH2)
    u0 = _soliton_cell(spec, 20.0 * np.pi, 512)
    errors = []
    for dt in (1e-3, 5e-4):
        r = evolve(u0, EvolutionConfig(EquationKind.KDV, t_end=0.5, dt=dt), analytic_ref=spec)
        errors.append(r.error_l2)
    ratio = errors[0] / errors[1]
    elapsed = time.monotonic() - t0
    ok = ok and 8.0 <= ratio <= 32.0 and elapsed < 120.0
    _criterion(7, ok, f"({'; '.join(details)}; dt ratio {ratio:.1f}x, {elapsed:.0f}s)")


def test_criterion_08_spectra():
    checks = []

    r = bound_states(SchrodingerProblem.from_callable(sech2_well(2.0), 20.0, 2000))
    checks.append(len(r.bound_states) == 1 and abs(r.bound_states[0].real + 1.0) < 2e-3
                  and abs(r.bound_states[0].imag) < 1e-9)

    r = bound_states(SchrodingerProblem.from_callable(sech2_well(6.0), 20.0, 2000))
    checks.append(len(r.bound_states) == 2
                  and abs(r.bound_states[0].real + 4.0) < 5e-3
                  and abs(r.bound_states[1].real + 1.0) < 5e-3)

    max_branch_gap = 0.0
    for alpha in (0.5, 1.0, 2.0):
        levels = {}
        for branch in (+1, -1):
            problem = SchrodingerProblem.from_callable(complex_scarf(alpha, branch), 20.0 / alpha, 2000)
            rep = bound_states(problem)
            checks.append(len(rep.bound_states) == 1)
            e = rep.bound_states[0]
            checks.append(abs(e.real + alpha**2 / 4) < 2e-3 * alpha**2 and abs(e.imag) < 1e-6)
            levels[branch] = e
        max_branch_gap = max(max_branch_gap, abs(levels[+1] - levels[-1]))
    checks.append(max_branch_gap < 1e-8)

    # SUSY: W = (tanh + i sech)/2 has a constant plus-partner and the pair
    # differs by exactly the ground state
    z = np.linspace(-20.0, 20.0, 4001)
    W = SampledProfile(scarf_superpotential(1.0)(z), z[1] - z[0], -20.0, TRUNCATED)
    v_minus, v_plus = susy_pair(W)
    checks.append(float(np.max(np.abs(v_plus.samples - 0.25))) < 1e-10)

    def minus_fn(zz):
        s = 1 / np.cosh(zz)
        return 0.25 - s * s + 1j * s * np.tanh(zz)

    def plus_fn(zz):
        return np.full_like(zz, 0.25, dtype=complex)

    pair_report = isospectral_check(
        SchrodingerProblem.from_callable(minus_fn, 20.0, 2000),
        SchrodingerProblem.from_callable(plus_fn, 20.0, 2000),
        check_convergence=False,
        validate_shooting=False,
    )
    checks.append(len(pair_report.unmatched_a) == 1 and not pair_report.unmatched_b)
    checks.append(abs(pair_report.unmatched_a[0].real + 0.25) < 2e-3)

    ok = all(checks)
    _criterion(8, ok, f"({sum(checks)}/{len(checks)} spectral checks, branch gap {max_branch_gap:.1e})")


def test_criterion_09_figure_data(tmp_path):
    ok = True
    for fig_id in (1, 2, 3, 4):
        out = tmp_path / f"figure{fig_id}.csv"
        assert cli_main(["figure", "--id", str(fig_id), "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        header = lines[0].split(",")
        data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
        for m in (1.0, 0.25):
            block = data[data[:, 0] == m]
            re, im = block[:, 2], block[:, 3]
            if fig_id in (1, 2):
                ok = ok and np.max(np.abs(re - re[::-1])) < 1e-12
                ok = ok and np.max(np.abs(im + im[::-1])) < 1e-12
            else:
                ok = ok and np.max(np.abs(re + re[::-1])) < 1e-12
                ok = ok and np.max(np.abs(im - im[::-1])) < 1e-12
        if fig_id in (1, 2):
            block = data[data[:, 0] == 1.0]
            sup = block[:, header.index("intensity_superposed")]
            fund = block[:, header.index("intensity_fundamental")]
            ok = ok and bool(np.all(fund >= sup))
    _criterion(9, ok, "(parity and inset ordering for figures 1-4)")
