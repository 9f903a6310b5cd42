import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdvlab.catalog import (
    EquationKind,
    Family,
    SolutionSpec,
    conjugate_spec,
    default_profile,
    periodic_profile,
    resolve,
    superpose,
    truncated_profile,
)
from kdvlab.profiles import PERIODIC, TRUNCATED, SampledProfile
from kdvlab.residual import differentiate, traveling_residual, velocity_scan

M_GRID = (0.05, 0.25, 0.5, 0.75, 0.95)


def _sine_profile(n=128):
    z = 2 * np.pi * np.arange(n) / n
    return SampledProfile(np.sin(z) + 0j, 2 * np.pi / n, 0.0, PERIODIC), z


class TestDifferentiate:
    def test_spectral_first_derivative_exact(self):
        p, z = _sine_profile()
        d = differentiate(p, 1)
        assert np.max(np.abs(d.samples - np.cos(z))) < 1e-12

    def test_constant_all_orders(self):
        p = SampledProfile(np.full(64, 2.5 + 1j), 0.1, 0.0, PERIODIC)
        for order in (1, 2, 3):
            assert np.max(np.abs(differentiate(p, order).samples)) < 1e-12

    def test_truncated_third_derivative_vs_analytic(self):
        # (sech^2)''' = -8 sech^2 tanh^3 + 16 sech^4 tanh
        h = 0.01
        z = np.arange(-20.0, 20.0 + h / 2, h)
        s, t = 1 / np.cosh(z), np.tanh(z)
        p = SampledProfile(s * s + 0j, h, -20.0, TRUNCATED)
        d3 = differentiate(p, 3).samples.real
        expected = -8 * s**2 * t**3 + 16 * s**4 * t
        assert np.max(np.abs(d3 - expected)) < 1e-8

    def test_order_validation(self):
        p, _ = _sine_profile()
        with pytest.raises(ValueError):
            differentiate(p, 4)

    def test_too_few_samples_for_stencil(self):
        # 16 samples satisfy the profile invariant but spacing test with
        # truncated topology still needs the 11-point stencil
        p = SampledProfile(np.zeros(16, dtype=complex), 0.1, 0.0, TRUNCATED)
        assert np.max(np.abs(differentiate(p, 3).samples)) == 0.0


class TestTravelingResidual:
    def test_cn2_sndn_periodic(self):
        spec = SolutionSpec(Family.KDV_CN2_SNDN, m=0.7)
        prof = periodic_profile(spec)
        report = traveling_residual(prof, resolve(spec).c, EquationKind.KDV)
        assert resolve(spec).c == pytest.approx(0.4)
        assert report.relative < 1e-10

    def test_sn_cn_periodic(self):
        # n=128: the k_max^3 roundoff floor of the spectral third
        # derivative sits below 1e-10 for this amplitude; fully resolved
        # either way (elliptic Fourier coefficients decay like 0.03^n)
        spec = SolutionSpec(Family.MKDV_SN_CN, m=0.3)
        prof = periodic_profile(spec, n=128)
        report = traveling_residual(prof, -0.85, EquationKind.MKDV_DEFOCUSING)
        assert report.relative < 1e-10

    def test_zero_profile(self):
        p = SampledProfile(np.zeros(64, dtype=complex), 0.1, 0.0, PERIODIC)
        report = traveling_residual(p, 3.7, EquationKind.KDV)
        assert report.sup_norm == report.l2_norm == report.relative == 0.0

    def test_published_sum_velocity_fails(self):
        spec = SolutionSpec(Family.MKDV_SN, m=0.5)
        prof = periodic_profile(spec)
        bad = traveling_residual(prof, 5 * (0.5 - 5), EquationKind.MKDV_DEFOCUSING)
        good = traveling_residual(prof, -1.5, EquationKind.MKDV_DEFOCUSING)
        assert bad.relative > 0.1
        assert good.relative < 1e-8

    @pytest.mark.parametrize("m", M_GRID)
    @pytest.mark.parametrize("fam", [f for f in Family if f not in (Family.KDV_COSECH, Family.MKDV_COSECH_COTH, Family.KDV_SECH2)])
    def test_oracle_completeness_periodic(self, fam, m):
        spec = SolutionSpec(fam, m=m)
        params = resolve(spec)
        report = traveling_residual(default_profile(spec), params.c, params.equation)
        assert report.relative < 1e-8

    @pytest.mark.parametrize(
        "fam", [Family.KDV_SECH2, Family.KDV_CN2_SNDN, Family.KDV_CN2_SNCN, Family.MKDV_SN_CN, Family.MKDV_SN_DN, Family.MKDV_SN, Family.MKDV_ICN]
    )
    def test_oracle_completeness_solitons(self, fam):
        spec = SolutionSpec(fam) if fam is Family.KDV_SECH2 else SolutionSpec(fam, m=1.0)
        params = resolve(spec)
        report = traveling_residual(default_profile(spec), params.c, params.equation)
        assert report.relative < 1e-6

    @pytest.mark.parametrize("fam", [Family.KDV_COSECH, Family.MKDV_COSECH_COTH])
    @pytest.mark.parametrize("branch_kw", [{"branch": 1}, {}])
    def test_oracle_completeness_singular(self, fam, branch_kw):
        kwargs = branch_kw if fam is Family.KDV_COSECH else {}
        spec = SolutionSpec(fam, **kwargs)
        params = resolve(spec)
        report = traveling_residual(default_profile(spec), params.c, params.equation)
        assert report.relative < 1e-6
        assert report.mask_kept < report.mask_total

    def test_duality_defocusing_to_focusing(self):
        # residual(i v, c, focusing) has the same norms as residual(v, c, defocusing)
        spec = SolutionSpec(Family.MKDV_SN, m=0.4)
        prof = periodic_profile(spec)
        r_def = traveling_residual(prof, -1.4, EquationKind.MKDV_DEFOCUSING)
        r_foc = traveling_residual(prof.with_samples(1j * prof.samples), -1.4, EquationKind.MKDV_FOCUSING)
        assert r_foc.sup_norm == pytest.approx(r_def.sup_norm, abs=1e-12)
        assert r_foc.l2_norm == pytest.approx(r_def.l2_norm, abs=1e-12)

    def test_constraint_sharpness_periodic(self):
        for fam, m in ((Family.KDV_CN2_SNDN, 0.25), (Family.MKDV_SN_DN, 0.75)):
            spec = SolutionSpec(fam, m=m)
            params = resolve(spec)
            prof = default_profile(spec)
            report = traveling_residual(prof, params.c * 1.01, params.equation)
            assert report.relative > 1e-3

    def test_report_serialization(self):
        spec = SolutionSpec(Family.KDV_CNOIDAL, m=0.5)
        report = traveling_residual(default_profile(spec), 0.0, EquationKind.KDV)
        d = report.to_dict()
        assert set(d) == {"sup_norm", "l2_norm", "relative", "c_used", "mask"}
        assert d["mask"]["kept"] == d["mask"]["total"] == 256

    def test_spectral_vs_fd_agreement_on_non_solution(self):
        # a smooth profile that is not a traveling wave scores O(1) either way
        L = 8 * np.pi
        n = 1024
        z = -L / 2 + L * np.arange(n) / n
        w = np.exp(-(z**2)) * (1 + 0.3j) + 0j
        spectral = SampledProfile(w, L / n, float(z[0]), PERIODIC)
        fd = SampledProfile(w, L / n, float(z[0]), TRUNCATED)
        r1 = traveling_residual(spectral, 1.0, EquationKind.KDV)
        r2 = traveling_residual(fd, 1.0, EquationKind.KDV)
        assert r2.sup_norm / 10 < r1.sup_norm < 10 * r2.sup_norm
        assert r1.relative > 0.1 and r2.relative > 0.1


class TestVelocityScan:
    def test_recovers_cnoidal_velocity(self):
        spec = SolutionSpec(Family.KDV_CNOIDAL, m=0.5)  # c = 4(2m-1) = 0
        prof = periodic_profile(spec)
        c_best, report = velocity_scan(prof, EquationKind.KDV, -10, 10, 21)
        assert abs(c_best - 0.0) < 1e-6
        assert report.relative < 1e-8

    def test_rejects_pure_imaginary_difference(self):
        spec = SolutionSpec(Family.KDV_CN2_SNDN, m=0.5)
        prof = periodic_profile(spec)
        z = prof.grid
        diff = superpose(spec, conjugate_spec(spec), -1, z, topology=PERIODIC)
        c_best, report = velocity_scan(diff, EquationKind.KDV, -10, 10, 41)
        assert report.relative > 0.1
        for c in np.linspace(-10, 10, 41):
            assert traveling_residual(diff, float(c), EquationKind.KDV).relative > 0.1

    def test_recovers_icn_velocity(self):
        spec = SolutionSpec(Family.MKDV_ICN, m=0.6)  # c = 2m-1 = 0.2
        prof = periodic_profile(spec)
        c_best, report = velocity_scan(prof, EquationKind.MKDV_DEFOCUSING, -2, 2, 11)
        assert abs(c_best - 0.2) < 1e-6
        assert report.relative < 1e-8

    def test_degenerate_profile_rejected(self):
        p = SampledProfile(np.full(64, 1.0 + 0j), 0.1, 0.0, PERIODIC)
        with pytest.raises(ValueError, match="unidentifiable"):
            velocity_scan(p, EquationKind.KDV, -1, 1, 5)

    def test_steps_validation(self):
        p, _ = _sine_profile()
        with pytest.raises(ValueError, match="steps"):
            velocity_scan(p, EquationKind.KDV, -1, 1, 2)

    @given(m=st.floats(0.1, 0.95), scale=st.floats(0.2, 2.0))
    @settings(max_examples=20, deadline=None)
    def test_scan_matches_exact_velocity_property(self, m, scale):
        spec = SolutionSpec(Family.MKDV_SN, m=m)
        params = resolve(spec)
        prof = periodic_profile(spec, n=128)
        c_best, report = velocity_scan(
            prof, EquationKind.MKDV_DEFOCUSING, params.c - scale, params.c + scale, 7
        )
        assert abs(c_best - params.c) < 1e-6
        assert report.relative < 1e-7
