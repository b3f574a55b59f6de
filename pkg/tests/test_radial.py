"""Radial wavefunctions: structure, residuals, normalization, asymptotics."""

import math

import numpy as np
import pytest

from abcoulomb import radial, scattering, specfun
from abcoulomb.errors import DomainError, QuadratureFailure, SupercriticalError
from abcoulomb.radial import (
    RadialSolution,
    SolutionKind,
    bound_radial,
    bound_tail_coefficient,
    continuum_radial,
    continuum_xi,
    default_bound_grid,
    default_continuum_grid,
    normalize,
    radial_system_residual,
)
from abcoulomb.spectrum import Coupling, dirac_energy


@pytest.fixture(scope="module")
def ground():
    c = Coupling(a=0.3)
    st = dirac_energy(c, 0, 0)
    return c, st, bound_radial(c, st)


class TestBoundRadial:
    def test_ground_state_profile(self, ground):
        # n = 0: Q2 = 0, so f = const * rho^{gamma-1} e^{-rho/2}
        c, st, sol = ground
        rho = 2.0 * st.lambda_ * sol.grid
        shape = np.exp((st.gamma_exp - 1.0) * np.log(rho) - rho / 2.0)
        ratio = sol.f / shape
        assert np.ptp(ratio) <= 1e-12 * abs(ratio[0])
        assert ratio[0] > 0.0  # sign convention f > 0 near the origin

    def test_ground_state_component_ratio(self, ground):
        # C/A = 0 at n = 0, hence g/f = sqrt((m-E)/(m+E)) = 1/3 everywhere
        _, _, sol = ground
        assert np.allclose(sol.g / sol.f, 1.0 / 3.0, rtol=1e-12)

    def test_ode_residual_ground(self, ground):
        c, _, sol = ground
        assert radial_system_residual(sol, c) < 1e-8

    @pytest.mark.parametrize("l,n", [(0, 1), (0, 3), (-2, 1), (1, 2)])
    def test_ode_residual_excited(self, l, n):
        c = Coupling(a=0.3, eB=0.2)
        sol = bound_radial(c, dirac_energy(c, l, n))
        assert radial_system_residual(sol, c) < 1e-6

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
    def test_node_count(self, n):
        # upper component has exactly n interior sign changes
        c = Coupling(a=0.3, eB=0.2)
        sol = bound_radial(c, dirac_energy(c, 0, n))
        interior = sol.f[np.abs(sol.f) > 1e-13 * np.max(np.abs(sol.f))]
        changes = int(np.sum(np.sign(interior[1:]) != np.sign(interior[:-1])))
        assert changes == n

    def test_supercritical_rejected(self):
        c = Coupling(a=0.3)
        st = dirac_energy(c, 0, 0)
        bad = Coupling(a=0.6)
        with pytest.raises(SupercriticalError):
            bound_radial(bad, st)


class TestNormalize:
    def test_unit_norm(self, ground):
        c, st, sol = ground
        nsol = normalize(sol)
        integral = _dense_norm(nsol)
        assert abs(integral - 1.0) <= 1e-8

    def test_idempotence(self, ground):
        _, _, sol = ground
        once = normalize(sol)
        twice = normalize(once)
        assert np.max(np.abs(twice.f - once.f)) <= 1e-12 * np.max(np.abs(once.f))

    def test_zero_input_fails(self, ground):
        _, _, sol = ground
        zero = RadialSolution(kind=SolutionKind.BOUND, l=0, energy=0.8,
                              grid=sol.grid, f=np.zeros_like(sol.f),
                              g=np.zeros_like(sol.g))
        with pytest.raises(QuadratureFailure):
            normalize(zero)

    def test_continuum_rejected(self):
        c = Coupling(a=0.2, eB=0.3)
        sol, _ = continuum_radial(c, 1.25, 0)
        with pytest.raises(DomainError):
            normalize(sol)


def _dense_norm(sol: RadialSolution) -> float:
    # start deep enough that the integrable r^{2 gamma - 2} core left out
    # is below 1e-10 even for gamma near 1/2
    r = np.geomspace(1e-14, sol.grid[-1] * 2.5, 60001)
    f, g = sol._evaluator(r)
    dens = (f * f + g * g) * r
    x = np.log(r)
    h = x[1] - x[0]
    return float(h / 3.0 * (dens[0] + dens[-1] + 4.0 * np.sum(dens[1:-1:2])
                            + 2.0 * np.sum(dens[2:-2:2])))


class TestContinuum:
    def test_reduces_to_bessel_at_zero_coupling(self):
        # positive and negative kappa channels against J_nu / J_|w+1|
        for l in (1, -2):
            c = Coupling(a=0.0, eB=0.3)
            sol, params = continuum_radial(c, 1.25, l)
            p = params.p
            w = l + 0.3
            scale = math.sqrt(math.pi * p * (1.25 + 1.0) / 1.25)
            scale_g = math.sqrt(math.pi * p * (1.25 - 1.0) / 1.25)
            idx = np.arange(40, sol.grid.size, 613)
            for i in idx:
                r = sol.grid[i]
                ju = specfun.bessel_j(abs(w), p * r)
                jl = specfun.bessel_j(abs(w + 1.0), p * r)
                sign = 1.0 if l + 0.3 + 0.5 > 0 else -1.0
                assert sol.f[i] == pytest.approx(sign * scale * ju, abs=1e-8)
                assert sol.g[i] == pytest.approx(scale_g * jl, abs=1e-8)

    def test_ode_residual(self):
        c = Coupling(a=0.2, eB=0.3)
        sol, _ = continuum_radial(c, 1.25, 0)
        assert radial_system_residual(sol, c) < 1e-6

    def test_asymptotic_form(self):
        # matches sqrt(2(E±m)/(Er)) (cos, sin)(pr + delta + mu ln 2pr - pi l/2)
        c = Coupling(a=0.2, eB=0.3)
        energy, l = 1.25, 0
        rec = scattering.phase_shift_record(c, energy, l)
        p = math.sqrt(energy ** 2 - 1.0)
        for pr, tol_abs in ((200.0, 1e-4), (2000.0, 5e-6)):
            r = pr / p
            grid = np.linspace(0.98 * r, 1.02 * r, 9)
            sol, params = continuum_radial(c, energy, l, grid)
            i = 4
            theta = (p * grid[i] + rec.delta_total
                     + params.mu * math.log(2.0 * p * grid[i])
                     - math.pi * l / 2.0)
            f_ref = math.sqrt(2.0 * (energy + 1.0) / (energy * grid[i])) \
                * math.cos(theta)
            g_ref = math.sqrt(2.0 * (energy - 1.0) / (energy * grid[i])) \
                * math.sin(theta)
            assert abs(sol.f[i] - f_ref) <= tol_abs
            assert abs(sol.g[i] - g_ref) <= 2.0 * tol_abs

    def test_small_r_power_law(self):
        c = Coupling(a=0.3, eB=0.2)
        sol, _ = continuum_radial(c, 1.25, 0)
        gamma = 0.5 + math.sqrt(0.7 ** 2 - 0.09)
        r = sol.grid[:40]
        slope = np.diff(np.log(np.abs(sol.f[:40]))) / np.diff(np.log(r))
        assert slope[0] == pytest.approx(gamma - 1.0, abs=1e-3)

    def test_xi_branch(self):
        c0 = Coupling(a=0.0, eB=0.3)
        assert continuum_xi(c0, 1.25, 1) == 0.0          # kappa > 0
        assert continuum_xi(c0, 1.25, -2) == math.pi / 2  # kappa < 0
        xi = continuum_xi(Coupling(a=0.2, eB=0.3), 1.25, 0)
        assert -math.pi / 2 < xi <= math.pi / 2

    def test_requires_open_channel(self):
        c = Coupling(a=0.2)
        with pytest.raises(DomainError):
            continuum_radial(c, 0.9, 0)
        with pytest.raises(SupercriticalError):
            continuum_radial(Coupling(a=0.6), 1.25, 0)


class TestBoundTail:
    def test_component_ratio(self, ground):
        c, st, _ = ground
        info = bound_tail_coefficient(c, st)
        assert info.tail_ratio == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_exponent_field(self, ground):
        c, st, _ = ground
        info = bound_tail_coefficient(c, st)
        assert info.exponent == pytest.approx(0.4, rel=1e-12)
        assert info.decay == pytest.approx(0.6, rel=1e-15)

    def test_fitted_decay_rate(self, ground):
        # regress ln f on (r, ln r); the r slope recovers -lambda
        c, st, sol = ground
        nsol = normalize(sol)
        rho = np.linspace(20.0, 40.0, 200)
        r = rho / (2.0 * st.lambda_)
        f, _ = nsol._evaluator(r)
        design = np.vstack([r, np.log(r), np.ones_like(r)]).T
        coef, *_ = np.linalg.lstsq(design, np.log(np.abs(f)), rcond=None)
        assert coef[0] == pytest.approx(-st.lambda_, abs=1e-4)

    @pytest.mark.parametrize("l,n", [(0, 0), (0, 1), (-2, 1)])
    def test_envelope_constancy(self, l, n):
        # f / [rho^{gamma+n-1} e^{-rho/2}] approaches a constant at large rho;
        # a 1/rho fit over rho in [40, 80] must leave < 1% scatter
        c = Coupling(a=0.3, eB=0.2)
        st = dirac_energy(c, l, n)
        rho = np.linspace(40.0, 80.0, 60)
        r = rho / (2.0 * st.lambda_)
        sol = bound_radial(c, st, np.sort(r))
        envelope = np.exp((st.gamma_exp + n - 1.0) * np.log(rho) - rho / 2.0)
        ratio = sol.f / envelope
        design = np.vstack([np.ones_like(rho), 1.0 / rho]).T
        coef, *_ = np.linalg.lstsq(design, ratio, rcond=None)
        fitted = design @ coef
        assert np.max(np.abs(ratio - fitted)) <= 0.01 * abs(coef[0])


class TestGrids:
    def test_default_grids(self, ground):
        _, st, _ = ground
        rb = default_bound_grid(st)
        assert rb.size == 2000 and rb[0] < rb[-1]
        rc = default_continuum_grid(1.25)
        assert rc.size == 6000

    def test_bad_grid_rejected(self, ground):
        c, st, _ = ground
        with pytest.raises(ValueError):
            bound_radial(c, st, np.array([1.0, 0.5, 2.0, 3.0, 4.0]))
