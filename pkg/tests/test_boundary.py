from math import gamma

import numpy as np
import pytest

from fracnls.boundary import (
    BoundaryForcingPlan,
    boundary_force,
    decay_probe,
    linear_ibvp_solution,
)
from fracnls.fractional import CausalSignal, riemann_liouville, smooth_bump01
from fracnls.kernel import KernelAccuracyError, build_kernel_table
from fracnls.propagators import duhamel, free_evolution_field
from fracnls.spectral import ComplexField, Grid1D, SpaceTimeField, TimeGrid, dft_inverse

ALPHA = 1.6


@pytest.fixture(scope="module")
def kernel():
    return build_kernel_table(ALPHA, 15.0, n_nodes=256, tol=1e-8)


@pytest.fixture(scope="module")
def grid():
    return Grid1D(16.0, 256)


def bump_signal(tgrid):
    return CausalSignal.from_function(tgrid, smooth_bump01)


class TestBoundaryForce:
    def test_zero_signal(self, grid, kernel):
        tg = TimeGrid(1.0, 64)
        res = boundary_force(CausalSignal(tg, np.zeros(65, complex)), grid, ALPHA, kernel)
        assert np.all(res.field.values == 0)
        assert res.trace_residual == 0.0

    def test_trace_identity_refinement(self, grid, kernel):
        # boundary trace must reproduce the datum, improving at order >= 1
        errs = []
        for M in (64, 128, 256):
            tg = TimeGrid(1.0, M)
            res = boundary_force(bump_signal(tg), grid, ALPHA, kernel)
            errs.append(res.trace_residual)
        orders = [np.log2(a / b) for a, b in zip(errs[:-1], errs[1:])]
        assert all(o >= 1.0 for o in orders)
        assert errs[-1] < 1e-5

    def test_linearity(self, grid, kernel):
        tg = TimeGrid(1.0, 96)
        plan = BoundaryForcingPlan(grid, tg, ALPHA, kernel)
        f1 = bump_signal(tg)
        f2 = CausalSignal.from_function(tg, lambda t: np.sin(np.pi * t) ** 2 * t)
        a, b = 1.7 - 0.4j, -0.6 + 1.1j
        comb = CausalSignal(tg, a * f1.values + b * f2.values)
        lhs = plan.apply(comb).field.values
        rhs = a * plan.apply(f1).field.values + b * plan.apply(f2).field.values
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * np.max(np.abs(rhs))

    def test_mollified_duhamel_oracle(self, kernel):
        # independent construction: spectral flow of a mollified line source
        # must match the mollified field, improving with dx (the x=0 cusp
        # aliases like dx^alpha)
        tg = TimeGrid(1.0, 128)
        f = bump_signal(tg)
        g = riemann_liouville(f, 1.0 / ALPHA - 1.0).values
        cpref = 2 * np.pi / (kernel.value_at_zero * gamma(1 - 1 / ALPHA))
        diffs = []
        for N in (128, 256):
            gr = Grid1D(16.0, N)
            res = boundary_force(f, gr, ALPHA, kernel)
            wm = 8.0 / (np.pi * 128 / 16.0)
            rho = dft_inverse(np.exp(-wm**2 * gr.frequencies**2 / 2).astype(complex), gr)
            w_vals = cpref * g[:, None] * rho.values[None, :]
            Vw = 1j * duhamel(SpaceTimeField(gr, tg, w_vals), ALPHA).values
            k = np.fft.fftfreq(N) * N
            xi = gr.frequencies_fft
            shift = np.exp(1j * np.pi * k)
            fh = np.fft.fft(res.field.values, axis=1) * gr.dx * shift[None, :]
            moll = np.fft.ifft(fh * np.exp(-wm**2 * xi**2 / 2)[None, :]
                               * np.conj(shift)[None, :] / gr.dx, axis=1)
            diffs.append(np.max(np.abs(Vw - moll)))
        assert diffs[1] < diffs[0] / 2.0
        assert diffs[1] < 1e-3

    def test_pde_residual_off_the_source_line(self, kernel):
        # i u_t + (-Delta)^{a/2} u equals the (low-passed) line forcing;
        # measured residual away from |x| < 1 decreases under refinement
        tg_sizes = ((256, 128), (512, 256))
        cpref = 2 * np.pi / (kernel.value_at_zero * gamma(1 - 1 / ALPHA))
        vals = []
        for N, M in tg_sizes:
            gr = Grid1D(16.0, N)
            tg = TimeGrid(1.0, M)
            f = bump_signal(tg)
            res = boundary_force(f, gr, ALPHA, kernel)
            u = res.field.values
            g = riemann_liouville(f, 1.0 / ALPHA - 1.0).values
            dt = tg.dt
            xicut = 12.0
            keep = np.abs(gr.frequencies_fft) <= xicut
            sym = np.abs(gr.frequencies_fft) ** ALPHA
            ut = (u[2:] - u[:-2]) / (2 * dt)
            utf = np.fft.ifft(np.fft.fft(ut, axis=1) * keep[None, :], axis=1)
            lap = np.fft.ifft(np.fft.fft(u[1:-1], axis=1) * (sym * keep)[None, :], axis=1)
            with np.errstate(invalid="ignore"):
                D = np.where(gr.x != 0, np.sin(xicut * gr.x) / (np.pi * gr.x), xicut / np.pi)
            F = 1j * cpref * g[1:-1][:, None] * D[None, :]
            R = 1j * utf + lap - F
            band = np.abs(gr.x) >= 1.0
            vals.append(np.max(np.abs(R[:, band])))
        assert vals[1] < 0.7 * vals[0]

    def test_insufficient_table_raises_with_guidance(self, grid):
        small = build_kernel_table(ALPHA, 6.0, n_nodes=64, tol=1e-6, tail_tol=1e-4)
        tg = TimeGrid(1.0, 64)
        with pytest.raises(KernelAccuracyError, match="x_max"):
            boundary_force(bump_signal(tg), grid, ALPHA, small, err_budget=1e-7)

    def test_continuity_in_x(self, grid, kernel):
        # adjacent-sample jumps stay bounded by C sqrt(dx) under refinement
        ratios = []
        for N in (256, 512):
            gr = Grid1D(16.0, N)
            tg = TimeGrid(1.0, 128)
            res = boundary_force(bump_signal(tg), gr, ALPHA, kernel)
            jump = np.max(np.abs(np.diff(res.field.values, axis=1)))
            ratios.append(jump / np.sqrt(gr.dx))
        assert ratios[1] < 2.0 * ratios[0]


class TestDecayProbe:
    def test_bump_pointwise(self, grid, kernel):
        tg = TimeGrid(1.0, 128)
        res = boundary_force(bump_signal(tg), grid, ALPHA, kernel)
        rep = decay_probe(res, 2)
        assert np.isfinite(rep.c_emp)
        assert rep.extras["pointwise_bound_holds"]

    def test_nexp_zero(self, grid, kernel):
        tg = TimeGrid(1.0, 64)
        res = boundary_force(bump_signal(tg), grid, ALPHA, kernel)
        rep = decay_probe(res, 0)
        outer = np.abs(grid.x) >= 0.75 * grid.half_length
        expected = np.max(np.abs(res.field.values[:, outer]))
        assert rep.c_emp == pytest.approx(expected)

    def test_zero_field(self, grid, kernel):
        tg = TimeGrid(1.0, 64)
        res = boundary_force(CausalSignal(tg, np.zeros(65, complex)), grid, ALPHA, kernel)
        rep = decay_probe(res, 2)
        assert rep.c_emp == 0.0
        assert rep.passed


class TestLinearIBVP:
    def test_compatible_free_trace(self, grid, kernel):
        # f equal to the free trace makes the correction vanish
        tg = TimeGrid(1.0, 128)
        u0 = ComplexField.from_function(grid, lambda x: np.exp(-((x - 3.0) ** 2)))
        free = free_evolution_field(u0, tg, ALPHA)
        i0 = int(np.argmin(np.abs(grid.x)))
        fvals = free.values[:, i0].copy()
        fvals[0] = 0.0
        # free trace at t=0 is u0(0) ~ e^{-9}, small enough for causality
        f = CausalSignal(tg, fvals)
        total, diags = linear_ibvp_solution(u0, f, ALPHA, kernel)
        d = np.max(np.abs(total.values - free.values))
        assert d < 5e-4 * np.max(np.abs(free.values))

    def test_boundary_driven(self, grid, kernel):
        tg = TimeGrid(1.0, 128)
        u0 = ComplexField(grid, np.zeros(grid.n_points, complex))
        f = bump_signal(tg)
        total, diags = linear_ibvp_solution(u0, f, ALPHA, kernel)
        assert diags["boundary_trace_residual"] < 5e-5

    def test_initial_slice_exact(self, grid, kernel):
        tg = TimeGrid(1.0, 64)
        u0 = ComplexField.from_function(grid, lambda x: np.exp(-(x**2)))
        f = CausalSignal(tg, np.zeros(65, complex))
        total, diags = linear_ibvp_solution(u0, f, ALPHA, kernel)
        assert diags["initial_trace_residual"] == 0.0
