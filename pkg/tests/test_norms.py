import numpy as np
import pytest

from fracnls.norms import halfline_sobolev_norm, time_trace_norm, xsb_norm
from fracnls.propagators import free_evolution_field, unit_bump
from fracnls.spectral import (
    ComplexField,
    Grid1D,
    SpaceTimeField,
    TimeGrid,
    sobolev_norm,
    sobolev_norm_1d,
)

from conftest import random_field


def interior_bump(t, t_max):
    # smooth envelope supported well inside (0, t_max)
    c, w = 0.5 * t_max, 0.24 * t_max
    return unit_bump((t - c) / w)


@pytest.fixture
def stgrids():
    return Grid1D(16.0, 256), TimeGrid(8.0, 1024)


class TestXsb:
    def test_zero_field(self, stgrids):
        g, tg = stgrids
        u = SpaceTimeField(g, tg, np.zeros((tg.n_steps + 1, g.n_points), complex))
        assert xsb_norm(u, 0.3, 0.4, 1.5).value == 0.0

    def test_boundary_support_rejected(self, stgrids):
        g, tg = stgrids
        vals = np.ones((tg.n_steps + 1, g.n_points), complex)
        with pytest.raises(ValueError):
            xsb_norm(SpaceTimeField(g, tg, vals), 0.3, 0.4, 1.5)

    def test_plancherel_s0_b0(self, stgrids):
        g, tg = stgrids
        phi = random_field(g, 2, decay=3.0)
        env = interior_bump(tg.t, tg.t_max)
        u = free_evolution_field(phi, tg, 1.6, envelope=env)
        n = xsb_norm(u, 0.0, 0.0, 1.6).value
        # space-time L^2 of the field (free group is unitary mode-wise)
        l2t = np.sqrt(np.sum(np.abs(u.values) ** 2) * g.dx * tg.dt)
        assert n == pytest.approx(l2t, rel=1e-10)

    @pytest.mark.parametrize("s,b,alpha", [(0.3, 0.4, 1.5), (0.3, 0.45, 1.8)])
    def test_group_identity(self, stgrids, s, b, alpha):
        # || g(t) e^{it(-Delta)^{a/2}} phi ||_{X^{s,b}} = ||g||_{H^b} ||phi||_{H^s}
        g, tg = stgrids
        phi = ComplexField.from_function(g, lambda x: np.exp(-(x**2)))
        env = interior_bump(tg.t, tg.t_max)
        u = free_evolution_field(phi, tg, alpha, envelope=env)
        lhs = xsb_norm(u, s, b, alpha).value
        rhs = sobolev_norm_1d(env, tg.dt, b) * sobolev_norm(phi, s)
        assert lhs == pytest.approx(rhs, rel=1e-3)

    def test_scaling(self, stgrids):
        g, tg = stgrids
        phi = random_field(g, 4, decay=3.0)
        env = interior_bump(tg.t, tg.t_max)
        u = free_evolution_field(phi, tg, 1.5, envelope=env)
        u2 = SpaceTimeField(g, tg, 2.0 * u.values)
        assert xsb_norm(u2, 0.3, 0.4, 1.5).value == pytest.approx(
            2.0 * xsb_norm(u, 0.3, 0.4, 1.5).value, rel=1e-12)

    def test_monotone_in_s_and_b(self, stgrids):
        g, tg = stgrids
        phi = random_field(g, 5, decay=3.0)
        env = interior_bump(tg.t, tg.t_max)
        u = free_evolution_field(phi, tg, 1.6, envelope=env)
        assert xsb_norm(u, 0.1, 0.2, 1.6).value <= xsb_norm(u, 0.5, 0.2, 1.6).value
        assert xsb_norm(u, 0.1, 0.2, 1.6).value <= xsb_norm(u, 0.1, 0.45, 1.6).value

    def test_cutoff_stability_reported(self, stgrids):
        # multiplying by a bump is bounded on X^{s,b}; ratio stable under refinement
        g, _ = stgrids
        ratios = []
        for M in (512, 1024):
            tg = TimeGrid(8.0, M)
            phi = random_field(g, 6, decay=3.0)
            env = interior_bump(tg.t, tg.t_max)
            u = free_evolution_field(phi, tg, 1.6, envelope=env)
            narrower = env * unit_bump((tg.t - 4.0) / 1.2)
            un = free_evolution_field(phi, tg, 1.6, envelope=narrower)
            ratios.append(xsb_norm(un, 0.3, 0.4, 1.6).value / xsb_norm(u, 0.3, 0.4, 1.6).value)
        assert abs(ratios[1] - ratios[0]) < 0.02 * ratios[0]


class TestTimeLocalization:
    def test_scaling_exponent(self):
        # || psi_T u ||_{X^{s,b'}} / || u ||_{X^{s,b}} ~ T^{b-b'} for width-T data
        g = Grid1D(12.0, 64)
        tg = TimeGrid(2.0, 1024)
        alpha, s, b, bp = 1.6, 0.3, 0.45, 0.0
        phi = ComplexField.from_function(g, lambda x: np.exp(-(x**2)))
        c = 1.0
        Ts = np.array([1 / 16, 1 / 8, 1 / 4, 1 / 2])
        ratios = []
        for T in Ts:
            h = unit_bump((tg.t - c) / T)
            u = free_evolution_field(phi, tg, alpha, envelope=h)
            psiT_u = free_evolution_field(phi, tg, alpha, envelope=h * unit_bump((tg.t - c) / T))
            num = xsb_norm(psiT_u, s, bp, alpha).value
            den = xsb_norm(u, s, b, alpha).value
            ratios.append(num / den)
        slope = np.polyfit(np.log(Ts), np.log(ratios), 1)[0]
        assert abs(slope - (b - bp)) < 0.15


class TestHalflineNorm:
    def test_supported_right_of_origin(self):
        g = Grid1D(16.0, 512)
        f = ComplexField.from_function(g, lambda x: np.exp(-((x - 5.0) ** 2) * 4.0))
        assert halfline_sobolev_norm(f, 0.3) == pytest.approx(sobolev_norm(f, 0.3), rel=1e-10)

    def test_odd_field_half_mass(self):
        g = Grid1D(16.0, 512)
        f = ComplexField.from_function(g, lambda x: x * np.exp(-(x**2)))
        assert halfline_sobolev_norm(f, 0.0) == pytest.approx(sobolev_norm(f, 0.0) / np.sqrt(2), rel=1e-10)

    def test_straddling_bump_sandwich(self):
        g = Grid1D(16.0, 512)
        f = ComplexField.from_function(g, lambda x: np.exp(-((x - 0.5) ** 2)))
        trunc = ComplexField(g, np.where(g.x > 0, f.values, 0.0))
        val = halfline_sobolev_norm(f, 0.3)
        assert sobolev_norm(trunc, 0.0) <= val <= sobolev_norm(trunc, 0.3) * (1 + 1e-12)

    def test_range_guard(self):
        g = Grid1D(16.0, 512)
        f = ComplexField.from_function(g, lambda x: np.exp(-(x**2)))
        for bad in (-0.1, 0.5, 0.8):
            with pytest.raises(ValueError):
                halfline_sobolev_norm(f, bad)


class TestTimeTrace:
    def test_zero(self, stgrids):
        g, tg = stgrids
        u = SpaceTimeField(g, tg, np.zeros((tg.n_steps + 1, g.n_points), complex))
        assert time_trace_norm(u, 0.0, 0.4) == 0.0

    def test_separable(self, stgrids):
        g, tg = stgrids
        gx = np.exp(-(g.x - 1.0) ** 2)
        ht = interior_bump(tg.t, tg.t_max).astype(complex)
        u = SpaceTimeField(g, tg, ht[:, None] * gx[None, :])
        x0 = g.x[g.n_points // 2 + 8]
        lhs = time_trace_norm(u, x0, 0.35)
        rhs = abs(np.interp(x0, g.x, gx)) * sobolev_norm_1d(ht, tg.dt, 0.35)
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_free_evolution_ratio_bounded(self, stgrids):
        # time-trace regularity (2s-1+alpha)/(2 alpha) of the free group at x0=0
        g, tg = stgrids
        s, alpha = 0.3, 1.6
        r = (2 * s - 1 + alpha) / (2 * alpha)
        ratios = []
        for width in (0.5, 0.8, 1.2, 2.0, 3.0):
            phi = ComplexField.from_function(g, lambda x: np.exp(-((x / width) ** 2)))
            env = interior_bump(tg.t, tg.t_max)
            u = free_evolution_field(phi, tg, alpha, envelope=env)
            ratios.append(time_trace_norm(u, 0.0, r) / sobolev_norm(phi, s))
        assert np.isfinite(ratios).all()
        assert max(ratios) / min(ratios) < 8.0
