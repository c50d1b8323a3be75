import numpy as np
import pytest
from scipy.integrate import quad

from fracnls.estimates import (
    bracket,
    check_japanese_bracket_integral,
    check_resonance_lower_bound,
    check_time_trace_integral,
    check_trilinear_sup_integral,
    check_two_bracket_convolution,
    check_weighted_tail_integral,
    resonance_quantity,
)
from fracnls.spectral import FracParams


class TestJapaneseBracket:
    def test_empty_interval(self):
        rep = check_japanese_bracket_integral(1.0, 1.0, 0.5)
        assert rep.c_emp == 0.0
        assert rep.passed

    def test_unit_interval_oracle(self):
        # oracle: direct quadrature of (1+x^2)^{-1/4} on [0,1] under the
        # global bracket; frozen value 0.9374897507 and ratio vs 2^{1/4}
        rep = check_japanese_bracket_integral(0.0, 1.0, 0.5)
        oracle, _ = quad(lambda x: (1 + x * x) ** -0.25, 0, 1)
        assert oracle == pytest.approx(0.9374897507, abs=1e-9)
        assert rep.extras["integral"] == pytest.approx(oracle, abs=1e-8)
        assert rep.c_emp == pytest.approx(oracle / 2 ** 0.25, abs=1e-8)

    @pytest.mark.parametrize("c", [0.3, 0.7])
    def test_sweep_no_growth(self, c):
        rng = np.random.default_rng(5)
        for _ in range(4):
            m, n = np.sort(rng.uniform(-50, 50, 2))
            rep = check_japanese_bracket_integral(float(m), float(n), c)
            assert np.isfinite(rep.c_emp)
            assert rep.passed

    def test_domain_guards(self):
        with pytest.raises(ValueError):
            check_japanese_bracket_integral(1.0, 0.0, 0.5)
        with pytest.raises(ValueError):
            check_japanese_bracket_integral(0.0, 1.0, 1.5)


class TestTwoBracketConvolution:
    def test_arctangent_oracle(self):
        # beta=2, gamma=0: integrand (1+x^2)^{-1}, integral = pi exactly
        rep = check_two_bracket_convolution(0.0, 0.0, 2.0, 0.0)
        assert rep.extras["integral"] == pytest.approx(np.pi, abs=1e-6)
        assert rep.passed

    def test_log_case_stable(self):
        rep = check_two_bracket_convolution(0.0, 5.0, 1.0, 0.5)
        assert rep.passed  # ratio divided by log(1+<a>) plateaus

    def test_gamma_zero_plateau(self):
        rep = check_two_bracket_convolution(0.0, 1000.0, 1.5, 0.0)
        ratios = rep.extras["sweep_ratios"]
        assert max(ratios) / min(ratios) < 1.05

    def test_domain_guard(self):
        with pytest.raises(ValueError):
            check_two_bracket_convolution(0.0, 0.0, 0.5, 0.4)


class TestResonanceBound:
    def test_point_value(self):
        # k=0, m=n=1, alpha=3/2: |2 - 2^{3/2}| * 2^{1/2} = 2(sqrt2 - 1)sqrt2
        val = resonance_quantity(0.0, 1.0, 1.0, 1.5)
        assert val == pytest.approx((2 ** 1.5 - 2.0) * 2 ** 0.5, rel=1e-12)

    def test_guard_excludes_tiny_mn(self):
        rep = check_resonance_lower_bound(1.6, trials=10000, k_range=10.0)
        k, m, n = rep.arg_max["k"], rep.arg_max["m"], rep.arg_max["n"]
        assert abs(m) >= 1e-6 and abs(n) >= 1e-6

    @pytest.mark.parametrize("alpha", [1.4, 1.6, 1.8])
    def test_floor_positive_and_stable(self, alpha):
        rep = check_resonance_lower_bound(alpha, trials=100000, k_range=100.0)
        assert rep.c_emp > 0.0
        assert rep.extras["reseed_stable"]
        assert rep.passed

    def test_trials_guard(self):
        with pytest.raises(ValueError):
            check_resonance_lower_bound(1.6, trials=100)


class TestWeightedTail:
    def test_symmetric_reference_point(self):
        rep = check_weighted_tail_integral(0.0, -0.25, -0.5, 0.4)
        assert np.isfinite(rep.c_emp) and rep.c_emp > 0

    def test_plateau_slope(self):
        rep = check_weighted_tail_integral(1.0, -0.25, -0.5, 0.4)
        assert abs(rep.trend_slope) <= 0.1
        assert rep.passed

    def test_origin_cell_refinement(self):
        from fracnls.estimates import _weighted_tail_value

        v1 = _weighted_tail_value(2.0, -0.25, -0.5, 0.4, inner_floor=2 ** -36)
        v2 = _weighted_tail_value(2.0, -0.25, -0.5, 0.4, inner_floor=2 ** -37)
        assert abs(v1 - v2) < 1e-6

    def test_appendix_preset(self):
        # the time-trace chain's G integral maps onto this lemma with
        # lambda = (1-alpha)/alpha, sigma = -s, b = -c
        alpha, s, c = 1.6, 0.3, -0.45
        rep = check_weighted_tail_integral(4.0, (1 - alpha) / alpha, -s, -c)
        assert rep.passed

    def test_domain_guard(self):
        with pytest.raises(ValueError):
            check_weighted_tail_integral(1.0, 0.7, -1.0, 0.4)


class TestTimeTrace:
    def test_negative_eta_direct(self):
        from fracnls.estimates import _time_trace_value

        val, _ = _time_trace_value(-8.0, 0.2, 0.45, 1.6, 1e-2)
        assert np.isfinite(val) and val > 0

    def test_plateau(self):
        rep = check_time_trace_integral([2.0 ** j for j in range(0, 13)], 0.2, 0.45, 1.6)
        assert abs(rep.trend_slope) <= 0.1
        assert rep.passed

    def test_excision_independence(self):
        r1 = check_time_trace_integral([2.0 ** j for j in range(0, 9)], 0.2, 0.45, 1.6,
                                       excision=1e-2)
        r2 = check_time_trace_integral([2.0 ** j for j in range(0, 9)], 0.2, 0.45, 1.6,
                                       excision=1e-3)
        assert abs(r1.c_emp - r2.c_emp) / r1.c_emp < 1e-3

    def test_domain_guards(self):
        with pytest.raises(ValueError):
            check_time_trace_integral([1.0], 0.2, 0.6, 1.6)
        with pytest.raises(ValueError):
            check_time_trace_integral([1.0], 0.4, 0.45, 1.6)


@pytest.mark.slow
class TestTrilinear:
    def test_reference_point_finite(self):
        from fracnls.estimates import _trilinear_integral

        v = _trilinear_integral(0.0, 1.6, 0.3, 0.1, 0.01, 2.0 ** 8, "A")
        assert np.isfinite(v) and v > 0

    def test_region_A_bounded(self):
        p = FracParams(alpha=1.6, s=0.3, a=0.1)
        rep = check_trilinear_sup_integral("A", p, 0.01,
                                           radii=[2.0 ** 8, 2.0 ** 9, 2.0 ** 10])
        assert rep.passed

    def test_region_B_bounded_and_control_fails(self):
        p = FracParams(alpha=1.6, s=0.3, a=0.1)
        rep = check_trilinear_sup_integral("B", p, 0.01,
                                           radii=[2.0 ** 8, 2.0 ** 9, 2.0 ** 10])
        assert rep.passed
        a_bad = (4 * 0.3 + 1.6 - 2.0) / 2.0 + 0.2
        ctrl = check_trilinear_sup_integral(
            "B", FracParams(alpha=1.6, s=0.3, a=a_bad), 0.01,
            radii=[2.0 ** 8, 2.0 ** 9, 2.0 ** 10])
        assert ctrl.extras["slope_vs_xi"] > 0.1
        assert not ctrl.passed

    def test_determinism(self):
        p = FracParams(alpha=1.6, s=0.3, a=0.1)
        kw = dict(xi_sweep=[0.0, 4.0, -4.0], radii=[2.0 ** 7, 2.0 ** 8])
        r1 = check_trilinear_sup_integral("A", p, 0.01, **kw)
        r2 = check_trilinear_sup_integral("A", p, 0.01, **kw)
        assert r1.c_emp == r2.c_emp
        assert r1.extras["final_values"] == r2.extras["final_values"]


def test_report_serialization(tmp_path):
    rep = check_japanese_bracket_integral(0.0, 1.0, 0.5)
    path = tmp_path / "rep.json"
    rep.to_json(path)
    import json

    data = json.loads(path.read_text())
    assert data["schema"].startswith("fracnls-report")
    assert data["inequality_id"] == "japanese_bracket_interval"
    assert rep.CSV_HEADER.startswith("inequality_id")
