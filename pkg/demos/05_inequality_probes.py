"""Exercise the inequality probes: each reports an empirical constant and a
growth slope; "bounded" shows up as a flat slope, and out-of-hypothesis
parameter points must fail (the probes are falsifiable).
"""

from fracnls.estimates import (
    check_japanese_bracket_integral,
    check_resonance_lower_bound,
    check_time_trace_integral,
    check_trilinear_sup_integral,
    check_two_bracket_convolution,
    check_weighted_tail_integral,
)
from fracnls.spectral import FracParams

print("bracket-weight interval integral:")
rep = check_japanese_bracket_integral(0.0, 1.0, 0.5)
print(f"  integral={rep.extras['integral']:.6f} ratio={rep.c_emp:.4f} "
      f"slope={rep.trend_slope:+.3f} pass={rep.passed}")

print("two-bracket convolution (log case beta=1):")
rep = check_two_bracket_convolution(0.0, 5.0, 1.0, 0.5)
print(f"  C_emp={rep.c_emp:.4f} slope={rep.trend_slope:+.3f} pass={rep.passed}")

print("resonance lower bound:")
for alpha in (1.4, 1.6, 1.8):
    rep = check_resonance_lower_bound(alpha, trials=100000)
    print(f"  alpha={alpha}: empirical floor={rep.c_emp:.4f} "
          f"(reseeded {rep.extras['min_reseeded']:.4f})")

print("weighted tail integral:")
rep = check_weighted_tail_integral(4.0, -0.25, -0.5, 0.4)
print(f"  C_emp={rep.c_emp:.4f} slope={rep.trend_slope:+.3f} pass={rep.passed}")

print("boundary time-trace integral:")
rep = check_time_trace_integral([2.0**j for j in range(0, 13)], 0.2, 0.45, 1.6)
print(f"  C_emp={rep.c_emp:.4f} slope={rep.trend_slope:+.3f} pass={rep.passed}")

print("trilinear sup integral, region A (this one takes a couple of minutes):")
p = FracParams(alpha=1.6, s=0.3, a=0.1)
rep = check_trilinear_sup_integral("A", p, 0.01, radii=[2.0**8, 2.0**9])
print(f"  sup={rep.c_emp:.3f} slope_R={rep.extras['slope_vs_radius']:+.3f} "
      f"slope_xi={rep.extras['slope_vs_xi']:+.3f} pass={rep.passed}")

print("negative control (gain exponent pushed past the admissible window):")
bad = FracParams(alpha=1.6, s=0.3, a=(4 * 0.3 + 1.6 - 2.0) / 2.0 + 0.2)
rep = check_trilinear_sup_integral("B", bad, 0.01, radii=[2.0**8, 2.0**9])
print(f"  slope_xi={rep.extras['slope_vs_xi']:+.3f} pass={rep.passed} (must fail)")
