"""Evaluate the oscillatory kernel B(x) = int e^{i x xi + i |xi|^alpha} dxi
three independent ways and dump a table for plotting.

The modulus grows like |x|^{(2-alpha)/(2(alpha-1))} (stationary-phase
amplitude), so the "tail" of the table is the closed-form asymptotic regime
rather than a decay zone.
"""

import numpy as np

from fracnls.kernel import (
    build_kernel_table,
    eval_B,
    eval_B_asymptotic,
    eval_B_quadrature,
    eval_B_series,
    save_kernel_csv,
    suggested_table_xmax,
)

alpha = 1.6
print(f"alpha = {alpha}")
print(f"B(0) = {eval_B(0.0, alpha)[0]:.8f}")
print(f"alpha=2 sanity (Fresnel): {eval_B(0.0, 2.0)[0]:.8f} "
      f"vs sqrt(pi) e^(i pi/4) = {np.sqrt(np.pi)*np.exp(1j*np.pi/4):.8f}")

print("\nthree routes at x = 3:")
print(f"  dispatch   {eval_B(3.0, alpha, tol=1e-9)[0]:.10f}")
print(f"  series     {eval_B_series(3.0, alpha):.10f}")
print(f"  quadrature {eval_B_quadrature(3.0, alpha, tol=1e-9)[0]:.10f}")

print("\ngrowth of |B| along x (exponent (2-a)/(2(a-1)) = "
      f"{(2-alpha)/(2*(alpha-1)):.3f}):")
for x in (5.0, 10.0, 20.0, 40.0):
    v = eval_B(x, alpha, tol=1e-7)[0]
    print(f"  |B({x:5.1f})| = {abs(v):8.4f}")

xmax = suggested_table_xmax(alpha)
table = build_kernel_table(alpha, xmax, n_nodes=256, tol=1e-8)
print(f"\ntable: {len(table.x_nodes)} Chebyshev nodes on [0, {table.tail_cut}], "
      f"tail error {table.est_tail_error:.1e}")
mid = 0.37 * xmax
print(f"interpolation vs asymptotics vs series at x={mid:.2f}:")
print(f"  table      {table(mid):.10f}")
print(f"  series     {eval_B_series(mid, alpha):.10f}")
print(f"  asymptotic {eval_B_asymptotic(mid, alpha):.10f}")

save_kernel_csv(table, "kernel_table.csv")
print("\nwrote kernel_table.csv (x, Re B, Im B)")
