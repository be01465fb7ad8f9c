"""
Adaptive quadrature against a midpoint sum
==========================================

The adaptive Gauss-Legendre rule bisects cells along whichever axis still
shows error. The naive midpoint rule converges slowly on integrands whose
derivatives blow up at an edge, which makes it a useful independent check.
"""

from hadamard import compile_expr, integrate_2d, riemann_2d, Rect

unit = Rect(0, 1, 0, 1)
f = compile_expr("(x+y)*sqrt(x*y)")
exact = 8 / 15

res = integrate_2d(f, unit, 1e-12)
print(f"adaptive: {res.value:.15f} err_est={res.err_estimate:.1e} cells={res.panels}")
for n in (16, 64, 256, 1024):
    print(f"midpoint n={n:5d}: error {abs(riemann_2d(f, unit, n) - exact):.2e}")

###############################################################################
# The singular derivative sits only at y = 0 for sqrt(y), so the cells come
# out as thin horizontal strips.
res = integrate_2d(compile_expr("sqrt(y)"), unit)
print(f"sqrt(y): {res.value:.12f} using {res.panels} cells")
