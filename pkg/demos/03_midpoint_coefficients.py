"""
Two coefficient sets for the midpoint bound
===========================================

The midpoint inequality can be written with two different L coefficients,
5/((s+1)(s+2)^2) and (4s+6)/((s+1)^2(s+2)^2). They coincide at s = 1 and
drift apart as s shrinks. Both are computed on every report.
"""

import numpy as np

from hadamard import compile_expr, evaluate, Rect
from hadamard.bounds import thm9_coefficients

unit = Rect(0, 1, 0, 1)
f = compile_expr("x + y + 1")
# sqrt(xy) + 0.5 is s-convex on the co-ordinates only for s <= 0.5
g = compile_expr("(x*y)^0.5 + 0.5")

print(f"{'s':>5} {'cL proof':>10} {'cL stmt':>10} {'lhs':>10} {'rhs proof':>10} {'rhs stmt':>10}")
for s in np.linspace(0.05, 0.5, 10):
    rep = evaluate("thm9", f, g, unit, s=float(s))
    cp = thm9_coefficients(s, "proof")[0]
    cs = thm9_coefficients(s, "statement")[0]
    print(f"{s:5.2f} {cp:10.6f} {cs:10.6f} {rep.lhs:10.6f} "
          f"{rep.variants['proof']:10.6f} {rep.variants['statement']:10.6f}")

###############################################################################
# The statement coefficient is the smaller of the two for s < 1, so it gives
# the tighter (and less safe) bound. Neither is adjudicated here. At s = 1
# the two agree; constants show it.
one = compile_expr("1")
rep = evaluate("thm9", one, one, unit, s=1.0)
print("s=1, f=g=1:", rep.variants)
