"""
Convex on the co-ordinates is weaker than convex
================================================

The bilinear function xy is linear along every horizontal and vertical
line, yet it is not convex on the square. The sampling certifier finds a
witness for the second claim.
"""

from hadamard import certify_2d, compile_expr, Rect

unit = Rect(0, 1, 0, 1)
f = compile_expr("x*y")

###############################################################################
# Co-ordinated convexity passes: no violation at the sampled resolution.
cert = certify_2d(f, unit, "coord-convex")
print(cert.status, "after", cert.samples_checked, "samples")

###############################################################################
# Joint convexity fails. Along the anti-diagonal, xy is a concave parabola:
# f(0.5, 0.5) = 0.25 lies above the chord between (0, 1) and (1, 0).
cert = certify_2d(f, unit, "convex-on-delta")
w = cert.witness
print("points", w.points, "lambda", w.weights, "lhs", w.lhs, "rhs", w.rhs)

###############################################################################
# The s-convex analogue: sqrt(xy) is 1/2-convex along each co-ordinate but not
# convex along them.
g = compile_expr("(x*y)^0.5")
print("coord-sconvex(0.5):", certify_2d(g, unit, "coord-sconvex", s=0.5).status)
print("coord-convex:      ", certify_2d(g, unit, "coord-convex").status)
