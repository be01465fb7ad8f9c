"""
Equality cases of the product bounds
====================================

Some pairs of functions make a product inequality tight. Here both
sides are evaluated for those pairs and the margins printed.
"""

from hadamard import compile_expr, evaluate, Rect

unit = Rect(0, 1, 0, 1)

###############################################################################
# f = x + y is convex on the co-ordinates and g = sqrt(xy) is 1/2-convex on
# them. The product mean is 8/15, and the bound with s = 0.5 gives exactly that.
rep = evaluate("thm7", compile_expr("x+y"), compile_expr("sqrt(x*y)"), unit, s=0.5)
print(f"thm7: lhs={rep.lhs:.12f} rhs={rep.rhs:.12f} margin={rep.margin:.2e}")
print(f"      8/15 = {8 / 15:.12f}")

###############################################################################
# Power functions (xy)^s1 and (xy)^s2 vanish at three corners, so only the
# L term survives, and both sides equal (1/(s1+s2+1))^2.
f = compile_expr("(x*y)^0.5")
g = compile_expr("(x*y)^(1/3)")
rep = evaluate("thm8", f, g, unit, s1=0.5, s2=1 / 3)
print(f"thm8: lhs={rep.lhs:.12f} rhs={rep.rhs:.12f} (6/11)^2={(6 / 11) ** 2:.12f}")

###############################################################################
# Constants make the midpoint bound and the kernel bound tight.
one = compile_expr("1")
for ineq, kw in (("thm9", {"s": 1.0}), ("thm10", {})):
    rep = evaluate(ineq, one, one, unit, **kw)
    print(f"{ineq}: lhs={rep.lhs!r} rhs={rep.rhs!r} margin={rep.margin:.1e}")
