"""Both sides of the Hadamard-type inequalities, and reports on their margins.

Identifiers::

    eq11   f((a+b)/2) <= mean f <= (f(a) + f(b))/2                 (1-D chain)
    eq12   mean fg <= M/(s+2) + N/((s+1)(s+2))                     (1-D)
    eq13   mean fg <= M/(s1+s2+1) + B(s1+1, s2+1) N               (1-D)
    eq14   2^s f(mid) g(mid) - mean fg <= M/((s+1)(s+2)) + N/(s+2) (1-D)
    eq15   f(mid) <= mean f <= corner average of f                (2-D chain)
    eq16   mean fg <= L/9 + M/18 + N/36
    eq17   4 f(mid) g(mid) - mean fg <= 5L/36 + 7M/36 + 2N/9
    thm7   mean fg <= cL L + cM M + cN N with s-dependent coefficients
    thm8   the same with coefficients built from Beta(s1+1, s2+1)
    thm9   2^(2s+1) f(mid) g(mid) <= 2 mean fg + cL L + cM M + cN N
    thm10  corner-weighted kernel integrals <= mean fg + L/9 + M/18 + N/36

In 1-D, ``M`` and ``N`` are ``f(a)g(a) + f(b)g(b)`` and ``f(a)g(b) + f(b)g(a)``.
In 2-D, ``L``, ``M`` and ``N`` are the bare corner sums of :class:`CornerSums`;
coefficients are applied exactly once, in the ``rhs_*`` functions.

Nothing here checks convexity hypotheses; pair with :mod:`.convexity` for that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import UsageError
from .expr import ScalarFn, Slice
from .quad import Interval, QuadResult, Rect, integrate_1d, integrate_2d
from .special import beta, beta_gamma_form

__all__ = [
    "INEQUALITIES", "ONE_D", "DEFAULT_TOL", "DEFAULT_QUAD_TOL",
    "CornerSums", "InequalityReport",
    "corner_sums", "mean_1d", "mean_product_1d", "mean_2d", "product_mean_2d",
    "rhs_eq12", "rhs_eq13", "rhs_eq14", "eq16_coefficients", "eq17_coefficients",
    "thm7_coefficients", "thm8_coefficients", "thm9_coefficients",
    "rhs_eq16", "rhs_thm7", "rhs_thm8", "rhs_thm8_gamma", "rhs_thm9",
    "eq11_check", "eq12_check", "eq13_check", "eq14_check", "eq15_check", "eq16_check",
    "eq17_check", "thm7_check", "thm8_check", "thm9_check", "thm10_check", "midpoint_corner_check",
    "evaluate",
]

DEFAULT_TOL = 1e-7
DEFAULT_QUAD_TOL = 1e-9

INEQUALITIES = ("eq11", "eq12", "eq13", "eq14", "eq15", "eq16", "eq17", "thm7", "thm8", "thm9", "thm10")
ONE_D = ("eq11", "eq12", "eq13", "eq14")
SINGLE_FUNCTION = ("eq11", "eq15")
THM9_VARIANTS = ("proof", "statement")


# --------------------------------------------------------------------------
# Data types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CornerSums:
    """Bare corner aggregates over ``[a, b] x [c, d]``.

    ``L`` pairs f and g at the same corner, ``M`` pairs corners sharing a row
    or column, ``N`` pairs diagonally opposite corners.
    """

    L: float
    M: float
    N: float


@dataclass(frozen=True)
class InequalityReport:
    inequality: str
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    quad_error: float
    params: dict = field(default_factory=dict)
    tol: float = DEFAULT_TOL
    quad_tol: float = DEFAULT_QUAD_TOL
    domain: tuple = ()
    variant: Optional[str] = None
    variants: Optional[dict] = None
    links: tuple = ()

    def to_dict(self) -> dict:
        out = {
            "inequality": self.inequality,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "satisfied": self.satisfied,
            "quad_error": self.quad_error,
            "tol": self.tol,
            "quad_tol": self.quad_tol,
            "domain": list(self.domain),
        }
        if self.variant is not None:
            out["variant"] = self.variant
        if self.variants is not None:
            out["variants"] = dict(self.variants)
        if self.links:
            out["links"] = [link.to_dict() for link in self.links]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "InequalityReport":
        return cls(
            inequality=data["inequality"],
            lhs=data["lhs"],
            rhs=data["rhs"],
            margin=data["margin"],
            satisfied=data["satisfied"],
            quad_error=data["quad_error"],
            params=dict(data.get("params", {})),
            tol=data.get("tol", DEFAULT_TOL),
            quad_tol=data.get("quad_tol", DEFAULT_QUAD_TOL),
            domain=tuple(data.get("domain", ())),
            variant=data.get("variant"),
            variants=data.get("variants"),
            links=tuple(cls.from_dict(link) for link in data.get("links", ())),
        )


def _report(name, lhs, rhs, err, tol, quad_tol, params, domain, **extra) -> InequalityReport:
    lhs = float(lhs)
    rhs = float(rhs)
    margin = rhs - lhs
    slack = tol * max(1.0, abs(lhs), abs(rhs)) + err
    return InequalityReport(
        inequality=name, lhs=lhs, rhs=rhs, margin=margin, satisfied=margin >= -slack,
        quad_error=float(err), params=dict(params), tol=tol, quad_tol=quad_tol,
        domain=tuple(domain), **extra,
    )


def _chain(name, links, tol, quad_tol, params, domain) -> InequalityReport:
    # The headline numbers are those of the tighter link.
    binding = min(links, key=lambda rep: rep.margin)
    return InequalityReport(
        inequality=name, lhs=binding.lhs, rhs=binding.rhs, margin=binding.margin,
        satisfied=all(rep.satisfied for rep in links), quad_error=binding.quad_error,
        params=dict(params), tol=tol, quad_tol=quad_tol, domain=tuple(domain), links=tuple(links),
    )


# --------------------------------------------------------------------------
# Argument handling
# --------------------------------------------------------------------------

def _check_s(value, name="s") -> float:
    if value is None:
        raise UsageError(f"parameter {name} is required")
    value = float(value)
    if not (0.0 < value <= 1.0):
        raise UsageError(f"{name} must lie in (0, 1], got {value!r}")
    return value


def _as_rect(r) -> Rect:
    if isinstance(r, Rect):
        return r
    if isinstance(r, Interval):
        raise UsageError("this inequality needs a rectangle, got an interval")
    if len(r) != 4:
        raise UsageError("a rectangle needs four numbers a, b, c, d")
    return Rect(*r)


def _as_interval(iv) -> Interval:
    if isinstance(iv, Interval):
        return iv
    if isinstance(iv, Rect):
        raise UsageError("this inequality needs an interval, got a rectangle")
    if len(iv) != 2:
        raise UsageError("an interval needs two numbers lo, hi")
    return Interval(*iv)


def _as_1d(f) -> Callable:
    """A one-variable callable from a Slice, a function of x only, or any callable."""
    if isinstance(f, ScalarFn):
        if "y" in f.variables:
            raise UsageError(f"a one-dimensional inequality needs a function of x only, got {f.source!r}")
        return f.slice("fix-y", 0.0)
    return f


def _product(f, g):
    return lambda *args: f(*args) * g(*args)


# --------------------------------------------------------------------------
# Building blocks
# --------------------------------------------------------------------------

def _corners(f, r: Rect) -> tuple[float, float, float, float]:
    """f at (a, c), (b, c), (a, d), (b, d)."""
    return (float(f(r.a, r.c)), float(f(r.b, r.c)), float(f(r.a, r.d)), float(f(r.b, r.d)))


def corner_sums(f, g, r) -> CornerSums:
    r = _as_rect(r)
    fac, fbc, fad, fbd = _corners(f, r)
    gac, gbc, gad, gbd = _corners(g, r)
    # fsum is exactly rounded, hence independent of term order; this makes
    # swapping f and g bitwise neutral.
    L = math.fsum([fac * gac, fbc * gbc, fad * gad, fbd * gbd])
    M = math.fsum([
        fac * gad, fad * gac, fbc * gbd, fbd * gbc,
        fbc * gac, fbd * gad, fac * gbc, fad * gbd,
    ])
    N = math.fsum([fbc * gad, fbd * gac, fac * gbd, fad * gbc])
    return CornerSums(L, M, N)


def mean_1d(f, iv, tol=DEFAULT_QUAD_TOL) -> QuadResult:
    iv = _as_interval(iv)
    res = integrate_1d(_as_1d(f), iv, tol)
    return QuadResult(res.value / iv.length, res.err_estimate / iv.length, res.panels)


def mean_product_1d(f, g, iv, tol=DEFAULT_QUAD_TOL) -> QuadResult:
    """Integral mean of ``f * g`` over ``iv``."""
    return mean_1d(_product(_as_1d(f), _as_1d(g)), iv, tol)


def mean_2d(f, r, tol=DEFAULT_QUAD_TOL) -> QuadResult:
    r = _as_rect(r)
    res = integrate_2d(f, r, tol)
    return QuadResult(res.value / r.area, res.err_estimate / r.area, res.panels)


def product_mean_2d(f, g, r, tol=DEFAULT_QUAD_TOL) -> QuadResult:
    """Integral mean of ``f * g`` over ``r``; ``err_estimate`` is scaled alike."""
    return mean_2d(_product(f, g), r, tol)


def _mn_1d(fa, fb, ga, gb) -> tuple[float, float]:
    return fa * ga + fb * gb, fa * gb + fb * ga


def rhs_eq12(fa, fb, ga, gb, s) -> float:
    s = _check_s(s)
    M, N = _mn_1d(fa, fb, ga, gb)
    return M / (s + 2.0) + N / ((s + 1.0) * (s + 2.0))


def rhs_eq13(fa, fb, ga, gb, s1, s2) -> float:
    s1 = _check_s(s1, "s1")
    s2 = _check_s(s2, "s2")
    M, N = _mn_1d(fa, fb, ga, gb)
    return M / (s1 + s2 + 1.0) + beta(s1 + 1.0, s2 + 1.0) * N


def rhs_eq14(fa, fb, ga, gb, s) -> float:
    s = _check_s(s)
    M, N = _mn_1d(fa, fb, ga, gb)
    return M / ((s + 1.0) * (s + 2.0)) + N / (s + 2.0)


def eq16_coefficients() -> tuple[float, float, float]:
    return (1 / 9, 1 / 18, 1 / 36)


def eq17_coefficients() -> tuple[float, float, float]:
    return (5 / 36, 7 / 36, 2 / 9)


def thm7_coefficients(s) -> tuple[float, float, float]:
    s = _check_s(s)
    return (1.0 / (s + 2.0) ** 2, 1.0 / ((s + 1.0) * (s + 2.0) ** 2), 1.0 / ((s + 1.0) ** 2 * (s + 2.0) ** 2))


def thm8_coefficients(s1, s2) -> tuple[float, float, float]:
    s1 = _check_s(s1, "s1")
    s2 = _check_s(s2, "s2")
    total = s1 + s2 + 1.0
    b = beta(s1 + 1.0, s2 + 1.0)
    return (1.0 / total ** 2, b / total, b * b)


def thm9_coefficients(s, variant="proof") -> tuple[float, float, float]:
    """Coefficients of L, M, N in the midpoint inequality.

    ``proof`` uses ``(4s+6)/D`` for L, as obtained by chaining the 1-D
    bounds; ``statement`` uses ``5/((s+1)(s+2)^2)``. Here
    ``D = (s+1)^2 (s+2)^2``; the M and N coefficients agree between the two
    and so do all three at ``s = 1``.
    """
    s = _check_s(s)
    if variant not in THM9_VARIANTS:
        raise UsageError(f"variant must be one of {THM9_VARIANTS}, got {variant!r}")
    D = (s + 1.0) ** 2 * (s + 2.0) ** 2
    cM = (2.0 * s * s + 6.0 * s + 6.0) / D
    if variant == "proof":
        return ((4.0 * s + 6.0) / D, cM, (2.0 * s * s + 8.0 * s + 6.0) / D)
    return (5.0 / ((s + 1.0) * (s + 2.0) ** 2), cM, (2.0 * s + 6.0) / ((s + 1.0) * (s + 2.0) ** 2))


def _apply(coeffs, cs: CornerSums) -> float:
    cL, cM, cN = coeffs
    return cL * cs.L + cM * cs.M + cN * cs.N


def rhs_eq16(cs: CornerSums) -> float:
    return _apply(eq16_coefficients(), cs)


def rhs_thm7(cs: CornerSums, s) -> float:
    return _apply(thm7_coefficients(s), cs)


def rhs_thm8(cs: CornerSums, s1, s2) -> float:
    return _apply(thm8_coefficients(s1, s2), cs)


def rhs_thm8_gamma(cs: CornerSums, s1, s2) -> float:
    """Right side of the two-parameter bound written with Gamma values."""
    s1 = _check_s(s1, "s1")
    s2 = _check_s(s2, "s2")
    total = s1 + s2 + 1.0
    k = beta_gamma_form(s1, s2) * total
    return (cs.L + k * cs.M + k * k * cs.N) / total ** 2


def rhs_thm9(cs: CornerSums, mean: float, s, variant="proof") -> float:
    return 2.0 * mean + _apply(thm9_coefficients(s, variant), cs)


# --------------------------------------------------------------------------
# Checks
# --------------------------------------------------------------------------

def eq11_check(f, iv, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    iv = _as_interval(iv)
    f1 = _as_1d(f)
    mean = mean_1d(f1, iv, quad_tol)
    mid = float(f1(iv.mid))
    avg = (float(f1(iv.lo)) + float(f1(iv.hi))) / 2.0
    dom = (iv.lo, iv.hi)
    links = (
        _report("eq11.left", mid, mean.value, mean.err_estimate, tol, quad_tol, {}, dom),
        _report("eq11.right", mean.value, avg, mean.err_estimate, tol, quad_tol, {}, dom),
    )
    return _chain("eq11", links, tol, quad_tol, {}, dom)


def _ends(f, iv):
    return float(f(iv.lo)), float(f(iv.hi))


def eq12_check(f, g, iv, s, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    iv = _as_interval(iv)
    f1, g1 = _as_1d(f), _as_1d(g)
    mean = mean_product_1d(f1, g1, iv, quad_tol)
    rhs = rhs_eq12(*_ends(f1, iv), *_ends(g1, iv), s)
    return _report("eq12", mean.value, rhs, mean.err_estimate, tol, quad_tol, {"s": float(s)}, (iv.lo, iv.hi))


def eq13_check(f, g, iv, s1, s2, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    iv = _as_interval(iv)
    f1, g1 = _as_1d(f), _as_1d(g)
    mean = mean_product_1d(f1, g1, iv, quad_tol)
    rhs = rhs_eq13(*_ends(f1, iv), *_ends(g1, iv), s1, s2)
    params = {"s1": float(s1), "s2": float(s2)}
    return _report("eq13", mean.value, rhs, mean.err_estimate, tol, quad_tol, params, (iv.lo, iv.hi))


def eq14_check(f, g, iv, s, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    iv = _as_interval(iv)
    s = _check_s(s)
    f1, g1 = _as_1d(f), _as_1d(g)
    mean = mean_product_1d(f1, g1, iv, quad_tol)
    lhs = 2.0 ** s * float(f1(iv.mid)) * float(g1(iv.mid)) - mean.value
    rhs = rhs_eq14(*_ends(f1, iv), *_ends(g1, iv), s)
    return _report("eq14", lhs, rhs, mean.err_estimate, tol, quad_tol, {"s": s}, (iv.lo, iv.hi))


def eq15_check(f, r, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    r = _as_rect(r)
    mean = mean_2d(f, r, quad_tol)
    mid = float(f(*r.midpoint))
    avg = math.fsum(_corners(f, r)) / 4.0
    dom = r.as_tuple()
    links = (
        _report("eq15.left", mid, mean.value, mean.err_estimate, tol, quad_tol, {}, dom),
        _report("eq15.right", mean.value, avg, mean.err_estimate, tol, quad_tol, {}, dom),
    )
    return _chain("eq15", links, tol, quad_tol, {}, dom)


def eq16_check(f, g, r, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    r = _as_rect(r)
    mean = product_mean_2d(f, g, r, quad_tol)
    rhs = rhs_eq16(corner_sums(f, g, r))
    return _report("eq16", mean.value, rhs, mean.err_estimate, tol, quad_tol, {}, r.as_tuple())


def eq17_check(f, g, r, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    r = _as_rect(r)
    mean = product_mean_2d(f, g, r, quad_tol)
    mx, my = r.midpoint
    lhs = 4.0 * float(f(mx, my)) * float(g(mx, my)) - mean.value
    rhs = _apply(eq17_coefficients(), corner_sums(f, g, r))
    return _report("eq17", lhs, rhs, mean.err_estimate, tol, quad_tol, {}, r.as_tuple())


def thm7_check(f, g, r, s, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    r = _as_rect(r)
    s = _check_s(s)
    mean = product_mean_2d(f, g, r, quad_tol)
    rhs = rhs_thm7(corner_sums(f, g, r), s)
    return _report("thm7", mean.value, rhs, mean.err_estimate, tol, quad_tol, {"s": s}, r.as_tuple())


def thm8_check(f, g, r, s1, s2, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    r = _as_rect(r)
    s1, s2 = _check_s(s1, "s1"), _check_s(s2, "s2")
    mean = product_mean_2d(f, g, r, quad_tol)
    rhs = rhs_thm8(corner_sums(f, g, r), s1, s2)
    params = {"s1": s1, "s2": s2}
    return _report("thm8", mean.value, rhs, mean.err_estimate, tol, quad_tol, params, r.as_tuple())


def thm9_check(f, g, r, s, variant="proof", tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    """Midpoint bound; both coefficient variants are reported in ``variants``.

    ``variants["discrepancy"]`` is True when the two right-hand sides differ
    by more than the report tolerance.
    """
    r = _as_rect(r)
    s = _check_s(s)
    if variant not in THM9_VARIANTS:
        raise UsageError(f"variant must be one of {THM9_VARIANTS}, got {variant!r}")
    mean = product_mean_2d(f, g, r, quad_tol)
    cs = corner_sums(f, g, r)
    mx, my = r.midpoint
    lhs = 2.0 ** (2.0 * s + 1.0) * float(f(mx, my)) * float(g(mx, my))
    sides = {name: rhs_thm9(cs, mean.value, s, name) for name in THM9_VARIANTS}
    scale = max(1.0, abs(sides["proof"]), abs(sides["statement"]))
    variants = {
        "proof": sides["proof"],
        "statement": sides["statement"],
        "discrepancy": abs(sides["proof"] - sides["statement"]) > tol * scale,
    }
    return _report(
        "thm9", lhs, sides[variant], 2.0 * mean.err_estimate, tol, quad_tol, {"s": s}, r.as_tuple(),
        variant=variant, variants=variants,
    )


def _kernels(r: Rect):
    a, b, c, d = r.as_tuple()
    # Weight attached to the corners (a,c), (b,c), (a,d), (b,d) in that order.
    return (
        lambda x, y: (x - b) * (y - d),
        lambda x, y: (a - x) * (y - d),
        lambda x, y: (x - b) * (c - y),
        lambda x, y: (a - x) * (c - y),
    )


def thm10_check(f, g, r, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    r = _as_rect(r)
    kernels = _kernels(r)
    terms = []
    errs = []
    for outer, inner in ((f, g), (g, f)):
        for value, kernel in zip(_corners(outer, r), kernels):
            res = integrate_2d(_product(kernel, inner), r, quad_tol)
            terms.append(value * res.value)
            errs.append(abs(value) * res.err_estimate)
    norm = r.area ** 2
    lhs = math.fsum(terms) / norm
    mean = product_mean_2d(f, g, r, quad_tol)
    rhs = mean.value + rhs_eq16(corner_sums(f, g, r))
    err = math.fsum(errs) / norm + mean.err_estimate
    return _report("thm10", lhs, rhs, err, tol, quad_tol, {}, r.as_tuple())


def midpoint_corner_check(g, r, tol=DEFAULT_TOL, quad_tol=DEFAULT_QUAD_TOL) -> InequalityReport:
    """``4 g(mid) - mean g <= (3/4) * (sum of g over the corners)``.

    This is ``thm9`` with ``f = 1`` and ``s = 1``, halved; ``g = 1`` is an
    equality case.
    """
    r = _as_rect(r)
    mean = mean_2d(g, r, quad_tol)
    lhs = 4.0 * float(g(*r.midpoint)) - mean.value
    rhs = 0.75 * math.fsum(_corners(g, r))
    return _report("midpoint-corner", lhs, rhs, mean.err_estimate, tol, quad_tol, {"s": 1.0}, r.as_tuple())


# --------------------------------------------------------------------------
# Dispatch
# --------------------------------------------------------------------------

def evaluate(
    ineq_id: str,
    f,
    g=None,
    domain=None,
    *,
    s=None,
    s1=None,
    s2=None,
    variant="proof",
    tol=DEFAULT_TOL,
    quad_tol=DEFAULT_QUAD_TOL,
) -> InequalityReport:
    """Evaluate one inequality by identifier; see the module docstring."""
    if ineq_id not in INEQUALITIES:
        raise UsageError(f"unknown inequality {ineq_id!r}; choose from {', '.join(INEQUALITIES)}")
    if domain is None:
        raise UsageError("a domain (interval or rectangle) is required")
    if ineq_id in SINGLE_FUNCTION:
        if g is not None:
            raise UsageError(f"{ineq_id} takes a single function f")
    elif g is None:
        raise UsageError(f"{ineq_id} needs two functions f and g")
    kw = {"tol": tol, "quad_tol": quad_tol}
    match ineq_id:
        case "eq11":
            return eq11_check(f, domain, **kw)
        case "eq12":
            return eq12_check(f, g, domain, s, **kw)
        case "eq13":
            return eq13_check(f, g, domain, s1, s2, **kw)
        case "eq14":
            return eq14_check(f, g, domain, s, **kw)
        case "eq15":
            return eq15_check(f, domain, **kw)
        case "eq16":
            return eq16_check(f, g, domain, **kw)
        case "eq17":
            return eq17_check(f, g, domain, **kw)
        case "thm7":
            return thm7_check(f, g, domain, s, **kw)
        case "thm8":
            return thm8_check(f, g, domain, s1, s2, **kw)
        case "thm9":
            return thm9_check(f, g, domain, s, variant, **kw)
        case "thm10":
            return thm10_check(f, g, domain, **kw)
