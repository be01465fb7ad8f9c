import math

import numpy as np
import pytest

from hadamard import families
from hadamard.errors import NumericalFailure, UsageError
from hadamard.expr import compile_expr
from hadamard.quad import Interval, Rect, gauss_legendre_panel, integrate_1d, integrate_2d, riemann_2d

UNIT = Rect(0, 1, 0, 1)


def test_rect_and_interval_validation():
    with pytest.raises(UsageError):
        Rect(1, 0, 0, 1)
    with pytest.raises(UsageError):
        Rect(0, 1, 0, math.nan)
    with pytest.raises(UsageError):
        Interval(2, 2)


@pytest.mark.parametrize("k", range(32))
def test_single_panel_polynomial_exactness(k):
    got = gauss_legendre_panel(lambda x: x**k, 0.0, 1.0)
    assert abs(got - 1 / (k + 1)) <= 1e-13 * (1 / (k + 1))


def test_1d_examples():
    r = integrate_1d(lambda x: x, (0, 1))
    assert abs(r.value - 0.5) <= 1e-15
    assert r.err_estimate <= 1e-15
    assert integrate_1d(lambda x: x**1.5, (0, 1)).value == pytest.approx(0.4, abs=1e-9)


def test_1d_sqrt_singularity():
    assert integrate_1d(np.sqrt, (0, 1)).value == pytest.approx(2 / 3, abs=1e-9)


def test_2d_examples():
    assert integrate_2d(lambda x, y: np.ones_like(x), UNIT).value == pytest.approx(1.0, abs=1e-15)
    f = compile_expr("(x-1)*(y-1)")
    assert integrate_2d(f, UNIT).value == pytest.approx(0.25, abs=1e-14)
    g = compile_expr("(x+y)*sqrt(x*y)")
    r = integrate_2d(g, UNIT)
    assert abs(r.value - 8 / 15) <= 1e-8
    assert r.err_estimate >= 0


def test_riemann_examples():
    assert riemann_2d(lambda x, y: np.ones_like(x), Rect(0, 3, -1, 1), 7) == 6.0
    assert riemann_2d(compile_expr("x"), UNIT, 1) == 0.5
    assert abs(riemann_2d(compile_expr("(x+y)*sqrt(x*y)"), UNIT, 512) - 8 / 15) <= 1e-4


def test_linearity():
    f = compile_expr("exp(x)*y")
    g = compile_expr("sqrt(x+y)")
    combo = compile_expr("2*exp(x)*y - 3*sqrt(x+y)")
    rf, rg, rc = (integrate_2d(h, UNIT) for h in (f, g, combo))
    bound = 2 * rf.err_estimate + 3 * rg.err_estimate + rc.err_estimate + 1e-13
    assert abs(rc.value - (2 * rf.value - 3 * rg.value)) <= bound


def _default_families():
    return [(fam.name, fam.instantiate()) for fam in families.list_families()]


@pytest.mark.parametrize("name, f", _default_families())
def test_oracle_agreement(name, f):
    value = integrate_2d(f, UNIT, 1e-9).value
    assert abs(value - riemann_2d(f, UNIT, 1024)) <= 1e-5 * max(1.0, abs(value))


@pytest.mark.parametrize("name", ["const", "affine", "square", "sumexp", "bilinear", "mixed"])
def test_fubini(name):
    f = families.instantiate(name)
    r = Rect(0.25, 1.5, 0.0, 2.0)
    inner = np.vectorize(lambda x: integrate_1d(f.slice("fix-x", x), r.y_interval(), 1e-12).value)
    iterated = integrate_1d(inner, r.x_interval(), 1e-12).value
    assert abs(integrate_2d(f, r, 1e-12).value - iterated) <= 1e-9


def test_anisotropic_refinement_makes_strips():
    # singular derivative only along y: cells should split in y, not x
    r = integrate_2d(compile_expr("sqrt(y)"), UNIT)
    assert r.value == pytest.approx(2 / 3, abs=1e-9)
    assert r.panels < 60


def test_non_convergence_is_an_error():
    with pytest.raises(NumericalFailure):
        integrate_1d(compile_expr("log(x)").slice("fix-y", 0.0), (0, 1))
    with pytest.raises(NumericalFailure):
        integrate_2d(compile_expr("log(x)"), UNIT)


def test_deterministic():
    f = compile_expr("abs(x-0.3)*sqrt(y)")
    assert integrate_2d(f, UNIT) == integrate_2d(f, UNIT)


def test_bad_tol():
    with pytest.raises(UsageError):
        integrate_1d(lambda x: x, (0, 1), tol=0)
