"""Composite Gauss-Legendre quadrature on intervals and rectangles.

Each panel (or rectangular cell) carries a coarse estimate and the refined
estimate obtained by bisecting it once; their difference is the panel's
error estimate. The panel with the largest estimate is bisected until the
summed estimate drops to ``tol * max(1, |value|)``. Only h-refinement is
done: the Gauss order stays at 16.

``riemann_2d`` is a deliberately naive midpoint rule kept as an independent
cross-check on ``integrate_2d``.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NumericalFailure, UsageError

__all__ = [
    "GAUSS_ORDER", "MAX_DEPTH", "Interval", "Rect", "QuadResult",
    "gauss_legendre_panel", "integrate_1d", "integrate_2d", "riemann_2d",
]

GAUSS_ORDER = 16
MAX_DEPTH = 20
MAX_PANELS = 200_000

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)
_HALF_NODES = np.concatenate([(_NODES - 1.0) / 2.0, (_NODES + 1.0) / 2.0])
_HALF_WEIGHTS = np.concatenate([_WEIGHTS, _WEIGHTS]) / 2.0


def _finite_real(value, name):
    value = float(value)
    if not math.isfinite(value):
        raise UsageError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo = _finite_real(self.lo, "lo")
        hi = _finite_real(self.hi, "hi")
        if not lo < hi:
            raise UsageError(f"interval needs lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2.0


@dataclass(frozen=True)
class Rect:
    """The rectangle ``[a, b] x [c, d]``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _finite_real(getattr(self, name), name))
        if not (self.a < self.b and self.c < self.d):
            raise UsageError(f"rectangle needs a < b and c < d, got {self.as_tuple()}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    @property
    def area(self) -> float:
        return (self.b - self.a) * (self.d - self.c)

    @property
    def midpoint(self) -> tuple[float, float]:
        return ((self.a + self.b) / 2.0, (self.c + self.d) / 2.0)

    def x_interval(self) -> Interval:
        return Interval(self.a, self.b)

    def y_interval(self) -> Interval:
        return Interval(self.c, self.d)


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    panels: int


def _values(f: Callable, *args) -> np.ndarray:
    out = np.asarray(f(*args), dtype=np.float64)
    if out.shape != args[0].shape:
        out = np.broadcast_to(out, args[0].shape)
    if not np.all(np.isfinite(out)):
        raise NumericalFailure("integrand returned a non-finite value")
    return out


def gauss_legendre_panel(f: Callable, lo: float, hi: float) -> float:
    """Single 16-point Gauss-Legendre panel on ``[lo, hi]``."""
    half = (hi - lo) / 2.0
    x = lo + half * (_NODES + 1.0)
    return half * float(np.dot(_WEIGHTS, _values(f, x)))


# --------------------------------------------------------------------------
# 1-D
# --------------------------------------------------------------------------

def _panel_1d(f, lo, hi):
    """Return (coarse, fine) for one panel with a single f call."""
    half = (hi - lo) / 2.0
    x = np.concatenate([lo + half * (_NODES + 1.0), lo + half * (_HALF_NODES + 1.0)])
    v = _values(f, x)
    coarse = half * float(np.dot(_WEIGHTS, v[:GAUSS_ORDER]))
    fine = half * float(np.dot(_HALF_WEIGHTS, v[GAUSS_ORDER:]))
    return coarse, fine


def integrate_1d(f: Callable, iv: Interval | tuple[float, float], tol: float = 1e-9) -> QuadResult:
    """Integrate a vectorised one-variable function over ``iv``.

    Raises NumericalFailure when a panel would have to be bisected more than
    ``MAX_DEPTH`` times to meet the tolerance.
    """
    if not isinstance(iv, Interval):
        iv = Interval(*iv)
    if not tol > 0:
        raise UsageError("tol must be positive")
    counter = itertools.count()
    coarse, fine = _panel_1d(f, iv.lo, iv.hi)
    # heap entries: (-err, seq, lo, hi, depth, fine)
    heap = [(-abs(fine - coarse), next(counter), iv.lo, iv.hi, 0, fine)]
    value, total_err = fine, abs(fine - coarse)
    while True:
        if total_err <= tol * max(1.0, abs(value)):
            # running sums drift; confirm with exact sums before stopping
            value = math.fsum(entry[5] for entry in heap)
            total_err = math.fsum(-entry[0] for entry in heap)
            if total_err <= tol * max(1.0, abs(value)):
                break
        neg_err, _, lo, hi, depth, old_fine = heapq.heappop(heap)
        if depth >= MAX_DEPTH:
            raise NumericalFailure(
                f"1-D quadrature did not converge: panel [{lo}, {hi}] needs more than {MAX_DEPTH} bisections"
            )
        if len(heap) + 2 > MAX_PANELS:
            raise NumericalFailure("1-D quadrature exceeded the panel budget")
        mid = (lo + hi) / 2.0
        value -= old_fine
        total_err += neg_err
        for plo, phi in ((lo, mid), (mid, hi)):
            c, fn = _panel_1d(f, plo, phi)
            heapq.heappush(heap, (-abs(fn - c), next(counter), plo, phi, depth + 1, fn))
            value += fn
            total_err += abs(fn - c)
    leaves = sorted(heap, key=lambda e: e[2])
    value = math.fsum(e[5] for e in leaves)
    return QuadResult(value, total_err, len(leaves))


# --------------------------------------------------------------------------
# 2-D
# --------------------------------------------------------------------------

_GX, _GY = np.meshgrid(_NODES, _NODES, indexing="ij")
_W2 = np.outer(_WEIGHTS, _WEIGHTS)
_HX, _HY_TMP = np.meshgrid(_HALF_NODES, _NODES, indexing="ij")
_WHX = np.outer(_HALF_WEIGHTS, _WEIGHTS)
_HY_X, _HY = np.meshgrid(_NODES, _HALF_NODES, indexing="ij")
_WHY = np.outer(_WEIGHTS, _HALF_WEIGHTS)
_N2 = GAUSS_ORDER * GAUSS_ORDER


@dataclass
class _Cell:
    x0: float
    x1: float
    y0: float
    y1: float
    depth_x: int
    depth_y: int
    coarse: float = 0.0
    fine_x: float = 0.0
    fine_y: float = 0.0

    @property
    def err_x(self) -> float:
        return abs(self.fine_x - self.coarse)

    @property
    def err_y(self) -> float:
        return abs(self.fine_y - self.coarse)

    @property
    def err(self) -> float:
        return self.err_x + self.err_y

    @property
    def fine(self) -> float:
        # Halving along x removes the x-rule error and halving along y the
        # y-rule error; for a tensor rule the two corrections add.
        return self.fine_x + self.fine_y - self.coarse


def _evaluate_cell(f, cell: _Cell) -> None:
    hx = (cell.x1 - cell.x0) / 2.0
    hy = (cell.y1 - cell.y0) / 2.0
    xs = np.concatenate([
        (cell.x0 + hx * (_GX + 1.0)).ravel(),
        (cell.x0 + hx * (_HX + 1.0)).ravel(),
        (cell.x0 + hx * (_HY_X + 1.0)).ravel(),
    ])
    ys = np.concatenate([
        (cell.y0 + hy * (_GY + 1.0)).ravel(),
        (cell.y0 + hy * (_HY_TMP + 1.0)).ravel(),
        (cell.y0 + hy * (_HY + 1.0)).ravel(),
    ])
    v = _values(f, xs, ys)
    jac = hx * hy
    cell.coarse = jac * float(np.dot(_W2.ravel(), v[:_N2]))
    cell.fine_x = jac * float(np.dot(_WHX.ravel(), v[_N2:3 * _N2]))
    cell.fine_y = jac * float(np.dot(_WHY.ravel(), v[3 * _N2:]))


def _split(cell: _Cell, axis: str) -> tuple[_Cell, _Cell]:
    if axis == "x":
        xm = (cell.x0 + cell.x1) / 2.0
        return (_Cell(cell.x0, xm, cell.y0, cell.y1, cell.depth_x + 1, cell.depth_y),
                _Cell(xm, cell.x1, cell.y0, cell.y1, cell.depth_x + 1, cell.depth_y))
    ym = (cell.y0 + cell.y1) / 2.0
    return (_Cell(cell.x0, cell.x1, cell.y0, ym, cell.depth_x, cell.depth_y + 1),
            _Cell(cell.x0, cell.x1, ym, cell.y1, cell.depth_x, cell.depth_y + 1))


def integrate_2d(f: Callable, r: Rect | tuple, tol: float = 1e-9) -> QuadResult:
    """Integrate a vectorised ``f(x, y)`` over the rectangle ``r``.

    Cells are bisected along whichever axis shows the larger refinement
    difference, so an edge singularity in ``y`` produces thin strips rather
    than a quadtree. Raises NumericalFailure when that axis has already been
    bisected ``MAX_DEPTH`` times.
    """
    if not isinstance(r, Rect):
        r = Rect(*r)
    if not tol > 0:
        raise UsageError("tol must be positive")
    counter = itertools.count()
    root = _Cell(r.a, r.b, r.c, r.d, 0, 0)
    _evaluate_cell(f, root)
    heap = [(-root.err, next(counter), root)]
    value, total_err = root.fine, root.err
    while True:
        if total_err <= tol * max(1.0, abs(value)):
            value = math.fsum(entry[2].fine for entry in heap)
            total_err = math.fsum(entry[2].err for entry in heap)
            if total_err <= tol * max(1.0, abs(value)):
                break
        _, _, cell = heapq.heappop(heap)
        axis = "x" if cell.err_x >= cell.err_y else "y"
        # Splitting the other axis cannot reduce an error that lives in this one.
        if (cell.depth_x if axis == "x" else cell.depth_y) >= MAX_DEPTH:
            raise NumericalFailure(
                f"2-D quadrature did not converge: cell [{cell.x0}, {cell.x1}]x[{cell.y0}, {cell.y1}] "
                f"needs more than {MAX_DEPTH} bisections along {axis}"
            )
        if len(heap) + 2 > MAX_PANELS:
            raise NumericalFailure("2-D quadrature exceeded the cell budget")
        value -= cell.fine
        total_err -= cell.err
        for child in _split(cell, axis):
            _evaluate_cell(f, child)
            heapq.heappush(heap, (-child.err, next(counter), child))
            value += child.fine
            total_err += child.err
    leaves = sorted((entry[2] for entry in heap), key=lambda c: (c.x0, c.y0))
    value = math.fsum(c.fine for c in leaves)
    return QuadResult(value, total_err, len(leaves))


def riemann_2d(f: Callable, r: Rect | tuple, n: int) -> float:
    """Midpoint rule on a uniform ``n x n`` grid."""
    if not isinstance(r, Rect):
        r = Rect(*r)
    if n < 1:
        raise UsageError("n must be at least 1")
    hx = (r.b - r.a) / n
    hy = (r.d - r.c) / n
    xs = r.a + hx * (np.arange(n) + 0.5)
    ys = r.c + hy * (np.arange(n) + 0.5)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    return float(_values(f, X, Y).mean(dtype=np.float64) * r.area)
