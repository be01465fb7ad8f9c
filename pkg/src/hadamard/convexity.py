"""Sampled falsification of convexity hypotheses.

Each certifier evaluates the defining inequality of a property on a uniform
grid of points and an interior grid of weights. A ``pass`` only means that no
violation larger than the tolerance was found at that resolution. A ``fail``
carries the worst violation found; ties between equally bad samples go to the
first one in scanning order, so repeated runs report the same witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import UsageError
from .quad import Interval, Rect

__all__ = [
    "Property", "Witness", "Certificate", "DEFAULT_GRID_N", "DEFAULT_LAMBDA_N", "DEFAULT_TOL",
    "certify_1d", "certify_2d", "certify", "lambda_grid",
]

DEFAULT_GRID_N = 17
DEFAULT_LAMBDA_N = 9
DEFAULT_TOL = 1e-9


class Property(str, Enum):
    CONVEX_1D = "convex-1d"
    SCONVEX_1D = "sconvex-1d"
    CONVEX_ON_DELTA = "convex-on-delta"
    COORD_CONVEX = "coord-convex"
    SCONVEX_ON_DELTA = "sconvex-on-delta"
    COORD_SCONVEX = "coord-sconvex"

    @property
    def needs_s(self) -> bool:
        return self in (Property.SCONVEX_1D, Property.SCONVEX_ON_DELTA, Property.COORD_SCONVEX)

    @property
    def is_1d(self) -> bool:
        return self in (Property.CONVEX_1D, Property.SCONVEX_1D)


@dataclass(frozen=True)
class Witness:
    """A sample at which the defining inequality fails.

    ``points`` are the sample points (numbers in 1-D, ``(x, y)`` pairs in
    2-D) and ``weights`` the ``lambda`` or ``(t, s)`` used to combine them.
    """

    points: tuple
    weights: tuple[float, ...]
    lhs: float
    rhs: float
    violation: float


@dataclass(frozen=True)
class Certificate:
    prop: Property
    status: str  # "pass" or "fail"
    samples_checked: int
    s: Optional[float] = None
    witness: Optional[Witness] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {
            "property": self.prop.value,
            "status": self.status,
            "samples_checked": self.samples_checked,
            "s": self.s,
        }
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "points": [list(p) if isinstance(p, tuple) else p for p in w.points],
                "weights": list(w.weights),
                "lhs": w.lhs,
                "rhs": w.rhs,
                "violation": w.violation,
            }
        return out


def lambda_grid(lambda_n: int) -> np.ndarray:
    """Interior weights ``k / (lambda_n + 1)`` for ``k = 1..lambda_n``."""
    if lambda_n < 1:
        raise UsageError("lambda_n must be at least 1")
    return np.arange(1, lambda_n + 1, dtype=np.float64) / (lambda_n + 1)


def _grid(lo: float, hi: float, n: int) -> np.ndarray:
    if n < 2:
        raise UsageError("grid_n must be at least 2")
    return np.linspace(lo, hi, n)


def _check_s(prop: Property, s: Optional[float]) -> Optional[float]:
    if not prop.needs_s:
        return None
    if s is None or not (0.0 < s <= 1.0):
        raise UsageError(f"{prop.value} needs s in (0, 1], got {s!r}")
    return float(s)


def _first_worst(excess: np.ndarray) -> Optional[int]:
    """Flat index of the largest positive excess, or None if none is positive."""
    flat = excess.ravel()
    k = int(np.argmax(flat))
    return k if flat[k] > 0 else None


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = np.triu_indices(n, k=1)
    return i, j


def _as_prop(prop) -> Property:
    try:
        return Property(prop)
    except ValueError:
        raise UsageError(f"unknown property {prop!r}") from None


def certify_1d(
    f: Callable,
    iv: Interval | tuple[float, float],
    prop: Property | str = Property.CONVEX_1D,
    s: Optional[float] = None,
    grid_n: int = DEFAULT_GRID_N,
    lambda_n: int = DEFAULT_LAMBDA_N,
    tol: float = DEFAULT_TOL,
) -> Certificate:
    """Check ``f(l u + (1 - l) v) <= l^s f(u) + (1 - l)^s f(v)`` on a grid.

    ``s`` is 1 for ``convex-1d``. Swapping ``u`` and ``v`` together with
    ``l -> 1 - l`` gives the same inequality and the weight grid is
    symmetric, so only pairs ``u < v`` are scanned.
    """
    prop = _as_prop(prop)
    if not prop.is_1d:
        raise UsageError(f"{prop.value} is not a one-dimensional property")
    if not isinstance(iv, Interval):
        iv = Interval(*iv)
    s = _check_s(prop, s)
    if prop.needs_s and iv.lo < 0:
        raise UsageError("s-convexity is only defined on [0, inf)")
    expo = 1.0 if s is None else s

    pts = _grid(iv.lo, iv.hi, grid_n)
    lam = lambda_grid(lambda_n)
    fp = np.asarray(f(pts), dtype=np.float64)
    i, j = _pairs(grid_n)
    u, v = pts[i][:, None], pts[j][:, None]
    combo = lam[None, :] * u + (1.0 - lam[None, :]) * v
    lhs = np.asarray(f(combo), dtype=np.float64)
    rhs = lam[None, :] ** expo * fp[i][:, None] + (1.0 - lam[None, :]) ** expo * fp[j][:, None]
    excess = (lhs - rhs) - tol * np.maximum(1.0, np.abs(rhs))
    samples = int(lhs.size)
    k = _first_worst(excess)
    if k is None:
        return Certificate(prop, "pass", samples, s)
    p, q = np.unravel_index(k, lhs.shape)
    witness = Witness(
        points=(float(u[p, 0]), float(v[p, 0])),
        weights=(float(lam[q]),),
        lhs=float(lhs[p, q]),
        rhs=float(rhs[p, q]),
        violation=float(lhs[p, q] - rhs[p, q]),
    )
    return Certificate(prop, "fail", samples, s, witness)


def _joint(f, r: Rect, expo: float, grid_n: int, lam: np.ndarray, tol: float):
    xs = _grid(r.a, r.b, grid_n)
    ys = _grid(r.c, r.d, grid_n)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    px, py = X.ravel(), Y.ravel()
    fp = np.asarray(f(px, py), dtype=np.float64)
    i, j = _pairs(px.size)
    l = lam[None, :]
    cx = l * px[i][:, None] + (1.0 - l) * px[j][:, None]
    cy = l * py[i][:, None] + (1.0 - l) * py[j][:, None]
    lhs = np.asarray(f(cx, cy), dtype=np.float64)
    rhs = l ** expo * fp[i][:, None] + (1.0 - l) ** expo * fp[j][:, None]
    excess = (lhs - rhs) - tol * np.maximum(1.0, np.abs(rhs))
    k = _first_worst(excess)
    if k is None:
        return int(lhs.size), None
    p, q = np.unravel_index(k, lhs.shape)
    witness = Witness(
        points=((float(px[i[p]]), float(py[i[p]])), (float(px[j[p]]), float(py[j[p]]))),
        weights=(float(lam[q]),),
        lhs=float(lhs[p, q]),
        rhs=float(rhs[p, q]),
        violation=float(lhs[p, q] - rhs[p, q]),
    )
    return int(lhs.size), witness


def _four_term(f, r: Rect, grid_n: int, lam: np.ndarray, tol: float):
    """Four-corner form: f(t x + (1-t) y, s u + (1-s) w) against the bilinear blend."""
    xs = _grid(r.a, r.b, grid_n)
    ys = _grid(r.c, r.d, grid_n)
    ix, jx = _pairs(grid_n)
    iy, jy = _pairs(grid_n)
    # axes: (x-pair, y-pair, t, s)
    x1 = xs[ix][:, None, None, None]
    x2 = xs[jx][:, None, None, None]
    u1 = ys[iy][None, :, None, None]
    u2 = ys[jy][None, :, None, None]
    t = lam[None, None, :, None]
    sw = lam[None, None, None, :]
    grid_vals = np.asarray(f(*np.meshgrid(xs, ys, indexing="ij")), dtype=np.float64)
    f11 = grid_vals[ix][:, iy][:, :, None, None]
    f12 = grid_vals[ix][:, jy][:, :, None, None]
    f21 = grid_vals[jx][:, iy][:, :, None, None]
    f22 = grid_vals[jx][:, jy][:, :, None, None]
    px = t * x1 + (1.0 - t) * x2
    py = sw * u1 + (1.0 - sw) * u2
    px, py = np.broadcast_arrays(px, py)
    lhs = np.asarray(f(px, py), dtype=np.float64)
    rhs = t * sw * f11 + t * (1.0 - sw) * f12 + sw * (1.0 - t) * f21 + (1.0 - t) * (1.0 - sw) * f22
    excess = (lhs - rhs) - tol * np.maximum(1.0, np.abs(rhs))
    k = _first_worst(excess)
    if k is None:
        return int(lhs.size), None
    a, b, c, d = np.unravel_index(k, lhs.shape)
    xa, xb = float(xs[ix[a]]), float(xs[jx[a]])
    ua, ub = float(ys[iy[b]]), float(ys[jy[b]])
    witness = Witness(
        points=((xa, ua), (xa, ub), (xb, ua), (xb, ub)),
        weights=(float(lam[c]), float(lam[d])),
        lhs=float(lhs[a, b, c, d]),
        rhs=float(rhs[a, b, c, d]),
        violation=float(lhs[a, b, c, d] - rhs[a, b, c, d]),
    )
    return int(lhs.size), witness


def _coord_slices(f, r: Rect, s: float, grid_n: int, lambda_n: int, tol: float):
    xs = _grid(r.a, r.b, grid_n)
    ys = _grid(r.c, r.d, grid_n)
    total = 0
    # fix y: t -> f(t, y0) on [a, b]; then fix x: t -> f(x0, t) on [c, d]
    for axis, values, iv in (("fix-y", ys, (r.a, r.b)), ("fix-x", xs, (r.c, r.d))):
        for v0 in values:
            if axis == "fix-y":
                part = lambda t, v0=float(v0): f(t, v0)
            else:
                part = lambda t, v0=float(v0): f(v0, t)
            cert = certify_1d(part, iv, Property.SCONVEX_1D, s, grid_n, lambda_n, tol)
            total += cert.samples_checked
            if not cert.passed:
                w = cert.witness
                if axis == "fix-y":
                    pts = tuple((p, float(v0)) for p in w.points)
                else:
                    pts = tuple((float(v0), p) for p in w.points)
                return total, Witness(pts, w.weights, w.lhs, w.rhs, w.violation)
    return total, None


def certify_2d(
    f: Callable,
    r: Rect | tuple,
    prop: Property | str = Property.COORD_CONVEX,
    s: Optional[float] = None,
    grid_n: int = DEFAULT_GRID_N,
    lambda_n: int = DEFAULT_LAMBDA_N,
    tol: float = DEFAULT_TOL,
) -> Certificate:
    """Certify a two-variable property on the rectangle ``r``.

    ``convex-on-delta`` and ``sconvex-on-delta`` test the joint two-point
    inequality over all pairs of grid points. ``coord-convex`` tests the
    four-corner inequality over all sub-rectangles with grid corners and all
    ``(t, s)`` weight pairs. ``coord-sconvex`` runs the 1-D s-convexity check
    on every grid slice in both directions and reports the first failing
    slice.
    """
    prop = _as_prop(prop)
    if prop.is_1d:
        raise UsageError(f"{prop.value} is a one-dimensional property")
    if not isinstance(r, Rect):
        r = Rect(*r)
    s = _check_s(prop, s)
    if prop.needs_s and (r.a < 0 or r.c < 0):
        raise UsageError("s-convexity is only defined on [0, inf)^2")
    lam = lambda_grid(lambda_n)
    if prop is Property.CONVEX_ON_DELTA:
        samples, witness = _joint(f, r, 1.0, grid_n, lam, tol)
    elif prop is Property.SCONVEX_ON_DELTA:
        samples, witness = _joint(f, r, s, grid_n, lam, tol)
    elif prop is Property.COORD_CONVEX:
        samples, witness = _four_term(f, r, grid_n, lam, tol)
    else:
        samples, witness = _coord_slices(f, r, s, grid_n, lambda_n, tol)
    status = "pass" if witness is None else "fail"
    return Certificate(prop, status, samples, s, witness)


def certify(f: Callable, domain, prop: Property | str, s: Optional[float] = None, **kwargs) -> Certificate:
    """Dispatch to :func:`certify_1d` or :func:`certify_2d` by property."""
    prop = _as_prop(prop)
    if prop.is_1d:
        return certify_1d(f, domain, prop, s, **kwargs)
    return certify_2d(f, domain, prop, s, **kwargs)
