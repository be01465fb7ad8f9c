"""Builtin closed-form function families with declared convexity properties.

Every family is declared on the square ``[0, 2]^2``. A declaration with
``holds=True`` is a claim that restricts to every sub-rectangle; for
s-properties it holds for every ``s`` in ``(0, s_max]``. A declaration with
``holds=False`` claims a violation on the full declared square for every
``s`` in ``(0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .convexity import Property
from .errors import UsageError
from .expr import ScalarFn, compile_expr
from .quad import Rect

__all__ = ["ParamSpec", "Declared", "FamilySpec", "FAMILY_DOMAIN", "list_families", "lookup", "instantiate"]

FAMILY_DOMAIN = Rect(0.0, 2.0, 0.0, 2.0)

_JOINT = (Property.CONVEX_ON_DELTA, Property.COORD_CONVEX, Property.SCONVEX_ON_DELTA, Property.COORD_SCONVEX)


@dataclass(frozen=True)
class ParamSpec:
    name: str
    lo: float
    hi: float
    default: float
    lo_open: bool = False

    def check(self, value: float) -> float:
        value = float(value)
        below = value <= self.lo if self.lo_open else value < self.lo
        if below or value > self.hi:
            left = "(" if self.lo_open else "["
            raise UsageError(f"parameter {self.name}={value!r} outside {left}{self.lo}, {self.hi}]")
        return value


@dataclass(frozen=True)
class Declared:
    prop: Property
    holds: bool
    s_max: Optional[float] = None


@dataclass(frozen=True)
class FamilySpec:
    name: str
    formula: str
    params: tuple[ParamSpec, ...]
    template: Callable[..., str]
    declare: Callable[..., tuple[Declared, ...]]
    domain: Rect = FAMILY_DOMAIN

    @property
    def defaults(self) -> tuple[float, ...]:
        return tuple(p.default for p in self.params)

    def check_params(self, params) -> tuple[float, ...]:
        params = tuple(params) if params is not None else self.defaults
        if len(params) != len(self.params):
            raise UsageError(f"family {self.name!r} takes {len(self.params)} parameter(s), got {len(params)}")
        return tuple(spec.check(v) for spec, v in zip(self.params, params))

    def instantiate(self, params=None) -> ScalarFn:
        return compile_expr(self.template(*self.check_params(params)))

    def declared(self, params=None) -> tuple[Declared, ...]:
        return self.declare(*self.check_params(params))

    def satisfies(self, prop: Property | str, s: Optional[float] = None, params=None) -> Optional[bool]:
        """True/False when declared for ``s``, None when the catalog makes no claim."""
        prop = Property(prop)
        for decl in self.declared(params):
            if decl.prop is not prop:
                continue
            if not decl.holds:
                return False
            if decl.s_max is None or (s is not None and s <= decl.s_max):
                return True
        return None


def _everything(*_):
    return tuple(Declared(p, True, 1.0 if p.needs_s else None) for p in _JOINT)


def _affine_props(alpha, beta, gamma):
    d = FAMILY_DOMAIN
    low = gamma + min(alpha * d.a, alpha * d.b) + min(beta * d.c, beta * d.d)
    props = [Declared(Property.CONVEX_ON_DELTA, True), Declared(Property.COORD_CONVEX, True)]
    if low >= 0:
        props += [Declared(Property.SCONVEX_ON_DELTA, True, 1.0), Declared(Property.COORD_SCONVEX, True, 1.0)]
    return tuple(props)


def _bilinear_props(*_):
    return (
        Declared(Property.COORD_CONVEX, True),
        Declared(Property.COORD_SCONVEX, True, 1.0),
        Declared(Property.CONVEX_ON_DELTA, False),
        Declared(Property.SCONVEX_ON_DELTA, False),
    )


def _power_props(p):
    return (
        Declared(Property.COORD_SCONVEX, True, p),
        Declared(Property.COORD_CONVEX, p == 1.0),
        Declared(Property.CONVEX_ON_DELTA, False),
        Declared(Property.SCONVEX_ON_DELTA, False),
    )


def _sum_power_props(p):
    return (
        Declared(Property.SCONVEX_ON_DELTA, True, p),
        Declared(Property.COORD_SCONVEX, True, p),
        Declared(Property.CONVEX_ON_DELTA, p == 1.0),
        Declared(Property.COORD_CONVEX, p == 1.0),
    )


_EXPONENT = ParamSpec("p", 0.0, 1.0, 0.5, lo_open=True)

_CATALOG = (
    FamilySpec("const", "c (c >= 0)", (ParamSpec("c", 0.0, 1e6, 1.0),),
               lambda c: repr(c), _everything),
    FamilySpec("affine", "alpha*x + beta*y + gamma",
               (ParamSpec("alpha", -10.0, 10.0, 1.0), ParamSpec("beta", -10.0, 10.0, 1.0),
                ParamSpec("gamma", -100.0, 100.0, 0.0)),
               lambda a, b, c: f"{a!r}*x + {b!r}*y + {c!r}", _affine_props),
    FamilySpec("square", "x^2 + y^2", (), lambda: "x^2 + y^2", _everything),
    FamilySpec("sumexp", "exp(x) + exp(y)", (), lambda: "exp(x) + exp(y)", _everything),
    FamilySpec("bilinear", "x*y", (), lambda: "x*y", _bilinear_props),
    FamilySpec("power-s", "(x*y)^p, 0 < p <= 1", (_EXPONENT,),
               lambda p: f"(x*y)^{p!r}", _power_props),
    FamilySpec("sum-power", "x^p + y^p, 0 < p <= 1", (_EXPONENT,),
               lambda p: f"x^{p!r} + y^{p!r}", _sum_power_props),
    FamilySpec("mixed", "x + y", (), lambda: "x + y", _everything),
)
_BY_NAME = {fam.name: fam for fam in _CATALOG}


def list_families() -> tuple[FamilySpec, ...]:
    return _CATALOG


def lookup(name: str) -> FamilySpec:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(_BY_NAME)}") from None


def instantiate(name: str, params=None) -> ScalarFn:
    """Build the ScalarFn for family ``name``; ``params=None`` uses defaults."""
    return lookup(name).instantiate(params)
