"""Numerical verification of Hadamard-type inequalities for products of
convex and s-convex functions on rectangles."""

from .bounds import CornerSums, InequalityReport, corner_sums, evaluate
from .convexity import Certificate, Property, Witness, certify, certify_1d, certify_2d
from .errors import (
    ArityError, DomainError, HadamardError, NumericalFailure, ParseError, UnknownIdentifierError, UsageError,
)
from .expr import ScalarFn, compile_expr, evaluate as eval_expr, parse, slice_fn, to_source
from .families import instantiate, list_families, lookup
from .quad import Interval, QuadResult, Rect, integrate_1d, integrate_2d, riemann_2d
from .special import beta, gamma, log_gamma

__version__ = "0.1.0"
