"""Exact/float complex algebra on the Riemann sphere."""
from .scalars import Ex, I, ONE, ZERO, IncompatibleFields, field_sqrt
from .poly import Poly, Z, poly_gcd, poly_lcm
from .sphere import INF, Divisor, is_inf, same_point, fmt_point
from .roots import AmbiguousRoots, poly_roots, numeric_roots
from .rational import (
    DegenerateMoebius, MeromorphicForm, RatFunc, as_ratfunc, divisor_of_form,
    divisor_of_function, z_,
)
from .codec import SchemaError

__all__ = [
    "Ex", "I", "ONE", "ZERO", "IncompatibleFields", "field_sqrt",
    "Poly", "Z", "poly_gcd", "poly_lcm",
    "INF", "Divisor", "is_inf", "same_point", "fmt_point",
    "AmbiguousRoots", "poly_roots", "numeric_roots",
    "DegenerateMoebius", "MeromorphicForm", "RatFunc", "as_ratfunc",
    "divisor_of_form", "divisor_of_function", "z_", "SchemaError",
]
