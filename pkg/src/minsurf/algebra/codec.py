"""JSON encoding of scalars, points, polynomials and rational functions.

Scalars are ``[re, im]`` pairs.  Exact rationals travel as ``"p/q"`` strings
(JSON integers are also read as exact), floats as JSON numbers.  Elements of
Q(i)(sqrt m) use ``{"a": [re, im], "b": [re, im], "m": m}`` meaning
``a + b*sqrt(m)``.  The point at infinity is the token ``"inf"``.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly
from .rational import MeromorphicForm, RatFunc
from .scalars import Ex
from .sphere import INF

__all__ = [
    "SchemaError", "encode_scalar", "decode_scalar", "encode_point", "decode_point",
    "encode_poly", "decode_poly", "encode_ratfunc", "decode_ratfunc",
]


class SchemaError(ValueError):
    """Malformed JSON input."""


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _dec_real(x):
    if isinstance(x, bool):
        raise SchemaError("boolean where a number was expected")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"bad rational {x!r}") from e
    raise SchemaError(f"bad real component {x!r}")


def encode_scalar(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        x = Ex(x)
    if type(x) is Ex:
        a = [_frac_str(x.ar), _frac_str(x.ai)]
        if x.m is None:
            return a
        return {"a": a, "b": [_frac_str(x.br), _frac_str(x.bi)], "m": x.m}
    z = complex(x)
    return [z.real, z.imag]


def _pair(v):
    if isinstance(v, (int, float, str)) and not isinstance(v, bool):
        v = [v, 0]
    if not isinstance(v, list) or len(v) != 2:
        raise SchemaError(f"expected [re, im], got {v!r}")
    re, im = _dec_real(v[0]), _dec_real(v[1])
    if isinstance(re, float) or isinstance(im, float):
        return complex(float(re), float(im))
    return Ex(re, im)


def decode_scalar(v):
    if isinstance(v, dict):
        try:
            a, b, m = _pair(v["a"]), _pair(v.get("b", [0, 0])), int(v["m"])
        except KeyError as e:
            raise SchemaError(f"quadratic scalar missing key {e}") from e
        if isinstance(a, complex) or isinstance(b, complex):
            return a + b * (m ** 0.5)
        try:
            return Ex(a.ar, a.ai, b.ar, b.ai, m)
        except ValueError as e:
            raise SchemaError(str(e)) from e
    return _pair(v)


def encode_point(p):
    return "inf" if p is INF else encode_scalar(p)


def decode_point(v):
    if v == "inf":
        return INF
    return decode_scalar(v)


def encode_poly(p: Poly):
    return [encode_scalar(c) for c in p.c]


def decode_poly(v) -> Poly:
    if not isinstance(v, list):
        raise SchemaError(f"polynomial must be a coefficient list, got {v!r}")
    return Poly([decode_scalar(c) for c in v])


def encode_ratfunc(f: RatFunc):
    return {"num": encode_poly(f.num), "den": encode_poly(f.den)}


def decode_ratfunc(v) -> RatFunc:
    """Accepts ``{"num": [...], "den": [...]}`` or a bare coefficient list."""
    if isinstance(v, list):
        return RatFunc(decode_poly(v))
    if not isinstance(v, dict) or "num" not in v:
        raise SchemaError(f"rational function needs 'num' (and optional 'den'): {v!r}")
    den = decode_poly(v.get("den", [1]))
    if den.is_zero():
        raise SchemaError("zero denominator")
    return RatFunc(decode_poly(v["num"]), den)


def encode_form(w: MeromorphicForm):
    return encode_ratfunc(w.coeff)


def decode_form(v) -> MeromorphicForm:
    return MeromorphicForm(decode_ratfunc(v))
