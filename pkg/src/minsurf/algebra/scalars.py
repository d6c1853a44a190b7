"""Exact scalars in Q(i)(sqrt m) and float fallbacks.

An :class:`Ex` is ``a + b*sqrt(m)`` with ``a``, ``b`` Gaussian rationals and
``m`` a squarefree integer >= 2 (``m`` is ``None`` when ``b == 0``).  Every
exact value in the package lives in one such field; mixing two different
``m`` raises ``IncompatibleFields``.

Float scalars are plain Python ``complex``.  An operation that mixes an
``Ex`` with a float/complex degrades to ``complex``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Ex", "I", "ZERO", "ONE", "IncompatibleFields", "as_exact", "is_exact",
    "is_zero", "to_complex", "parse_rational", "field_sqrt", "rational_sqrt",
    "squarefree_kernel", "snap_gaussian",
]


class IncompatibleFields(ValueError):
    pass


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` squarefree (``n > 0``)."""
    if n <= 0:
        raise ValueError("squarefree_kernel needs a positive integer")
    s, k = 1, 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            k *= d
        d += 1
    return s, k * n


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None``."""
    if q < 0:
        return None
    p, r = q.numerator, q.denominator
    sp, sr = math.isqrt(p), math.isqrt(r)
    if sp * sp == p and sr * sr == r:
        return Fraction(sp, sr)
    return None


def _merge_m(m1, m2):
    if m1 is None:
        return m2
    if m2 is None or m1 == m2:
        return m1
    raise IncompatibleFields(f"cannot combine sqrt({m1}) and sqrt({m2})")


def _gmul(x1, y1, x2, y2):
    return x1 * x2 - y1 * y2, x1 * y2 + y1 * x2


class Ex:
    """Element ``(ar + i*ai) + (br + i*bi)*sqrt(m)`` of Q(i)(sqrt m)."""

    __slots__ = ("ar", "ai", "br", "bi", "m")

    def __init__(self, ar=0, ai=0, br=0, bi=0, m=None):
        self.ar = ar if type(ar) is Fraction else Fraction(ar)
        self.ai = ai if type(ai) is Fraction else Fraction(ai)
        br = br if type(br) is Fraction else Fraction(br)
        bi = bi if type(bi) is Fraction else Fraction(bi)
        if br == 0 and bi == 0:
            m = None
        elif m is None:
            raise ValueError("sqrt part given without m")
        elif m < 2 or squarefree_kernel(m)[0] != 1:
            raise ValueError(f"m={m} must be a squarefree integer >= 2")
        self.br, self.bi, self.m = br, bi, m

    # -- construction -----------------------------------------------------
    @classmethod
    def gaussian(cls, re, im=0):
        return cls(re, im)

    @classmethod
    def sqrt_of(cls, n) -> "Ex":
        """sqrt(n) for a rational n (negative n gives i*sqrt(|n|))."""
        n = Fraction(n)
        neg = n < 0
        n = abs(n)
        # sqrt(p/q) = sqrt(p*q)/q
        s, k = squarefree_kernel(n.numerator * n.denominator)
        c = Fraction(s, n.denominator)
        if k == 1:
            return cls(0, c) if neg else cls(c)
        return cls(0, 0, 0, c, k) if neg else cls(0, 0, c, 0, k)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not (self.ar or self.ai or self.br or self.bi)

    def is_gaussian(self) -> bool:
        return self.m is None

    def is_real(self) -> bool:
        return self.ai == 0 and self.bi == 0

    def is_rational(self) -> bool:
        return self.m is None and self.ai == 0

    def real(self) -> "Ex":
        return Ex(self.ar, 0, self.br, 0, self.m)

    def imag(self) -> "Ex":
        return Ex(self.ai, 0, self.bi, 0, self.m)

    def conjugate(self) -> "Ex":
        return Ex(self.ar, -self.ai, self.br, -self.bi, self.m)

    def real_sign(self) -> int:
        """Sign of a real element, decided exactly."""
        if not self.is_real():
            raise ValueError("real_sign of a non-real element")
        a, b = self.ar, self.br
        if b == 0:
            return (a > 0) - (a < 0)
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == sb or sa == 0:
            return sb
        # a and b*sqrt(m) have opposite signs: compare squares
        d = a * a - b * b * self.m
        return sa if d > 0 else sb

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.ar

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return Ex(-self.ar, -self.ai, -self.br, -self.bi, self.m)

    def __pos__(self):
        return self

    def __add__(self, other):
        if type(other) is not Ex:
            if isinstance(other, (int, Fraction)):
                return Ex(self.ar + other, self.ai, self.br, self.bi, self.m)
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        m = _merge_m(self.m, other.m)
        return Ex(self.ar + other.ar, self.ai + other.ai,
                  self.br + other.br, self.bi + other.bi, m)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Ex:
            if isinstance(other, (int, Fraction)):
                return Ex(self.ar - other, self.ai, self.br, self.bi, self.m)
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        m = _merge_m(self.m, other.m)
        return Ex(self.ar - other.ar, self.ai - other.ai,
                  self.br - other.br, self.bi - other.bi, m)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is not Ex:
            if isinstance(other, (int, Fraction)):
                return Ex(self.ar * other, self.ai * other,
                          self.br * other, self.bi * other, self.m)
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        m = _merge_m(self.m, other.m)
        ar, ai = _gmul(self.ar, self.ai, other.ar, other.ai)
        if m is None:
            return Ex(ar, ai)
        br1, bi1 = _gmul(self.ar, self.ai, other.br, other.bi)
        br2, bi2 = _gmul(self.br, self.bi, other.ar, other.ai)
        cr, ci = _gmul(self.br, self.bi, other.br, other.bi)
        return Ex(ar + cr * m, ai + ci * m, br1 + br2, bi1 + bi2, m)

    __rmul__ = __mul__

    def inverse(self) -> "Ex":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        ar, ai = self.ar, self.ai
        if self.m is None:
            n = ar * ar + ai * ai
            return Ex(ar / n, -ai / n)
        # (a + b s)^-1 = (a - b s) / (a^2 - m b^2)
        a2r, a2i = _gmul(ar, ai, ar, ai)
        b2r, b2i = _gmul(self.br, self.bi, self.br, self.bi)
        nr, ni = a2r - self.m * b2r, a2i - self.m * b2i
        nn = nr * nr + ni * ni
        ir, ii = nr / nn, -ni / nn
        xr, xi = _gmul(ar, ai, ir, ii)
        yr, yi = _gmul(-self.br, -self.bi, ir, ii)
        return Ex(xr, xi, yr, yi, self.m)

    def __truediv__(self, other):
        if type(other) is not Ex:
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    raise ZeroDivisionError("division by zero")
                return Ex(self.ar / other, self.ai / other,
                          self.br / other, self.bi / other, self.m)
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Ex(other) * self.inverse()
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison / conversion ------------------------------------------
    def __eq__(self, other):
        if type(other) is Ex:
            return (self.ar == other.ar and self.ai == other.ai
                    and self.br == other.br and self.bi == other.bi
                    and (self.m == other.m or self.m is None))
        if isinstance(other, (int, Fraction)):
            return self.m is None and self.ai == 0 and self.ar == other
        return NotImplemented

    def __hash__(self):
        if self.m is None and self.ai == 0:
            return hash(self.ar)
        return hash((self.ar, self.ai, self.br, self.bi, self.m))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        s = math.sqrt(self.m) if self.m else 0.0
        return complex(float(self.ar) + float(self.br) * s,
                       float(self.ai) + float(self.bi) * s)

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"Ex({self})"

    def __str__(self):
        def g(r, i):
            if i == 0:
                return str(r)
            if r == 0:
                return f"{i}i"
            return f"({r}{'+' if i > 0 else '-'}{abs(i)}i)"
        if self.m is None:
            return g(self.ar, self.ai)
        b = g(self.br, self.bi)
        sign, b = ("-", b[1:]) if b.startswith("-") else ("+", b)
        root = f"sqrt({self.m})" if b == "1" else f"{b}*sqrt({self.m})"
        if self.ar == 0 and self.ai == 0:
            return root if sign == "+" else f"-{root}"
        return f"{g(self.ar, self.ai)}{sign}{root}"


ZERO = Ex(0)
ONE = Ex(1)
I = Ex(0, 1)


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"``, an int, or a Fraction; floats are rejected."""
    if isinstance(s, bool):
        raise TypeError("bool is not a rational")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"not an exact rational: {s!r}")


def is_exact(x) -> bool:
    return isinstance(x, (Ex, int, Fraction)) and not isinstance(x, bool)


def as_exact(x) -> Ex:
    if type(x) is Ex:
        return x
    if isinstance(x, (int, Fraction)):
        return Ex(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def to_complex(x) -> complex:
    return complex(x)


def is_zero(x, tol: float = 0.0) -> bool:
    if type(x) is Ex:
        return x.is_zero()
    if isinstance(x, Rational):
        return x == 0
    return abs(x) <= tol


def _gauss_sqrt(x: Fraction, y: Fraction):
    """Gaussian-rational square root of x + iy, or None."""
    if y == 0:
        r = rational_sqrt(abs(x))
        if r is None:
            return None
        return (r, Fraction(0)) if x >= 0 else (Fraction(0), r)
    n = rational_sqrt(x * x + y * y)
    if n is None:
        return None
    re = rational_sqrt((n + x) / 2)
    im = rational_sqrt((n - x) / 2)
    if re is None or im is None:
        return None
    if y < 0:
        im = -im
    return re, im


def field_sqrt(d: Ex, m: int | None = None) -> Ex | None:
    """An exact square root of ``d`` inside some Q(i)(sqrt m'), or None.

    ``d`` must be Gaussian.  When ``m`` is given only Q(i)(sqrt m) is tried.
    """
    if not d.is_gaussian():
        return None
    x, y = d.ar, d.ai
    g = _gauss_sqrt(x, y)
    if g is not None:
        return Ex(*g)
    # d = t^2 m'  =>  |d| = |t|^2 m' is rational
    n = rational_sqrt(x * x + y * y)
    if n is None:
        return None
    if m is not None:
        cands = [m]
    else:
        _, k = squarefree_kernel(n.numerator * n.denominator)
        cands = [c for c in range(2, k + 1) if k % c == 0 and squarefree_kernel(c)[0] == 1]
    for c in cands:
        t = _gauss_sqrt(x / c, y / c)
        if t is not None:
            return Ex(0, 0, t[0], t[1], c)
    return None


def snap_gaussian(z: complex, max_den: int, rtol: float = 1e-9) -> Ex | None:
    """Closest Gaussian rational with denominators <= max_den, if within rtol."""
    scale = max(1.0, abs(z))
    re = Fraction(z.real).limit_denominator(max_den)
    im = Fraction(z.imag).limit_denominator(max_den)
    if abs(complex(float(re), float(im)) - z) > rtol * scale:
        return None
    return Ex(re, im)
