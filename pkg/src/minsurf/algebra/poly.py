"""Univariate polynomials over exact Q(i)(sqrt m) or over complex floats."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import numpy as np

from .scalars import Ex, ZERO, IncompatibleFields

__all__ = ["Poly", "Z", "poly_gcd", "poly_lcm"]


def _coerce(x):
    if type(x) is Ex:
        return x
    if isinstance(x, bool):
        raise TypeError("bool coefficient")
    if isinstance(x, (int, Fraction)):
        return Ex(x)
    if isinstance(x, (float, complex, np.floating, np.complexfloating)):
        return complex(x)
    raise TypeError(f"bad coefficient {x!r}")


class Poly:
    """Polynomial with ascending coefficients, trailing zeros stripped.

    A polynomial is *exact* when every coefficient is an :class:`Ex`; a single
    float coefficient turns the whole polynomial into float mode.
    """

    __slots__ = ("c", "exact")

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Poly):
            self.c, self.exact = coeffs.c, coeffs.exact
            return
        cs = [_coerce(x) for x in coeffs]
        exact = all(type(x) is Ex for x in cs)
        if not exact:
            cs = [complex(x) for x in cs]
            while cs and cs[-1] == 0:
                cs.pop()
        else:
            while cs and cs[-1].is_zero():
                cs.pop()
        self.c = tuple(cs)
        self.exact = exact

    @classmethod
    def const(cls, a):
        return cls([a])

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # -- basic properties --------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    @property
    def lead(self):
        return self.c[-1] if self.c else ZERO

    @property
    def field_m(self):
        if not self.exact:
            return None
        ms = {x.m for x in self.c if x.m is not None}
        if len(ms) > 1:
            raise IncompatibleFields(str(ms))
        return ms.pop() if ms else None

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        if 0 <= i < len(self.c):
            return self.c[i]
        return ZERO if self.exact else 0j

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"

    def to_float(self) -> "Poly":
        return Poly([complex(x) for x in self.c]) if self.exact else self

    def coeffs_complex(self) -> np.ndarray:
        return np.array([complex(x) for x in self.c], dtype=complex)

    def norm1(self) -> float:
        return float(sum(abs(complex(x)) for x in self.c))

    # -- arithmetic --------------------------------------------------------
    def _zero(self):
        return ZERO if self.exact else 0j

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = _coerce(other)
            return Poly([x * other for x in self.c])
        if not self.c or not other.c:
            return Poly()
        exact = self.exact and other.exact
        z = ZERO if exact else 0j
        out = [z] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(other.c):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, a):
        return self * a

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dl = other.c[-1]
        inv = dl.inverse() if type(dl) is Ex else 1 / dl
        dd = other.degree
        if len(rem) - 1 < dd:
            return Poly(), Poly(rem)
        q = [self._zero()] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            coef = rem[k + dd] * inv
            q[k] = coef
            if coef:
                for j, y in enumerate(other.c):
                    rem[k + j] = rem[k + j] - coef * y
            rem[k + dd] = self._zero() if not isinstance(coef, complex) else 0j
        return Poly(q), Poly(rem[:dd])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.c[-1]
        inv = lc.inverse() if type(lc) is Ex else 1 / lc
        return self * inv

    # -- evaluation & calculus --------------------------------------------
    def __call__(self, x):
        acc = self._zero()
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def evalf(self, x):
        """Vectorised float evaluation (numpy array or scalar)."""
        cs = self.coeffs_complex()
        if cs.size == 0:
            return np.zeros_like(np.asarray(x, dtype=complex))
        return np.polyval(cs[::-1], x)

    def derivative(self) -> "Poly":
        return Poly([x * i for i, x in enumerate(self.c)][1:])

    def compose(self, q: "Poly") -> "Poly":
        out = Poly()
        for a in reversed(self.c):
            out = out * q + Poly([a])
        return out

    def taylor_shift(self, p) -> "Poly":
        """Coefficients of P(z + p)."""
        return self.compose(Poly([p, 1]))

    def reversed(self, n: int | None = None) -> "Poly":
        """``z**n * P(1/z)`` with ``n`` defaulting to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        cs = list(self.c) + [self._zero()] * (n + 1 - len(self.c))
        return Poly(cs[::-1])

    def deflate(self, p):
        """Synthetic division by (z - p): returns (quotient, remainder)."""
        if not self.c:
            return Poly(), self._zero()
        n = len(self.c)
        q = [self._zero()] * (n - 1)
        acc = self.c[-1]
        for k in range(n - 2, -1, -1):
            q[k] = acc
            acc = self.c[k] + acc * p
        return Poly(q), acc

    def order_at(self, p, tol: float = 1e-8) -> int:
        """Vanishing order at a finite point.

        Exact points use repeated exact deflation.  Float points count how
        many successive derivatives vanish relative to their coefficient size.
        """
        if self.is_zero():
            raise ValueError("order of the zero polynomial")
        if self.exact and type(p) is Ex:
            try:
                k, q = 0, self
                while True:
                    q2, r = q.deflate(p)
                    if not r.is_zero():
                        return k
                    k, q = k + 1, q2
            except IncompatibleFields:
                pass  # coefficients and point in different quadratic fields
        q = self.to_float()
        z = complex(p)
        scale = max(1.0, abs(z))
        k = 0
        while q.degree >= 0:
            v = abs(q(z))
            ref = sum(abs(c) * scale ** i for i, c in enumerate(q.c))
            if v > tol * ref:
                return k
            q = q.derivative()
            k += 1
        return k

    # -- gcd machinery ------------------------------------------------------
    def gcd(self, other: "Poly") -> "Poly":
        return poly_gcd(self, other)

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (factor, multiplicity), factors monic."""
        if not self.exact:
            raise ValueError("square-free decomposition needs exact coefficients")
        if self.degree < 1:
            return []
        f = self.monic()
        out = []
        fp = f.derivative()
        a = poly_gcd(f, fp)
        b = f.exact_div(a)
        c = fp.exact_div(a)
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            a = poly_gcd(b, d)
            if a.degree > 0:
                out.append((a, i))
            b = b.exact_div(a)
            c = d.exact_div(a)
            d = c - b.derivative()
            i += 1
        return out

    def integer_content_bound(self) -> int:
        """Bound on denominators of Gaussian-rational roots (norm of lead after clearing)."""
        if not self.exact or self.field_m is not None:
            return 10_000
        den = 1
        for x in self.c:
            den = math.lcm(den, x.ar.denominator, x.ai.denominator)
        lr, li = self.c[-1].ar * den, self.c[-1].ai * den
        n = int(lr * lr + li * li)
        return max(1, min(n, 10**8))


Z = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the exact field."""
    if not (a.exact and b.exact):
        raise ValueError("exact gcd requested for float polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_lcm(polys) -> Poly:
    def lcm2(a, b):
        return (a * b).exact_div(poly_gcd(a, b)).monic()
    return reduce(lcm2, polys, Poly([1]))
