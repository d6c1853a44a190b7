"""Rational functions and meromorphic 1-forms on the Riemann sphere."""
from __future__ import annotations

from dataclasses import dataclass


from ..tolerances import DEFAULT, Tolerances
from .poly import Poly, poly_gcd
from .roots import AmbiguousRoots, poly_roots
from .scalars import Ex, ZERO
from .sphere import INF, Divisor, is_inf

__all__ = [
    "RatFunc", "MeromorphicForm", "divisor_of_function", "divisor_of_form",
    "as_ratfunc", "z_", "DegenerateMoebius",
]


class DegenerateMoebius(ValueError):
    pass


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials.

    Exact mode reduces by the exact gcd and makes ``den`` monic.  Float mode
    cancels numerically common roots (within ``tol.match``).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, reduce: bool = True, tol: Tolerances = DEFAULT):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            num, den = _reduce(num, den, tol)
        self.num, self.den = num, den

    # -- construction helpers ---------------------------------------------
    @classmethod
    def const(cls, a):
        return cls(Poly([a]))

    @property
    def exact(self) -> bool:
        return self.num.exact and self.den.exact

    @property
    def degree(self) -> int:
        """Degree as a map of the sphere: max(deg num, deg den)."""
        if self.num.is_zero():
            return 0
        return max(self.num.degree, self.den.degree)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not constant")
        return self.num[0] / self.den[0] if not self.num.is_zero() else ZERO

    def to_float(self) -> "RatFunc":
        return RatFunc(self.num.to_float(), self.den.to_float(), reduce=False)

    # -- evaluation ---------------------------------------------------------
    def __call__(self, z):
        """Value at a sphere point; returns INF at poles."""
        if is_inf(z):
            dn, dd = self.num.degree, self.den.degree
            if self.num.is_zero() or dn < dd:
                return ZERO if self.exact else 0j
            if dn > dd:
                return INF
            return self.num.lead / self.den.lead
        d = self.den(z)
        if (d.is_zero() if type(d) is Ex else d == 0):
            return INF
        return self.num(z) / d

    def evalf(self, z):
        return self.num.evalf(z) / self.den.evalf(z)

    # -- arithmetic -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        return RatFunc(_as_poly(other), reduce=False)

    def __add__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(self.den ** (-e), self.num ** (-e))
        return RatFunc(self.num ** e, self.den ** e)

    def __eq__(self, other):
        o = self._lift(other)
        diff = self.num * o.den - o.num * self.den
        return diff.is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"

    # -- calculus & composition -------------------------------------------
    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def wronskian_poly(self) -> Poly:
        """num' den - num den' (its roots are the finite critical points)."""
        n, d = self.num, self.den
        return n.derivative() * d - n * d.derivative()

    def compose(self, h: "RatFunc") -> "RatFunc":
        """self o h, computed homogeneously."""
        h = self._lift(h)
        p, q = h.num, h.den
        D = max(self.num.degree, self.den.degree, 0)
        ppow = [Poly([1])]
        qpow = [Poly([1])]
        for _ in range(D):
            ppow.append(ppow[-1] * p)
            qpow.append(qpow[-1] * q)
        def hom(poly):
            out = Poly()
            for i, a in enumerate(poly.c):
                out = out + ppow[i] * qpow[D - i] * a
            return out
        return RatFunc(hom(self.num), hom(self.den))

    def moebius_postcompose(self, T) -> "RatFunc":
        """(a f + b) / (c f + d) for T = ((a, b), (c, d))."""
        (a, b), (c, d) = T
        det = a * d - b * c
        if (det.is_zero() if type(det) is Ex else abs(det) == 0):
            raise DegenerateMoebius("Moebius matrix has zero determinant")
        n, m = self.num, self.den
        return RatFunc(n * a + m * b, n * c + m * d)

    # -- local data ---------------------------------------------------------
    def order_at(self, p, tol: Tolerances = DEFAULT) -> int:
        """Order of zero (positive) or pole (negative) at a sphere point."""
        if self.is_zero():
            raise ValueError("order of the zero function")
        if is_inf(p):
            return self.den.degree - self.num.degree
        return self.num.order_at(p, tol.res) - self.den.order_at(p, tol.res)

    def value_multiplicity(self, p, tol: Tolerances = DEFAULT) -> int:
        """Local degree of the map at ``p`` (>= 1 for nonconstant f)."""
        v = self(p)
        if is_inf(v):
            return -self.order_at(p, tol)
        return (self - RatFunc.const(v)).order_at(p, tol)


def _reduce(num: Poly, den: Poly, tol: Tolerances):
    if num.is_zero():
        one = Poly([1]) if num.exact and den.exact else Poly([1.0])
        return num, one
    if num.exact and den.exact:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lead
        if lc != 1:
            inv = lc.inverse()
            num, den = num * inv, den * inv
        return num, den
    num, den = num.to_float(), den.to_float()
    if num.degree >= 1 and den.degree >= 1:
        try:
            nr, dr = list(poly_roots(num, tol)), list(poly_roots(den, tol))
        except AmbiguousRoots:
            nr = dr = []
        # cluster centres are accurate even for multiple roots; deflating by
        # them keeps the remaining roots as accurate as the input
        for r, m in dr:
            for s, k in nr:
                if abs(complex(r) - complex(s)) <= 1e3 * tol.root * max(1.0, abs(complex(r))):
                    c = (complex(r) + complex(s)) / 2
                    for _ in range(min(m, k)):
                        num, den = num.deflate(c)[0], den.deflate(c)[0]
                    break
    lc = den.lead
    return num * (1 / lc), den * (1 / lc)


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(_as_poly(x))


z_ = RatFunc(Poly([0, 1]))


def divisor_of_function(f: RatFunc, tol: Tolerances = DEFAULT) -> Divisor:
    """Zeros (positive) and poles (negative) including the point at infinity."""
    if f.is_zero():
        raise ValueError("divisor of the zero function is undefined")
    d = poly_roots(f.num, tol) - poly_roots(f.den, tol)
    o = f.den.degree - f.num.degree
    if o:
        d._add(INF, o)
    return d


@dataclass(frozen=True)
class MeromorphicForm:
    """The 1-form ``coeff(z) dz`` in the standard chart."""

    coeff: RatFunc

    def __post_init__(self):
        if not isinstance(self.coeff, RatFunc):
            object.__setattr__(self, "coeff", as_ratfunc(self.coeff))

    @property
    def exact(self):
        return self.coeff.exact

    def is_zero(self):
        return self.coeff.is_zero()

    def at_infinity(self) -> RatFunc:
        """Coefficient in the chart zeta = 1/z: f(1/zeta) * (-zeta**-2)."""
        inv = RatFunc(Poly([1]), Poly([0, 1]))
        return self.coeff.compose(inv) * RatFunc(Poly([-1]), Poly([0, 0, 1]))

    def order_at(self, p, tol: Tolerances = DEFAULT) -> int:
        if is_inf(p):
            return self.coeff.den.degree - self.coeff.num.degree - 2
        return self.coeff.order_at(p, tol)

    def __mul__(self, f):
        return MeromorphicForm(self.coeff * f)

    __rmul__ = __mul__

    def __add__(self, other: "MeromorphicForm"):
        return MeromorphicForm(self.coeff + other.coeff)

    def __sub__(self, other: "MeromorphicForm"):
        return MeromorphicForm(self.coeff - other.coeff)

    def __neg__(self):
        return MeromorphicForm(-self.coeff)

    def __eq__(self, other):
        return isinstance(other, MeromorphicForm) and self.coeff == other.coeff

    def __hash__(self):
        return hash(self.coeff)


def divisor_of_form(w: MeromorphicForm, tol: Tolerances = DEFAULT) -> Divisor:
    """Divisor of coeff*dz; the order at infinity uses dz = -zeta**-2 dzeta."""
    if w.is_zero():
        raise ValueError("divisor of the zero form is undefined")
    f = w.coeff
    d = poly_roots(f.num, tol) - poly_roots(f.den, tol)
    o = w.order_at(INF)
    if o:
        d._add(INF, o)
    return d
