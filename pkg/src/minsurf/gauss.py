"""Value distribution of a rational Gauss map on a punctured sphere.

Multiplicities are read off the branch divisor only; values are never
sampled.  Preimages lying at punctures are excluded from the "totally
ramified" test and from the minimum multiplicity (the definitions concern g
on M).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import INF, Divisor, Ex, RatFunc, is_inf, poly_roots, same_point
from .algebra.codec import encode_point
from .tolerances import DEFAULT, Tolerances
from .weierstrass import PuncturedSphere, WData4, WDataN


class FlatGaussMap(ValueError):
    def __init__(self):
        super().__init__("flat: constant Gauss map")


def degree(g: RatFunc) -> int:
    if g.is_constant():
        raise FlatGaussMap()
    return g.degree


def ramification_at_infinity(g: RatFunc) -> int:
    """Local degree e_inf of g at z = inf."""
    dn, dd = g.num.degree, g.den.degree
    if dn != dd:
        return abs(dn - dd)
    c = g.num.lead / g.den.lead
    return dd - (g.num - g.den * c).degree


def branch_divisor(g: RatFunc, tol: Tolerances = DEFAULT) -> Divisor:
    """Sum of (e_p - 1) p over the critical points of g on the sphere."""
    degree(g)
    w = g.wronskian_poly()
    out = poly_roots(w, tol) if not w.is_zero() else Divisor(tol=tol.match)
    e = ramification_at_infinity(g)
    if e > 1:
        out._add(INF, e - 1)
    return out


def preimages(g: RatFunc, c, tol: Tolerances = DEFAULT) -> Divisor:
    """g^{-1}(c) with multiplicities, by solving (used as an oracle)."""
    if is_inf(c):
        d = Divisor(tol=tol.match)
        for p, m in poly_roots(g.den, tol):
            d._add(p, m)
        if g.num.degree > g.den.degree:
            d._add(INF, g.num.degree - g.den.degree)
        return d
    q = g.num - g.den * c
    d = poly_roots(q, tol) if not q.is_zero() else Divisor(tol=tol.match)
    extra = g.degree - max(q.degree, 0)
    if extra > 0:
        d._add(INF, extra)
    return d


def _same_value(a, b, tol):
    return same_point(a, b, tol.match)


@dataclass
class RamificationProfile:
    d: int
    G: int
    k: int
    exceptional: list
    totally_ramified: list          # (value, nu_j)
    l: int
    n_g: int
    branch: Divisor
    counting: list = field(default_factory=list)  # (value, #preimages in M, nu_j)

    @property
    def D_g(self) -> int:
        return len(self.exceptional)

    @property
    def l0(self) -> int:
        return len(self.totally_ramified)

    @property
    def nu_g(self) -> Fraction:
        return self.D_g + sum((1 - Fraction(1, nu) for _, nu in self.totally_ramified), Fraction(0))

    def riemann_hurwitz_ok(self) -> bool:
        return self.n_g == 2 * (self.d + self.G - 1)

    def counting_ok(self) -> bool:
        return all(cnt * nu <= self.d for _, cnt, nu in self.counting)

    def to_json(self):
        return {
            "d": self.d, "G": self.G, "k": self.k,
            "exceptional": [encode_point(a) for a in self.exceptional], "D_g": self.D_g,
            "totally_ramified": [[encode_point(b), nu] for b, nu in self.totally_ramified],
            "l": self.l, "l0": self.l0, "n_g": self.n_g, "nu_g": _frac(self.nu_g),
            "branch_divisor": self.branch.to_json(),
            "riemann_hurwitz": self.riemann_hurwitz_ok(),
        }


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _value_at(g: RatFunc, p, tol: Tolerances):
    """g(p), reading a float point on a pole of g as infinity."""
    if is_inf(p) or type(p) is Ex:
        return g(p)
    return INF if g.order_at(p, tol) < 0 else g(p)


class _ValueTable:
    """Critical data of g grouped by value."""

    def __init__(self, g: RatFunc, dom: PuncturedSphere, tol: Tolerances):
        self.g, self.dom, self.tol = g, dom, tol
        self.d = degree(g)
        self.branch = branch_divisor(g, tol)
        self.crit = [(p, m + 1, _value_at(g, p, tol)) for p, m in self.branch]
        self.punct_vals = [(p, _value_at(g, p, tol)) for p in dom.punctures]

    def fibre(self, b):
        """(critical preimages [(p, e)], number of simple preimages in M)."""
        cps = [(p, e) for p, e, v in self.crit if _same_value(v, b, self.tol)]
        simple = self.d - sum(e for _, e in cps)
        crit_pts = [p for p, _ in cps]
        simple_at_punct = sum(
            1 for p, v in self.punct_vals
            if _same_value(v, b, self.tol) and not any(same_point(p, q, self.tol.match) for q in crit_pts))
        return cps, simple - simple_at_punct

    def in_M(self, cps):
        return [(p, e) for p, e in cps if self.dom.contains(p)]


def _dedup(vals, tol):
    out = []
    for v in vals:
        if not any(_same_value(v, w, tol) for w in out):
            out.append(v)
    return out


def exceptional_values(g: RatFunc, dom: PuncturedSphere, tol: Tolerances = DEFAULT, _t=None):
    """Values omitted on M; candidates are the values at punctures."""
    dom.require_genus0()
    t = _t or _ValueTable(g, dom, tol)
    out = []
    for a in _dedup([v for _, v in t.punct_vals], tol):
        cps, simple_in_m = t.fibre(a)
        if simple_in_m == 0 and not t.in_M(cps):
            out.append(a)
    return out


def ramification_profile(g: RatFunc, dom: PuncturedSphere, tol: Tolerances = DEFAULT) -> RamificationProfile:
    dom.require_genus0()
    t = _ValueTable(g, dom, tol)
    exc = exceptional_values(g, dom, tol, t)
    tr, counting, l = [], [], 0
    for b in _dedup([v for _, _, v in t.crit], tol):
        if any(_same_value(b, a, tol) for a in exc):
            continue
        cps, simple_in_m = t.fibre(b)
        cm = t.in_M(cps)
        if not cm:
            continue
        l += 1
        if simple_in_m == 0:
            nu = min(e for _, e in cm)
            tr.append((b, nu))
            counting.append((b, len(cm), nu))
    return RamificationProfile(
        d=t.d, G=dom.genus, k=dom.k, exceptional=exc, totally_ramified=tr, l=l,
        n_g=t.branch.degree(), branch=t.branch, counting=counting)


def profile(d, tol: Tolerances = DEFAULT):
    """Profiles of every nonconstant Gauss-map component (None for constants)."""
    if isinstance(d, WDataN):
        raise TypeError("R^n data has a curve-valued Gauss map; see projective_curves")
    if d.is_flat():
        raise FlatGaussMap()
    return [None if g.is_constant() else ramification_profile(g, d.domain, tol) for g in d.gauss_maps()]


def profile_r4(d: WData4, tol: Tolerances = DEFAULT):
    p1, p2 = profile(d, tol)
    return {"g1": p1, "g2": p2, "g1_constant": p1 is None, "g2_constant": p2 is None}
