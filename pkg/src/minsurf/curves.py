"""Rational curves P^1 -> P^n: order sequences, Pluecker audits, hyperplanes.

Stationary totals are computed by three independent routes:

* pointwise order sequences at the zeros of the full Wronskian and at inf;
* degrees of the gcds of the (i+1)-minors of the Wronskian matrix, whose
  second differences are the totals;
* degrees of the reduced associated curves, through the Pluecker recursion
  ``d_{i-1} - 2 d_i + d_{i+1} = 2(G-1) - sigma_i``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import mpmath
import numpy as np

from .algebra import INF, Divisor, Ex, I, MeromorphicForm, Poly, is_inf, poly_gcd, poly_roots, same_point
from .algebra.codec import SchemaError, decode_poly, decode_scalar, encode_point, encode_poly, encode_scalar
from .algebra.linalg import det_nonzero, rank, reduce_mod_p, rref, solve_left
from .algebra.poly import poly_lcm
from .algebra.roots import isolate_exact_roots
from .theorems import Check, RatioR, TheoremReport
from .tolerances import DEFAULT, Tolerances
from .weierstrass import PuncturedSphere, WDataN, end_orders


class DegenerateCurve(ValueError):
    pass


class NotGeneralPosition(ValueError):
    pass


class CurveInHyperplane(ValueError):
    def __init__(self):
        super().__init__("curve lies in H: the section is identically zero")


def _zero_of(p: Poly):
    return Ex(0) if p.exact else 0j


@dataclass(frozen=True)
class ProjectiveCurve:
    """Reduced polynomial representation (f_0 : ... : f_n)."""

    components: tuple

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Poly) else Poly(c) for c in self.components)
        if all(c.is_zero() for c in comps):
            raise ValueError("all components zero")
        if all(c.exact for c in comps):
            g = reduce(poly_gcd, [c for c in comps if not c.is_zero()])
            if g.degree > 0:
                comps = tuple(c.exact_div(g) for c in comps)
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.components)

    @property
    def deg(self) -> int:
        return max(c.degree for c in self.components)

    def coefficient_rows(self):
        D = self.deg
        return [[c[i] for i in range(D + 1)] for c in self.components]

    def section(self, a) -> Poly:
        """L(f) = sum a_i f_i."""
        out = Poly()
        for ai, c in zip(a, self.components):
            out = out + c * ai
        return out

    def to_json(self):
        return {"components": [encode_poly(c) for c in self.components]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "components" not in obj:
            raise SchemaError("curve JSON needs 'components'")
        return cls(tuple(decode_poly(c) for c in obj["components"]))


def curve_from_forms(phis) -> ProjectiveCurve:
    """Gauss-map curve [phi_1 : ... : phi_n] cleared to coprime polynomials."""
    fs = [p.coeff if isinstance(p, MeromorphicForm) else p for p in phis]
    exact = all(f.exact for f in fs)
    if exact:
        L = poly_lcm([f.den for f in fs])
        comps = [f.num * L.exact_div(f.den) for f in fs]
    else:
        dens = [f.den for f in fs]
        comps = []
        for i, f in enumerate(fs):
            c = f.num
            for j, dj in enumerate(dens):
                if j != i:
                    c = c * dj
            comps.append(c)
    return ProjectiveCurve(tuple(comps))


# -- span ---------------------------------------------------------------------

def span_dimension(f: ProjectiveCurve) -> int:
    return rank(f.coefficient_rows()) - 1


def is_constant(f: ProjectiveCurve) -> bool:
    return span_dimension(f) == 0


@dataclass(frozen=True)
class Restriction:
    curve: ProjectiveCurve      # (b_0 : ... : b_r), nondegenerate in P^r
    C: tuple                    # f_i = sum_j C[i][j] b_j

    def restrict_hyperplane(self, a):
        """a . f = (a^T C) . b"""
        r1 = len(self.C[0])
        return [sum((a[i] * self.C[i][j] for i in range(len(a))), Ex(0)) for j in range(r1)]


def restrict_to_span(f: ProjectiveCurve) -> Restriction:
    if not f.exact:
        raise DegenerateCurve("span restriction needs exact coefficients")
    rows = f.coefficient_rows()
    red, piv = rref(rows)
    basis = tuple(Poly(r) for r in red)
    C = tuple(tuple(row[p] for p in piv) for row in rows)
    return Restriction(ProjectiveCurve(basis), C)


# -- order sequences ------------------------------------------------------------

@dataclass(frozen=True)
class OrderSequence:
    point: object
    delta: tuple

    @property
    def stationary(self) -> tuple:
        d = self.delta
        return tuple(d[i + 1] - d[i] - 1 for i in range(len(d) - 1))

    def S(self, i: int) -> int:
        """sum_{j <= i} (delta_j - j): vanishing order of f ^ f' ^ ... ^ f^(i)."""
        return sum(self.delta[j] - j for j in range(i + 1))

    def to_json(self):
        return {"point": encode_point(self.point), "delta": list(self.delta),
                "stationary": list(self.stationary)}


def _local_components(f: ProjectiveCurve, p):
    if is_inf(p):
        D = f.deg
        return [c.reversed(D) for c in f.components]
    return [c.taylor_shift(p) for c in f.components]


def order_sequence(f: ProjectiveCurve, p, rtol: float = 1e-7) -> OrderSequence:
    """Column indices where the rank of the Taylor matrix increases.

    Exact points use exact elimination.  At float points each Taylor column is
    tested against the span of the earlier ones relative to the matrix scale.
    """
    loc = _local_components(f, p)
    depth = f.deg + len(loc) + 1
    cols = [[c[j] for c in loc] for j in range(depth)]
    target = len(loc)
    deltas = []
    if all(type(x) is Ex for col in cols for x in col):
        prev = 0
        for j in range(depth):
            rk = rank([[col[i] for col in cols[: j + 1]] for i in range(len(loc))])
            if rk > prev:
                deltas.append(j)
                prev = rk
                if rk == target:
                    break
        return OrderSequence(p, tuple(deltas))
    m = np.array([[complex(x) for x in col] for col in cols])
    scale = max(np.abs(m).max(), 1e-300)
    basis = np.zeros((0, len(loc)), dtype=complex)
    for j in range(depth):
        v = m[j]
        r = v - basis.T @ (basis.conj() @ v)
        r = r - basis.T @ (basis.conj() @ r)
        if np.linalg.norm(r) > rtol * scale:
            deltas.append(j)
            basis = np.vstack([basis, r / np.linalg.norm(r)])
            if len(deltas) == target:
                break
    return OrderSequence(p, tuple(deltas))


_DPS = 60


def _to_mp(x: Ex):
    re = mpmath.mpf(x.ar.numerator) / x.ar.denominator
    im = mpmath.mpf(x.ai.numerator) / x.ai.denominator
    z = mpmath.mpc(re, im)
    if x.m is not None:
        z += mpmath.sqrt(x.m) * mpmath.mpc(mpmath.mpf(x.br.numerator) / x.br.denominator,
                                           mpmath.mpf(x.bi.numerator) / x.bi.denominator)
    return z


def _refine_root(fac: Poly, r: complex):
    """Newton-polish a float root of an exact square-free factor to high precision."""
    with mpmath.workdps(_DPS):
        cs = [_to_mp(c) for c in fac.c][::-1]
        ds = [c * k for c, k in zip(cs[:-1], range(len(cs) - 1, 0, -1))]
        z = mpmath.mpc(r)
        for _ in range(200):
            dz = mpmath.polyval(cs, z) / mpmath.polyval(ds, z)
            z -= dz
            if abs(dz) <= mpmath.mpf(10) ** (8 - _DPS) * max(1, abs(z)):
                break
        return z


def _order_sequence_mp(f: ProjectiveCurve, z) -> OrderSequence:
    """Order sequence at a high-precision point, Gram-Schmidt on Taylor columns."""
    with mpmath.workdps(_DPS):
        loc = []
        for c in f.components:
            cs = [_to_mp(x) for x in c.c]
            taylor = []
            while cs:
                # synthetic division by (t - z): remainder is the next Taylor coefficient
                q, acc = [], mpmath.mpc(0)
                for a in reversed(cs):
                    acc = acc * z + a
                    q.append(acc)
                taylor.append(q.pop())
                cs = q[::-1]
            loc.append(taylor)
        depth = f.deg + len(loc) + 1
        cols = [[t[j] if j < len(t) else mpmath.mpc(0) for t in loc] for j in range(depth)]
        tol = mpmath.mpf(10) ** (-_DPS // 2)
        norm = lambda v: mpmath.sqrt(sum(abs(x) ** 2 for x in v))
        ref = max(norm(v) for v in cols)
        basis, deltas = [], []
        for j, v in enumerate(cols):
            r = list(v)
            for _ in range(2):
                for b in basis:
                    c = sum(mpmath.conj(bi) * ri for bi, ri in zip(b, r))
                    r = [ri - c * bi for ri, bi in zip(r, b)]
            nr = norm(r)
            if nr > tol * ref:
                deltas.append(j)
                basis.append([x / nr for x in r])
                if len(deltas) == len(loc):
                    break
    return OrderSequence(complex(z), tuple(deltas))


def _stationary_candidates(f: ProjectiveCurve, W: Poly) -> list:
    """Order sequences at every root of the Wronskian and at infinity."""
    seqs = []
    for fac, _ in W.squarefree_decomposition():
        for r in isolate_exact_roots(fac):
            if type(r) is Ex:
                seqs.append(order_sequence(f, r))
            else:
                seqs.append(_order_sequence_mp(f, _refine_root(fac, r)))
    seqs.append(order_sequence(f, INF))
    return seqs


# -- Wronskians -------------------------------------------------------------------

def _poly_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    out = Poly()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        t = m[0][j] * _poly_det(minor)
        out = out + t if j % 2 == 0 else out - t
    return out


def _derivs(c: Poly, k: int):
    out = [c]
    for _ in range(k):
        out.append(out[-1].derivative())
    return out


def wronskian_minors(f: ProjectiveCurve, i: int):
    """All (i+1)-minors of the matrix [f_a^(b)], rows a, columns b = 0..i."""
    ders = [_derivs(c, i) for c in f.components]
    return [_poly_det([ders[a] for a in rows]) for rows in itertools.combinations(range(len(ders)), i + 1)]


def full_wronskian(f: ProjectiveCurve) -> Poly:
    return _poly_det([_derivs(c, f.n) for c in f.components])


def _gcd_all(polys):
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        return None
    return reduce(poly_gcd, nz)


@dataclass
class StationaryReport:
    r: int
    deg: int
    G: int
    sigma_pointwise: list
    sigma_minors: list
    sigma_assoc: list
    assoc_deg: list
    sequences: list = field(default_factory=list)

    @property
    def sigma(self):
        return self.sigma_pointwise

    def plucker_lhs(self) -> int:
        return sum((self.r - i) * s for i, s in enumerate(self.sigma))

    def plucker_rhs(self) -> int:
        """(r+1) deg f + r(r+1)(G-1): the genus-factored form."""
        return (self.r + 1) * self.deg + self.r * (self.r + 1) * (self.G - 1)

    def plucker_rhs_as_printed(self) -> int:
        return (self.r + 1) * self.deg + self.r * (self.r + 1)

    @property
    def routes_agree(self) -> bool:
        return self.sigma_pointwise == self.sigma_minors == self.sigma_assoc

    def to_json(self):
        return {
            "r": self.r, "deg": self.deg,
            "sigma": self.sigma, "sigma_minors": self.sigma_minors, "sigma_assoc": self.sigma_assoc,
            "assoc_deg": self.assoc_deg, "routes_agree": self.routes_agree,
            "plucker": {"lhs": self.plucker_lhs(), "rhs": self.plucker_rhs(),
                        "pass": self.plucker_lhs() == self.plucker_rhs(),
                        "rhs_without_genus_factor": self.plucker_rhs_as_printed(),
                        "without_genus_factor_holds": self.plucker_lhs() == self.plucker_rhs_as_printed()},
            "stationary_points": [s.to_json() for s in self.sequences if any(s.stationary)],
        }


def stationary_totals(f: ProjectiveCurve, G: int = 0, tol: Tolerances = DEFAULT) -> StationaryReport:
    if not f.exact:
        raise DegenerateCurve("stationary totals need exact coefficients")
    r = span_dimension(f)
    if r < 1:
        raise DegenerateCurve("constant curve")
    if r < f.n:
        raise DegenerateCurve(f"curve spans P^{r} inside P^{f.n}; restrict_to_span first")
    D = f.deg
    W = full_wronskian(f)
    # route 1: pointwise
    seqs = _stationary_candidates(f, W)
    short = [s for s in seqs if len(s.delta) != r + 1]
    if short:
        raise ArithmeticError(f"incomplete order sequence at {short[0].point}")
    sig_pt = [sum(s.stationary[i] for s in seqs) for i in range(r)]
    # route 2: gcd of minors
    inf_seq = seqs[-1]
    T = [0]
    assoc = []
    for i in range(r + 1):
        minors = wronskian_minors(f, i)
        g = _gcd_all(minors)
        T.append(g.degree + inf_seq.S(i) if i > 0 else 0)
        red = [m.exact_div(g) for m in minors if not m.is_zero()]
        assoc.append(max(m.degree for m in red) if i < r else 0)
    T = T[1:]  # T[i] for i = 0..r, T[0] = 0
    Tm = lambda i: 0 if i < 0 else T[i]
    sig_min = [T[i + 1] - 2 * T[i] + Tm(i - 1) for i in range(r)]
    # route 3: associated curve degrees
    dm = lambda i: 0 if i < 0 or i >= r else assoc[i]
    sig_as = [2 * (G - 1) - (dm(i - 1) - 2 * dm(i) + dm(i + 1)) for i in range(r)]
    return StationaryReport(r, D, G, sig_pt, sig_min, sig_as, assoc[:r], seqs)


def plucker_report(f: ProjectiveCurve, G: int = 0, tol: Tolerances = DEFAULT) -> StationaryReport:
    """Stationary totals of f restricted to its span."""
    if span_dimension(f) < f.n:
        f = restrict_to_span(f).curve
    return stationary_totals(f, G, tol)


# -- hyperplanes ------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    coeffs: tuple
    nu_floor: object = None

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if all((c.is_zero() if type(c) is Ex else c == 0) for c in cs):
            raise ValueError("zero hyperplane")
        object.__setattr__(self, "coeffs", cs)

    def to_json(self):
        return [encode_scalar(c) for c in self.coeffs]


def _hyp_vec(h):
    v = h.coeffs if isinstance(h, Hyperplane) else h
    return [Ex(x) if isinstance(x, (int, Fraction)) else x for x in v]


def general_position(H, n: int | None = None) -> bool:
    """Every (n+1)-subset (n = ambient dimension) is linearly independent."""
    vecs = [_hyp_vec(h) for h in H]
    if not vecs:
        return True
    n = len(vecs[0]) - 1 if n is None else n
    if any(len(v) != n + 1 for v in vecs):
        raise ValueError("hyperplane length does not match the ambient dimension")
    size = min(n + 1, len(vecs))
    if size < n + 1:
        return rank(vecs) == size
    exact = all(type(x) is Ex for v in vecs for x in v)
    mods = reduce_mod_p(vecs) if exact else None
    for idx in itertools.combinations(range(len(vecs)), size):
        sub = [vecs[i] for i in idx]
        red = (mods[0], [mods[1][i] for i in idx]) if mods else None
        if not det_nonzero(sub, red):
            return False
    return True


@dataclass
class HyperplaneRamification:
    divisor: Divisor
    nu: object  # int or inf
    omitted: bool

    def to_json(self):
        return {"divisor": self.divisor.to_json(), "nu": "inf" if self.omitted else self.nu,
                "omitted": self.omitted}


def hyperplane_ramification(f: ProjectiveCurve, H, dom: PuncturedSphere,
                            tol: Tolerances = DEFAULT) -> HyperplaneRamification:
    L = f.section(_hyp_vec(H))
    if L.is_zero():
        raise CurveInHyperplane()
    div = poly_roots(L, tol)
    o = f.deg - L.degree
    if o > 0:
        div._add(INF, o)
    inm = [m for p, m in div if dom.contains(p)]
    if not inm:
        return HyperplaneRamification(div, float("inf"), True)
    return HyperplaneRamification(div, min(inm), False)


def _vp(f: ProjectiveCurve, H, p, tol) -> int:
    L = f.section(_hyp_vec(H))
    if is_inf(p):
        return f.deg - L.degree
    return L.order_at(p, tol.res)


def smt3_check(f: ProjectiveCurve, H, E=(), G: int = 0, tol: Tolerances = DEFAULT) -> TheoremReport:
    """Degenerate second main theorem with an arbitrary finite exceptional set E."""
    H = [_hyp_vec(h) for h in H]
    n = f.n
    if not general_position(H, n):
        raise NotGeneralPosition("hyperplanes not in general position")
    r = span_dimension(f)
    if r < 1:
        raise DegenerateCurve("constant curve")
    q, D = len(H), f.deg
    E = list(E)
    rep = TheoremReport(info={"n": n, "r": r, "q": q, "deg": D, "E": len(E)})
    ram = 0
    for h in H:
        L = f.section(h)
        if L.is_zero():
            raise CurveInHyperplane()
        div = poly_roots(L, tol)
        if D - L.degree > 0:
            div._add(INF, D - L.degree)
        ram += sum(min(r, m) for p, m in div if not any(same_point(p, e, tol.match) for e in E))
    lhs = Fraction((q - 2 * n + r - 1) * D)
    tail = Fraction(r * (2 * n - r + 1), 2) * (2 * (G - 1) + len(E))
    rep.add("smt.degenerate", "(q-2n+r-1) deg f <= sum min(r, v_p) + r(2n-r+1)/2 (2(G-1) + #E)",
            lhs, Fraction(ram) + tail)
    if r == n:
        # nondegenerate form with E the union of all hyperplane preimages
        pts = []
        for h in H:
            L = f.section(h)
            for p, _ in poly_roots(L, tol):
                if not any(same_point(p, x, tol.match) for x in pts):
                    pts.append(p)
            if D - L.degree > 0 and INF not in pts:
                pts.append(INF)
        nE = len(pts)
        rep.info["E_union"] = nE
        rep.add("smt.nondegenerate", "(q-n-1) deg f <= n(n+1)/2 (2(G-1) + #E)",
                Fraction((q - n - 1) * D), Fraction(n * (n + 1), 2) * (2 * (G - 1) + nE))
        lit = Check("smt.nondegenerate.literal", "(q-n-1) deg f <= n(n+1)/2 (2(G+1) + #E)",
                    Fraction((q - n - 1) * D), Fraction(n * (n + 1), 2) * (2 * (G + 1) + nE))
        rep.info["literal_reading"] = {"lhs": str(lit.lhs), "rhs": str(lit.rhs), "holds": lit.passed}
    return rep


# -- R^n verification ---------------------------------------------------------------

def verify_rn(d: WDataN, H, tol: Tolerances = DEFAULT) -> TheoremReport:
    d.domain.require_genus0()
    dom = d.domain
    f = curve_from_forms(d.phis)
    n = d.n
    H = [_hyp_vec(h) for h in H]
    gp = general_position(H, n - 1) if H else True
    r = span_dimension(f)
    if r < 1:
        raise DegenerateCurve("flat: constant Gauss map")
    D, k, G = f.deg, dom.k, dom.genus
    R = RatioR.rn(D, G, k)
    ends = end_orders(d, tol)
    rams = [hyperplane_ramification(f, h, dom, tol) for h in H]
    rep = TheoremReport(info={"n": n, "r": r, "d": D, "k": k, "R": R, "general_position": gp,
                              "q": len(H)})
    rep.info["nu"] = ["inf" if x.omitted else x.nu for x in rams]
    if not gp:
        rep.warnings.append("hyperplanes are not in general position; R^n bounds inapplicable")
    total = sum((Fraction(1) if x.omitted else 1 - Fraction(r, x.nu)) for x in rams)
    c = 2 * n - r - 1
    rep.add("rn.ramification", "sum (1 - r/nu_j) <= (2n-r-1)(1 + r(2G-2+k)/(2d))", total,
            c * (1 + Fraction(r, 2 * D) * (2 * G - 2 + k)), applicable=gp)
    hyp = R.den >= 0
    rep.add("rn.ramification", "sum (1 - r/nu_j) <= (2n-r-1)(1 + r/(2R))", total,
            c * (1 + Fraction(r, 2) * R.inverse) if hyp else None, form="R", applicable=gp and hyp)
    alg = ends.algebraic_ends and R.den > 0
    rep.add("rn.ramification", "sum (1 - r/nu_j) <= (2n-r-1)(r+2)/2", total, Fraction(c * (r + 2), 2),
            relation="<" if alg else "<=", form="R", applicable=gp and ends.complete and R.den > 0)
    omitted = sum(1 for x in rams if x.omitted)
    rep.info["omitted"] = omitted
    rep.add("rn.omitted", "#omitted <= n(n+1)/2", omitted, n * (n + 1) // 2, applicable=gp)
    return rep


# -- Fujimoto construction --------------------------------------------------------------

@dataclass
class FujimotoData:
    n: int
    data: WDataN
    curve: ProjectiveCurve
    hyperplanes: list
    sections: list          # f_i polynomials
    families: list          # family index t of each section (0 is the a_0 = 0 family)
    a: list
    b: list

    def certified_omitted(self):
        """Indices of sections vanishing only at punctures / inf."""
        dom = self.data.domain
        out = []
        for i, s in enumerate(self.sections):
            zs = [p for p, _ in poly_roots(s)] if s.degree > 0 else []
            if all(dom.is_puncture(p) for p in zs):
                out.append(i)
        return out


def _fujimoto_h(n: int):
    k = (n - 1) // 2
    hs = [None] * n
    for l in range(k):
        hs[2 * l] = Poly([0] * l + [1]) + Poly([0] * (2 * k - l) + [1])
        hs[2 * l + 1] = (Poly([0] * l + [1]) - Poly([0] * (2 * k - l) + [1])) * I
    hs[2 * k] = Poly([0] * k + [Ex.sqrt_of(-k) * 2])
    return hs


def _fujimoto_sections(n: int, a, b):
    out, fam = [], []
    u = Poly([0, 1])
    for i in range(1, n + 1):
        out.append((u - a[0]) ** (n - i))
        fam.append(0)
    for t in range(1, len(a)):
        for i in range(1, n + 1):
            out.append((u - a[t]) ** (n - i) * (u - b[t - 1]) ** (i - 1))
            fam.append(t)
    return out, fam


def _independent_subsets(polys, n) -> bool:
    rows = [[p[i] for i in range(n)] for p in polys]
    return general_position(rows, n - 1)


def fujimoto_construction(n: int, seed: int = 0, params=None, max_tries: int = 200) -> FujimotoData:
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    k = (n - 1) // 2
    if params is not None:
        a, b = [Ex(0)] + [decode_or(x) for x in params[0]], [decode_or(x) for x in params[1]]
        pts = a + b
        if any(same_point(pts[i], pts[j]) for i in range(len(pts)) for j in range(i)):
            raise ValueError("parameter collision")
        secs, fam = _fujimoto_sections(n, a, b)
        if not _independent_subsets(secs, n):
            raise NotGeneralPosition("given parameters do not put the sections in general position")
    else:
        rng = random.Random(seed)
        for _ in range(max_tries):
            vals = set()
            while len(vals) < 2 * k:
                v = (rng.randint(-4, 4), rng.randint(-4, 4))
                if v != (0, 0):
                    vals.add(v)
            vals = sorted(vals)
            rng.shuffle(vals)
            a = [Ex(0)] + [Ex(*v) for v in vals[:k]]
            b = [Ex(*v) for v in vals[k:]]
            secs, fam = _fujimoto_sections(n, a, b)
            if _independent_subsets(secs, n):
                break
        else:
            raise RuntimeError("no parameters in general position found")
    hs = _fujimoto_h(n)
    psi_den = Poly([1])
    for x in a[1:] + b:
        psi_den = psi_den * Poly([-x, 1])
    from .algebra import RatFunc
    phis = tuple(MeromorphicForm(RatFunc(h, psi_den)) for h in hs)
    dom = PuncturedSphere(tuple(a[1:] + b) + (INF,))
    data = WDataN(dom, phis)
    basis = [[h[i] for i in range(n)] for h in hs]
    hyps = [solve_left(basis, [s[i] for i in range(n)]) for s in secs]
    return FujimotoData(n, data, ProjectiveCurve(tuple(hs)), hyps, secs, fam, a, b)


def decode_or(x):
    if type(x) is Ex:
        return x
    if isinstance(x, (int, Fraction)):
        return Ex(x)
    return decode_scalar(x)


def arrangement_from_json(obj):
    if not isinstance(obj, dict) or "hyperplanes" not in obj:
        raise SchemaError("arrangement JSON needs 'hyperplanes'")
    hs = obj["hyperplanes"]
    if not isinstance(hs, list) or not all(isinstance(h, list) for h in hs):
        raise SchemaError("'hyperplanes' must be a list of coefficient lists")
    return [[decode_scalar(c) for c in h] for h in hs]
