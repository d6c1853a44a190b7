"""Ramification, unicity and covering checks evaluated on concrete data.

Every inequality is evaluated in its raw form (degree, branching and puncture
counts) and, when the basic domain is hyperbolic, in its R form.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import INF, Ex, MeromorphicForm, Poly, RatFunc, is_inf, poly_roots, same_point
from .algebra.codec import encode_point
from .algebra.sphere import fmt_point
from .gauss import FlatGaussMap, preimages, profile, ramification_profile
from .periods import classify
from .tolerances import DEFAULT, Tolerances
from .weierstrass import PuncturedSphere, WData3, WData4, WDataN, end_orders

log = logging.getLogger(__name__)

INFTY = math.inf


def _enc(x):
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


# -- the ratio R --------------------------------------------------------------

@dataclass(frozen=True)
class RatioR:
    d: int
    den: Fraction  # G-1+k/2 (R^3) or 2G-2+k (R^4 / R^n)
    ambient: str = "r3"

    @classmethod
    def r3(cls, d, G, k):
        return cls(d, Fraction(G - 1) + Fraction(k, 2), "r3")

    @classmethod
    def rn(cls, d, G, k):
        return cls(d, Fraction(2 * G - 2 + k), "rn")

    @property
    def hyperbolic(self) -> bool:
        return self.den > 0

    @property
    def nonhyperbolic(self) -> bool:
        return self.den < 0

    @property
    def value(self):
        if self.den == 0:
            return INFTY
        return Fraction(self.d) / self.den

    @property
    def inverse(self) -> Fraction:
        """1/R (zero when R is infinite)."""
        return self.den / self.d

    def to_json(self):
        return {"d": self.d, "denominator": _enc(self.den), "value": _enc(self.value),
                "hyperbolic": self.den >= 0, "flag": "non-hyperbolic" if self.nonhyperbolic else None}


# -- reports --------------------------------------------------------------------

@dataclass
class Check:
    theorem: str
    statement: str
    lhs: object
    rhs: object
    form: str = "raw"
    applicable: bool = True
    relation: str = "<="
    note: str = ""

    @property
    def passed(self) -> bool:
        if not self.applicable:
            return True
        a, b = self.lhs, self.rhs
        return {"<=": a <= b, ">=": a >= b, "<": a < b, ">": a > b}[self.relation]

    @property
    def equality(self) -> bool:
        return self.applicable and self.lhs == self.rhs

    def to_json(self):
        out = {"theorem": self.theorem, "statement": self.statement, "lhs": _enc(self.lhs),
               "rhs": _enc(self.rhs), "relation": self.relation, "form": self.form,
               "applicable": self.applicable, "pass": self.passed if self.applicable else None,
               "equality": self.equality}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class TheoremReport:
    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, theorem: str) -> Check:
        for c in self.checks:
            if c.theorem == theorem:
                return c
        raise KeyError(theorem)

    def add(self, *a, **kw) -> Check:
        c = Check(*a, **kw)
        self.checks.append(c)
        return c

    def extend(self, other: "TheoremReport"):
        self.checks += other.checks
        self.warnings += other.warnings
        self.info.update(other.info)

    def to_json(self):
        return {"pass": self.passed, "checks": [c.to_json() for c in self.checks],
                "warnings": list(self.warnings),
                "info": {k: (v.to_json() if hasattr(v, "to_json") else _enc(v)) for k, v in self.info.items()}}


# -- R^3 ------------------------------------------------------------------------

def verify_r3(d: WData3, tol: Tolerances = DEFAULT) -> TheoremReport:
    if d.is_flat():
        raise FlatGaussMap()
    dom = d.domain
    prof = ramification_profile(d.g, dom, tol)
    cls = classify(d, tol)
    ends = end_orders(d, tol)
    R = RatioR.r3(prof.d, dom.genus, dom.k)
    rep = TheoremReport(info={"R": R, "profile": prof, "classification": cls})
    dd, k, ng, l = prof.d, dom.k, prof.n_g, prof.l
    Dg, nu = Fraction(prof.D_g), prof.nu_g

    rep.add("r3.exceptional", "D_g <= (n_g + k - l)/d", Dg, Fraction(ng + k - l, dd))
    rep.add("r3.totally_ramified", "nu_g <= (n_g + k)/d", nu, Fraction(ng + k, dd))
    hyp = not R.nonhyperbolic
    if R.nonhyperbolic:
        rep.warnings.append("non-hyperbolic basic domain (G-1+k/2 < 0): R-form inapplicable")
    rep.add("r3.exceptional", "D_g <= 2 + 2/R - l/d", Dg,
            2 + 2 * R.inverse - Fraction(l, dd) if hyp else None, form="R", applicable=hyp)
    rep.add("r3.totally_ramified", "nu_g <= 2 + 2/R", nu,
            2 + 2 * R.inverse if hyp else None, form="R", applicable=hyp)
    complete_hyp = ends.complete and R.den > 0
    rep.add("r3.ratio", "R >= 1", R.value if hyp else None, Fraction(1), relation=">=",
            form="R", applicable=complete_hyp)
    if complete_hyp and ends.algebraic_ends:
        rep.add("r3.ratio", "R > 1 (algebraic ends)", R.value, Fraction(1), relation=">", form="R")
    rep.add("r3.chain", "D_g <= nu_g", Dg, nu)
    algebraic = cls.tag == "algebraic"
    rep.add("r3.chain", "nu_g < 4" if algebraic else "nu_g <= 4", nu, Fraction(4),
            relation="<" if algebraic else "<=", applicable=ends.complete)
    rep.add("r3.algebraic_genus0", "D_g <= 2 for algebraic G=0", Dg, Fraction(2),
            applicable=algebraic and dom.genus == 0)
    for b, cnt, nuj in prof.counting:
        rep.add("r3.fibre_count", f"#g^-1({fmt_point(b)}) in M <= d/nu_j", Fraction(cnt), Fraction(dd, nuj))
    return rep


# -- R^4 ------------------------------------------------------------------------

def verify_r4(d: WData4, tol: Tolerances = DEFAULT) -> TheoremReport:
    if d.is_flat():
        raise FlatGaussMap()
    dom = d.domain
    profs = profile(d, tol)
    ends = end_orders(d, tol)
    k, G = dom.k, dom.genus
    rep = TheoremReport(info={"classification": classify(d, tol)})
    Rs = []
    for i, p in enumerate(profs, 1):
        if p is None:
            rep.info[f"g{i}"] = "constant"
            Rs.append(None)
            continue
        rep.info[f"profile_g{i}"] = p
        R = RatioR.rn(p.d, G, k)
        rep.info[f"R{i}"] = R
        Rs.append(R)
        rep.add(f"r4.totally_ramified.g{i}", f"nu_g{i} <= (n_{i}1 + k)/d_{i}", p.nu_g, Fraction(p.n_g + k, p.d))
        rep.add(f"r4.totally_ramified.g{i}", f"nu_g{i} <= 2 + 1/R_{i}", p.nu_g,
                2 + R.inverse if not R.nonhyperbolic else None, form="R", applicable=not R.nonhyperbolic)
    hyp = all(R is None or R.den > 0 for R in Rs)
    if any(R is not None and R.nonhyperbolic for R in Rs):
        rep.warnings.append("non-hyperbolic basic domain (2G-2+k < 0): R-form inapplicable")
    if all(R is not None for R in Rs):
        rep.info["case"] = "both nonconstant"
        n1, n2 = profs[0].nu_g, profs[1].nu_g
        app = hyp and n1 > 2 and n2 > 2
        lhs = (1 / (n1 - 2) + 1 / (n2 - 2)) if n1 > 2 and n2 > 2 else None
        rsum = Rs[0].value + Rs[1].value if hyp else None
        rep.add("r4.pair", "1/(nu_g1-2) + 1/(nu_g2-2) >= R_1 + R_2", lhs, rsum, relation=">=",
                form="R", applicable=app)
        rep.add("r4.ratio", "R_1 + R_2 >= 1", rsum, Fraction(1), relation=">=", form="R",
                applicable=hyp and ends.complete)
    else:
        rep.info["case"] = "one constant"
        R = next(R for R in Rs if R is not None)
        rep.add("r4.ratio", "R_1 >= 1", R.value if hyp else None, Fraction(1), relation=">=", form="R",
                applicable=hyp and ends.complete)
    return rep


def verify(d, tol: Tolerances = DEFAULT) -> TheoremReport:
    if isinstance(d, WData3):
        return verify_r3(d, tol)
    if isinstance(d, WData4):
        return verify_r4(d, tol)
    raise TypeError("use projective_curves.verify_rn for R^n data")


# -- unicity ----------------------------------------------------------------------

class IdenticalMaps(ValueError):
    def __init__(self):
        super().__init__("identical maps: unicity is vacuous")


def _coincidence_points(gA: RatFunc, gB: RatFunc, tol):
    q = gA.num * gB.den - gB.num * gA.den
    pts = [p for p, _ in poly_roots(q, tol)]
    if same_point(gA(INF), gB(INF), tol.match):
        pts.append(INF)
    return pts


def _fibre_in_M(g, c, dom, tol):
    return [p for p, _ in preimages(g, c, tol) if dom.contains(p)]


def _same_sets(a, b, tol):
    return (all(any(same_point(x, y, tol.match) for y in b) for x in a)
            and all(any(same_point(x, y, tol.match) for y in a) for x in b))


@dataclass
class SharedValues:
    q: int
    values: list
    d: int
    n_g: int
    k: int

    def to_json(self):
        return {"q": self.q, "values": [encode_point(v) for v in self.values]}


def shared_values(gA: RatFunc, gB: RatFunc, dom: PuncturedSphere, tol: Tolerances = DEFAULT) -> SharedValues:
    """Values c with gA^{-1}(c) and gB^{-1}(c) equal as subsets of M.

    The candidate set is exhaustive: a nonempty common fibre contains some
    z0 in M with gA(z0) = gB(z0) = c, and an empty one forces every preimage
    under both maps to be a puncture, so c is a value at a puncture.
    """
    dom.require_genus0()
    if gA == gB:
        raise IdenticalMaps()
    dA, dB = gA.degree, gB.degree
    if dA != dB:
        log.warning("degree mismatch %d vs %d; bound uses the larger", dA, dB)
    cands = []
    for z0 in _coincidence_points(gA, gB, tol):
        if dom.contains(z0):
            cands.append(gA(z0))
    for p in dom.punctures:
        cands += [gA(p), gB(p)]
    vals = []
    for c in cands:
        if any(same_point(c, v, tol.match) for v in vals):
            continue
        if _same_sets(_fibre_in_M(gA, c, dom, tol), _fibre_in_M(gB, c, dom, tol), tol):
            vals.append(c)
    # n_g of gA (both maps have the same degree in the hypotheses)
    ng = ramification_profile(gA, dom, tol).n_g if not gA.is_constant() else 0
    return SharedValues(len(vals), vals, max(dA, dB), ng, dom.k)


def unicity_r3(gA: RatFunc, gB: RatFunc, dom: PuncturedSphere, tol: Tolerances = DEFAULT) -> TheoremReport:
    sv = shared_values(gA, gB, dom, tol)
    R = RatioR.r3(sv.d, dom.genus, dom.k)
    rep = TheoremReport(info={"shared": sv, "R": R})
    rep.add("r3.unicity", "q <= (2d + n_g + k)/d", Fraction(sv.q), Fraction(2 * sv.d + sv.n_g + sv.k, sv.d))
    hyp = not R.nonhyperbolic
    rep.add("r3.unicity", "q <= 4 + 2/R", Fraction(sv.q), 4 + 2 * R.inverse if hyp else None,
            form="R", applicable=hyp)
    return rep


def unicity_r4(A: WData4, B: WData4, tol: Tolerances = DEFAULT) -> TheoremReport:
    dom = A.domain
    rep = TheoremReport()
    counts = []
    for i, (ga, gb) in enumerate(((A.g1, B.g1), (A.g2, B.g2)), 1):
        if ga == gb:
            counts.append(None)
            rep.info[f"g{i}"] = "identical"
            continue
        sv = shared_values(ga, gb, dom, tol)
        R = RatioR.rn(sv.d, dom.genus, dom.k)
        rep.info[f"shared_g{i}"] = sv
        rep.info[f"R{i}"] = R
        counts.append((sv, R))
        rep.add(f"r4.unicity.g{i}", f"p_{i} <= (2d_{i} + n_{i}1 + k)/d_{i}", Fraction(sv.q),
                Fraction(2 * sv.d + sv.n_g + sv.k, sv.d))
        rep.add(f"r4.unicity.g{i}", f"p_{i} <= 4 + 1/R_{i}", Fraction(sv.q),
                4 + R.inverse if not R.nonhyperbolic else None, form="R", applicable=not R.nonhyperbolic)
    if all(c is None for c in counts):
        raise IdenticalMaps()
    if all(c is not None for c in counts):
        (s1, R1), (s2, R2) = counts
        app = s1.q > 4 and s2.q > 4 and R1.den > 0 and R2.den > 0
        lhs = Fraction(1, s1.q - 4) + Fraction(1, s2.q - 4) if s1.q > 4 and s2.q > 4 else None
        rep.add("r4.unicity.pair", "1/(p-4) + 1/(q-4) >= R_1 + R_2", lhs,
                R1.value + R2.value if app else None, relation=">=", form="R", applicable=app)
    return rep


# -- coverings ----------------------------------------------------------------------

class BranchedCover(ValueError):
    pass


def pullback_covering(d, m: int, tol: Tolerances = DEFAULT):
    """Pull data back along z -> z^m (unbranched over M iff 0, inf are punctures)."""
    if m < 1:
        raise ValueError("covering degree must be >= 1")
    if m == 1:
        return d
    dom = d.domain
    if not (dom.is_puncture(Ex(0)) and dom.is_puncture(INF)):
        raise BranchedCover("z -> z^m branches at 0 and inf, which must be punctures")
    zm = RatFunc(Poly([0] * m + [1]))
    dzm = RatFunc(Poly([0] * (m - 1) + [m]))
    pts = [Ex(0), INF]
    for p in dom.punctures:
        if is_inf(p) or same_point(p, Ex(0)):
            continue
        c = p if type(p) is Ex else complex(p)
        for r, _ in poly_roots(Poly([-c] + [0] * (m - 1) + [1]), tol):
            pts.append(r)
    ndom = PuncturedSphere(tuple(pts), dom.genus, dom.tol)

    def form(w: MeromorphicForm):
        return MeromorphicForm(w.coeff.compose(zm) * dzm)

    if isinstance(d, WData3):
        return WData3(ndom, form(d.h_form), d.g.compose(zm))
    if isinstance(d, WData4):
        return WData4(ndom, form(d.h_form), d.g1.compose(zm), d.g2.compose(zm))
    return WDataN(ndom, tuple(form(w) for w in d.phis))


def ratio_of(d, tol: Tolerances = DEFAULT):
    if isinstance(d, WData3):
        return RatioR.r3(d.g.degree, d.domain.genus, d.domain.k)
    return tuple(RatioR.rn(g.degree, d.domain.genus, d.domain.k) for g in d.gauss_maps() if not g.is_constant())
