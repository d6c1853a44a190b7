"""Weierstrass data in R^3, R^4, R^n on punctured spheres and their structural checks."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .algebra import Ex, I, MeromorphicForm, RatFunc, divisor_of_form, divisor_of_function, is_inf, same_point
from .algebra.codec import (
    SchemaError, decode_form, decode_point, decode_ratfunc, encode_form, encode_point, encode_ratfunc,
)
from .algebra.sphere import fmt_point
from .tolerances import DEFAULT, Tolerances

HALF = Ex(1, 0) / 2


class UnsupportedGenus(ValueError):
    def __init__(self, genus):
        super().__init__(f"unsupported genus {genus}: analytic operations need G=0")


class EndPoint(ValueError):
    """Evaluation requested at a puncture."""


@dataclass(frozen=True)
class PuncturedSphere:
    punctures: tuple = ()
    genus: int = 0
    tol: float = 1e-8

    def __post_init__(self):
        pts = tuple(self.punctures)
        object.__setattr__(self, "punctures", pts)
        for i in range(len(pts)):
            for j in range(i):
                if same_point(pts[i], pts[j], self.tol):
                    raise ValueError(f"repeated puncture {fmt_point(pts[i])}")

    @property
    def k(self) -> int:
        return len(self.punctures)

    def is_puncture(self, p) -> bool:
        return any(same_point(p, q, self.tol) for q in self.punctures)

    def contains(self, p) -> bool:
        return not self.is_puncture(p)

    def require_genus0(self):
        if self.genus != 0:
            raise UnsupportedGenus(self.genus)

    def finite_punctures(self):
        return [p for p in self.punctures if not is_inf(p)]


@dataclass(frozen=True)
class WData3:
    domain: PuncturedSphere
    h_form: MeromorphicForm
    g: RatFunc
    kind = "r3"

    @property
    def exact(self):
        return self.h_form.exact and self.g.exact

    def is_flat(self):
        return self.g.is_constant()

    def gauss_maps(self):
        return [self.g]


@dataclass(frozen=True)
class WData4:
    domain: PuncturedSphere
    h_form: MeromorphicForm
    g1: RatFunc
    g2: RatFunc
    kind = "r4"

    @property
    def exact(self):
        return self.h_form.exact and self.g1.exact and self.g2.exact

    def is_flat(self):
        return self.g1.is_constant() and self.g2.is_constant()

    def gauss_maps(self):
        return [self.g1, self.g2]


@dataclass(frozen=True)
class WDataN:
    domain: PuncturedSphere
    phis: tuple
    kind = "rn"

    def __post_init__(self):
        phis = tuple(p if isinstance(p, MeromorphicForm) else MeromorphicForm(p) for p in self.phis)
        if len(phis) < 3:
            raise ValueError("R^n data needs n >= 3 forms")
        object.__setattr__(self, "phis", phis)

    @property
    def n(self):
        return len(self.phis)

    @property
    def exact(self):
        return all(p.exact for p in self.phis)

    def is_flat(self):
        # the Gauss map [phi_1 : ... : phi_n] is constant
        ref = next((p for p in self.phis if not p.is_zero()), None)
        if ref is None:
            return True
        return all(p.is_zero() or (p.coeff / ref.coeff).is_constant() for p in self.phis)


def _form(f) -> MeromorphicForm:
    return f if isinstance(f, MeromorphicForm) else MeromorphicForm(f)


def forms_from_data3(d: WData3) -> list[MeromorphicForm]:
    h, g = d.h_form.coeff, d.g
    g2 = g * g
    return [
        MeromorphicForm((1 - g2) * h * HALF),
        MeromorphicForm((1 + g2) * h * (I * HALF)),
        MeromorphicForm(g * h),
    ]


def forms_from_data4(d: WData4) -> list[MeromorphicForm]:
    h, a, b = d.h_form.coeff, d.g1, d.g2
    ab = a * b
    return [
        MeromorphicForm((1 + ab) * h * HALF),
        MeromorphicForm((1 - ab) * h * (I * HALF)),
        MeromorphicForm((a - b) * h * HALF),
        MeromorphicForm((a + b) * h * (-I * HALF)),
    ]


def forms(d) -> list[MeromorphicForm]:
    if isinstance(d, WData3):
        return forms_from_data3(d)
    if isinstance(d, WData4):
        return forms_from_data4(d)
    return list(d.phis)


def data_from_forms3(phis, domain: PuncturedSphere) -> WData3:
    """Inverse of forms_from_data3: h = phi1 - i phi2, g = phi3 / h."""
    h = phis[0].coeff - phis[1].coeff * I
    return WData3(domain, MeromorphicForm(h), phis[2].coeff / h)


def as_rn(d) -> WDataN:
    return d if isinstance(d, WDataN) else WDataN(d.domain, tuple(forms(d)))


def quadric_residual(phis) -> RatFunc:
    """sum f_i^2; identically zero for valid data."""
    acc = RatFunc(0)
    for p in phis:
        acc = acc + p.coeff * p.coeff
    return acc


def quadric_holds(phis, tol: Tolerances = DEFAULT, samples=(0.3 + 0.7j, -1.1 + 0.2j, 2.3 - 1.7j)) -> bool:
    q = quadric_residual(phis)
    if q.exact:
        return q.is_zero()
    if q.is_zero():
        return True
    scale = 0.0
    for z in samples:
        scale = max(scale, sum(abs(p.coeff.evalf(z)) ** 2 for p in phis))
        if abs(q.evalf(z)) > 1e3 * tol.res * max(scale, 1.0):
            return False
    return True


def associate(d, theta: float | None = None, quarter_turns: int | None = None):
    """Rotate h by e^{i theta}; quarter turns stay exact."""
    if quarter_turns is not None:
        c = [Ex(1), I, Ex(-1), -I][quarter_turns % 4]
    else:
        q = theta / (math.pi / 2)
        c = [Ex(1), I, Ex(-1), -I][round(q) % 4] if abs(q - round(q)) < 1e-15 else cmath.exp(1j * theta)
    if isinstance(d, WDataN):
        return WDataN(d.domain, tuple(MeromorphicForm(p.coeff * c) for p in d.phis))
    h = MeromorphicForm(d.h_form.coeff * c)
    if isinstance(d, WData3):
        return WData3(d.domain, h, d.g)
    return WData4(d.domain, h, d.g1, d.g2)


def to_float(d):
    dom = d.domain
    if isinstance(d, WData3):
        return WData3(dom, MeromorphicForm(d.h_form.coeff.to_float()), d.g.to_float())
    if isinstance(d, WData4):
        return WData4(dom, MeromorphicForm(d.h_form.coeff.to_float()), d.g1.to_float(), d.g2.to_float())
    return WDataN(dom, tuple(MeromorphicForm(p.coeff.to_float()) for p in d.phis))


# -- regularity ---------------------------------------------------------------

@dataclass
class RegularityEntry:
    point: object
    required_zero: int
    h_order: int
    ok: bool

    def to_json(self):
        return {"point": encode_point(self.point), "required_h_zero": self.required_zero,
                "h_order": self.h_order, "ok": self.ok}


@dataclass
class RegularityReport:
    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def violations(self):
        return [e for e in self.entries if not e.ok]

    def to_json(self):
        return {"pass": self.ok, "points": [e.to_json() for e in self.entries]}


def _pole_order(f: RatFunc, p, tol) -> int:
    if f.is_zero():
        return 0
    return max(0, -f.order_at(p, tol))


def regularity_check(d, tol: Tolerances = DEFAULT) -> RegularityReport:
    """Zeros of hdz must match the poles of the Gauss map(s) on M.

    R^3: ord_p(hdz) = 2 * pole order of g.  R^4: ord_p(hdz) = pole order of
    g1 + pole order of g2, which is what keeps the metric finite and nonzero.
    R^n: the forms have no poles in M and no common zero in M.
    """
    d.domain.require_genus0()
    rep = RegularityReport()
    dom = d.domain
    if isinstance(d, WDataN):
        nz = [p for p in d.phis if not p.is_zero()]
        divs = [divisor_of_form(p, tol) for p in nz]
        pts = []
        for dv in divs:
            for p in dv.points():
                if dom.contains(p) and not any(same_point(p, q, tol.match) for q in pts):
                    pts.append(p)
        for p in pts:
            orders = [w.order_at(p, tol) for w in nz]
            mn = min(orders)
            rep.entries.append(RegularityEntry(p, 0, mn, mn == 0))
        return rep
    gs = d.gauss_maps()
    divs = [divisor_of_form(d.h_form, tol)] + [divisor_of_function(g, tol) for g in gs if not g.is_zero()]
    pts = []
    for dv in divs:
        for p in dv.points():
            if dom.contains(p) and not any(same_point(p, q, tol.match) for q in pts):
                pts.append(p)
    weight = 2 if isinstance(d, WData3) else 1
    for p in pts:
        req = weight * sum(_pole_order(g, p, tol) for g in gs)
        oh = d.h_form.order_at(p, tol)
        rep.entries.append(RegularityEntry(p, req, oh, oh == req))
    return rep


# -- metric -------------------------------------------------------------------

def _abs2(v):
    if type(v) is Ex:
        return (v * v.conjugate()).real()
    return abs(v) ** 2


def metric_factor(d, z, tol: Tolerances = DEFAULT):
    """lambda^2 = (1/2) sum |f_i(z)|^2 from the reduced forms.

    Exact input points give an exact real :class:`Ex`.
    """
    if d.domain.is_puncture(z):
        raise EndPoint(f"end point {fmt_point(z)}")
    if is_inf(z):
        vals = [p.at_infinity()(Ex(0) if p.exact else 0j) if not p.is_zero() else 0 for p in forms(d)]
    else:
        vals = [p.coeff(z) for p in forms(d)]
    if any(is_inf(v) for v in vals):
        raise ValueError(f"forms have a pole at {fmt_point(z)}")
    acc = Ex(0) if all(type(v) is Ex or v == 0 for v in vals) else 0.0
    for v in vals:
        acc = acc + _abs2(v)
    return acc / 2


def metric_factor_direct(d, z: complex) -> float:
    """Closed forms |h|^2 (1+|g|^2)^2 / 4 and |h|^2 (1+|g1|^2)(1+|g2|^2) / 4."""
    z = complex(z)
    h = abs(d.h_form.coeff.evalf(z)) ** 2
    if isinstance(d, WData3):
        return h * (1 + abs(d.g.evalf(z)) ** 2) ** 2 / 4
    if isinstance(d, WData4):
        return h * (1 + abs(d.g1.evalf(z)) ** 2) * (1 + abs(d.g2.evalf(z)) ** 2) / 4
    return 0.5 * sum(abs(p.coeff.evalf(z)) ** 2 for p in d.phis)


# -- ends -----------------------------------------------------------------------

@dataclass
class EndReport:
    mu: list  # (puncture, mu_j)

    @property
    def complete(self) -> bool:
        return all(m >= 1 for _, m in self.mu)

    @property
    def algebraic_ends(self) -> bool:
        return all(m >= 2 for _, m in self.mu)

    def to_json(self):
        return {"mu": [[encode_point(p), m] for p, m in self.mu],
                "complete": self.complete, "algebraic_ends": self.algebraic_ends}


def end_orders(d, tol: Tolerances = DEFAULT) -> EndReport:
    fs = [p for p in forms(d) if not p.is_zero()]
    out = []
    for p in d.domain.punctures:
        mu = max([0] + [-w.order_at(p, tol) for w in fs])
        out.append((p, mu))
    return EndReport(out)


# -- JSON ---------------------------------------------------------------------

def _domain_from_json(obj) -> PuncturedSphere:
    pts = obj.get("punctures", [])
    if not isinstance(pts, list):
        raise SchemaError("'punctures' must be a list")
    genus = obj.get("genus", 0)
    if not isinstance(genus, int) or genus < 0:
        raise SchemaError("'genus' must be a nonnegative integer")
    try:
        return PuncturedSphere(tuple(decode_point(p) for p in pts), genus)
    except ValueError as e:
        raise SchemaError(str(e)) from e


def data_from_json(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("data JSON needs a 'kind' field (r3, r4 or rn)")
    kind = obj["kind"]
    dom = _domain_from_json(obj)
    try:
        if kind == "r3":
            return WData3(dom, decode_form(obj["h"]), decode_ratfunc(obj["g"]))
        if kind == "r4":
            return WData4(dom, decode_form(obj["h"]), decode_ratfunc(obj["g1"]), decode_ratfunc(obj["g2"]))
        if kind == "rn":
            return WDataN(dom, tuple(decode_form(p) for p in obj["phis"]))
    except KeyError as e:
        raise SchemaError(f"missing field {e} for kind {kind!r}") from e
    raise SchemaError(f"unknown kind {kind!r}")


def data_to_json(d) -> dict:
    out = {"kind": d.kind}
    if isinstance(d, WData3):
        out.update(h=encode_form(d.h_form), g=encode_ratfunc(d.g))
    elif isinstance(d, WData4):
        out.update(h=encode_form(d.h_form), g1=encode_ratfunc(d.g1), g2=encode_ratfunc(d.g2))
    else:
        out["phis"] = [encode_form(p) for p in d.phis]
    out["punctures"] = [encode_point(p) for p in d.domain.punctures]
    out["genus"] = d.domain.genus
    return out
