"""Residues, the real-period condition and surface classification.

On a punctured sphere the loops around the punctures generate the first
homology, so the period condition reduces to ``Re(2 pi i res) = 0`` at each
puncture for each form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import INF, Ex, MeromorphicForm, divisor_of_form, is_inf, same_point
from .algebra.codec import encode_point, encode_scalar
from .algebra.sphere import fmt_point
from .tolerances import DEFAULT, Tolerances
from .weierstrass import end_orders, forms


class MergedPoles(ValueError):
    pass


def _series_div(num: list, den: list, n: int) -> list:
    """First n coefficients of num/den as power series (den[0] != 0)."""
    out = []
    inv = den[0].inverse() if type(den[0]) is Ex else 1 / den[0]
    zero = den[0] * 0
    for k in range(n):
        acc = num[k] if k < len(num) else zero
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv)
    return out


def _residue_exact(f, p) -> Ex:
    """Laurent coefficient c_{-1} at a finite exact point."""
    num, den = f.num, f.den
    m = 0
    while True:
        q, r = den.deflate(p)
        if not r.is_zero():
            break
        den, m = q, m + 1
    if m == 0:
        return Ex(0)
    ns = num.taylor_shift(p).c
    ds = den.taylor_shift(p).c
    return _series_div(list(ns), list(ds), m)[m - 1]


def _residue_float(f, p: complex, poles, tol: Tolerances) -> complex:
    """(1 / 2 pi i) times the contour integral over a small circle (trapezoid rule)."""
    p = complex(p)
    scale = max(1.0, abs(p))
    others = [abs(complex(q) - p) for q in poles if not is_inf(q)]
    others = [r for r in others if r > tol.match * scale]
    if others and min(others) <= 1e3 * tol.match * scale:
        raise MergedPoles(f"poles merge near {fmt_point(p)}")
    rad = 0.4 * min(others) if others else 0.5 * scale
    prev = None
    n = 64
    while n <= 1 << 16:
        t = np.exp(2j * np.pi * np.arange(n) / n)
        zs = p + rad * t
        val = complex(np.mean(f.evalf(zs) * rad * t))
        if prev is not None and abs(val - prev) <= 1e-14 * max(1.0, abs(val)):
            return val
        prev, n = val, n * 2
    return prev


def residue(w: MeromorphicForm, p, tol: Tolerances = DEFAULT):
    """Residue of ``coeff dz`` at a sphere point; zero at regular points."""
    if w.is_zero():
        return Ex(0) if w.exact else 0j
    if is_inf(p):
        # residue at infinity through zeta = 1/z
        g = w.at_infinity()
        return residue(MeromorphicForm(g), Ex(0) if g.exact else 0j, tol)
    f = w.coeff
    if f.exact and type(p) is Ex:
        try:
            return _residue_exact(f, p)
        except ValueError:
            pass
    poles = [q for q, m in divisor_of_form(w, tol) if m < 0 and not is_inf(q)]
    if not any(same_point(q, p, tol.match) for q in poles):
        return 0j
    return _residue_float(f, p, poles, tol)


def residue_float(w: MeromorphicForm, p, tol: Tolerances = DEFAULT) -> complex:
    """Quadrature residue regardless of coefficient mode (cross-check path)."""
    if is_inf(p):
        g = w.at_infinity().to_float()
        return residue_float(MeromorphicForm(g), 0j, tol)
    wf = MeromorphicForm(w.coeff.to_float())
    poles = [q for q, m in divisor_of_form(w, tol) if m < 0 and not is_inf(q)]
    return _residue_float(wf.coeff, p, poles, tol)


def residue_sum(w: MeromorphicForm, tol: Tolerances = DEFAULT):
    """Sum of residues over every pole including infinity (zero on P^1)."""
    acc = Ex(0) if w.exact else 0j
    pts = [q for q, m in divisor_of_form(w, tol) if m < 0]
    if INF not in pts:
        pts.append(INF)
    for q in pts:
        acc = acc + residue(w, q, tol)
    return acc


@dataclass
class PeriodEntry:
    point: object
    form_index: int
    residue: object

    @property
    def real_period(self) -> float:
        # Re(2 pi i rho) = -2 pi Im(rho)
        return -2 * math.pi * complex(self.residue).imag + 0.0

    def exact_pass(self):
        if type(self.residue) is Ex:
            return self.residue.imag().is_zero()
        return None

    def to_json(self):
        return {"point": encode_point(self.point), "form": self.form_index + 1,
                "residue": encode_scalar(self.residue), "re_period": self.real_period}


@dataclass
class PeriodReport:
    entries: list = field(default_factory=list)
    passed: bool = True
    mode: str = "exact"

    def to_json(self):
        return {"pass": self.passed, "mode": self.mode, "residues": [e.to_json() for e in self.entries]}


def period_condition(d, tol: Tolerances = DEFAULT) -> PeriodReport:
    d.domain.require_genus0()
    rep = PeriodReport()
    fs = forms(d)
    exact = True
    for p in d.domain.punctures:
        for i, w in enumerate(fs):
            rho = residue(w, p, tol)
            e = PeriodEntry(p, i, rho)
            rep.entries.append(e)
            ok = e.exact_pass()
            if ok is None:
                exact = False
                scale = max(1.0, abs(complex(rho)))
                ok = abs(e.real_period) <= tol.per * scale
            rep.passed = rep.passed and ok
    rep.mode = "exact" if exact else "float"
    return rep


@dataclass
class Classification:
    tag: str | None  # flat / pseudo-algebraic / algebraic, None when not complete
    complete: bool
    verdict: str

    def to_json(self):
        return {"tag": self.tag, "complete": self.complete, "verdict": self.verdict}


def classify(d, tol: Tolerances = DEFAULT) -> Classification:
    if d.is_flat():
        return Classification("flat", True, "flat")
    ends = end_orders(d, tol)
    if not ends.complete:
        bad = [fmt_point(p) for p, m in ends.mu if m < 1]
        return Classification(None, False, f"not complete (no metric pole at {', '.join(bad)})")
    per = period_condition(d, tol)
    tag = "algebraic" if per.passed else "pseudo-algebraic"
    return Classification(tag, True, tag)
