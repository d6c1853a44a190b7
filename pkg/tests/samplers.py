"""Seeded random generators with fixed sample counts for the acceptance suite.

The hypothesis strategies in ``strategies.py`` shrink and explore; these
draw exactly the number of samples each acceptance criterion names.
"""
from __future__ import annotations

import random

from minsurf.algebra import INF, Ex, MeromorphicForm, Poly, RatFunc
from minsurf.curves import ProjectiveCurve, general_position, span_dimension
from minsurf.weierstrass import PuncturedSphere, WData3


def gaussian(rng: random.Random, lo=-4, hi=4, nonzero=False) -> Ex:
    while True:
        x = Ex(rng.randint(lo, hi), rng.randint(lo, hi))
        if not (nonzero and x.is_zero()):
            return x


def poly(rng, max_deg=6, min_deg=0) -> Poly:
    deg = rng.randint(min_deg, max_deg)
    return Poly([gaussian(rng) for _ in range(deg)] + [gaussian(rng, nonzero=True)])


def ratfunc(rng, max_deg=6, nonconstant=False) -> RatFunc:
    while True:
        f = RatFunc(poly(rng, max_deg), poly(rng, max_deg))
        if not (nonconstant and f.is_constant()):
            return f


def _points(rng, k):
    out = []
    while len(out) < k:
        p = gaussian(rng, -3, 3)
        if p not in out:
            out.append(p)
    return out


def data3(rng, with_zero_and_inf=False) -> WData3:
    """g = c P/Q with Gaussian-integer roots, zeros and poles often punctured."""
    while True:
        zs, ps = _points(rng, rng.randint(0, 3)), _points(rng, rng.randint(0, 3))
        num = Poly.from_roots(zs) if zs else Poly([1])
        den = Poly.from_roots(ps) if ps else Poly([1])
        g = RatFunc(num * Poly([gaussian(rng, nonzero=True)]), den)
        if not g.is_constant():
            break
    pts = [INF] if with_zero_and_inf or rng.random() < 0.5 else []
    if with_zero_and_inf:
        pts.append(Ex(0))
    for p in zs + ps + _points(rng, rng.randint(0, 2)):
        if p not in [q for q in pts if q is not INF] and (with_zero_and_inf or rng.random() < 0.5):
            pts.append(p)
    pts = pts or [INF]
    hz = _points(rng, rng.randint(0, 2))
    h_num = Poly.from_roots(hz) if hz else Poly([1])
    fin = [p for p in pts if p is not INF]
    h = RatFunc(h_num, Poly.from_roots(fin) if fin and len(pts) > 1 else Poly([1]))
    return WData3(PuncturedSphere(tuple(pts)), MeromorphicForm(h), g)


def curve(rng, max_n=4, max_deg=8) -> ProjectiveCurve:
    while True:
        n = rng.randint(1, max_n)
        D = rng.randint(1, max_deg)
        f = ProjectiveCurve(tuple(poly(rng, rng.randint(0, D)) for _ in range(n + 1)))
        if span_dimension(f) >= 1:
            return f


def arrangement(rng, n, q):
    while True:
        H = [[gaussian(rng) for _ in range(n + 1)] for _ in range(q)]
        if general_position(H, n):
            return H


def moebius(rng):
    while True:
        a, b, c, d = (gaussian(rng) for _ in range(4))
        if not (a * d - b * c).is_zero():
            return (a, b), (c, d)
