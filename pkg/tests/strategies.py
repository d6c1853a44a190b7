"""Hypothesis strategies for exact Weierstrass data on punctured spheres."""
from __future__ import annotations

from hypothesis import strategies as st

from minsurf.algebra import INF, Ex, MeromorphicForm, Poly, RatFunc
from minsurf.weierstrass import PuncturedSphere, WData3

small = st.integers(-4, 4)
gaussian = st.builds(Ex, small, small)
nonzero_gaussian = gaussian.filter(lambda x: not x.is_zero())
points = st.builds(Ex, st.integers(-3, 3), st.integers(-3, 3))


@st.composite
def polys(draw, min_deg=0, max_deg=6):
    deg = draw(st.integers(min_deg, max_deg))
    cs = draw(st.lists(gaussian, min_size=deg, max_size=deg))
    return Poly(cs + [draw(nonzero_gaussian)])


@st.composite
def ratfuncs(draw, max_deg=6, nonconstant=False):
    num = draw(polys(max_deg=max_deg))
    den = draw(polys(max_deg=max_deg))
    f = RatFunc(num, den)
    if nonconstant and f.is_constant():
        f = RatFunc(num * Poly([draw(nonzero_gaussian), 1]), den)
    return f


@st.composite
def factored(draw, max_factors=3):
    """Product of linear factors (z - a) with Gaussian-integer roots, plus the root list."""
    roots = draw(st.lists(points, max_size=max_factors, unique_by=str))
    return Poly.from_roots(roots) if roots else Poly([1]), roots


@st.composite
def data3(draw, with_zero_and_inf=False):
    """R^3 data g = P/Q with zeros and poles among the punctures, plus extras.

    Taking zeros of g as punctures makes exceptional and totally ramified
    values appear, so the invariance checks see non-trivial profiles.
    """
    num, zs = draw(factored())
    den, ps = draw(factored())
    g = RatFunc(num * Poly([draw(nonzero_gaussian)]), den)
    if g.is_constant():
        g = RatFunc(Poly([0, 1]) * num, den)
        zs = zs + [Ex(0)]
    pts = [INF] if with_zero_and_inf or draw(st.booleans()) else []
    if with_zero_and_inf:
        pts.append(Ex(0))
    for p in zs + ps + draw(st.lists(points, max_size=2)):
        if not any(str(p) == str(q) for q in pts if q is not INF):
            if draw(st.booleans()) or with_zero_and_inf:
                pts.append(p)
    if not pts:
        pts = [INF]
    h_num, _ = draw(factored(max_factors=2))
    h = RatFunc(h_num, Poly.from_roots([p for p in pts if p is not INF]) if len(pts) > 1 else Poly([1]))
    return WData3(PuncturedSphere(tuple(pts)), MeromorphicForm(h), g)


moebius = st.tuples(st.tuples(gaussian, gaussian), st.tuples(gaussian, gaussian)).filter(
    lambda T: not (T[0][0] * T[1][1] - T[0][1] * T[1][0]).is_zero())
