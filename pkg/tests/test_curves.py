import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from minsurf import catalog
from minsurf.algebra import INF, Ex, I, Poly
from minsurf.curves import (
    CurveInHyperplane, DegenerateCurve, NotGeneralPosition, ProjectiveCurve, curve_from_forms,
    fujimoto_construction, general_position, hyperplane_ramification, order_sequence, plucker_report,
    restrict_to_span, smt3_check, span_dimension, stationary_totals, verify_rn,
)
from minsurf.weierstrass import PuncturedSphere, WDataN, forms, quadric_residual
from strategies import gaussian, polys

ONE, Z = Poly([1]), Poly([0, 1])


def curve(*cs):
    return ProjectiveCurve(tuple(Poly(c) for c in cs))


NORMAL = curve([1], [0, 1], [0, 0, 1])
QUARTIC = curve([1], [0, 1], [0, 0, 0, 0, 1])


@st.composite
def curves(draw, max_n=4, max_deg=8):
    n = draw(st.integers(1, max_n))
    D = draw(st.integers(1, max_deg))
    comps = [draw(polys(max_deg=draw(st.integers(0, D)))) for _ in range(n + 1)]
    f = ProjectiveCurve(tuple(comps))
    assume(span_dimension(f) >= 1)
    return f


@st.composite
def arrangements(draw, n, q):
    H = [[draw(gaussian) for _ in range(n + 1)] for _ in range(q)]
    assume(general_position(H, n))
    return H


# -- span and order sequences -----------------------------------------------------------

def test_span_dimensions():
    assert span_dimension(NORMAL) == 2
    assert span_dimension(curve([1], [0, 1], [0, 1])) == 1
    f = curve_from_forms(forms(catalog.get("mo-osserman-a").data))
    assert span_dimension(f) <= 2


def test_restriction_is_nondegenerate():
    f = curve([1], [0, 1], [0, 1], [2, 3])
    res = restrict_to_span(f)
    assert res.curve.n == span_dimension(f) == 1


def test_order_sequences_of_model_curves():
    assert order_sequence(NORMAL, Ex(3, 1)).delta == (0, 1, 2)
    s = order_sequence(QUARTIC, Ex(0))
    assert s.delta == (0, 1, 4) and s.stationary == (0, 2)
    s = order_sequence(QUARTIC, INF)
    assert s.delta == (0, 3, 4) and s.stationary == (2, 0)


def test_stationary_totals_of_model_curves():
    r = stationary_totals(NORMAL)
    assert r.sigma == [0, 0] and r.plucker_lhs() == r.plucker_rhs() == 0
    r = stationary_totals(QUARTIC)
    assert r.sigma == [2, 2]
    assert r.plucker_lhs() == 6 == r.plucker_rhs()
    assert r.routes_agree


def test_degenerate_curve_needs_restriction():
    with pytest.raises(DegenerateCurve):
        stationary_totals(curve([1], [0, 1], [0, 1]))
    assert plucker_report(curve([1], [0, 1], [0, 1])).sigma == [0]


def test_moebius_reparametrization_keeps_totals():
    # (1 : z : z^4) composed with z -> (2z + 1)/(z + 3), cleared of denominators
    a, b = Poly([1, 2]), Poly([3, 1])
    f = ProjectiveCurve((b ** 4, a * b ** 3, a ** 4))
    assert stationary_totals(f).sigma == [2, 2]


@settings(max_examples=100)
@given(curves())
def test_plucker_identity_on_random_curves(f):
    rep = plucker_report(f)
    assert rep.routes_agree
    assert rep.plucker_lhs() == rep.plucker_rhs()


# -- hyperplanes ------------------------------------------------------------------------------

def test_general_position_examples():
    H = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
    assert general_position(H, 2)
    assert not general_position(H + [[1, 1, 1]], 2)


def test_catenoid_curve_omits_a_hyperplane():
    f = curve_from_forms(forms(catalog.get("catenoid").data))
    dom = catalog.get("catenoid").data.domain
    ram = hyperplane_ramification(f, [Ex(1), -I, Ex(0)], dom)
    assert ram.omitted


def test_coordinate_hyperplane_against_normal_curve():
    ram = hyperplane_ramification(NORMAL, [1, 0, 0], PuncturedSphere((INF,)))
    # the section is the constant 1: no finite zeros, all of its degree sits at the puncture
    assert ram.omitted
    assert [p for p, _ in ram.divisor] == [INF]


def test_curve_inside_hyperplane():
    with pytest.raises(CurveInHyperplane):
        hyperplane_ramification(curve([1], [0, 1], [0, 1]), [0, 1, -1], PuncturedSphere((INF,)))


def test_smt3_on_normal_curve():
    H = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 5]]
    rep = smt3_check(NORMAL, H)
    assert rep.passed


def test_smt3_trivial_range():
    rep = smt3_check(NORMAL, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rep.get("smt.degenerate").lhs <= 0 and rep.passed


def test_smt3_rejects_special_arrangements():
    with pytest.raises(NotGeneralPosition):
        smt3_check(NORMAL, [[1, 0, 0], [1, 0, 0], [0, 0, 1]])


@settings(max_examples=60)
@given(st.data())
def test_smt3_on_random_triples(data):
    f = data.draw(curves(max_n=3, max_deg=5))
    n = f.n
    H = data.draw(arrangements(n, data.draw(st.integers(n + 1, 2 * n + 3))))
    E = data.draw(st.lists(st.builds(Ex, st.integers(-2, 2), st.integers(-2, 2)), max_size=3, unique_by=str))
    try:
        rep = smt3_check(f, H, E)
    except CurveInHyperplane:
        assume(False)
    assert rep.get("smt.degenerate").passed
    if f.n == span_dimension(f):
        assert rep.get("smt.nondegenerate").passed
        assert "literal_reading" in rep.info


def test_verify_rn_on_line_in_p3():
    phis = forms(catalog.get("catenoid").data)
    d = WDataN(catalog.get("catenoid").data.domain, tuple(phis))
    H = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    rep = verify_rn(d, H)
    assert rep.passed


def test_mo_osserman_reports_general_position_status():
    from minsurf.weierstrass import as_rn
    d = as_rn(catalog.get("mo-osserman-a").data)
    # the third coordinate vanishes on the curve, so avoid it; these four are dependent
    H = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [1, 1, 0, 1]]
    rep = verify_rn(d, H)
    assert rep.info["general_position"] is False
    assert any("general position" in w for w in rep.warnings)
    assert all(not c.applicable for c in rep.checks)
    assert rep.info["r"] <= 2
    with pytest.raises(CurveInHyperplane):
        verify_rn(d, [[0, 0, 1, 0]])


# -- Fujimoto construction ----------------------------------------------------------------------

def test_fujimoto_three_forms():
    F = fujimoto_construction(3)
    hs = F.curve.components
    assert hs[0] == Poly([1, 0, 1])
    assert hs[1] == Poly([I, 0, -I])
    assert hs[2] == Poly([0, I * 2])
    assert quadric_residual(F.data.phis).is_zero()


@pytest.mark.parametrize("n", [3, 5])
def test_fujimoto_construction(n):
    F = fujimoto_construction(n)
    q = n * (n + 1) // 2
    assert len(F.hyperplanes) == q
    assert general_position(F.hyperplanes, n - 1)
    assert quadric_residual(F.data.phis).is_zero()
    omitted = F.certified_omitted()
    assert len(omitted) >= q - (n - 1)
    rep = verify_rn(F.data, F.hyperplanes)
    assert rep.passed
    assert rep.info["omitted"] >= q - (n - 1)


def test_fujimoto_smt3_with_punctures():
    F = fujimoto_construction(3)
    E = [p for p in F.data.domain.punctures]
    assert smt3_check(F.curve, F.hyperplanes, E).passed


def test_fujimoto_constant_section_is_omitted():
    F = fujimoto_construction(3)
    i = next(i for i, s in enumerate(F.sections) if s.degree == 0)
    ram = hyperplane_ramification(F.curve, F.hyperplanes[i], F.data.domain)
    assert ram.omitted


def test_fujimoto_needs_odd_n():
    with pytest.raises(ValueError):
        fujimoto_construction(4)


def test_curve_json_round_trip():
    f = ProjectiveCurve.from_json(QUARTIC.to_json())
    assert f == QUARTIC
