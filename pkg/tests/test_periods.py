import pytest
from hypothesis import given, settings

from minsurf import catalog
from minsurf.algebra import INF, Ex, I, MeromorphicForm, Poly, RatFunc, divisor_of_form
from minsurf.periods import classify, period_condition, residue, residue_float, residue_sum
from minsurf.weierstrass import PuncturedSphere, WData3, forms
from strategies import ratfuncs

Z = Poly([0, 1])
ONE = Poly([1])


def test_simple_residue():
    assert residue(MeromorphicForm(RatFunc(ONE, Z)), Ex(0)) == Ex(1)


def test_catenoid_third_form_residue():
    assert residue(forms(catalog.get("catenoid").data)[2], Ex(0)) == Ex(1)


def test_voss_second_form_residue():
    phi2 = forms(catalog.get("voss", k=4, a=(1, 2, 3)).data)[1]
    assert residue(phi2, Ex(1)) == I / 2


def test_residue_at_infinity_of_dz_over_z():
    assert residue(MeromorphicForm(RatFunc(ONE, Z)), INF) == Ex(-1)


def test_quadrature_residue_matches_exact():
    w = MeromorphicForm(RatFunc(Poly([1, 2, 3]), Poly([Ex(0, 1), 0, 1]) * Poly([-1, 1]) ** 2))
    for p in (Ex(1), Ex(0, 1) * Ex.sqrt_of(-1) + Ex(0, 1), INF):
        assert abs(complex(residue(w, p)) - residue_float(w, p)) < 1e-10


@settings(max_examples=50)
@given(ratfuncs(max_deg=5))
def test_residue_theorem(f):
    if f.is_zero():
        return
    w = MeromorphicForm(f)
    total = residue_sum(w)
    if type(total) is Ex:
        assert total == 0
    else:
        # some poles lie outside the coefficient field and were integrated numerically
        scale = 1 + sum(abs(complex(residue(w, p))) for p, m in divisor_of_form(w) if m < 0)
        assert abs(complex(total)) <= 1e-9 * scale


def test_residue_sum_is_exact_when_poles_are_gaussian():
    w = MeromorphicForm(RatFunc(Poly([1, 2, 3]), Poly.from_roots([Ex(1), Ex(0, 2), Ex(1), Ex(-1, 1)])))
    assert residue_sum(w) == Ex(0)


def test_residue_theorem_float():
    w = MeromorphicForm(RatFunc(Poly([1, 2, 3]), Poly.from_roots([Ex(1), Ex(0, 2), Ex(-1, 1)])).to_float())
    assert abs(complex(residue_sum(w))) < 1e-10


def test_period_condition_catalog():
    assert period_condition(catalog.get("catenoid").data).passed
    assert not period_condition(catalog.get("voss").data).passed
    assert period_condition(catalog.get("kawakami").data).passed
    rep = period_condition(catalog.get("miyaoka-sato").data)
    assert rep.passed and rep.mode == "exact"


def test_classification():
    assert classify(catalog.get("catenoid").data).tag == "algebraic"
    assert classify(catalog.get("voss", k=4).data).tag == "pseudo-algebraic"
    flat = WData3(PuncturedSphere((INF,)), MeromorphicForm(RatFunc(ONE)), RatFunc(Poly([2])))
    assert classify(flat).tag == "flat"


def test_kawakami_is_not_complete():
    c = classify(catalog.get("kawakami").data)
    assert c.tag is None and not c.complete
    assert "inf" in c.verdict


@pytest.mark.parametrize("name", ["catenoid", "jorge-meeks", "voss"])
def test_float_mode_agrees_with_exact(name):
    from minsurf.weierstrass import to_float
    d = catalog.get(name).data
    a, b = period_condition(d), period_condition(to_float(d))
    assert a.passed == b.passed
    assert b.mode == "float"
