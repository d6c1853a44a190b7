import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from minsurf import catalog
from minsurf.algebra import INF, Ex, MeromorphicForm, Poly, RatFunc
from minsurf.gauss import ramification_profile
from minsurf.theorems import (
    BranchedCover, IdenticalMaps, RatioR, pullback_covering, ratio_of, shared_values, unicity_r3,
    unicity_r4, verify,
)
from minsurf.weierstrass import PuncturedSphere, WData3
from strategies import data3

Z = Poly([0, 1])


def checks(rep, theorem, form):
    return [c for c in rep.checks if c.theorem == theorem and c.form == form]


def test_ratio_values():
    assert RatioR.r3(2, 0, 3).value == 4
    assert RatioR.r3(1, 0, 2).value == math.inf
    assert RatioR.r3(1, 0, 1).nonhyperbolic
    assert RatioR.rn(1, 0, 4).value == Fraction(1, 2)


def test_miyaoka_sato_equalities():
    rep = verify(catalog.get("miyaoka-sato").data)
    assert rep.passed
    assert checks(rep, "r3.exceptional", "R")[0].equality
    assert checks(rep, "r3.totally_ramified", "R")[0].equality
    assert rep.info["R"].value == 4


@pytest.mark.parametrize("k,R", [(3, 2), (4, 1)])
def test_voss_exceptional_equality(k, R):
    rep = verify(catalog.get("voss", k=k).data)
    c = checks(rep, "r3.exceptional", "R")[0]
    assert c.lhs == k and c.rhs == k and c.equality
    assert rep.info["R"].value == R


def test_catenoid_raw_bound_and_infinite_ratio():
    rep = verify(catalog.get("catenoid").data)
    raw = checks(rep, "r3.exceptional", "raw")[0]
    assert (raw.lhs, raw.rhs) == (2, 2)
    rform = checks(rep, "r3.exceptional", "R")[0]
    assert rform.rhs == 2 and rep.info["R"].value == math.inf


def test_enneper_is_flagged_nonhyperbolic():
    rep = verify(catalog.get("enneper").data)
    assert rep.passed
    assert any("non-hyperbolic" in w for w in rep.warnings)
    assert all(not c.applicable for c in rep.checks if c.form == "R")
    assert all(c.passed for c in rep.checks if c.form == "raw")


def test_mo_osserman_pair_equality():
    rep = verify(catalog.get("mo-osserman-a").data)
    pair = rep.get("r4.pair")
    assert pair.lhs == 1 and pair.rhs == 1 and pair.equality


def test_mo_osserman_one_constant():
    rep = verify(catalog.get("mo-osserman-b").data)
    c = checks(rep, "r4.totally_ramified.g1", "R")[0]
    assert c.lhs == 3 and c.rhs == 3


def test_kawakami_raw_equality():
    rep = verify(catalog.get("kawakami").data)
    c = checks(rep, "r4.totally_ramified.g1", "raw")[0]
    assert c.lhs == 2 and c.rhs == 2 and c.equality


def test_unicity_pair_in_r3():
    e = catalog.get("unicity-r3")
    rep = unicity_r3(e.data.g, e.partner.g, e.data.domain)
    sv = rep.info["shared"]
    assert sv.q == 6
    want = e.expected["shared"]
    assert sorted(map(str, sv.values)) == sorted(map(str, want))
    c = checks(rep, "r3.unicity", "R")[0]
    assert c.rhs == 6 and c.equality


def test_unicity_pair_in_r4():
    e = catalog.get("unicity-r4")
    rep = unicity_r4(e.data, e.partner)
    assert rep.info["shared_g1"].q == 6 and rep.info["shared_g2"].q == 6
    assert rep.passed


def test_unicity_r4_constant_second_map():
    e = catalog.get("unicity-r4-constant")
    rep = unicity_r4(e.data, e.partner)
    sv = rep.info["shared_g1"]
    # alpha is a puncture but 1/alpha is not, so the fibres over alpha differ
    assert sv.q == 4
    assert sorted(map(str, sv.values)) == sorted(map(str, [Ex(0), INF, Ex(1), Ex(-1)]))
    assert rep.passed


def test_identical_maps_are_refused():
    d = catalog.get("catenoid").data
    with pytest.raises(IdenticalMaps):
        shared_values(d.g, d.g, d.domain)


def test_pullback_of_voss_base():
    base = WData3(PuncturedSphere((Ex(0), Ex(1), INF)), MeromorphicForm(RatFunc(Poly([1]), Z * Poly([-1, 1]))),
                  RatFunc(Z))
    up = pullback_covering(base, 2)
    assert up.domain.k == 4 and up.g.degree == 2
    assert ratio_of(up).value == ratio_of(base).value == 2
    assert pullback_covering(base, 1) is base


def test_pullback_of_catenoid_keeps_infinite_ratio():
    up = pullback_covering(catalog.get("catenoid").data, 2)
    assert up.domain.k == 2 and up.g.degree == 2
    assert ratio_of(up).den == 0


def test_pullback_needs_zero_and_infinity_as_punctures():
    with pytest.raises(BranchedCover):
        pullback_covering(catalog.get("enneper").data, 2)


@settings(max_examples=40)
@given(data3(with_zero_and_inf=True))
def test_pullback_invariance(d):
    p = ramification_profile(d.g, d.domain)
    for m in (2, 3):
        up = pullback_covering(d, m)
        q = ramification_profile(up.g, up.domain)
        assert (p.D_g, p.nu_g) == (q.D_g, q.nu_g)
        assert ratio_of(up).value == ratio_of(d).value


@settings(max_examples=40)
@given(data3())
def test_raw_bounds_hold_on_random_data(d):
    rep = verify(d)
    for c in rep.checks:
        if c.form == "raw" and c.theorem in ("r3.exceptional", "r3.totally_ramified", "r3.fibre_count"):
            assert c.passed, c.to_json()
