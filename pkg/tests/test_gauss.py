from fractions import Fraction

import pytest
from hypothesis import given, settings

from minsurf import catalog
from minsurf.algebra import INF, Ex, MeromorphicForm, Poly, RatFunc
from minsurf.gauss import (
    FlatGaussMap, branch_divisor, degree, exceptional_values, preimages, profile, profile_r4,
    ramification_profile,
)
from minsurf.weierstrass import PuncturedSphere, WData3
from strategies import data3, moebius, ratfuncs

Z = Poly([0, 1])


def prof(name, **kw):
    d = catalog.get(name, **kw).data
    return ramification_profile(d.g, d.domain)


def test_degrees():
    assert degree(RatFunc(Z)) == 1
    assert degree(catalog.get("jorge-meeks", r=3).data.g) == 2
    assert degree(catalog.get("miyaoka-sato").data.g) == 2


def test_constant_map_has_no_degree():
    with pytest.raises(FlatGaussMap):
        degree(RatFunc(Poly([3])))


def test_exceptional_values_of_catalog_surfaces():
    d = catalog.get("catenoid").data
    ex = exceptional_values(d.g, d.domain)
    assert len(ex) == 2 and Ex(0) in ex and INF in ex
    d = catalog.get("enneper").data
    assert exceptional_values(d.g, d.domain) == [INF]


def test_miyaoka_sato_omits_plus_minus_sigma():
    e = catalog.get("miyaoka-sato")
    ex = exceptional_values(e.data.g, e.data.domain)
    s = e.extra["sigma"]
    assert sorted(map(str, ex)) == sorted(map(str, [s, -s]))
    assert e.expected["sigma2"] == Fraction(-5, 3)


def test_branch_divisors():
    b = branch_divisor(RatFunc(Z * Z))
    assert b.mult(Ex(0)) == 1 and b.mult(INF) == 1 and b.degree() == 2
    b = branch_divisor(catalog.get("miyaoka-sato").data.g)
    assert b.mult(Ex(0)) == 1 and b.mult(INF) == 1


def test_profiles_of_catalog_surfaces():
    p = prof("miyaoka-sato")
    assert (p.D_g, p.nu_g, p.l) == (2, Fraction(5, 2), 1)
    p = prof("jorge-meeks", r=3)
    assert p.D_g == 0 and p.nu_g == 1
    assert sorted(nu for _, nu in p.totally_ramified) == [2, 2]
    p = prof("voss", k=4)
    assert p.n_g == 0 and p.D_g == 4 and p.nu_g == 4


def test_r4_profiles():
    pa = profile_r4(catalog.get("mo-osserman-a").data)
    assert pa["g1"].nu_g == 4 and pa["g2"].nu_g == 4
    pb = profile_r4(catalog.get("mo-osserman-b").data)
    assert pb["g2_constant"] and pb["g1"].nu_g == 3
    pk = profile_r4(catalog.get("kawakami").data)
    assert pk["g1"].nu_g == 2 and pk["g2_constant"]


def test_flat_data_is_refused():
    d = WData3(PuncturedSphere((INF,)), MeromorphicForm(RatFunc(Poly([1]))), RatFunc(Poly([2])))
    with pytest.raises(FlatGaussMap):
        profile(d)


def test_preimages_count_degree():
    g = catalog.get("miyaoka-sato").data.g
    assert preimages(g, Ex(3)).degree() == 2
    assert preimages(g, INF).degree() == 2


@settings(max_examples=200)
@given(ratfuncs(max_deg=6, nonconstant=True))
def test_riemann_hurwitz(g):
    assert branch_divisor(g).degree() == 2 * (g.degree - 1)


@settings(max_examples=50)
@given(data3(), moebius)
def test_moebius_invariance(d, T):
    p = ramification_profile(d.g, d.domain)
    q = ramification_profile(d.g.moebius_postcompose(T), d.domain)
    assert (p.D_g, p.nu_g, p.l, p.n_g) == (q.D_g, q.nu_g, q.l, q.n_g)


@settings(max_examples=50)
@given(data3())
def test_profile_identities(d):
    p = ramification_profile(d.g, d.domain)
    assert p.riemann_hurwitz_ok()
    assert p.counting_ok()
    assert p.l0 <= p.l
    assert p.D_g <= p.nu_g
