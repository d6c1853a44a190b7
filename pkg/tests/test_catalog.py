import math
from fractions import Fraction

import pytest

from minsurf import catalog
from minsurf.catalog import InvalidParameters, UnknownEntry, parse_params
from minsurf.gauss import ramification_profile
from minsurf.periods import classify, period_condition
from minsurf.surface import total_curvature
from minsurf.theorems import ratio_of, verify
from minsurf.weierstrass import WData3, WData4

R3 = [e.name for e in catalog.list_entries() if isinstance(e.data, WData3)]
R4 = [e.name for e in catalog.list_entries() if isinstance(e.data, WData4) and e.partner is None]


def test_catalog_has_every_reference_surface():
    want = {"enneper", "catenoid", "helicoid", "jorge-meeks", "voss", "miyaoka-sato", "costa",
            "unicity-r3", "mo-osserman-a", "mo-osserman-b", "kawakami", "unicity-r4", "fujimoto"}
    assert want <= set(catalog.names())
    assert len(catalog.names()) >= 12


def test_bookkeeping_entries_have_no_data():
    for name in ("helicoid", "costa"):
        e = catalog.get(name)
        assert not e.analyzable and e.flags


@pytest.mark.parametrize("name", R3)
def test_r3_profile_matches_expected(name):
    e = catalog.get(name)
    p = ramification_profile(e.data.g, e.data.domain)
    want = e.expected
    if "D_g" in want:
        assert p.D_g == want["D_g"]
    if "nu_g" in want:
        assert p.nu_g == want["nu_g"]
    if "l" in want:
        assert p.l == want["l"]
    assert e.data.g.degree == want.get("d", e.data.g.degree)
    assert e.data.domain.k == want.get("k", e.data.domain.k)
    if "R" in want and want["R"] is not None:
        assert ratio_of(e.data).value == want["R"]


@pytest.mark.parametrize("name", R3 + R4)
def test_period_and_classification(name):
    e = catalog.get(name)
    if "period" in e.expected:
        assert period_condition(e.data).passed == e.expected["period"]
    if "classification" in e.expected:
        assert classify(e.data).tag == e.expected["classification"]


@pytest.mark.parametrize("name", [n for n in R3 if catalog.get(n).expected.get("tau") is not None])
def test_total_curvature_matches_expected(name):
    e = catalog.get(name)
    assert total_curvature(e.data).value == pytest.approx(e.expected["tau"], rel=0.01)


@pytest.mark.parametrize("name", R4)
def test_r4_ratios(name):
    e = catalog.get(name)
    rep = verify(e.data)
    for key in ("R1", "R2"):
        if key in e.expected:
            assert rep.info[key].value == e.expected[key]
    p = ramification_profile(e.data.g1, e.data.domain)
    assert p.nu_g == e.expected["nu_g1"]


def test_miyaoka_sato_sigma_is_exact():
    e = catalog.get("miyaoka-sato")
    s = e.extra["sigma"]
    assert s * s == Fraction(-5, 3)
    assert catalog.get("miyaoka-sato-normalized").expected["exceptional"] == [1, -1]


def test_unicity_r4_constant_records_stated_value():
    e = catalog.get("unicity-r4-constant")
    assert e.expected["p"] == 4 and e.expected["p_stated"] == 5


def test_parameters_are_forwarded():
    assert catalog.get("jorge-meeks", r=5).data.domain.k == 5
    assert catalog.get("voss", k=4, a=(1, 2, 3)).data.domain.k == 4
    assert catalog.get("fujimoto", n=5).expected["q"] == 15


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        catalog.get("gyroid")


def test_invalid_parameters():
    with pytest.raises(InvalidParameters):
        catalog.get("catenoid", r=3)


def test_parse_params():
    assert parse_params(["k=4", "a=1,2,3", "t=1/2", "c=1+2i"]) == {
        "k": 4, "a": (1, 2, 3), "t": Fraction(1, 2), "c": complex(1, 2)}
    with pytest.raises(InvalidParameters):
        parse_params(["k"])


def test_summaries_are_single_lines():
    for e in catalog.list_entries():
        assert "\n" not in e.summary() and e.summary().startswith(e.name)


def test_helicoid_and_costa_expectations():
    assert catalog.get("helicoid").expected["tau"] == -math.inf
    assert catalog.get("costa").expected["tau"] == pytest.approx(-12 * math.pi)
