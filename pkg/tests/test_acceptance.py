"""Acceptance criteria: one PASS/FAIL line each, at the stated tolerances.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone;
under pytest the same lines are printed in the terminal summary.
"""
from __future__ import annotations

import math
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import samplers  # noqa: E402
from minsurf import catalog  # noqa: E402
from minsurf.algebra import Ex, MeromorphicForm, divisor_of_form, divisor_of_function, is_inf  # noqa: E402
from minsurf.curves import (  # noqa: E402
    CurveInHyperplane, fujimoto_construction, general_position, plucker_report, smt3_check,
)
from minsurf.gauss import branch_divisor, ramification_profile  # noqa: E402
from minsurf.periods import classify, period_condition, residue, residue_sum  # noqa: E402
from minsurf.surface import curvature_fd, curvature_formula, total_curvature  # noqa: E402
from minsurf.theorems import pullback_covering, ratio_of, unicity_r3, unicity_r4, verify  # noqa: E402
from minsurf.weierstrass import quadric_residual  # noqa: E402

RESULTS: dict[str, tuple[bool, str]] = {}
SEED = 20240611


def record(key, ok, detail):
    RESULTS[key] = (bool(ok), detail)
    return ok


def close(x, target, rel=0.01):
    return abs(x - target) <= rel * abs(target)


def check_of(rep, theorem, form):
    return next(c for c in rep.checks if c.theorem == theorem and c.form == form)


# -- catalog criteria -------------------------------------------------------------------

def crit_catenoid():
    d = catalog.get("catenoid").data
    p = ramification_profile(d.g, d.domain)
    tau = total_curvature(d).value
    cls = classify(d).tag
    per = period_condition(d).passed
    ok = p.D_g == 2 and cls == "algebraic" and per and close(tau, -4 * math.pi)
    return record("1", ok, f"catenoid D_g={p.D_g} {cls} periods={per} tau={tau:.6f} (-4pi={-4 * math.pi:.6f})")


def crit_enneper():
    d = catalog.get("enneper").data
    p = ramification_profile(d.g, d.domain)
    tau = total_curvature(d).value
    rep = verify(d)
    flag = any("non-hyperbolic" in w for w in rep.warnings)
    raw = all(c.passed for c in rep.checks if c.form == "raw")
    ok = p.D_g == 1 and close(tau, -4 * math.pi) and flag and raw
    return record("2", ok, f"enneper D_g={p.D_g} tau={tau:.6f} non-hyperbolic={flag} raw bounds pass={raw}")


def crit_jorge_meeks():
    d = catalog.get("jorge-meeks", r=3).data
    p = ramification_profile(d.g, d.domain)
    tau = total_curvature(d).value
    R = ratio_of(d).value
    ok = p.D_g == 0 and close(tau, -8 * math.pi) and p.nu_g == 1 and R == 4
    return record("3", ok, f"jorge-meeks r=3 D_g={p.D_g} tau={tau:.6f} (-8pi) nu_g={p.nu_g} R={R}")


def crit_miyaoka_sato():
    d = catalog.get("miyaoka-sato", a=-1, t=2).data
    p = ramification_profile(d.g, d.domain)
    rep = verify(d)
    eq_ex = check_of(rep, "r3.exceptional", "R").equality
    eq_tr = check_of(rep, "r3.totally_ramified", "R").equality
    R = rep.info["R"].value
    ok = p.D_g == 2 and p.nu_g == Fraction(5, 2) and d.g.degree == 2 and R == 4 and eq_ex and eq_tr
    return record("4", ok, f"miyaoka-sato D_g={p.D_g} nu_g={p.nu_g} d={d.g.degree} R={R} "
                           f"equality exceptional={eq_ex} totally-ramified={eq_tr}")


def crit_voss():
    parts = []
    ok = True
    for k, R_want in ((3, 2), (4, 1)):
        d = catalog.get("voss", k=k).data
        p = ramification_profile(d.g, d.domain)
        R = ratio_of(d).value
        rhs = 2 + Fraction(2, 1) / R
        per = period_condition(d).passed
        ok &= p.D_g == k == rhs and R == R_want and not per
        parts.append(f"k={k}: D_g={p.D_g} 2+2/R={rhs} R={R} periods={per}")
    return record("5", ok, "voss " + "; ".join(parts))


def crit_unicity_r3():
    e = catalog.get("unicity-r3")
    rep = unicity_r3(e.data.g, e.partner.g, e.data.domain)
    sv = rep.info["shared"]
    c = check_of(rep, "r3.unicity", "R")
    same = sorted(map(str, sv.values)) == sorted(map(str, e.expected["shared"]))
    ok = sv.q == 6 and same and c.rhs == 6 and c.equality
    return record("6", ok, f"unicity (z, 1/z): q={sv.q} values={[str(v) for v in sv.values]} bound={c.rhs} "
                           f"equality={c.equality}")


def crit_r4_mo_osserman():
    rep = verify(catalog.get("mo-osserman-a").data)
    pair = rep.get("r4.pair")
    ok = pair.equality and pair.lhs == 1 and pair.rhs == 1
    return record("7a", ok, f"mo-osserman R1+R2={pair.lhs} vs {pair.rhs} equality={pair.equality}")


def crit_r4_kawakami():
    d = catalog.get("kawakami").data
    p = ramification_profile(d.g1, d.domain)
    c = check_of(verify(d), "r4.totally_ramified.g1", "raw")
    ok = p.nu_g == 2 and c.equality
    return record("7b", ok, f"kawakami nu_g1={p.nu_g} raw {c.lhs} <= {c.rhs} equality={c.equality}")


def crit_r4_unicity():
    e = catalog.get("unicity-r4-constant")
    p = unicity_r4(e.data, e.partner).info["shared_g1"].q
    return record("7c", p == 5, f"r4 unicity pair p={p}, stated 5; alpha is a puncture but 1/alpha is not, "
                                "so the fibres over alpha differ and only 4 values are shared")


# -- property suites --------------------------------------------------------------------

def crit_divisor_degrees():
    rng = random.Random(SEED)
    bad = 0
    for _ in range(200):
        f = samplers.ratfunc(rng, 6)
        if f.is_zero():
            continue
        bad += divisor_of_function(f).degree() != 0 if not f.is_constant() else 0
        bad += divisor_of_form(MeromorphicForm(f)).degree() != -2
    return record("8a", bad == 0, f"divisor degrees on 200 exact rationals: {bad} violations")


def crit_riemann_hurwitz():
    rng = random.Random(SEED + 1)
    bad = sum(branch_divisor(g).degree() != 2 * (g.degree - 1)
              for g in (samplers.ratfunc(rng, 6, nonconstant=True) for _ in range(200)))
    return record("8b", bad == 0, f"Riemann-Hurwitz on 200 rationals deg<=6: {bad} violations")


def crit_moebius():
    rng = random.Random(SEED + 2)
    bad = 0
    for _ in range(50):
        d = samplers.data3(rng)
        p = ramification_profile(d.g, d.domain)
        q = ramification_profile(d.g.moebius_postcompose(samplers.moebius(rng)), d.domain)
        bad += (p.D_g, p.nu_g) != (q.D_g, q.nu_g)
    return record("8c", bad == 0, f"Moebius invariance of (D_g, nu_g) on 50 data: {bad} violations")


def crit_pullback():
    rng = random.Random(SEED + 3)
    bad = n = 0
    for _ in range(25):
        d = samplers.data3(rng, with_zero_and_inf=True)
        p, R = ramification_profile(d.g, d.domain), ratio_of(d).value
        for m in (2, 3):
            up = pullback_covering(d, m)
            q = ramification_profile(up.g, up.domain)
            bad += (p.D_g, p.nu_g, R) != (q.D_g, q.nu_g, ratio_of(up).value)
            n += 1
    return record("8d", bad == 0, f"pullback invariance of (R, D_g, nu_g), m in {{2,3}}: {n} cases, {bad} violations")


def crit_plucker():
    rng = random.Random(SEED + 4)
    bad = 0
    for _ in range(100):
        rep = plucker_report(samplers.curve(rng, 4, 8))
        bad += not (rep.routes_agree and rep.plucker_lhs() == rep.plucker_rhs())
    return record("8e", bad == 0, f"Pluecker identity with the (G-1) factor on 100 curves r<=4 deg<=8: {bad} violations")


def crit_residues():
    rng = random.Random(SEED + 5)
    bad = n = 0
    for _ in range(100):
        f = samplers.ratfunc(rng, 5)
        if f.is_zero():
            continue
        w = MeromorphicForm(f)
        total = residue_sum(w)
        n += 1
        if type(total) is not Ex:
            # poles outside the coefficient field are integrated numerically
            scale = 1 + sum(abs(complex(residue(w, p))) for p, m in divisor_of_form(w) if m < 0)
            bad += abs(complex(total)) > 1e-9 * scale
        else:
            bad += total != 0
    return record("8f", bad == 0, f"residue theorem on {n} forms: {bad} violations")


def crit_curvature():
    rng = random.Random(SEED + 6)
    worst, plain, pos, n = 0.0, 0.0, 0, 0
    while n < 100:
        d = samplers.data3(rng)
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        special = [complex(p) for p in d.domain.finite_punctures()]
        special += [complex(p) for p, m in divisor_of_form(d.h_form) if not is_inf(p)]
        special += [complex(p) for p, m in divisor_of_function(d.g) if m < 0 and not is_inf(p)]
        if any(abs(z - p) <= 0.4 for p in special):
            continue
        k = float(curvature_formula(d, z))
        pos += k > 0
        scale = max(1.0, abs(k))
        worst = max(worst, abs(k - curvature_fd(d, z, 1e-3, richardson=True)) / scale)
        plain = max(plain, abs(k - curvature_fd(d, z, 1e-3)) / scale)
        n += 1
    return record("8g", pos == 0 and worst <= 1e-4,
                  f"K<=0 at {n} smooth samples ({pos} positive); formula vs Richardson central differences "
                  f"step 1e-3: max rel err {worst:.2e} (plain five-point stencil {plain:.2e}, O(h^2) truncation)")


# -- R^n criteria -------------------------------------------------------------------------

def crit_fujimoto():
    parts, ok = [], True
    for n in (3, 5):
        F = fujimoto_construction(n)
        q = n * (n + 1) // 2
        quad = quadric_residual(F.data.phis).is_zero()
        gp = len(F.hyperplanes) == q and general_position(F.hyperplanes, n - 1)
        om = F.certified_omitted()
        a0 = [i for i, t in enumerate(F.families) if t == 0]
        a0_om = sum(i in om for i in a0)
        ok &= quad and gp and len(om) >= q - (n - 1)
        parts.append(f"n={n}: quadric={quad} q={q} general position={gp} omitted={len(om)} (>= {q - (n - 1)}); "
                     f"a0-family omitted {a0_om}/{len(a0)} (reported only)")
    return record("9", ok, "fujimoto " + "; ".join(parts))


def crit_smt3():
    rng = random.Random(SEED + 7)
    bad = literal = n = 0
    while n < 60:
        f = samplers.curve(rng, 3, 5)
        H = samplers.arrangement(rng, f.n, rng.randint(f.n + 1, 2 * f.n + 3))
        E = samplers._points(rng, rng.randint(0, 3))
        try:
            rep = smt3_check(f, H, E)
        except CurveInHyperplane:
            continue
        n += 1
        bad += not rep.passed
        lit = rep.info.get("literal_reading")
        literal += bool(lit) and not lit["holds"]
    return record("10", bad == 0, f"SMT with 2(G-1) on {n} triples: {bad} violations; "
                                  f"literal 2(G+1) reading violated {literal} times (logged)")


CRITERIA = [crit_catenoid, crit_enneper, crit_jorge_meeks, crit_miyaoka_sato, crit_voss, crit_unicity_r3,
            crit_r4_mo_osserman, crit_r4_kawakami, crit_r4_unicity, crit_divisor_degrees, crit_riemann_hurwitz,
            crit_moebius, crit_pullback, crit_plucker, crit_residues, crit_curvature, crit_fujimoto, crit_smt3]


def summary_lines():
    order = sorted(RESULTS, key=lambda k: (int("".join(c for c in k if c.isdigit())), k))
    return [f"{'PASS' if RESULTS[k][0] else 'FAIL'} criterion {k}: {RESULTS[k][1]}" for k in order]


@pytest.mark.parametrize("crit", [c for c in CRITERIA if c is not crit_r4_unicity], ids=lambda c: c.__name__[5:])
def test_criterion(crit):
    assert crit(), RESULTS


def test_r4_unicity_shared_count_is_four():
    crit_r4_unicity()
    assert catalog.get("unicity-r4-constant").expected["p"] == 4
    assert "p=4" in RESULTS["7c"][1]


@pytest.mark.xfail(strict=True, reason="the stated five shared values cannot be reached: only 4 fibres coincide")
def test_r4_unicity_stated_count():
    assert crit_r4_unicity()


if __name__ == "__main__":
    for c in CRITERIA:
        c()
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
