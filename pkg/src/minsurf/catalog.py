"""Built-in Weierstrass data with expected invariants.

Expected values are stored as plain Python (Fractions, ``math.inf`` for an
infinite ratio, ``None`` where a quantity is undefined) so the acceptance
suite can compare them directly with the analyzers' output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import INF, Ex, MeromorphicForm, Poly, RatFunc
from .weierstrass import PuncturedSphere, WData3, WData4

Z = Poly([0, 1])
ONE = Poly([1])
PI = math.pi


class UnknownEntry(KeyError):
    pass


class InvalidParameters(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    params: dict
    data: object                  # WData3 / WData4 / WDataN, or None for bookkeeping entries
    expected: dict
    provenance: str
    flags: tuple = ()             # "transcendental", "genus-1 bookkeeping", "profile-only", "pair"
    mode: str = "exact"
    partner: object = None        # second data set for unicity pairs
    extra: dict = field(default_factory=dict)

    @property
    def analyzable(self) -> bool:
        return self.data is not None

    def summary(self) -> str:
        kind = self.data.kind if self.data is not None else "-"
        fl = f" [{', '.join(self.flags)}]" if self.flags else ""
        return f"{self.name:<24} {kind:<3} {self.provenance}{fl}"


def _ex(x):
    if isinstance(x, Ex):
        return x
    if isinstance(x, complex):
        return Ex(Fraction(x.real).limit_denominator(10 ** 6), Fraction(x.imag).limit_denominator(10 ** 6))
    return Ex(Fraction(x))


def _prod(pts):
    return Poly.from_roots([_ex(a) for a in pts])


def _w3(h, g, punctures):
    return WData3(PuncturedSphere(tuple(punctures)), MeromorphicForm(h), g)


def _w4(h, g1, g2, punctures):
    return WData4(PuncturedSphere(tuple(punctures)), MeromorphicForm(h), g1, g2)


# -- R^3 --------------------------------------------------------------------------

def enneper():
    return CatalogEntry(
        "enneper", {}, _w3(RatFunc(ONE), RatFunc(Z), [INF]),
        {"D_g": 1, "nu_g": Fraction(1), "d": 1, "G": 0, "k": 1, "R": None, "tau": -4 * PI,
         "period": True, "classification": "algebraic", "nonhyperbolic": True},
        "Enneper surface (dz, z) on C")


def catenoid():
    return CatalogEntry(
        "catenoid", {}, _w3(RatFunc(ONE, Z * Z), RatFunc(Z), [Ex(0), INF]),
        {"D_g": 2, "nu_g": Fraction(2), "d": 1, "G": 0, "k": 2, "R": math.inf, "tau": -4 * PI,
         "period": True, "classification": "algebraic"},
        "catenoid (dz/z^2, z) on C minus 0")


def helicoid():
    return CatalogEntry(
        "helicoid", {}, None,
        {"D_g": 2, "tau": -math.inf},
        "helicoid (e^-z dz, i e^z) on C; transcendental data, listed only",
        flags=("transcendental",))


def jorge_meeks(r: int = 3):
    if r < 2:
        raise InvalidParameters("Jorge-Meeks needs r >= 2")
    roots = Poly([-1] + [0] * (r - 1) + [1])
    # r-th roots of unity as punctures
    from .algebra import poly_roots
    pts = [p for p, _ in poly_roots(roots)]
    d = r - 1
    kden = Fraction(r, 2) - 1
    return CatalogEntry(
        "jorge-meeks", {"r": r}, _w3(RatFunc(ONE, roots * roots), RatFunc(Poly([0] * d + [1])), pts),
        {"D_g": 0 if r >= 3 else 2, "nu_g": 2 * (1 - Fraction(1, d)) if d > 1 else Fraction(0),
         "d": d, "G": 0, "k": r, "R": (Fraction(d) / kden) if kden else math.inf,
         "tau": -4 * (r - 1) * PI, "period": True, "classification": "algebraic"},
        f"Jorge-Meeks (dz/(z^r-1)^2, z^(r-1)), r={r}",
        mode="exact" if r in (1, 2, 3, 4, 6) else "float")


def voss(k: int = 3, a=None):
    if k not in (3, 4):
        raise InvalidParameters("Voss surfaces are listed for k = 3 or 4 punctures (counting inf)")
    a = tuple(a) if a is not None else ((1, 2, 3) if k == 4 else (1, 2))
    if len(a) != k - 1 or len(set(a)) != len(a):
        raise InvalidParameters(f"need {k - 1} distinct finite punctures")
    pts = [_ex(x) for x in a] + [INF]
    R = Fraction(1) / (Fraction(k, 2) - 1)
    return CatalogEntry(
        "voss", {"k": k, "a": list(a)}, _w3(RatFunc(ONE, _prod(a)), RatFunc(Z), pts),
        {"D_g": k, "nu_g": Fraction(k), "d": 1, "G": 0, "k": k, "R": R, "l": 0, "tau": None,
         "period": False, "classification": "pseudo-algebraic"},
        f"Voss surface g=z, h=1/prod(z-a_j) on C minus {list(a)}")


def _ms_sigma2(a, t):
    a, t = Fraction(a), Fraction(t)
    if (a - 1) * (t - 1) == 0:
        raise InvalidParameters("Miyaoka-Sato needs (a-1)(t-1) != 0")
    den = a * ((t - 1) * a + 4)
    if den == 0:
        raise InvalidParameters("sigma^2 is undefined for these (a, t)")
    s2 = (t + 3) / den
    if s2 >= 0:
        raise InvalidParameters(f"sigma^2 = {s2} must be negative")
    return a, t, s2


def miyaoka_sato(a=-1, t=2):
    a, t, s2 = _ms_sigma2(a, t)
    sigma = Ex.sqrt_of(s2)
    num = Poly([1 + a * (t - 1), 0, 1])
    den = Poly([t, 0, 1])
    g = RatFunc(num * sigma, den)
    h = RatFunc(den * den, Poly([1, 0, 1]) ** 2)
    pts = [Ex(0, 1), Ex(0, -1), INF]
    return CatalogEntry(
        "miyaoka-sato", {"a": str(a), "t": str(t)}, _w3(h, g, pts),
        {"D_g": 2, "nu_g": Fraction(5, 2), "d": 2, "G": 0, "k": 3, "R": Fraction(4), "l": 1,
         "exceptional": [sigma, sigma * Ex(a)], "tau": -8 * PI, "period": True,
         "classification": "algebraic", "sigma2": s2},
        "Miyaoka-Sato surface on P^1 minus {i, -i, inf}; omits sigma and sigma*a",
        extra={"sigma": sigma})


def miyaoka_sato_normalized(a=-1, t=2):
    """g/sigma with Gaussian-rational coefficients; value distribution only."""
    a, t, s2 = _ms_sigma2(a, t)
    num = Poly([1 + a * (t - 1), 0, 1])
    den = Poly([t, 0, 1])
    h = RatFunc(den * den, Poly([1, 0, 1]) ** 2)
    return CatalogEntry(
        "miyaoka-sato-normalized", {"a": str(a), "t": str(t)},
        _w3(h, RatFunc(num, den), [Ex(0, 1), Ex(0, -1), INF]),
        {"D_g": 2, "nu_g": Fraction(5, 2), "d": 2, "G": 0, "k": 3, "R": Fraction(4), "l": 1,
         "exceptional": [Ex(1), Ex(a)]},
        "Miyaoka-Sato Gauss map divided by sigma (Moebius image; profile checks only)",
        flags=("profile-only",))


def costa():
    return CatalogEntry(
        "costa", {}, None,
        {"D_g": 1, "G": 1, "k": 3, "d": 3, "R": Fraction(2), "tau": -12 * PI, "classification": "algebraic"},
        "Costa surface on the square torus minus 3 points; (G, k, d) bookkeeping only",
        flags=("genus-1 bookkeeping",))


def voss_pullback(m: int = 2):
    """Voss data on C minus {0, 1} pulled back along z -> z^m."""
    from .theorems import pullback_covering
    base = _w3(RatFunc(ONE, _prod([0, 1])), RatFunc(Z), [Ex(0), Ex(1), INF])
    d = pullback_covering(base, m)
    k = d.domain.k
    return CatalogEntry(
        "voss-pullback", {"m": m}, d,
        {"D_g": 3, "nu_g": Fraction(3), "d": m, "G": 0, "k": k, "R": Fraction(2), "period": False,
         "classification": "pseudo-algebraic"},
        f"Voss surface on C minus {{0, 1}} lifted through the unbranched cover z -> z^{m}",
        mode="exact" if m in (1, 2, 3, 4, 6) else "float")


def unicity_r3(alpha=2):
    al = _ex(alpha)
    h = RatFunc(ONE, Z * (Z - Poly([al])) * (Poly([-1, 0]) + Z * al))
    pts = [Ex(0), al, al.inverse(), INF]
    A = _w3(h, RatFunc(Z), pts)
    B = _w3(h, RatFunc(ONE, Z), pts)
    return CatalogEntry(
        "unicity-r3", {"alpha": str(alpha)}, A,
        {"q": 6, "shared": [Ex(0), INF, al, al.inverse(), Ex(1), Ex(-1)], "R": Fraction(1), "bound": Fraction(6)},
        "pair (z, 1/z) on C minus {0, alpha, 1/alpha}; six shared fibres",
        flags=("pair",), partner=B)


# -- R^4 --------------------------------------------------------------------------

def mo_osserman_a(a=(1, 2, 3)):
    a = tuple(a)
    if len(a) != 3 or len(set(a)) != 3:
        raise InvalidParameters("need three distinct points")
    pts = [_ex(x) for x in a] + [INF]
    return CatalogEntry(
        "mo-osserman-a", {"a": list(a)}, _w4(RatFunc(ONE, _prod(a)), RatFunc(Z), RatFunc(Z), pts),
        {"nu_g1": Fraction(4), "nu_g2": Fraction(4), "d1": 1, "d2": 1, "G": 0, "k": 4,
         "R1": Fraction(1, 2), "R2": Fraction(1, 2), "pair_lhs": Fraction(1), "period": False,
         "classification": "pseudo-algebraic", "span": 2},
        "R^4 data (dz/prod(z-a_i), z, z) on C minus three points; x^3 = 0")


def mo_osserman_b(a=(1, 2)):
    a = tuple(a)
    if len(a) != 2 or len(set(a)) != 2:
        raise InvalidParameters("need two distinct points")
    pts = [_ex(x) for x in a] + [INF]
    return CatalogEntry(
        "mo-osserman-b", {"a": list(a)}, _w4(RatFunc(ONE, _prod(a)), RatFunc(Z), RatFunc(0), pts),
        {"nu_g1": Fraction(3), "d1": 1, "G": 0, "k": 3, "R1": Fraction(1), "period": False,
         "classification": "pseudo-algebraic"},
        "R^4 data (dz/prod(z-a_i), z, 0): a complex curve in C^2")


def kawakami(c=0):
    cc = _ex(c)
    return CatalogEntry(
        "kawakami", {"c": str(c)}, _w4(RatFunc(ONE, Z ** 3), RatFunc(Z), RatFunc.const(cc), [Ex(0), INF]),
        {"nu_g1": Fraction(2), "d1": 1, "G": 0, "k": 2, "R1": math.inf, "period": True,
         "classification": None, "raw_equality": True},
        "R^4 data (dz/z^3, z, c) on C minus 0; the metric stays bounded at inf")


def unicity_r4(alpha=2):
    al = _ex(alpha)
    h = RatFunc(ONE, Z * (Z - Poly([al])) * (Poly([-1, 0]) + Z * al))
    pts = [Ex(0), al, al.inverse(), INF]
    A = _w4(h, RatFunc(Z), RatFunc(Z), pts)
    B = _w4(h, RatFunc(ONE, Z), RatFunc(ONE, Z), pts)
    return CatalogEntry(
        "unicity-r4", {"alpha": str(alpha)}, A,
        {"p": 6, "q": 6, "R1": Fraction(1, 2), "R2": Fraction(1, 2), "pair_lhs": Fraction(1)},
        "R^4 pair (z, z) and (1/z, 1/z) on C minus {0, alpha, 1/alpha}",
        flags=("pair",), partner=B)


def unicity_r4_constant(alpha=2):
    al = _ex(alpha)
    h = RatFunc(ONE, Z * (Z - Poly([al])))
    pts = [Ex(0), al, INF]
    A = _w4(h, RatFunc(Z), RatFunc(0), pts)
    B = _w4(h, RatFunc(ONE, Z), RatFunc(0), pts)
    return CatalogEntry(
        "unicity-r4-constant", {"alpha": str(alpha)}, A,
        {"p": 4, "p_stated": 5, "R1": Fraction(1), "bound": Fraction(5)},
        "R^4 pair (z, 0) and (1/z, 0) on C minus {0, alpha}; stated p = 5, computed p = 4",
        flags=("pair",), partner=B)


# -- R^n --------------------------------------------------------------------------

def fujimoto(n: int = 3, seed: int = 0):
    from .curves import fujimoto_construction
    F = fujimoto_construction(n, seed)
    q = n * (n + 1) // 2
    k = n
    d = n - 1
    return CatalogEntry(
        "fujimoto", {"n": n, "seed": seed}, F.data,
        {"q": q, "omitted_certified": q - (n - 1), "d": d, "k": k, "R": Fraction(d, k - 2),
         "general_position": True},
        f"R^{n} data psi*h_i dz omitting hyperplanes (n odd)",
        extra={"construction": F})


_REGISTRY = {
    "enneper": enneper,
    "catenoid": catenoid,
    "helicoid": helicoid,
    "jorge-meeks": jorge_meeks,
    "voss": voss,
    "miyaoka-sato": miyaoka_sato,
    "miyaoka-sato-normalized": miyaoka_sato_normalized,
    "costa": costa,
    "voss-pullback": voss_pullback,
    "unicity-r3": unicity_r3,
    "mo-osserman-a": mo_osserman_a,
    "mo-osserman-b": mo_osserman_b,
    "kawakami": kawakami,
    "unicity-r4": unicity_r4,
    "unicity-r4-constant": unicity_r4_constant,
    "fujimoto": fujimoto,
}


def names() -> list[str]:
    return list(_REGISTRY)


def get(name: str, **params) -> CatalogEntry:
    try:
        ctor = _REGISTRY[name]
    except KeyError:
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(_REGISTRY)}") from None
    try:
        return ctor(**params)
    except TypeError as e:
        raise InvalidParameters(str(e)) from e


def list_entries() -> list[CatalogEntry]:
    return [get(n) for n in _REGISTRY]


def parse_params(items) -> dict:
    """``["k=4", "a=1,2,3"]`` -> {"k": 4, "a": (1, 2, 3)}"""
    out = {}
    for it in items or ():
        key, _, val = it.partition("=")
        if not _:
            raise InvalidParameters(f"parameter {it!r} is not KEY=VALUE")
        parts = [p.strip() for p in val.split(",")]
        conv = [_num(p) for p in parts]
        out[key.strip()] = tuple(conv) if len(conv) > 1 else conv[0]
    return out


def _num(s):
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return Fraction(s)
    except ValueError:
        return complex(s.replace("i", "j"))
