"""Points of the Riemann sphere and divisors on it."""
from __future__ import annotations

from fractions import Fraction

from .scalars import Ex

__all__ = ["INF", "is_inf", "same_point", "point_sort_key", "Divisor", "fmt_point"]


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(p) -> bool:
    return p is INF


def _norm_point(p):
    if p is INF:
        return p
    if isinstance(p, (int, Fraction)) and not isinstance(p, bool):
        return Ex(p)
    if type(p) is Ex:
        return p
    return complex(p)


def same_point(p, q, tol: float = 1e-8) -> bool:
    """Equality of sphere points: exact when both are exact, else relative tol."""
    p, q = _norm_point(p), _norm_point(q)
    if p is INF or q is INF:
        return p is q
    if type(p) is Ex and type(q) is Ex:
        if p.m is not None and q.m is not None and p.m != q.m:
            return abs(complex(p) - complex(q)) <= 1e-14 * max(1.0, abs(complex(p)))
        return p == q
    a, b = complex(p), complex(q)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def point_sort_key(p):
    if p is INF:
        return (1, 0.0, 0.0)
    z = complex(p)
    return (0, round(z.real, 9), round(z.imag, 9))


def fmt_point(p) -> str:
    if p is INF:
        return "inf"
    if type(p) is Ex:
        return str(p)
    z = complex(p)
    return f"{z.real:.12g}{z.imag:+.12g}j"


class Divisor:
    """Finite formal sum of sphere points with nonzero integer multiplicities.

    Float points are merged when they agree to ``tol``; exact points only
    when equal.
    """

    __slots__ = ("_items", "tol")

    def __init__(self, items=(), tol: float = 1e-8):
        self.tol = tol
        self._items: list[list] = []
        if isinstance(items, dict):
            items = items.items()
        for p, m in items:
            self._add(p, m)

    def _add(self, p, m):
        p = _norm_point(p)
        for it in self._items:
            if same_point(it[0], p, self.tol):
                it[1] += m
                # prefer an exact representative
                if type(p) is Ex and type(it[0]) is not Ex:
                    it[0] = p
                break
        else:
            self._items.append([p, m])
        self._items = [it for it in self._items if it[1] != 0]

    def copy(self):
        return Divisor(self.items(), self.tol)

    def items(self):
        return sorted(((p, m) for p, m in self._items), key=lambda t: point_sort_key(t[0]))

    def points(self):
        return [p for p, _ in self.items()]

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._items)

    def degree(self) -> int:
        return sum(m for _, m in self._items)

    def mult(self, p) -> int:
        for q, m in self._items:
            if same_point(q, p, self.tol):
                return m
        return 0

    def __contains__(self, p):
        return self.mult(p) != 0

    def __add__(self, other: "Divisor") -> "Divisor":
        out = self.copy()
        for p, m in other._items:
            out._add(p, m)
        return out

    def __neg__(self):
        return Divisor([(p, -m) for p, m in self._items], self.tol)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k: int) -> "Divisor":
        return Divisor([(p, k * m) for p, m in self._items], self.tol)

    def positive(self) -> "Divisor":
        return Divisor([(p, m) for p, m in self._items if m > 0], self.tol)

    def negative(self) -> "Divisor":
        return Divisor([(p, m) for p, m in self._items if m < 0], self.tol)

    def restrict(self, pred) -> "Divisor":
        return Divisor([(p, m) for p, m in self._items if pred(p)], self.tol)

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return (self - other)._items == []

    def to_json(self):
        from .codec import encode_point
        return [[encode_point(p), m] for p, m in self.items()]

    def __repr__(self):
        inner = ", ".join(f"{fmt_point(p)}: {m:+d}" for p, m in self.items())
        return "{" + inner + "}"
