"""Small dense linear algebra over exact scalars (with a float fallback)."""
from __future__ import annotations

import numpy as np

from .scalars import Ex

__all__ = ["is_exact_matrix", "rref", "rank", "det", "det_nonzero", "solve_left"]


def _zero(x):
    return x.is_zero() if type(x) is Ex else x == 0


def is_exact_matrix(rows) -> bool:
    return all(type(x) is Ex for row in rows for x in row)


def rref(rows):
    """Reduced row echelon form over the exact field.

    Returns (rref rows without zero rows, pivot columns).
    """
    a = [list(r) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if not _zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and not _zero(a[i][c]):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def _rank_float(rows, rtol=1e-9) -> int:
    m = np.array([[complex(x) for x in r] for r in rows], dtype=complex)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int((s > rtol * s[0]).sum())


def rank(rows, rtol: float = 1e-9) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if is_exact_matrix(rows):
        return len(rref(rows)[0])
    return _rank_float(rows, rtol)


def det(rows):
    """Bareiss fraction-free determinant (exact), numpy for floats."""
    n = len(rows)
    if n == 0:
        return Ex(1)
    if not is_exact_matrix(rows):
        return complex(np.linalg.det(np.array([[complex(x) for x in r] for r in rows])))
    a = [list(r) for r in rows]
    sign = 1
    prev = Ex(1)
    for k in range(n - 1):
        if _zero(a[k][k]):
            sw = next((i for i in range(k + 1, n) if not _zero(a[i][k])), None)
            if sw is None:
                return Ex(0)
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def solve_left(basis, target):
    """Coefficients c with sum_j c_j basis[j] == target (exact, basis independent)."""
    n = len(basis)
    m = len(target)
    # columns are basis vectors: augment [B^T | target]
    aug = [[basis[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    red, piv = rref(aug)
    if n in piv:
        raise ValueError("target not in the span of the basis")
    c = [Ex(0)] * n
    for row, p in zip(red, piv):
        c[p] = row[n]
    return c


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sqrt_mod(a: int, p: int):
    """Tonelli-Shanks; None when a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q, s = q // 2, s + 1
    z = next(c for c in range(2, p) if pow(c, (p - 1) // 2, p) == p - 1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2, i = t2 * t2 % p, i + 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


_PRIMES = {}


def _prime_for(m):
    """A prime with sqrt(-1) and sqrt(m) both defined mod p."""
    if m not in _PRIMES:
        p = 1_000_000_009
        while True:
            if p % 4 == 1 and _is_prime(p):
                sm = _sqrt_mod(m, p) if m is not None else 1
                if sm is not None:
                    _PRIMES[m] = (p, _sqrt_mod(p - 1, p), sm)
                    break
            p += 2
    return _PRIMES[m]


def _mod_p(x, ctx):
    p, si, sm = ctx
    out = 0
    for q, w in ((x.ar, 1), (x.ai, si), (x.br, sm), (x.bi, si * sm)):
        if q.denominator % p == 0:
            return None
        out += q.numerator * pow(q.denominator, -1, p) * w
    return out % p


def _det_mod_p(a, p):
    n = len(a)
    d = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        d = d * a[k][k] % p
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return d % p


def _field_of(rows):
    ms = {x.m for r in rows for x in r if x.m is not None}
    return ms.pop() if len(ms) == 1 else None if not ms else False


def reduce_mod_p(rows):
    """Rows reduced modulo a prime where the field embeds, or None.

    The image of a nonzero determinant can vanish, never the reverse, so a
    nonzero reduced determinant certifies independence.
    """
    m = _field_of(rows)
    if m is False:
        return None
    ctx = _prime_for(m)
    out = [[_mod_p(x, ctx) for x in r] for r in rows]
    if any(x is None for r in out for x in r):
        return None
    return ctx[0], out


def det_nonzero(rows, reduced=None) -> bool:
    """Whether det != 0, trying the mod-p certificate before exact Bareiss."""
    if is_exact_matrix(rows):
        red = reduced if reduced is not None else reduce_mod_p(rows)
        if red is not None and _det_mod_p([list(r) for r in red[1]], red[0]):
            return True
        return not det(rows).is_zero()
    return abs(det(rows)) > 1e-12
