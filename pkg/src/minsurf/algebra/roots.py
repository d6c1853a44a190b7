"""Root isolation: Aberth-Ehrlich iteration, exact snapping, float clustering."""
from __future__ import annotations

import itertools
import logging

import numpy as np

from ..tolerances import DEFAULT, Tolerances
from .poly import Poly
from .scalars import Ex, field_sqrt, snap_gaussian
from .sphere import Divisor

log = logging.getLogger(__name__)

__all__ = ["aberth", "numeric_roots", "isolate_exact_roots", "poly_roots", "AmbiguousRoots"]


class AmbiguousRoots(ValueError):
    def __init__(self, a, b):
        super().__init__(f"root clusters too close to separate: {a} and {b}")
        self.candidates = (a, b)


def aberth(coeffs: np.ndarray, maxiter: int = 300, eps: float = 4e-16):
    """Simultaneous Aberth-Ehrlich iteration.

    ``coeffs`` ascending.  Returns (roots, converged).
    """
    c = np.asarray(coeffs, dtype=complex)
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=complex), True
    c = c / c[-1]
    # Fujiwara-type radius bound for the initial circle
    mags = np.abs(c[:-1])
    rad = 2 * max(mags[n - k] ** (1.0 / k) for k in range(1, n + 1)) if mags.any() else 1.0
    rad = max(rad, 1e-3) * 0.5
    ang = 2 * np.pi * np.arange(n) / n + 0.4
    z = rad * np.exp(1j * ang)
    dc = np.arange(1, n + 1) * c[1:]
    pr, dpr = c[::-1], dc[::-1]
    for _ in range(maxiter):
        pz = np.polyval(pr, z)
        dpz = np.polyval(dpr, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            s = (1.0 / diff).sum(axis=1) - 1.0
            step = w / (1 - w * s)
        if not np.all(np.isfinite(step)):
            return z, False
        z = z - step
        if np.all(np.abs(step) <= eps * np.maximum(1.0, np.abs(z))):
            return z, True
    return z, False


def _newton_polish(coeffs: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    pr = coeffs[::-1]
    dpr = (np.arange(1, len(coeffs)) * coeffs[1:])[::-1]
    for _ in range(steps):
        dp = np.polyval(dpr, z)
        ok = np.abs(dp) > 0
        z = np.where(ok, z - np.polyval(pr, z) / np.where(ok, dp, 1), z)
    return z


def numeric_roots(p: Poly) -> np.ndarray:
    """All roots of ``p`` as complex floats (with multiplicity)."""
    cs = p.coeffs_complex()
    if len(cs) <= 1:
        return np.zeros(0, dtype=complex)
    z, ok = aberth(cs)
    if not ok:
        log.debug("aberth did not converge, falling back to companion matrix")
        z = np.roots(cs[::-1])
    return _newton_polish(cs, np.asarray(z, dtype=complex))


def isolate_exact_roots(q: Poly) -> list:
    """Roots of an exact square-free polynomial.

    Each root is returned exact (Gaussian rational, or a quadratic-extension
    element via the quadratic formula) when exact verification succeeds,
    otherwise as a complex float.
    """
    out: list = []
    q = q.monic()
    if q.degree < 1:
        return out
    if q.c[0].is_zero():
        out.append(Ex(0))
        q = q.deflate(Ex(0))[0]
    if q.degree < 1:
        return out
    if q.degree == 1:
        return out + [-q.c[0] / q.c[1]]
    bound = q.integer_content_bound()
    fl = list(numeric_roots(q))
    rest = []
    for r in fl:
        cand = snap_gaussian(r, bound)
        if cand is not None and q.degree >= 1:
            qq, rem = q.deflate(cand)
            if rem.is_zero():
                out.append(cand)
                q = qq
                continue
        rest.append(r)
    if q.degree == 1:
        out.append(-q.c[0] / q.c[1])
        return out
    if q.degree == 0:
        return out
    # try to split off quadratic factors over Q(i) and solve them exactly
    m = q.field_m
    used = set()
    for i, j in itertools.combinations(range(len(rest)), 2):
        if i in used or j in used or q.degree < 2:
            continue
        s = snap_gaussian(rest[i] + rest[j], bound)
        pr = snap_gaussian(rest[i] * rest[j], bound)
        if s is None or pr is None:
            continue
        quad = Poly([pr, -s, 1])
        qq, rem = q.divmod(quad)
        if not rem.is_zero():
            continue
        sq = field_sqrt(s * s - 4 * pr, m)
        if sq is None:
            continue
        try:
            r1, r2 = (s + sq) / 2, (s - sq) / 2
        except ValueError:
            continue
        out.extend([r1, r2])
        used.update((i, j))
        q = qq
    if q.degree == 1:
        out.append(-q.c[0] / q.c[1])
    elif q.degree > 1:
        out.extend(complex(r) for k, r in enumerate(rest) if k not in used)
    return out


def _cluster(roots: np.ndarray, scale: float, tol: Tolerances):
    """Group float roots into clusters (multiple roots spread ~ eps**(1/m))."""
    pts = [complex(r) for r in roots]
    clusters: list[list[complex]] = []
    for z in sorted(pts, key=lambda w: (w.real, w.imag)):
        clusters.append([z])
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(range(len(clusters)), 2):
            ca, cb = clusters[a], clusters[b]
            ma, mb = np.mean(ca), np.mean(cb)
            m = len(ca) + len(cb)
            radius = 10 * scale * (1e-15) ** (1.0 / m)
            if abs(ma - mb) <= radius:
                clusters[a] = ca + cb
                del clusters[b]
                changed = True
                break
    centers = [complex(np.mean(c)) for c in clusters]
    for a, b in itertools.combinations(range(len(centers)), 2):
        if abs(centers[a] - centers[b]) <= 10 * tol.root * scale:
            raise AmbiguousRoots(centers[a], centers[b])
    return [(c, len(cl)) for c, cl in zip(centers, clusters)]


def poly_roots(p: Poly, tol: Tolerances = DEFAULT) -> Divisor:
    """Divisor of finite roots of ``p`` with multiplicities."""
    if p.is_zero():
        raise ValueError("undefined divisor: zero polynomial")
    d = Divisor(tol=tol.match)
    if p.degree < 1:
        return d
    if p.exact:
        for fac, mult in p.squarefree_decomposition():
            for r in isolate_exact_roots(fac):
                d._add(r, mult)
        return d
    roots = numeric_roots(p)
    scale = max([1.0] + [abs(r) for r in roots])
    for c, mult in _cluster(roots, scale, tol):
        d._add(_polish(p, c, mult), mult)
    return d


def _polish(p: Poly, c: complex, mult: int) -> complex:
    """Newton on the (mult-1)-th derivative, where a cluster centre is a simple root."""
    q = p
    for _ in range(mult - 1):
        q = q.derivative()
    dq = q.derivative()
    z, best = c, abs(q.evalf(c))
    for _ in range(8):
        d = dq.evalf(z)
        if d == 0:
            break
        w = z - q.evalf(z) / d
        v = abs(q.evalf(w))
        if not v < best:
            break
        z, best = w, v
    return complex(z)
