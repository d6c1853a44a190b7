"""Numerical surfaces: Abel-Jacobi integration, curvature, total curvature, export.

Everything here is floating point.  Forms are converted once to complex
coefficient arrays and evaluated with numpy.
"""
from __future__ import annotations

import io
import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.special import roots_legendre

from .algebra import divisor_of_form, is_inf
from .periods import period_condition
from .tolerances import DEFAULT, Tolerances
from .weierstrass import EndPoint, WData3, WData4, forms


class Multivalued(ValueError):
    def __init__(self, where):
        super().__init__(f"multivalued: period condition fails around {where}; enable slits")


class PathThroughPole(ValueError):
    pass


class QuadratureBudget(RuntimeError):
    def __init__(self, partial, error):
        super().__init__(f"quadrature budget exhausted (partial value {partial:.12g}, error {error:.3g})")
        self.partial, self.error = partial, error


# -- form evaluation ------------------------------------------------------------

class _FormEval:
    """Float evaluation of phi_1..phi_n and their derivatives."""

    def __init__(self, d):
        fs = forms(d)
        self.n = len(fs)
        self.num = [f.coeff.num.coeffs_complex()[::-1] for f in fs]
        self.den = [f.coeff.den.coeffs_complex()[::-1] for f in fs]
        self._forms = fs

    @cached_property
    def poles(self):
        return sorted({complex(p) for f in self._forms if not f.is_zero()
                       for p, m in divisor_of_form(f) if m < 0 and not is_inf(p)},
                      key=lambda c: (c.real, c.imag))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.stack([np.polyval(a, z) / np.polyval(b, z) for a, b in zip(self.num, self.den)])

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        out = []
        for a, b in zip(self.num, self.den):
            na, nb = np.polyval(a, z), np.polyval(b, z)
            da, db = np.polyval(np.polyder(a), z), np.polyval(np.polyder(b), z)
            out.append((da * nb - na * db) / nb ** 2)
        return np.stack(out)


def _segment_distance(a: complex, b: complex, p: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(p - a)
    t = min(1.0, max(0.0, ((p - a) * ab.conjugate()).real / abs(ab) ** 2))
    return abs(a + t * ab - p)


_GL_LO = roots_legendre(8)
_GL_HI = roots_legendre(16)


def _check_poles(F: _FormEval, a: complex, b: complex):
    for p in F.poles:
        if _segment_distance(a, b, p) <= 1e-9 * max(1.0, abs(p)):
            raise PathThroughPole(f"segment {a} -> {b} passes through a pole at {p}")


def _rule(F: _FormEval, A: np.ndarray, B: np.ndarray, rule) -> np.ndarray:
    x, w = rule
    mid, half = (A + B) / 2, (B - A) / 2
    z = mid[:, None] + half[:, None] * x[None, :]
    vals = F(z)                                     # (n, m, nodes)
    return (vals * w).sum(axis=-1) * half[None, :]  # (n, m)


def integrate_segments(F: _FormEval, A, B, tol: Tolerances = DEFAULT, depth: int = 0) -> np.ndarray:
    """Vectorised adaptive Gauss 8/16 rule on many segments; returns (m, n)."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.size == 0:
        return np.zeros((0, F.n), dtype=complex)
    lo, hi = _rule(F, A, B, _GL_LO), _rule(F, A, B, _GL_HI)
    err = np.abs(hi - lo).max(axis=0)
    scale = np.maximum(np.abs(hi).max(axis=0), 1.0)
    bad = ~(err <= tol.quad * scale)
    out = hi.T.copy()
    if bad.any():
        if depth > 40:
            raise PathThroughPole("line integral does not converge (pole on or near the path)")
        M = (A[bad] + B[bad]) / 2
        out[bad] = (integrate_segments(F, A[bad], M, tol, depth + 1)
                    + integrate_segments(F, M, B[bad], tol, depth + 1))
    return out


def _integrate_segment(F: _FormEval, a: complex, b: complex, tol: Tolerances) -> np.ndarray:
    """int_a^b phi along the straight segment (complex vector)."""
    if a == b:
        return np.zeros(F.n, dtype=complex)
    _check_poles(F, a, b)
    return integrate_segments(F, [a], [b], tol)[0]


def _integrate_path(F: _FormEval, a: complex, b: complex, tol: Tolerances) -> np.ndarray:
    """Straight segment, or a bent two-segment detour around a pole on it."""
    try:
        return _integrate_segment(F, a, b, tol)
    except PathThroughPole:
        mid = (a + b) / 2 + 0.25j * (b - a)
        return _integrate_segment(F, a, mid, tol) + _integrate_segment(F, mid, b, tol)


def abel_jacobi(d, z, z0, tol: Tolerances = DEFAULT) -> np.ndarray:
    """x(z) = Re int_{z0}^{z} (phi_1, ..., phi_n) along a straight path."""
    for p in (z, z0):
        if is_inf(p) or d.domain.is_puncture(p):
            raise EndPoint(f"cannot integrate to an end point {p}")
    F = _FormEval(d)
    return _integrate_path(F, complex(z0), complex(z), tol).real


# -- curvature ---------------------------------------------------------------------

def _abs2(x):
    return (x * np.conj(x)).real


def curvature_formula(d, z):
    """Closed-form Gauss curvature from the Weierstrass data.

    R^3: K = -16 |g'|^2 / (|h|^2 (1+|g|^2)^4)
    R^4: K = -8 (|g1'|^2/(1+|g1|^2)^2 + |g2'|^2/(1+|g2|^2)^2) / (|h|^2 (1+|g1|^2)(1+|g2|^2))
    R^n: K = -4 |phi ^ phi'|^2 / |phi|^6
    """
    z = np.asarray(z, dtype=complex)
    if isinstance(d, WData3):
        h = _abs2(d.h_form.coeff.evalf(z))
        g, dg = d.g.evalf(z), d.g.derivative().evalf(z)
        return -16 * _abs2(dg) / (h * (1 + _abs2(g)) ** 4)
    if isinstance(d, WData4):
        h = _abs2(d.h_form.coeff.evalf(z))
        g1, g2 = d.g1.evalf(z), d.g2.evalf(z)
        d1, d2 = d.g1.derivative().evalf(z), d.g2.derivative().evalf(z)
        a1, a2 = 1 + _abs2(g1), 1 + _abs2(g2)
        return -8 * (_abs2(d1) / a1 ** 2 + _abs2(d2) / a2 ** 2) / (h * a1 * a2)
    return curvature_general(d, z)


def _wedge2(f, df):
    """|f ^ f'|^2 = |f|^2 |f'|^2 - |<f', f>|^2 along axis 0."""
    nf = _abs2(f).sum(axis=0)
    nd = _abs2(df).sum(axis=0)
    inner = (df * np.conj(f)).sum(axis=0)
    return np.maximum(nf * nd - _abs2(inner), 0.0), nf


def curvature_general(d, z):
    """K = -4 |phi ^ phi'|^2 / |phi|^6 for any codimension."""
    F = _FormEval(d)
    z = np.asarray(z, dtype=complex)
    w, nf = _wedge2(F(z), F.derivative(z))
    return -4 * w / nf ** 3


def lambda2(d, z):
    F = _FormEval(d)
    return 0.5 * _abs2(F(np.asarray(z, dtype=complex))).sum(axis=0)


def _laplacian_log_lambda(d, z: complex, step: float):
    pts = np.array([z, z + step, z - step, z + 1j * step, z - 1j * step])
    L = np.log(lambda2(d, pts)) / 2
    return (L[1] + L[2] + L[3] + L[4] - 4 * L[0]) / step ** 2, L[0]


def curvature_fd(d, z: complex, step: float = 1e-3, richardson: bool = False) -> float:
    """-Delta log(lambda) / lambda^2 by the five-point stencil.

    With ``richardson`` the stencils at ``step`` and ``2 step`` are combined
    to cancel the O(step^2) truncation term.
    """
    z = complex(z)
    lap, L0 = _laplacian_log_lambda(d, z, step)
    if richardson:
        lap2, _ = _laplacian_log_lambda(d, z, 2 * step)
        lap = (4 * lap - lap2) / 3
    return float(-lap / math.exp(2 * L0))


def curvature_field(d, points) -> np.ndarray:
    pts = [complex(p) for p in points]
    for p in points:
        if is_inf(p) or d.domain.is_puncture(p):
            raise EndPoint(f"curvature requested at end point {p}")
    return np.asarray(curvature_formula(d, np.array(pts)), dtype=float)


def isothermal_defect(d, z) -> tuple[float, float]:
    """(|x_u|^2 - |x_v|^2, <x_u, x_v>) from x_u = Re phi, x_v = -Im phi."""
    F = _FormEval(d)
    v = F(np.asarray([complex(z)]))[:, 0]
    xu, xv = v.real, -v.imag
    return float(xu @ xu - xv @ xv), float(xu @ xv)


# -- total curvature --------------------------------------------------------------

@dataclass
class QuadratureResult:
    value: float
    error: float
    subdivisions: int

    def to_json(self):
        return {"value": self.value, "error": self.error, "subdivisions": self.subdivisions}


def _density_curves(d):
    """(weight, components) pairs whose Fubini-Study areas sum to -tau."""
    if isinstance(d, WData3):
        if d.g.is_constant():
            return []
        return [(4.0, [d.g.den.to_float(), d.g.num.to_float()])]
    if isinstance(d, WData4):
        return [(2.0, [g.den.to_float(), g.num.to_float()]) for g in (d.g1, d.g2) if not g.is_constant()]
    from .curves import curve_from_forms
    if d.is_flat():
        return []
    f = curve_from_forms(d.phis)
    return [(2.0, [c.to_float() for c in f.components])]


def _fs_density(comps, z):
    """|f ^ f'|^2 / |f|^4 for polynomial components."""
    cs = [c.coeffs_complex()[::-1] for c in comps]
    f = np.stack([np.polyval(c, z) if c.size else np.zeros_like(z) for c in cs])
    df = np.stack([np.polyval(np.polyder(c), z) if c.size > 1 else np.zeros_like(z) for c in cs])
    w, nf = _wedge2(f, df)
    return w / nf ** 2


def _disk_integral(func, n: int) -> float:
    """Gauss-Legendre in r times the periodic trapezoid rule in theta on |z| < 1."""
    x, wx = roots_legendre(n)
    r = (x + 1) / 2
    wr = wx / 2
    m = 2 * n
    th = 2 * np.pi * np.arange(m) / m
    R, T = np.meshgrid(r, th, indexing="ij")
    z = R * np.exp(1j * T)
    vals = func(z) * R
    return float((wr[:, None] * vals).sum() * 2 * np.pi / m)


def total_curvature(d, tol: Tolerances = DEFAULT, n0: int = 16, max_n: int = 4096) -> QuadratureResult:
    """tau = -int K dA by the Gauss-map area density over two unit-disk charts."""
    d.domain.require_genus0()
    curves = _density_curves(d)
    if not curves:
        return QuadratureResult(0.0, 0.0, 0)

    def integrand(z):
        acc = np.zeros(z.shape)
        for wgt, comps in curves:
            D = max(c.degree for c in comps)
            acc += wgt * _fs_density(comps, z)
            acc += wgt * _fs_density([c.reversed(D) if not c.is_zero() else c for c in comps], z)
        return acc

    n, prev, err = n0, None, math.inf
    subdiv = 0
    while n <= max_n:
        val = -_disk_integral(integrand, n)
        subdiv += 1
        if prev is not None:
            err = abs(val - prev)
            if err <= tol.area * max(1.0, abs(val)):
                return QuadratureResult(val, err, subdiv)
        prev, n = val, n * 2
    raise QuadratureBudget(prev, err)


# -- meshes ---------------------------------------------------------------------

@dataclass
class GridSpec:
    """Log-polar annulus grid: nr rings times nt spokes around ``center``."""

    nr: int = 32
    nt: int = 32
    center: complex | None = None
    r_min: float | None = None
    r_max: float | None = None
    exclusion: float = 1e-2
    slit: bool = True

    @classmethod
    def parse(cls, text: str, **kw) -> "GridSpec":
        a, b = text.lower().replace("×", "x").split("x")
        return cls(int(a), int(b), **kw)


@dataclass
class Mesh:
    vertices: np.ndarray          # (N, n) positions
    params: np.ndarray            # (N,) source points z
    faces: list                   # index triples
    lambda2: np.ndarray
    K: np.ndarray
    slits: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1] if self.vertices.size else 3

    @classmethod
    def empty(cls, dim: int = 3):
        return cls(np.zeros((0, dim)), np.zeros(0, dtype=complex), [], np.zeros(0), np.zeros(0))


def _default_center(d):
    fin = [complex(p) for p in d.domain.finite_punctures()]
    if not fin:
        return 0j
    if any(p == 0 for p in fin):
        return 0j
    # geometric mean of the finite punctures (principal branch)
    return complex(np.exp(np.mean(np.log(np.array(fin)))))


def _ray_crosses(a: complex, b: complex, p: complex, u: complex) -> bool:
    """Does segment [a, b] cross the ray p + t u (t >= 0)?"""
    # rotate so the ray lies on the positive real axis
    A, B = (a - p) / u, (b - p) / u
    if (A.imag > 0) == (B.imag > 0) or A.imag == B.imag:
        return False
    t = A.imag / (A.imag - B.imag)
    return (A + t * (B - A)).real >= 0


def _in_triangle(p, a, b, c) -> bool:
    cr = lambda u, v: (u.conjugate() * v).imag
    s1, s2, s3 = cr(b - a, p - a), cr(c - b, p - b), cr(a - c, p - c)
    return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)


def _build_grid(d, spec: GridSpec):
    c = spec.center if spec.center is not None else _default_center(d)
    fin = [complex(p) for p in d.domain.finite_punctures()]
    others = [abs(p - c) for p in fin if abs(p - c) > 0]
    scale = max(others) if others else 1.0
    center_is_puncture = d.domain.is_puncture(c)
    r_min = spec.r_min if spec.r_min is not None else (0.2 if center_is_puncture else 0.05) * scale
    r_max = spec.r_max if spec.r_max is not None else (5.0 if center_is_puncture else 2.0) * scale
    radii = np.geomspace(r_min, r_max, spec.nr)
    th = 2 * np.pi * np.arange(spec.nt) / spec.nt
    pts = (c + radii[:, None] * np.exp(1j * th)[None, :]).ravel()
    idx = lambda i, j: i * spec.nt + (j % spec.nt)
    faces, edges = [], set()
    for i in range(spec.nr - 1):
        for j in range(spec.nt):
            a, b, cc, dd = idx(i, j), idx(i, j + 1), idx(i + 1, j + 1), idx(i + 1, j)
            faces += [(a, b, cc), (a, cc, dd)]
    for i in range(spec.nr):
        for j in range(spec.nt):
            edges.add((idx(i, j), idx(i, j + 1)))
            if i + 1 < spec.nr:
                edges.add((idx(i, j), idx(i + 1, j)))
                edges.add((idx(i, j), idx(i + 1, j + 1)))
    pts = list(pts)
    if not center_is_puncture:
        ci = len(pts)
        pts.append(c)
        for j in range(spec.nt):
            faces.append((ci, idx(0, j), idx(0, j + 1)))
            edges.add((ci, idx(0, j)))
    return np.array(pts), faces, edges, c, r_max, scale


def immerse(d, z0=None, spec: GridSpec | None = None, tol: Tolerances = DEFAULT) -> Mesh:
    """Integrate the Abel-Jacobi map over a log-polar grid; x(z0) = 0."""
    d.domain.require_genus0()
    spec = spec or GridSpec()
    pts, faces, edges, c, r_max, scale = _build_grid(d, spec)
    F = _FormEval(d)
    # exclusion around punctures and any stray poles
    bad = [p for p in [complex(q) for q in d.domain.finite_punctures()] + F.poles]
    excl = lambda p: spec.exclusion * max(scale, abs(p), 1e-300)
    keep = np.ones(len(pts), dtype=bool)
    for p in bad:
        keep &= np.abs(pts - p) > excl(p)
    # slits when periods fail
    slits = []
    if not period_condition(d, tol).passed:
        inside = [p for p in (complex(q) for q in d.domain.finite_punctures()) if abs(p - c) < r_max]
        if inside and not spec.slit:
            raise Multivalued(", ".join(f"{p:.6g}" for p in inside))
        for p in inside:
            u = (p - c) / abs(p - c) if abs(p - c) > 0 else -1 + 0j
            # tilt off the grid spokes so no edge lies along a slit
            slits.append((p, u * complex(math.cos(0.0123), math.sin(0.0123))))
    # graph without edges crossing slits
    adj = {i: [] for i in range(len(pts))}
    cut = set()
    for a, b in edges:
        if not (keep[a] and keep[b]):
            continue
        if (any(_ray_crosses(pts[a], pts[b], p, u) for p, u in slits)
                or any(_segment_distance(pts[a], pts[b], p) <= excl(p) for p in bad)):
            cut.add((min(a, b), max(a, b)))
            continue
        adj[a].append(b)
        adj[b].append(a)
    faces = [f for f in faces if all(keep[v] for v in f)
             and not any(_in_triangle(p, *(pts[v] for v in f)) for p in bad)
             and not any((min(a, b), max(a, b)) in cut for a, b in ((f[0], f[1]), (f[1], f[2]), (f[0], f[2])))]
    # base point
    if z0 is None:
        z0 = complex(pts[np.flatnonzero(keep)[0]])
    z0 = complex(z0)
    if d.domain.is_puncture(z0):
        raise EndPoint("base point is an end")
    live = np.flatnonzero(keep)
    if live.size == 0:
        return Mesh.empty(F.n)
    root = int(live[np.argmin(np.abs(pts[live] - z0))])
    q = deque([root])
    seen, tree = {root}, []
    while q:
        a = q.popleft()
        for b in sorted(adj[a]):
            if b not in seen:
                seen.add(b)
                tree.append((a, b))
                q.append(b)
    for a, b in tree:
        _check_poles(F, complex(pts[a]), complex(pts[b]))
    steps = integrate_segments(F, [pts[a] for a, _ in tree], [pts[b] for _, b in tree], tol)
    X = np.full((len(pts), F.n), np.nan, dtype=complex)
    X[root] = _integrate_path(F, z0, complex(pts[root]), tol)
    for (a, b), s in zip(tree, steps):
        X[b] = X[a] + s
    reached = np.array([i in seen for i in range(len(pts))])
    order = np.flatnonzero(reached)
    remap = {int(o): k for k, o in enumerate(order)}
    faces = [tuple(remap[v] for v in f) for f in faces if all(reached[v] for v in f)]
    zs = pts[order]
    return Mesh(X[order].real, zs, faces, lambda2(d, zs), curvature_formula(d, zs), slits)


def face_closure_defect(d, mesh: Mesh, tol: Tolerances = DEFAULT) -> float:
    """Max |Re oint phi| around mesh triangles (path independence)."""
    F = _FormEval(d)
    worst = 0.0
    for f in mesh.faces:
        a, b, c = (complex(mesh.params[v]) for v in f)
        loop = (_integrate_segment(F, a, b, tol) + _integrate_segment(F, b, c, tol)
                + _integrate_segment(F, c, a, tol))
        worst = max(worst, float(np.abs(loop.real).max()))
    return worst


# -- export ----------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.12e}"


def export_mesh(m: Mesh, fmt: str = "obj") -> bytes:
    fmt = fmt.lower()
    buf = io.StringIO()
    if fmt == "obj":
        buf.write("# minsurf mesh\n")
        for v in m.vertices:
            xyz = list(v[:3]) + [0.0] * (3 - min(3, len(v)))
            buf.write("v " + " ".join(_fmt(x) for x in xyz) + "\n")
        for f in m.faces:
            buf.write("f " + " ".join(str(i + 1) for i in f) + "\n")
    elif fmt == "ply":
        extra = [f"x{i + 1}" for i in range(3, m.dim)]
        buf.write("ply\nformat ascii 1.0\n")
        buf.write(f"element vertex {len(m.vertices)}\n")
        for name in ["x", "y", "z"] + extra + ["K", "lambda2"]:
            buf.write(f"property double {name}\n")
        buf.write(f"element face {len(m.faces)}\nproperty list uchar int vertex_indices\nend_header\n")
        for v, k, l2 in zip(m.vertices, m.K, m.lambda2):
            buf.write(" ".join(_fmt(x) for x in list(v) + [k, l2]) + "\n")
        for f in m.faces:
            buf.write("3 " + " ".join(str(i) for i in f) + "\n")
    elif fmt == "json":
        side = {"coords": [[float(x) for x in v] for v in m.vertices],
                "params": [[float(z.real), float(z.imag)] for z in m.params],
                "K": [float(k) for k in m.K], "lambda2": [float(x) for x in m.lambda2]}
        buf.write(json.dumps(side, sort_keys=True))
    else:
        raise ValueError(f"unsupported mesh format {fmt!r} (obj, ply, json)")
    return buf.getvalue().encode()


def read_ply(data: bytes) -> dict:
    """Parse an ascii PLY written by :func:`export_mesh`."""
    lines = data.decode().splitlines()
    props, nv, nf, i = [], 0, 0, 0
    while lines[i] != "end_header":
        parts = lines[i].split()
        if parts[:2] == ["element", "vertex"]:
            nv = int(parts[2])
        elif parts[:2] == ["element", "face"]:
            nf = int(parts[2])
        elif parts[0] == "property" and parts[1] != "list":
            props.append(parts[2])
        i += 1
    i += 1
    rows = np.array([[float(x) for x in lines[i + k].split()] for k in range(nv)]).reshape(nv, len(props))
    faces = [tuple(int(x) for x in lines[i + nv + k].split()[1:]) for k in range(nf)]
    return {name: rows[:, j] for j, name in enumerate(props)} | {"faces": faces}
