"""Numerical tolerances shared across the package.

Defaults can be overridden per call, through ``--tol K=V`` on the command
line, or through the ``MINSURF_TOL`` environment variable
(``"root=1e-12,per=1e-10"``).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    root: float = 1e-10    # relative root-cluster radius (float mode)
    res: float = 1e-8      # residual bound |p(r)| <= res * ||p||
    per: float = 1e-9      # |Re period| allowed in float mode
    match: float = 1e-8    # point identification (e.g. "is this a puncture")
    quad: float = 1e-9     # per-segment line-integral tolerance
    area: float = 1e-7     # relative tolerance for total-curvature quadrature

    def updated(self, **kw) -> "Tolerances":
        unknown = set(kw) - {f.name for f in fields(self)}
        if unknown:
            raise KeyError(f"unknown tolerance(s): {sorted(unknown)}")
        return replace(self, **{k: float(v) for k, v in kw.items()})

    @classmethod
    def parse(cls, specs, base: "Tolerances | None" = None) -> "Tolerances":
        base = base or cls()
        kw = {}
        for spec in specs:
            for part in spec.split(","):
                part = part.strip()
                if not part:
                    continue
                k, _, v = part.partition("=")
                kw[k.strip()] = v.strip()
        return base.updated(**kw)


def default_tolerances() -> Tolerances:
    env = os.environ.get("MINSURF_TOL", "")
    return Tolerances.parse([env]) if env else Tolerances()


DEFAULT = default_tolerances()
