"""Order reduction of the second iterate along level sets of the 2-integral.

For odd k the alternating 2-integral W is constant along orbits of F^2, so
on a level {W = 1/kappa} the second iterate factors through fewer variables.
Conventions (pinned by golden tests):

  k=3, reduced state (x, z) = coordinates (1, 3) of the full state:
      lift(x, z)    = (x, kappa (x+1)(z+1), z)
      step(x, z)    = (z, (a + kappa + z (kappa+1)) / (kappa x (z+1)))

  k=5, reduced state (x, y, z, s) = coordinates (1, 2, 3, 5):
      lift(x,y,z,s) = (x, y, z, kappa (x+1)(z+1)(s+1) / y, s)
      step(x,y,z,s) = (z, kappa (x+1)(z+1)(s+1) / y, s,
                       (c x^2 + (2c + y(a+s+z)) x + c + y(z+s+a+y)) / (x y^2))
      with c = kappa (s+1)(z+1).

In both cases the reduced step equals the projection of F^2 applied to the
lifted point, exactly over the rationals; `semiconjugacy_residual` replays
both sides and returns the largest deviation (zero when the convention holds).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, DomainError
from .invariants import eval_w
from .lyness import Params, require_point, step


@dataclass(frozen=True)
class ReducedParams:
    """Parameter a >= 0 and level constant kappa = 1/W > 0 of the reduction."""

    a: object
    kappa: object

    def __post_init__(self):
        if not self.a >= 0:
            raise DomainError(f"parameter a must be >= 0, got {self.a!r}")
        if not self.kappa > 0:
            raise DomainError(f"kappa must be > 0, got {self.kappa!r}")


def _positive(coords):
    coords = tuple(coords)
    if not all(c > 0 for c in coords):
        raise DomainError(f"reduced state must be strictly positive: {coords}")
    return coords


def lift_k3(rp: ReducedParams, xz) -> tuple:
    """Insert the middle coordinate so the lifted point sits on {W = 1/kappa}."""
    x, z = _positive(xz)
    return (x, rp.kappa * (x + 1) * (z + 1), z)


def reduced_step_k3(rp: ReducedParams, xz) -> tuple:
    x, z = _positive(xz)
    return (z, (rp.a + rp.kappa + z * (rp.kappa + 1)) / (rp.kappa * x * (z + 1)))


def lift_k5(rp: ReducedParams, xyzs) -> tuple:
    """Insert the fourth coordinate so the lifted point sits on {W = 1/kappa}."""
    x, y, z, s = _positive(xyzs)
    return (x, y, z, rp.kappa * (x + 1) * (z + 1) * (s + 1) / y, s)


def reduced_step_k5(rp: ReducedParams, xyzs) -> tuple:
    x, y, z, s = _positive(xyzs)
    c = rp.kappa * (s + 1) * (z + 1)
    last = (c * x * x + (2 * c + y * (rp.a + s + z)) * x + c + y * (z + s + rp.a + y)) / (
        x * y * y
    )
    return (z, rp.kappa * (x + 1) * (z + 1) * (s + 1) / y, s, last)


def project(p: Params, x) -> tuple:
    """Drop the eliminated coordinate: (1,3) of three, (1,2,3,5) of five."""
    if p.k == 3:
        return (x[0], x[2])
    if p.k == 5:
        return (x[0], x[1], x[2], x[4])
    raise DimensionError(f"order reduction covers k in {{3, 5}}, got k={p.k}")


def semiconjugacy_residual(p: Params, x0, n: int):
    """Max deviation over n steps between the reduced orbit and the projected
    F^2 orbit started at x0, with kappa = 1/W(x0). Exactly zero over rationals.
    """
    if p.k not in (3, 5):
        raise DimensionError(f"order reduction covers k in {{3, 5}}, got k={p.k}")
    if n < 0:
        raise ValueError("n must be >= 0")
    x0 = require_point(p, x0)
    rp = ReducedParams(a=p.a, kappa=1 / eval_w(p, x0))
    advance = reduced_step_k3 if p.k == 3 else reduced_step_k5
    reduced = project(p, x0)
    full = x0
    dev = x0[0] - x0[0]  # zero of the working field
    for _ in range(n):
        reduced = advance(rp, reduced)
        full = step(p, step(p, full))
        gap = max(abs(r - f) for r, f in zip(reduced, project(p, full)))
        dev = max(dev, gap)
    return dev
