"""The order-k Lyness recurrence map on the open positive orthant.

State x = (x1, ..., xk) with every coordinate > 0, parameter a >= 0:

    F(x1, ..., xk) = (x2, ..., xk, (a + x2 + ... + xk) / x1)

F is birational with inverse

    F^-1(y1, ..., yk) = ((a + y1 + ... + y_{k-1}) / yk, y1, ..., y_{k-1})

and maps the orthant onto itself whenever a >= 0. The Jacobian is
companion-shaped (a coordinate shift stacked on one rational row), so

    det DF(x) = (-1)^k (a + x2 + ... + xk) / x1^2,

by cofactor expansion along the first column. (A superficially similar
closed form with numerator a + x2 + ... + x_{k-1} over xk^2 is wrong; it
already fails at k=3, x=(1,1,1), a=1 and breaks the multiplicative
transport law of the coordinate product. See the README math notes.)

All functions accept coordinates from any scalar backend (Fraction, float,
Dual) and stay inside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DimensionError, DomainError
from .scalars import RatMatrix


@dataclass(frozen=True)
class Params:
    """Dimension k >= 2 and parameter a >= 0 of the recurrence."""

    k: int
    a: object = 0

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise DimensionError(f"k must be an integer >= 2, got {self.k!r}")
        if not self.a >= 0:
            raise DomainError(f"parameter a must be >= 0, got {self.a!r}")


def require_point(p: Params, x) -> tuple:
    """Validate x as a point of the open positive orthant, return it as a tuple."""
    x = tuple(x)
    if len(x) != p.k:
        raise DimensionError(f"expected {p.k} coordinates, got {len(x)}")
    if not all(c > 0 for c in x):
        raise DomainError(f"point must have strictly positive coordinates: {x}")
    return x


def step(p: Params, x) -> tuple:
    x = require_point(p, x)
    return x[1:] + ((p.a + sum(x[1:])) / x[0],)


def inverse_step(p: Params, y) -> tuple:
    y = require_point(p, y)
    return ((p.a + sum(y[:-1])) / y[-1],) + y[:-1]


@dataclass
class OrbitTrace:
    """A contiguous stretch of an orbit: states[j+1] is the image of states[j]
    under F (n >= 0) or F^-1 (n < 0); indices track the signed step count."""

    params: Params
    indices: list
    states: list
    signatures: list = None
    truncated: bool = False
    note: str = ""


def iterate(p: Params, x0, n: int) -> OrbitTrace:
    """Orbit trace of |n|+1 states from x0; negative n walks the inverse map."""
    x = require_point(p, x0)
    advance = step if n >= 0 else inverse_step
    sgn = 1 if n >= 0 else -1
    indices = [0]
    states = [x]
    for _ in range(abs(n)):
        states.append(advance(p, states[-1]))
        indices.append(indices[-1] + sgn)
    return OrbitTrace(params=p, indices=indices, states=states)


def jacobian(p: Params, x) -> RatMatrix:
    """DF(x): shift rows for coordinates 1..k-1, one rational row at the bottom."""
    x = require_point(p, x)
    zero = x[0] - x[0]
    one = zero + 1
    rows = []
    for i in range(p.k - 1):
        rows.append([one if j == i + 1 else zero for j in range(p.k)])
    last = [-(p.a + sum(x[1:])) / (x[0] * x[0])] + [one / x[0]] * (p.k - 1)
    rows.append(last)
    return RatMatrix(rows)


def jacobian_det(p: Params, x):
    """det DF(x) = (-1)^k (a + x2 + ... + xk) / x1^2 (cofactor closed form)."""
    x = require_point(p, x)
    val = (p.a + sum(x[1:])) / (x[0] * x[0])
    return val if p.k % 2 == 0 else -val


class FixedPoint(NamedTuple):
    point: tuple                # float coordinates (c, ..., c)
    quadratic: tuple            # exact coefficients of c^2 - (k-1) c - a = 0


def fixed_point(p: Params) -> FixedPoint:
    """The unique orthant fixed point: all coordinates equal the positive root
    of c^2 - (k-1) c - a = 0."""
    km1 = p.k - 1
    c = (km1 + math.sqrt(km1 * km1 + 4 * float(p.a))) / 2.0
    return FixedPoint(point=(c,) * p.k, quadratic=(1, -km1, -p.a))


def two_periodic_point(p: Params, x) -> tuple:
    """Point of the 2-periodic curve through parameter x (k=3: x>1, k=5: x>2).

    k=3: (x, (x+a)/(x-1), x); k=5: (x, (2x+a)/(x-2), x, (2x+a)/(x-2), x).
    At the fixed-point parameter value the curve passes through the fixed point.
    """
    if p.k == 3:
        if not x > 1:
            raise DomainError(f"k=3 curve needs x > 1, got {x!r}")
        y = (x + p.a) / (x - 1)
        return (x, y, x)
    if p.k == 5:
        if not x > 2:
            raise DomainError(f"k=5 curve needs x > 2, got {x!r}")
        y = (2 * x + p.a) / (x - 2)
        return (x, y, x, y, x)
    raise DimensionError(f"2-periodic curve is parametrized for k in {{3, 5}}, got k={p.k}")
