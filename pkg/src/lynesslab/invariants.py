"""First integrals, the 2-integral, and the separating polynomial surface.

With S = a + x1 + ... + xk and L_i = 1 + x_i + x_{i+1}:

    V1 = S * prod_i (x_i + 1) / prod_i x_i                     (all k)
    V2 = (S + x1 xk) * prod_{i<k} L_i / prod_i x_i             (all k)

For odd k = 2l+1 the alternating product

    W = prod_{j=0..l} (x_{2j+1} + 1) / prod_{j=1..l} x_{2j}

is a 2-integral (invariant of the second iterate, not of the map) and

    V3 = W + W o F
       = [prod_odd x(x+1) + S * prod_even x(x+1)] / prod_i x_i

is a third first integral, with the factorization V1 = W * (W o F).
The polynomial

    Z = prod_odd x(x+1) - S * prod_even x(x+1) = prod_i x_i * (W - W o F)

transforms as Z o F = det DF * Z (and prod o F = -det DF * prod), so its
zero set is invariant, its sign flips each step off the zero set, and
1/prod and 1/(prod * (W - W o F)) are invariant densities of the second
iterate. "odd"/"even" above refer to 1-based coordinate positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError
from .lyness import Params, require_point
from .scalars import RatMatrix, exact_rank, gradient


def eval_v1(p: Params, x):
    x = require_point(p, x)
    total = p.a + sum(x)
    return total * math.prod(c + 1 for c in x) / math.prod(x)


def eval_v2(p: Params, x):
    x = require_point(p, x)
    total = p.a + sum(x) + x[0] * x[-1]
    chain = math.prod(1 + x[i] + x[i + 1] for i in range(p.k - 1))
    return total * chain / math.prod(x)


def _require_odd(p: Params, what: str):
    if p.k % 2 == 0:
        raise DimensionError(f"{what} is defined for odd k only, got k={p.k}")


def eval_w(p: Params, x):
    """Alternating 2-integral (odd k): odd positions up top, even ones below."""
    _require_odd(p, "the alternating 2-integral")
    x = require_point(p, x)
    num = math.prod(x[i] + 1 for i in range(0, p.k, 2))
    den = math.prod(x[i] for i in range(1, p.k, 2))
    return num / den


def eval_v3(p: Params, x):
    """Third first integral for odd k, evaluated in cleared polynomial form."""
    _require_odd(p, "the third integral")
    x = require_point(p, x)
    odd = math.prod(x[i] * (x[i] + 1) for i in range(0, p.k, 2))
    even = math.prod(x[i] * (x[i] + 1) for i in range(1, p.k, 2))
    return (odd + (p.a + sum(x)) * even) / math.prod(x)


def eval_z(p: Params, x):
    """Separating polynomial (odd k); {Z = 0} is an invariant hypersurface."""
    _require_odd(p, "the separating polynomial")
    x = require_point(p, x)
    odd = math.prod(x[i] * (x[i] + 1) for i in range(0, p.k, 2))
    even = math.prod(x[i] * (x[i] + 1) for i in range(1, p.k, 2))
    return odd - (p.a + sum(x)) * even


def eval_pi(p: Params, x):
    """Coordinate product; 1/pi is an invariant density of the second iterate."""
    x = require_point(p, x)
    return math.prod(x)


def z_sign(p: Params, x) -> int:
    v = eval_z(p, x)
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


@dataclass(frozen=True)
class LevelSignature:
    """Invariant levels attached to one state; v3/z_sign are None for even k."""

    v1: object
    v2: object
    v3: object = None
    z_sign: int = None


def level_signature(p: Params, x) -> LevelSignature:
    if p.k % 2 == 0:
        return LevelSignature(v1=eval_v1(p, x), v2=eval_v2(p, x))
    return LevelSignature(
        v1=eval_v1(p, x), v2=eval_v2(p, x), v3=eval_v3(p, x), z_sign=z_sign(p, x)
    )


_EVALUATORS = {"V1": eval_v1, "V2": eval_v2, "V3": eval_v3}


def independence_rank(p: Params, x, which=("V1", "V2", "V3")) -> int:
    """Exact rank of the chosen integral gradients at a rational point."""
    x = require_point(p, x)
    if not all(isinstance(c, (int, Fraction)) for c in x):
        raise TypeError("exact rank needs rational coordinates")
    names = [str(n).upper() for n in which]
    rows = []
    for name in names:
        if name not in _EVALUATORS:
            raise ValueError(f"unknown integral {name!r}; choose from V1, V2, V3")
        if name == "V3":
            _require_odd(p, "the third integral")
        fn = _EVALUATORS[name]
        rows.append(list(gradient(lambda pt, fn=fn: fn(p, pt), x)))
    return exact_rank(RatMatrix(rows))
