"""The Lie symmetry field of the recurrence and its exact residual checks.

With L_i = 1 + x_i + x_{i+1} (1 <= i <= k-1), the field X = (X_1, ..., X_k)
on the open positive orthant is

    X_1 = (x1+1) [prod_{i=2..k-1} L_i] (a + x1+...+x_{k-1} - x2 xk) / prod_{i=2..k} x_i
    X_m = (xm+1) [prod_{i in 1..k-1, i != m-1, m} L_i]
          (a + x1+...+xk + x1 xk) (x_{m-1} - x_{m+1}) / prod_{i != m} x_i
                                                          for 2 <= m <= k-1
    X_k = -(xk+1) [prod_{i=1..k-2} L_i] (a + x2+...+xk - x1 x_{k-1}) / prod_{i<k} x_i

It satisfies the symmetry condition X(F(x)) = DF(x) X(x) componentwise over
the rationals, which is equivalent to the pair:

  * shift law: X_{i+1} = X_i o F for 1 <= i <= k-1, and
  * compatibility: X_k o F = -((a + x2+...+xk)/x1^2) X_1 + (1/x1) sum_{i>=2} X_i.

The compatibility identity reduces (for k >= 6) to a product factorization of
the weighted shift-difference sum

    C = sum_{m=2..k-1} x_m (x_m + 1) (x_{m-1} - x_{m+1}) M_m
      = L_2 L_3 [prod_{i=4..k-2} L_i] (x1 x2 L_{k-1} - x_{k-1} xk L_1),

with M_m = prod_{i in 1..k-1, i != m-1, m} L_i; `factorization_residual`
checks it directly. All residuals are exact zeros over rational inputs.
"""

from __future__ import annotations

import math

from .errors import DimensionError
from .invariants import eval_v1, eval_v2, eval_v3
from .lyness import Params, jacobian, require_point, step
from .scalars import gradient


def _chain(x, lo, hi, skip=()):
    """prod of L_i = 1 + x_i + x_{i+1} over 1-based i in [lo, hi] minus skip."""
    return math.prod(
        1 + x[i - 1] + x[i] for i in range(lo, hi + 1) if i not in skip
    )


def symmetry_vector(p: Params, x) -> tuple:
    """X(x), exact over rational coordinates. Defined for k >= 3."""
    if p.k < 3:
        raise DimensionError(f"the symmetry field needs k >= 3, got k={p.k}")
    x = require_point(p, x)
    k, a = p.k, p.a
    total = a + sum(x)
    out = []
    first = (
        (x[0] + 1)
        * _chain(x, 2, k - 1)
        * (a + sum(x[: k - 1]) - x[1] * x[k - 1])
        / math.prod(x[1:])
    )
    out.append(first)
    for m in range(2, k):  # 1-based middle components
        i = m - 1
        out.append(
            (x[i] + 1)
            * _chain(x, 1, k - 1, skip=(m - 1, m))
            * (total + x[0] * x[k - 1])
            * (x[i - 1] - x[i + 1])
            / math.prod(x[j] for j in range(k) if j != i)
        )
    last = (
        -(x[k - 1] + 1)
        * _chain(x, 1, k - 2)
        * (a + sum(x[1:]) - x[0] * x[k - 2])
        / math.prod(x[: k - 1])
    )
    out.append(last)
    return tuple(out)


def lie_residual(p: Params, x) -> tuple:
    """Componentwise X(F(x)) - DF(x) X(x); the zero tuple iff the symmetry holds."""
    x = require_point(p, x)
    image = symmetry_vector(p, step(p, x))
    pushed = jacobian(p, x).matvec(symmetry_vector(p, x))
    return tuple(im - pu for im, pu in zip(image, pushed))


def shift_residual(p: Params, x, i: int):
    """X_{i+1}(x) - X_i(F(x)) for 1-based 1 <= i <= k-1."""
    if not 1 <= i <= p.k - 1:
        raise DimensionError(f"shift index must satisfy 1 <= i <= k-1, got {i}")
    x = require_point(p, x)
    return symmetry_vector(p, x)[i] - symmetry_vector(p, step(p, x))[i - 1]


def compatibility_residual(p: Params, x):
    """X_k(F(x)) + ((a + x2+...+xk)/x1^2) X_1(x) - (1/x1) sum_{i>=2} X_i(x)."""
    x = require_point(p, x)
    here = symmetry_vector(p, x)
    image_last = symmetry_vector(p, step(p, x))[-1]
    return (
        image_last
        + (p.a + sum(x[1:])) / (x[0] * x[0]) * here[0]
        - sum(here[1:]) / x[0]
    )


_ANNIHILATED = {
    (3, "V1"): eval_v1,
    (3, "V2"): eval_v2,
    (4, "V1"): eval_v1,
    (4, "V2"): eval_v2,
    (5, "V1"): eval_v1,
    (5, "V2"): eval_v2,
    (5, "V3"): eval_v3,
}


def annihilation_residual(p: Params, x, which: str):
    """grad V . X at x, for the (k, integral) pairs where it vanishes identically.

    Supported pairs: k=3 and k=4 with V1 or V2, k=5 with V1, V2 or V3.
    """
    key = (p.k, str(which).upper())
    fn = _ANNIHILATED.get(key)
    if fn is None:
        raise DimensionError(f"no annihilation identity registered for {key}")
    x = require_point(p, x)
    grad = gradient(lambda pt: fn(p, pt), x)
    field = symmetry_vector(p, x)
    return sum(g * f for g, f in zip(grad, field))


def factorization_residual(p: Params, x):
    """Residual of the product factorization of the weighted shift-difference
    sum (k >= 6); exactly zero over the rationals."""
    if p.k < 6:
        raise DimensionError(f"the factorization identity needs k >= 6, got k={p.k}")
    x = require_point(p, x)
    k = p.k
    acc = x[0] - x[0]  # zero of the working field
    for m in range(2, k):  # 1-based
        i = m - 1
        acc = acc + x[i] * (x[i] + 1) * (x[i - 1] - x[i + 1]) * _chain(
            x, 1, k - 1, skip=(m - 1, m)
        )
    l1 = 1 + x[0] + x[1]
    lkm1 = 1 + x[k - 2] + x[k - 1]
    rhs = (
        _chain(x, 2, 3)
        * _chain(x, 4, k - 2)
        * (x[0] * x[1] * lkm1 - x[k - 2] * x[k - 1] * l1)
    )
    return acc - rhs


def equilibrium_residual(p: Params, x):
    """Sup-norm of X at x; zero exactly at the fixed point (k=4) and along the
    2-periodic curve (k=5)."""
    if p.k not in (4, 5):
        raise DimensionError(f"equilibrium check is registered for k in {{4, 5}}, got k={p.k}")
    return max(abs(c) for c in symmetry_vector(p, x))
