"""Orbit-level diagnostics: signatures, the separating surface, densities,
level profiles along the 2-periodic curve, and a rotation-number estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateOrbitError, DimensionError, DomainError, NoRootError
from .invariants import eval_pi, eval_v1, eval_v2, eval_v3, eval_w, eval_z, level_signature
from .lyness import OrbitTrace, Params, inverse_step, jacobian_det, require_point, step, two_periodic_point


def orbit_signature(p: Params, x0, n: int) -> OrbitTrace:
    """Orbit trace with per-state invariant levels. Float orbits that overflow
    are truncated and flagged instead of propagating inf/nan."""
    x = require_point(p, x0)
    advance = step if n >= 0 else inverse_step
    sgn = 1 if n >= 0 else -1
    exact = all(isinstance(c, (int, Fraction)) for c in x)
    indices, states = [0], [x]
    truncated = False
    for _ in range(abs(n)):
        nxt = advance(p, states[-1])
        if not exact and not all(math.isfinite(c) for c in nxt):
            truncated = True
            break
        states.append(nxt)
        indices.append(indices[-1] + sgn)
    sigs = [level_signature(p, s) for s in states]
    return OrbitTrace(
        params=p,
        indices=indices,
        states=states,
        signatures=sigs,
        truncated=truncated,
        note="" if not truncated else "float overflow",
    )


@dataclass(frozen=True)
class GPoint:
    """A point of the invariant surface {Z = 0} with its defect and the defect
    of its image (the surface is invariant, so both should vanish)."""

    point: tuple
    residual: object
    image_residual: object


def _interp_poly(ts, vals):
    """Exact Lagrange interpolation; returns coefficients lowest-first."""
    n = len(ts)
    coeffs = [Fraction(0)] * n
    for i, (ti, vi) in enumerate(zip(ts, vals)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, tj in enumerate(ts):
            if j == i:
                continue
            shifted = [Fraction(0)] + basis  # multiply the basis poly by t ...
            for d in range(len(basis)):
                shifted[d] -= tj * basis[d]  # ... minus tj
            basis = shifted
            denom *= ti - tj
        scale = vi / denom
        for d, c in enumerate(basis):
            coeffs[d] += scale * c
    return coeffs


def _poly_eval(coeffs, t):
    acc = coeffs[-1] * 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _perfect_square(q: Fraction):
    if q < 0:
        return None
    pn, pd = q.numerator, q.denominator
    rn, rd = math.isqrt(pn), math.isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None


def sample_g_point(p: Params, template) -> GPoint:
    """Solve Z = 0 along a template: None entries all bind to one unknown t.

    Rational roots (linear polynomials, quadratics with square discriminant)
    come back exact with residual 0; otherwise the smallest positive root is
    bracketed on (0, 1e6), bisected and Newton-polished in float64 with
    |Z| <= 1e-12 demanded. No positive root in range raises NoRootError.
    """
    if p.k % 2 == 0:
        raise DimensionError("the separating surface lives in odd dimensions")
    template = tuple(template)
    if len(template) != p.k:
        raise DimensionError(f"template must have {p.k} entries")
    holes = [i for i, v in enumerate(template) if v is None]
    if not holes:
        raise ValueError("template needs at least one None entry to solve for")
    fixed = [Fraction(v) for v in template if v is not None]
    if not all(v > 0 for v in fixed):
        raise DomainError("fixed template coordinates must be positive")

    def filled(t):
        return tuple(t if v is None else v for v in template)

    def z_of(t):
        return eval_z(p, filled(t))

    # Z is polynomial in t; each odd-position hole contributes degree 2,
    # each even-position hole degree 3 at most (t(t+1) times the linear sum).
    bound = 1 + sum(3 if i % 2 else 2 for i in holes)
    ts = [Fraction(j) for j in range(1, bound + 2)]
    coeffs = _interp_poly(ts, [z_of(t) for t in ts])
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    degree = len(coeffs) - 1

    root = _exact_root(coeffs, degree)
    if root is not None:
        point = filled(root)
        return GPoint(
            point=point,
            residual=abs(eval_z(p, point)),
            image_residual=abs(eval_z(p, step(p, point))),
        )
    return _float_root(p, coeffs, filled)


def _exact_root(coeffs, degree):
    if degree == 1:
        cand = -coeffs[0] / coeffs[1]
        return cand if cand > 0 else None
    if degree == 2:
        c0, c1, c2 = coeffs
        sq = _perfect_square(c1 * c1 - 4 * c2 * c0)
        if sq is None:
            return None
        roots = sorted(r for r in ((-c1 - sq) / (2 * c2), (-c1 + sq) / (2 * c2)) if r > 0)
        return roots[0] if roots else None
    return None


def _float_root(p, coeffs, filled):
    # exact-sign bracketing on a per-decade rational grid in (0, 1e6)
    grid = []
    for e in range(-6, 6):
        base = Fraction(10) ** e
        grid.extend(base * j for j in range(1, 10))
    grid.append(Fraction(10) ** 6)
    signs = [(t, _poly_eval(coeffs, t)) for t in grid]
    bracket = None
    for (t0, v0), (t1, v1) in zip(signs, signs[1:]):
        if v0 == 0:
            return _finish_exact(p, filled, t0)
        if (v0 < 0) != (v1 < 0):
            bracket = (t0, t1)
            break
    if bracket is None:
        if signs[-1][1] == 0:
            return _finish_exact(p, filled, grid[-1])
        raise NoRootError("no sign change of Z on the template within (0, 1e6)")

    fc = [float(c) for c in coeffs]
    dfc = [float(c * (i + 1)) for i, c in enumerate(coeffs[1:])]
    lo, hi = float(bracket[0]), float(bracket[1])
    flo = _poly_eval(fc, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fmid = _poly_eval(fc, mid)
        if fmid == 0.0:
            lo = hi = mid
            break
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    for _ in range(4):  # Newton polish on the exact-coefficient polynomial
        d = _poly_eval(dfc, root)
        if d == 0.0:
            break
        root -= _poly_eval(fc, root) / d
    point = tuple(float(c) for c in filled(root))
    residual = abs(eval_z(p, point))
    if not residual <= 1e-12:
        raise NoRootError(f"could not refine the root below 1e-12 (|Z| = {residual:.3e})")
    return GPoint(
        point=point,
        residual=residual,
        image_residual=abs(eval_z(p, step(p, point))),
    )


def _finish_exact(p, filled, t):
    point = filled(t)
    return GPoint(
        point=point,
        residual=abs(eval_z(p, point)),
        image_residual=abs(eval_z(p, step(p, point))),
    )


@dataclass(frozen=True)
class OddPeriodVerdict:
    """Outcome of the parity obstruction: off {Z = 0} no odd period can exist
    (certified without iteration); on it, brute-force search reports findings."""

    z_value: object
    certified_no_odd_period: bool
    odd_period: int = None
    checked_up_to: int = 0


def odd_period_guard(p: Params, x, max_odd_period: int) -> OddPeriodVerdict:
    """Certify odd-period exclusion via sign(Z), or search {Z=0} exactly."""
    x = require_point(p, x)
    if not all(isinstance(c, (int, Fraction)) for c in x):
        raise TypeError("certification needs exact rational coordinates")
    z = eval_z(p, x)
    if z != 0:
        return OddPeriodVerdict(z_value=z, certified_no_odd_period=True)
    current = x
    for m in range(1, max_odd_period + 1):
        current = step(p, current)
        if m % 2 == 1 and current == x:
            return OddPeriodVerdict(
                z_value=z, certified_no_odd_period=False, odd_period=m, checked_up_to=m
            )
    return OddPeriodVerdict(
        z_value=z, certified_no_odd_period=False, checked_up_to=max_odd_period
    )


def measure_density_residual(p: Params, x):
    """Residual pair of the invariance laws of the second iterate's densities:
    (pi o F^2 - det DF^2 * pi, Z o F^2 - det DF^2 * Z); both exactly zero."""
    if p.k % 2 == 0:
        raise DimensionError("density laws are stated in odd dimensions")
    x = require_point(p, x)
    x1 = step(p, x)
    x2 = step(p, x1)
    det2 = jacobian_det(p, x1) * jacobian_det(p, x)
    return (
        eval_pi(p, x2) - det2 * eval_pi(p, x),
        eval_z(p, x2) - det2 * eval_z(p, x),
    )


def v_profile(p: Params, x) -> tuple:
    """(V1, V2, V3) along the k=5 2-periodic curve at parameter x > 2."""
    if p.k != 5:
        raise DimensionError("the curve profile is defined for k=5")
    pt = two_periodic_point(p, x)
    return (eval_v1(p, pt), eval_v2(p, pt), eval_v3(p, pt))


def _v1_on_curve_exact(p: Params, xf: float) -> Fraction:
    # float probe, exact evaluation: comparisons near the flat minimum stay exact
    return eval_v1(p, two_periodic_point(p, Fraction(xf)))


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def v1_minimum(p: Params, lo: float = 2.0 + 1e-6, hi: float = 100.0, tol: float = 1e-10) -> float:
    """Golden-section minimizer of V1 along the k=5 curve; the profile is
    unimodal on (2, inf) (it blows up at both ends)."""
    if p.k != 5:
        raise DimensionError("the curve profile is defined for k=5")
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = _v1_on_curve_exact(p, c), _v1_on_curve_exact(p, d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = _v1_on_curve_exact(p, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = _v1_on_curve_exact(p, d)
    return 0.5 * (a + b)


def solve_v1_level(p: Params, h: float) -> tuple:
    """The two curve parameters x- < x+ with V1(x) = h, one on each side of
    the minimum; requires h strictly above the minimum level."""
    if p.k != 5:
        raise DimensionError("the curve profile is defined for k=5")
    h = float(h)
    xmin = 2.0 + math.sqrt(4.0 + float(p.a))
    vmin = float(_v1f(p, xmin))
    if not h > vmin * (1 + 1e-12):
        raise NoRootError(f"level {h} does not exceed the curve minimum {vmin}")

    lo = 2.0 + 1e-9
    while _v1f(p, lo) < h:
        lo = 2.0 + (lo - 2.0) / 1e3
        if lo - 2.0 < 1e-300:
            raise NoRootError("level too high to bracket against the x->2 blow-up")
    left = _bisect_level(p, lo, xmin, h, decreasing=True)

    hi = xmin + 1.0
    while _v1f(p, hi) < h:
        hi = 2.0 + (hi - 2.0) * 2.0
        if hi > 1e12:
            raise NoRootError("level too high to bracket on the right branch")
    right = _bisect_level(p, xmin, hi, h, decreasing=False)
    return (left, right)


def _v1f(p, x):
    pt = two_periodic_point(p, float(x))
    return eval_v1(p, pt)


def _bisect_level(p, lo, hi, h, decreasing):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        val = _v1f(p, mid)
        if abs(val - h) <= 1e-12 * h:
            return mid
        too_high = val > h
        if too_high == decreasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def rotation_number(p: Params, x0, n: int) -> float:
    """Average angular advance of the second-iterate orbit, measured in the
    centroid-centered principal plane; returns a value in (0, 1).

    The estimator is float64: build n states of the F^2 orbit, fit the best
    plane by SVD, wrap consecutive angle steps to (-pi, pi], and average the
    magnitude of the winding. Reading the circle in the opposite orientation
    turns an advance rho into 1 - rho, and the fitted plane carries no
    preferred orientation, so the orientation-free representative in (0, 1/2]
    is reported. Orbits with collapsed spread (fixed point, 2-periodic curve)
    raise DegenerateOrbitError.
    """
    if p.k != 3:
        raise DimensionError("the rotation-number estimator is wired for k=3")
    if n < 10:
        raise ValueError("need at least 10 samples")
    x = tuple(float(c) for c in require_point(p, x0))
    pts = np.empty((n, 3))
    for j in range(n):
        pts[j] = x
        x = step(p, step(p, x))
    centered = pts - pts.mean(axis=0)
    _u, svals, vt = np.linalg.svd(centered, full_matrices=False)
    scale = float(svals[0])
    if scale <= 1e-9 or float(svals[1]) <= 1e-9 * scale:
        raise DegenerateOrbitError("orbit spread is too degenerate for a plane fit")
    theta = np.arctan2(centered @ vt[1], centered @ vt[0])
    dtheta = np.diff(theta)
    dtheta = (dtheta + np.pi) % (2.0 * np.pi) - np.pi
    return abs(float(dtheta.sum())) / (2.0 * np.pi * (n - 1))
