"""Exact scalar substrate: rationals, forward-mode duals, exact linear algebra.

Every formula in this package is written against plain arithmetic operators so
the same code runs over exact rationals (`Rat`), float64, or `Dual` numbers.
`Rat` is the stdlib Fraction: always reduced, positive denominator, exact
field operations. Gradients are computed with one dual pass per coordinate,
ranks over the rationals with fraction-free integer elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

Rat = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q', an integer, or a finite decimal into an exact rational.

    Decimal text is converted exactly (no float round-trip). Malformed text
    and zero denominators raise ValueError.
    """
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def _lift(v):
    if isinstance(v, Dual):
        return v
    return Dual(v, 0)


@dataclass(frozen=True)
class Dual:
    """Forward-mode dual number: value + deriv * eps with eps^2 = 0.

    Works over any scalar field (Fraction or float). Ordering comparisons
    look at the value part only, so domain checks written for plain scalars
    keep working on duals.
    """

    value: object
    deriv: object

    def __add__(self, other):
        o = _lift(other)
        return Dual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        return Dual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other):
        o = _lift(other)
        return Dual(o.value - self.value, o.deriv - self.deriv)

    def __mul__(self, other):
        o = _lift(other)
        return Dual(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o.value == 0:
            raise ZeroDivisionError("dual division by zero value part")
        val = self.value / o.value
        return Dual(val, (self.deriv - val * o.deriv) / o.value)

    def __rtruediv__(self, other):
        return _lift(other).__truediv__(self)

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("dual powers support integer exponents only")
        if n < 0:
            return 1 / self.__pow__(-n)
        out = Dual(self.value * 0 + 1, self.value * 0)
        base = self
        for _ in range(n):
            out = out * base
        return out

    # ordering on the value part, so positivity checks stay generic
    def __lt__(self, other):
        return self.value < _lift(other).value

    def __le__(self, other):
        return self.value <= _lift(other).value

    def __gt__(self, other):
        return self.value > _lift(other).value

    def __ge__(self, other):
        return self.value >= _lift(other).value


def gradient(f, x):
    """Exact gradient of f at x, one forward dual pass per coordinate.

    f takes a tuple of scalars; x supplies the working field (Fractions give
    an exact gradient). A pole of f at x surfaces as DomainError.
    """
    x = tuple(x)
    out = []
    for i in range(len(x)):
        seeded = tuple(Dual(c, 1 if j == i else 0) for j, c in enumerate(x))
        try:
            out.append(f(seeded).deriv)
        except ZeroDivisionError as exc:
            raise DomainError(f"pole encountered while differentiating at {x}") from exc
    return tuple(out)


@dataclass
class RatMatrix:
    """Dense rectangular matrix; exact rank only meaningful for rational entries."""

    rows: list

    def __post_init__(self):
        self.rows = [list(r) for r in self.rows]
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise ValueError("ragged rows")

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def matvec(self, vec):
        vec = tuple(vec)
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum(rij * vj for rij, vj in zip(row, vec)) for row in self.rows)

    def rank(self):
        return exact_rank(self)


def exact_rank(matrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination. Exact, no tolerance.

    Rows are scaled integer before elimination; scaling a row by a nonzero
    rational does not change rank.
    """
    rows = matrix.rows if isinstance(matrix, RatMatrix) else [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    work = []
    for row in rows:
        fracs = [Fraction(e) for e in row]
        scale = math.lcm(*(f.denominator for f in fracs))
        work.append([int(f * scale) for f in fracs])
    nr, nc = len(work), len(work[0])
    rank = 0
    prev = 1
    for col in range(nc):
        if rank == nr:
            break
        piv = next((r for r in range(rank, nr) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pval = work[rank][col]
        for r in range(rank + 1, nr):
            head = work[r][col]
            for c in range(col + 1, nc):
                # Bareiss update: division by the previous pivot is exact
                work[r][c] = (pval * work[r][c] - head * work[rank][c]) // prev
            work[r][col] = 0
        prev = pval
        rank += 1
    return rank
