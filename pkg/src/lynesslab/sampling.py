"""Seeded rational test points for reproducible verification sweeps."""

from __future__ import annotations

import random
from fractions import Fraction

NUMERATOR_RANGE = (1, 50)
DENOMINATOR_RANGE = (1, 10)


def stream(label: str, seed: int) -> random.Random:
    """Deterministic RNG bound to a label; string seeding is stable across runs."""
    return random.Random(f"{seed}|{label}")


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(*NUMERATOR_RANGE), rng.randint(*DENOMINATOR_RANGE))


def random_point(rng: random.Random, k: int) -> tuple:
    return tuple(random_rational(rng) for _ in range(k))
