"""Shared test helpers: seeded random rationals, radii and problem specs."""

import random
from fractions import Fraction

import pytest

from axoball import PotentialSpec


@pytest.fixture
def rng():
    return random.Random(20260825)


def random_fraction(rng, lo=-9, hi=9, max_den=9):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_radius(rng, max_value=10):
    # uniform-ish over (0, max_value] with denominator up to 10
    den = rng.randint(1, 10)
    return Fraction(rng.randint(1, max_value * den), den)


def random_coeffs(rng, degree):
    coeffs = [random_fraction(rng) for _ in range(degree + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[-1] = Fraction(1)
    return tuple(coeffs)


def random_spec(rng, max_degree=20, max_radius=10, epsilon0=1.0):
    degree = rng.randint(0, max_degree)
    return PotentialSpec(
        random_radius(rng, max_radius), random_coeffs(rng, degree), epsilon0
    )
