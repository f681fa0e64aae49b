"""Shared brute-force oracles: direct lattice enumeration, no series math."""

import itertools
import math


def lattice_counts(d: int, l_max: int) -> list[int]:
    """Number of integer vectors in Z^d with squared norm l, for l <= l_max."""
    m = math.isqrt(l_max)
    counts = [0] * (l_max + 1)
    for vec in itertools.product(range(-m, m + 1), repeat=d):
        n = sum(x * x for x in vec)
        if n <= l_max:
            counts[n] += 1
    return counts


def even_sum_counts(d: int, l_max: int) -> list[int]:
    """Same, restricted to vectors with even coordinate sum."""
    m = math.isqrt(l_max)
    counts = [0] * (l_max + 1)
    for vec in itertools.product(range(-m, m + 1), repeat=d):
        if sum(vec) % 2:
            continue
        n = sum(x * x for x in vec)
        if n <= l_max:
            counts[n] += 1
    return counts


def signed_counts(d: int, l_max: int) -> list[int]:
    """Counts weighted by (-1)^(coordinate sum)."""
    m = math.isqrt(l_max)
    counts = [0] * (l_max + 1)
    for vec in itertools.product(range(-m, m + 1), repeat=d):
        n = sum(x * x for x in vec)
        if n <= l_max:
            counts[n] += -1 if sum(vec) % 2 else 1
    return counts
