"""Brute-force reference computations, independent of the enumeration engine.

Everything here works on the raw function values and plain tuples, and
checks every window of every candidate word.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def floor_bound(fn, p):
    return math.floor(fn(p))


def admissible(fn, w):
    n = len(w)
    for p in range(1, n + 1):
        b = floor_bound(fn, p)
        for i in range(n - p + 1):
            if sum(w[i:i + p]) > b:
                return False
    return True


def all_words(fn, n):
    m = math.floor(fn(1))
    return [w for w in itertools.product(range(m + 1), repeat=n) if admissible(fn, w)]


def periodic_point_ok(fn, w, horizon=64):
    """Every window of ``w^inf`` up to ``horizon`` letters respects the bound."""
    reps = -(-2 * horizon // len(w)) + 1
    long = w * reps
    for p in range(1, horizon + 1):
        b = floor_bound(fn, p)
        if any(sum(long[i:i + p]) > b for i in range(len(w))):
            return False
    return True


def fix_count(fn, k, horizon=64):
    m = math.floor(fn(1))
    return sum(1 for w in itertools.product(range(m + 1), repeat=k)
               if periodic_point_ok(fn, w, horizon))


def least_period(w):
    n = len(w)
    return next(d for d in range(1, n + 1) if n % d == 0 and w == w[d:] + w[:d])


def per_points(fn, n, horizon=64):
    """All points of least period <= n, as their length-(least period) words."""
    m = math.floor(fn(1))
    out = []
    for k in range(1, n + 1):
        for w in itertools.product(range(m + 1), repeat=k):
            if least_period(w) == k and periodic_point_ok(fn, w, horizon):
                out.append(w)
    return out


def golden_no_11_fix(k):
    """Cyclic binary words of length k with no two adjacent 1s (cyclically)."""
    return sum(1 for w in itertools.product((0, 1), repeat=k)
               if not any(w[i] and w[(i + 1) % k] for i in range(k)))


def parry_letter_one():
    """Parry measure of [1] for the no-"11" shift, from the transition matrix."""
    A = np.array([[1.0, 1.0], [1.0, 0.0]])
    vals, right = np.linalg.eig(A)
    i = int(np.argmax(vals.real))
    vals_l, left = np.linalg.eig(A.T)
    j = int(np.argmax(vals_l.real))
    u, v = np.abs(left[:, j].real), np.abs(right[:, i].real)
    return float(u[1] * v[1] / (u @ v))


def mean_at_least(w, alpha: Fraction):
    return Fraction(sum(w), len(w)) >= alpha


def in_B(w, alpha):
    return len(w) == 0 or mean_at_least(w, alpha)


def in_G(w, alpha):
    n = len(w)
    return all(not mean_at_least(w[:k], alpha) and not mean_at_least(w[n - k:], alpha)
               for k in range(1, n + 1))


# one line per acceptance criterion, collected for the terminal summary
ACCEPTANCE_LOG: list[str] = []
