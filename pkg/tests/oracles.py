"""Independent reference computations used only by the tests."""

import itertools
import math
from collections import Counter
from fractions import Fraction


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def partition_counts(n):
    """Number of partitions of an n-set into each block count, by enumeration."""
    return Counter(len(p) for p in set_partitions(list(range(n))))


def series_inverse_product(k, n_max):
    """Coefficients of 1/((1-x)...(1-kx)) up to x^n_max by power-series multiplication."""
    coeffs = [1] + [0] * n_max
    for j in range(1, k + 1):
        geom = [j**e for e in range(n_max + 1)]
        coeffs = [sum(coeffs[a] * geom[n - a] for a in range(n + 1)) for n in range(n_max + 1)]
    return coeffs


def falling_factorial_poly(n):
    """x(x-1)...(x-n+1) expanded by multiplying out all subsets of roots."""
    coeffs = [0] * (n + 1)
    for chosen in itertools.product((0, 1), repeat=n):
        # chosen[i] == 1 picks x from factor (x - i), otherwise -i
        deg = sum(chosen)
        coeffs[deg] += math.prod(-i for i, c in enumerate(chosen) if not c)
    return coeffs


def v2_naive(x):
    if x == 0:
        return math.inf
    e = 0
    while x % 2 == 0:
        x //= 2
        e += 1
    return e


def stirling2_rational(n, k):
    """Explicit formula evaluated with exact rationals, independent of any integer division."""
    total = sum(Fraction((-1) ** (k - j) * math.comb(k, j) * j**n) for j in range(0, k + 1))
    val = total / math.factorial(k)
    assert val.denominator == 1
    return int(val)


def lowest_zero_bit(k):
    i = 0
    while (k >> i) & 1:
        i += 1
    return i
