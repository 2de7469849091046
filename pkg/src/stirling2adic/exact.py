"""Exact Stirling numbers of both kinds and p-adic valuations.

Everything here works on plain Python integers, which are arbitrary
precision, so no value can overflow. These routines are the ground truth
that the modular fast paths in :mod:`stirling2adic.padic` are checked
against.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from functools import lru_cache

INF = math.inf

Valuation = int | float  # a natural number, or INF for v_p(0)


class DivisibilityViolation(ArithmeticError):
    """The alternating sum was not divisible by k!; indicates an arithmetic bug."""


class InvalidPrime(ValueError):
    pass


def vp(x: int, p: int = 2) -> Valuation:
    """Largest e with p**e dividing x; INF when x == 0."""
    if p < 2:
        raise InvalidPrime(f"p must be a prime >= 2, got {p}")
    if x == 0:
        return INF
    x = abs(x)
    if p == 2:
        return (x & -x).bit_length() - 1
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


class StirlingRowPair:
    """Streams rows of the second-kind triangle, two at a time.

    Only the current row ``S(n, 0..k_max)`` and the one before it are held.
    Rows are produced in order by :meth:`advance`; there is no way to go
    back further than ``n - 1``.
    """

    def __init__(self, k_max: int):
        if k_max < 0:
            raise ValueError("k_max must be >= 0")
        self.k_max = k_max
        self.n = 0
        self.row_n: tuple[int, ...] = (1,) + (0,) * k_max
        self.row_prev: tuple[int, ...] | None = None

    def advance(self) -> tuple[int, ...]:
        prev = self.row_n
        row = [0] * (self.k_max + 1)
        for k in range(1, self.k_max + 1):
            row[k] = prev[k - 1] + k * prev[k]
        self.row_prev = prev
        self.row_n = tuple(row)
        self.n += 1
        return self.row_n

    def advance_to(self, n: int) -> tuple[int, ...]:
        if n < self.n:
            raise ValueError(f"stream is at row {self.n}; cannot rewind to {n}")
        while self.n < n:
            self.advance()
        return self.row_n

    def __iter__(self) -> Iterator[tuple[int, tuple[int, ...]]]:
        yield self.n, self.row_n
        while True:
            self.advance()
            yield self.n, self.row_n


def stirling2_rows(k_max: int, n_max: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield ``(n, row)`` for n = 0..n_max with row[k] = S(n, k), k <= k_max."""
    stream = StirlingRowPair(k_max)
    for n, row in stream:
        if n > n_max:
            return
        yield n, row


def stirling2_column(k: int, n_max: int) -> list[int]:
    """``[S(0,k), S(1,k), ..., S(n_max,k)]`` from a stream truncated at column k."""
    return [row[k] for _, row in stirling2_rows(k, n_max)]


def stirling2(n: int, k: int) -> int:
    """S(n, k) by the triangular recurrence S(n,k) = S(n-1,k-1) + k S(n-1,k)."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    # Columns beyond k never feed column k, and rows need only reach n.
    return StirlingRowPair(k).advance_to(n)[k]


@lru_cache(maxsize=None)
def _factorial(k: int) -> int:
    return math.factorial(k)


def stirling2_explicit(n: int, k: int) -> int:
    """S(n, k) from the alternating binomial sum, divided exactly by k!."""
    if not 1 <= k <= n:
        raise ValueError(f"explicit formula needs 1 <= k <= n, got n={n}, k={k}")
    total = 0
    for j in range(1, k + 1):
        term = math.comb(k, j) * j**n
        total += -term if (k - j) & 1 else term
    q, r = divmod(total, _factorial(k))
    if r:
        raise DivisibilityViolation(f"{k}! does not divide the sum for n={n}")
    return q


def stirling2_series(k: int, n_max: int) -> list[int]:
    """Coefficients of x^k .. x^n_max in x^k / ((1-x)(1-2x)...(1-kx)).

    The product of geometric series is expanded one factor at a time, each
    factor being a running prefix sum c[n] += j * c[n-1]. Entry ``i`` of the
    result is S(k + i, k).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n_max < k:
        return []
    length = n_max - k + 1
    coeffs = [1] + [0] * (length - 1)
    for j in range(1, k + 1):
        for n in range(1, length):
            coeffs[n] += j * coeffs[n - 1]
    return coeffs


def stirling1_signed(n: int, k: int) -> int:
    """Signed s(n, k) by s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k), s(0,0) = 1."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        return 0
    row = [1] + [0] * k
    for m in range(1, n + 1):
        for j in range(min(m, k), 0, -1):
            row[j] = row[j - 1] - (m - 1) * row[j]
        row[0] = 0
    return row[k]


def falling_factorial_coeffs(n: int) -> list[int]:
    """Coefficients ``c`` with x(x-1)...(x-n+1) = sum c[k] x^k."""
    coeffs = [1]
    for m in range(n):
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= m * c
        coeffs = nxt
    return coeffs


def inversion_check(max_n: int) -> bool:
    """Check that the first- and second-kind matrices are mutually inverse up to max_n."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    size = max_n + 1
    big_s = [[stirling2(a, b) for b in range(size)] for a in range(size)]
    small_s = [[stirling1_signed(a, b) for b in range(size)] for a in range(size)]
    for j in range(size):
        for k in range(size):
            delta = int(j == k)
            top = max(j, k) + 1
            if sum(small_s[l][j] * big_s[k][l] for l in range(top)) != delta:
                return False
            if sum(big_s[l][j] * small_s[k][l] for l in range(top)) != delta:
                return False
    return True


def bell_numbers(n_max: int) -> list[int]:
    """B(0..n_max) via B(n+1) = sum_j C(n, j) B(j)."""
    bell = [1]
    for n in range(n_max):
        bell.append(sum(math.comb(n, j) * bell[j] for j in range(n + 1)))
    return bell
