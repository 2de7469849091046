"""2-adic machinery: digit functions, the lifting-the-exponent valuation,
and a modulo-2^M fast path for v_2(S(n, 5)).

The fast path uses the closed form

    24 S(n, 5) = 5^(n-1) - 4^n + 2*3^n - 2^(n+1) + 1,

so v_2(S(n, 5)) is v_2 of the right-hand side minus 3. The right-hand side
only ever needs to be known modulo 2^M, and for n >= M it is periodic in n
with period 2^(M-2), which makes astronomically large n cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import INF, Valuation, vp

DEFAULT_PRECISION_CAP = 256
INITIAL_PRECISION = 8

# v_2(24) = 3; the closed form carries a factor of 24.
_DENOM = 24
_DENOM_V2 = 3
assert _DENOM == 2**_DENOM_V2 * 3


class PreconditionViolation(ValueError):
    pass


class PrecisionExceeded(RuntimeError):
    def __init__(self, n: int, cap: int):
        super().__init__(
            f"v_2(S({n},5)) not resolved at precision 2^{cap}; raise the precision cap"
        )
        self.n = n
        self.cap = cap


@dataclass(frozen=True)
class Residue:
    """A value known modulo 2**precision."""

    value: int
    precision: int

    def __post_init__(self):
        if self.precision < 0:
            raise ValueError("precision must be >= 0")
        if not 0 <= self.value < (1 << self.precision):
            raise ValueError(f"{self.value} is not reduced modulo 2^{self.precision}")

    def truncate(self, precision: int) -> Residue:
        if precision > self.precision:
            raise ValueError(
                f"cannot raise precision from {self.precision} to {precision}"
            )
        return Residue(self.value & ((1 << precision) - 1), precision)

    def is_zero(self) -> bool:
        return self.value == 0

    def valuation(self) -> Valuation:
        """v_2 of the value; only a lower bound (INF) is known when it is zero."""
        return vp(self.value, 2)


# --- binary digits -------------------------------------------------------


def s2_digits(k: int) -> int:
    """Number of ones in the binary expansion of k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return k.bit_count()


def u_index(k: int) -> int:
    """Index of the lowest zero bit of k (0 when k is even)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    # trailing ones of k are trailing zeros of k + 1
    return ((k + 1) & -(k + 1)).bit_length() - 1


def digit_step_identity(k: int) -> bool:
    return s2_digits(k + 1) == s2_digits(k) + 1 - u_index(k)


@dataclass(frozen=True)
class DigitProfile:
    k: int
    bits: tuple[int, ...]  # a_0, a_1, ... least significant first
    s2: int
    u: int

    @classmethod
    def of(cls, k: int) -> DigitProfile:
        bits = tuple((k >> i) & 1 for i in range(k.bit_length()))
        return cls(k, bits, s2_digits(k), u_index(k))


# --- lifting the exponent ------------------------------------------------


def lte_valuation(
    N: int, r: int, sign: int, m: int, i: int, checked: bool = False
) -> int:
    """v_2((2^N r + sign)^(2^m i) - 1), which equals m + N.

    Requires N >= 2, r and i odd, m >= 1. With ``checked`` the closed form is
    compared against a big-integer evaluation.
    """
    if N < 2:
        raise PreconditionViolation(f"N must be >= 2, got {N}")
    if r % 2 == 0 or i % 2 == 0:
        raise PreconditionViolation(f"r and i must be odd, got r={r}, i={i}")
    if m < 1:
        raise PreconditionViolation(f"m must be >= 1, got {m}")
    if sign not in (1, -1):
        raise PreconditionViolation(f"sign must be +1 or -1, got {sign}")
    result = m + N
    if checked:
        actual = vp(((1 << N) * r + sign) ** ((1 << m) * i) - 1, 2)
        assert actual == result, (N, r, sign, m, i, actual)
    return result


# --- modular arithmetic modulo 2^M --------------------------------------


def pow_mod_2k(base: int, exp: int, M: int) -> int:
    """base**exp mod 2**M by square-and-multiply.

    For odd bases the exponent is first reduced modulo the exponent of the
    unit group (2^(M-2) for M >= 3), so ``exp`` may be arbitrarily large.
    """
    if exp < 0:
        raise ValueError("exponent must be >= 0")
    if M <= 0:
        return 0
    mask = (1 << M) - 1
    base &= mask
    if base & 1:
        exp &= (1 << max(M - 2, 1)) - 1
    elif base == 0:
        return 1 & mask if exp == 0 else 0
    else:
        tz = (base & -base).bit_length() - 1
        if exp * tz >= M:
            return 0
    result = 1
    while exp:
        if exp & 1:
            result = (result * base) & mask
        base = (base * base) & mask
        exp >>= 1
    return result & mask


def s5_numerator_mod(n: int, M: int) -> Residue:
    """(5^(n-1) - 4^n + 2*3^n - 2^(n+1) + 1) mod 2^M."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if M < 1:
        raise ValueError("M must be >= 1")
    mask = (1 << M) - 1
    t5 = pow_mod_2k(5, n - 1, M)
    t3 = pow_mod_2k(3, n, M)
    t4 = 0 if 2 * n >= M else 1 << (2 * n)
    t2 = 0 if n + 1 >= M else 1 << (n + 1)
    return Residue((t5 - t4 + 2 * t3 - t2 + 1) & mask, M)


def numerator_period(M: int, checked: bool = False) -> int:
    """Period in n of ``s5_numerator_mod(n, M)`` over n >= M."""
    if M < 3:
        raise ValueError("M must be >= 3")
    period = 1 << (M - 2)
    if checked:
        for n in range(M, M + 2 * period):
            a = s5_numerator_mod(n, M)
            b = s5_numerator_mod(n + period, M)
            assert a == b, (M, n, a, b)
    return period


def v2_stirling5(n: int, cap: int = DEFAULT_PRECISION_CAP) -> Valuation:
    """Exact v_2(S(n, 5)) for any n >= 0; INF for n < 5.

    Precision starts at 2^8 and doubles until the numerator residue is
    nonzero. Raises PrecisionExceeded past ``cap`` rather than guess.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < 5:
        return INF
    M = INITIAL_PRECISION
    while True:
        M = min(M, cap)
        res = s5_numerator_mod(n, M)
        if res.value:
            return res.valuation() - _DENOM_V2
        if M >= cap:
            raise PrecisionExceeded(n, cap)
        M *= 2


def v2_numerator_bounded(n: int, M: int) -> Valuation:
    """v_2 of the numerator if it is below M, else INF (meaning ">= M")."""
    return s5_numerator_mod(n, M).valuation()
