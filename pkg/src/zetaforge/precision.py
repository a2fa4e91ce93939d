"""Arbitrary-precision numeric substrate.

Reals are :class:`decimal.Decimal` values evaluated under a
:class:`PrecisionContext`; rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import decimal
import math
import threading
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

BigReal = Decimal
BigRational = Fraction

MIN_DIGITS = 10
MIN_GUARD = 10


class InvalidPrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class PrecisionContext:
    """Requested digits plus internal guard digits."""

    digits: int
    guard: int = 20

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise InvalidPrecisionError(
                f"digits must be >= {MIN_DIGITS}, got {self.digits}")
        if self.guard < MIN_GUARD:
            raise InvalidPrecisionError(
                f"guard must be >= {MIN_GUARD}, got {self.guard}")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    @property
    def decimal(self) -> decimal.Context:
        return _decimal_context(self.working_digits)

    def tolerance(self, slack: int = 0) -> Decimal:
        """10**(-digits + slack)."""
        return Decimal(1).scaleb(-self.digits + slack)

    def with_digits(self, digits: int) -> PrecisionContext:
        return ctx_new(digits)


def ctx_new(digits: int) -> PrecisionContext:
    if digits < MIN_DIGITS:
        raise InvalidPrecisionError(
            f"digits must be >= {MIN_DIGITS}, got {digits}")
    return PrecisionContext(digits, max(20, digits // 10))


def _decimal_context(prec: int) -> decimal.Context:
    return decimal.Context(prec=prec, rounding=decimal.ROUND_HALF_EVEN,
                           Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN,
                           traps=[decimal.InvalidOperation, decimal.DivisionByZero])


def working_context(prec: int) -> decimal.Context:
    """Decimal context at an explicit number of significant digits."""
    return _decimal_context(prec)


# -- serialization -----------------------------------------------------------

def to_string(x: Decimal) -> str:
    """Decimal string that parses back to exactly ``x``."""
    return str(x)


def format_sci(x: Decimal, places: int = 3) -> str:
    """Short scientific form for residuals and bounds; exact zero prints as 0."""
    if x == 0:
        return "0"
    return f"{x:.{places}e}"


def from_string(text: str, ctx: PrecisionContext | None = None) -> Decimal:
    value = Decimal(text.strip())
    if ctx is not None:
        value = ctx.decimal.plus(value)
    return value


def fixed_to_decimal(n: int, bits: int, prec: int) -> Decimal:
    """Correctly rounded ``n / 2**bits`` at ``prec`` significant digits."""
    return _decimal_context(prec).divide(Decimal(n), Decimal(1 << bits))


def decimal_to_fixed(x: Decimal, bits: int) -> int:
    """Round ``x * 2**bits`` to the nearest integer, exactly."""
    sign, digits, exp = x.as_tuple()
    mant = int("".join(map(str, digits))) if digits else 0
    if sign:
        mant = -mant
    if exp >= 0:
        return (mant * 10 ** exp) << bits
    den = 10 ** (-exp)
    num = mant << bits
    return (2 * num + den) // (2 * den)


def bits_for_digits(digits: int) -> int:
    return math.ceil(digits * math.log2(10))


# -- constants and elementary functions --------------------------------------

def _arctan_inv_fixed(x: int, one: int) -> int:
    """arctan(1/x) scaled by ``one`` (x >= 2)."""
    x2 = x * x
    power = one // x
    total = power
    k = 1
    sign = -1
    while power:
        power //= x2
        total += sign * (power // (2 * k + 1))
        sign = -sign
        k += 1
    return total


def pi(ctx: PrecisionContext) -> Decimal:
    """pi to working precision via Machin's formula."""
    return pi_at(ctx.working_digits)


def pi_at(prec: int) -> Decimal:
    """pi rounded to ``prec`` significant digits."""
    return _pi_cached(prec)


_pi_lock = threading.Lock()
_pi_memo: dict[int, Decimal] = {}


def _pi_cached(wd: int) -> Decimal:
    with _pi_lock:
        hit = _pi_memo.get(wd)
    if hit is not None:
        return hit
    extra = 10
    one = 10 ** (wd + extra)
    value = 16 * _arctan_inv_fixed(5, one) - 4 * _arctan_inv_fixed(239, one)
    result = _decimal_context(wd).scaleb(Decimal(value), -(wd + extra))
    with _pi_lock:
        _pi_memo[wd] = result
    return result


EXP_LIMIT = 10 ** 6


class RangeError(ArithmeticError):
    pass


def exp(x: Decimal, ctx: PrecisionContext) -> Decimal:
    """e**x to working precision (relative)."""
    x = Decimal(x)
    if abs(x) > EXP_LIMIT:
        raise RangeError(f"|x| = {abs(x):.3e} exceeds exp range {EXP_LIMIT}")
    return ctx.decimal.exp(x)


def sinh(x: Decimal, ctx: PrecisionContext) -> Decimal:
    c = _decimal_context(ctx.working_digits + 5)
    ex = c.exp(x)
    return ctx.decimal.plus(c.divide(c.subtract(ex, c.divide(1, ex)), 2))


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of negative number")
    return math.factorial(n)


# -- Bernoulli numbers -------------------------------------------------------

BERNOULLI_MAX = 2000

_bern_lock = threading.Lock()
# Even-index table B_0, B_2, B_4, ...; extended in place under the lock.
_bern_even: list[Fraction] = [Fraction(1)]


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m for even m (B_1 = -1/2 convention)."""
    if m < 0 or m % 2:
        raise ValueError(f"bernoulli index must be even and non-negative, got {m}")
    if m > BERNOULLI_MAX:
        raise ValueError(f"bernoulli index {m} exceeds {BERNOULLI_MAX}")
    idx = m // 2
    table = _bern_even
    if idx < len(table):
        return table[idx]
    with _bern_lock:
        while len(_bern_even) <= idx:
            _bern_even.append(_next_bernoulli(_bern_even))
        return _bern_even[idx]


def _next_bernoulli(table: list[Fraction]) -> Fraction:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m; odd j > 1 vanish.
    m = 2 * len(table)
    # Accumulate over a common denominator to avoid a gcd per addition.
    den = 1
    for b in table:
        den = den * b.denominator // math.gcd(den, b.denominator)
    den *= 2
    num = -(m + 1) * (den // 2)  # C(m+1, 1) * B_1
    for j, b in enumerate(table):
        num += math.comb(m + 1, 2 * j) * b.numerator * (den // b.denominator)
    return Fraction(-num, den * (m + 1))


def fraction_to_decimal(q: Fraction, prec: int) -> Decimal:
    c = _decimal_context(prec)
    return c.divide(Decimal(q.numerator), Decimal(q.denominator))
