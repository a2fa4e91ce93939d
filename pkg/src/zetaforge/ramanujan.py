"""Ramanujan's formulae for zeta(4n+3) and zeta(4n+1)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable

from .precision import (
    PrecisionContext,
    bernoulli,
    factorial,
    format_sci,
    fraction_to_decimal,
    pi_at,
    working_context,
)
from .sums import zeta_int

FAMILIES = ("4n+3", "4n+1")
MAX_N = 10
# Extra digits per unit of n to absorb cancellation against (2 pi)^(4n+3).
GUARD_PER_N = 35


@dataclass
class RamanujanResult:
    family: str
    n: int
    rhs_value: Decimal
    zeta_reference: Decimal
    digits: int
    abs_diff: Decimal = field(init=False)

    def __post_init__(self):
        c = working_context(self.digits + 20)
        self.abs_diff = c.abs(c.subtract(self.rhs_value, self.zeta_reference))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "zeta": f"zeta({4 * self.n + (3 if self.family == '4n+3' else 1)})",
            "rhs_value": _fmt(self.rhs_value, self.digits),
            "zeta_reference": _fmt(self.zeta_reference, self.digits),
            "abs_diff": format_sci(self.abs_diff),
        }


def _fmt(x: Decimal, digits: int) -> str:
    return str(working_context(digits).plus(x))


def _bp(i: int) -> Fraction:
    """B_i / i!"""
    return bernoulli(i) / factorial(i)


def bernoulli_part_4n3(n: int) -> Fraction:
    """sum_{k=0}^{2n+2} (-1)^(k+1) B_2k B_(4n+4-2k) / ((2k)! (4n+4-2k)!)"""
    return sum((Fraction(-1 if k % 2 == 0 else 1) * _bp(2 * k) * _bp(4 * n + 4 - 2 * k)
                for k in range(2 * n + 3)), Fraction(0))


def bernoulli_part_4n1(n: int) -> Fraction:
    """(1/2n) sum_{k=0}^{2n+1} (-1)^(k+1) (2k-1) B_2k B_(4n+2-2k) / ((2k)! (4n+2-2k)!)"""
    if n < 1:
        raise ValueError("the 4n+1 formula needs n >= 1")
    s = sum((Fraction(-1 if k % 2 == 0 else 1) * (2 * k - 1) * _bp(2 * k) * _bp(4 * n + 2 - 2 * k)
             for k in range(2 * n + 2)), Fraction(0))
    return s / (2 * n)


def exp_terms(wd: int) -> int:
    """K with exp(-2 pi K) < 10**-wd, plus a margin of 5."""
    return math.ceil(wd * math.log(10) / (2 * math.pi)) + 5


def _check_n(n: int, lowest: int):
    if not lowest <= n <= MAX_N:
        raise ValueError(f"n must be in {lowest}..{MAX_N}, got {n}")


def ramanujan_4n3(n: int, ctx: PrecisionContext, extra_terms: int = 0) -> Decimal:
    _check_n(n, 0)
    wd = ctx.working_digits + GUARD_PER_N * n
    c = working_context(wd + 10)
    two_pi = c.multiply(2, pi_at(wd + 10))
    s = 4 * n + 3
    head = c.multiply(c.power(two_pi, s), fraction_to_decimal(bernoulli_part_4n3(n), wd + 10))
    tail = Decimal(0)
    for k in range(1, exp_terms(wd) + extra_terms + 1):
        denom = c.subtract(c.exp(c.multiply(two_pi, k)), 1)
        tail = c.add(tail, c.divide(c.power(Decimal(k), -s), denom))
    value = c.divide(c.subtract(head, c.multiply(4, tail)), 2)
    return ctx.decimal.plus(value)


def ramanujan_4n1(n: int, ctx: PrecisionContext, extra_terms: int = 0) -> Decimal:
    _check_n(n, 1)
    wd = ctx.working_digits + GUARD_PER_N * n
    c = working_context(wd + 10)
    pi = pi_at(wd + 10)
    two_pi = c.multiply(2, pi)
    s = 4 * n + 1
    head = c.multiply(c.power(two_pi, s), fraction_to_decimal(bernoulli_part_4n1(n), wd + 10))
    tail_exp = Decimal(0)
    tail_sinh = Decimal(0)
    for k in range(1, exp_terms(wd) + extra_terms + 1):
        e = c.exp(c.multiply(pi, k))  # e^(pi k)
        e2 = c.multiply(e, e)
        tail_exp = c.add(tail_exp, c.divide(c.power(Decimal(k), -s), c.subtract(e2, 1)))
        sh = c.divide(c.subtract(e, c.divide(1, e)), 2)
        tail_sinh = c.add(tail_sinh, c.divide(c.power(Decimal(k), -4 * n), c.multiply(sh, sh)))
    value = c.subtract(head, c.multiply(4, tail_exp))
    value = c.subtract(value, c.multiply(c.divide(pi, n), tail_sinh))
    return ctx.decimal.plus(c.divide(value, 2))


def verify_ramanujan(family: str, n_range: Iterable[int],
                     ctx: PrecisionContext) -> list[RamanujanResult]:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}")
    out = []
    for n in n_range:
        if family == "4n+3":
            value, s = ramanujan_4n3(n, ctx), 4 * n + 3
        else:
            value, s = ramanujan_4n1(n, ctx), 4 * n + 1
        out.append(RamanujanResult(family, n, value, zeta_int(s, ctx), ctx.digits))
    return out
