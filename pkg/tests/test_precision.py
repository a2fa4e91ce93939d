from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforge.precision import (
    InvalidPrecisionError,
    PrecisionContext,
    RangeError,
    bernoulli,
    ctx_new,
    decimal_to_fixed,
    exp,
    factorial,
    fixed_to_decimal,
    from_string,
    pi,
    sinh,
    to_string,
)


def test_ctx_new_guard_policy():
    assert ctx_new(100).working_digits == 120
    assert ctx_new(400).working_digits == 440
    assert ctx_new(10).guard == 20


def test_ctx_new_rejects_low_digits():
    with pytest.raises(InvalidPrecisionError):
        ctx_new(5)
    with pytest.raises(InvalidPrecisionError):
        PrecisionContext(50, guard=3)


def _machin_oracle(digits):
    # arctan(1/x) summed in exact rationals until terms fall well below 10^-digits.
    def arctan_inv(x):
        total = Fraction(0)
        k = 0
        while True:
            term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
            if term < Fraction(1, 10 ** (digits + 10)):
                return total
            total += term if k % 2 == 0 else -term
            k += 1
    return 16 * arctan_inv(5) - 4 * arctan_inv(239)


def test_pi_matches_rational_machin_oracle():
    ctx = ctx_new(20)
    value = pi(ctx)
    assert str(value).startswith("3.14159265358979323846")
    oracle = _machin_oracle(ctx.working_digits)
    err = abs(Fraction(value) - oracle)
    # correctly rounded to working_digits significant digits: half an ulp
    assert err <= Fraction(5, 10 ** ctx.working_digits)


def test_pi_agrees_across_precisions():
    lo, hi = pi(ctx_new(50)), pi(ctx_new(100))
    with localcontext(ctx_new(100).decimal):
        assert abs(lo - hi) < Decimal("1e-65")
    assert pi(ctx_new(10)) > 3
    with localcontext(ctx_new(10).decimal):
        assert pi(ctx_new(10)) ** 2 < 10


def test_pi_truncation_is_deterministic():
    # pi at D2 equals pi at D1 > D2 rounded to D2's working digits
    a = pi(ctx_new(200))
    b = pi(ctx_new(60))
    assert ctx_new(60).decimal.plus(a) == b


def test_exp_values():
    ctx = ctx_new(30)
    assert exp(Decimal(0), ctx) == 1
    # Taylor oracle in exact rationals
    e = sum(Fraction(1, factorial(k)) for k in range(60))
    assert abs(Fraction(exp(Decimal(1), ctx)) - e) < Fraction(1, 10 ** 45)
    assert str(exp(Decimal(1), ctx)).startswith("2.71828182845904523536")
    c = ctx.decimal
    inv = c.divide(1, exp(Decimal(1), ctx))
    assert c.abs(c.subtract(exp(Decimal(-1), ctx), inv)) < Decimal("1e-30")


def test_exp_range_error():
    with pytest.raises(RangeError):
        exp(Decimal(2 * 10 ** 6), ctx_new(20))


@settings(max_examples=40, deadline=None)
@given(st.decimals(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False, places=6))
def test_exp_reciprocal_property(a):
    ctx = ctx_new(40)
    c = ctx.decimal
    product = c.multiply(exp(a, ctx), exp(c.minus(a), ctx))
    assert c.abs(c.subtract(product, 1)) < Decimal("1e-40")


def test_sinh_definition():
    ctx = ctx_new(40)
    c = ctx.decimal
    x = Decimal("1.5")
    expected = c.divide(c.subtract(exp(x, ctx), exp(-x, ctx)), 2)
    assert c.abs(c.subtract(sinh(x, ctx), expected)) < Decimal("1e-55")


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(20) == Fraction(-174611, 330)


def test_bernoulli_recurrence_holds():
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 with B_1 = -1/2 and zero odd B_j, j > 1
    from math import comb
    for m in range(2, 40, 2):
        total = comb(m + 1, 1) * Fraction(-1, 2)
        total += sum(comb(m + 1, j) * bernoulli(j) for j in range(0, m + 1, 2))
        assert total == 0


def test_bernoulli_rejects_odd_and_out_of_range():
    with pytest.raises(ValueError):
        bernoulli(3)
    with pytest.raises(ValueError):
        bernoulli(-2)
    with pytest.raises(ValueError):
        bernoulli(2002)


def test_factorial():
    assert factorial(0) == 1
    assert factorial(5) == 120
    prod = 1
    for k in range(1, 25):
        prod *= k
    assert factorial(24) == prod == 620448401733239439360000


@settings(max_examples=60, deadline=None)
@given(st.decimals(allow_nan=False, allow_infinity=False, places=30,
                   min_value=Decimal("-1e6"), max_value=Decimal("1e6")))
def test_string_round_trip(x):
    ctx = ctx_new(30)
    value = ctx.decimal.plus(x)
    assert from_string(to_string(value)) == value


def test_fixed_point_round_trip():
    x = Decimal("0.123456789012345678901234567890")
    bits = 200
    n = decimal_to_fixed(x, bits)
    back = fixed_to_decimal(n, bits, 30)
    assert back == x
    assert decimal_to_fixed(Decimal("-0.5"), 4) == -8
