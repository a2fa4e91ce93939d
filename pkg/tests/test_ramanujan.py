from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest

from zetaforge.precision import bernoulli, ctx_new, factorial
from zetaforge.ramanujan import (
    RamanujanResult,
    bernoulli_part_4n1,
    bernoulli_part_4n3,
    exp_terms,
    ramanujan_4n1,
    ramanujan_4n3,
    verify_ramanujan,
)
from zetaforge.sums import zeta_int


def test_bernoulli_part_n0_is_7_over_720():
    # -B0 B4/4! + B2 B2/(2! 2!) - B4 B0/4! = 1/720 + 1/144 + 1/720
    hand = -bernoulli(0) * bernoulli(4) / factorial(4) \
        + bernoulli(2) ** 2 / 4 - bernoulli(4) * bernoulli(0) / factorial(4)
    assert hand == Fraction(7, 720)
    assert bernoulli_part_4n3(0) == Fraction(7, 720)


def test_bernoulli_part_4n1_n1():
    assert bernoulli_part_4n1(1) == Fraction(13, 60480)
    with pytest.raises(ValueError):
        bernoulli_part_4n1(0)


def test_bernoulli_parts_are_exact_rationals():
    for n in range(0, 5):
        assert isinstance(bernoulli_part_4n3(n), Fraction)
    # even-zeta consistency: (2 pi)^(4n+3) times the part is close to 2 zeta(4n+3)
    mpmath.mp.dps = 50
    for n in range(0, 4):
        approx = (2 * mpmath.pi) ** (4 * n + 3) * mpmath.mpf(bernoulli_part_4n3(n).numerator) \
            / bernoulli_part_4n3(n).denominator
        assert abs(approx - 2 * mpmath.zeta(4 * n + 3)) < 0.01


@pytest.mark.parametrize("n", [0, 1, 2])
def test_4n3_matches_zeta(n):
    ctx = ctx_new(60)
    c = ctx.decimal
    diff = c.abs(c.subtract(ramanujan_4n3(n, ctx), zeta_int(4 * n + 3, ctx)))
    assert diff < Decimal("1e-50")


@pytest.mark.parametrize("n", [1, 2])
def test_4n1_matches_zeta(n):
    ctx = ctx_new(60)
    c = ctx.decimal
    diff = c.abs(c.subtract(ramanujan_4n1(n, ctx), zeta_int(4 * n + 1, ctx)))
    assert diff < Decimal("1e-50")


@pytest.mark.parametrize("digits", [40, 80])
def test_all_supported_n(digits):
    ctx = ctx_new(digits)
    rows = verify_ramanujan("4n+3", range(0, 11), ctx) + verify_ramanujan("4n+1", range(1, 11), ctx)
    assert len(rows) == 21
    tol = Decimal(1).scaleb(-digits + 12)
    for r in rows:
        assert r.abs_diff < tol, (r.family, r.n)


def test_against_mpmath():
    ctx = ctx_new(50)
    mpmath.mp.dps = 80
    assert abs(mpmath.mpf(str(ramanujan_4n1(3, ctx))) - mpmath.zeta(13)) < mpmath.mpf("1e-60")
    assert abs(mpmath.mpf(str(ramanujan_4n3(4, ctx))) - mpmath.zeta(19)) < mpmath.mpf("1e-60")


def test_truncation_self_check():
    ctx = ctx_new(60)
    c = ctx.decimal
    tol = Decimal(1).scaleb(-ctx.working_digits + 2)
    for n in (0, 3):
        a = ramanujan_4n3(n, ctx)
        b = ramanujan_4n3(n, ctx, extra_terms=10)
        assert c.abs(c.subtract(a, b)) < tol
    a = ramanujan_4n1(2, ctx)
    b = ramanujan_4n1(2, ctx, extra_terms=10)
    assert c.abs(c.subtract(a, b)) < tol


def test_exp_terms_rule():
    import math
    for wd in (40, 80, 400):
        k = exp_terms(wd)
        assert k == math.ceil(wd * math.log(10) / (2 * math.pi)) + 5
        assert mpmath.exp(-2 * mpmath.pi * (k - 5)) <= mpmath.mpf(10) ** -wd * 1.0001


def test_range_checks():
    ctx = ctx_new(30)
    with pytest.raises(ValueError):
        ramanujan_4n1(0, ctx)
    with pytest.raises(ValueError):
        ramanujan_4n3(11, ctx)
    with pytest.raises(ValueError):
        ramanujan_4n3(-1, ctx)
    with pytest.raises(ValueError):
        verify_ramanujan("4n+2", range(1, 2), ctx)


def test_empty_range_and_result_type():
    ctx = ctx_new(30)
    assert verify_ramanujan("4n+3", range(0), ctx) == []
    r = RamanujanResult("4n+3", 0, Decimal("1.5"), Decimal("1.25"), 30)
    assert r.abs_diff == Decimal("0.25")
    doc = r.to_json()
    assert doc["zeta"] == "zeta(3)" and doc["abs_diff"] == "2.500e-1"
