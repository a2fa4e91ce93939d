"""Truncated power series and the two central-binomial generating functions.

``bb`` is the identity

    sum_k 1/(k^3 (1 - z^4/k^4))
        = 5/2 sum_k (-1)^(k+1)/(k^3 C(2k,k)) * 1/(1 - z^4/k^4)
                    * prod_{j<k} (j^4 + 4 z^4)/(j^4 - z^4)

expanded in t = z^4, and ``koecher`` is

    sum_k 1/(k^3 (1 - z^2/k^2))
        = sum_k (-1)^(k+1)/(k^3 C(2k,k)) * (1/2 + 2/(1 - z^2/k^2))
                    * prod_{j<k} (1 - z^2/j^2)

expanded in t = z^2.  The left sides have coefficients zeta(4n+3) and
zeta(2n+3) respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .precision import PrecisionContext, fraction_to_decimal, working_context
from .sums import ZETA_MAX, truncation_bound, zeta_int

MAX_ORDER = 10
IDENTITIES = ("bb", "koecher")


@dataclass
class TruncatedSeries:
    """Coefficients of t^0..t^order, all arithmetic truncated at ``order``."""

    coefficients: list[Decimal]
    ctx: PrecisionContext

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("series needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def constant(cls, value, order: int, ctx: PrecisionContext) -> TruncatedSeries:
        return cls([Decimal(value)] + [Decimal(0)] * order, ctx)

    def __getitem__(self, n: int) -> Decimal:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def _check(self, other: TruncatedSeries):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        c = self.ctx.decimal
        return TruncatedSeries([c.add(a, b) for a, b in zip(self, other)], self.ctx)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return series_mul(self, other)

    def scale(self, factor: Decimal) -> TruncatedSeries:
        c = self.ctx.decimal
        return TruncatedSeries([c.multiply(a, factor) for a in self], self.ctx)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    a._check(b)
    c = a.ctx.decimal
    N = a.order
    out = []
    for n in range(N + 1):
        acc = Decimal(0)
        for i in range(n + 1):
            if a[i] and b[n - i]:
                acc = c.add(acc, c.multiply(a[i], b[n - i]))
        out.append(acc)
    return TruncatedSeries(out, a.ctx)


def _check_order(N: int):
    if not 0 <= N <= MAX_ORDER:
        raise ValueError(f"series order must be in 0..{MAX_ORDER}, got {N}")


def bb_lhs(N: int, ctx: PrecisionContext) -> TruncatedSeries:
    _check_order(N)
    return TruncatedSeries([zeta_int(4 * n + 3, ctx) for n in range(N + 1)], ctx)


def koecher_lhs(N: int, ctx: PrecisionContext) -> TruncatedSeries:
    _check_order(N)
    return TruncatedSeries([zeta_int(2 * n + 3, ctx) for n in range(N + 1)], ctx)


def _central_weights(ctx: PrecisionContext):
    """Yield (k, (-1)^(k+1) / (k^3 C(2k,k))) for k = 1..K."""
    c = ctx.decimal
    binom = 1
    for k in range(1, truncation_bound(ctx) + 1):
        binom = binom * 2 * (2 * k - 1) // k
        w = c.divide(1, Decimal(k ** 3 * binom))
        yield k, (w if k % 2 else c.minus(w))


def _geometric(step: Decimal, N: int, ctx: PrecisionContext, head=1, tail=1):
    """head + tail * (step t + step^2 t^2 + ...) truncated at N."""
    c = ctx.decimal
    coeffs = [Decimal(head)]
    p = Decimal(1)
    for _ in range(N):
        p = c.multiply(p, step)
        coeffs.append(c.multiply(p, tail))
    return TruncatedSeries(coeffs, ctx)


def bb_rhs(N: int, ctx: PrecisionContext) -> TruncatedSeries:
    _check_order(N)
    c = ctx.decimal
    total = TruncatedSeries.constant(0, N, ctx)
    prod = TruncatedSeries.constant(1, N, ctx)
    for k, w in _central_weights(ctx):
        inv4 = c.divide(1, Decimal(k ** 4))
        # 1/(1 - t/k^4)
        g = _geometric(inv4, N, ctx)
        total = total + (prod * g).scale(w)
        # (1 + 4t/k^4)/(1 - t/k^4) = 1 + 5 sum_{n>=1} (t/k^4)^n
        prod = prod * _geometric(inv4, N, ctx, head=1, tail=5)
    return total.scale(Decimal("2.5"))


def koecher_rhs(N: int, ctx: PrecisionContext) -> TruncatedSeries:
    _check_order(N)
    c = ctx.decimal
    total = TruncatedSeries.constant(0, N, ctx)
    prod = TruncatedSeries.constant(1, N, ctx)
    for k, w in _central_weights(ctx):
        inv2 = c.divide(1, Decimal(k * k))
        # 1/2 + 2/(1 - t/k^2) = 5/2 + 2 sum_{n>=1} (t/k^2)^n
        g = _geometric(inv2, N, ctx, head=Decimal("2.5"), tail=2)
        total = total + (prod * g).scale(w)
        factor = TruncatedSeries.constant(1, N, ctx)
        if N:
            factor.coefficients[1] = c.minus(inv2)
        prod = prod * factor
    return total


# -- point evaluation ---------------------------------------------------------

def _lhs_at(identity: str, z: Fraction, ctx: PrecisionContext) -> Decimal:
    """Left side via sum_n t^n zeta(p n + 3), t = z^4 or z^2.

    Written as 1/(1 - t) + sum_n t^n (zeta(p n + 3) - 1), whose terms decay
    like (t / 8)^n; summation stops once the bound on the rest drops below
    the working precision.
    """
    step = 4 if identity == "bb" else 2
    t = z ** step
    wd = ctx.working_digits
    c = working_context(wd + 10)
    tdec = fraction_to_decimal(t, wd + 10)
    total = fraction_to_decimal(1 / (1 - t), wd + 10)
    eps = Decimal(1).scaleb(-(wd + 5))
    tn = Decimal(1)
    n = 0
    while True:
        s = step * n + 3
        # zeta(s) - 1 < 2^(1-s) for s >= 2
        bound = c.multiply(c.abs(tn), c.power(2, 1 - s))
        if bound < eps and n > 0:
            break
        total = c.add(total, c.multiply(tn, _zeta_minus_one(s, ctx, c)))
        tn = c.multiply(tn, tdec)
        n += 1
    return ctx.decimal.plus(total)


def _zeta_minus_one(s: int, ctx: PrecisionContext, c) -> Decimal:
    if s <= ZETA_MAX:
        return c.subtract(zeta_int(s, ctx), 1)
    # Large s: sum_{k>=2} k^-s converges after a handful of terms.
    eps = Decimal(1).scaleb(-(ctx.working_digits + 10))
    total = Decimal(0)
    k = 2
    while True:
        term = c.power(Decimal(k), -s)
        if term < eps:
            return total
        total = c.add(total, term)
        k += 1


def lhs_direct(identity: str, z: float, M: int) -> float:
    """Plain partial sum of the left side over k <= M (double precision)."""
    step = 4 if identity == "bb" else 2
    t = z ** step
    return sum(1.0 / (k ** 3 * (1.0 - t / k ** step)) for k in range(1, M + 1))


def _rhs_at(identity: str, z: Fraction, ctx: PrecisionContext) -> Decimal:
    wd = ctx.working_digits
    c = working_context(wd + 10)
    total = Decimal(0)
    prod = Fraction(1)
    binom = 1
    if identity == "bb":
        t = z ** 4
        for k in range(1, truncation_bound(ctx) + 1):
            binom = binom * 2 * (2 * k - 1) // k
            k4 = k ** 4
            factor = prod * Fraction(k4, k4 - t) / (k ** 3 * binom)
            term = fraction_to_decimal(factor, wd + 10)
            total = c.add(total, term) if k % 2 else c.subtract(total, term)
            prod *= (k4 + 4 * t) / (k4 - t)
        total = c.multiply(total, Decimal("2.5"))
    else:
        t = z ** 2
        for k in range(1, truncation_bound(ctx) + 1):
            binom = binom * 2 * (2 * k - 1) // k
            k2 = k * k
            factor = prod * (Fraction(1, 2) + Fraction(2 * k2, k2 - t)) / (k ** 3 * binom)
            term = fraction_to_decimal(factor, wd + 10)
            total = c.add(total, term) if k % 2 else c.subtract(total, term)
            prod *= 1 - t / k2
    return ctx.decimal.plus(total)


def verify_at_point(identity: str, z, ctx: PrecisionContext) -> Decimal:
    """|LHS - RHS| of the chosen identity at a rational point |z| < 1."""
    if identity not in IDENTITIES:
        raise ValueError(f"identity must be one of {IDENTITIES}")
    z = Fraction(z)
    if abs(z) >= 1:
        raise ValueError(f"|z| must be < 1, got {z}")
    lhs = _lhs_at(identity, z, ctx)
    rhs = _rhs_at(identity, z, ctx)
    with localcontext(ctx.decimal):
        return abs(lhs - rhs)


def compare_coefficients(identity: str, N: int, ctx: PrecisionContext) -> list[dict]:
    """Per-coefficient rows {n, lhs, rhs, abs_diff} as Decimals."""
    if identity == "bb":
        lhs, rhs = bb_lhs(N, ctx), bb_rhs(N, ctx)
    elif identity == "koecher":
        lhs, rhs = koecher_lhs(N, ctx), koecher_rhs(N, ctx)
    else:
        raise ValueError(f"identity must be one of {IDENTITIES}")
    c = ctx.decimal
    return [{"n": n, "lhs": a, "rhs": b, "abs_diff": abs(c.subtract(a, b))}
            for n, (a, b) in enumerate(zip(lhs, rhs))]

