"""Central binomial lambda/mu sums, the term grammar, and zeta(s) at integers."""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

from . import kernels
from .precision import (
    PrecisionContext,
    bernoulli,
    bits_for_digits,
    factorial,
    fixed_to_decimal,
    fraction_to_decimal,
    pi_at,
    working_context,
)

LAMBDA = "lambda"
MU = "mu"
ZETA = "zeta"
KINDS = (LAMBDA, MU, ZETA)


class TermParseError(ValueError):
    pass


class TermInvariantError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SumTerm:
    """lambda(m, prod P_r), mu(m, prod P_r), or a zeta(w) target.

    ``parts`` holds the power-sum orders r_j sorted descending; an empty
    tuple stands for P_0.
    """

    kind: str
    m: int
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        object.__setattr__(self, "parts", parts)
        if self.kind not in KINDS:
            raise TermInvariantError(f"unknown term kind {self.kind!r}")
        if self.kind == ZETA:
            if parts:
                raise TermInvariantError("zeta takes no power-sum parts")
            if self.m < 2:
                raise TermInvariantError("zeta requires argument >= 2")
            return
        if self.kind == LAMBDA and (self.m < 3 or self.m % 2 == 0):
            raise TermInvariantError(f"lambda requires odd m >= 3, got m={self.m}")
        if self.kind == MU and (self.m < 2 or self.m % 2):
            raise TermInvariantError(f"mu requires even m >= 2, got m={self.m}")
        for r in parts:
            if r < 2 or r % 2:
                raise TermInvariantError(f"power-sum parts must be even and >= 2, got {r}")

    @property
    def weight(self) -> int:
        return self.m + sum(self.parts)

    @property
    def alternating(self) -> bool:
        return self.kind == LAMBDA

    def __str__(self) -> str:
        if self.kind == ZETA:
            return f"zeta({self.m})"
        return f"{self.kind}({self.m},[{','.join(map(str, self.parts))}])"


def lam(m: int, *parts: int) -> SumTerm:
    return SumTerm(LAMBDA, m, parts)


def mu(m: int, *parts: int) -> SumTerm:
    return SumTerm(MU, m, parts)


def zeta_term(w: int) -> SumTerm:
    return SumTerm(ZETA, w)


_TERM_RE = re.compile(
    r"^\s*(lambda|mu)\s*\(\s*(\d+)\s*,\s*\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]\s*\)\s*$"
    r"|^\s*zeta\s*\(\s*(\d+)\s*\)\s*$")


def parse_term(text: str) -> SumTerm:
    """Parse ``lambda(M,[R,...])``, ``mu(M,[R,...])`` or ``zeta(W)``."""
    match = _TERM_RE.match(text)
    if match is None:
        raise TermParseError(f"malformed term {text!r}")
    kind, m, parts, w = match.groups()
    if w is not None:
        return SumTerm(ZETA, int(w))
    rs = tuple(int(p) for p in parts.split(",")) if parts.strip() else ()
    return SumTerm(kind, int(m), rs)


# -- truncation ---------------------------------------------------------------

def truncation_bound(ctx: PrecisionContext | int) -> int:
    """Number of k-terms so the 4**-k tail drops below 10**-working_digits."""
    wd = ctx if isinstance(ctx, int) else ctx.working_digits
    k = math.ceil(wd * math.log(10) / math.log(4))
    # Correct any float slip: k is the least integer with 4**k >= 10**wd.
    target = 10 ** wd
    while 4 ** k < target:
        k += 1
    while k > 0 and 4 ** (k - 1) >= target:
        k -= 1
    return k + 20


# -- basis evaluation ---------------------------------------------------------

@dataclass
class EvaluatedBasis:
    terms: list[SumTerm]
    values: list[Decimal]
    truncation_k: int
    digits: int

    def __post_init__(self):
        if len(self.terms) != len(self.values):
            raise ValueError("terms and values differ in length")

    def value(self, term: SumTerm) -> Decimal:
        return self.values[self.terms.index(term)]

    def as_dict(self) -> dict[SumTerm, Decimal]:
        return dict(zip(self.terms, self.values))


def eval_basis(terms: Sequence[SumTerm], ctx: PrecisionContext,
               cache=None) -> EvaluatedBasis:
    """Evaluate lambda/mu terms in one shared pass over k.

    ``cache`` is an optional :class:`zetaforge.cache.SumCache`; hits are
    bit-identical to recomputation.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("eval_basis needs at least one term")
    for t in terms:
        if t.kind == ZETA:
            raise ValueError(f"{t} is a zeta target; use zeta_int")
    K = truncation_bound(ctx)
    values: dict[SumTerm, Decimal] = {}
    if cache is not None:
        for t in terms:
            hit = cache.get(t, ctx.digits, K)
            if hit is not None:
                values[t] = hit
    todo = [t for t in dict.fromkeys(terms) if t not in values]
    if todo:
        wd = ctx.working_digits
        bits = bits_for_digits(wd + 10)
        specs = [(t.alternating, t.m, t.parts) for t in todo]
        sums = kernels.central_binomial_sums(specs, K, bits)
        for t, s in zip(todo, sums):
            values[t] = fixed_to_decimal(s, bits, wd)
            if cache is not None:
                cache.put(t, ctx.digits, K, values[t])
    return EvaluatedBasis(terms, [values[t] for t in terms], K, ctx.digits)


# -- zeta at integers ---------------------------------------------------------

ZETA_MAX = 200

_zeta_lock = threading.Lock()
_zeta_memo: dict[tuple[int, int], Decimal] = {}


def zeta_int(s: int, ctx: PrecisionContext) -> Decimal:
    """zeta(s) for integer 2 <= s <= 200 at working precision."""
    if s < 2:
        raise ValueError(f"zeta_int requires s >= 2, got {s}")
    if s > ZETA_MAX:
        raise ValueError(f"zeta_int supports s <= {ZETA_MAX}, got {s}")
    wd = ctx.working_digits
    key = (s, wd)
    with _zeta_lock:
        hit = _zeta_memo.get(key)
    if hit is not None:
        return hit
    if s % 2 == 0:
        value = _zeta_even(s, ctx)
    else:
        value = zeta_euler_maclaurin(s, wd, max(20, wd))
    with _zeta_lock:
        _zeta_memo[key] = value
    return value


def _zeta_even(s: int, ctx: PrecisionContext) -> Decimal:
    # |B_s| (2 pi)**s / (2 s!)
    wd = ctx.working_digits
    c = working_context(wd + 10)
    q = abs(bernoulli(s)) * Fraction(2 ** (s - 1), factorial(s))
    return working_context(wd).plus(
        c.multiply(fraction_to_decimal(q, wd + 10), c.power(pi_at(wd + 10), s)))


def zeta_euler_maclaurin(s: int, wd: int, M: int) -> Decimal:
    """zeta(s) by Euler-Maclaurin with cutoff ``M``, accurate to 10**-wd.

    Correction terms are added until the next one falls below the target;
    raises if the asymptotic series turns before that (M too small).
    """
    prec = wd + 10
    c = working_context(prec)
    eps = Decimal(1).scaleb(-(wd + 5))
    total = Decimal(0)
    for k in range(1, M):
        total = c.add(total, c.power(Decimal(k), -s))
    dM = Decimal(M)
    m_pow = c.power(dM, 1 - s)  # M**(1-s)
    total = c.add(total, c.divide(m_pow, s - 1))
    total = c.add(total, c.divide(c.divide(m_pow, dM), 2))
    inv_m2 = c.divide(1, c.multiply(dM, dM))
    m_pow = c.divide(m_pow, dM)  # M**(-s)
    rising = 1
    prev = None
    i = 1
    while True:
        if i == 1:
            rising = s
        else:
            rising *= (s + 2 * i - 3) * (s + 2 * i - 2)
        m_pow = c.divide(m_pow, dM) if i == 1 else c.multiply(m_pow, inv_m2)
        coef = bernoulli(2 * i) * Fraction(rising, factorial(2 * i))
        term = c.multiply(fraction_to_decimal(coef, prec), m_pow)
        if abs(term) < eps:
            break
        if prev is not None and abs(term) > prev:
            raise ArithmeticError(f"Euler-Maclaurin diverged before convergence; M={M} too small")
        total = c.add(total, term)
        prev = abs(term)
        i += 1
    return working_context(wd).plus(total)


def zeta_values(weights, ctx: PrecisionContext) -> dict[int, Decimal]:
    return {w: zeta_int(w, ctx) for w in weights}


__all__ = [
    "SumTerm", "EvaluatedBasis", "parse_term", "truncation_bound", "eval_basis",
    "zeta_int", "zeta_euler_maclaurin", "lam", "mu", "zeta_term",
    "TermParseError", "TermInvariantError", "LAMBDA", "MU", "ZETA",
]
