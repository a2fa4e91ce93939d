"""Integer relation detection (PSLQ) on high-precision reals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from functools import reduce
from typing import Sequence

from . import kernels
from .precision import (
    PrecisionContext,
    bits_for_digits,
    decimal_to_fixed,
    format_sci,
    working_context,
)

DEFAULT_MAX_NORM = 10 ** 12
# Detection threshold sits this many digits above the working precision.
GUARD_RELEASE = 15
MAX_DIM = 20


class PSLQIndeterminate(ArithmeticError):
    """PSLQ ran out of precision or iterations without a verdict.

    The caller should retry at higher precision.
    """

    def __init__(self, message, iterations=0, norm_bound=None):
        super().__init__(message)
        self.iterations = iterations
        self.norm_bound = norm_bound


@dataclass(frozen=True)
class NoRelationCertificate:
    """Every integer relation among the inputs has Euclidean norm > ``norm_bound``."""

    norm_bound: Decimal
    digits_used: int
    iterations: int

    def __post_init__(self):
        if not self.norm_bound > 0:
            raise ValueError("norm_bound must be positive")

    def to_json(self) -> dict:
        return {
            "norm_bound": format_sci(self.norm_bound, 6),
            "digits_used": self.digits_used,
            "iterations": self.iterations,
        }


@dataclass(frozen=True)
class Relation:
    terms: tuple
    coefficients: tuple[int, ...]
    residual: Decimal
    digits_used: int

    def __post_init__(self):
        if len(self.terms) != len(self.coefficients):
            raise ValueError("terms and coefficients differ in length")

    @property
    def support(self) -> tuple:
        return tuple(t for t, c in zip(self.terms, self.coefficients) if c)

    @property
    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.coefficients))


def canonicalize(coefficients: Sequence[int]) -> list[int]:
    """Divide out the gcd and make the first nonzero entry positive."""
    coefficients = [int(c) for c in coefficients]
    g = reduce(math.gcd, coefficients, 0)
    if g == 0:
        raise ValueError("all-zero coefficient vector")
    first = next(c for c in coefficients if c)
    if first < 0:
        g = -g
    return [c // g for c in coefficients]


def pslq(values: Sequence[Decimal], ctx: PrecisionContext,
         max_norm: int = DEFAULT_MAX_NORM,
         max_iter: int | None = None) -> list[int] | NoRelationCertificate:
    """Find a canonical integer relation among ``values`` or bound its norm.

    Returns the coefficient list when a relation is detected, or a
    :class:`NoRelationCertificate` once every relation must have norm above
    ``max_norm``.  Raises :class:`PSLQIndeterminate` when neither verdict is
    reached within the available precision.
    """
    n = len(values)
    if n < 2:
        raise ValueError("pslq needs at least two values")
    if n > MAX_DIM:
        raise ValueError(f"pslq supports at most {MAX_DIM} values, got {n}")
    values = [Decimal(v) for v in values]
    if any(v == 0 for v in values):
        raise ValueError("pslq inputs must be nonzero")
    wd = ctx.working_digits
    prec = bits_for_digits(wd) + 16
    # Scale so the largest input has magnitude about one.
    top = max(abs(v) for v in values)
    shift = -top.adjusted()
    c = working_context(wd + 10)
    xs = [decimal_to_fixed(c.scaleb(v, shift), prec) for v in values]
    tol = (1 << prec) // 10 ** (wd - GUARD_RELEASE)
    exhaust = 10 ** (wd - GUARD_RELEASE)
    if max_iter is None:
        max_iter = 2000 * n ** 3
    status, coeffs, iterations, best_h = kernels.pslq_fixed(
        xs, prec, tol, int(max_norm), max_iter, exhaust)
    bound = None
    if best_h:
        bound = working_context(20).divide(Decimal(1 << prec), Decimal(best_h))
    if status == "relation":
        coeffs = canonicalize(coeffs)
        residual = _dot(coeffs, values, wd + 10)
        if abs(residual) >= top * Decimal(1).scaleb(-wd + GUARD_RELEASE):
            raise PSLQIndeterminate("detected relation failed the residual check",
                                    iterations, bound)
        return coeffs
    if status == "bound":
        return NoRelationCertificate(bound, ctx.digits, iterations)
    raise PSLQIndeterminate(f"pslq {status} after {iterations} iterations",
                            iterations, bound)


def _dot(coeffs: Sequence[int], values: Sequence[Decimal], prec: int) -> Decimal:
    c = working_context(prec)
    total = Decimal(0)
    for a, v in zip(coeffs, values):
        if a:
            total = c.add(total, c.multiply(Decimal(a), v))
    return total


def verify_relation(rel: Relation | Sequence[int], values: Sequence[Decimal],
                    ctx: PrecisionContext) -> Decimal:
    """|sum c_i v_i| at 1.25x the precision the relation was found at."""
    if isinstance(rel, Relation):
        coeffs, used = rel.coefficients, rel.digits_used
    else:
        coeffs, used = list(rel), ctx.digits
    if len(coeffs) != len(values):
        raise ValueError(f"relation has {len(coeffs)} coefficients, {len(values)} values given")
    prec = max(ctx.working_digits, math.ceil(1.25 * used)) + 10
    return abs(_dot(coeffs, [Decimal(v) for v in values], prec))
