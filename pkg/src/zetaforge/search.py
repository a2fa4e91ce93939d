"""Weight-graded term bases and the search for non-redundant zeta formulae.

A formula for zeta(w) is reported when its support S (the lambda or mu sums
with nonzero coefficient) is minimal: [zeta(w)] + S admits an integer
relation using every member of S and zeta(w), while S on its own admits
none.  Subsets are visited by increasing size, then in basis order, so a
support containing an already accepted one is never reported.

Two strategies are available.  ``"literal"`` runs PSLQ on every candidate
subset.  ``"lattice"`` (the default) first collects a basis of all integer
relations among [zeta(w)] + basis by repeated PSLQ with coordinate
elimination, decides each subset by exact rational linear algebra on that
basis, and then confirms every accepted subset with the same two PSLQ runs
the literal strategy uses.  Both produce identical reports; the lattice
strategy replaces thousands of PSLQ calls by a few dozen.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .intrel import (
    DEFAULT_MAX_NORM,
    NoRelationCertificate,
    PSLQIndeterminate,
    Relation,
    canonicalize,
    pslq,
    verify_relation,
)
from .precision import PrecisionContext, ctx_new, format_sci
from .sums import LAMBDA, MU, SumTerm, eval_basis, zeta_int, zeta_term

STRATEGIES = ("lattice", "literal")


def kind_for_weight(weight: int) -> str:
    return LAMBDA if weight % 2 else MU


def _even_partitions(total: int, largest: int):
    """Partitions of ``total`` into even parts <= ``largest``, descending-lex."""
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 1, -1):
        if first % 2:
            continue
        for rest in _even_partitions(total - first, first):
            yield (first,) + rest


def enumerate_basis(weight: int, kind: str | None = None) -> list[SumTerm]:
    """All lambda (odd m >= 3) or mu (even m >= 2) terms of the given weight.

    Ordered by descending m, then descending-lexicographic parts.
    """
    if weight < 2:
        raise ValueError(f"weight must be >= 2, got {weight}")
    kind = kind or kind_for_weight(weight)
    lowest = 3 if kind == LAMBDA else 2
    terms = []
    for m in range(weight, lowest - 1, -1):
        if (kind == LAMBDA) != bool(m % 2):
            continue
        for parts in _even_partitions(weight - m, weight - m):
            terms.append(SumTerm(kind, m, parts))
    return terms


def default_digits(basis_size: int) -> int:
    return max(120, 40 * (basis_size + 1))


@dataclass(frozen=True)
class SearchConfig:
    weight: int
    digits: int | None = None
    max_norm: int = DEFAULT_MAX_NORM
    max_support: int | None = None
    strategy: str = "lattice"

    def __post_init__(self):
        if self.weight < 2:
            raise ValueError(f"weight must be >= 2, got {self.weight}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")

    @property
    def kind(self) -> str:
        return kind_for_weight(self.weight)

    def resolved_digits(self, basis_size: int) -> int:
        return self.digits if self.digits is not None else default_digits(basis_size)


@dataclass
class HuntReport:
    config: SearchConfig
    kind: str
    digits: int
    basis: list[SumTerm]
    relations: list[Relation] = field(default_factory=list)
    redundancies: list[Relation] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    indeterminate: bool = False
    elapsed: float = 0.0

    def formula_vectors(self) -> list[dict[str, int]]:
        """Each relation as {term string: coefficient}, zeta included."""
        return [{str(t): c for t, c in zip(r.terms, r.coefficients) if c}
                for r in self.relations]

    def to_json(self) -> dict:
        return {
            "weight": self.config.weight,
            "kind": self.kind,
            "digits": self.digits,
            "max_norm": str(self.config.max_norm),
            "strategy": self.config.strategy,
            "basis": [str(t) for t in self.basis],
            "relations": [_relation_json(r) for r in self.relations],
            "redundancies": [_relation_json(r) for r in self.redundancies],
            "certificates": self.certificates,
            "warnings": self.warnings,
            "indeterminate": self.indeterminate,
            "metadata": {"elapsed_seconds": round(self.elapsed, 3)},
        }


def format_relation(terms: Sequence[SumTerm], coeffs: Sequence[int]) -> str:
    out = []
    for t, c in zip(terms, coeffs):
        if not c:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        if not out:
            out.append(("-" if c < 0 else "") + f"{mag}{t}")
        else:
            out.append(("- " if c < 0 else "+ ") + f"{mag}{t}")
    return " ".join(out) + " = 0"


def _relation_json(rel: Relation) -> dict:
    zeta_coeff = 0
    terms, coeffs = [], []
    for t, c in zip(rel.terms, rel.coefficients):
        if t.kind == "zeta":
            zeta_coeff = c
        elif c:
            terms.append(str(t))
            coeffs.append(str(c))
    return {
        "zeta_coeff": str(zeta_coeff),
        "terms": terms,
        "coeffs": coeffs,
        "residual": format_sci(rel.residual),
        "formula": format_relation(rel.terms, rel.coefficients),
    }


# -- single-shot checks -------------------------------------------------------

def _single_value(weight: int, ctx: PrecisionContext) -> tuple[SumTerm, Decimal]:
    term = SumTerm(kind_for_weight(weight), weight, ())
    return term, eval_basis([term], ctx).values[0]


def exclude_simple_form(weight: int, ctx: PrecisionContext,
                        max_norm: int = DEFAULT_MAX_NORM):
    """PSLQ on [zeta(w), single central binomial sum of weight w].

    Returns a :class:`NoRelationCertificate` when no relation of norm up to
    ``max_norm`` exists, otherwise the relation coefficients (as for w = 3).
    """
    _, value = _single_value(weight, ctx)
    return pslq([zeta_int(weight, ctx), value], ctx, max_norm)


def check_redundancy(values: Sequence[Decimal], ctx: PrecisionContext,
                     max_norm: int = DEFAULT_MAX_NORM):
    """PSLQ on support values alone."""
    if len(values) < 2:
        raise ValueError("check_redundancy needs at least two values")
    return pslq(values, ctx, max_norm)


# -- exact relation-space algebra ---------------------------------------------

def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {c : rows @ c = 0} over the rationals."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            vec[pcol] = -mat[i][fcol]
        basis.append(vec)
    return basis


def _primitive(vec: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return canonicalize([int(v * den) for v in vec])


def restricted_relations(lattice: list[list[int]], keep: Sequence[int]) -> list[list[int]]:
    """Rational basis of the relations in span(lattice) supported on ``keep``."""
    if not lattice:
        return []
    n = len(lattice[0])
    keep = set(keep)
    rows = [[Fraction(vec[j]) for vec in lattice] for j in range(n) if j not in keep]
    combos = _nullspace(rows, len(lattice)) if rows else [
        [Fraction(int(i == d)) for i in range(len(lattice))] for d in range(len(lattice))]
    out = []
    for c in combos:
        vec = [sum(ci * lattice[d][j] for d, ci in enumerate(c)) for j in range(n)]
        out.append(_primitive(vec))
    return out


# -- the hunt -----------------------------------------------------------------

class _Values:
    """[zeta(w)] + basis values at a given precision, with one escalation."""

    def __init__(self, weight, basis, ctx, cache):
        self.weight = weight
        self.basis = basis
        self.cache = cache
        self.ctx = ctx
        self.values = self._evaluate(ctx)
        self._escalated = None

    def _evaluate(self, ctx):
        ev = eval_basis(self.basis, ctx, self.cache)
        return [zeta_int(self.weight, ctx)] + ev.values

    def escalated(self):
        if self._escalated is None:
            ctx = ctx_new(math.ceil(1.5 * self.ctx.digits))
            self._escalated = (ctx, self._evaluate(ctx))
        return self._escalated


def _pslq_escalating(vals: _Values, idx: Sequence[int], max_norm: int, report: HuntReport):
    try:
        return pslq([vals.values[i] for i in idx], vals.ctx, max_norm)
    except PSLQIndeterminate:
        ctx, values = vals.escalated()
        try:
            return pslq([values[i] for i in idx], ctx, max_norm)
        except PSLQIndeterminate as exc:
            report.indeterminate = True
            report.warnings.append(
                f"indeterminate pslq on {[_name(vals, i) for i in idx]}: {exc}")
            return None


def _name(vals: _Values, i: int) -> str:
    return str(zeta_term(vals.weight)) if i == 0 else str(vals.basis[i - 1])


def relation_lattice(vals: _Values, max_norm: int, report: HuntReport) -> list[list[int]]:
    """Rational basis of all relations among ``vals`` (coordinate elimination).

    Each PSLQ relation found on the remaining coordinates is kept, and its
    last nonzero coordinate is dropped; the loop ends on a certificate.
    """
    n = len(vals.values)
    coords = list(range(n))
    lattice = []
    while len(coords) >= 2:
        found = _pslq_escalating(vals, coords, max_norm, report)
        if not isinstance(found, list):
            break
        vec = [0] * n
        for i, c in zip(coords, found):
            vec[i] = c
        lattice.append(vec)
        drop = max(i for i in coords if vec[i])
        coords.remove(drop)
    return lattice


def hunt(config: SearchConfig, cache=None) -> HuntReport:
    """Enumerate every non-redundant formula for zeta(weight)."""
    start = time.perf_counter()
    basis = enumerate_basis(config.weight, config.kind)
    digits = config.resolved_digits(len(basis))
    report = HuntReport(config, config.kind, digits, basis)
    if not basis:
        report.elapsed = time.perf_counter() - start
        return report
    ctx = ctx_new(digits)
    vals = _Values(config.weight, basis, ctx, cache)
    check_ctx = ctx_new(math.ceil(1.25 * digits))
    check_values = _Values(config.weight, basis, check_ctx, cache).values

    simple = basis.index(SumTerm(config.kind, config.weight, ())) + 1
    outcome = _pslq_escalating(vals, [0, simple], config.max_norm, report)
    if isinstance(outcome, NoRelationCertificate):
        report.certificates.append({
            "form": f"{zeta_term(config.weight)} ~ {basis[simple - 1]}",
            **outcome.to_json(),
        })

    if config.strategy == "lattice":
        lattice = relation_lattice(vals, config.max_norm, report)
        decide = _LatticeDecider(lattice)
    else:
        decide = _LiteralDecider(vals, config.max_norm, report)

    terms = tuple([zeta_term(config.weight)] + basis)
    accepted: list[frozenset[int]] = []
    redundant: list[frozenset[int]] = []
    max_support = config.max_support or len(basis)
    for size in range(1, max_support + 1):
        for subset in combinations(range(1, len(basis) + 1), size):
            sset = frozenset(subset)
            if any(r <= sset for r in redundant):
                continue
            formula_possible = not any(a <= sset for a in accepted)
            verdict = decide(subset, formula_possible)
            if verdict is None:
                continue
            kind, vec = verdict
            if kind == "formula":
                if decide.needs_confirmation and not _confirm_formula(
                        vals, subset, vec, config.max_norm, report):
                    continue
                accepted.append(sset)
                target = report.relations
            else:
                if decide.needs_confirmation and not _confirm_redundancy(
                        vals, subset, vec, config.max_norm, report):
                    continue
                redundant.append(sset)
                target = report.redundancies
            residual = verify_relation(vec, check_values, check_ctx)
            target.append(Relation(terms, tuple(vec), residual, digits))
    report.elapsed = time.perf_counter() - start
    return report


def _full_support(vec, subset) -> bool:
    return all(vec[i] for i in subset)


class _LatticeDecider:
    """Decides subsets exactly from a rational basis of all relations."""

    needs_confirmation = True

    def __init__(self, lattice):
        self.lattice = lattice

    def __call__(self, subset, formula_possible):
        alone = restricted_relations(self.lattice, subset)
        if alone:
            if len(alone) == 1 and _full_support(alone[0], subset):
                return "redundancy", alone[0]
            return None
        if not formula_possible:
            return None
        rels = restricted_relations(self.lattice, (0,) + subset)
        if len(rels) == 1 and rels[0][0] and _full_support(rels[0], subset):
            return "formula", rels[0]
        return None


class _LiteralDecider:
    """Decides subsets by running PSLQ on each one."""

    needs_confirmation = False

    def __init__(self, vals, max_norm, report):
        self.vals = vals
        self.max_norm = max_norm
        self.report = report

    def _run(self, idx):
        found = _pslq_escalating(self.vals, idx, self.max_norm, self.report)
        if isinstance(found, list):
            vec = [0] * len(self.vals.values)
            for i, c in zip(idx, found):
                vec[i] = c
            return vec
        return found

    def __call__(self, subset, formula_possible):
        if len(subset) >= 2:
            alone = self._run(subset)
            if alone is None:
                return None
            if isinstance(alone, list):
                return ("redundancy", alone) if _full_support(alone, subset) else None
        if not formula_possible:
            return None
        vec = self._run((0,) + subset)
        if isinstance(vec, list) and vec[0] and _full_support(vec, subset):
            return "formula", vec
        return None


def _confirm_formula(vals, subset, vec, max_norm, report) -> bool:
    idx = (0,) + tuple(subset)
    want = canonicalize([vec[i] for i in idx])
    got = _pslq_escalating(vals, idx, max_norm, report)
    if got != want:
        if got is not None:
            report.warnings.append(
                f"pslq on {[_name(vals, i) for i in idx]} returned {got}, expected {want}")
        return False
    if len(subset) >= 2:
        alone = _pslq_escalating(vals, subset, max_norm, report)
        if not isinstance(alone, NoRelationCertificate):
            if alone is not None:
                report.warnings.append(
                    f"support {[_name(vals, i) for i in subset]} is itself related: {alone}")
            return False
    return True


def _confirm_redundancy(vals, subset, vec, max_norm, report) -> bool:
    want = canonicalize([vec[i] for i in subset])
    got = _pslq_escalating(vals, subset, max_norm, report)
    if got != want:
        if got is not None:
            report.warnings.append(
                f"pslq on {[_name(vals, i) for i in subset]} returned {got}, expected {want}")
        return False
    return True
