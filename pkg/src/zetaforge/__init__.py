"""Arbitrary-precision search for Apery-like zeta formulae."""

from .cache import SumCache
from .genfun import (
    TruncatedSeries,
    bb_lhs,
    bb_rhs,
    compare_coefficients,
    koecher_lhs,
    koecher_rhs,
    series_mul,
    verify_at_point,
)
from .intrel import (
    NoRelationCertificate,
    PSLQIndeterminate,
    Relation,
    canonicalize,
    pslq,
    verify_relation,
)
from .kernels import BACKEND
from .precision import (
    InvalidPrecisionError,
    PrecisionContext,
    bernoulli,
    ctx_new,
    exp,
    from_string,
    pi,
    sinh,
    to_string,
)
from .ramanujan import RamanujanResult, ramanujan_4n1, ramanujan_4n3, verify_ramanujan
from .search import (
    HuntReport,
    SearchConfig,
    check_redundancy,
    enumerate_basis,
    exclude_simple_form,
    hunt,
)
from .sums import (
    EvaluatedBasis,
    SumTerm,
    eval_basis,
    lam,
    mu,
    parse_term,
    truncation_bound,
    zeta_int,
    zeta_term,
)

__version__ = "0.1.0"
