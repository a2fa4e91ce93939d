"""Command-line interface: ``zetaforge eval|hunt|verify|cache``.

JSON is the primary output; ``--format text`` renders the same document.
Exit codes: 0 found or passed, 1 usage error, 2 internal error,
3 certificates only (or a failed verification), 4 indeterminate.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from decimal import Decimal
from pathlib import Path

from . import kernels
from .cache import SumCache
from .genfun import IDENTITIES, MAX_ORDER, compare_coefficients
from .intrel import DEFAULT_MAX_NORM
from .precision import InvalidPrecisionError, ctx_new, format_sci, working_context
from .ramanujan import FAMILIES, verify_ramanujan
from .search import STRATEGIES, SearchConfig, hunt
from .sums import ZETA, TermInvariantError, TermParseError, eval_basis, parse_term, zeta_int

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2
EXIT_NEGATIVE = 3
EXIT_INDETERMINATE = 4

# Verification passes when every difference is below 10**(-digits + VERIFY_SLACK).
VERIFY_SLACK = 15


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _norm(text: str) -> int:
    """Accepts plain integers and forms such as ``1e12``."""
    try:
        value = Decimal(text)
    except ArithmeticError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if value != value.to_integral_value() or value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def _n_range(text: str) -> range:
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--cache-dir", default=None,
                        help="sum cache directory (default: $ZETAFORGE_CACHE or ~/.cache/zetaforge)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the sum cache")

    parser = _Parser(prog="zetaforge",
                     description="Search for and verify Apery-like formulae for zeta values.")
    parser.add_argument("--backend-info", action="store_true", help="print the kernel backend and exit")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("eval", parents=[common], help="evaluate lambda/mu sums and zeta values")
    p.add_argument("terms", nargs="+", metavar="TERM",
                   help="lambda(M,[R,...]), mu(M,[R,...]) or zeta(W)")
    p.add_argument("--digits", type=_positive_int, default=50)

    p = sub.add_parser("hunt", parents=[common], help="search for formulae of a given weight")
    p.add_argument("--weight", type=_positive_int, required=True)
    p.add_argument("--digits", type=_positive_int, default=None,
                   help="default: max(120, 40 * (basis size + 1))")
    p.add_argument("--max-norm", type=_norm, default=DEFAULT_MAX_NORM)
    p.add_argument("--max-support", type=_positive_int, default=None)
    p.add_argument("--strategy", choices=STRATEGIES, default="lattice")
    p.add_argument("--out", default=None, help="also write the JSON report here")

    p = sub.add_parser("verify", parents=[common],
                       help="check a generating-function identity or a Ramanujan family")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--identity", choices=IDENTITIES)
    group.add_argument("--family", choices=FAMILIES)
    p.add_argument("--orders", type=int, default=None, help="highest series order (with --identity)")
    p.add_argument("--n", type=_n_range, default=None, help="range A..B (with --family)")
    p.add_argument("--digits", type=_positive_int, default=120)

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the sum cache")
    p.add_argument("action", choices=("list", "clear", "path"))
    return parser


def _cache(args):
    if args.no_cache:
        return None
    return SumCache(args.cache_dir)


def _ctx(digits):
    try:
        return ctx_new(digits)
    except InvalidPrecisionError as exc:
        raise UsageError(str(exc))


# -- subcommands --------------------------------------------------------------

def cmd_eval(args):
    terms = []
    for text in args.terms:
        try:
            terms.append(parse_term(text))
        except (TermParseError, TermInvariantError) as exc:
            raise UsageError(f"bad term {text!r}: {exc}")
    ctx = _ctx(args.digits)
    sums = [t for t in terms if t.kind != ZETA]
    values = {}
    if sums:
        values.update(eval_basis(sums, ctx, _cache(args)).as_dict())
    for t in terms:
        if t.kind == ZETA:
            values[t] = zeta_int(t.m, ctx)
    out = working_context(args.digits)
    doc = {
        "command": "eval",
        "digits": str(args.digits),
        "values": [{"term": str(t), "value": str(out.plus(values[t]))} for t in terms],
    }
    return doc, EXIT_OK


def cmd_hunt(args):
    if args.digits is not None:
        _ctx(args.digits)
    try:
        config = SearchConfig(args.weight, args.digits, args.max_norm,
                              args.max_support, args.strategy)
    except ValueError as exc:
        raise UsageError(str(exc))
    report = hunt(config, _cache(args))
    doc = {"command": "hunt", **report.to_json()}
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    if report.indeterminate:
        code = EXIT_INDETERMINATE
    elif report.relations:
        code = EXIT_OK
    else:
        code = EXIT_NEGATIVE
    return doc, code


def cmd_verify(args):
    ctx = _ctx(args.digits)
    tol = Decimal(1).scaleb(-args.digits + VERIFY_SLACK)
    out = working_context(args.digits)
    rows = []
    if args.identity:
        if args.orders is None:
            raise UsageError("--identity needs --orders N")
        if not 0 <= args.orders <= MAX_ORDER:
            raise UsageError(f"--orders must be in 0..{MAX_ORDER}")
        for r in compare_coefficients(args.identity, args.orders, ctx):
            rows.append({"n": str(r["n"]), "lhs": str(out.plus(r["lhs"])),
                         "rhs": str(out.plus(r["rhs"])),
                         "abs_diff": format_sci(r["abs_diff"]), "pass": r["abs_diff"] < tol})
        target = {"identity": args.identity, "orders": str(args.orders)}
    else:
        if args.n is None:
            raise UsageError("--family needs --n A..B")
        try:
            results = verify_ramanujan(args.family, args.n, ctx)
        except ValueError as exc:
            raise UsageError(str(exc))
        for r in results:
            row = r.to_json()
            rows.append({"n": str(r.n), "zeta": row["zeta"], "lhs": row["zeta_reference"],
                         "rhs": row["rhs_value"], "abs_diff": row["abs_diff"],
                         "pass": r.abs_diff < tol})
        target = {"family": args.family, "n": f"{args.n.start}..{args.n.stop - 1}"}
    all_pass = all(r["pass"] for r in rows)
    doc = {"command": "verify", **target, "digits": str(args.digits),
           "tolerance": f"{tol:.0e}", "rows": rows, "all_pass": all_pass}
    return doc, EXIT_OK if all_pass else EXIT_NEGATIVE


def cmd_cache(args):
    cache = SumCache(args.cache_dir)
    doc = {"command": "cache", "action": args.action, "directory": str(cache.directory)}
    if args.action == "list":
        doc["entries"] = [{k: str(v) for k, v in e.items()} for e in cache.entries()]
    elif args.action == "clear":
        doc["removed"] = str(cache.clear())
    return doc, EXIT_OK


COMMANDS = {"eval": cmd_eval, "hunt": cmd_hunt, "verify": cmd_verify, "cache": cmd_cache}


# -- text rendering -----------------------------------------------------------

def render_text(doc: dict) -> str:
    command = doc.get("command")
    lines = []
    if command == "eval":
        width = max(len(v["term"]) for v in doc["values"])
        for v in doc["values"]:
            lines.append(f"{v['term']:<{width}}  {v['value']}")
    elif command == "hunt":
        lines.append(f"weight {doc['weight']} ({doc['kind']}), digits {doc['digits']}, "
                     f"max_norm {doc['max_norm']}, strategy {doc['strategy']}")
        lines.append(f"basis ({len(doc['basis'])}): " + ", ".join(doc["basis"]))
        for title, key in (("relations", "relations"), ("redundancies", "redundancies")):
            lines.append(f"{title}: {len(doc[key])}")
            for r in doc[key]:
                lines.append(f"  {r['formula']}    residual {r['residual']}")
        for c in doc["certificates"]:
            lines.append(f"certificate: {c['form']} has no relation of norm <= {c['norm_bound']}")
        for w in doc["warnings"]:
            lines.append(f"warning: {w}")
        if doc["indeterminate"]:
            lines.append("status: indeterminate")
    elif command == "verify":
        head = doc.get("identity") or doc.get("family")
        lines.append(f"{head}  digits {doc['digits']}  tolerance {doc['tolerance']}")
        for r in doc["rows"]:
            label = r.get("zeta", f"n={r['n']}")
            mark = "pass" if r["pass"] else "FAIL"
            lines.append(f"  {label:<10} diff {r['abs_diff']:<10} {mark}")
        lines.append("all pass" if doc["all_pass"] else "some rows failed")
    elif command == "cache":
        lines.append(f"cache directory: {doc['directory']}")
        for e in doc.get("entries", []):
            lines.append(f"  {e['term']:<24} digits {e['digits']:<6} K {e['truncation_k']}")
        if "removed" in doc:
            lines.append(f"removed {doc['removed']} entries")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend_info:
        print(kernels.BACKEND)
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        doc, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"zetaforge {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(render_text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
