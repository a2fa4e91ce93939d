#!/usr/bin/env python3
"""Time the pure-Python and compiled kernels on the workloads a hunt runs.

    python3 benchmarks/bench_kernels.py --weights 7 9 11 --repeat 3

Each case is run on both backends; the outputs are compared and any
difference aborts the run, so the table only reports equivalent work.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from zetaforge import kernels
from zetaforge.intrel import GUARD_RELEASE
from zetaforge.precision import bits_for_digits, ctx_new, decimal_to_fixed, working_context
from zetaforge.search import default_digits, enumerate_basis
from zetaforge.sums import eval_basis, truncation_bound, zeta_int


def _best(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), out


def sums_case(weight):
    basis = enumerate_basis(weight)
    ctx = ctx_new(default_digits(len(basis)))
    K = truncation_bound(ctx)
    bits = bits_for_digits(ctx.working_digits + 10)
    specs = [(t.alternating, t.m, t.parts) for t in basis]
    label = f"sums  w={weight:<2} terms={len(specs):<2} K={K}"
    return label, lambda mod: mod.central_binomial_sums(specs, K, bits)


def pslq_case(weight):
    basis = enumerate_basis(weight)
    ctx = ctx_new(default_digits(len(basis)))
    values = [zeta_int(weight, ctx)] + eval_basis(basis, ctx).values
    wd = ctx.working_digits
    prec = bits_for_digits(wd) + 16
    c = working_context(wd + 10)
    shift = -max(abs(v) for v in values).adjusted()
    xs = [decimal_to_fixed(c.scaleb(v, shift), prec) for v in values]
    n = len(xs)
    args = (xs, prec, (1 << prec) // 10 ** (wd - GUARD_RELEASE), 10 ** 12,
            2000 * n ** 3, 10 ** (wd - GUARD_RELEASE))
    label = f"pslq  w={weight:<2} n={n:<2} digits={ctx.digits}"
    return label, lambda mod: mod.pslq_fixed(*args)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--weights", type=int, nargs="+", default=[7, 9, 11])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = parser.parse_args(argv)

    py = kernels.get_backend("python")
    try:
        cy = kernels.get_backend("cython")
    except ImportError:
        print("compiled backend not built; run `pip install -e .` first", file=sys.stderr)
        return 1

    rows = []
    for w in args.weights:
        for make in (sums_case, pslq_case):
            label, run = make(w)
            tp, mp, out_p = _best(lambda: run(py), args.repeat)
            tc, mc, out_c = _best(lambda: run(cy), args.repeat)
            if out_p != out_c or [type(v) for v in out_p] != [type(v) for v in out_c]:
                print(f"backends disagree on {label}", file=sys.stderr)
                return 2
            rows.append({"case": label, "python_s": tp, "cython_s": tc,
                         "speedup": tp / tc if tc else float("inf")})

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'case':<36} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for r in rows:
        print(f"{r['case']:<36} {r['python_s']:>10.4f} {r['cython_s']:>10.4f} {r['speedup']:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
