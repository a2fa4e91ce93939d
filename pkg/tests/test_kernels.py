from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforge import kernels

py = kernels.get_backend("python")
try:
    cy = kernels.get_backend("cython")
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def test_backend_selection():
    assert kernels.BACKEND in ("python", "cython")
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_pure_python_env_forces_fallback():
    code = "from zetaforge import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, ZETAFORGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


specs_strategy = st.lists(
    st.tuples(st.booleans(), st.integers(2, 9),
              st.lists(st.sampled_from([2, 4, 6]), max_size=3).map(lambda p: tuple(sorted(p, reverse=True)))),
    min_size=1, max_size=6)


@needs_ext
@settings(max_examples=40, deadline=None)
@given(specs_strategy, st.integers(1, 120), st.integers(40, 400))
def test_sums_bit_identical(specs, K, bits):
    a = py.central_binomial_sums(specs, K, bits)
    b = cy.central_binomial_sums(specs, K, bits)
    assert a == b
    assert all(type(v) is int for v in b)


def _planted(rng, n, prec):
    xs = [rng.getrandbits(prec) for _ in range(n - 1)]
    a = [rng.randint(-1000, 1000) for _ in range(n - 1)] + [1]
    xs.append(-sum(ai * x for ai, x in zip(a, xs)))
    return xs


@needs_ext
@pytest.mark.parametrize("seed", range(12))
def test_pslq_bit_identical(seed):
    rng = random.Random(seed)
    n = 2 + seed % 7
    prec = 300
    xs = _planted(rng, n, prec) if seed % 2 else [rng.getrandbits(prec) + 1 for _ in range(n)]
    args = (xs, prec, (1 << prec) // 10 ** 60, 10 ** 9, 2000 * n ** 3, 10 ** 60)
    a = py.pslq_fixed(*args)
    b = cy.pslq_fixed(*args)
    assert a == b
    if b[1] is not None:
        assert all(type(v) is int for v in b[1])
    assert b[3] is None or type(b[3]) is int


def test_sums_small_case_by_hand():
    # k = 1, 2 of sum (-1)^(k+1) / (k^3 C(2k,k)) in 2^-10 fixed point
    one = 1 << 10
    expect = one // 2 - one // (8 * 6)
    assert py.central_binomial_sums([(True, 3, ())], 2, 10) == [expect]
