# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled copy of ``_kernels_py``.

Big integers are gmpy2 ``mpz`` values when gmpy2 is installed (plain ints
otherwise); loop indices are typed, dict lookups become list lookups.  mpz
floor division, shifts and isqrt round exactly as Python ints do.  Results are
bit-identical to the pure-Python module.  Shift widths and anything that
feeds a power stay Python ints: a C ``1 << bits`` would overflow.
"""

try:
    from gmpy2 import mpz as _Z, isqrt
except ImportError:
    from math import isqrt
    _Z = int


def central_binomial_sums(specs, Py_ssize_t K, bits):
    cdef Py_ssize_t nspec = len(specs)
    cdef Py_ssize_t k, idx, j, r, nord, nexp
    cdef bint alt
    one = _Z(1) << bits
    orders = sorted({r for _, _, parts in specs for r in parts})
    exponents = sorted({m for _, m, _ in specs})
    nord = len(orders)
    nexp = len(exponents)
    order_pos = {r: j for j, r in enumerate(orders)}
    exp_pos = {m: j for j, m in enumerate(exponents)}
    # Distinct part tuples, each as a list of positions into psum.
    part_keys = []
    part_pos = {}
    for _, _, parts in specs:
        if parts not in part_pos:
            part_pos[parts] = len(part_keys)
            part_keys.append([order_pos[r] for r in parts])
    cdef Py_ssize_t nparts = len(part_keys)
    spec_alt = [bool(a) for a, _, _ in specs]
    spec_exp = [exp_pos[m] for _, m, _ in specs]
    spec_part = [part_pos[p] for _, _, p in specs]

    psum = [0] * nord
    acc = [0] * nspec
    denom = [0] * nexp
    prods = [None] * nparts
    binom = _Z(1)
    for k in range(1, K + 1):
        binom = binom * 2 * (2 * k - 1) // k
        kk = _Z(k)
        for j in range(nexp):
            denom[j] = kk ** exponents[j] * binom
        for j in range(nparts):
            num = one
            for r in part_keys[j]:
                num = (num * psum[r]) >> bits
            prods[j] = num
        for idx in range(nspec):
            t = prods[<Py_ssize_t>spec_part[idx]] // denom[<Py_ssize_t>spec_exp[idx]]
            alt = spec_alt[idx]
            if alt and not k & 1:
                acc[idx] -= t
            else:
                acc[idx] += t
        for j in range(nord):
            psum[j] += one // kk ** orders[j]
    return [int(v) for v in acc]


cdef inline object _int_or_none(object v):
    return None if v is None else int(v)


cdef inline object _round_div(object a, object b):
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


cdef void _reduce_row(list H, list A, list B, list y, Py_ssize_t i, Py_ssize_t j,
                      Py_ssize_t n, object q):
    cdef Py_ssize_t k
    cdef list Hi = H[i]
    cdef list Hj = H[j]
    cdef list Ai = A[i]
    cdef list Aj = A[j]
    cdef list row
    y[j] += q * y[i]
    for k in range(j + 1):
        Hi[k] -= q * Hj[k]
    for k in range(n):
        Ai[k] -= q * Aj[k]
    for row in B:
        row[j] += q * row[i]


cdef object _detect(list y, list B, object tol, Py_ssize_t n):
    cdef Py_ssize_t j, k
    cdef Py_ssize_t jmin = -1
    ymin = tol
    for j in range(n):
        a = abs(y[j])
        if a < ymin:
            ymin = a
            jmin = j
    if jmin >= 0:
        coeffs = [int(B[k][jmin]) for k in range(n)]
        if any(coeffs):
            return coeffs
    return None


def pslq_fixed(x, prec, tol, max_norm, Py_ssize_t max_iter, exhaust):
    cdef Py_ssize_t n = len(x)
    cdef Py_ssize_t i, j, k, m, it, top
    cdef list Hi, row
    x = [_Z(v) for v in x]
    one = _Z(1) << prec
    gamma = isqrt((4 << (2 * prec)) // 3)

    s = [0] * n
    acc = 0
    for k in range(n - 1, -1, -1):
        acc += x[k] * x[k]
        s[k] = isqrt(acc)
    t = s[0]
    cdef list y = [(v << prec) // t for v in x]
    s = [(v << prec) // t for v in s]

    cdef list A = [[int(i == j) for j in range(n)] for i in range(n)]
    cdef list B = [[int(i == j) for j in range(n)] for i in range(n)]
    cdef list H = [[0] * (n - 1) for _ in range(n)]
    for i in range(n):
        for j in range(min(i, n - 2) + 1):
            if i == j:
                H[i][j] = (s[j + 1] << prec) // s[j]
            else:
                den = s[j] * s[j + 1]
                H[i][j] = -((y[i] * y[j]) << prec) // den

    for i in range(1, n):
        for j in range(i - 1, -1, -1):
            if H[j][j]:
                q = _round_div(H[i][j], H[j][j])
                if q:
                    _reduce_row(H, A, B, y, i, j, n, q)

    found = _detect(y, B, tol, n)
    if found is not None:
        return "relation", found, 0, None

    best_h = None
    for it in range(1, max_iter + 1):
        m = 0
        best = -1
        gp = one
        for i in range(n - 1):
            v = gp * abs(H[i][i])
            if v > best:
                best = v
                m = i
            gp = (gp * gamma) >> prec
        y[m], y[m + 1] = y[m + 1], y[m]
        A[m], A[m + 1] = A[m + 1], A[m]
        H[m], H[m + 1] = H[m + 1], H[m]
        for row in B:
            row[m], row[m + 1] = row[m + 1], row[m]

        if m < n - 2:
            a = H[m][m]
            b = H[m][m + 1]
            t0 = isqrt(a * a + b * b)
            if t0 == 0:
                return "exhausted", None, it, _int_or_none(best_h)
            t1 = (a << prec) // t0
            t2 = (b << prec) // t0
            for i in range(m, n):
                Hi = H[i]
                t3 = Hi[m]
                t4 = Hi[m + 1]
                Hi[m] = (t1 * t3 + t2 * t4) >> prec
                Hi[m + 1] = (-t2 * t3 + t1 * t4) >> prec

        for i in range(m + 1, n):
            top = i - 1 if i - 1 < m + 1 else m + 1
            for j in range(top, -1, -1):
                if H[j][j]:
                    q = _round_div(H[i][j], H[j][j])
                    if q:
                        _reduce_row(H, A, B, y, i, j, n, q)

        found = _detect(y, B, tol, n)
        if found is not None:
            return "relation", found, it, _int_or_none(best_h)

        hmax = 0
        for j in range(n - 1):
            a = abs(H[j][j])
            if a > hmax:
                hmax = a
        if hmax == 0:
            return "exhausted", None, it, _int_or_none(best_h)
        if best_h is None or hmax < best_h:
            best_h = hmax
        if max_norm * hmax < one:
            return "bound", None, it, _int_or_none(best_h)

        amax = 0
        for row in A:
            for v in row:
                if v > amax:
                    amax = v
                elif -v > amax:
                    amax = -v
        if amax >= exhaust:
            return "exhausted", None, it, _int_or_none(best_h)
    return "maxiter", None, max_iter, _int_or_none(best_h)
