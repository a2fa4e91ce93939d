"""Pure-Python hot loops on binary fixed-point integers.

``_ckernels.pyx`` is a typed copy of this module; both must return
bit-identical results for identical inputs.
"""

from math import isqrt


def central_binomial_sums(specs, K, bits):
    """Partial sums over k = 1..K of sign(k) * prod P_r(k) / (k**m * C(2k, k)).

    ``specs`` is a sequence of ``(alternating, m, parts)`` triples with
    ``parts`` a tuple of power-sum orders.  Returns one fixed-point integer
    (scale ``2**bits``) per spec, accumulated in spec order.
    """
    one = 1 << bits
    orders = sorted({r for _, _, parts in specs for r in parts})
    exponents = sorted({m for _, m, _ in specs})
    psum = {r: 0 for r in orders}
    acc = [0] * len(specs)
    binom = 1
    for k in range(1, K + 1):
        binom = binom * 2 * (2 * k - 1) // k
        denom = {m: k ** m * binom for m in exponents}
        prods = {(): one}
        for idx, (alternating, m, parts) in enumerate(specs):
            num = prods.get(parts)
            if num is None:
                num = one
                for r in parts:
                    num = (num * psum[r]) >> bits
                prods[parts] = num
            t = num // denom[m]
            if alternating and not k & 1:
                acc[idx] -= t
            else:
                acc[idx] += t
        for r in orders:
            psum[r] += one // k ** r
    return acc


def _round_div(a, b):
    # nearest integer to a / b
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


def _detect(y, B, tol):
    """Column of B for the smallest |y_j| below ``tol`` (lowest index wins)."""
    jmin = -1
    ymin = tol
    for j in range(len(y)):
        a = abs(y[j])
        if a < ymin:
            ymin = a
            jmin = j
    if jmin >= 0:
        coeffs = [B[k][jmin] for k in range(len(y))]
        if any(coeffs):
            return coeffs
    return None


def pslq_fixed(x, prec, tol, max_norm, max_iter, exhaust):
    """PSLQ on fixed-point inputs ``x`` (scale ``2**prec``).

    Returns ``(status, coeffs, iterations, best_h)`` where status is one of
    ``"relation"``, ``"bound"``, ``"exhausted"`` or ``"maxiter"``;
    ``best_h`` is the smallest ``max |H_jj|`` seen, so ``2**prec / best_h``
    bounds the norm of any relation from below.
    """
    n = len(x)
    one = 1 << prec
    gamma = isqrt((4 << (2 * prec)) // 3)  # 2/sqrt(3)

    s = [0] * n
    acc = 0
    for k in range(n - 1, -1, -1):
        acc += x[k] * x[k]
        s[k] = isqrt(acc)
    t = s[0]
    y = [(v << prec) // t for v in x]
    s = [(v << prec) // t for v in s]

    A = [[int(i == j) for j in range(n)] for i in range(n)]
    B = [[int(i == j) for j in range(n)] for i in range(n)]
    H = [[0] * (n - 1) for _ in range(n)]
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
                    y[j] += q * y[i]
                    Hi, Hj = H[i], H[j]
                    for k in range(j + 1):
                        Hi[k] -= q * Hj[k]
                    Ai, Aj = A[i], A[j]
                    for k in range(n):
                        Ai[k] -= q * Aj[k]
                    for row in B:
                        row[j] += q * row[i]

    # The initial reduction alone can expose a relation (two-term inputs);
    # iterating past it would divide by the vanished H entry.
    found = _detect(y, B, tol)
    if found is not None:
        return "relation", found, 0, None

    best_h = None
    for it in range(1, max_iter + 1):
        # Exchange step: lowest index among maximal gamma**i * |H_ii|.
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
            a, b = H[m][m], H[m][m + 1]
            t0 = isqrt(a * a + b * b)
            if t0 == 0:
                return "exhausted", None, it, best_h
            t1 = (a << prec) // t0
            t2 = (b << prec) // t0
            for i in range(m, n):
                Hi = H[i]
                t3, t4 = Hi[m], Hi[m + 1]
                Hi[m] = (t1 * t3 + t2 * t4) >> prec
                Hi[m + 1] = (-t2 * t3 + t1 * t4) >> prec

        for i in range(m + 1, n):
            for j in range(min(i - 1, m + 1), -1, -1):
                if H[j][j]:
                    q = _round_div(H[i][j], H[j][j])
                    if q:
                        y[j] += q * y[i]
                        Hi, Hj = H[i], H[j]
                        for k in range(j + 1):
                            Hi[k] -= q * Hj[k]
                        Ai, Aj = A[i], A[j]
                        for k in range(n):
                            Ai[k] -= q * Aj[k]
                        for row in B:
                            row[j] += q * row[i]

        found = _detect(y, B, tol)
        if found is not None:
            return "relation", found, it, best_h

        hmax = 0
        for j in range(n - 1):
            a = abs(H[j][j])
            if a > hmax:
                hmax = a
        if hmax == 0:
            return "exhausted", None, it, best_h
        if best_h is None or hmax < best_h:
            best_h = hmax
        if max_norm * hmax < one:
            return "bound", None, it, best_h

        amax = 0
        for row in A:
            for v in row:
                if v > amax:
                    amax = v
                elif -v > amax:
                    amax = -v
        if amax >= exhaust:
            return "exhausted", None, it, best_h
    return "maxiter", None, max_iter, best_h
