"""Pure-Python integer polynomial kernels.

Polynomials are lists of Python ints in ascending order with no trailing
zeros; the zero polynomial is ``[]``.  Every function here has a twin with
the same name and semantics in ``_ckernels.pyx``.
"""
from math import gcd as _igcd


def trim(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n] if n != len(a) else a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return trim(out)


def scale(a, c):
    if not c:
        return []
    return [c * x for x in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def content(a):
    g = 0
    for x in a:
        if x:
            g = _igcd(g, x)
            if g == 1:
                return 1
    return g


def primitive(a):
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [x // g for x in a]


def pseudo_divmod(a, b):
    """Return ``(q, r, k)`` with ``lc(b)**k * a == q*b + r`` and deg r < deg b."""
    if not b:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    db = len(b) - 1
    r = list(a)
    if len(r) - 1 < db:
        return [], trim(r), 0
    lb = b[-1]
    k = len(r) - 1 - db + 1
    q = [0] * (len(r) - db)
    for e in range(len(r) - 1 - db, -1, -1):
        c = r[e + db]
        # multiply everything accumulated so far by lb
        if lb != 1:
            for i in range(e + db + 1):
                r[i] *= lb
            for i in range(e + 1, len(q)):
                q[i] *= lb
        if c:
            q[e] = c
            for i in range(db + 1):
                r[e + i] -= c * b[i]
    return trim(q), trim(r[:db]), k


def divexact(a, b):
    """Exact quotient in Z[t]; raise ArithmeticError when b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    db = len(b) - 1
    if len(a) - 1 < db:
        raise ArithmeticError("not an exact division")
    r = list(a)
    lb = b[-1]
    q = [0] * (len(a) - db)
    for e in range(len(a) - 1 - db, -1, -1):
        c, m = divmod(r[e + db], lb)
        if m:
            raise ArithmeticError("not an exact division")
        if c:
            q[e] = c
            for i in range(db + 1):
                r[e + i] -= c * b[i]
    for x in r[:db]:
        if x:
            raise ArithmeticError("not an exact division")
    return trim(q)


def gcd(a, b):
    """Primitive gcd in Z[t] by the primitive remainder sequence."""
    a = primitive(a)
    b = primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        _, r, _ = pseudo_divmod(a, b)
        a, b = b, primitive(r)
    return a


def evaluate(a, num, den):
    """Return ``den**deg(a) * a(num/den)`` as an exact integer."""
    if not a:
        return 0
    acc = 0
    dpow = 1
    for x in reversed(a):
        acc = acc * num + x * dpow
        dpow *= den
    return acc


def det(m):
    """Fraction-free Bareiss determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m):
    """Rank over Q of an integer matrix (list of rows)."""
    a = [list(row) for row in m if any(row)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                ri = a[i]
                rr = a[r]
                for j in range(c, ncols):
                    ri[j] = ri[j] * p - f * rr[j]
                g = 0
                for x in ri:
                    if x:
                        g = _igcd(g, x)
                if g > 1:
                    a[i] = [x // g for x in ri]
        r += 1
        if r == len(a):
            break
    return r


def row_combine(c, row_a, q, row_b):
    """Entrywise ``c*row_a[i] - q*row_b[i]`` for polynomial rows (c an int)."""
    out = []
    for x, y in zip(row_a, row_b):
        out.append(sub(scale(x, c), mul(q, y)) if y else scale(x, c))
    return out

