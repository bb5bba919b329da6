# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer polynomial kernels.

Same API and semantics as ``_pykernels``.  Coefficients stay Python ints
(arbitrary precision); the gain comes from typed loop indices and list
access without interpreter dispatch.
"""
from math import gcd as _igcd


cpdef list trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and not a[n - 1]:
        n -= 1
    if n != len(a):
        return a[:n]
    return a


cpdef list add(list a, list b):
    cdef Py_ssize_t i
    cdef list out
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    return trim(out)


cpdef list sub(list a, list b):
    cdef Py_ssize_t i, la = len(a), lb = len(b)
    cdef list out = list(a)
    if lb > la:
        out.extend([0] * (lb - la))
    for i in range(lb):
        out[i] = out[i] - b[i]
    return trim(out)


cpdef list scale(list a, object c):
    if not c:
        return []
    return [c * x for x in a]


cpdef list mul(list a, list b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    cdef list out
    cdef object x
    if la == 0 or lb == 0:
        return []
    out = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if x:
            for j in range(lb):
                out[i + j] = out[i + j] + x * b[j]
    return trim(out)


cpdef object content(list a):
    cdef object g = 0
    for x in a:
        if x:
            g = _igcd(g, x)
            if g == 1:
                return 1
    return g


cpdef list primitive(list a):
    cdef object g
    if not a:
        return []
    g = content(a)
    if a[len(a) - 1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [x // g for x in a]


cpdef tuple pseudo_divmod(list a, list b):
    cdef Py_ssize_t db, e, i, nq, k
    cdef list r, q
    cdef object lb, c
    if not b:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    db = len(b) - 1
    r = list(a)
    if len(r) - 1 < db:
        return [], trim(r), 0
    lb = b[db]
    k = len(r) - db
    nq = len(r) - db
    q = [0] * nq
    for e in range(nq - 1, -1, -1):
        c = r[e + db]
        if lb != 1:
            for i in range(e + db + 1):
                r[i] = r[i] * lb
            for i in range(e + 1, nq):
                q[i] = q[i] * lb
        if c:
            q[e] = c
            for i in range(db + 1):
                r[e + i] = r[e + i] - c * b[i]
    return trim(q), trim(r[:db]), k


cpdef list divexact(list a, list b):
    cdef Py_ssize_t db, e, i, nq
    cdef list r, q
    cdef object lb, c, m
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    db = len(b) - 1
    if len(a) - 1 < db:
        raise ArithmeticError("not an exact division")
    r = list(a)
    lb = b[db]
    nq = len(a) - db
    q = [0] * nq
    for e in range(nq - 1, -1, -1):
        c, m = divmod(r[e + db], lb)
        if m:
            raise ArithmeticError("not an exact division")
        if c:
            q[e] = c
            for i in range(db + 1):
                r[e + i] = r[e + i] - c * b[i]
    for i in range(db):
        if r[i]:
            raise ArithmeticError("not an exact division")
    return trim(q)


cpdef list gcd(list a, list b):
    cdef tuple res
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
        res = pseudo_divmod(a, b)
        a, b = b, primitive(res[1])
    return a


cpdef object evaluate(list a, object num, object den):
    cdef Py_ssize_t i
    cdef object acc = 0, dpow = 1
    if not a:
        return 0
    for i in range(len(a) - 1, -1, -1):
        acc = acc * num + a[i] * dpow
        dpow = dpow * den
    return acc


cpdef object det(list m):
    cdef Py_ssize_t n = len(m), k, i, j
    cdef list a, rowk, rowi
    cdef object akk, aik, prev = 1
    cdef int sign = 1
    cdef bint found
    if n == 0:
        return 1
    a = [list(row) for row in m]
    for k in range(n - 1):
        if not a[k][k]:
            found = False
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    found = True
                    break
            if not found:
                return 0
        rowk = a[k]
        akk = rowk[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


cpdef Py_ssize_t rank(list m):
    cdef list a, ri, rr
    cdef Py_ssize_t ncols, r = 0, c, i, j, piv
    cdef object p, f, g
    a = [list(row) for row in m if any(row)]
    if not a:
        return 0
    ncols = len(a[0])
    for c in range(ncols):
        piv = -1
        for i in range(r, len(a)):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        rr = a[r]
        p = rr[c]
        for i in range(r + 1, len(a)):
            ri = a[i]
            f = ri[c]
            if f:
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


cpdef list row_combine(object c, list row_a, object q, list row_b):
    cdef Py_ssize_t i
    cdef list out = []
    cdef list x, y
    for i in range(len(row_a)):
        x = row_a[i]
        y = row_b[i]
        if y:
            out.append(sub(scale(x, c), mul(q, y)))
        else:
            out.append(scale(x, c))
    return out

