# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; same signatures, same results."""


cpdef dict poly_add(dict a, dict b):
    cdef dict r
    cdef object k, c, v
    if len(a) < len(b):
        a, b = b, a
    r = a.copy()
    for k, c in b.items():
        v = r.get(k)
        if v is None:
            r[k] = c
        else:
            v = v + c
            if v:
                r[k] = v
            else:
                del r[k]
    return r


cpdef dict poly_sub(dict a, dict b):
    cdef dict r = a.copy()
    cdef object k, c, v
    for k, c in b.items():
        v = r.get(k)
        if v is None:
            r[k] = -c
        else:
            v = v - c
            if v:
                r[k] = v
            else:
                del r[k]
    return r


cpdef dict poly_scale(dict a, object c):
    cdef dict r = {}
    cdef object k, v
    if not c:
        return r
    for k, v in a.items():
        r[k] = v * c
    return r


cpdef dict poly_mul_term(dict a, object m, object c):
    cdef dict r = {}
    cdef object k, v
    if not c:
        return r
    for k, v in a.items():
        r[k + m] = v * c
    return r


cpdef dict poly_mul(dict a, dict b):
    cdef dict r = {}
    cdef dict out = {}
    cdef object ka, ca, kb, cb, k, v
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        for kb, cb in b.items():
            return poly_mul_term(a, kb, cb)
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            v = r.get(k)
            if v is None:
                r[k] = ca * cb
            else:
                r[k] = v + ca * cb
    for k, v in r.items():
        if v:
            out[k] = v
    return out


cpdef object poly_div_exact(dict a, dict b, object guard):
    cdef object lb, lc, k, d, c, kb, cb, kk, v
    cdef dict rem, q
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lb = max(b)
    lc = b[lb]
    rem = a.copy()
    q = {}
    while rem:
        k = max(rem)
        if ((k | guard) - lb) & guard != guard:
            return None
        d = k - lb
        c = rem[k] / lc
        q[d] = c
        for kb, cb in b.items():
            kk = kb + d
            v = rem.get(kk)
            if v is None:
                rem[kk] = -c * cb
            else:
                v = v - c * cb
                if v:
                    rem[kk] = v
                else:
                    del rem[kk]
    return q


cpdef dict poly_reduce(dict a, list divisors, object guard):
    cdef list leads = [(max(g), g) for g in divisors]
    cdef dict rem = a.copy()
    cdef dict out = {}
    cdef dict g
    cdef object k, c, lg, d, kg, cg, kk, v
    cdef bint hit
    while rem:
        k = max(rem)
        c = rem[k]
        hit = False
        for lg, g in leads:
            if ((k | guard) - lg) & guard == guard:
                d = k - lg
                for kg, cg in g.items():
                    kk = kg + d
                    v = rem.get(kk)
                    if v is None:
                        rem[kk] = -c * cg
                    else:
                        v = v - c * cg
                        if v:
                            rem[kk] = v
                        else:
                            del rem[kk]
                hit = True
                break
        if not hit:
            out[k] = c
            del rem[k]
    return out
