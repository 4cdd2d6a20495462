"""Sparse polynomial kernels on packed monomials (pure Python).

A polynomial is a dict mapping a packed monomial (int) to a nonzero
coefficient.  Packing puts the total degree in the top field and the
exponent of variable i below it, so integer addition multiplies
monomials and integer comparison is graded-lex comparison.  ``guard`` has
the top bit of every field set and is used for divisibility tests.

``_ckernels.pyx`` implements the same functions; keep them in sync.
"""


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = dict(a)
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


def poly_sub(a, b):
    r = dict(a)
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


def poly_scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def poly_mul_term(a, m, c):
    if not c:
        return {}
    return {k + m: v * c for k, v in a.items()}


def poly_mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        ((m, c),) = b.items()
        return {k + m: v * c for k, v in a.items()}
    r = {}
    get = r.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            v = get(k)
            if v is None:
                r[k] = ca * cb
            else:
                r[k] = v + ca * cb
    return {k: v for k, v in r.items() if v}


def poly_div_exact(a, b, guard):
    """Quotient of ``a`` by ``b`` if the division is exact, else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lb = max(b)
    lc = b[lb]
    rem = dict(a)
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


def poly_reduce(a, divisors, guard):
    """Full multivariate remainder of ``a`` by ``divisors`` (lists of dicts).

    Every divisor must be monic in the packed order used for ``a``.
    """
    leads = [(max(g), g) for g in divisors]
    rem = dict(a)
    out = {}
    while rem:
        k = max(rem)
        c = rem[k]
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
                break
        else:
            out[k] = c
            del rem[k]
    return out
