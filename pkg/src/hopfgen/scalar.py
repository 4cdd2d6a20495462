"""Exact scalars: rationals, multivariate polynomials, rational functions.

``RatFunc`` is the workhorse.  Every value is kept in a canonical form
(reduced, denominator monic in graded-lex order, only occurring variables
kept), so equality of field elements is equality of representations.

Monomials are packed into Python ints; see ``_kernels`` for the layout.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from ._kernels import (
    poly_add,
    poly_div_exact,
    poly_mul,
    poly_mul_term,
    poly_scale,
    poly_sub,
)
from .errors import (
    DenominatorVanishes,
    DivisionByZero,
    ExprSyntaxError,
    SingularSystem,
    UnknownVariable,
)

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 ships with the environment
    Q = Fraction

RationalLike = (int, Fraction, type(Q(0)))

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1

_T_SUFFIX = re.compile(r"_?(n?)(\d+)")


def var_key(name: str):
    """Sort key fixing the global variable order.

    Parameters (anything not named ``t...``) come first, alphabetically;
    then t-variables, integer-indexed ones (``t0``, ``t_5``, ``t_n2`` for
    index -2) by index before letter-indexed ones (``tx``, ``ty``).
    """
    if len(name) > 1 and name[0] == "t":
        m = _T_SUFFIX.fullmatch(name[1:])
        if m:
            idx = int(m.group(2))
            return (1, 0, -idx if m.group(1) else idx, name)
        return (1, 1, 0, name)
    return (0, 0, 0, name)


def as_rational(c):
    if isinstance(c, bool):
        c = int(c)
    return Q(c)


class Packing:
    """Monomial packing for a fixed number of variables."""

    __slots__ = ("n", "shifts", "deg_shift", "deg_unit", "guard", "units")

    def __init__(self, n: int, graded: bool = True):
        self.n = n
        self.shifts = tuple(FIELD_BITS * (n - 1 - i) for i in range(n))
        self.deg_shift = FIELD_BITS * n
        self.deg_unit = (1 << self.deg_shift) if graded else 0
        top = 1 << (FIELD_BITS - 1)
        self.guard = sum(top << (FIELD_BITS * f) for f in range(n + 1))
        self.units = tuple((1 << s) + self.deg_unit for s in self.shifts)

    def pack(self, exps: Sequence[int]) -> int:
        key = 0
        deg = 0
        for e, s in zip(exps, self.shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise OverflowError(f"exponent {e} out of range")
            key |= e << s
            deg += e
        return key | (deg << self.deg_shift) if self.deg_unit else key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> s) & FIELD_MASK for s in self.shifts)

    def exponent(self, key: int, i: int) -> int:
        return (key >> self.shifts[i]) & FIELD_MASK


@lru_cache(maxsize=None)
def packing(n: int, graded: bool = True) -> Packing:
    return Packing(n, graded)


def _repack(terms: dict, src: tuple, dst: tuple) -> dict:
    if src == dst:
        return terms
    ps, pd = packing(len(src)), packing(len(dst))
    pos = {v: i for i, v in enumerate(dst)}
    dst_shifts = [pd.shifts[pos[v]] for v in src]
    out = {}
    for k, c in terms.items():
        nk = 0
        deg = 0
        for s_old, s_new in zip(ps.shifts, dst_shifts):
            e = (k >> s_old) & FIELD_MASK
            nk |= e << s_new
            deg += e
        out[nk | (deg << pd.deg_shift)] = c
    return out


def _union_vars(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=var_key))


def _used_mask(*polys: dict) -> int:
    acc = 0
    for p in polys:
        for k in p:
            acc |= k
    return acc


# ---------------------------------------------------------------------------
# gcd over Q[v1..vn] on packed dicts

_ONE_KEY = 0


def _monic(a: dict) -> dict:
    c = a[max(a)]
    if c == 1:
        return a
    return poly_scale(a, 1 / c)


def _min_monomial(a: dict, pk: Packing) -> int:
    mins = None
    for k in a:
        ex = pk.unpack(k)
        if mins is None:
            mins = list(ex)
        else:
            for i, e in enumerate(ex):
                if e < mins[i]:
                    mins[i] = e
        if not any(mins):
            return 0
    return pk.pack(mins)


def _meet(m1: int, m2: int, pk: Packing) -> int:
    e1, e2 = pk.unpack(m1), pk.unpack(m2)
    return pk.pack([min(x, y) for x, y in zip(e1, e2)])


def _occurring(a: dict, pk: Packing) -> set:
    acc = _used_mask(a)
    return {i for i, s in enumerate(pk.shifts) if (acc >> s) & FIELD_MASK}


def _degree_in(a: dict, i: int, pk: Packing) -> int:
    s = pk.shifts[i]
    return max((k >> s) & FIELD_MASK for k in a)


def _coeffs_in(a: dict, i: int, pk: Packing) -> dict:
    """Split ``a`` as a polynomial in variable i: power -> coefficient dict."""
    s = pk.shifts[i]
    unit = pk.units[i]
    out: dict = {}
    for k, c in a.items():
        e = (k >> s) & FIELD_MASK
        out.setdefault(e, {})[k - e * unit] = c
    return out


def _lead_coeff_in(a: dict, i: int, pk: Packing) -> tuple[int, dict]:
    s = pk.shifts[i]
    unit = pk.units[i]
    d = _degree_in(a, i, pk)
    return d, {k - d * unit: c for k, c in a.items() if (k >> s) & FIELD_MASK == d}


def _content_in(a: dict, i: int, pk: Packing) -> dict:
    g = None
    for c in _coeffs_in(a, i, pk).values():
        g = _monic(c) if g is None else _gcd(g, c, pk)
        if len(g) == 1 and _ONE_KEY in g:
            break
    return g


def _prem(f: dict, g: dict, i: int, pk: Packing) -> dict:
    dg, lcg = _lead_coeff_in(g, i, pk)
    unit = pk.units[i]
    r = f
    while r:
        dr, lcr = _lead_coeff_in(r, i, pk)
        if dr < dg:
            break
        r = poly_sub(poly_mul(lcg, r), poly_mul(poly_mul_term(lcr, (dr - dg) * unit, 1), g))
    return r


def _primitive_in(a: dict, i: int, pk: Packing) -> dict:
    c = _content_in(a, i, pk)
    if len(c) == 1 and _ONE_KEY in c:
        return _monic(a)
    return _monic(poly_div_exact(a, c, pk.guard))


def _gcd(a: dict, b: dict, pk: Packing) -> dict:
    """Monic gcd of two polynomials sharing the packing ``pk``."""
    if not a:
        return _monic(b) if b else {}
    if not b:
        return _monic(a)
    if len(a) == 1 or len(b) == 1:
        return {_meet(_min_monomial(a, pk), _min_monomial(b, pk), pk): Q(1)}
    ma, mb = _min_monomial(a, pk), _min_monomial(b, pk)
    m = _meet(ma, mb, pk)
    if ma:
        a = {k - ma: c for k, c in a.items()}
    if mb:
        b = {k - mb: c for k, c in b.items()}
    g = _gcd_primitive_monomials(a, b, pk)
    return poly_mul_term(g, m, 1) if m else g


def _gcd_primitive_monomials(a: dict, b: dict, pk: Packing) -> dict:
    if len(a) == 1 or len(b) == 1:
        return {_ONE_KEY: Q(1)}
    if len(a) >= len(b):
        if poly_div_exact(a, b, pk.guard) is not None:
            return _monic(b)
    elif poly_div_exact(b, a, pk.guard) is not None:
        return _monic(a)
    occ_a, occ_b = _occurring(a, pk), _occurring(b, pk)
    common = occ_a & occ_b
    if not common:
        return {_ONE_KEY: Q(1)}
    if occ_a - common:
        i = min(occ_a - common)
        return _gcd(_content_in(a, i, pk), b, pk)
    if occ_b - common:
        i = min(occ_b - common)
        return _gcd(a, _content_in(b, i, pk), pk)
    i = min(common, key=lambda j: (max(_degree_in(a, j, pk), _degree_in(b, j, pk)), j))
    ca, cb = _content_in(a, i, pk), _content_in(b, i, pk)
    c = _gcd(ca, cb, pk)
    f = poly_div_exact(a, ca, pk.guard)
    g = poly_div_exact(b, cb, pk.guard)
    if _degree_in(f, i, pk) < _degree_in(g, i, pk):
        f, g = g, f
    while True:
        r = _prem(f, g, i, pk)
        if not r:
            break
        if _degree_in(r, i, pk) == 0:
            g = {_ONE_KEY: Q(1)}
            break
        f, g = g, _primitive_in(r, i, pk)
    g = _primitive_in(g, i, pk) if len(g) > 1 else {_ONE_KEY: Q(1)}
    return _monic(poly_mul(c, g))


# ---------------------------------------------------------------------------


class MultiPoly:
    """Polynomial with rational coefficients over an ordered variable list."""

    __slots__ = ("vars", "_t")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping | None = None):
        variables = tuple(variables)
        order = tuple(sorted(variables, key=var_key))
        if len(set(order)) != len(order):
            raise ValueError("repeated variable")
        pk = packing(len(order))
        pos = [order.index(v) for v in variables]
        t: dict = {}
        for exps, c in (terms or {}).items():
            c = as_rational(c)
            if not c:
                continue
            if len(exps) != len(variables):
                raise ValueError("exponent tuple length does not match variables")
            ex = [0] * len(order)
            for p, e in zip(pos, exps):
                ex[p] = e
            k = pk.pack(ex)
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        self.vars = order
        self._t = t

    @classmethod
    def _raw(cls, variables: tuple, t: dict) -> "MultiPoly":
        p = object.__new__(cls)
        p.vars = variables
        p._t = t
        return p

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): 1})

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls((), {(): c})

    @property
    def terms(self) -> dict:
        pk = packing(len(self.vars))
        return {pk.unpack(k): c for k, c in self._t.items()}

    def is_zero(self) -> bool:
        return not self._t

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return max(self._t) >> packing(len(self.vars)).deg_shift

    def leading_term(self):
        k = max(self._t)
        return packing(len(self.vars)).unpack(k), self._t[k]

    def _lift(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        u = _union_vars(self.vars, other.vars)
        return u, _repack(self._t, self.vars, u), _repack(other._t, other.vars, u)

    def __add__(self, other):
        u, a, b = self._lift(other)
        return MultiPoly._raw(u, poly_add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        u, a, b = self._lift(other)
        return MultiPoly._raw(u, poly_sub(a, b))

    def __rsub__(self, other):
        u, a, b = self._lift(other)
        return MultiPoly._raw(u, poly_sub(b, a))

    def __neg__(self):
        return MultiPoly._raw(self.vars, poly_scale(self._t, -1))

    def __mul__(self, other):
        u, a, b = self._lift(other)
        return MultiPoly._raw(u, poly_mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        r = MultiPoly.const(1)
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, RationalLike):
                other = MultiPoly.const(other)
            else:
                return NotImplemented
        u, a, b = self._lift(other)
        return a == b

    def __hash__(self):
        return hash(RatFunc.from_poly(self))

    def gcd(self, other: "MultiPoly") -> "MultiPoly":
        u, a, b = self._lift(other)
        return MultiPoly._raw(u, _gcd(a, b, packing(len(u))))

    def __repr__(self):
        return f"MultiPoly({_render_poly(self.vars, self._t)!r})"

    def __str__(self):
        return _render_poly(self.vars, self._t)


class RatFunc:
    """Canonical element of Q(v1, ..., vn)."""

    __slots__ = ("vars", "_n", "_d", "_hash")

    def __init__(self, value=0):
        if isinstance(value, RatFunc):
            self.vars, self._n, self._d = value.vars, value._n, value._d
        else:
            c = as_rational(value)
            self.vars = ()
            self._n = {0: c} if c else {}
            self._d = {0: Q(1)}
        self._hash = None

    @classmethod
    def _raw(cls, variables, n, d) -> "RatFunc":
        f = object.__new__(cls)
        f.vars = variables
        f._n = n
        f._d = d
        f._hash = None
        return f

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        return cls._raw((name,), {packing(1).pack((1,)): Q(1)}, {0: Q(1)})

    @classmethod
    def from_poly(cls, num: MultiPoly, den: MultiPoly | None = None) -> "RatFunc":
        if den is None:
            den = MultiPoly.const(1)
        u = _union_vars(num.vars, den.vars)
        return _normalize(u, _repack(num._t, num.vars, u), _repack(den._t, den.vars, u))

    @property
    def num(self) -> MultiPoly:
        return MultiPoly._raw(self.vars, self._n)

    @property
    def den(self) -> MultiPoly:
        return MultiPoly._raw(self.vars, self._d)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._n

    def __bool__(self):
        return bool(self._n)

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self):
        if self.vars:
            raise ValueError(f"{self} is not a constant")
        return self._n.get(0, Q(0)) / self._d[0]

    def is_polynomial(self) -> bool:
        return self._d == {0: 1}

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, RationalLike):
                other = RatFunc(other)
            else:
                return None
        u = _union_vars(self.vars, other.vars)
        return (
            u,
            _repack(self._n, self.vars, u),
            _repack(self._d, self.vars, u),
            _repack(other._n, other.vars, u),
            _repack(other._d, other.vars, u),
        )

    def __add__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        u, n1, d1, n2, d2 = lifted
        if not n1:
            return _strip(u, n2, d2)
        if not n2:
            return _strip(u, n1, d1)
        if not u:
            return RatFunc(n1.get(0, 0) / d1[0] + n2.get(0, 0) / d2[0])
        pk = packing(len(u))
        if d1 == d2:
            return _normalize(u, poly_add(n1, n2), d1)
        g = _gcd(d1, d2, pk)
        if len(g) == 1 and 0 in g:
            return _normalize(u, poly_add(poly_mul(n1, d2), poly_mul(n2, d1)), poly_mul(d1, d2), reduce=False)
        e1 = poly_div_exact(d1, g, pk.guard)
        e2 = poly_div_exact(d2, g, pk.guard)
        return _normalize(u, poly_add(poly_mul(n1, e2), poly_mul(n2, e1)), poly_mul(d1, e2))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.vars, poly_scale(self._n, -1), self._d)

    def __sub__(self, other):
        if not isinstance(other, (RatFunc,) + RationalLike):
            return NotImplemented
        return self + (-RatFunc(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        u, n1, d1, n2, d2 = lifted
        if not n1 or not n2:
            return RatFunc(0)
        if not u:
            return RatFunc(n1[0] * n2[0] / (d1[0] * d2[0]))
        pk = packing(len(u))
        g1 = _gcd(n1, d2, pk)
        g2 = _gcd(n2, d1, pk)
        if not (len(g1) == 1 and 0 in g1):
            n1 = poly_div_exact(n1, g1, pk.guard)
            d2 = poly_div_exact(d2, g1, pk.guard)
        if not (len(g2) == 1 and 0 in g2):
            n2 = poly_div_exact(n2, g2, pk.guard)
            d1 = poly_div_exact(d1, g2, pk.guard)
        return _normalize(u, poly_mul(n1, n2), poly_mul(d1, d2), reduce=False)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self._n:
            raise DivisionByZero("inverse of zero")
        return _normalize(self.vars, self._d, self._n, reduce=False)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            if not isinstance(other, RationalLike):
                return NotImplemented
            other = RatFunc(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return RatFunc(1)
        n, d = MultiPoly._raw(self.vars, self._n), MultiPoly._raw(self.vars, self._d)
        return RatFunc._raw(self.vars, (n**e)._t, (d**e)._t) if self.vars else RatFunc(self.constant_value() ** e)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, RationalLike):
                return not self.vars and self.constant_value() == other
            return NotImplemented
        return self.vars == other.vars and self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._n.items()), frozenset(self._d.items())))
        return self._hash

    def sort_key(self):
        return str(self)

    # -- misc -------------------------------------------------------------
    def substitute(self, assignment: Mapping) -> "RatFunc":
        return rf_substitute(self, assignment)

    def degree_in(self, name: str) -> tuple[int, int]:
        """Degrees of numerator and denominator in one variable."""
        if name not in self.vars:
            return 0, 0
        i = self.vars.index(name)
        pk = packing(len(self.vars))
        return _degree_in(self._n, i, pk) if self._n else 0, _degree_in(self._d, i, pk)

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def __str__(self):
        return render(self)


def _strip(u: tuple, n: dict, d: dict) -> RatFunc:
    """Drop variables that occur in neither numerator nor denominator."""
    if not n:
        return RatFunc(0)
    pk = packing(len(u))
    acc = _used_mask(n, d)
    keep = tuple(v for v, s in zip(u, pk.shifts) if (acc >> s) & FIELD_MASK)
    if keep != u:
        n = _repack_subset(n, u, keep)
        d = _repack_subset(d, u, keep)
    return RatFunc._raw(keep, n, d)


def _repack_subset(t: dict, src: tuple, dst: tuple) -> dict:
    ps, pd = packing(len(src)), packing(len(dst))
    pairs = [(ps.shifts[src.index(v)], pd.shifts[i]) for i, v in enumerate(dst)]
    out = {}
    for k, c in t.items():
        nk = 0
        deg = 0
        for so, sn in pairs:
            e = (k >> so) & FIELD_MASK
            nk |= e << sn
            deg += e
        out[nk | (deg << pd.deg_shift)] = c
    return out


def _normalize(u: tuple, n: dict, d: dict, reduce: bool = True) -> RatFunc:
    if not d:
        raise DivisionByZero("zero denominator")
    if not n:
        return RatFunc(0)
    if not u:
        return RatFunc(n[0] / d[0])
    pk = packing(len(u))
    if reduce and not (len(d) == 1 and 0 in d):
        g = _gcd(n, d, pk)
        if not (len(g) == 1 and 0 in g):
            n = poly_div_exact(n, g, pk.guard)
            d = poly_div_exact(d, g, pk.guard)
    lc = d[max(d)]
    if lc != 1:
        inv = 1 / lc
        n = poly_scale(n, inv)
        d = poly_scale(d, inv)
    return _strip(u, n, d)


ZERO = RatFunc(0)
ONE = RatFunc(1)


def rf(value) -> RatFunc:
    """Coerce ints, rationals, variable names or expression text to RatFunc."""
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, str):
        return parse(value)
    return RatFunc(value)


def rf_arith(op: str, f, g=None) -> RatFunc:
    f = rf(f)
    if op == "neg":
        return -f
    if op == "inv":
        return f.inverse()
    if op == "pow":
        return f ** int(g)
    g = rf(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        if g.is_zero():
            raise DivisionByZero("division by zero")
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def _eval_poly(vars_: tuple, t: dict, values: Sequence) -> RatFunc:
    pk = packing(len(vars_))
    powers: list[dict] = [{} for _ in vars_]
    total = ZERO
    for k, c in sorted(t.items(), reverse=True):
        term = RatFunc(c)
        for i, e in enumerate(pk.unpack(k)):
            if e:
                p = powers[i].get(e)
                if p is None:
                    p = powers[i][e] = values[i] ** e
                term = term * p
        total = total + term
    return total


def rf_substitute(f: RatFunc, assignment: Mapping) -> RatFunc:
    """Image of ``f`` under the evaluation homomorphism ``assignment``.

    Unassigned variables are left alone.  Raises DenominatorVanishes when
    the denominator maps to zero.
    """
    f = rf(f)
    assignment = {k: rf(v) for k, v in assignment.items() if k in f.vars}
    if not assignment:
        return f
    if all(v.is_constant() for v in assignment.values()):
        return _subst_constants(f, {k: v.constant_value() for k, v in assignment.items()})
    values = [assignment[v] if v in assignment else RatFunc.var(v) for v in f.vars]
    den = _eval_poly(f.vars, f._d, values)
    if den.is_zero():
        raise DenominatorVanishes(f"denominator of {f} vanishes")
    return _eval_poly(f.vars, f._n, values) / den


def _subst_constants(f: RatFunc, values: Mapping) -> RatFunc:
    src = f.vars
    keep = tuple(v for v in src if v not in values)
    ps, pd = packing(len(src)), packing(len(keep))
    fixed = [(ps.shifts[i], values[v]) for i, v in enumerate(src) if v in values]
    moved = [(ps.shifts[src.index(v)], pd.shifts[i]) for i, v in enumerate(keep)]

    def ev(t):
        out: dict = {}
        for k, c in t.items():
            for s, val in fixed:
                e = (k >> s) & FIELD_MASK
                if e:
                    c = c * val**e
                    if not c:
                        break
            if not c:
                continue
            nk = 0
            deg = 0
            for so, sn in moved:
                e = (k >> so) & FIELD_MASK
                nk |= e << sn
                deg += e
            nk |= deg << pd.deg_shift
            v = out.get(nk, 0) + c
            if v:
                out[nk] = v
            else:
                out.pop(nk, None)
        return out

    d = ev(f._d)
    if not d:
        raise DenominatorVanishes(f"denominator of {f} vanishes")
    return _normalize(keep, ev(f._n), d)


# ---------------------------------------------------------------------------
# text rendering and parsing


def _render_coeff_term(c, mono: str) -> str:
    """Render ``c * mono`` with c > 0 (sign handled by caller)."""
    if not mono:
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if c == 1:
        return mono
    if c.denominator == 1:
        return f"{c.numerator}*{mono}"
    return f"{c.numerator}/{c.denominator}*{mono}"


def _render_poly(vars_: tuple, t: dict) -> str:
    if not t:
        return "0"
    pk = packing(len(vars_))
    parts = []
    for k in sorted(t, reverse=True):
        c = t[k]
        factors = []
        for v, e in zip(vars_, pk.unpack(k)):
            if e == 1:
                factors.append(v)
            elif e:
                factors.append(f"{v}^{e}")
        body = _render_coeff_term(abs(c), "*".join(factors))
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def render(f: RatFunc) -> str:
    """Deterministic text form; re-parses to the same canonical value."""
    num = _render_poly(f.vars, f._n)
    if f._d == {0: 1}:
        return num
    den = _render_poly(f.vars, f._d)
    if len(f._n) > 1:
        num = f"({num})"
    if len(f._d) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, variables, constants):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = variables
        self.constants = constants or {}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, self.text, tok[2])

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise DivisionByZero(f"division by zero at position {tok[2]} in {self.text!r}")
                value = value / rhs
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            while self.peek()[0] == "op" and self.peek()[1] in "+-":
                if self.take()[1] == "-":
                    sign = -sign
            tok = self.peek()
            if tok[0] == "int":
                self.take()
                e = tok[1]
            elif tok[0] == "op" and tok[1] == "(":
                self.take()
                inner = self.expr()
                self.expect(")")
                if not inner.is_constant() or inner.constant_value().denominator != 1:
                    self.error("exponent must be an integer", tok)
                e = int(inner.constant_value())
            else:
                self.error("expected integer exponent")
            e *= sign
            if e < 0 and base.is_zero():
                raise DivisionByZero(f"zero to a negative power in {self.text!r}")
            return base**e
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return RatFunc(val)
        if kind == "name":
            if val in self.constants:
                return rf(self.constants[val])
            if self.variables is not None and val not in self.variables:
                raise UnknownVariable(f"unknown variable {val!r} at position {tok[2]} in {self.text!r}")
            return RatFunc.var(val)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect(")")
            return value
        self.error("unexpected token", tok)


def parse(text: str, variables: Iterable[str] | None = None, constants: Mapping | None = None) -> RatFunc:
    """Parse scalar expression text into a canonical RatFunc.

    ``variables`` restricts the accepted names (UnknownVariable otherwise);
    ``constants`` substitutes names by values while parsing.
    """
    allowed = None if variables is None else set(variables)
    return _Parser(text, allowed, constants).parse()


# ---------------------------------------------------------------------------
# exact linear algebra over RatFunc


def _matrix(rows) -> list[list[RatFunc]]:
    return [[rf(x) for x in row] for row in rows]


def _eliminate(m: list[list[RatFunc]], ncols: int):
    """Row-reduce in place; returns pivot columns and the row-swap sign."""
    rows = len(m)
    pivots = []
    sign = 1
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        inv = m[r][c].inverse()
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c] * inv
                row_r = m[r]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return pivots, sign


def solve_linear(matrix, rhs) -> list[RatFunc]:
    """Unique solution x of ``matrix @ x = rhs`` (square systems)."""
    m = _matrix(matrix)
    n = len(m)
    if any(len(row) != n for row in m) or len(rhs) != n:
        raise ValueError("solve_linear needs a square system")
    aug = [row + [rf(b)] for row, b in zip(m, rhs)]
    pivots, _ = _eliminate(aug, n)
    if len(pivots) < n:
        raise SingularSystem(f"rank {len(pivots)} < {n}")
    return [aug[i][n] / aug[i][i] for i in range(n)]


def determinant(matrix) -> RatFunc:
    m = _matrix(matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    det = ONE
    sign = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        det = det * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[c])]
    return det if sign > 0 else -det


def rank(matrix) -> int:
    m = _matrix(matrix)
    if not m:
        return 0
    pivots, _ = _eliminate(m, len(m[0]))
    return len(pivots)


def nullspace(matrix, ncols: int | None = None) -> list[list[RatFunc]]:
    """Basis of {x : matrix @ x = 0}, one vector per free column."""
    m = _matrix(matrix)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots, _ = _eliminate(m, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [ZERO] * ncols
        vec[fcol] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -(m[r][fcol] / m[r][pc])
        basis.append(vec)
    return basis
