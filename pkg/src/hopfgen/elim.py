"""Buchberger Gröbner bases over ℚ in lex order and subalgebra relations by elimination."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from ._kernels import poly_mul_term, poly_reduce, poly_scale, poly_sub
from .errors import BadParam, BudgetExceeded
from .scalar import FIELD_MASK, MultiPoly, RatFunc, packing, rf, rf_substitute, var_key

DEFAULT_BUDGET = 20000


class Ideal:
    """Generators in a lex order; ``order`` lists variables from highest to lowest."""

    def __init__(self, generators: Sequence, order: Sequence[str] | None = None):
        gens = [g if isinstance(g, MultiPoly) else _to_poly(g) for g in generators]
        gens = [g for g in gens if not g.is_zero()]
        names = sorted({v for g in gens for v in g.vars}, key=var_key)
        if order is None:
            order = names
        order = tuple(order)
        missing = set(names) - set(order)
        if missing:
            raise BadParam(f"order misses variables {sorted(missing)}")
        self.order = order
        self.generators = gens
        self.pk = packing(len(order), graded=False)

    def pack(self, p: MultiPoly) -> dict:
        pos = [self.order.index(v) for v in p.vars]
        out = {}
        for exps, c in p.terms.items():
            full = [0] * len(self.order)
            for i, e in zip(pos, exps):
                full[i] = e
            out[self.pk.pack(full)] = c
        return out

    def unpack(self, d: dict) -> MultiPoly:
        return MultiPoly(self.order, {self.pk.unpack(k): c for k, c in d.items()})

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]}, order={self.order})"


def _to_poly(g) -> MultiPoly:
    f = rf(g)
    if not f.is_polynomial():
        raise BadParam(f"{f} is not a polynomial")
    return f.num


def _used(p: MultiPoly) -> set:
    return {v for exps in p.terms for v, e in zip(p.vars, exps) if e}


def _trim(p: MultiPoly) -> MultiPoly:
    keep = [i for i, v in enumerate(p.vars) if v in _used(p)]
    return MultiPoly([p.vars[i] for i in keep], {tuple(e[i] for i in keep): c for e, c in p.terms.items()})


def _monic(d: dict) -> dict:
    lc = d[max(d)]
    return d if lc == 1 else poly_scale(d, 1 / lc)


def _lcm(a: int, b: int, pk) -> int:
    out = 0
    for s in pk.shifts:
        out |= max((a >> s) & FIELD_MASK, (b >> s) & FIELD_MASK) << s
    return out


def _divides(a: int, b: int, guard: int) -> bool:
    return ((b | guard) - a) & guard == guard


def _degree(m: int, pk) -> int:
    return sum((m >> s) & FIELD_MASK for s in pk.shifts)


@dataclass
class GroebnerBasis:
    ideal: Ideal
    polys: list[dict]
    reductions: int = 0

    def as_polys(self) -> list[MultiPoly]:
        return [_trim(self.ideal.unpack(p)) for p in self.polys]

    def reduce(self, p) -> MultiPoly:
        d = self.ideal.pack(p if isinstance(p, MultiPoly) else _to_poly(p))
        return _trim(self.ideal.unpack(poly_reduce(d, self.polys, self.ideal.pk.guard)))

    def contains(self, p) -> bool:
        return self.reduce(p).is_zero()

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.as_polys()) + "}"


def groebner(I: Ideal, budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Gröbner basis; raises BudgetExceeded after ``budget`` S-pair reductions."""
    pk = I.pk
    guard = pk.guard
    basis: list[dict] = []
    for g in I.generators:
        d = I.pack(g)
        if d:
            r = poly_reduce(d, basis, guard) if basis else d
            if r:
                basis.append(_monic(r))
    if any(max(g) == 0 for g in basis):
        return GroebnerBasis(I, [{0: basis[0][max(basis[0])] / basis[0][max(basis[0])]}])
    leads = [max(g) for g in basis]
    pairs: list = []
    done: set = set()
    counter = 0

    def push(i, j):
        nonlocal counter
        lcm = _lcm(leads[i], leads[j], pk)
        if lcm == leads[i] + leads[j]:
            done.add((i, j))  # coprime leading monomials
            return
        heapq.heappush(pairs, (_degree(lcm, pk), lcm, counter, i, j))
        counter += 1

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)
    spent = 0
    while pairs:
        _, lcm, _, i, j = heapq.heappop(pairs)
        # chain criterion
        if any(
            k not in (i, j)
            and _divides(leads[k], lcm, guard)
            and (min(i, k), max(i, k)) in done
            and (min(j, k), max(j, k)) in done
            for k in range(len(basis))
        ):
            done.add((i, j))
            continue
        if spent >= budget:
            raise BudgetExceeded(f"Gröbner budget of {budget} pair reductions exhausted")
        spent += 1
        s = poly_sub(
            poly_mul_term(basis[i], lcm - leads[i], 1),
            poly_mul_term(basis[j], lcm - leads[j], 1),
        )
        done.add((i, j))
        r = poly_reduce(s, basis, guard) if s else s
        if not r:
            continue
        r = _monic(r)
        if max(r) == 0:
            return GroebnerBasis(I, [{0: r[0]}], spent)
        basis.append(r)
        leads.append(max(r))
        n = len(basis) - 1
        for k in range(n):
            push(k, n)
    # minimize then interreduce
    keep = []
    for i, lm in enumerate(leads):
        if any(
            j != i and _divides(leads[j], lm, guard) and (leads[j] != lm or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(basis[i])
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        lm = max(g)
        tail = {k: c for k, c in g.items() if k != lm}
        tail = poly_reduce(tail, others, guard) if others and tail else tail
        tail[lm] = g[lm]
        reduced.append(_monic(tail))
    reduced.sort(key=max, reverse=True)
    G = GroebnerBasis(I, reduced, spent)
    for g in I.generators:
        if not G.contains(g):
            raise AssertionError(f"generator {g} does not reduce to zero")
    return G


@dataclass
class RelationResult:
    tags: tuple[str, ...]
    relations: list[MultiPoly]
    definitions: dict
    basis: GroebnerBasis
    flags: list[str] = field(default_factory=list)

    def is_zero_ideal(self) -> bool:
        return not self.relations

    def back_substitute(self, rel: MultiPoly) -> RatFunc:
        f = RatFunc.from_poly(rel)
        return rf_substitute(f, {k: v for k, v in self.definitions.items() if k in rel.vars})

    def verify(self) -> bool:
        return all(self.back_substitute(r).is_zero() for r in self.relations)

    def as_ideal(self) -> Ideal:
        return Ideal(self.relations, order=self.tags)


def subalgebra_relations(
    gens: Sequence,
    tags: Sequence[str],
    inverses: Sequence[str] = (),
    budget: int = DEFAULT_BUDGET,
    aux: str = "w_aux",
) -> RelationResult:
    """Relations among tags T_i = gens[i] by eliminating the t-variables.

    Each tag contributes T·den − num; one auxiliary variable inverts the
    product of denominators. Names in ``inverses`` get an extra tag
    ``<name>inv`` standing for 1/gen.
    """
    gens = [rf(g) for g in gens]
    tags = list(tags)
    if len(gens) != len(tags):
        raise BadParam("need one tag per generator")
    defs = dict(zip(tags, gens))
    for name in inverses:
        if name not in defs:
            raise BadParam(f"unknown tag {name}")
        if defs[name].is_zero():
            raise BadParam(f"cannot invert zero generator {name}")
        defs[name + "inv"] = 1 / defs[name]
        tags.append(name + "inv")
    tvars = sorted({v for g in defs.values() for v in g.vars}, key=var_key)
    clash = set(tvars) & (set(tags) | {aux})
    if clash:
        raise BadParam(f"tag names clash with variables: {sorted(clash)}")
    polys = []
    den_prod = MultiPoly.const(1)
    for tag, f in defs.items():
        polys.append(MultiPoly.var(tag) * f.den - f.num)
        den_prod = den_prod * f.den
    order = list(tvars) + tags
    if den_prod.total_degree() > 0:
        polys.append(MultiPoly.var(aux) * den_prod - MultiPoly.const(1))
        order = [aux] + order
    I = Ideal(polys, order=order)
    G = groebner(I, budget=budget)
    tagset = set(tags)
    rels = [_trim(p) for p in G.as_polys() if _used(p) <= tagset and not p.is_zero()]
    return RelationResult(tuple(tags), rels, defs, G)


def degenerate(a, b, c) -> bool:
    """b² − 4ac = 0 marks the non-simple twisted algebras."""
    a, b, c = rf(a), rf(b), rf(c)
    return (b * b - 4 * a * c).is_zero()


def sweedler_relations(a, b, c, budget: int = DEFAULT_BUDGET) -> RelationResult:
    """Relations among E, R, S, T, U at numeric (a, b, c)."""
    from .cocycle import builtin_cocycle
    from .generic import build_generic, erstu_values, erstu_relation
    from .hopf import sweedler

    vals = [rf(v) for v in (a, b, c)]
    if not all(v.is_constant() for v in vals):
        raise BadParam("a, b, c must be numeric")
    if vals[0].is_zero():
        raise BadParam("a must be nonzero")
    H = sweedler()
    alpha = builtin_cocycle("sweedler_abc", a=vals[0], b=vals[1], c=vals[2])
    G = build_generic(H, alpha, verify=False)
    v = erstu_values(G)
    res = subalgebra_relations([v[k] for k in "ERSTU"], list("ERSTU"), budget=budget)
    if degenerate(*vals):
        res.flags.append("degenerate parameters: b^2 - 4ac = 0")
    P = erstu_relation(*vals, *(RatFunc.var(k) for k in "ERSTU"))
    res.flags.append(f"expected principal generator: {P}")
    return res


def is_principal_multiple(result: RelationResult, p) -> bool:
    """Relations form a single generator equal to p up to a nonzero scalar."""
    p = _to_poly(p)
    if len(result.relations) != 1:
        return False
    r = RatFunc.from_poly(result.relations[0]) / RatFunc.from_poly(p)
    return r.is_constant() and not r.is_zero()
