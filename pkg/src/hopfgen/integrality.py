"""t at products, grouplike power relations, κ, and skew-primitive monic witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .cocycle import Bilinear
from .errors import BadParam, MinimalPolyFails, NotGrouplike, NotSkewPrimitive, NotTorsion
from .generic import GenericData, build_generic
from .hopf import HElt, HopfAlgebra, coproduct_shape
from .scalar import ONE, ZERO, RatFunc, rf

MAX_FACTORS = 6

Expansion = dict  # sorted tuple of basis labels (explicit t-factors) -> RatFunc coefficient


def _generic(H: HopfAlgebra, alpha: Bilinear) -> GenericData:
    store = H.__dict__.setdefault("_generic_cache", {})
    hit = store.get(id(alpha))
    if hit is None or hit[0] is not alpha:
        hit = store[id(alpha)] = (alpha, build_generic(H, alpha))
    return hit[1]


def _add(acc: Expansion, key: tuple, c: RatFunc) -> None:
    v = acc.get(key, ZERO) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def lemma_expand(G: GenericData, labels: Sequence[str], _memo: dict | None = None) -> Expansion:
    """Right-hand side of the t-at-a-product lemma on basis labels.

    Peels the last factor: t_{Xy} = Σ σ⁻¹(X1, y1) t_{X2} t_{y2} α(X3, y3),
    where X = x[1]⋯x[n-1] is split componentwise and t_{X2} is expanded
    recursively. Explicit t-factors stay symbolic in the keys.
    """
    memo = {} if _memo is None else _memo
    labels = tuple(labels)
    hit = memo.get(labels)
    if hit is not None:
        return hit
    H = G.hopf
    if len(labels) == 1:
        out = {labels: ONE}
    else:
        head, last = labels[:-1], labels[-1]
        out: Expansion = {}
        legs = [H.sweedler(b, 3) for b in head]
        for choice in product(*legs):
            coeff = ONE
            for leg in choice:
                coeff = coeff * leg[3]
            X1 = H.mul_many([leg[0] for leg in choice])
            X3 = H.mul_many([leg[2] for leg in choice])
            inner = lemma_expand(G, tuple(leg[1] for leg in choice), memo)
            for y1, y2, y3, d in H.sweedler(last, 3):
                s = G.sigma_inv(X1, HElt.basis(y1))
                if not s:
                    continue
                a = G.alpha(X3, HElt.basis(y3))
                if not a:
                    continue
                w = coeff * d * s * a
                for key, c in inner.items():
                    _add(out, tuple(sorted(key + (y2,))), w * c)
    memo[labels] = out
    return out


def expansion_value(G: GenericData, e: Expansion) -> RatFunc:
    total = ZERO
    for key, c in e.items():
        term = c
        for b in key:
            term = term * G.t[b]
        total = total + term
    return total


def _labels_of(H: HopfAlgebra, elts) -> list[list[tuple[str, RatFunc]]]:
    return [list(H.elt(e).items()) for e in elts]


def t_of_product(H: HopfAlgebra, alpha: Bilinear, elts: Sequence, verify: bool = True) -> RatFunc:
    """Product-expansion right-hand side for x[1..n], extended multilinearly; checked against t(x[1]⋯x[n])."""
    if not 1 <= len(elts) <= MAX_FACTORS:
        raise BadParam(f"need 1..{MAX_FACTORS} factors, got {len(elts)}")
    G = _generic(H, alpha)
    memo: dict = {}
    total = ZERO
    for choice in product(*_labels_of(H, elts)):
        c = ONE
        for _, k in choice:
            c = c * k
        total = total + c * expansion_value(G, lemma_expand(G, [b for b, _ in choice], memo))
    if verify:
        direct = G.t(H.mul_many([H.elt(e) for e in elts]))
        if total != direct:
            raise AssertionError(f"lemma fails on {elts}: {total} != {direct}")
    return total


@dataclass
class MonicWitness:
    """X^n + c_1 X^{n-1} + ... + c_n, vanishing at X = variable."""

    variable: str
    degree: int
    coefficients: list[RatFunc]
    leading: RatFunc = ONE
    notes: list[str] = field(default_factory=list)

    def evaluate(self, value=None) -> RatFunc:
        X = RatFunc.var(self.variable) if value is None else rf(value)
        acc = ZERO
        for c in self.coefficients:
            acc = acc * X + c
        return acc

    @property
    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[0] == ONE

    def render(self) -> str:
        parts = []
        n = self.degree
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            p = n - i
            mono = "" if p == 0 else ("X" if p == 1 else f"X^{p}")
            s = str(c)
            if not mono:
                parts.append(s if not parts else f"({s})")
            elif c == ONE:
                parts.append(mono)
            else:
                parts.append(f"({s})*{mono}")
        return " + ".join(parts) + f"  [X = {self.variable}]"

    def as_dict(self) -> dict:
        return {
            "variable": self.variable,
            "degree": self.degree,
            "coefficients": [str(c) for c in self.coefficients],
            "leading_before_normalization": str(self.leading),
            "evaluates_to_zero": self.evaluate().is_zero(),
            "notes": list(self.notes),
        }


def _powers(H: HopfAlgebra, g: str, n: int) -> list[HElt]:
    out = [H.unit]
    for _ in range(n):
        out.append(H.mul(out[-1], g))
    return out


def grouplike_power_witness(H: HopfAlgebra, alpha: Bilinear, g: str, n: int) -> MonicWitness:
    """t_g^n = t_1 Π σ(g^k, g) / Π α(g^k, g), k = 1..n-1."""
    if g not in H.basis or not H.is_grouplike(g):
        raise NotGrouplike(f"{g} is not a grouplike basis element")
    if n < 1:
        raise BadParam("n must be positive")
    pw = _powers(H, g, n)
    if pw[n] != H.unit:
        raise NotTorsion(f"{g}^{n} != 1")
    G = _generic(H, alpha)
    gl = HElt.basis(g)
    num, den = ONE, ONE
    for k in range(1, n):
        num = num * G.sigma(pw[k], gl)
        den = den * alpha(pw[k], gl)
    rhs = G.t[H.unit_label] * num / den
    w = MonicWitness(H.tvars[g], n, [ONE] + [ZERO] * (n - 1) + [-rhs], leading=ONE)
    if not w.evaluate().is_zero():
        raise AssertionError(f"grouplike witness for {g} does not vanish")
    # cross-check against the lemma expansion on (g, ..., g)
    if n >= 2:
        e = lemma_expand(G, [g] * n)
        key = tuple([g] * n)
        if set(e) != {key} or e[key] * rhs != G.t[H.unit_label]:
            raise AssertionError("lemma expansion disagrees with the grouplike witness")
    w.notes.append(f"t_{g}^{n} = t_1 * Π σ(g^k,g) / Π α(g^k,g)")
    return w


def kappa(H: HopfAlgebra, alpha: Bilinear, gs: Sequence[str]) -> RatFunc:
    """κ with t_{g1⋯gn} = κ t_{g1}⋯t_{gn}; identity verified."""
    for g in gs:
        if g not in H.basis or not H.is_grouplike(g):
            raise NotGrouplike(f"{g} is not a grouplike basis element")
    if not gs:
        raise BadParam("need at least one grouplike")
    G = _generic(H, alpha)
    num, den = ONE, ONE
    prefix = HElt.basis(gs[0])
    for g in gs[1:]:
        gl = HElt.basis(g)
        num = num * alpha(prefix, gl)
        den = den * G.sigma(prefix, gl)
        prefix = H.mul(prefix, gl)
    k = num / den
    lhs = G.t(prefix)
    rhs = k
    for g in gs:
        rhs = rhs * G.t[g]
    if lhs != rhs:
        raise AssertionError(f"kappa identity fails: {lhs} != {rhs}")
    return k


def skew_primitive_witness(H: HopfAlgebra, alpha: Bilinear, x: str, minimal_poly: Sequence) -> MonicWitness:
    """Monic polynomial for t_x from x^n + λ1 x^{n-1} + ... + λn = 0.

    ``minimal_poly`` is [λ1, ..., λn]. The relation is checked in H, then t
    is applied and every t_{x^k} is expanded by the lemma, keeping t_x
    symbolic in the explicit factors.
    """
    shape = coproduct_shape(H, x)
    if shape.kind != "skew_primitive":
        raise NotSkewPrimitive(f"{x} has coproduct shape {shape}")
    g, h = shape.g, shape.h
    lams = [rf(c) for c in minimal_poly]
    n = len(lams)
    if n < 1:
        raise BadParam("minimal polynomial must have degree >= 1")
    pw = _powers(H, x, n)
    rel = pw[n]
    for k, lam in enumerate(lams, start=1):
        rel = rel + pw[n - k].scale(lam)
    if not rel.is_zero():
        raise MinimalPolyFails(f"{x}^{n} + ... != 0 in H (remainder {rel})")
    G = _generic(H, alpha)
    memo: dict = {}
    coeffs = [ZERO] * (n + 1)  # coeffs[p] multiplies t_x^p

    def absorb(e: Expansion, scale: RatFunc) -> None:
        for key, c in e.items():
            p = sum(1 for b in key if b == x)
            term = scale * c
            for b in key:
                if b != x:
                    if not H.is_grouplike(b):
                        raise AssertionError(f"non-grouplike factor t_{b} in expansion")
                    term = term * G.t[b]
            coeffs[p] = coeffs[p] + term

    for k in range(n + 1):
        lam = ONE if k == 0 else lams[k - 1]
        if not lam:
            continue
        m = n - k
        e = {(H.unit_label,): ONE} if m == 0 else lemma_expand(G, [x] * m, memo)
        absorb(e, lam)
    lead = coeffs[n]
    expected = ONE
    gl, hl = HElt.basis(g), HElt.basis(h)
    gp, hp = _powers(H, g, n), _powers(H, h, n)
    for k in range(n - 1, 0, -1):
        expected = expected * G.sigma_inv(gp[k], gl)
    for k in range(1, n):
        expected = expected * alpha(hp[k], hl)
    if lead != expected:
        raise AssertionError(f"leading coefficient {lead} != {expected}")
    if not lead:
        raise AssertionError("leading coefficient vanishes")
    w = MonicWitness(H.tvars[x], n, [coeffs[p] / lead for p in range(n, -1, -1)], leading=lead)
    if not w.evaluate().is_zero():
        raise AssertionError(f"witness for {x} does not vanish")
    w.notes.append(f"Δ{x} = {g}⊗{x} + {x}⊗{h}; leading coefficient {lead}")
    return w
