"""The tensor algebra T(X_H) as H-comodule algebra, coinvariants P, and μ_α."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import BadPartition
from .hopf import HElt, HopfAlgebra, Report, TensorElt
from .linmap import t_map
from .scalar import ONE, ZERO, RatFunc, rf, rf_substitute
from .twisted import TwElt, TwistedAlgebra, coaction

MAX_DEGREE = 6


class NCPoly:
    """Noncommutative polynomial in the X_b: words (tuples of labels) -> RatFunc."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms = {}
        for w, c in (terms or {}).items():
            c = rf(c)
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def X(cls, label: str) -> "NCPoly":
        return cls({(label,): ONE})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({(): ONE})

    @classmethod
    def from_elt(cls, u: HElt) -> "NCPoly":
        """X applied linearly: X_{Σ c_b b} = Σ c_b X_b."""
        return cls({(b,): c for b, c in u.items()})

    def __add__(self, other: "NCPoly") -> "NCPoly":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, ZERO) + c
        return NCPoly(acc)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "NCPoly":
        c = rf(c)
        return NCPoly({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc[w] = acc.get(w, ZERO) + c1 * c2
        return NCPoly(acc)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            word = "*".join(f"X_{b}" for b in w) or "1"
            if c == ONE:
                parts.append(("+", word))
            elif c == -ONE:
                parts.append(("-", word))
            else:
                s = str(c)
                if s.startswith("-") and "+" not in s[1:] and " - " not in s:
                    parts.append(("-", f"{s[1:]}*{word}" if w else s[1:]))
                else:
                    coeff = f"({s})" if (" + " in s or " - " in s) else s
                    parts.append(("+", f"{coeff}*{word}" if w else coeff))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


@dataclass(frozen=True)
class OrderedPartition:
    """Consecutive blocks covering {1, ..., n}, each a tuple of 1-based indices."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = [i for b in self.blocks for i in b]
        if not self.blocks or any(not b for b in self.blocks):
            raise BadPartition("blocks must be nonempty")
        if flat != list(range(1, len(flat) + 1)):
            raise BadPartition(f"blocks {self.blocks} are not consecutive ranges covering 1..{len(flat)}")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def parse(cls, text: str) -> "OrderedPartition":
        """``"1|2"`` gives ({1},{2}); ``"1,2"`` gives ({1,2})."""
        try:
            blocks = tuple(tuple(int(i) for i in blk.split(",")) for blk in text.split("|"))
        except ValueError as exc:
            raise BadPartition(f"cannot parse partition {text!r}") from exc
        return cls(blocks)

    @classmethod
    def from_cuts(cls, n: int, cuts: Iterable[int]) -> "OrderedPartition":
        edges = [0, *sorted(set(cuts)), n]
        return cls(tuple(tuple(range(a + 1, b + 1)) for a, b in zip(edges, edges[1:])))

    @classmethod
    def single(cls, n: int) -> "OrderedPartition":
        return cls((tuple(range(1, n + 1)),))

    @classmethod
    def discrete(cls, n: int) -> "OrderedPartition":
        return cls(tuple((i,) for i in range(1, n + 1)))

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def delta_T(H: HopfAlgebra, p: NCPoly) -> TensorElt:
    """Coaction on T(X_H): keys are (word, h-label)."""
    acc: dict = {}
    for w, c in p.terms.items():
        partial = {((), H.unit_label): c}
        for b in w:
            nxt: dict = {}
            for (word, h), d in partial.items():
                for b1, b2, e in H.comult[b]:
                    for k, m in H.mult[(h, b2)].items():
                        key = (word + (b1,), k)
                        nxt[key] = nxt.get(key, ZERO) + d * e * m
            partial = {k: v for k, v in nxt.items() if v}
        for key, v in partial.items():
            acc[key] = acc.get(key, ZERO) + v
    return TensorElt(acc)


def coinv_check(H: HopfAlgebra, p: NCPoly) -> bool:
    return delta_T(H, p) == TensorElt({(w, H.unit_label): c for w, c in p.terms.items()})


def coinv_P(H: HopfAlgebra, elts: Sequence, I: OrderedPartition, J: OrderedPartition) -> NCPoly:
    """P_{x[1..n]; I, J}, extended multilinearly in the x[i]."""
    elts = [H.elt(e) for e in elts]
    n = len(elts)
    if isinstance(I, str):
        I = OrderedPartition.parse(I)
    if isinstance(J, str):
        J = OrderedPartition.parse(J)
    if I.n != n or J.n != n:
        raise BadPartition(f"partitions must cover 1..{n}")
    if len(I.blocks) + len(J.blocks) > MAX_DEGREE:
        raise BadPartition(f"degree above cap {MAX_DEGREE}")
    # expand each x[i] as Σ c (left, right) over basis coproduct legs
    legs = []
    for u in elts:
        terms = []
        for b, c in u.items():
            for b1, b2, d in H.comult[b]:
                terms.append((b1, b2, c * d))
        legs.append(terms)
    total = NCPoly()
    for choice in product(*legs):
        coeff = ONE
        for _, _, c in choice:
            coeff = coeff * c
        word = NCPoly.one()
        for blk in I.blocks:
            word = word * NCPoly.from_elt(H.mul_many([choice[i - 1][0] for i in blk]))
        for blk in reversed(J.blocks):
            word = word * NCPoly.from_elt(H.S(H.mul_many([choice[i - 1][1] for i in blk])))
        total = total + word.scale(coeff)
    return total


def P1(H: HopfAlgebra, x) -> NCPoly:
    return coinv_P(H, [x], OrderedPartition.single(1), OrderedPartition.single(1))


def P2(H: HopfAlgebra, x, y) -> NCPoly:
    return coinv_P(H, [x, y], OrderedPartition.discrete(2), OrderedPartition.single(2))


class _MuCache:
    def __init__(self, H: HopfAlgebra, alpha):
        self.A = TwistedAlgebra(H, alpha)
        t = t_map(H)
        self.gens = {
            b: TwElt({b2: c * t[b1] for b1, b2, c in _merge(H.comult[b])}) for b in H.basis
        }
        self.words: dict = {(): self.A.unit}

    def word(self, w: tuple) -> TwElt:
        out = self.words.get(w)
        if out is None:
            out = self.words[w] = self.A.mul(self.word(w[:-1]), self.gens[w[-1]])
        return out


def _merge(comult):
    # group by (b1, b2) since coefficients multiply different t's
    acc: dict = {}
    for b1, b2, c in comult:
        acc[(b1, b2)] = acc.get((b1, b2), ZERO) + c
    return [(b1, b2, c) for (b1, b2), c in acc.items() if c]


def _mu_cache(H: HopfAlgebra, alpha) -> _MuCache:
    store = H.__dict__.setdefault("_mu_caches", {})
    key = id(alpha)
    hit = store.get(key)
    if hit is None or hit[0] is not alpha:
        hit = store[key] = (alpha, _MuCache(H, alpha))
    return hit[1]


def mu_alpha(H: HopfAlgebra, alpha, p: NCPoly) -> TwElt:
    """μ_α(X_b) = Σ t_{b1} u_{b2}, extended as an algebra morphism."""
    cache = _mu_cache(H, alpha)
    acc: dict = {}
    for w, c in p.terms.items():
        for k, v in cache.word(w).items():
            acc[k] = acc.get(k, ZERO) + c * v
    return TwElt(acc)


def mu_coinvariant_value(H: HopfAlgebra, alpha, p: NCPoly) -> RatFunc:
    """Coefficient of u_1 in μ_α(p), asserting nothing else survives."""
    img = mu_alpha(H, alpha, p)
    one = H.unit_label
    extra = [b for b in img.coeffs if b != one]
    if extra:
        raise ValueError(f"μ_α image has support outside u_1: {extra}")
    return img.coeffs.get(one, ZERO)


def _words(basis, max_len: int):
    for n in range(max_len + 1):
        yield from product(basis, repeat=n)


def mu_comodule_check(H: HopfAlgebra, alpha, max_degree: int = 2) -> Report:
    """δ∘μ_α = (μ_α⊗id)∘δ on all words of length <= max_degree."""
    rep = Report("μ_α is a comodule map")
    cache = _mu_cache(H, alpha)
    for w in _words(H.basis, max_degree):
        rep.checked += 1
        lhs = coaction(cache.A, cache.word(w))
        acc: dict = {}
        for (word, h), c in delta_T(H, NCPoly({w: ONE})).terms.items():
            for k, v in cache.word(word).items():
                acc[(k, h)] = acc.get((k, h), ZERO) + c * v
        if lhs != TensorElt(acc):
            rep.fail("comodule", w)
    return rep


def specialized_morphism_check(H: HopfAlgebra, alpha, assignment: Mapping, max_degree: int = 3) -> Report:
    """evaluation∘μ_α: T(X_H) -> ^αH is multiplicative and colinear."""
    assignment = {k: rf(v) for k, v in assignment.items()}
    cache = _mu_cache(H, alpha)
    A = cache.A

    def at(u: TwElt) -> TwElt:
        return TwElt({k: rf_substitute(v, assignment) for k, v in u.items()})

    def f(w) -> TwElt:
        return at(cache.word(w))

    rep = Report("specialized μ_α is a comodule algebra morphism")
    rep.checked += 1
    if f(()) != at(A.unit):
        rep.fail("unit", ())
    for n in range(2, max_degree + 1):
        for w in product(H.basis, repeat=n):
            fw = f(w)
            for cut in range(1, n):
                rep.checked += 1
                # parameters in the assignment specialize the product as well
                if at(A.mul(f(w[:cut]), f(w[cut:]))) != fw:
                    rep.fail("multiplicative", (w[:cut], w[cut:]))
    for b in H.basis:
        rep.checked += 1
        lhs = coaction(A, f((b,)))
        lhs = TensorElt({k: rf_substitute(v, assignment) for k, v in lhs.terms.items()})
        acc: dict = {}
        for b1, b2, c in H.comult[b]:
            for k, v in f((b1,)).items():
                acc[(k, b2)] = acc.get((k, b2), ZERO) + c * v
        if lhs != TensorElt(acc):
            rep.fail("colinear", (b,))
    return rep


def format_coaction(t: TensorElt) -> str:
    """Render δ(p) as Σ (word)⊗h, grouping coefficients by h."""
    by_h: dict = {}
    for (w, h), c in t.terms.items():
        by_h.setdefault(h, {})[w] = c
    if not by_h:
        return "0"
    parts = []
    for h in sorted(by_h):
        p = str(NCPoly(by_h[h]))
        parts.append(f"({p})⊗{h}" if len(by_h[h]) > 1 or " " in p else f"{p}⊗{h}")
    return " + ".join(parts)


def _split_top(text: str, seps: str) -> list[tuple[str, str]]:
    """Split at top-level separators, keeping the separator in front of each piece."""
    out, depth, cur, sign = [], 0, [], "+"
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in seps and seps == "+-" and not "".join(cur).strip():
            sign = "-" if (sign == "-") != (ch == "-") else "+"
        elif depth == 0 and ch in seps and prev not in ("", "^", "*", "/", "("):
            out.append((sign, "".join(cur).strip()))
            sign, cur = ch, []
        else:
            cur.append(ch)
        if not ch.isspace():
            prev = ch
    out.append((sign, "".join(cur).strip()))
    return out


def parse_ncpoly(H: HopfAlgebra, text: str) -> NCPoly:
    """``"X_1*X_z + X_y*X_x"``, ``"(a+b)*X_y - 2*X_x*X_x"``; ``X_[label]`` for odd labels."""
    from .scalar import parse

    total = NCPoly()
    for sign, term in _split_top(text, "+-"):
        if not term:
            raise BadPartition(f"empty term in {text!r}")
        word: list[str] = []
        scal: list[str] = []
        for _, factor in _split_top(term, "*"):
            if factor.startswith("X_"):
                lab = factor[2:]
                if lab.startswith("[") and lab.endswith("]"):
                    lab = lab[1:-1]
                if lab not in H.index:
                    raise BadPartition(f"unknown generator {factor!r}")
                word.append(lab)
            else:
                scal.append(f"({factor})")
        c = parse("*".join(scal)) if scal else ONE
        if sign == "-":
            c = -c
        total = total + NCPoly({tuple(word): c})
    return total
