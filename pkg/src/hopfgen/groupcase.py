"""Group algebras of ℤ and ℤ/N: Laurent-monomial generic cocycles and y_m."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import BadIndex, BadParam
from .hopf import Report
from .scalar import Q, RatFunc, as_rational, rank, rf


def z_tvar(m: int) -> str:
    """Flat name for t_m over ℤ: t_0, t_5, t_n2 (= t_{-2})."""
    return f"t_{m}" if m >= 0 else f"t_n{-m}"


def zn_tvar(m: int) -> str:
    return f"t{m}"


@dataclass(frozen=True)
class LaurentMono:
    """coefficient · Π t_m^{e_m}, exponents stored sorted and nonzero."""

    coefficient: Q
    exponents: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, coefficient, exps: Mapping[int, int]) -> "LaurentMono":
        c = as_rational(coefficient)
        if c == 0:
            raise ValueError("LaurentMono coefficient must be nonzero")
        return cls(c, tuple(sorted((m, e) for m, e in exps.items() if e)))

    @classmethod
    def t(cls, m: int) -> "LaurentMono":
        return cls.make(1, {m: 1})

    def as_map(self) -> dict[int, int]:
        return dict(self.exponents)

    def __mul__(self, other: "LaurentMono") -> "LaurentMono":
        e = self.as_map()
        for m, k in other.exponents:
            e[m] = e.get(m, 0) + k
        return LaurentMono.make(self.coefficient * other.coefficient, e)

    def inverse(self) -> "LaurentMono":
        return LaurentMono.make(1 / self.coefficient, {m: -k for m, k in self.exponents})

    def __truediv__(self, other: "LaurentMono") -> "LaurentMono":
        return self * other.inverse()

    def __pow__(self, n: int) -> "LaurentMono":
        return LaurentMono.make(self.coefficient**n, {m: k * n for m, k in self.exponents})

    def is_one(self) -> bool:
        return self.coefficient == 1 and not self.exponents

    def to_ratfunc(self, name: Callable[[int], str] = z_tvar) -> RatFunc:
        out = rf(self.coefficient)
        for m, k in self.exponents:
            out = out * RatFunc.var(name(m)) ** k
        return out

    def __str__(self):
        return str(self.to_ratfunc())


ONE_MONO = LaurentMono.make(1, {})


@dataclass
class GroupModel:
    """kind is "Z" or an integer N >= 1 for ℤ/N."""

    kind: object = "Z"
    cocycle: Callable[[int, int], object] | None = None
    _table: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind != "Z":
            if not isinstance(self.kind, int) or self.kind < 1:
                raise BadParam(f"group order must be a positive integer, got {self.kind!r}")
        if self.cocycle is not None and self.kind != "Z":
            for i in range(self.kind):
                if as_rational(self.cocycle(0, i)) != 1 or as_rational(self.cocycle(i, 0)) != 1:
                    raise BadParam("group cocycle must be normalized")

    @classmethod
    def z(cls) -> "GroupModel":
        return cls("Z")

    @classmethod
    def zn(cls, n: int, cocycle=None) -> "GroupModel":
        return cls(n, cocycle)

    @property
    def is_cyclic(self) -> bool:
        return self.kind != "Z"

    def reduce(self, m: int) -> int:
        return m % self.kind if self.is_cyclic else m

    def alpha(self, g: int, h: int) -> Q:
        if self.cocycle is None:
            return Q(1)
        c = as_rational(self.cocycle(self.reduce(g), self.reduce(h)))
        if c == 0:
            raise BadParam("group cocycle values must be nonzero")
        return c

    def tname(self, m: int) -> str:
        return zn_tvar(self.reduce(m)) if self.is_cyclic else z_tvar(m)

    def t(self, m: int) -> LaurentMono:
        return LaurentMono.t(self.reduce(m))

    def render(self, mono: LaurentMono) -> RatFunc:
        return mono.to_ratfunc(self.tname)


def group_sigma(G: GroupModel, g: int, h: int, inverse: bool = False) -> LaurentMono:
    """σ(x^g, x^h) = α(g,h) t_g t_h / t_{g+h}."""
    s = LaurentMono.make(G.alpha(g, h), {}) * G.t(g) * G.t(h) / G.t(g + h)
    return s.inverse() if inverse else s


def _check_index(G: GroupModel, m: int) -> None:
    if not isinstance(m, int):
        raise BadIndex(f"index must be an integer, got {m!r}")
    if G.is_cyclic and not 0 <= m <= G.kind:
        raise BadIndex(f"y_m over Z/{G.kind} needs 0 <= m <= {G.kind}, got {m}")


def ym(G: GroupModel, m: int) -> LaurentMono:
    """y_m = t_m / t_1^m (for ℤ/N, y_N = t_0 / t_1^N)."""
    _check_index(G, m)
    return G.t(m) / G.t(1) ** m


def ym_via_sigma(G: GroupModel, m: int) -> LaurentMono:
    """y_m as a product of σ^{±1} values, following the case list."""
    _check_index(G, m)
    if m >= 2:
        out = ONE_MONO
        for k in range(m - 1, 0, -1):
            out = out * group_sigma(G, k, 1, inverse=True)
        return out
    if m == 1:
        return ONE_MONO
    if m == 0:
        return group_sigma(G, 0, 0)
    # m <= -1: σ(x^m, x^{-m}) σ(x^{-m-1}, x) ... σ(x, x) σ(x^0, x^0); middle chain empty for m = -1
    out = group_sigma(G, m, -m)
    for k in range(-m - 1, 0, -1):
        out = out * group_sigma(G, k, 1)
    return out * group_sigma(G, 0, 0)


def z_structure_report(M: int, G: GroupModel | None = None) -> Report:
    """σ^{±1} = (y_m y_n / y_{m+n})^{±1} on the window and independence of {y_m}."""
    if M < 2:
        raise BadParam("window must be at least 2")
    G = G or GroupModel.z()
    if G.is_cyclic:
        raise BadParam("z_structure_report is for the group Z")
    rep = Report(f"Z structure on window [-{M}, {M}]")
    for m in range(-M, M + 1):
        for n in range(-M, M + 1):
            want = ym(G, m) * ym(G, n) / ym(G, m + n)
            rep.checked += 2
            if group_sigma(G, m, n) != want:
                rep.fail("sigma rewrite", (m, n), f"{group_sigma(G, m, n)} != {want}")
            if group_sigma(G, m, n, inverse=True) != want.inverse():
                rep.fail("sigma inverse rewrite", (m, n))
    for m in range(-M, M + 1):
        rep.checked += 1
        if ym_via_sigma(G, m) != ym(G, m):
            rep.fail("y_m via sigma", (m,), f"{ym_via_sigma(G, m)} != {ym(G, m)}")
    family = [m for m in range(-M, M + 1) if m != 1]
    cols = list(range(-M, M + 1))
    matrix = [[ym(G, m).as_map().get(c, 0) for c in cols] for m in family]
    r = rank(matrix)
    rep.checked += 1
    if r != len(family):
        rep.fail("independence", tuple(family), f"exponent rank {r} < {len(family)}")
    rep.notes.append(f"exponent matrix rank {r} for {len(family)} elements y_m, m != 1")
    return rep


def exponent_rank(G: GroupModel, indices) -> int:
    monos = [ym(G, m) for m in indices]
    cols = sorted({k for mono in monos for k, _ in mono.exponents})
    return rank([[mono.as_map().get(c, 0) for c in cols] for mono in monos]) if cols else 0


def zn_integral_relation(N: int) -> Report:
    """t_1^N = y_0 / y_N over ℤ/N, plus ym_via_sigma = ym for 0 <= m <= N."""
    if not isinstance(N, int) or N < 2:
        raise BadParam(f"N must be at least 2, got {N!r}")
    G = GroupModel.zn(N)
    rep = Report(f"Z/{N} integral relation")
    lhs = G.render(G.t(1) ** N)
    rhs = G.render(ym(G, 0) / ym(G, N))
    rep.checked += 1
    if lhs != rhs:
        rep.fail("t_1^N = y_0/y_N", (N,), f"{lhs} != {rhs}")
    for m in range(N + 1):
        rep.checked += 1
        if ym_via_sigma(G, m) != ym(G, m):
            rep.fail("y_m via sigma", (m,))
    rep.notes.append(f"t1^{N} - y_0/y_{N} = 0 with y_0/y_{N} = {rhs}")
    return rep
