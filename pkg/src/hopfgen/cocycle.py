"""Bilinear maps H x H -> R: cocycle checks, inversion, cohomologous twists."""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Mapping

from .errors import MalformedTable, NotConvInvertible, SingularSystem, UnknownBuiltin
from .hopf import HElt, HopfAlgebra, Report, sweedler
from .linmap import LinMap, conv_inverse
from .scalar import ONE, ZERO, RatFunc, parse, rf, rf_substitute, solve_linear


class Bilinear:
    """Bilinear map on H given by a dense table on basis pairs."""

    __slots__ = ("table",)

    def __init__(self, table: Mapping[tuple, object]):
        self.table = {(str(i), str(j)): rf(v) for (i, j), v in table.items()}

    def __getitem__(self, pair) -> RatFunc:
        return self.table[pair]

    def __call__(self, u, v) -> RatFunc:
        """Value on elements (basis labels or HElts)."""
        if isinstance(u, str) and isinstance(v, str):
            return self.table[(u, v)]
        u = HElt.basis(u) if isinstance(u, str) else u
        v = HElt.basis(v) if isinstance(v, str) else v
        total = ZERO
        for i, a in u.items():
            for j, b in v.items():
                val = self.table[(i, j)]
                if val:
                    total = total + a * b * val
        return total

    def __eq__(self, other):
        if not isinstance(other, Bilinear):
            return NotImplemented
        return self.table == other.table

    def __repr__(self):
        return "Bilinear({" + ", ".join(f"{i},{j}: {v}" for (i, j), v in self.table.items()) + "})"

    def check_total(self, H: HopfAlgebra) -> None:
        missing = [p for p in product(H.basis, repeat=2) if p not in self.table]
        if missing:
            raise MalformedTable(f"bilinear map undefined on {missing[:3]}...")

    def map(self, fn) -> "Bilinear":
        return Bilinear({k: fn(v) for k, v in self.table.items()})

    def substitute(self, assignment) -> "Bilinear":
        return self.map(lambda v: rf_substitute(v, assignment))


def _products(H: HopfAlgebra):
    cache = getattr(H, "_basis_products", None)
    if cache is None:
        cache = {(i, j): H.mul(i, j) for i, j in product(H.basis, repeat=2)}
        H._basis_products = cache
    return cache


def cocycle_sides(H: HopfAlgebra, alpha: Bilinear, x: str, y: str, z: str) -> tuple[RatFunc, RatFunc]:
    """Both sides of the left 2-cocycle identity at a basis triple."""
    prods = _products(H)
    lhs = ZERO
    for x1, x2, c in H.comult[x]:
        for y1, y2, d in H.comult[y]:
            a = alpha[(x1, y1)]
            if a:
                lhs = lhs + c * d * a * alpha(prods[(x2, y2)], z)
    rhs = ZERO
    for y1, y2, c in H.comult[y]:
        for z1, z2, d in H.comult[z]:
            a = alpha[(y1, z1)]
            if a:
                rhs = rhs + c * d * a * alpha(x, prods[(y2, z2)])
    return lhs, rhs


def cocycle_check(H: HopfAlgebra, alpha: Bilinear) -> Report:
    alpha.check_total(H)
    rep = Report("cocycle condition")
    for x, y, z in product(H.basis, repeat=3):
        rep.checked += 1
        lhs, rhs = cocycle_sides(H, alpha, x, y, z)
        if lhs != rhs:
            rep.fail("cocycle", (x, y, z), f"{lhs} != {rhs}")
    return rep


def normalized_check(H: HopfAlgebra, alpha: Bilinear) -> Report:
    alpha.check_total(H)
    rep = Report("normalization")
    one = H.unit
    for x in H.basis:
        rep.checked += 1
        e = H.counit[x]
        if alpha(x, one) != e or alpha(one, x) != e:
            rep.fail("normalized", (x,), f"α({x},1) = {alpha(x, one)}, α(1,{x}) = {alpha(one, x)}, ε = {e}")
    return rep


def bilinear_convolve(H: HopfAlgebra, f: Bilinear, g: Bilinear) -> Bilinear:
    out = {}
    for x, y in product(H.basis, repeat=2):
        total = ZERO
        for x1, x2, c in H.comult[x]:
            for y1, y2, d in H.comult[y]:
                a = f[(x1, y1)]
                if a:
                    total = total + c * d * a * g[(x2, y2)]
        out[(x, y)] = total
    return Bilinear(out)


def trivial_cocycle(H: HopfAlgebra) -> Bilinear:
    return Bilinear({(x, y): H.counit[x] * H.counit[y] for x, y in product(H.basis, repeat=2)})


def bilinear_conv_inverse(H: HopfAlgebra, alpha: Bilinear) -> Bilinear:
    """Two-sided convolution inverse on H ⊗ H, both sides verified."""
    alpha.check_total(H)
    pairs = list(product(H.basis, repeat=2))
    idx = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    matrix = [[ZERO] * n for _ in range(n)]
    for x, y in pairs:
        row = matrix[idx[(x, y)]]
        for x1, x2, c in H.comult[x]:
            for y1, y2, d in H.comult[y]:
                a = alpha[(x1, y1)]
                if a:
                    col = idx[(x2, y2)]
                    row[col] = row[col] + c * d * a
    rhs = [H.counit[x] * H.counit[y] for x, y in pairs]
    try:
        sol = solve_linear(matrix, rhs)
    except SingularSystem as exc:
        raise NotConvInvertible(f"bilinear map is not convolution invertible: {exc}") from exc
    inv = Bilinear(dict(zip(pairs, sol)))
    unit = trivial_cocycle(H)
    if bilinear_convolve(H, inv, alpha) != unit:
        raise NotConvInvertible("right inverse is not a left inverse")
    return inv


def twist_by_lambda(H: HopfAlgebra, alpha: Bilinear, lam: LinMap, lam_inv: LinMap | None = None) -> Bilinear:
    """The cocycle β(x,y) = Σ λ(x1) λ(y1) α(x2,y2) λ⁻¹(x3 y3)."""
    if lam_inv is None:
        lam_inv = conv_inverse(H, lam)
    prods = _products(H)
    inv_on = {p: lam_inv(v) for p, v in prods.items()}
    out = {}
    for x, y in product(H.basis, repeat=2):
        total = ZERO
        for x1, x2, x3, c in H.sweedler(x, 3):
            lx = lam[x1]
            if not lx:
                continue
            for y1, y2, y3, d in H.sweedler(y, 3):
                a = alpha[(x2, y2)]
                if not a:
                    continue
                li = inv_on[(x3, y3)]
                if li:
                    total = total + c * d * lx * lam[y1] * a * li
        out[(x, y)] = total
    return Bilinear(out)


# ---------------------------------------------------------------------------
# built-in cocycles

def _sweedler_abc_table(a, b, c) -> dict:
    a, b, c = rf(a), rf(b), rf(c)
    t = {}
    for u in "1xyz":
        e = ONE if u in "1x" else ZERO
        t[("1", u)] = e
        t[(u, "1")] = e
    t.update({
        ("x", "x"): a, ("x", "y"): ZERO, ("x", "z"): ZERO,
        ("y", "x"): b, ("y", "y"): c, ("y", "z"): -c,
        ("z", "x"): b, ("z", "y"): c, ("z", "z"): -(a * c),
    })
    return t


@lru_cache(maxsize=None)
def _certified_sweedler_abc() -> Bilinear:
    H = sweedler()
    alpha = Bilinear(_sweedler_abc_table(*(RatFunc.var(p) for p in "abc")))
    for rep in (cocycle_check(H, alpha), normalized_check(H, alpha)):
        if not rep.passed:
            raise AssertionError(f"sweedler_abc table rejected: {rep.summary()}")
    from .twisted import TwistedAlgebra, TwElt

    A = TwistedAlgebra(H, alpha)
    ux, uy = TwElt.basis("x"), TwElt.basis("y")
    a, b, c = (RatFunc.var(p) for p in "abc")
    expected = [
        (A.mul(ux, ux), TwElt({"1": a})),
        (A.mul(ux, uy) + A.mul(uy, ux), TwElt({"1": b})),
        (A.mul(uy, uy), TwElt({"1": c})),
    ]
    for got, want in expected:
        if got != want:
            raise AssertionError(f"sweedler_abc does not give the A_{a,b,c} relations: {got} != {want}")
    return alpha


def builtin_cocycle(name: str, H: HopfAlgebra | None = None, **params) -> Bilinear:
    """``trivial`` (on the given H) or ``sweedler_abc`` (parameters a, b, c).

    Numeric ``a``, ``b``, ``c`` keyword values specialize the parameters.
    """
    key = name.lower()
    if key == "trivial":
        if H is None:
            raise ValueError("trivial cocycle needs a Hopf algebra")
        return trivial_cocycle(H)
    if key in ("sweedler_abc", "abc", "sweedler"):
        alpha = _certified_sweedler_abc()
        assign = {p: params[p] for p in "abc" if params.get(p) is not None}
        return alpha.substitute(assign) if assign else alpha
    raise UnknownBuiltin(f"unknown cocycle {name!r}")


def cocycle_from_dict(H: HopfAlgebra, data: Mapping, assume_normalized: bool = False) -> Bilinear:
    table = {}
    for key, val in data["pairs"].items():
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2:
            raise MalformedTable(f"bad pair key {key!r}")
        for p in parts:
            if p not in H.index:
                raise MalformedTable(f"unknown basis label {p!r}")
        table[tuple(parts)] = parse(val) if isinstance(val, str) else rf(val)
    for x, y in product(H.basis, repeat=2):
        if (x, y) in table:
            continue
        unit = H.unit_label
        if assume_normalized and unit is not None and unit in (x, y):
            table[(x, y)] = H.counit[y if x == unit else x]
        else:
            raise MalformedTable(f"cocycle file misses pair {x},{y}")
    return Bilinear(table)


def cocycle_to_dict(alpha: Bilinear) -> dict:
    return {"pairs": {f"{i},{j}": str(v) for (i, j), v in alpha.table.items()}}


def load_cocycle(spec: str, H: HopfAlgebra, assume_normalized: bool = False, **params) -> Bilinear:
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        with open(path) as fh:
            return cocycle_from_dict(H, json.load(fh), assume_normalized)
    return builtin_cocycle(spec, H, **params)
