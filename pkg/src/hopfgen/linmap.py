"""Linear maps H -> R, convolution, and convolution inversion."""

from __future__ import annotations

from typing import Mapping

from .errors import MalformedTable, NotConvInvertible, OneSidedOnly, SingularSystem
from .hopf import HopfAlgebra
from .scalar import ZERO, RatFunc, rf, solve_linear


class LinMap:
    """Linear map from H, stored by its images of the basis."""

    __slots__ = ("images",)

    def __init__(self, images: Mapping[str, object]):
        self.images = {k: rf(v) for k, v in images.items()}

    def __call__(self, u) -> RatFunc:
        if isinstance(u, str):
            return self.images[u]
        total = ZERO
        for k, c in u.items():
            total = total + c * self.images[k]
        return total

    def __getitem__(self, label: str) -> RatFunc:
        return self.images[label]

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.images == other.images

    def __repr__(self):
        return "LinMap({" + ", ".join(f"{k}: {v}" for k, v in self.images.items()) + "})"

    def check_total(self, H: HopfAlgebra) -> None:
        missing = [b for b in H.basis if b not in self.images]
        if missing:
            raise MalformedTable(f"linear map undefined on {missing}")


def counit_map(H: HopfAlgebra) -> LinMap:
    return LinMap(dict(H.counit))


def t_map(H: HopfAlgebra) -> LinMap:
    """The symbolic map x -> t_x."""
    return LinMap({b: RatFunc.var(H.tvars[b]) for b in H.basis})


def convolve(H: HopfAlgebra, f: LinMap, g: LinMap) -> LinMap:
    """(f * g)(x) = sum f(x1) g(x2) on every basis element."""
    out = {}
    for x in H.basis:
        total = ZERO
        for j, k, c in H.comult[x]:
            total = total + c * f[j] * g[k]
        out[x] = total
    return LinMap(out)


def conv_inverse(H: HopfAlgebra, f: LinMap) -> LinMap:
    """Two-sided convolution inverse of ``f``.

    Solves f * g = η∘ε for g, then checks g * f = η∘ε as well.
    """
    f.check_total(H)
    idx = H.index
    n = H.dim
    matrix = [[ZERO] * n for _ in range(n)]
    for x in H.basis:
        row = matrix[idx[x]]
        for j, k, c in H.comult[x]:
            row[idx[k]] = row[idx[k]] + c * f[j]
    try:
        sol = solve_linear(matrix, [H.counit[x] for x in H.basis])
    except SingularSystem as exc:
        raise NotConvInvertible(f"linear map is not convolution invertible: {exc}") from exc
    g = LinMap(dict(zip(H.basis, sol)))
    if convolve(H, g, f) != counit_map(H):
        raise OneSidedOnly("right convolution inverse is not a left inverse")
    return g
