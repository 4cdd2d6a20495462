"""Twisted algebras B ⊗ ^αH with their H-comodule structure."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .hopf import HElt, HopfAlgebra, Report, TensorElt
from .scalar import ZERO, RatFunc, determinant, nullspace


class TwElt(HElt):
    """Element of a twisted algebra in the basis u_b."""

    __slots__ = ()

    def __repr__(self):
        if not self.coeffs:
            return "TwElt(0)"
        from .hopf import format_combination

        return f"TwElt({format_combination({f'u_{k}': v for k, v in self.coeffs.items()})})"


class TwistedAlgebra:
    """u_x u_y = Σ α(x1, y1) u_{x2 y2} on a copy of H."""

    def __init__(self, hopf: HopfAlgebra, alpha, alpha_inv=None, label: str = ""):
        self.hopf = hopf
        self.alpha = alpha
        self.alpha_inv = alpha_inv
        self.label = label
        self._table: dict = {}

    @property
    def basis(self):
        return self.hopf.basis

    @property
    def unit(self) -> TwElt:
        """α(1,1)⁻¹ u_1; equals u_1 when α is normalized."""
        one = self.hopf.unit_label
        return TwElt({one: 1 / self.alpha[(one, one)]})

    def basis_product(self, x: str, y: str) -> TwElt:
        key = (x, y)
        out = self._table.get(key)
        if out is None:
            H = self.hopf
            acc: dict = {}
            for x1, x2, c in H.comult[x]:
                for y1, y2, d in H.comult[y]:
                    a = self.alpha[(x1, y1)]
                    if not a:
                        continue
                    w = c * d * a
                    for k, e in H.mult[(x2, y2)].items():
                        acc[k] = acc.get(k, ZERO) + w * e
            out = self._table[key] = TwElt(acc)
        return out

    def mul(self, u, v) -> TwElt:
        u = TwElt.basis(u) if isinstance(u, str) else u
        v = TwElt.basis(v) if isinstance(v, str) else v
        acc: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = a * b
                for k, c in self.basis_product(i, j).items():
                    acc[k] = acc.get(k, ZERO) + ab * c
        return TwElt(acc)

    def structure_constants(self) -> dict:
        return {(x, y): self.basis_product(x, y) for x, y in product(self.basis, repeat=2)}

    def specialize(self, assignment: Mapping) -> "TwistedAlgebra":
        alpha = self.alpha.substitute(assignment)
        alpha_inv = self.alpha_inv.substitute(assignment) if self.alpha_inv is not None else None
        return TwistedAlgebra(self.hopf, alpha, alpha_inv, label=self.label)


def tw_mul(A: TwistedAlgebra, u, v) -> TwElt:
    return A.mul(u, v)


def tw_verify(A: TwistedAlgebra) -> Report:
    """Associativity on all basis triples and unitality of u_1."""
    rep = Report("twisted algebra axioms")
    B = A.basis
    for x, y, z in product(B, repeat=3):
        rep.checked += 1
        lhs = A.mul(A.basis_product(x, y), TwElt.basis(z))
        rhs = A.mul(TwElt.basis(x), A.basis_product(y, z))
        if lhs != rhs:
            rep.fail("associativity", (x, y, z), f"{lhs} != {rhs}")
    one = A.unit
    for x in B:
        rep.checked += 1
        ux = TwElt.basis(x)
        if A.mul(one, ux) != ux or A.mul(ux, one) != ux:
            rep.fail("unit", (x,))
    return rep


def coaction(A: TwistedAlgebra, u) -> TensorElt:
    """δ = id ⊗ Δ written on u-basis ⊗ H-basis pairs."""
    u = TwElt.basis(u) if isinstance(u, str) else u
    acc: dict = {}
    for b, c in u.items():
        for j, k, d in A.hopf.comult[b]:
            acc[(j, k)] = acc.get((j, k), ZERO) + c * d
    return TensorElt(acc)


def tensor_product_in(A: TwistedAlgebra, s: TensorElt, t: TensorElt) -> TensorElt:
    """Product in A ⊗ H."""
    H = A.hopf
    acc: dict = {}
    for (a1, h1), c in s.terms.items():
        for (a2, h2), d in t.terms.items():
            left = A.basis_product(a1, a2)
            right = H.mult[(h1, h2)]
            for k1, e1 in left.items():
                for k2, e2 in right.items():
                    acc[(k1, k2)] = acc.get((k1, k2), ZERO) + c * d * e1 * e2
    return TensorElt(acc)


def comodule_coinvariants(basis, coact: Mapping[str, TensorElt], unit: HElt) -> list[HElt]:
    """Basis of {v : δ(v) = v ⊗ 1} for a coaction given on basis vectors."""
    basis = list(basis)
    rows_index: dict = {}
    entries: dict = {}
    for col, b in enumerate(basis):
        for key, c in coact[b].terms.items():
            rows_index.setdefault(key, len(rows_index))
            entries[(key, col)] = entries.get((key, col), ZERO) + c
        for k, e in unit.items():
            key = (b, k)
            rows_index.setdefault(key, len(rows_index))
            entries[(key, col)] = entries.get((key, col), ZERO) - e
    matrix = [[ZERO] * len(basis) for _ in rows_index]
    for (key, col), v in entries.items():
        matrix[rows_index[key]][col] = v
    if not matrix:
        return [HElt.basis(b) for b in basis]
    return [HElt(dict(zip(basis, vec))) for vec in nullspace(matrix, len(basis))]


def coinvariants(A: TwistedAlgebra) -> list[TwElt]:
    coact = {b: coaction(A, b) for b in A.basis}
    return [TwElt(v.coeffs) for v in comodule_coinvariants(A.basis, coact, A.hopf.unit)]


@dataclass
class GaloisResult:
    rows: list
    cols: list
    matrix: list
    determinant: RatFunc

    @property
    def bijective(self) -> bool:
        return not self.determinant.is_zero()


def galois_map(A: TwistedAlgebra) -> GaloisResult:
    """Matrix of a ⊗ b -> (a ⊗ 1) δ(b) on u-basis pairs, and its determinant."""
    H = A.hopf
    B = list(A.basis)
    rows = [(i, j) for i in B for j in B]
    cols = [(k, h) for k in B for h in H.basis]
    col_idx = {c: n for n, c in enumerate(cols)}
    # column vectors: image of u_i ⊗ u_j
    matrix = [[ZERO] * len(rows) for _ in cols]
    for r, (i, j) in enumerate(rows):
        for j1, j2, c in H.comult[j]:
            for k, e in A.basis_product(i, j1).items():
                idx = col_idx[(k, j2)]
                matrix[idx][r] = matrix[idx][r] + c * e
    return GaloisResult(rows, cols, matrix, determinant(matrix))
