from __future__ import annotations

from itertools import product

import pytest

from hopfgen.cocycle import Bilinear, builtin_cocycle, load_cocycle, trivial_cocycle
from hopfgen.hopf import HElt, TensorElt, cyclic, load_hopf, sweedler
from hopfgen.scalar import ONE, parse
from hopfgen.twisted import (
    TwElt,
    TwistedAlgebra,
    coaction,
    comodule_coinvariants,
    coinvariants,
    galois_map,
    tensor_product_in,
    tw_mul,
    tw_verify,
)


@pytest.fixture(scope="module")
def A():
    return TwistedAlgebra(sweedler(), builtin_cocycle("sweedler_abc"))


def test_masuoka_relations(A):
    ux, uy = TwElt.basis("x"), TwElt.basis("y")
    assert tw_mul(A, ux, ux) == TwElt({"1": parse("a")})
    assert tw_mul(A, ux, uy) + tw_mul(A, uy, ux) == TwElt({"1": parse("b")})
    assert tw_mul(A, uy, uy) == TwElt({"1": parse("c")})
    for b in A.basis:
        assert tw_mul(A, A.unit, TwElt.basis(b)) == TwElt.basis(b)


def test_verify(A):
    assert tw_verify(A).passed
    C3 = cyclic(3)
    assert tw_verify(TwistedAlgebra(C3, trivial_cocycle(C3))).passed


def test_non_cocycle_gives_associativity_witness():
    C4 = cyclic(4)
    bad = Bilinear({(f"g{i}", f"g{j}"): (2 if i == j == 1 else 1) for i in range(4) for j in range(4)})
    rep = tw_verify(TwistedAlgebra(C4, bad))
    assert not rep.passed and rep.failures[0].axiom == "associativity"


def test_coaction(A):
    assert coaction(A, "x") == TensorElt({("x", "x"): ONE})
    assert coaction(A, "y") == TensorElt({("1", "y"): ONE, ("y", "x"): ONE})
    assert coaction(A, "1") == TensorElt({("1", "1"): ONE})


@pytest.mark.parametrize(
    "H,al",
    [(sweedler(), builtin_cocycle("sweedler_abc"))] + [(cyclic(n), trivial_cocycle(cyclic(n))) for n in (2, 3)],
    ids=["sweedler", "c2", "c3"],
)
def test_coaction_is_algebra_map(H, al):
    A = TwistedAlgebra(H, al)
    for x, y in product(H.basis, repeat=2):
        assert coaction(A, A.basis_product(x, y)) == tensor_product_in(A, coaction(A, x), coaction(A, y))


def test_coinvariants(A):
    assert coinvariants(A) == [TwElt({"1": ONE})]
    for n in (1, 2, 3, 4):
        C = cyclic(n)
        assert coinvariants(TwistedAlgebra(C, trivial_cocycle(C))) == [TwElt({"g0": ONE})]


def test_hopf_algebra_as_comodule_over_itself():
    H = sweedler()
    coact = {b: H.delta(b) for b in H.basis}
    assert comodule_coinvariants(H.basis, coact, H.unit) == [HElt({"1": ONE})]


def test_galois(A, fixtures):
    g = galois_map(A)
    assert g.bijective and g.determinant == parse("a^4")
    C2 = cyclic(2)
    assert galois_map(TwistedAlgebra(C2, trivial_cocycle(C2))).bijective
    H = load_hopf(str(fixtures / "cyclic2.json"))
    bad = load_cocycle(str(fixtures / "degenerate_cyclic2_cocycle.json"), H)
    res = galois_map(TwistedAlgebra(H, bad))
    assert len(res.matrix) == 4 and res.determinant.is_zero() and not res.bijective


def test_specialize(A):
    B = A.specialize({"a": 1, "b": 0, "c": -1})
    assert tw_verify(B).passed
    assert B.basis_product("y", "y") == TwElt({"1": -ONE})


def test_galois_determinant_matches_oracle(A):
    import oracle

    assert oracle.equal(galois_map(A).determinant, oracle.galois_determinant(oracle.alpha_abc()))
