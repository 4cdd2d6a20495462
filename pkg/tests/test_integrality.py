from __future__ import annotations

from itertools import product

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import oracle
from hopfgen.cocycle import trivial_cocycle
from hopfgen.errors import BadParam, MinimalPolyFails, NotGrouplike, NotSkewPrimitive, NotTorsion
from hopfgen.generic import build_generic
from hopfgen.hopf import HElt, cyclic
from hopfgen.integrality import (
    MonicWitness,
    grouplike_power_witness,
    kappa,
    skew_primitive_witness,
    t_of_product,
)
from hopfgen.scalar import ONE, parse


@pytest.fixture(scope="module")
def C3():
    C = cyclic(3)
    return C, trivial_cocycle(C)


@pytest.fixture(scope="module")
def C4():
    C = cyclic(4)
    return C, trivial_cocycle(C)


def test_lemma_n2_x_y(H4, alpha_abc):
    assert t_of_product(H4, alpha_abc, ["x", "y"]) == parse("tz")
    assert oracle.equal(parse("tz"), oracle.lemma2("x", "y"))


@pytest.mark.parametrize("pair", list(product("1xyz", repeat=2)))
def test_lemma_all_pairs(H4, alpha_abc, pair):
    got = t_of_product(H4, alpha_abc, list(pair))
    assert oracle.equal(got, oracle.lemma2(*pair))
    assert oracle.equal(got, oracle.t_of(oracle.mul({pair[0]: 1}, {pair[1]: 1})))


@pytest.mark.parametrize("triple", [("x", "x", "x"), ("x", "y", "x"), ("y", "x", "z"), ("z", "x", "y"), ("1", "y", "x")])
def test_lemma_triples(H4, alpha_abc, triple):
    got = t_of_product(H4, alpha_abc, list(triple))
    want = oracle.t_of(oracle.mul(oracle.mul({triple[0]: 1}, {triple[1]: 1}), {triple[2]: 1}))
    assert oracle.equal(got, want)


def test_lemma_xxx_is_tx(H4, alpha_abc):
    assert t_of_product(H4, alpha_abc, ["x", "x", "x"]) == parse("tx")


def test_lemma_quadruple(H4, alpha_abc):
    want = oracle.t_of(oracle.mul(oracle.mul(oracle.mul({"x": 1}, {"y": 1}), {"x": 1}), {"x": 1}))
    got = t_of_product(H4, alpha_abc, ["x", "y", "x", "x"])
    assert oracle.equal(got, want) and got == parse("tz")


def test_lemma_linear_in_factors(H4, alpha_abc):
    got = t_of_product(H4, alpha_abc, ["y - z", "x + 2*1"])
    assert oracle.equal(got, oracle.t_of(oracle.mul({"y": 1, "z": -1}, {"x": 1, "1": 2})))


def test_lemma_cyclic_grouplikes(C3):
    C, al = C3
    G = build_generic(C, al)
    for i, j in product(range(3), repeat=2):
        g, h = f"g{i}", f"g{j}"
        assert G.sigma_inv[(g, h)] * G.t[g] * G.t[h] == G.t[f"g{(i + j) % 3}"]
        assert t_of_product(C, al, [g, h]) == G.t[f"g{(i + j) % 3}"]


def test_lemma_bad_length(H4, alpha_abc):
    with pytest.raises(BadParam):
        t_of_product(H4, alpha_abc, [])


def test_grouplike_sweedler_x(H4, alpha_abc):
    w = grouplike_power_witness(H4, alpha_abc, "x", 2)
    assert w.is_monic and w.degree == 2
    assert w.coefficients == [ONE, parse("0"), parse("-tx^2")]
    assert w.evaluate().is_zero()


def test_grouplike_cyclic3(C3):
    C, al = C3
    w = grouplike_power_witness(C, al, "g1", 3)
    G = build_generic(C, al)
    rhs = G.t["g0"] * G.sigma[("g2", "g1")] * G.sigma[("g1", "g1")]
    assert w.coefficients[-1] == -rhs
    assert rhs == parse("t1^3")
    assert w.evaluate().is_zero()


def test_grouplike_unit(H4, alpha_abc, G4):
    w = grouplike_power_witness(H4, alpha_abc, "1", 1)
    assert w.coefficients == [ONE, -G4.sigma[("1", "1")]]


def test_grouplike_errors(H4, alpha_abc, C3):
    with pytest.raises(NotGrouplike):
        grouplike_power_witness(H4, alpha_abc, "y", 2)
    with pytest.raises(NotTorsion):
        grouplike_power_witness(H4, alpha_abc, "x", 3)
    C, al = C3
    with pytest.raises(NotTorsion):
        grouplike_power_witness(C, al, "g1", 2)


def test_kappa_pair(C3):
    C, al = C3
    G = build_generic(C, al)
    assert kappa(C, al, ["g1", "g2"]) == 1 / G.sigma[("g1", "g2")]
    assert kappa(C, al, ["g1", "g2"]) == parse("t0/(t1*t2)")


def test_kappa_cyclic4_triple(C4):
    C, al = C4
    k = kappa(C, al, ["g1", "g1", "g2"])
    assert k == parse("t0/(t1^2*t2)")
    ts = sp.symbols("t0:4")
    assert sp.simplify(ts[0] - sp.sympify(str(k).replace("^", "**"), locals={f"t{i}": ts[i] for i in range(4)}) * ts[1] ** 2 * ts[2]) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kappa_all_units(H4, alpha_abc, n):
    assert kappa(H4, alpha_abc, ["1"] * n) == parse("t1") ** (1 - n)


def test_kappa_sweedler_nontrivial_alpha(H4, alpha_abc):
    assert kappa(H4, alpha_abc, ["x", "x"]) == parse("t1/tx^2")


def test_kappa_errors(H4, alpha_abc):
    with pytest.raises(NotGrouplike):
        kappa(H4, alpha_abc, ["x", "z"])
    with pytest.raises(BadParam):
        kappa(H4, alpha_abc, [])


def _oracle_witness(label):
    """Coefficients (leading first) of the lemma on (label, label) in X = explicit t_label."""
    X = sp.Symbol("X")
    e = sp.Poly(sp.together(oracle.lemma2(label, label, keep=label, X=X)).as_numer_denom()[0], X)
    den = sp.together(oracle.lemma2(label, label, keep=label, X=X)).as_numer_denom()[1]
    coeffs = [sp.cancel(c / den) for c in e.all_coeffs()]
    return [sp.cancel(c / coeffs[0]) for c in coeffs], coeffs[0]


@pytest.mark.parametrize("label,lead", [("y", "a/t1"), ("z", "t1/(a*tx^2)")])
def test_skew_primitive_witness(H4, alpha_abc, label, lead):
    w = skew_primitive_witness(H4, alpha_abc, label, [0, 0])
    assert w.is_monic and w.degree == 2
    assert w.leading == parse(lead)
    assert w.evaluate().is_zero()
    want, want_lead = _oracle_witness(label)
    assert oracle.equal(w.leading, want_lead)
    for ours, theirs in zip(w.coefficients, want):
        assert oracle.equal(ours, theirs)


def test_skew_witness_serializes(H4, alpha_abc):
    d = skew_primitive_witness(H4, alpha_abc, "y", [0, 0]).as_dict()
    assert d["variable"] == "ty" and d["evaluates_to_zero"] and d["degree"] == 2
    assert "[X = ty]" in skew_primitive_witness(H4, alpha_abc, "y", [0, 0]).render()


def test_skew_errors(H4, alpha_abc):
    with pytest.raises(NotSkewPrimitive):
        skew_primitive_witness(H4, alpha_abc, "x", [-1, 0])
    with pytest.raises(MinimalPolyFails):
        skew_primitive_witness(H4, alpha_abc, "y", [0])
    with pytest.raises(MinimalPolyFails):
        skew_primitive_witness(H4, alpha_abc, "y", [1, 0])


def test_monic_witness_evaluate():
    w = MonicWitness("tx", 2, [ONE, parse("0"), parse("-4")])
    assert w.evaluate(2).is_zero() and w.evaluate(-2).is_zero()
    assert not w.evaluate(1).is_zero()


elts = st.sampled_from(["1", "x", "y", "z", "y - z", "x + y", "2*z"])


@settings(max_examples=25)
@given(st.lists(elts, min_size=2, max_size=3))
def test_lemma_property(factors):
    from hopfgen.cocycle import builtin_cocycle
    from hopfgen.hopf import sweedler

    H = sweedler()
    al = builtin_cocycle("sweedler_abc")
    got = t_of_product(H, al, factors, verify=False)
    assert got == t_of_product(H, al, factors, verify=True)
