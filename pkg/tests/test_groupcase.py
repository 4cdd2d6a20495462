from __future__ import annotations

from itertools import product

import pytest
import sympy as sp
from hypothesis import given, strategies as st

import oracle
from hopfgen.cocycle import trivial_cocycle
from hopfgen.errors import BadIndex, BadParam
from hopfgen.generic import build_generic
from hopfgen.groupcase import (
    LaurentMono,
    GroupModel,
    exponent_rank,
    group_sigma,
    ym,
    ym_via_sigma,
    z_structure_report,
    z_tvar,
    zn_integral_relation,
)
from hopfgen.hopf import cyclic
from hopfgen.scalar import parse

Z = GroupModel.z()


def render(G, mono):
    return str(G.render(mono))


def test_tvar_names():
    assert z_tvar(5) == "t_5"
    assert z_tvar(0) == "t_0"
    assert z_tvar(-2) == "t_n2"


def test_sigma_z_example():
    assert group_sigma(Z, 2, 3).to_ratfunc() == parse("t_2*t_3/t_5")


def test_sigma_z3_wraps():
    G = GroupModel.zn(3)
    assert G.render(group_sigma(G, 2, 2)) == parse("t2^2/t1")


@pytest.mark.parametrize("G", [Z, GroupModel.zn(4)])
def test_sigma_unit_is_t0(G):
    assert group_sigma(G, 0, 0) == G.t(0)


def test_ym_examples():
    assert ym(Z, 2) == group_sigma(Z, 1, 1, inverse=True)
    assert ym(Z, 2).to_ratfunc() == parse("t_2/t_1^2")
    assert ym(Z, 1).is_one()
    assert ym(Z, -1).to_ratfunc() == parse("t_n1*t_1")
    assert ym_via_sigma(Z, -1) == group_sigma(Z, -1, 1) * group_sigma(Z, 0, 0)


def test_ym_zn_top_index():
    G = GroupModel.zn(3)
    assert G.render(ym(G, 3)) == parse("t0/t1^3")


@pytest.mark.parametrize("m", range(-7, 8))
def test_ym_via_sigma_z(m):
    assert ym_via_sigma(Z, m) == ym(Z, m)


@pytest.mark.parametrize("N", [2, 3, 5])
def test_ym_via_sigma_zn(N):
    G = GroupModel.zn(N)
    for m in range(N + 1):
        assert ym_via_sigma(G, m) == ym(G, m)


def test_bad_index():
    G = GroupModel.zn(3)
    with pytest.raises(BadIndex):
        ym(G, 4)
    with pytest.raises(BadIndex):
        ym(G, -1)
    with pytest.raises(BadIndex):
        ym(Z, 1.5)


def test_bad_models():
    with pytest.raises(BadParam):
        GroupModel.zn(0)
    with pytest.raises(BadParam):
        GroupModel.zn(2, cocycle=lambda i, j: 2)


def test_sigma_rewrites_through_y():
    s = group_sigma(Z, 2, 3)
    assert s == ym(Z, 2) * ym(Z, 3) / ym(Z, 5)


@pytest.mark.parametrize("M", [2, 5])
def test_structure_report(M):
    rep = z_structure_report(M)
    assert rep.passed, rep.failures
    assert rep.checked == 2 * (2 * M + 1) ** 2 + (2 * M + 1) + 1


def test_structure_report_window_too_small():
    with pytest.raises(BadParam):
        z_structure_report(1)
    with pytest.raises(BadParam):
        z_structure_report(3, GroupModel.zn(3))


def test_exponent_rank():
    assert exponent_rank(Z, [0, 2, 3]) == 3
    # y_1 = 1 contributes nothing
    assert exponent_rank(Z, [1]) == 0


def test_exponent_rank_matches_sympy():
    idx = [m for m in range(-4, 5) if m != 1]
    cols = list(range(-4, 5))
    M = sp.Matrix([[ym(Z, m).as_map().get(c, 0) for c in cols] for m in idx])
    assert M.rank() == exponent_rank(Z, idx) == len(idx)


@pytest.mark.parametrize("N", [2, 3, 5])
def test_zn_integral_relation(N):
    rep = zn_integral_relation(N)
    assert rep.passed, rep.failures
    G = GroupModel.zn(N)
    assert G.render(ym(G, 0) / ym(G, N)) == parse(f"t1^{N}")


def test_zn_integral_relation_bad():
    with pytest.raises(BadParam):
        zn_integral_relation(1)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_agrees_with_generic(N):
    C = cyclic(N)
    G = build_generic(C, trivial_cocycle(C))
    M = GroupModel.zn(N)
    for i, j in product(range(N), repeat=2):
        assert M.render(group_sigma(M, i, j)) == G.sigma[(f"g{i}", f"g{j}")]
        assert M.render(group_sigma(M, i, j, inverse=True)) == G.sigma_inv[(f"g{i}", f"g{j}")]


@pytest.mark.parametrize("N", [2, 3])
def test_agrees_with_oracle(N):
    M = GroupModel.zn(N)
    want = oracle.cyclic_sigma(N)
    for (i, j), v in want.items():
        assert oracle.equal(M.render(group_sigma(M, i, j)), v)


def test_nontrivial_cocycle_enters_as_scalar():
    M = GroupModel.zn(2, cocycle=lambda i, j: -1 if (i, j) == (1, 1) else 1)
    assert M.render(group_sigma(M, 1, 1)) == parse("-t1^2/t0")


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_sigma_times_inverse(g, h):
    assert (group_sigma(Z, g, h) * group_sigma(Z, g, h, inverse=True)).is_one()


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_sigma_cocycle_identity_z(g, h, k):
    lhs = group_sigma(Z, g, h) * group_sigma(Z, g + h, k)
    rhs = group_sigma(Z, h, k) * group_sigma(Z, g, h + k)
    assert lhs == rhs


@given(st.dictionaries(st.integers(-5, 5), st.integers(-4, 4), max_size=4),
       st.dictionaries(st.integers(-5, 5), st.integers(-4, 4), max_size=4))
def test_laurent_group_laws(e1, e2):
    a = LaurentMono.make(2, e1)
    b = LaurentMono.make(-3, e2)
    assert (a * b).to_ratfunc() == a.to_ratfunc() * b.to_ratfunc()
    assert (a / a).is_one()
    assert (a ** 3).to_ratfunc() == a.to_ratfunc() ** 3
