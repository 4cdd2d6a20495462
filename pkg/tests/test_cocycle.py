from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfgen.cocycle import (
    Bilinear,
    bilinear_conv_inverse,
    builtin_cocycle,
    cocycle_check,
    cocycle_to_dict,
    load_cocycle,
    normalized_check,
    trivial_cocycle,
    twist_by_lambda,
)
from hopfgen.errors import MalformedTable, NotConvInvertible, UnknownBuiltin
from hopfgen.hopf import cyclic, sweedler
from hopfgen.linmap import LinMap, conv_inverse, counit_map
from hopfgen.scalar import ONE, parse, rf


def _cyc4_bad():
    C4 = cyclic(4)
    table = {(f"g{i}", f"g{j}"): (2 if i == j == 1 else 1) for i in range(4) for j in range(4)}
    return C4, Bilinear(table)


def test_trivial_is_cocycle():
    C3 = cyclic(3)
    al = trivial_cocycle(C3)
    assert cocycle_check(C3, al).passed and normalized_check(C3, al).passed
    assert bilinear_conv_inverse(C3, al) == al
    assert all(v == ONE for v in al.table.values())


def test_sweedler_abc_certified(H4, alpha_abc):
    assert cocycle_check(H4, alpha_abc).passed
    assert normalized_check(H4, alpha_abc).passed
    assert alpha_abc[("1", "y")] == 0 and alpha_abc[("1", "x")] == ONE
    assert alpha_abc[("x", "x")] == parse("a") and alpha_abc[("y", "x")] == parse("b")


def test_bad_cyclic4_table_fails_where_brute_force_says():
    C4, al = _cyc4_bad()
    rep = cocycle_check(C4, al)
    assert not rep.passed
    val = lambda i, j: 2 if (i % 4, j % 4) == (1, 1) else 1
    brute = {
        (f"g{x}", f"g{y}", f"g{z}")
        for x, y, z in product(range(4), repeat=3)
        if val(x, y) * val(x + y, z) != val(y, z) * val(x, y + z)
    }
    assert ("g1", "g1", "g3") in brute
    assert {f.witness for f in rep.failures} == brute


def test_normalization_failure():
    C2 = cyclic(2)
    al = Bilinear({(i, j): (2 if i == j == "g0" else 1) for i in C2.basis for j in C2.basis})
    assert not normalized_check(C2, al).passed


def test_inverse_values(H4, alpha_abc):
    inv = bilinear_conv_inverse(H4, alpha_abc)
    assert inv[("x", "x")] == parse("1/a")
    assert bilinear_conv_inverse(H4, inv) == alpha_abc
    with pytest.raises(NotConvInvertible):
        bilinear_conv_inverse(H4, builtin_cocycle("sweedler_abc", a=0))


def test_twist_by_counit_is_identity(H4, alpha_abc):
    assert twist_by_lambda(H4, alpha_abc, counit_map(H4)) == alpha_abc


def test_twist_cyclic2():
    C2 = cyclic(2)
    beta = twist_by_lambda(C2, trivial_cocycle(C2), LinMap({"g0": 1, "g1": parse("c")}))
    assert beta[("g1", "g1")] == parse("c^2")


def test_builtin_errors():
    with pytest.raises(UnknownBuiltin):
        builtin_cocycle("nope")


def test_cocycle_file(H4, fixtures, tmp_path):
    al = load_cocycle(str(fixtures / "sweedler_abc_cocycle.json"), H4, assume_normalized=True)
    assert al == builtin_cocycle("sweedler_abc")
    with pytest.raises(MalformedTable):
        load_cocycle(str(fixtures / "sweedler_abc_cocycle.json"), H4)
    path = tmp_path / "c.json"
    import json

    path.write_text(json.dumps(cocycle_to_dict(al)))
    assert load_cocycle(str(path), H4) == al


nonzero = st.integers(1, 5) | st.integers(-5, -1)


@given(st.lists(nonzero, min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_twist_preserves_cocycle_and_is_reversible_sweedler(glike, other):
    H = sweedler()
    al = builtin_cocycle("sweedler_abc")
    lam = LinMap({"1": 1, "x": glike[0], "y": other[0], "z": other[1]})
    lam_inv = conv_inverse(H, lam)
    beta = twist_by_lambda(H, al, lam, lam_inv)
    assert cocycle_check(H, beta).passed
    # normalization needs λ(1) = 1
    assert normalized_check(H, beta).passed
    assert twist_by_lambda(H, beta, lam_inv, lam) == al


@given(st.integers(1, 4), st.lists(nonzero, min_size=4, max_size=4))
def test_twist_preserves_cocycle_cyclic(N, vals):
    C = cyclic(N)
    lam = LinMap({b: (1 if k == 0 else vals[k]) for k, b in enumerate(C.basis)})
    beta = twist_by_lambda(C, trivial_cocycle(C), lam)
    assert cocycle_check(C, beta).passed and normalized_check(C, beta).passed
