"""Independent reference computations in sympy.

Nothing here imports hopfgen: structure tables are typed in by hand and
every derived quantity is recomputed from its defining formula.
"""

from __future__ import annotations

from itertools import product

import sympy as sp

a, b, c = sp.symbols("a b c")
t1, tx, ty, tz = sp.symbols("t1 tx ty tz")
T = {"1": t1, "x": tx, "y": ty, "z": tz}
BASIS = ("1", "x", "y", "z")

# Sweedler algebra: x^2 = 1, y^2 = 0, z = xy, yx = -z, xz = y, zx = -y
_MUL = {
    ("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("1", "y"): {"y": 1}, ("1", "z"): {"z": 1},
    ("x", "1"): {"x": 1}, ("x", "x"): {"1": 1}, ("x", "y"): {"z": 1}, ("x", "z"): {"y": 1},
    ("y", "1"): {"y": 1}, ("y", "x"): {"z": -1}, ("y", "y"): {}, ("y", "z"): {},
    ("z", "1"): {"z": 1}, ("z", "x"): {"y": -1}, ("z", "y"): {}, ("z", "z"): {},
}
_COMULT = {
    "1": [("1", "1", 1)],
    "x": [("x", "x", 1)],
    "y": [("1", "y", 1), ("y", "x", 1)],
    "z": [("x", "z", 1), ("z", "1", 1)],
}
_EPS = {"1": 1, "x": 1, "y": 0, "z": 0}
_S = {"1": {"1": 1}, "x": {"x": 1}, "y": {"z": 1}, "z": {"y": -1}}


def mul(u: dict, v: dict) -> dict:
    out: dict = {}
    for i, p in u.items():
        for j, q in v.items():
            for k, r in _MUL[(i, j)].items():
                out[k] = out.get(k, 0) + p * q * r
    return {k: v for k, v in out.items() if v != 0}


def delta3(label: str):
    """(Δ⊗id)Δ as a list of (l1, l2, l3, coeff)."""
    out = []
    for l, r, c0 in _COMULT[label]:
        for l1, l2, c1 in _COMULT[l]:
            out.append((l1, l2, r, c0 * c1))
    return out


def alpha_abc() -> dict:
    al = {}
    for u in BASIS:
        e = 1 if u in "1x" else 0
        al[("1", u)] = e
        al[(u, "1")] = e
    al.update({
        ("x", "x"): a, ("x", "y"): 0, ("x", "z"): 0,
        ("y", "x"): b, ("y", "y"): c, ("y", "z"): -c,
        ("z", "x"): b, ("z", "y"): c, ("z", "z"): -a * c,
    })
    return al


def t_inverse() -> dict:
    """Solve Σ t_{x1} s_{x2} = ε(x) for the unknowns s."""
    s = sp.symbols("s1 sx sy sz")
    S = dict(zip(BASIS, s))
    eqs = [sum(T[l] * S[r] * k for l, r, k in _COMULT[x]) - _EPS[x] for x in BASIS]
    sol = sp.solve(eqs, s, dict=True)[0]
    return {x: sp.factor(sol[S[x]]) for x in BASIS}


def _lin(f: dict, u: dict):
    return sum(f[k] * v for k, v in u.items())


def sigma_table() -> dict:
    """σ(x,y) = Σ t_{x1} t_{y1} α(x2,y2) t⁻¹(x3 y3)."""
    al, ti = alpha_abc(), t_inverse()
    out = {}
    for x, y in product(BASIS, repeat=2):
        tot = 0
        for x1, x2, x3, p in delta3(x):
            for y1, y2, y3, q in delta3(y):
                tot += p * q * T[x1] * T[y1] * al[(x2, y2)] * _lin(ti, mul({x3: 1}, {y3: 1}))
        out[(x, y)] = sp.cancel(tot)
    return out


def conv_inverse_bilinear(f: dict) -> dict:
    """Solve Σ f(x1,y1) g(x2,y2) = ε(x)ε(y) for g."""
    g = {p: sp.Symbol(f"g_{p[0]}{p[1]}") for p in product(BASIS, repeat=2)}
    eqs = []
    for x, y in product(BASIS, repeat=2):
        tot = 0
        for x1, x2, p in _COMULT[x]:
            for y1, y2, q in _COMULT[y]:
                tot += p * q * f[(x1, y1)] * g[(x2, y2)]
        eqs.append(tot - _EPS[x] * _EPS[y])
    sol = sp.solve(eqs, list(g.values()), dict=True)[0]
    return {p: sp.cancel(sol[g[p]]) for p in g}


def equal(ours, theirs) -> bool:
    """Compare a hopfgen rendering (string) with a sympy expression."""
    return sp.simplify(sp.sympify(str(ours).replace("^", "**")) - theirs) == 0


# cyclic groups -----------------------------------------------------------

def cyclic_sigma(N: int) -> dict:
    """σ(g^i, g^j) for trivial α from the twisting formula with t⁻¹_g = 1/t_g."""
    ts = sp.symbols(f"t0:{N}")
    return {(i, j): sp.cancel(ts[i] * ts[j] / ts[(i + j) % N]) for i in range(N) for j in range(N)}


def cyclic_generators(N: int) -> list:
    sig = cyclic_sigma(N)
    vals = []
    for v in list(sig.values()) + [1 / v for v in sig.values()]:
        v = sp.cancel(v)
        if all(sp.simplify(v - w) != 0 for w in vals):
            vals.append(v)
    return vals


# tensor algebra ----------------------------------------------------------

def S_of(u: dict) -> dict:
    out: dict = {}
    for k, p in u.items():
        for j, q in _S[k].items():
            out[j] = out.get(j, 0) + p * q
    return {k: v for k, v in out.items() if v != 0}


def P1(x: str) -> dict:
    """Σ X_{x1} X_{S(x2)} as {word: coeff}."""
    out: dict = {}
    for l, r, k in _COMULT[x]:
        for j, q in S_of({r: 1}).items():
            out[(l, j)] = out.get((l, j), 0) + k * q
    return {w: v for w, v in out.items() if v != 0}


def P2(x: str, y: str) -> dict:
    """Σ X_{x1} X_{y1} X_{S(x2 y2)}."""
    out: dict = {}
    for x1, x2, p in _COMULT[x]:
        for y1, y2, q in _COMULT[y]:
            for j, r in S_of(mul({x2: 1}, {y2: 1})).items():
                out[(x1, y1, j)] = out.get((x1, y1, j), 0) + p * q * r
    return {w: v for w, v in out.items() if v != 0}


def twisted_product(al: dict, i: str, j: str) -> dict:
    """u_i u_j = Σ α(i1, j1) u_{i2 j2}."""
    out: dict = {}
    for i1, i2, p in _COMULT[i]:
        for j1, j2, q in _COMULT[j]:
            for k, r in mul({i2: 1}, {j2: 1}).items():
                out[k] = out.get(k, 0) + p * q * r * al[(i1, j1)]
    return out


def galois_determinant(al: dict):
    rows = [(i, j) for i in BASIS for j in BASIS]
    cols = {(k, h): n for n, (k, h) in enumerate(product(BASIS, repeat=2))}
    M = sp.zeros(16, 16)
    for r, (i, j) in enumerate(rows):
        for j1, j2, p in _COMULT[j]:
            for k, v in twisted_product(al, i, j1).items():
                M[cols[(k, j2)], r] += p * v
    return sp.factor(M.det())


# integrality -------------------------------------------------------------

def lemma2(x: str, y: str, keep: str | None = None, X=None):
    """Σ σ⁻¹(x1,y1) t_{x2} t_{y2} α(x3,y3); explicit t_keep factors become X."""
    sig_inv = conv_inverse_bilinear(sigma_table())
    al = alpha_abc()
    tt = dict(T)
    if keep is not None:
        tt[keep] = X
    tot = 0
    for x1, x2, x3, p in delta3(x):
        for y1, y2, y3, q in delta3(y):
            tot += p * q * sig_inv[(x1, y1)] * tt[x2] * tt[y2] * al[(x3, y3)]
    return sp.cancel(tot)


def t_of(u: dict):
    return sum(T[k] * v for k, v in u.items())
