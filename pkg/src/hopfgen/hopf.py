"""Finite-dimensional Hopf algebras given by structure constants."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Mapping

from .errors import BadParam, MalformedTable, UnknownBuiltin
from .scalar import ONE, ZERO, RatFunc, parse, rf


class HElt:
    """Element of H: coefficients on basis labels, zeros never stored."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[str, object] | None = None):
        self.coeffs = {}
        for k, v in (coeffs or {}).items():
            v = rf(v)
            if v:
                self.coeffs[k] = v

    @classmethod
    def basis(cls, label: str) -> "HElt":
        return cls({label: ONE})

    def items(self):
        return self.coeffs.items()

    def __add__(self, other: "HElt") -> "HElt":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return type(self)(out)

    def __sub__(self, other: "HElt") -> "HElt":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "HElt":
        c = rf(c)
        return type(self)({k: v * c for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, HElt):
            return NotImplemented
        return type(self) is type(other) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"{type(self).__name__}({format_combination(self.coeffs)})"


class TensorElt:
    """Element of a tensor power: coefficients on tuples of labels."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms = {}
        for k, v in (terms or {}).items():
            v = rf(v)
            if v:
                self.terms[tuple(k)] = v

    @property
    def arity(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def __eq__(self, other):
        if not isinstance(other, TensorElt):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return TensorElt(out)

    def __sub__(self, other):
        return self + TensorElt({k: -v for k, v in other.terms.items()})

    def __repr__(self):
        return f"TensorElt({format_tensor(self.terms)})"


def _label_order(basis):
    pos = {b: i for i, b in enumerate(basis)}
    return lambda key: tuple(pos.get(x, len(pos)) for x in (key if isinstance(key, tuple) else (key,)))


def format_combination(coeffs: Mapping[str, RatFunc], order=None) -> str:
    if not coeffs:
        return "0"
    keys = sorted(coeffs, key=order) if order else list(coeffs)
    parts = []
    for k in keys:
        c = coeffs[k]
        s = str(c)
        if c == 1:
            parts.append(f"{k}")
        elif c == -1:
            parts.append(f"-{k}")
        elif len(c.num._t) > 1 or (not c.is_polynomial() and "-" in s[1:]):
            parts.append(f"({s})*{k}")
        else:
            parts.append(f"{s}*{k}")
    return " + ".join(parts).replace("+ -", "- ")


def format_tensor(terms: Mapping[tuple, RatFunc], order=None, sep="⊗") -> str:
    return format_combination({sep.join(k): v for k, v in sorted(terms.items(), key=lambda kv: order(kv[0]) if order else kv[0])})


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    """Outcome of a verification scan."""

    name: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, axiom, witness, detail=""):
        self.failures.append(Failure(axiom, tuple(witness), detail))

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        if self.passed:
            return f"{self.name}: pass ({self.checked} checks)"
        return f"{self.name}: FAIL ({len(self.failures)} of {self.checked} checks failed; first: {self.failures[0]})"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [{"axiom": f.axiom, "witness": list(map(str, f.witness)), "detail": f.detail} for f in self.failures],
            "notes": list(self.notes),
        }


class HopfAlgebra:
    """Hopf algebra by structure constants on an ordered basis.

    ``mult[(i, j)]`` maps output labels to coefficients, ``comult[i]`` is a
    list of Sweedler summands ``(j, k, c)``, ``antipode[i]`` maps labels to
    coefficients.  ``tvars`` names the symbol t_b for each basis label.
    """

    def __init__(
        self,
        basis: Iterable[str],
        mult: Mapping,
        unit: HElt | str,
        comult: Mapping,
        counit: Mapping,
        antipode: Mapping,
        name: str = "custom",
        tvars: Mapping[str, str] | None = None,
    ):
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise MalformedTable("repeated basis label")
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.name = name
        known = set(self.basis)

        def check(label, where):
            if label not in known:
                raise MalformedTable(f"unknown basis label {label!r} in {where}")
            return label

        self.unit = HElt.basis(unit) if isinstance(unit, str) else unit
        for k in self.unit.coeffs:
            check(k, "unit")
        self.mult = {}
        for i, j in product(self.basis, repeat=2):
            if (i, j) not in mult:
                raise MalformedTable(f"missing product {i}*{j}")
        for (i, j), out in mult.items():
            check(i, "mult")
            check(j, "mult")
            for k in out:
                check(k, "mult")
            self.mult[(i, j)] = HElt(out)
        self.comult = {}
        for i in self.basis:
            if i not in comult:
                raise MalformedTable(f"missing coproduct of {i}")
            terms = []
            for j, k, c in comult[i]:
                check(j, "comult")
                check(k, "comult")
                c = rf(c)
                if c:
                    terms.append((j, k, c))
            self.comult[i] = tuple(terms)
        for i in comult:
            check(i, "comult")
        self.counit = {}
        for i in self.basis:
            if i not in counit:
                raise MalformedTable(f"missing counit of {i}")
            self.counit[i] = rf(counit[i])
        self.antipode = {}
        for i in self.basis:
            if i not in antipode:
                raise MalformedTable(f"missing antipode of {i}")
            for k in antipode[i]:
                check(k, "antipode")
            self.antipode[i] = HElt(antipode[i])
        if tvars is None:
            tvars = {b: "t" + re.sub(r"\W", "_", b) for b in self.basis}
        self.tvars = dict(tvars)
        self.label_order = _label_order(self.basis)

    def __repr__(self):
        return f"HopfAlgebra({self.name}, basis={list(self.basis)})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def unit_label(self) -> str | None:
        if len(self.unit.coeffs) == 1:
            ((k, v),) = self.unit.coeffs.items()
            if v == 1:
                return k
        return None

    # -- linear algebra on H ---------------------------------------------
    def elt(self, spec) -> HElt:
        if isinstance(spec, HElt):
            return spec
        if isinstance(spec, str) and spec in self.index:
            return HElt.basis(spec)
        if isinstance(spec, str):
            return parse_element(self, spec)
        if isinstance(spec, Mapping):
            return HElt(spec)
        raise TypeError(f"cannot make an element of H from {spec!r}")

    def mul(self, u, v) -> HElt:
        u, v = self.elt(u), self.elt(v)
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = a * b
                for k, c in self.mult[(i, j)].items():
                    out[k] = out.get(k, ZERO) + ab * c
        return HElt(out)

    def mul_many(self, elts) -> HElt:
        r = self.unit
        for e in elts:
            r = self.mul(r, e)
        return r

    def power(self, u, n: int) -> HElt:
        return self.mul_many([u] * n)

    def eps(self, u) -> RatFunc:
        u = self.elt(u)
        total = ZERO
        for i, a in u.items():
            total = total + a * self.counit[i]
        return total

    def S(self, u) -> HElt:
        u = self.elt(u)
        out = HElt()
        for i, a in u.items():
            out = out + self.antipode[i].scale(a)
        return out

    def coproduct(self, u) -> list[tuple[str, str, RatFunc]]:
        """Sweedler summands (j, k, c) of Δ(u), merged and zero-free."""
        u = self.elt(u)
        acc: dict = {}
        for i, a in u.items():
            for j, k, c in self.comult[i]:
                acc[(j, k)] = acc.get((j, k), ZERO) + a * c
        return [(j, k, c) for (j, k), c in acc.items() if c]

    def delta(self, u) -> TensorElt:
        return TensorElt({(j, k): c for j, k, c in self.coproduct(u)})

    def iterated_coproduct(self, u, p: int, nesting: str = "left") -> TensorElt:
        """Δ^(p)(u) as a tensor of arity p + 1.

        ``nesting='left'`` applies Δ to the first factor each step,
        ``'right'`` to the last one; both agree by coassociativity.
        """
        if p < 1:
            raise BadParam("iterated coproduct needs p >= 1")
        terms = {(j, k): c for j, k, c in self.coproduct(u)}
        for _ in range(p - 1):
            nxt: dict = {}
            for key, c in terms.items():
                at = 0 if nesting == "left" else len(key) - 1
                for j, k, d in self.comult[key[at]]:
                    new = key[:at] + (j, k) + key[at + 1 :]
                    nxt[new] = nxt.get(new, ZERO) + c * d
            terms = nxt
        return TensorElt(terms)

    @lru_cache(maxsize=None)
    def sweedler(self, label: str, p: int) -> tuple:
        """Cached summands of Δ^(p-1) on a basis label: tuples (labels..., c).

        ``p`` is the number of tensor factors; p = 1 gives ((label, 1),).
        """
        if p == 1:
            return ((label, ONE),)
        t = self.iterated_coproduct(label, p - 1)
        return tuple(k + (c,) for k, c in sorted(t.terms.items(), key=lambda kv: self.label_order(kv[0])))

    def sweedler_elt(self, u, p: int) -> list:
        """Summands of Δ^(p-1)(u) for an element u, as (labels, c)."""
        u = self.elt(u)
        acc: dict = {}
        for i, a in u.items():
            for term in self.sweedler(i, p):
                key, c = term[:-1], term[-1]
                acc[key] = acc.get(key, ZERO) + a * c
        return [(k, c) for k, c in acc.items() if c]

    # -- structure ------------------------------------------------------------
    def is_grouplike(self, label: str) -> bool:
        return self.coproduct(label) == [(label, label, ONE)] and self.counit[label] == 1

    def grouplikes(self) -> list[str]:
        return [b for b in self.basis if self.is_grouplike(b)]

    def __hash__(self):
        return id(self)


# ---------------------------------------------------------------------------


def hopf_verify(H: HopfAlgebra) -> Report:
    """Check every Hopf algebra axiom on every basis tuple."""
    rep = Report(f"hopf axioms ({H.name})")
    B = H.basis
    one = H.unit

    def tensor_mul(s: TensorElt, t: TensorElt) -> TensorElt:
        out: dict = {}
        for (a1, a2), c in s.terms.items():
            for (b1, b2), d in t.terms.items():
                for k1, e1 in H.mult[(a1, b1)].items():
                    for k2, e2 in H.mult[(a2, b2)].items():
                        key = (k1, k2)
                        out[key] = out.get(key, ZERO) + c * d * e1 * e2
        return TensorElt(out)

    for x, y, z in product(B, repeat=3):
        rep.checked += 1
        lhs = H.mul(H.mul(x, y), z)
        rhs = H.mul(x, H.mul(y, z))
        if lhs != rhs:
            rep.fail("associativity", (x, y, z), f"{lhs} != {rhs}")
    for x in B:
        rep.checked += 1
        if H.mul(one, x) != HElt.basis(x) or H.mul(x, one) != HElt.basis(x):
            rep.fail("unit", (x,))
    for x in B:
        rep.checked += 1
        if H.iterated_coproduct(x, 2, "left") != H.iterated_coproduct(x, 2, "right"):
            rep.fail("coassociativity", (x,))
        rep.checked += 1
        left = HElt()
        right = HElt()
        for j, k, c in H.comult[x]:
            left = left + HElt.basis(k).scale(c * H.counit[j])
            right = right + HElt.basis(j).scale(c * H.counit[k])
        if left != HElt.basis(x) or right != HElt.basis(x):
            rep.fail("counit", (x,))
    rep.checked += 1
    d_one = TensorElt({(j, k): c for j, k, c in H.coproduct(one)})
    one_one = TensorElt({(i, j): a * b for i, a in one.items() for j, b in one.items()})
    if d_one != one_one:
        rep.fail("comultiplicative unit", ("1",))
    rep.checked += 1
    if H.eps(one) != 1:
        rep.fail("counital unit", ("1",))
    for x, y in product(B, repeat=2):
        rep.checked += 1
        if H.delta(H.mul(x, y)) != tensor_mul(H.delta(x), H.delta(y)):
            rep.fail("coproduct multiplicative", (x, y))
        rep.checked += 1
        if H.eps(H.mul(x, y)) != H.counit[x] * H.counit[y]:
            rep.fail("counit multiplicative", (x, y))
    for x in B:
        rep.checked += 1
        left = HElt()
        right = HElt()
        for j, k, c in H.comult[x]:
            left = left + H.mul(H.antipode[j], k).scale(c)
            right = right + H.mul(j, H.antipode[k]).scale(c)
        target = one.scale(H.counit[x])
        if left != target or right != target:
            rep.fail("antipode", (x,), f"S(x1)x2 = {left}, x1S(x2) = {right}")
    return rep


def mult_elt(H: HopfAlgebra, u, v) -> HElt:
    return H.mul(u, v)


def iterated_coproduct(H: HopfAlgebra, x, p: int) -> TensorElt:
    return H.iterated_coproduct(x, p)


@dataclass(frozen=True)
class Shape:
    kind: str  # "grouplike" | "skew_primitive" | "other"
    g: str | None = None
    h: str | None = None

    def __str__(self):
        if self.kind == "skew_primitive":
            return f"skew_primitive({self.g}, {self.h})"
        return self.kind


def coproduct_shape(H: HopfAlgebra, x: str) -> Shape:
    if x not in H.index:
        raise MalformedTable(f"unknown basis label {x!r}")
    if H.is_grouplike(x):
        return Shape("grouplike")
    terms = {(j, k): c for j, k, c in H.coproduct(x)}
    if len(terms) == 2 and all(c == 1 for c in terms.values()):
        lefts = [j for (j, k) in terms if k == x]
        rights = [k for (j, k) in terms if j == x]
        for g in lefts:
            for h in rights:
                if {(g, x), (x, h)} == set(terms) and H.is_grouplike(g) and H.is_grouplike(h):
                    return Shape("skew_primitive", g, h)
    return Shape("other")


# ---------------------------------------------------------------------------
# built-in Hopf algebras

SWEEDLER_PARAMS = ("a", "b", "c")


@lru_cache(maxsize=None)
def sweedler() -> HopfAlgebra:
    """Sweedler's H4 on the basis 1, x, y, z = xy."""
    table = {
        ("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("1", "y"): {"y": 1}, ("1", "z"): {"z": 1},
        ("x", "1"): {"x": 1}, ("x", "x"): {"1": 1}, ("x", "y"): {"z": 1}, ("x", "z"): {"y": 1},
        ("y", "1"): {"y": 1}, ("y", "x"): {"z": -1}, ("y", "y"): {}, ("y", "z"): {},
        ("z", "1"): {"z": 1}, ("z", "x"): {"y": -1}, ("z", "y"): {}, ("z", "z"): {},
    }
    comult = {
        "1": [("1", "1", 1)],
        "x": [("x", "x", 1)],
        "y": [("1", "y", 1), ("y", "x", 1)],
        "z": [("x", "z", 1), ("z", "1", 1)],
    }
    counit = {"1": 1, "x": 1, "y": 0, "z": 0}
    antipode = {"1": {"1": 1}, "x": {"x": 1}, "y": {"z": 1}, "z": {"y": -1}}
    return HopfAlgebra("1xyz", table, "1", comult, counit, antipode, name="sweedler")


def cyclic_label(m: int) -> str:
    return f"g{m}"


@lru_cache(maxsize=None)
def cyclic(N: int) -> HopfAlgebra:
    """Group algebra k[Z/N] on the basis g0 = 1, g1, ..., g{N-1}."""
    if N < 1:
        raise BadParam("cyclic group order must be >= 1")
    lab = [cyclic_label(m) for m in range(N)]
    mult = {(lab[i], lab[j]): {lab[(i + j) % N]: 1} for i in range(N) for j in range(N)}
    comult = {lab[i]: [(lab[i], lab[i], 1)] for i in range(N)}
    counit = {lab[i]: 1 for i in range(N)}
    antipode = {lab[i]: {lab[(-i) % N]: 1} for i in range(N)}
    tvars = {lab[i]: f"t{i}" for i in range(N)}
    return HopfAlgebra(lab, mult, lab[0], comult, counit, antipode, name=f"cyclic{N}", tvars=tvars)


def builtin(name: str, **params) -> HopfAlgebra:
    """Built-in Hopf algebras: ``sweedler`` or ``cyclic`` (param N)."""
    key = name.lower()
    m = re.fullmatch(r"cyclic[:(]?(\d+)\)?", key)
    if m:
        key, params = "cyclic", {"N": int(m.group(1))}
    if key in ("sweedler", "h4"):
        return sweedler()
    if key == "cyclic":
        if "N" not in params:
            raise BadParam("cyclic needs N")
        N = int(params["N"])
        if N < 1:
            raise BadParam(f"cyclic group order must be >= 1, got {N}")
        return cyclic(N)
    raise UnknownBuiltin(f"unknown Hopf algebra {name!r}")


# ---------------------------------------------------------------------------
# definition files and element text


def parse_element(H: HopfAlgebra, text: str) -> HElt:
    """Parse a linear combination of basis labels, e.g. ``"y - z"``.

    Labels that are not identifiers are addressed as ``[label]``; the bare
    constant 1 stands for the unit.
    """
    names = {}
    src = text

    def sub(m):
        lab = m.group(1)
        if lab not in H.index:
            raise MalformedTable(f"unknown basis label {lab!r}")
        key = f"B__{H.index[lab]}"
        names[key] = lab
        return key

    src = re.sub(r"\[([^\]]+)\]", sub, src)
    for lab in H.basis:
        if re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", lab):
            names.setdefault(f"B__{H.index[lab]}", lab)
            src = re.sub(rf"\b{re.escape(lab)}\b", f"B__{H.index[lab]}", src)
    value = parse(src)
    coeffs: dict = {}
    label_vars = [v for v in value.vars if v in names]
    if any(value.degree_in(v)[1] for v in label_vars):
        raise MalformedTable(f"basis labels in a denominator: {text!r}")
    num = value.num
    den = RatFunc.from_poly(value.den)
    for exps, c in num.terms.items():
        deg = {v: e for v, e in zip(num.vars, exps) if e}
        lab_part = {v: e for v, e in deg.items() if v in names}
        if sum(lab_part.values()) > 1:
            raise MalformedTable(f"element text is not linear: {text!r}")
        coeff = RatFunc(c)
        for v, e in deg.items():
            if v not in names:
                coeff = coeff * RatFunc.var(v) ** e
        if lab_part:
            (v,) = lab_part
            keys = [names[v]]
            coeff_map = {names[v]: coeff}
        else:
            coeff_map = {k: coeff * a for k, a in H.unit.items()}
            keys = list(coeff_map)
        for k in keys:
            coeffs[k] = coeffs.get(k, ZERO) + coeff_map[k] / den
    return HElt(coeffs)


def _scalar(v) -> RatFunc:
    if isinstance(v, str):
        return parse(v)
    return rf(v)


def hopf_from_dict(data: Mapping) -> HopfAlgebra:
    try:
        basis = [str(b) for b in data["basis"]]
        unit = data.get("unit", basis[0])
        mult = {}
        for entry in data["mult"]:
            i, j = str(entry["i"]), str(entry["j"])
            if (i, j) in mult:
                raise MalformedTable(f"duplicate product {i}*{j}")
            mult[(i, j)] = {str(k): _scalar(v) for k, v in entry["out"].items()}
        comult = {str(i): [(str(j), str(k), _scalar(c)) for j, k, c in terms] for i, terms in data["comult"].items()}
        counit = {str(i): _scalar(v) for i, v in data["counit"].items()}
        antipode = {str(i): {str(k): _scalar(v) for k, v in out.items()} for i, out in data["antipode"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedTable):
            raise
        raise MalformedTable(f"bad Hopf definition: {exc}") from exc
    if isinstance(unit, str):
        unit = HElt.basis(unit)
    else:
        unit = HElt({str(k): _scalar(v) for k, v in unit.items()})
    return HopfAlgebra(
        basis, mult, unit, comult, counit, antipode, name=data.get("name", "file"), tvars=data.get("tvars")
    )


def hopf_to_dict(H: HopfAlgebra) -> dict:
    return {
        "name": H.name,
        "basis": list(H.basis),
        "unit": H.unit_label or {k: str(v) for k, v in H.unit.items()},
        "mult": [
            {"i": i, "j": j, "out": {k: str(v) for k, v in H.mult[(i, j)].items()}}
            for i, j in product(H.basis, repeat=2)
        ],
        "comult": {i: [[j, k, str(c)] for j, k, c in H.comult[i]] for i in H.basis},
        "counit": {i: str(H.counit[i]) for i in H.basis},
        "antipode": {i: {k: str(v) for k, v in H.antipode[i].items()} for i in H.basis},
        "tvars": dict(H.tvars),
    }


def load_hopf(spec: str) -> HopfAlgebra:
    """Builtin name (``sweedler``, ``cyclic:4``) or path to a JSON file."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        with open(path) as fh:
            return hopf_from_dict(json.load(fh))
    return builtin(spec)
