"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from itertools import product

from . import __version__
from .cocycle import Bilinear, bilinear_conv_inverse, cocycle_check, load_cocycle, normalized_check
from .errors import BudgetExceeded, HopfgenError
from .hopf import HopfAlgebra, Report, coproduct_shape, format_combination, hopf_verify, load_hopf, parse_element
from .scalar import RatFunc, parse, rf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_scalar(text: str) -> RatFunc:
    return parse(text)


def _assignments(text: str | None) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        if "=" not in part:
            raise UsageError(f"expected name=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = parse(v)
    return out


@dataclass
class Session:
    hopf: HopfAlgebra
    cocycle: Bilinear | None
    as_json: bool = False
    reports: list[Report] = field(default_factory=list)


def _open_session(args, need_cocycle: bool = True) -> Session:
    H = load_hopf(args.hopf)
    if not getattr(args, "skip_checks", False):
        rep = hopf_verify(H)
        if not rep.passed:
            raise _Failed(rep)
    alpha = None
    if need_cocycle:
        spec = args.cocycle or ("sweedler_abc" if H.name == "sweedler" else "trivial")
        params = _assignments(getattr(args, "params", None))
        alpha = load_cocycle(spec, H, assume_normalized=getattr(args, "assume_normalized", False), **params)
        alpha.check_total(H)
        if not getattr(args, "skip_checks", False):
            for rep in (cocycle_check(H, alpha), normalized_check(H, alpha)):
                if not rep.passed:
                    raise _Failed(rep)
            bilinear_conv_inverse(H, alpha)
    return Session(H, alpha, getattr(args, "json", False))


class _Failed(Exception):
    def __init__(self, report: Report):
        super().__init__(report.summary())
        self.report = report


def _emit(args, text: str, data) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, indent=2, sort_keys=False, ensure_ascii=False))
    else:
        print(text)


def _report_text(rep: Report) -> str:
    lines = [rep.summary()]
    for n in rep.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines)


def _emit_reports(args, reports: list[Report]) -> int:
    text = "\n".join(_report_text(r) for r in reports)
    _emit(args, text, [r.as_dict() for r in reports])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _pair(text: str, H: HopfAlgebra) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or any(p not in H.index for p in parts):
        raise UsageError(f"bad pair {text!r}; expected two basis labels like y,y")
    return parts[0], parts[1]


def _table(H: HopfAlgebra, f: Bilinear) -> dict:
    return {f"{x},{y}": str(f[(x, y)]) for x, y in product(H.basis, repeat=2)}


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    H = load_hopf(args.hopf)
    reports = [hopf_verify(H)]
    if args.cocycle:
        alpha = load_cocycle(args.cocycle, H, assume_normalized=args.assume_normalized, **_assignments(args.params))
        alpha.check_total(H)
        reports += [cocycle_check(H, alpha), normalized_check(H, alpha)]
        inv = Report("convolution invertibility")
        inv.checked = 1
        try:
            bilinear_conv_inverse(H, alpha)
        except HopfgenError as exc:
            inv.fail("invertible", (), str(exc))
        reports.append(inv)
    return _emit_reports(args, reports)


def cmd_sigma(args) -> int:
    from .generic import build_generic

    s = _open_session(args)
    G = build_generic(s.hopf, s.cocycle)
    if args.pair:
        x, y = _pair(args.pair, s.hopf)
        val = G.sigma_inv[(x, y)] if args.inverse else G.sigma[(x, y)]
        _emit(args, str(val), {"pair": [x, y], "sigma": str(G.sigma[(x, y)]), "sigma_inv": str(G.sigma_inv[(x, y)])})
        return EXIT_OK
    sig, inv = _table(s.hopf, G.sigma), _table(s.hopf, G.sigma_inv)
    lines = ["sigma:"] + [f"  σ({k}) = {v}" for k, v in sig.items()]
    lines += ["sigma_inv:"] + [f"  σ⁻¹({k}) = {v}" for k, v in inv.items()]
    _emit(args, "\n".join(lines), {"sigma": sig, "sigma_inv": inv})
    return EXIT_OK


def cmd_tinv(args) -> int:
    from .linmap import conv_inverse, t_map

    s = _open_session(args, need_cocycle=False)
    t_inv = conv_inverse(s.hopf, t_map(s.hopf))
    table = {b: str(t_inv[b]) for b in s.hopf.basis}
    _emit(args, "\n".join(f"t⁻¹({b}) = {v}" for b, v in table.items()), table)
    return EXIT_OK


def cmd_twist(args) -> int:
    from .twisted import TwElt, TwistedAlgebra

    s = _open_session(args)
    A = TwistedAlgebra(s.hopf, s.cocycle)
    if args.mul:
        u, v = (TwElt(parse_element(s.hopf, e).coeffs) for e in args.mul)
        prod = A.mul(u, v)
        text = format_combination({f"u_{k}": c for k, c in prod.items()})
        _emit(args, text, {k: str(c) for k, c in prod.items()})
        return EXIT_OK
    table = {
        f"{x},{y}": {k: str(c) for k, c in A.basis_product(x, y).items()}
        for x, y in product(s.hopf.basis, repeat=2)
    }
    lines = [
        f"u_{x}·u_{y} = " + format_combination({f"u_{k}": c for k, c in A.basis_product(x, y).items()})
        for x, y in product(s.hopf.basis, repeat=2)
    ]
    _emit(args, "\n".join(lines), table)
    return EXIT_OK


def cmd_coinv(args) -> int:
    from .freecomod import OrderedPartition, coinv_check, coinv_P

    s = _open_session(args, need_cocycle=False)
    elts = [e.strip() for e in args.elts.split(";")]
    n = len(elts)
    I = OrderedPartition.parse(args.I) if args.I else OrderedPartition.single(n)
    J = OrderedPartition.parse(args.J) if args.J else OrderedPartition.single(n)
    P = coinv_P(s.hopf, elts, I, J)
    ok = coinv_check(s.hopf, P)
    _emit(args, f"P = {P}\ncoinvariant: {'yes' if ok else 'no'}", {"P": str(P), "coinvariant": ok})
    return EXIT_OK if ok else EXIT_FAIL


def _read_polys(H: HopfAlgebra, args) -> dict:
    from .freecomod import parse_ncpoly

    polys = {}
    if args.poly:
        with open(args.poly) as fh:
            raw = fh.read()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError:
            data = None
        if isinstance(data, dict):
            items = data.get("polys", data).items()
        else:
            items = []
            for i, line in enumerate(l for l in raw.splitlines() if l.strip() and not l.startswith("#")):
                name, _, body = line.partition(":") if ":" in line else (f"p{i + 1}", "", line)
                items.append((name.strip(), body.strip()))
        for name, body in items:
            polys[name] = parse_ncpoly(H, body)
    for i, e in enumerate(args.expr or []):
        polys[f"expr{i + 1}"] = parse_ncpoly(H, e)
    if not polys:
        raise UsageError("mu needs --poly <file> or --expr <text>")
    return polys


def cmd_mu(args) -> int:
    from .freecomod import coinv_check, mu_alpha

    s = _open_session(args)
    out, lines = {}, []
    for name, p in _read_polys(s.hopf, args).items():
        img = mu_alpha(s.hopf, s.cocycle, p)
        rendered = format_combination({f"u_{k}": c for k, c in img.items()})
        out[name] = {"poly": str(p), "image": {k: str(c) for k, c in img.items()}, "coinvariant": coinv_check(s.hopf, p)}
        lines.append(f"μ({name}) = {rendered}")
    _emit(args, "\n".join(lines), out)
    return EXIT_OK


def _find_minimal_poly(H: HopfAlgebra, x: str, max_degree: int = 16) -> list:
    """Smallest monic relation among powers of x, by linear dependence."""
    from .scalar import nullspace

    powers = [H.unit]
    for n in range(1, max_degree + 1):
        powers.append(H.mul(powers[-1], x))
        cols = [[p.coeffs.get(b, 0) for b in H.basis] for p in powers]
        matrix = [[rf(cols[j][i]) for j in range(n + 1)] for i in range(len(H.basis))]
        ns = nullspace(matrix, n + 1)
        for v in ns:
            if v[n]:
                lead = v[n]
                return [v[n - k] / lead for k in range(1, n + 1)]
    raise UsageError(f"no relation of degree <= {max_degree} for {x}")


def cmd_witness(args) -> int:
    from .integrality import grouplike_power_witness, skew_primitive_witness

    s = _open_session(args)
    H, x = s.hopf, args.element
    if x not in H.index:
        raise UsageError(f"unknown basis element {x!r}")
    if H.is_grouplike(x):
        n = args.power
        if n is None:
            p, n = H.elt(x), 1
            while p != H.unit:
                p, n = H.mul(p, x), n + 1
                if n > 4096:
                    raise UsageError(f"{x} has no small finite order")
        w = grouplike_power_witness(H, s.cocycle, x, n)
    else:
        lams = [parse(c) for c in args.minpoly.split(",")] if args.minpoly else _find_minimal_poly(H, x)
        w = skew_primitive_witness(H, s.cocycle, x, lams)
    ok = w.evaluate().is_zero()
    text = f"{w.render()}\nleading coefficient before normalization: {w.leading}\nvanishes: {'yes' if ok else 'no'}"
    _emit(args, text, w.as_dict())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_groupcase(args) -> int:
    from .groupcase import GroupModel, ym, z_structure_report, zn_integral_relation

    g = args.group.replace(" ", "")
    if g.upper() == "Z":
        G = GroupModel.z()
        reports = [z_structure_report(args.window)]
        table = {str(m): str(G.render(ym(G, m))) for m in range(-args.window, args.window + 1)}
    elif g.upper().startswith("Z/"):
        try:
            N = int(g[2:])
        except ValueError:
            raise UsageError(f"bad group {args.group!r}") from None
        G = GroupModel.zn(N)
        if args.relation:
            reports = [zn_integral_relation(N)]
        else:
            from .groupcase import ym_via_sigma

            rep = Report(f"Z/{N} y_m via sigma")
            for m in range(N + 1):
                rep.checked += 1
                if ym_via_sigma(G, m) != ym(G, m):
                    rep.fail("y_m via sigma", (m,))
            reports = [rep]
        table = {str(m): str(G.render(ym(G, m))) for m in range(0, N + 1)}
    else:
        raise UsageError(f"group must be Z or Z/N, got {args.group!r}")
    text = "\n".join([f"y_{m} = {v}" for m, v in table.items()] + [_report_text(r) for r in reports])
    _emit(args, text, {"y": table, "reports": [r.as_dict() for r in reports]})
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_specialize(args) -> int:
    from .generic import build_generic, specialize_extension
    from .twisted import tw_verify

    s = _open_session(args)
    G = build_generic(s.hopf, s.cocycle)
    A = specialize_extension(G, _assignments(args.assign))
    rep = tw_verify(A)
    table = {
        f"{x},{y}": {k: str(c) for k, c in A.basis_product(x, y).items()}
        for x, y in product(s.hopf.basis, repeat=2)
    }
    lines = [
        f"u_{x}·u_{y} = " + format_combination({f"u_{k}": c for k, c in A.basis_product(x, y).items()})
        for x, y in product(s.hopf.basis, repeat=2)
    ]
    lines.append(_report_text(rep))
    _emit(args, "\n".join(lines), {"structure_constants": table, "report": rep.as_dict()})
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_relations(args) -> int:
    from .elim import sweedler_relations

    H = load_hopf(args.hopf)
    if H.name != "sweedler":
        raise UsageError("relations is implemented for the Sweedler algebra")
    at = _assignments(args.at)
    missing = [p for p in "abc" if p not in at]
    if missing:
        raise UsageError(f"--at must give numeric values for {', '.join(missing)}")
    try:
        res = sweedler_relations(at["a"], at["b"], at["c"], budget=args.budget)
    except BudgetExceeded as exc:
        _emit(args, f"budget exceeded: {exc}", {"budget_exceeded": True, "message": str(exc)})
        return EXIT_OK
    ok = res.verify()
    lines = [f"relation: {r}" for r in res.relations] or ["no relations"]
    lines += [f"flag: {f}" for f in res.flags]
    lines.append(f"back-substitution: {'pass' if ok else 'FAIL'}")
    data = {
        "relations": [str(r) for r in res.relations],
        "flags": res.flags,
        "verified": ok,
        "pair_reductions": res.basis.reductions,
    }
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfgen", description="Generic cocycles and twisted Hopf algebras, computed exactly.")
    p.add_argument("--version", action="version", version=f"hopfgen {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, cocycle=True, hopf_default="sweedler"):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--hopf", default=hopf_default, help="builtin (sweedler, cyclic:N) or JSON file")
        if cocycle:
            sp.add_argument("--cocycle", help="builtin (trivial, sweedler_abc) or JSON file")
            sp.add_argument("--params", help="numeric cocycle parameters, e.g. a=1,b=0,c=-1")
            sp.add_argument("--assume-normalized", action="store_true", help="fill unlisted unit pairs of a cocycle file")
        sp.add_argument("--skip-checks", action="store_true", help="skip Hopf and cocycle verification")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    add("verify", cmd_verify, "check Hopf axioms (and a cocycle if given)")
    sp = add("sigma", cmd_sigma, "generic cocycle σ and σ⁻¹")
    sp.add_argument("--pair", help="single pair i,j")
    sp.add_argument("--inverse", action="store_true", help="with --pair, print σ⁻¹ instead")
    add("tinv", cmd_tinv, "convolution inverse of t", cocycle=False)
    sp = add("twist", cmd_twist, "twisted algebra products")
    sp.add_argument("--mul", nargs=2, metavar="ELT", help="two elements to multiply")
    sp = add("coinv", cmd_coinv, "coinvariant element P", cocycle=False)
    sp.add_argument("--elts", required=True, help='elements separated by ";"')
    sp.add_argument("--I", help='ordered partition, blocks separated by "|"')
    sp.add_argument("--J", help='ordered partition, blocks separated by "|"')
    sp = add("mu", cmd_mu, "generic evaluation map μ_α")
    sp.add_argument("--poly", help="file of noncommutative polynomials (JSON or name: expr lines)")
    sp.add_argument("--expr", action="append", help="inline polynomial, e.g. X_x*X_x")
    sp = add("witness", cmd_witness, "monic integrality witness for t_x")
    sp.add_argument("--element", required=True)
    sp.add_argument("--minpoly", help="λ1,...,λn with x^n + λ1 x^(n-1) + ... + λn = 0")
    sp.add_argument("--power", type=int, help="order n of a grouplike element")
    sp = sub.add_parser("groupcase", help="group algebras of Z and Z/N")
    sp.add_argument("--group", required=True, help="Z or Z/N")
    sp.add_argument("--window", type=int, default=5)
    sp.add_argument("--relation", action="store_true", help="check the Z/N integral relation")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_groupcase)
    sp = add("specialize", cmd_specialize, "specialize the generic extension at a t-point")
    sp.add_argument("--assign", required=True, help="e.g. t1=1,tx=1,ty=0,tz=0")
    sp = sub.add_parser("relations", help="relations among E,R,S,T,U by elimination")
    sp.add_argument("--hopf", default="sweedler")
    sp.add_argument("--at", required=True, help="a=1,b=0,c=1")
    sp.add_argument("--budget", type=int, default=20000)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_relations)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _Failed as exc:
        _emit(args, _report_text(exc.report), [exc.report.as_dict()])
        return EXIT_FAIL
    except (UsageError, HopfgenError, ValueError, ZeroDivisionError, OSError, KeyError) as exc:
        print(f"hopfgen {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
