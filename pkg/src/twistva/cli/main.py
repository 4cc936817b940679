"""Command line front end.

Exit status: 0 on success (every check passed), 1 when a check fails or an operation
rejects its input, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from ..bicharacter import PRESETS, BicharacterSpec, preset
from ..hopf import HopfElement, element_str, gen
from ..rational import expand_region, scalar_str
from .parser import ParseError, parse_expr

IDENTITIES = ("schur", "cauchy", "da")
CORRESPOND = ("A", "B", "D", "D-N")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=PRESETS, help="built-in bicharacter")
    common.add_argument("--spec-file", help="custom bicharacter JSON (overrides --preset)")
    common.add_argument("--order", type=int, help="order N of T (Df and id presets)")
    common.add_argument("--window", type=int, default=None, help="truncation window C (>= 1)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="twistva",
                                description="Twisted vertex algebras from bicharacters.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("vev", parents=[common], help="closed-form vacuum expectation value")
    s.add_argument("--points", type=int, help="number of phi insertions (neutral) or 2n (charged)")
    s.add_argument("--n", type=int, help="charged fermions: n phi and n psi insertions")
    s.add_argument("--charges", help="lattice charges, comma separated, e.g. 1,-1")
    s.add_argument("--expand", action="store_true", help="also print the expansion to the window")

    s = sub.add_parser("ope", parents=[common], help="singular part of Y(a, z) Y(b, w)")
    s.add_argument("--a", required=True, help="first element")
    s.add_argument("--b", required=True, help="second element")

    s = sub.add_parser("normal", parents=[common], help="normal-ordered product :Y(a,z)Y(b,z):")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    s = sub.add_parser("identity", parents=[common], help="verify a classical identity")
    s.add_argument("name", choices=IDENTITIES)
    s.add_argument("--n", type=int, required=True, help="size (Pfaffian identities use 2n points)")

    s = sub.add_parser("axioms", parents=[common], help="check the twisted vertex algebra axioms")
    s.add_argument("gens", nargs="*", help="generator expressions (default: base generators)")

    s = sub.add_parser("correspond", parents=[common], help="boson-fermion correspondence check")
    s.add_argument("--type", dest="kind", choices=CORRESPOND, required=True)
    s.add_argument("--points", type=int, default=4, help="largest number of insertions")

    s = sub.add_parser("expand", parents=[common], help="E_z a, or Y(a, z) b with --b")
    s.add_argument("--a", required=True)
    s.add_argument("--b", help="state acted on")
    return p


# helpers -------------------------------------------------------------------------------------

def _bicharacter(args, required=True) -> BicharacterSpec | None:
    if args.spec_file:
        try:
            return BicharacterSpec.load(args.spec_file)
        except (OSError, ValueError, KeyError) as e:
            raise UsageError(f"cannot load {args.spec_file}: {e}")
    if args.preset:
        if args.order is not None and args.preset not in ("Df", "id"):
            raise UsageError("--order applies to the Df and id presets")
        if args.order is not None and args.order < 1:
            raise UsageError("--order must be >= 1")
        return preset(args.preset, args.order)
    if required:
        raise UsageError("give --preset or --spec-file")
    return None


def _window(args, default):
    C = default if args.window is None else args.window
    if C < 1:
        raise UsageError("--window must be >= 1")
    return C


def _expr(text, r) -> HopfElement:
    try:
        return parse_expr(text, r.ambient)
    except ParseError as e:
        raise UsageError(f"cannot parse {text!r}: {e}")


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _diagonal(i, N):
    if i == 0:
        return "z - w"
    if N == 2:
        return "z + w"
    return f"z - eps^{i}*w" if i > 1 else "z - eps*w"


def _singular_term(c, s, v, i, k, N):
    w = "" if s == 0 else ("*w" if s == 1 else f"*w^{s}" if s > 0 else f"*w^({s})")
    field = "" if v == HopfElement.one(v.ambient) else f"*Y({element_str(v)}, w)"
    den = f"({_diagonal(i, N)})" + ("" if k == 0 else f"^{k + 1}")
    return f"{scalar_str(c)}{w}{field}/{den}"


# verbs ---------------------------------------------------------------------------------------

def cmd_vev(args):
    from ..vev import vev_charged, vev_lattice, vev_neutral
    r = _bicharacter(args)
    amb = r.ambient
    if args.charges is not None:
        try:
            charges = [int(x) for x in args.charges.split(",")]
        except ValueError:
            raise UsageError("--charges takes comma separated integers")
        f = vev_lattice(r, charges)
        what = {"charges": charges}
    elif args.n is not None and "psi" in amb.bases:
        if args.n < 1:
            raise UsageError("--n must be >= 1")
        f = vev_charged(r, args.n)
        what = {"n": args.n}
    elif args.points is not None:
        if args.points < 1:
            raise UsageError("--points must be >= 1")
        if "phi" not in amb.bases:
            raise UsageError("neutral vacuum expectation values need a phi generator")
        f = vev_neutral(r, args.points)
        what = {"points": args.points}
    else:
        raise UsageError("give --points, --n (charged) or --charges (lattice)")
    payload = {"schema": 1, "command": "vev", "bicharacter": r.name, **what, "value": f.to_json(),
               "text": f.to_str()}
    lines = [f.to_str()]
    if args.expand:
        C = _window(args, 6)
        s = expand_region(f, tuple(range(f.nvars)), C)
        payload["expansion"] = s.to_json()
        lines.append(s.to_str())
    _emit(args, payload, lines)
    return 0


def cmd_ope(args):
    from ..tva import max_pole, ope_residues
    r = _bicharacter(args)
    a, b = _expr(args.a, r), _expr(args.b, r)
    N = r.N
    blocks, texts, singular, ok = [], [], [], True
    for i in range(N):
        p = max_pole(r, a, b, i)
        for k in range(p - 1, -1, -1):
            res = ope_residues(r, a, b, i, k)
            if not res.terms:
                continue
            bound = (N - 1) * (k + 1)
            good = res.power_bound_ok()
            ok = ok and good
            blocks.append({**res.to_json(), "bound": bound, "shift_ok": good})
            for c, s, v in res.terms:
                term = _singular_term(c, s, v, i, k, N)
                singular.append(term)
                texts.append(f"{term}    [z = eps^{i} w, k = {k}, shift s = {s}, bound {bound}]")
    payload = {"schema": 1, "command": "ope", "bicharacter": r.name, "a": element_str(a),
               "b": element_str(b), "residues": blocks, "passed": ok,
               "singular": " + ".join(singular) or "0"}
    _emit(args, payload, texts or ["0 (no singular terms)"])
    return 0 if ok else 1


def cmd_normal(args):
    from ..tva import normal_ordered
    r = _bicharacter(args)
    a, b = _expr(args.a, r), _expr(args.b, r)
    s = normal_ordered(r, a, b)
    _emit(args, {"schema": 1, "command": "normal", "bicharacter": r.name, "a": element_str(a),
                 "b": element_str(b), "state": element_str(s)}, [element_str(s)])
    return 0


def cmd_identity(args):
    from ..vev import verify_identity
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    ok = verify_identity(args.name, args.n)
    _emit(args, {"schema": 1, "command": "identity", "name": args.name, "n": args.n, "passed": ok},
          [f"{args.name} n={args.n}: {'pass' if ok else 'FAIL'}"])
    return 0 if ok else 1


def cmd_axioms(args):
    from ..tva import check_axioms
    r = _bicharacter(args)
    C = _window(args, 8)
    if args.gens:
        gens = [_expr(g, r) for g in args.gens]
    else:
        gens = [gen(r.ambient, bname) for bname in r.ambient.bases]
    rep = check_axioms(r, gens, C)
    lines = [f"{ax}: {ok}/{total}" for ax, (ok, total) in sorted(rep.summary().items())]
    lines += [f"FAIL {e.axiom} {e.instance}" for e in rep.failures()]
    lines.append("all pass" if rep.passed else "some checks failed")
    _emit(args, rep.to_json(), lines)
    return 0 if rep.passed else 1


def cmd_correspond(args):
    from ..oracle import correspondence_check
    C = _window(args, 10)
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    N = args.order or 3
    rep = correspondence_check(args.kind, args.points, C, N)
    lines = [f"{'pass' if ok else 'FAIL'} {inst}" for inst, ok, _ in sorted(rep.cases, key=lambda t: t[0])]
    lines.append(rep.summary())
    payload = rep.to_json()
    payload["cases"] = sorted(payload["cases"], key=lambda c: c["instance"])
    payload.update({"command": "correspond", "window": C, "points": args.points})
    _emit(args, payload, lines)
    return 0 if rep.passed else 1


def cmd_expand(args):
    from ..tva import exponential_map, vertex_op
    r = _bicharacter(args)
    C = _window(args, 6)
    a = _expr(args.a, r)
    if args.b is None:
        s = exponential_map(a, C)
        label = f"E_z({element_str(a)})"
    else:
        b = _expr(args.b, r)
        s = vertex_op(r, a, b, C)
        label = f"Y({element_str(a)}, z) {element_str(b)}"
    _emit(args, {"schema": 1, "command": "expand", "bicharacter": r.name, "label": label,
                 "series": s.to_json()}, [f"{label} = {s.to_str()}"])
    return 0


VERBS = {"vev": cmd_vev, "ope": cmd_ope, "normal": cmd_normal, "identity": cmd_identity,
         "axioms": cmd_axioms, "correspond": cmd_correspond, "expand": cmd_expand}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return VERBS[args.verb](args)
    except UsageError as e:
        print(f"twistva {args.verb}: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"twistva {args.verb}: {e}", file=sys.stderr)
        return 1

