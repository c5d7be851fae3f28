"""
Command-line front end.

Exit codes: 0 success, 1 a verdict failed, 2 usage error (bad arguments,
unknown names, unreadable or malformed files).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import varieties as V
from .concrete import (
    CONSTRUCTIONS, NotRotaBaxter, derive, format_algebra, parse_algebra, parse_operator,
    satisfies,
)
from .exactla import QQ, GF101, NotInSpan
from .freealg import (
    count_assoc_types, enumerate_assoc_types, enumerate_monomials, format_polynomial,
    parse_polynomial, tree_str,
)
from .identmod import (
    ExpansionRule, IdentitySystem, expand, find_new_identities, format_rule, format_system,
    identity_module, is_consequence, lifting_generators, lifting_module, minimize_generators,
    parse_rule, parse_system,
)
from .repro import CHECKS, ReproResult, criterion_verdicts, format_table, repro_all
from .splitkit import disuccessor_system, modules_equal

__all__ = ["main", "repro_all", "ReproResult"]


class UsageError(Exception):
    pass


def _fields(choice):
    return {"p101": [GF101], "rational": [QQ], "both": [GF101, QQ]}[choice]


def _label(field):
    return "Q" if field is QQ else f"F_{field.p}"


def _system(spec: str) -> IdentitySystem:
    """Catalog name or path to a system file."""
    if spec in V.list_systems():
        return V.get_system(spec)
    p = Path(spec)
    if p.is_file():
        try:
            return parse_system(p.read_text())
        except ValueError as e:
            raise UsageError(f"{spec}: {e}") from None
    raise UsageError(f"unknown system {spec!r} (not a catalog name or a file); "
                     f"catalog: {', '.join(V.list_systems())}")


def _rule(spec: str) -> ExpansionRule:
    if spec in V.list_rules():
        return V.get_rule(spec)
    p = Path(spec)
    if p.is_file():
        try:
            return parse_rule(p.read_text())
        except ValueError as e:
            raise UsageError(f"{spec}: {e}") from None
    raise UsageError(f"unknown rule {spec!r}; catalog: {', '.join(V.list_rules())}")


def _ops(text):
    return [o for o in text.replace(",", " ").split() if o]


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------

def cmd_types(args):
    ops = _ops(args.ops)
    types = enumerate_assoc_types(args.degree, ops)
    lines = [f"{len(types)} association types of degree {args.degree} over {len(ops)} operation(s)"]
    if args.list:
        lines += [str(t) for t in types]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_monomials(args):
    ops = _ops(args.ops)
    monos = enumerate_monomials(args.degree, ops)
    lines = [f"{len(monos)} multilinear monomials of degree {args.degree} "
             f"({count_assoc_types(args.degree, len(ops))} types)"]
    if args.list:
        types = enumerate_assoc_types(args.degree, ops)
        for i, m in enumerate(monos):
            lines.append(f"{i}\t{types[m.type_index]}\t{''.join(map(str, m.perm))}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_expand(args):
    rule = _rule(args.rule)
    if args.input:
        try:
            polys = [parse_polynomial(Path(args.input).read_text(), rule.source)]
        except (OSError, ValueError) as e:
            raise UsageError(str(e)) from None
    else:
        polys = list(_system(args.system).identities)
    out = []
    for p in polys:
        out.append(format_polynomial(expand(rule, p)))
    _emit(args, "\n".join(out))
    return 0


def cmd_lift(args):
    system = _system(args.system)
    gens = lifting_generators(system, args.degree)
    lines = []
    for f in _fields(args.field):
        dim = lifting_module(system, args.degree, f).rank
        lines.append(f"{len(gens)} lifting generators, module dimension {dim} over {_label(f)}")
    if args.list:
        for g in gens:
            lines += ["", format_polynomial(g).rstrip("\n")]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_newids(args):
    system, rule = _system(args.system), _rule(args.rule)
    reports = [(f, find_new_identities(system, rule, args.degree, f, minimize=not args.no_minimize))
               for f in _fields(args.field)]
    lines = []
    for f, r in reports:
        lines.append(f"[{_label(f)}] {r.summary()}")
    if len(reports) == 2 and reports[0][1].count != reports[1][1].count:
        lines.append("WARNING: the two fields disagree")
    f, r = reports[-1]
    for g in r.minimal if not args.no_minimize else r.identities:
        lines += ["", format_polynomial(g).rstrip("\n")]
    _emit(args, "\n".join(lines) + "\n")
    return 1 if len(reports) == 2 and reports[0][1].count != reports[1][1].count else 0


def cmd_minimize(args):
    system = _system(args.system)
    ids = [g for g in system.identities if g.degree == args.degree]
    if not ids:
        raise UsageError(f"{system.name} has no identities of degree {args.degree}")
    context = None
    if args.context:
        context = lifting_module(_system(args.context), args.degree, _fields(args.field)[0])
    kept = minimize_generators(ids, context, _fields(args.field)[0])
    lines = [f"{len(kept)} of {len(ids)} identities kept"]
    for g in kept:
        lines += ["", format_polynomial(g).rstrip("\n")]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_consequence(args):
    system = _system(args.system)
    rule = _rule(args.rule) if args.rule else None
    alphabet = rule.source if rule else system.alphabet
    try:
        text = Path(args.target).read_text()
        # a bare polynomial, or a system file whose identities are all tested
        if any(l.split()[:1] == ["ops"] for l in text.splitlines()):
            targets = list(parse_system(text).identities)
        else:
            targets = [parse_polynomial(text, alphabet)]
    except (OSError, ValueError) as e:
        raise UsageError(str(e)) from None
    ok = True
    for i, t in enumerate(targets, 1):
        try:
            good = all(is_consequence(t, system, rule, f) for f in _fields(args.field))
        except ValueError as e:
            raise UsageError(str(e)) from None
        if len(targets) > 1:
            print(f"identity {i}: {'consequence' if good else 'not a consequence'}")
        ok &= good
    print("consequence" if ok else "not a consequence")
    return 0 if ok else 1


def cmd_split(args):
    system = _system(args.system)
    ren, ops = None, None
    if args.rename:
        if args.system not in V.SPLITS:
            raise UsageError(f"no known renaming for {args.system!r}")
        _, ren, ops = V.SPLITS[args.system]
    split = disuccessor_system(system, ren, ops)
    if args.degree is not None:
        split = IdentitySystem(split.name, split.alphabet,
                               tuple(g for g in split.identities if g.degree == args.degree))
    _emit(args, format_system(split))
    if args.check:
        target = _system(args.check)
        if target.alphabet != split.alphabet:
            raise UsageError(f"{args.check} is over {tuple(target.alphabet)}, the split system "
                             f"over {tuple(split.alphabet)} (try --rename)")
        ok = True
        for f in _fields(args.field):
            eq = modules_equal(split, target, f)
            for d, same in eq.items():
                print(f"degree {d} [{_label(f)}]: {'equal' if same else 'DIFFERENT'}", file=sys.stderr)
                ok &= same
        return 0 if ok else 1
    return 0


def cmd_catalog(args):
    if args.action == "list":
        lines = ["systems:"]
        for n in V.list_systems():
            e = V.get_entry(n)
            lines.append(f"  {n:<16} {len(e.system.identities)} identities over "
                         f"{','.join(e.system.alphabet)}  -- {e.note}")
        lines.append("rules:")
        for n in V.list_rules():
            r = V.get_rule_entry(n)
            lines.append(f"  {n:<26} {','.join(r.rule.source)} -> {','.join(r.rule.target)}  -- {r.note}")
        _emit(args, "\n".join(lines) + "\n")
        return 0
    if not args.name:
        raise UsageError("catalog dump needs a name")
    if args.name in V.list_systems():
        _emit(args, format_system(V.get_system(args.name)))
    elif args.name in V.list_rules():
        _emit(args, format_rule(V.get_rule(args.name)))
    else:
        raise UsageError(f"unknown catalog entry {args.name!r}")
    return 0


def cmd_verify(args):
    try:
        A = parse_algebra(Path(args.algebra).read_text())
    except (OSError, ValueError) as e:
        raise UsageError(str(e)) from None
    if args.construct:
        if not args.rb:
            raise UsageError("--construct needs --rb")
        try:
            ops = [parse_operator(Path(f).read_text()) for f in args.rb]
        except (OSError, ValueError) as e:
            raise UsageError(str(e)) from None
        try:
            A = derive(A, args.construct, ops)
        except NotRotaBaxter as e:
            print(f"construction refused: {e}")
            return 1
        except (KeyError, ValueError) as e:
            raise UsageError(str(e)) from None
        if args.out:
            Path(args.out).write_text(format_algebra(A))
    if args.system is None:
        if not args.construct:
            raise UsageError("--system is required without --construct")
        args.system = CONSTRUCTIONS[args.construct][2]
    system = _system(args.system)
    try:
        v = satisfies(A, system)
    except KeyError as e:
        raise UsageError(str(e)) from None
    if v.ok:
        print(f"{system.name}: satisfied on all basis tuples")
        return 0
    print(f"{system.name}: identity {v.identity + 1} fails at basis tuple "
          f"{tuple(i + 1 for i in v.args)} with value {list(v.value)}")
    return 1


def cmd_repro(args):
    only = _ops(args.only) if args.only else None
    try:
        rows, status = repro_all(args.field, only)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    print(format_table(rows))
    print()
    for c, ok in sorted(criterion_verdicts(rows).items()):
        print(f"criterion {c}: {'pass' if ok else 'FAIL'}")
    return status


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="splitalg", description=__doc__.strip().splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, field=False, out=True):
        if field:
            p.add_argument("--field", choices=["p101", "rational", "both"], default="p101")
        if out:
            p.add_argument("--out", help="write the result to this file")

    p = sub.add_parser("types", help="association types")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--ops", default="mul", help="comma-separated operation names")
    p.add_argument("--list", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_types)

    p = sub.add_parser("monomials", help="multilinear monomials")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--ops", default="mul")
    p.add_argument("--list", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_monomials)

    p = sub.add_parser("expand", help="apply an expansion rule")
    p.add_argument("--rule", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--system")
    g.add_argument("--input", help="polynomial file over the rule's source operations")
    common(p)
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("lift", help="liftings of a system to a degree")
    p.add_argument("--system", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--list", action="store_true")
    common(p, field=True)
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("newids", help="identities satisfied by a rule modulo a system")
    p.add_argument("--system", required=True)
    p.add_argument("--rule", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--no-minimize", action="store_true")
    common(p, field=True)
    p.set_defaults(fn=cmd_newids)

    p = sub.add_parser("minimize", help="minimal generators of a system in one degree")
    p.add_argument("--system", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--context", help="system whose liftings are taken as known")
    common(p, field=True)
    p.set_defaults(fn=cmd_minimize)

    p = sub.add_parser("consequence", help="is a polynomial a consequence of a system")
    p.add_argument("--target", required=True, help="polynomial or system file")
    p.add_argument("--system", required=True)
    p.add_argument("--rule", help="expand the target with this rule first")
    common(p, field=True, out=False)
    p.set_defaults(fn=cmd_consequence)

    p = sub.add_parser("split", help="disuccessor of a system")
    p.add_argument("system")
    p.add_argument("--degree", type=int)
    p.add_argument("--rename", action="store_true",
                   help="rename the split operations to the catalog's target alphabet")
    p.add_argument("--check", help="catalog system to compare modules with")
    common(p, field=True)
    p.set_defaults(fn=cmd_split)

    p = sub.add_parser("catalog", help="list or dump catalog entries")
    p.add_argument("action", choices=["list", "dump"])
    p.add_argument("name", nargs="?")
    common(p)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("verify", help="check a structure-constant algebra against a system")
    p.add_argument("--algebra", required=True)
    p.add_argument("--system", help="defaults to the target system of --construct")
    p.add_argument("--rb", nargs="+", help="operator file(s)")
    p.add_argument("--construct", choices=list(CONSTRUCTIONS))
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("repro", help="run the reproduction suite")
    p.add_argument("--only", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    common(p, field=True, out=False)
    p.set_defaults(fn=cmd_repro)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        # e.g. a degree too large for the column limit, or non-multilinear input
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
