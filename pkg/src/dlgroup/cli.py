"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 syntax error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import aut, graph, group, lampstand, ring, textio, twisted
from .errors import DLGroupError, ExprSyntaxError
from .params import GroupParams, validate_params


def _parse_l(text: str) -> list[int]:
    try:
        return [int(a) for a in text.split(",") if a.strip()]
    except ValueError:
        raise ExprSyntaxError(f"bad residue list {text!r}") from None


def _read_config(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ExprSyntaxError(f"config line {line!r} is not key=value")
            values[key.strip()] = value.strip()
    return values


def _params(args) -> GroupParams:
    d, q, l = args.d, args.q, args.l
    if args.config:
        cfg = _read_config(args.config)
        d = int(cfg["d"]) if "d" in cfg else d
        q = int(cfg["q"]) if "q" in cfg else q
        l = cfg.get("l", l)
    if d is None or q is None:
        raise ExprSyntaxError("group parameters need --d and --q (or --config)")
    if l is None:
        l = ",".join(str(i) for i in range(d - 1))
    return validate_params(d, q, _parse_l(l))


def _text_or_file(value: str) -> str:
    if os.path.isfile(value):
        with open(value) as fh:
            return fh.read().strip()
    return value


# -- handlers ---------------------------------------------------------------------------

def cmd_params_check(args):
    validate_params(args.D, args.Q, _parse_l(args.L))
    return "valid"


def cmd_ring(args):
    p = _params(args)
    a = textio.parse_ring_expr(p, args.expr)
    if args.action == "decompose":
        return textio.format_decomposition(a)
    if args.action == "unit":
        if not ring.is_unit(a):
            return "not a unit"
        return f"unit\ninverse: {textio.format_ring(ring.invert_unit(a))}"
    if args.other is None:
        raise ExprSyntaxError(f"ring {args.action} needs two expressions")
    b = textio.parse_ring_expr(p, args.other)
    if args.action == "eq":
        return "true" if ring.ring_eq(a, b) else "false"
    return textio.format_ring(a * b)


def cmd_group(args):
    p = _params(args)
    if args.action == "relators":
        return str(group.check_presentation(p, args.samples))
    if args.action == "word":
        if not args.input:
            raise ExprSyntaxError("group word needs a word or a word file")
        word = textio.parse_word(p, _text_or_file(args.input[0]))
        return textio.format_element(group.eval_word(p, word))
    if not args.input:
        raise ExprSyntaxError(f"group {args.action} needs an element")
    g = textio.parse_element(p, args.input[0])
    if args.action == "inv":
        return textio.format_element(g.inverse())
    if args.action == "normal-form":
        return textio.format_lamp_config(lampstand.to_lamp_config(g))
    if len(args.input) < 2:
        raise ExprSyntaxError("group mul needs two elements")
    return textio.format_element(g * textio.parse_element(p, args.input[1]))


def cmd_graph(args):
    p = _params(args)
    if args.action == "label":
        if not args.element:
            raise ExprSyntaxError("graph label needs an element")
        return str(graph.vertex_label(textio.parse_element(p, args.element)))
    cg = graph.CayleyGraph(p, args.cap)
    if args.action == "stats" or args.stats:
        sizes = cg.sphere_sizes(args.radius)
        return "radius,count\n" + "\n".join(f"{r},{n}" for r, n in enumerate(sizes))
    return "\n".join(textio.format_element(g) for g in cg.ball(args.radius))


def _rep(p: GroupParams, value: str | None, flag: str) -> aut.AutRep:
    if value is None:
        raise ExprSyntaxError(f"missing {flag}")
    return textio.parse_autrep(p, _text_or_file(value))


def cmd_aut(args):
    p = _params(args)
    if args.action == "phi-enumerate":
        mode = "guided" if args.guided else "exhaustive"
        result = aut.enumerate_phi(p, args.bound, mode, args.max_space, args.jobs)
        lines = [textio.format_matrix(b) for b in result.matrices]
        flag = "exhaustive" if result.exhaustive else "non-exhaustive (guided)"
        lines.append(f"# {len(result.matrices)} matrices, {flag}")
        return "\n".join(lines)
    if args.action == "inner":
        if not args.element:
            raise ExprSyntaxError("aut inner needs an element")
        return textio.format_autrep(aut.inner(textio.parse_element(p, args.element)))
    phi = _rep(p, args.rep, "--rep")
    if args.action == "apply":
        if not args.element:
            raise ExprSyntaxError("aut apply needs an element")
        return textio.format_element(aut.aut_apply(phi, textio.parse_element(p, args.element)))
    if args.action == "compose":
        return textio.format_autrep(aut.aut_compose(phi, _rep(p, args.rep2, "--rep2")))
    return str(aut.outer_class(phi))


def cmd_twisted(args):
    if args.action == "reidemeister":
        if not args.beta:
            raise ExprSyntaxError("twisted reidemeister needs --beta")
        return str(twisted.reidemeister_zd(textio.parse_matrix(args.beta)))
    if args.action == "verify":
        if not args.file:
            raise ExprSyntaxError("twisted verify needs a certificate file")
        cert = twisted.verify_certificate(_text_or_file(args.file))
        return cert.to_text().rstrip("\n")
    p = _params(args)
    cert = twisted.rinf_report(_rep(p, args.rep, "--rep"), args.witnesses)
    return cert.to_text().rstrip("\n")


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="number of trees d")
    common.add_argument("--q", type=int, help="coefficient modulus q")
    common.add_argument("--l", help="residues l_1,...,l_{d-1} (default 0,1,...)")
    common.add_argument("--config", help="key=value file with d, q, l; overrides the flags")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")

    parser = argparse.ArgumentParser(prog="dlgroup", description="Diestel-Leader group toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("params-check", help="validate (d, q, l)")
    pc.add_argument("D", type=int)
    pc.add_argument("Q", type=int)
    pc.add_argument("L")
    pc.set_defaults(func=cmd_params_check)

    pr = sub.add_parser("ring", parents=[common], help="ring arithmetic")
    pr.add_argument("action", choices=["decompose", "eq", "mul", "unit"])
    pr.add_argument("expr")
    pr.add_argument("other", nargs="?")
    pr.set_defaults(func=cmd_ring)

    pg = sub.add_parser("group", parents=[common], help="group arithmetic")
    pg.add_argument("action", choices=["mul", "inv", "normal-form", "word", "relators"])
    pg.add_argument("input", nargs="*", help="elements '[k,...] ; expr', or a word / word file")
    pg.add_argument("--samples", type=int, default=200)
    pg.set_defaults(func=cmd_group)

    pgr = sub.add_parser("graph", parents=[common], help="Cayley graph and DL vertex labels")
    pgr.add_argument("action", choices=["ball", "label", "stats"])
    pgr.add_argument("element", nargs="?")
    pgr.add_argument("--radius", type=int, default=1)
    pgr.add_argument("--stats", action="store_true", help="print sphere sizes as CSV")
    pgr.add_argument("--cap", type=int, default=graph.DEFAULT_BALL_CAP)
    pgr.set_defaults(func=cmd_graph)

    pa = sub.add_parser("aut", parents=[common], help="automorphisms")
    pa.add_argument("action", choices=["phi-enumerate", "apply", "compose", "inner", "outer-class"])
    pa.add_argument("element", nargs="?")
    pa.add_argument("--bound", type=int, default=1)
    mode = pa.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--guided", action="store_true")
    pa.add_argument("--max-space", type=int, default=aut.DEFAULT_MAX_SPACE)
    pa.add_argument("--rep", help="automorphism text or file")
    pa.add_argument("--rep2", help="second automorphism for compose")
    pa.set_defaults(func=cmd_aut)

    pt = sub.add_parser("twisted", parents=[common], help="twisted conjugacy")
    pt.add_argument("action", choices=["reidemeister", "rinf", "verify"])
    pt.add_argument("file", nargs="?", help="certificate file for verify")
    pt.add_argument("--beta", help="integer matrix, e.g. [[0,1],[-1,-1]]")
    pt.add_argument("--rep", help="automorphism text or file")
    pt.add_argument("--witnesses", type=int, default=twisted.DEFAULT_WITNESSES)
    pt.set_defaults(func=cmd_twisted)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except DLGroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
