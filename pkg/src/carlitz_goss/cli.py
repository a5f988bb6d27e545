"""Command-line front end.

    carlitz-goss zeta poly --q 2 --ring A --n -1
    carlitz-goss zeta padic --q 3 --ring A --P t --n 1 --s 1
    carlitz-goss verify all --level quick
    carlitz-goss fitting --q 2 --ring A --prime t^2+t+1 --deformed

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 computation error.
JSON output is sorted and never contains timings or the worker count, so the
same arguments give the same bytes whatever the parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .acceptance import LEVELS, run_suite
from .algebra import ThetaPoly
from .errors import CarlitzGossError
from .formulas import (
    UnitBasis,
    check_theorem4,
    verify_deformed_K,
    verify_padic_K,
    verify_period_q2,
    verify_taelman_K,
)
from .modstruct import action_matrix, invariant_factors_A, invariant_factors_deformed
from .rings import parse_ring
from .zeta import ZetaConfig, tate_to_str, zeta_inf, zeta_padic, zeta_poly

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    def d(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized factor splitting")
    p.add_argument("--workers", type=int, default=d(None), help="worker processes (default: $CARLITZ_GOSS_WORKERS or 1)")
    p.add_argument("--format", choices=("json", "text"), default=d("json"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="carlitz-goss", description="Carlitz-Goss zeta values and class formula checks.")
    _global_flags(p, suppress=False)
    # the same flags are accepted after the subcommand; SUPPRESS keeps them
    # from overwriting values given before it
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    z = sub.add_parser("zeta", help="zeta values", parents=[common])
    zsub = z.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for kind in ("poly", "inf", "padic"):
        k = zsub.add_parser(kind, parents=[common])
        k.add_argument("--q", type=int, required=True)
        k.add_argument("--ring", default="A")
        k.add_argument("--n", type=int, required=True)
        if kind == "inf":
            k.add_argument("--prec", type=int, required=True)
        if kind == "padic":
            k.add_argument("--P", required=True)
            k.add_argument("--s", type=int, required=True)
            k.add_argument("--route", choices=("auto", "direct", "twist"), default="auto")

    v = sub.add_parser("verify", help="identity checks", parents=[common])
    vsub = v.add_subparsers(dest="identity", required=True, parser_class=_Parser)
    k = vsub.add_parser("taelman", parents=[common])
    k.add_argument("--q", type=int, default=2)
    k.add_argument("--prec", type=int, default=16)
    k = vsub.add_parser("deformed", parents=[common])
    k.add_argument("--q", type=int, default=2)
    k.add_argument("--zmax", type=int, default=5)
    k.add_argument("--prec", type=int, default=30)
    k = vsub.add_parser("padic", parents=[common])
    k.add_argument("--q", type=int, default=3)
    k.add_argument("--P", default="t")
    k.add_argument("--s", type=int, default=1)
    k = vsub.add_parser("period", parents=[common])
    k.add_argument("--prec", type=int, default=12)
    k = vsub.add_parser("theorem4", parents=[common])
    k.add_argument("--q", type=int, default=3)
    k.add_argument("--ring", default="A")
    k.add_argument("--P", default="t")
    k.add_argument("--s", type=int, default=1)
    k.add_argument("--basis", default=None, help="comma-separated unit basis (default {1} on A)")
    k.add_argument("--H", default=None, help="Fitting generator of the class module (default 1)")
    k = vsub.add_parser("all", parents=[common])
    k.add_argument("--level", choices=LEVELS, default="quick")

    f = sub.add_parser("fitting", help="Fitting ideal of C(O_L/p)", parents=[common])
    f.add_argument("--q", type=int, required=True)
    f.add_argument("--ring", default="A")
    f.add_argument("--prime", required=True)
    f.add_argument("--deformed", action="store_true")
    return p


def _run_config(args) -> dict:
    skip = {"workers", "format", "command", "kind", "identity"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip}
    return cfg


def _cmd_zeta(args, config: ZetaConfig) -> tuple[int, dict]:
    ring = parse_ring(args.ring, q=args.q)
    if args.kind == "poly":
        Z = zeta_poly(ring, args.n, config)
        return EXIT_PASS, {"flavor": "poly_in_z", "ring": str(ring), "n": args.n, "poly_in_z": tate_to_str(Z), "degree_bound": Z.zmax}
    if args.kind == "inf":
        return EXIT_PASS, zeta_inf(ring, args.n, args.prec, config).to_json()
    P = ThetaPoly.parse(args.P, ring.base)
    return EXIT_PASS, zeta_padic(ring, args.n, P, args.s, config, route=args.route).to_json()


def _report(rep) -> tuple[int, dict]:
    return (EXIT_PASS if rep.passed else EXIT_FAIL), rep.to_json()


def _cmd_verify(args, config: ZetaConfig) -> tuple[int, dict]:
    ident = args.identity
    if ident == "taelman":
        return _report(verify_taelman_K(args.q, args.prec, config))
    if ident == "deformed":
        return _report(verify_deformed_K(args.q, args.zmax, args.prec, config))
    if ident == "padic":
        return _report(verify_padic_K(args.q, args.P, args.s, config))
    if ident == "period":
        return _report(verify_period_q2(args.prec))
    if ident == "theorem4":
        ring = parse_ring(args.ring, q=args.q)
        if args.basis is None:
            basis = UnitBasis.auto(ring)
        else:
            basis = UnitBasis(ring, tuple(x.strip() for x in args.basis.split(",")), "cli")
        return _report(check_theorem4(ring, basis, args.H, args.P, args.s, config))
    results = run_suite(args.level, config)
    ok = all(r.passed for r in results)
    return (EXIT_PASS if ok else EXIT_FAIL), {"level": args.level, "pass": ok, "criteria": [r.to_json() for r in results]}


def _cmd_fitting(args, config: ZetaConfig) -> tuple[int, dict]:
    ring = parse_ring(args.ring, q=args.q)
    I = ring.ideal(args.prime)
    M = action_matrix(I, args.deformed)
    if args.deformed:
        inv = invariant_factors_deformed(M)
        factors = [tate_to_str(f) for f in inv.factors]
        fitting = tate_to_str(inv.fitting)
    else:
        inv = invariant_factors_A(M)
        factors = [str(f) for f in inv.factors]
        fitting = str(inv.fitting)
    return EXIT_PASS, {
        "ring": str(ring),
        "prime": str(I),
        "deformed": args.deformed,
        "invariant_factors": factors,
        "fitting": fitting,
        "cyclic": inv.is_cyclic,
    }


_DISPATCH = {"zeta": _cmd_zeta, "verify": _cmd_verify, "fitting": _cmd_fitting}


def _text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in payload)
    return f"{pad}{payload}"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = ZetaConfig.from_env(args.workers)
    out = {"version": __version__, "command": args.command, "config": _run_config(args)}
    sub = getattr(args, "kind", None) or getattr(args, "identity", None)
    if sub:
        out["subcommand"] = sub
    try:
        code, result = _DISPATCH[args.command](args, config)
        out["result"] = result
    except CarlitzGossError as exc:
        code = EXIT_COMPUTE
        out["error"] = {"code": exc.code, "message": str(exc)}
    except (ValueError, ArithmeticError) as exc:
        code = EXIT_COMPUTE
        out["error"] = {"code": "error", "message": str(exc)}
    out["exit_code"] = code
    if args.format == "json":
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_text(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
