"""Command-line front-end.

Subcommands: construct, verify, simulate, compare, enumerate.  Arrays are
exchanged in the plain-text format of pdakit.textio.  Exit codes: 0 success,
1 semantic failure (invalid array or decode failure), 2 usage or parameter
domain error, 3 cell-count cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import analysis, constructions, simulate, textio
from .constructions import (ConstructionParams, Family, ParamDomainError,
                            SizeCapError)
from .core import canonicalize, params_of, verify_pda
from .textio import PdaFormatError

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class _Out:
    """Writer for --out: a path or '-' for stdout."""

    def __init__(self, target: str):
        self.target = target

    def write(self, text: str) -> None:
        if self.target == "-":
            sys.stdout.write(text)
        else:
            with open(self.target, "w", encoding="ascii") as fh:
                fh.write(text)


def _common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0,
                     help="seed for anything randomized (default 0)")
    sub.add_argument("--out", default="-",
                     help="output path, or - for stdout (default)")
    sub.add_argument("--format", choices=("text", "csv"), default="text",
                     help="table output format (default text)")


def _fraction(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"ratio must be an exact fraction a/b, got {text!r}")
    try:
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pda",
        description="construct, verify, simulate and analyse placement "
                    "delivery arrays")
    subs = top.add_subparsers(dest="command", required=True)

    c = subs.add_parser("construct", help="generate an array from a family")
    c.add_argument("--family", required=True,
                   choices=[f.value for f in Family])
    c.add_argument("--q", type=int)
    c.add_argument("--z", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--t", type=int, default=None,
                   help="subset size (vector families, default 1); "
                        "cached fraction t for the mn family")
    c.add_argument("--k", type=int, help="user count (mn family only)")
    c.add_argument("--max-cells", type=int,
                   default=constructions.DEFAULT_CELL_CAP)
    _common(c)

    v = subs.add_parser("verify", help="check a file against C1-C3")
    v.add_argument("path")
    _common(v)

    s = subs.add_parser("simulate",
                        help="run placement, delivery and decoding")
    s.add_argument("path")
    s.add_argument("--files", type=int, default=None,
                   help="library size N (default: K)")
    s.add_argument("--packet-size", type=int,
                   default=simulate.DEFAULT_PACKET_SIZE)
    s.add_argument("--demand", default=None,
                   help="comma-separated file indices, one per user")
    s.add_argument("--random-demands", type=int, default=None,
                   help="simulate this many uniformly random demands")
    _common(s)

    p = subs.add_parser("compare",
                        help="rate/packet ratios against a mixed baseline")
    p.add_argument("--baseline", choices=("szg", "yctc"))
    p.add_argument("--q", type=int)
    p.add_argument("--z", type=int, default=None,
                   help="single z (default: sweep all z with w >= 2)")
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--table-iv", action="store_true",
                   help="preset: szg baseline, q=20, t=3, lambda=0.1")
    p.add_argument("--table-v", action="store_true",
                   help="preset: yctc baseline, q=20, lambda=0.5")
    _common(p)

    e = subs.add_parser("enumerate",
                        help="families matching a user count and ratio")
    e.add_argument("--k", type=int)
    e.add_argument("--ratio", type=_fraction,
                   help="exact memory ratio a/b")
    e.add_argument("--include-dominated", action="store_true")
    e.add_argument("--table-iii", action="store_true",
                   help="preset: K=405, ratio 2/3")
    _common(e)
    return top


def _cmd_construct(args) -> int:
    family = Family(args.family)
    if family is Family.MN:
        if args.k is None or args.t is None:
            print("construct: mn needs --k and --t", file=sys.stderr)
            return EXIT_USAGE
        arr = constructions.construct_mn(args.k, args.t,
                                         max_cells=args.max_cells)
    else:
        if args.q is None or args.z is None or args.m is None:
            print("construct: vector families need --q, --z and --m",
                  file=sys.stderr)
            return EXIT_USAGE
        p = ConstructionParams(args.q, args.z, args.m,
                               1 if args.t is None else args.t)
        arr = constructions.construct(family, p, max_cells=args.max_cells)
    arr = canonicalize(arr)
    params = params_of(arr)
    _Out(args.out).write(textio.emit(arr))
    print(f"(K,F,Z,S)={params.as_tuple()} M/N={params.ratio} "
          f"R={params.rate}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    arr, header = textio.load_with_header(args.path)
    report = verify_pda(arr, declared_z=header.z, declared_s=header.s)
    if report.valid:
        params = params_of(arr)
        print(f"valid (K,F,Z,S)={params.as_tuple()} "
              f"M/N={params.ratio} R={params.rate}")
        return EXIT_OK
    print(f"invalid: {len(report.violations)} violation(s)")
    for v in report.violations:
        locs = " ".join(f"({j},{k})" for j, k in v.locations)
        print(f"  {v.condition} {locs + ' ' if locs else ''}{v.detail}")
    return EXIT_SEMANTIC


def _parse_demand(text: str, k: int) -> list[int]:
    try:
        demand = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"demand entries must be integers: {text!r}")
    if len(demand) != k:
        raise ValueError(f"demand must list {k} entries")
    return demand


def _cmd_simulate(args) -> int:
    arr, _ = textio.load_with_header(args.path)
    k = arr.k
    n = args.files if args.files is not None else k
    store = simulate.PacketStore.synthetic(n, arr.f, args.packet_size,
                                           args.seed)
    if args.demand is not None and args.random_demands is not None:
        print("simulate: --demand and --random-demands are exclusive",
              file=sys.stderr)
        return EXIT_USAGE
    if args.random_demands is not None:
        rng = np.random.default_rng(args.seed)
        demands = [list(map(int, rng.integers(1, n + 1, size=k)))
                   for _ in range(args.random_demands)]
    elif args.demand is not None:
        demands = [_parse_demand(args.demand, k)]
    else:
        demands = [[(i % n) + 1 for i in range(k)]]

    lines = [f"seed={args.seed} N={n} packet_size={store.packet_size}"]
    all_ok = True
    for demand in demands:
        log = simulate.deliver(arr, store, demand)
        report = simulate.decode_and_verify(arr, store, demand, log)
        all_ok &= report.success
        lines.append(f"demand={','.join(map(str, demand))}")
        if len(demands) == 1:
            lines.extend(log.trace_lines())
        lines.append(f"bytes_sent={report.bytes_sent} rate={report.rate}")
        for u in report.users:
            status = "ok" if u.ok else "FAIL " + "; ".join(u.problems)
            lines.append(f"user {u.user} file {u.demanded}: {status}")
        for problem in report.problems:
            lines.append(f"log problem: {problem}")
        lines.append(f"decode={'ok' if report.success else 'FAIL'}")
    _Out(args.out).write("\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_SEMANTIC


def _fmt15(x: float) -> str:
    return f"{x:.15g}"


def _cmd_compare(args) -> int:
    if args.table_iv:
        baseline, q, t, lam = "szg", 20, 3, 0.1
    elif args.table_v:
        baseline, q, t, lam = "yctc", 20, 1, 0.5
    else:
        baseline, q, t, lam = args.baseline, args.q, args.t, args.lam
        if baseline is None or q is None:
            print("compare: need --baseline and --q (or a preset)",
                  file=sys.stderr)
            return EXIT_USAGE
        if lam is None:
            lam = 0.1 if baseline == "szg" else 0.5
        if baseline == "szg" and t is None:
            print("compare: szg baseline needs --t", file=sys.stderr)
            return EXIT_USAGE
        if baseline == "yctc":
            t = 1
    if args.z is not None:
        zs = [args.z]
    else:
        # sweep the z where the advantage regime is reachable and both
        # table columns are defined
        zs = [z for z in range(1, q - 1)
              if (q - 1) // (q - z) >= 2]
    rows = []
    for z in zs:
        if baseline == "szg":
            res = analysis.compare_general(q, z, t, lam)
        else:
            res = analysis.compare_special(q, z, lam)
        rows.append((z, res.r_bound, res.f_value_or_bound))
    if args.format == "csv":
        out = ["z,r_bound,f_ratio"]
        out += [f"{z},{_fmt15(r)},{_fmt15(f)}" for z, r, f in rows]
    else:
        out = [f"baseline={baseline} q={q} t={t} lambda={lam:g}",
               f"{'z':>4} {'R_ratio<':>22} {'F_ratio':>22}"]
        out += [f"{z:>4} {_fmt15(r):>22} {_fmt15(f):>22}" for z, r, f in rows]
    _Out(args.out).write("\n".join(out) + "\n")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    if args.table_iii:
        k, ratio = 405, Fraction(2, 3)
    else:
        if args.k is None or args.ratio is None:
            print("enumerate: need --k and --ratio (or --table-iii)",
                  file=sys.stderr)
            return EXIT_USAGE
        k, ratio = args.k, args.ratio
    rows = analysis.enumerate_schemes(k, ratio,
                                      include_dominated=args.include_dominated)
    if args.format == "csv":
        out = ["family,q,z,m,t,R_num,R_den,lnF"]
        out += [f"{r.family},{r.q},{r.z},{r.m},{r.t},"
                f"{r.rate.numerator},{r.rate.denominator},{r.ln_f:.6f}"
                for r in rows]
    else:
        out = [f"K={k} M/N={ratio}: {len(rows)} scheme(s)",
               f"{'family':>12} {'q':>4} {'z':>4} {'m':>4} {'t':>2} "
               f"{'R':>8} {'lnF':>10}"]
        out += [f"{r.family.value:>12} {r.q:>4} {r.z:>4} {r.m:>4} {r.t:>2} "
                f"{float(r.rate):>8g} {r.ln_f:>10.4f}" for r in rows]
    _Out(args.out).write("\n".join(out) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "construct": _cmd_construct,
        "verify": _cmd_verify,
        "simulate": _cmd_simulate,
        "compare": _cmd_compare,
        "enumerate": _cmd_enumerate,
    }[args.command]
    try:
        return handler(args)
    except PdaFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeCapError as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParamDomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
