"""Command-line interface.

Exit codes: 0 success, 1 domain error (unsupported grid, cap exceeded, improper
set), 2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import algebra, constructions, covers, hyperplanes, verify
from .errors import ConstructionError, InvalidSetError, UnsupportedDomainError, WdcError
from .grid import Grid, is_su2, layer_size, parse_grid, su2_by_dims, su2_by_layers
from .weightsets import (
    WeightSet,
    is_admitting,
    is_admitting_at,
    l_bar,
    l_step,
    parse_weightset,
    stabilization_index,
)

EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- output


def emit(rows: list[dict], columns: list[str], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump(rows, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({c: _cell(r.get(c)) for c in columns})
        out.write(buf.getvalue())
        return
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# ---------------------------------------------------------------- parsing helpers


def _grid(args) -> Grid:
    try:
        return parse_grid(args.grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _set(n_max: int, text: str) -> WeightSet:
    try:
        return parse_weightset(n_max, text)
    except (InvalidSetError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _sets(n_max: int, text: str | None, sweep: bool, proper: bool = True) -> list[WeightSet]:
    """One parsed set, or every subset of ``[0, N]`` for ``all``."""
    if sweep or text == "all":
        top = (1 << (n_max + 1)) - (1 if proper else 0)
        return [WeightSet.from_bits(n_max, b) for b in range(top)]
    if text is None:
        raise UsageError("give --set or --all")
    return [_set(n_max, text)]


def _fmt(args) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "csv", False):
        return "csv"
    return "table"


# ---------------------------------------------------------------- commands


def cmd_layers(args) -> int:
    g = _grid(args)
    rows = [{"weight": j, "size": layer_size(g, j)} for j in range(g.N + 1)]
    emit(rows, ["weight", "size"], _fmt(args))
    return 0


def cmd_su2(args) -> int:
    g = _grid(args)
    row = {"grid": g.spec(), "N": g.N, "by_dims": su2_by_dims(g), "layers": su2_by_layers(g),
           "su2": is_su2(g)}
    emit([row], list(row), _fmt(args))
    return 0


def cmd_lbar(args) -> int:
    if args.N < 0 or not 0 <= args.d <= args.N:
        raise UsageError(f"need 0 <= d <= N, got N={args.N}, d={args.d}")
    E = _set(args.N, args.set)
    step = l_step(args.N, args.d, E)
    fix = l_bar(args.N, args.d, E)
    fmt = _fmt(args)
    if fmt == "table":
        print(f"{step.to_text()} → fixpoint {fix.to_text()}")
        if args.steps:
            print(f"stabilizes after {stabilization_index(args.N, args.d, E)} steps")
        return 0
    row = {"N": args.N, "d": args.d, "set": E.to_text(), "step": step.to_text(),
           "fixpoint": fix.to_text()}
    if args.steps:
        row["steps"] = stabilization_index(args.N, args.d, E)
    emit([row], list(row), fmt)
    return 0


def cmd_admitting(args) -> int:
    if not 0 <= args.d <= args.N:
        raise UsageError(f"need 0 <= d <= N, got N={args.N}, d={args.d}")
    E = _set(args.N, args.set)
    if args.i is not None:
        row = {"set": E.to_text(), "d": args.d, "i": args.i,
               "admitting": is_admitting_at(args.N, args.d, args.i, E)}
    else:
        cert = is_admitting(args.N, args.d, E)
        row = {"set": E.to_text(), "d": args.d, "admitting": cert.witnessed,
               "i": cert.i if cert.witnessed else None}
    emit([row], ["set", "d", "i", "admitting"], _fmt(args))
    return 0


def cmd_closure(args) -> int:
    g = _grid(args)
    if not 0 <= args.d <= g.N:
        raise UsageError(f"degree {args.d} outside [0, {g.N}]")
    E = _set(g.N, args.set)
    fmt = _fmt(args)
    result: dict = {"grid": g.spec(), "d": args.d, "set": E.to_text(), "mode": args.mode}
    if args.mode == "zstar":
        star = algebra.z_star_closure(g, args.d, E)
        result["closure"] = star.to_text()
        if g.uniform and is_su2(g):
            result["lbar"] = l_bar(g.N, args.d, E).to_text()
            result["agree"] = result["lbar"] == result["closure"]
        cols = ["grid", "d", "set", "closure", "lbar", "agree"]
    elif args.mode == "z":
        S = algebra.weight_points(g, E)
        extra = sorted(algebra.z_closure(g, args.d, S) - S)
        result["extra_points"] = [list(p) for p in extra]
        result["extra"] = " ".join("(" + ",".join(map(str, p)) + ")" for p in extra) or "none"
        cols = ["grid", "d", "set", "extra"]
    else:
        prof = algebra.hilbert_fn(g, args.d, E)
        result["hilbert"] = prof.value
        if g.is_cube:
            result["formula"] = algebra.hilbert_formula(g.N, args.d, E)
        cols = ["grid", "d", "set", "hilbert", "formula"]
    if args.witness:
        basis = algebra.vanishing_basis(g, args.d, algebra.weight_points(g, E))
        result["basis"] = [p.to_json() for p in basis]
        result["basis_text"] = [str(p) for p in basis]
    if fmt == "json":
        result.pop("extra", None)
        result.pop("basis_text", None)
        emit([result], cols, fmt)
        return 0
    emit([result], cols, fmt)
    if args.witness and fmt == "table":
        print(f"vanishing basis ({len(result['basis_text'])} polynomials):")
        for text in result["basis_text"]:
            print(f"  {text}")
    return 0


def _cover_row(g: Grid, E: WeightSet) -> dict:
    row: dict = {"set": E.to_text(), "size": len(E)}
    su2 = g.uniform and is_su2(g)
    if su2:
        row["pc"] = covers.pc(g, E)
        row["ppc"] = covers.ppc(g, E)
        if g.is_cube:
            row["hc"] = covers.hc_cube(g, E)
            row["phc"] = covers.phc_cube(g, E)
            row["epc"] = covers.epc_cube(g, E)
    if g.uniform:
        b = covers.ehc_bounds(g, E)
        row["ehc_lower"], row["ehc_upper"], row["ehc_status"] = b.lower, b.upper, b.status
    return row


def cmd_covers(args) -> int:
    g = _grid(args)
    if not (g.uniform and is_su2(g)):
        raise UnsupportedDomainError(
            f"{g} is not a strictly unimodal uniform grid; use the hcover subcommand for oracles"
        )
    rows = [_cover_row(g, E) for E in _sets(g.N, args.set, args.all)]
    cols = ["set", "size", "pc", "ppc", "hc", "phc", "epc", "ehc_lower", "ehc_upper", "ehc_status"]
    emit(rows, cols, _fmt(args))
    return 0


def cmd_hcover(args) -> int:
    g = _grid(args)
    rows = []
    for E in _sets(g.N, args.set, args.all):
        if E.is_full():
            raise InvalidSetError("the full interval has no proper cover")
        row: dict = {"set": E.to_text(), "size": len(E),
                     "oracle_pc": algebra.pc_oracle(g, E),
                     "oracle_ppc": algebra.ppc_oracle(g, E),
                     "oracle_epc": algebra.epc_oracle(g, E)}
        row["oracle_hc"] = hyperplanes.hc_oracle(g, E)
        row["oracle_phc"] = hyperplanes.phc_oracle(g, E)
        row["oracle_ehc"] = hyperplanes.ehc_oracle(g, E)
        rows.append(row)
    cols = ["set", "size", "oracle_pc", "oracle_ppc", "oracle_hc", "oracle_phc",
            "oracle_epc", "oracle_ehc"]
    emit(rows, cols, _fmt(args))
    return 0


def cmd_witness(args) -> int:
    kind = args.kind
    if kind in ("pairing", "t2"):
        if args.n is None:
            raise UsageError(f"--n is required for {kind}")
        if kind == "pairing":
            if args.i is None:
                raise UsageError("--i is required for pairing")
            polys = [constructions.pairing_poly(args.n, args.i)]
        else:
            polys = list(constructions.ehc_t2_family(args.n).forms)
    else:
        if args.grid is None:
            raise UsageError(f"--grid is required for {kind}")
        g = _grid(args)
        if kind == "t1":
            polys = [constructions.ehc_t1_form(g)]
        else:
            if args.set is None:
                raise UsageError(f"--set is required for {kind}")
            E = _set(g.N, args.set)
            fn = constructions.ppc_witness if kind == "ppc" else constructions.level_product
            polys = [fn(g, E)]
    if _fmt(args) == "json":
        json.dump([p.to_json() for p in polys], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for p in polys:
            print(p)
    return 0


def cmd_verify(args) -> int:
    only = None
    if args.only:
        try:
            only = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError(f"bad --only list {args.only!r}") from None
    failed = False
    for res in verify.run_all(slow=args.slow or None, only=only):
        print(res.line(), flush=True)
        if res.gating and not res.passed:
            failed = True
    return EXIT_VERIFY if failed else 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(float(s)) for s in args.sizes.split(",")]
    except ValueError:
        raise UsageError(f"bad --sizes list {args.sizes!r}") from None
    rows = []
    for N in sizes:
        rows.append({"N": N, "seconds": round(verify.time_lbar(N, repeats=args.repeats), 6)})
    by_n = {r["N"]: r["seconds"] for r in rows}
    status = 0
    if 10**5 in by_n and 10**6 in by_n:
        ratio = by_n[10**6] / max(by_n[10**5], 1e-9)
        for r in rows:
            r["ratio_1e6_1e5"] = round(ratio, 2)
        if ratio >= 20:
            status = EXIT_VERIFY
    emit(rows, ["N", "seconds", "ratio_1e6_1e5"], _fmt(args))
    return status


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--csv", action="store_true", help="CSV output")
    group.add_argument("--json", action="store_true", help="JSON output")

    parser = argparse.ArgumentParser(
        prog="wdclosure",
        description="Closures and covering numbers of weight-determined sets in finite grids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layers", parents=[fmt], help="layer sizes of a grid")
    p.add_argument("--grid", required=True, help='e.g. "3,3", "cube:5", "0,1,3|0,1,3"')
    p.set_defaults(func=cmd_layers)

    p = sub.add_parser("su2", parents=[fmt], help="strict unimodality test")
    p.add_argument("--grid", required=True)
    p.set_defaults(func=cmd_su2)

    p = sub.add_parser("lbar", parents=[fmt], help="one L step and the L-bar fixpoint")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--set", required=True, help='e.g. "1,3,5", "0-2", "t:2", "parity:0"')
    p.add_argument("--steps", action="store_true", help="also count naive iteration steps")
    p.set_defaults(func=cmd_lbar)

    p = sub.add_parser("admitting", parents=[fmt], help="(d, i)-admitting test")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--i", type=int, help="test one tail index instead of searching")
    p.set_defaults(func=cmd_admitting)

    p = sub.add_parser("closure", parents=[fmt], help="brute-force closures and Hilbert function")
    p.add_argument("--grid", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--mode", choices=["zstar", "z", "hilbert"], default="zstar")
    p.add_argument("--witness", action="store_true", help="print a vanishing basis")
    p.set_defaults(func=cmd_closure)

    for name, func, text in [("covers", cmd_covers, "closed-form covering numbers"),
                             ("hcover", cmd_hcover, "brute-force covering numbers")]:
        p = sub.add_parser(name, parents=[fmt], help=text)
        p.add_argument("--grid", required=True)
        p.add_argument("--set", help='a set spec, or "all"')
        p.add_argument("--all", action="store_true", help="every proper subset of [0, N]")
        p.set_defaults(func=func)

    p = sub.add_parser("witness", parents=[fmt], help="explicit verified constructions")
    p.add_argument("--kind", choices=["ppc", "level", "pairing", "t2", "t1"], required=True)
    p.add_argument("--grid")
    p.add_argument("--set")
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--slow", action="store_true", help="include the five-cube hyperplane sweep")
    p.add_argument("--only", help="comma-separated check numbers")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[fmt], help="time L-bar at growing N")
    p.add_argument("--sizes", default="1e4,1e5,1e6")
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except WdcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
