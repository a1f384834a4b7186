"""Command-line front end: series expansion, table emission, identity checks.

Exit codes: 0 success, 1 failed check, 2 unknown series id, 3 insufficient
truncation order for the requested tables.
"""

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import enriques, perverse
from .checks import CHECKS, run_checks
from .series import Window

SERIES_IDS = (
    "pt-fiber",
    "pt-fiber-full",
    "keyeq-rhs1",
    "keyeq-rhs2",
    "ky-logZ",
    "asympt-gf",
    "betti-infty",
    "omega-half-integral",
)


def _parse_window(text):
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def _parse_range(text):
    if ":" in text:
        lo, _, hi = text.partition(":")
        return int(lo), int(hi)
    d = int(text)
    return d, d


def _betti(args):
    if getattr(args, "betti_file", None):
        with open(args.betti_file, "r", encoding="utf-8") as fh:
            return perverse.BettiTable.from_records(json.load(fh))
    return perverse.BettiTable.default()


def _window(args):
    lo, hi = args.p_window
    return Window(2 * lo, 2 * hi, False)


def _emit(text, args, filename):
    if args.out:
        path = Path(args.out)
        path.mkdir(parents=True, exist_ok=True)
        (path / filename).write_text(text, encoding="utf-8")
        print(str(path / filename))
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _build_series(name, args):
    q_order = Fraction(args.q_order)
    window = _window(args)
    if name == "pt-fiber":
        return enriques.pt_fiber_series(q_order)
    if name == "pt-fiber-full":
        return enriques.pt_fiber_full(q_order, window)
    if name == "keyeq-rhs1":
        return perverse.ph_main_term(q_order)
    if name == "keyeq-rhs2":
        return perverse.ph_betti_term(_betti(args), q_order)
    if name == "ky-logZ":
        return enriques.local_enriques_log_pt(q_order)
    if name == "asympt-gf":
        return perverse.asymptotic_ph_gf(q_order)
    if name == "betti-infty":
        return perverse.asymptotic_betti_gf(q_order)
    if name == "omega-half-integral":
        return perverse.omega_half_integral_series(q_order)
    raise KeyError(name)


def cmd_expand(args):
    name = args.series_id
    if name not in SERIES_IDS:
        print(f"unknown series id {name!r}; known: {', '.join(SERIES_IDS)}", file=sys.stderr)
        return 2
    cache_dir = os.environ.get("SERIES_CACHE_DIR")
    cache_path = None
    if cache_dir:
        key = hashlib.sha256(
            json.dumps(
                {
                    "id": name,
                    "q_order": str(args.q_order),
                    "p_window": list(args.p_window),
                    "betti_file": args.betti_file,
                },
                sort_keys=True,
            ).encode()
        ).hexdigest()[:24]
        cache_path = Path(cache_dir) / f"{name}-{key}.json"
    if cache_path is not None and cache_path.exists():
        text = cache_path.read_text(encoding="utf-8")
    else:
        text = _build_series(name, args).dumps(indent=2) + "\n"
        if cache_path is not None:
            cache_path.parent.mkdir(parents=True, exist_ok=True)
            cache_path.write_text(text, encoding="utf-8")
    _emit(text, args, f"{name}.json")
    return 0


def cmd_tables(args):
    q_order = Fraction(args.q_order)
    d_lo, d_hi = args.d
    if q_order < d_hi + 1:
        print(
            f"q-order {q_order} cannot determine tables up to d={d_hi}; need at least {d_hi + 1}",
            file=sys.stderr,
        )
        return 3
    betti = _betti(args)
    main = perverse.ph_main_term(q_order)
    second = perverse.ph_betti_term(betti, q_order)
    for d in range(d_lo, d_hi + 1):
        table = perverse.perverse_table(d, betti, q_order, main, second)
        if args.format == "md":
            _emit(table.to_markdown(), args, f"table_d{d}.md")
        elif args.format == "csv":
            _emit(table.to_csv(), args, f"table_d{d}.csv")
        else:
            _emit(json.dumps(table.to_json_dict(), indent=2, sort_keys=True) + "\n", args, f"table_d{d}.json")
    for parity in ("odd", "even"):
        grid = enriques.fiber_ph_grid(parity)
        i_range = range(-1, 2)
        j_range = range(-2, 3) if parity == "even" else range(0, 1)
        if args.format == "md":
            _emit(perverse.grid_to_markdown(grid, i_range, j_range), args, f"table_fiber_{parity}.md")
        elif args.format == "csv":
            _emit(perverse.grid_to_csv(grid, i_range, j_range), args, f"table_fiber_{parity}.csv")
        else:
            data = [{"i": i, "j": j, "value": str(v)} for (i, j), v in sorted(grid.items()) if v]
            _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", args, f"table_fiber_{parity}.json")
    return 0


def cmd_check(args):
    names = args.checks.split(",") if args.checks else None
    if names:
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            print(f"unknown checks: {', '.join(unknown)}", file=sys.stderr)
            return 2
    results = run_checks(
        names,
        betti=_betti(args),
        q_order=Fraction(args.q_order),
        eta_prefactor=not args.eta_no_prefactor,
    )
    report = {"passed": all(r["passed"] for r in results), "checks": results}
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args, "check_report.json")
    for r in results:
        status = "pass" if r["passed"] else "FAIL"
        line = f"{status}  {r['name']}"
        if r["detail"] and not r["passed"]:
            line += f"  [{r['detail']}]"
        print(line, file=sys.stderr)
    return 0 if report["passed"] else 1


def _add_common(parser):
    parser.add_argument("--q-order", default="8", help="truncation order (rational, default 8)")
    parser.add_argument(
        "--p-window",
        type=_parse_window,
        default=(-10, 10),
        metavar="LO:HI",
        help="validity window for p exponents (default -10:10)",
    )
    parser.add_argument("--betti-file", default=None, help="JSON file with Betti input records")
    parser.add_argument("--out", default=None, help="output directory (default: stdout)")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="enrq",
        description="Exact q-series engine for refined curve counting on Enriques Calabi-Yau threefolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="expand a named series to canonical JSON")
    p_expand.add_argument("series_id", help=f"one of: {', '.join(SERIES_IDS)}")
    _add_common(p_expand)

    p_tables = sub.add_parser("tables", help="emit perverse-Hodge number tables")
    p_tables.add_argument("--d", type=_parse_range, default=(0, 4), help="degree or LO:HI range (default 0:4)")
    p_tables.add_argument("--format", choices=("md", "csv", "json"), default="md")
    _add_common(p_tables)

    p_check = sub.add_parser("check", help="run named identity checks")
    p_check.add_argument("--checks", default=None, help=f"comma list from: {', '.join(CHECKS)}")
    p_check.add_argument(
        "--eta-no-prefactor",
        action="store_true",
        help="negative control: drop the q^(scale/24) eta prefactor",
    )
    _add_common(p_check)

    args = parser.parse_args(argv)
    if args.command == "expand":
        return cmd_expand(args)
    if args.command == "tables":
        return cmd_tables(args)
    return cmd_check(args)


if __name__ == "__main__":
    sys.exit(main())
