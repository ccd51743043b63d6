"""Command-line front end.

Commands: count, expr, table, bench, oracle, selftest.  Machine formats
serialize every count as a decimal string, since values overflow 64-bit
integers almost immediately.  Exit codes: 0 success, 1 usage error,
2 resource guard refusal, 3 self-test mismatch.
"""

import argparse
import io
import json
import os
import sys
import time
from math import factorial

from . import bench, expressions, formulas, oracle, selftest
from .guards import ResourceGuardError, max_terms_limit


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad arguments; the contract reserves 2 for
    # resource guards, so route usage problems through exit code 1.
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            a, b = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"bad range {text!r}; expected a..b") from None
        if a > b:
            raise UsageError(f"empty range {text!r}")
        return a, b
    try:
        v = int(text)
    except ValueError:
        raise UsageError(f"bad value {text!r}; expected an integer or a..b") from None
    return v, v


def _parse_single(text: str) -> int:
    lo, hi = _parse_range(text)
    if lo != hi:
        raise UsageError(f"this command takes a single n, not a range ({text!r})")
    return lo


def _parse_halls(text: str):
    halls = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        row, sep, floor = piece.partition(":")
        if not sep:
            raise UsageError(f"bad hall {piece!r}; expected row:floor")
        try:
            halls.append((int(row), int(floor)))
        except ValueError:
            raise UsageError(f"bad hall {piece!r}; expected row:floor") from None
    return halls


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_line(payload) -> str:
    return json.dumps(payload, separators=(",", ":")) + "\n"


def _count_payload(result: formulas.CountResult) -> dict:
    payload = {
        "k": result.k,
        "n": result.n,
        "variant": result.variant,
        "method": result.method,
        "value": str(result.value),
        "terms": str(result.stats.terms),
        "adds": str(result.stats.adds),
        "mults": str(result.stats.mults),
        "elapsed_ms": round(result.stats.elapsed * 1000.0, 3),
    }
    if result.note:
        payload["note"] = result.note
    return payload


def _render_count(result: formulas.CountResult, fmt: str) -> str:
    if fmt == "json":
        return _json_line(_count_payload(result))
    if fmt == "csv":
        p = _count_payload(result)
        keys = ["k", "n", "variant", "method", "value", "terms", "adds", "mults", "elapsed_ms"]
        return ",".join(keys) + "\n" + ",".join(str(p[key]) for key in keys) + "\n"
    label = "R" if result.variant == "reduced" else "L"
    lines = [f"{label}_{result.k}({result.n}) = {result.value}"]
    lines.append(
        f"method={result.method} terms={result.stats.terms} adds={result.stats.adds} "
        f"mults={result.stats.mults} elapsed_ms={result.stats.elapsed * 1000.0:.3f}"
    )
    if result.note:
        lines.append(f"note: {result.note}")
    return "\n".join(lines) + "\n"


def _default_threads() -> int:
    return os.cpu_count() or 1


def _cmd_count(args) -> int:
    method = args.method
    total_only = method in ("direct-L", "factorial-bridge")
    if args.reduced and total_only:
        raise UsageError(f"--method {method} computes totals; drop --reduced")
    variant = "total" if (args.total or total_only) else "reduced"
    threads = args.threads if args.threads else _default_threads()
    if method == "formula" and variant == "total":
        method = "factorial-bridge"
    if method == "formula":
        result = formulas.reduced_count(
            args.k, args.n, threads=threads, max_terms=args.max_terms
        )
    elif method == "factorial-bridge":
        result = formulas.total_count(
            args.k, args.n, threads=threads, max_terms=args.max_terms
        )
    elif method == "direct-L":
        result = formulas.total_count_direct(
            args.k, args.n, args.bracket, threads=threads, max_terms=args.max_terms
        )
    else:  # oracle
        start = time.perf_counter()
        value = oracle.brute_force_count(args.k, args.n, variant)
        elapsed = time.perf_counter() - start
        result = formulas.CountResult(
            args.k, args.n, variant, "oracle", value, formulas.EvalStats(0, 0, 0, elapsed)
        )
    _emit(_render_count(result, args.format), args.out)
    return 0


def _cmd_expr(args) -> int:
    try:
        expr = expressions.generate_expression(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(expressions.render(expr, args.format) + "\n", args.out)
    return 0


def _cmd_table(args) -> int:
    lo, hi = args.n
    threads = args.threads if args.threads else _default_threads()
    rows = []
    for n in range(lo, hi + 1):
        if args.method == "oracle":
            reduced = oracle.brute_force_count(args.k, n)
        else:
            reduced = formulas.reduced_count(
                args.k, n, threads=threads, max_terms=args.max_terms
            ).value
        rows.append((n, reduced, factorial(n) * reduced))
    if args.format == "json":
        payload = {
            "k": args.k,
            "method": args.method,
            "rows": [
                {"n": n, "reduced": str(r), "total": str(t)} for n, r, t in rows
            ],
        }
        _emit(_json_line(payload), args.out)
    elif args.format == "csv":
        lines = ["k,n,reduced,total"]
        lines += [f"{args.k},{n},{r},{t}" for n, r, t in rows]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        width_r = max(len(str(r)) for _, r, _ in rows)
        lines = [f"{'n':>4}  {'R_' + str(args.k) + '(n)':<{width_r + 2}}  L_{args.k}(n)"]
        lines += [f"{n:>4}  {r!s:<{width_r + 2}}  {t}" for n, r, t in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_bench(args) -> int:
    lo, hi = args.n
    out_path = args.out or args.csv
    fmt = args.format
    if args.csv and args.format == "json":
        raise UsageError("--csv writes CSV; drop --format json or use --out")
    if args.csv:
        fmt = "csv"
    sw = bench.sweep(args.k, range(lo, hi + 1), max_terms=args.max_terms)
    buf = io.StringIO()
    if fmt == "json":
        bench.write_json_lines(buf, sw)
    else:
        bench.write_csv(buf, sw)
    _emit(buf.getvalue(), out_path)
    return 0


def _cmd_oracle(args) -> int:
    variant = "total" if args.total else "reduced"
    guard = {}
    if args.max_k is not None:
        guard["max_k"] = args.max_k
    if args.max_n is not None:
        guard["max_n"] = args.max_n
    if args.halls is not None:
        halls = _parse_halls(args.halls)
        if args.total:
            raise UsageError("--halls counts reduced configurations; drop --total")
        value = oracle.lonely_hall_count(args.k, args.n, halls, **guard)
        profile = oracle.profile_of(halls, args.k, args.n)
        if args.format == "json":
            payload = {
                "k": args.k,
                "n": args.n,
                "halls": sorted([list(h) for h in set(map(tuple, halls))]),
                "profile": list(profile),
                "value": str(value),
            }
            _emit(_json_line(payload), args.out)
        else:
            _emit(
                f"configurations omitting {sorted(set(halls))}: {value}\n"
                f"profile={profile}\n",
                args.out,
            )
        return 0
    value = oracle.brute_force_count(args.k, args.n, variant, **guard)
    if args.format == "json":
        payload = {
            "k": args.k,
            "n": args.n,
            "variant": variant,
            "method": "oracle",
            "value": str(value),
        }
        _emit(_json_line(payload), args.out)
    else:
        label = "R" if variant == "reduced" else "L"
        _emit(f"{label}_{args.k}({args.n}) = {value}  (brute force)\n", args.out)
    return 0


def _cmd_selftest(args) -> int:
    report = selftest.run_selftest(max_k=args.k, max_n=args.n)
    if args.format == "json":
        payload = {
            "suites": [
                {
                    "name": s.name,
                    "checks": s.checks,
                    "failures": s.failures,
                    "counterexample": s.counterexample,
                }
                for s in report.suites
            ],
            "notes": list(report.notes),
            "ok": report.ok,
        }
        _emit(_json_line(payload), args.out)
    else:
        lines = []
        for s in report.suites:
            lines.append(f"suite {s.name}: {s.checks} checks, {s.failures} failures")
        for note in report.notes:
            lines.append(f"note: {note}")
        lines.append("selftest: OK" if report.ok else "selftest: FAILED")
        _emit("\n".join(lines) + "\n", args.out)
    if not report.ok:
        print(f"counterexample: {report.first_counterexample()}", file=sys.stderr)
        return 3
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="latinrect", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, formats, default_fmt):
        p.add_argument("--format", choices=formats, default=default_fmt)
        p.add_argument("--out", metavar="PATH", default=None)

    p_count = sub.add_parser("count", help="count k-by-n Latin rectangles")
    p_count.add_argument("--k", type=int, required=True)
    p_count.add_argument("--n", type=_parse_single, required=True)
    group = p_count.add_mutually_exclusive_group()
    group.add_argument("--reduced", action="store_true", help="count reduced rectangles (default)")
    group.add_argument("--total", action="store_true")
    p_count.add_argument(
        "--method",
        choices=["formula", "oracle", "factorial-bridge", "direct-L"],
        default="formula",
    )
    p_count.add_argument("--bracket", choices=["derived", "literal"], default="derived")
    p_count.add_argument("--max-terms", type=int, default=None)
    p_count.add_argument("--threads", type=int, default=None)
    add_common(p_count, ["human", "json", "csv"], "human")
    p_count.set_defaults(fn=_cmd_count)

    p_expr = sub.add_parser("expr", help="print the symbolic formula for a given k")
    p_expr.add_argument("--k", type=int, required=True)
    p_expr.add_argument("--format", choices=["text", "latex"], default="text")
    p_expr.add_argument("--out", metavar="PATH", default=None)
    p_expr.set_defaults(fn=_cmd_expr)

    p_table = sub.add_parser("table", help="tabulate counts over a range of n")
    p_table.add_argument("--k", type=int, required=True)
    p_table.add_argument("--n", type=_parse_range, required=True, metavar="N|A..B")
    p_table.add_argument("--method", choices=["formula", "oracle"], default="formula")
    p_table.add_argument("--max-terms", type=int, default=None)
    p_table.add_argument("--threads", type=int, default=None)
    add_common(p_table, ["human", "json", "csv"], "human")
    p_table.set_defaults(fn=_cmd_table)

    p_bench = sub.add_parser("bench", help="operation-count sweep (single-threaded)")
    p_bench.add_argument("--k", type=int, required=True)
    p_bench.add_argument("--n", type=_parse_range, required=True, metavar="N|A..B")
    p_bench.add_argument("--csv", metavar="PATH", default=None, help="write CSV to PATH")
    p_bench.add_argument("--max-terms", type=int, default=None)
    add_common(p_bench, ["csv", "json"], "csv")
    p_bench.set_defaults(fn=_cmd_bench)

    p_oracle = sub.add_parser("oracle", help="brute-force counts and hall-set probes")
    p_oracle.add_argument("--k", type=int, required=True)
    p_oracle.add_argument("--n", type=_parse_single, required=True)
    group = p_oracle.add_mutually_exclusive_group()
    group.add_argument("--reduced", action="store_true", help="count reduced rectangles (default)")
    group.add_argument("--total", action="store_true")
    p_oracle.add_argument(
        "--halls",
        metavar="R:F,R:F,...",
        default=None,
        help="count configurations omitting these (row, floor) halls",
    )
    p_oracle.add_argument("--max-k", type=int, default=None, help="raise the search guard")
    p_oracle.add_argument("--max-n", type=int, default=None, help="raise the search guard")
    add_common(p_oracle, ["human", "json"], "human")
    p_oracle.set_defaults(fn=_cmd_oracle)

    p_self = sub.add_parser("selftest", help="run the cross-validation suites")
    p_self.add_argument("--k", type=int, default=selftest.DEFAULT_MAX_K, help="depth cap on k")
    p_self.add_argument("--n", type=int, default=selftest.DEFAULT_MAX_N, help="depth cap on n")
    add_common(p_self, ["human", "json"], "human")
    p_self.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "max_terms", None) is not None:
            max_terms_limit(args.max_terms)  # validate early
        return args.fn(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"latinrect: error: {exc}", file=sys.stderr)
        return 1
    except ResourceGuardError as exc:
        print(f"latinrect: refused: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    raise SystemExit(main())
