"""Command-line front end: every capability as a subcommand with
machine-readable output (json, csv, or text)."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import counting, graphs, optimize, search, verify

USAGE_ERROR = 2
DOMAIN_ERROR = 1


def _threads_default() -> int:
    env = os.environ.get("CHROMAX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _read_graph(path: str, fmt: str | None) -> graphs.Graph:
    if fmt is None:
        fmt = "g6" if path.endswith(".g6") else "el"
    with open(path, "rb") as fh:
        return graphs.decode(fh.read(), fmt)


def _parse_alpha(q: int, text: str) -> optimize.SubsetVector:
    """Parse '{3}=0.3;{1,2}=0.5;{1,2,3}=0.2'."""
    entries: dict[int, float] = {}
    for pair in text.split(";"):
        pair = pair.strip()
        if not pair:
            continue
        name, _, val = pair.partition("=")
        if not val:
            raise ValueError(f"alpha entry {pair!r} must look like '{{1,2}}=0.5'")
        entries[optimize.parse_subset_name(name)] = float(val)
    return optimize.SubsetVector(q, entries)


def _flatten(prefix: str, obj, out: dict) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list):
        out[prefix] = json.dumps(obj)
    else:
        out[prefix] = obj


def _emit(report: dict, output: str, text: str | None = None) -> None:
    if output == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    elif output == "csv":
        rows = report.get("rows")
        if rows is None:
            rows = [report]
        flat_rows = []
        for row in rows:
            flat: dict = {}
            _flatten("", row, flat)
            flat_rows.append(flat)
        fields = sorted({k for row in flat_rows for k in row})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        writer.writerows(flat_rows)
        print(buf.getvalue(), end="")
    else:
        print(text if text is not None else json.dumps(report, indent=2, sort_keys=True))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chromax",
        description="Exact machinery for maximizing the number of proper "
        "q-colorings of graphs with given vertex and edge counts.",
    )
    parser.add_argument(
        "--output", choices=("json", "csv", "text"), default="text",
        help="report format (default: text)",
    )
    parser.add_argument("--threads", type=int, default=None,
                        help="parallelism degree (default: CHROMAX_THREADS or 1)")
    parser.add_argument("--seed", type=int, default=0, help="seed for numeric solvers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count proper q-colorings of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=("el", "g6"), default=None)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=("backtracking", "polynomial"),
                   default="backtracking")

    p = sub.add_parser("chromatic", help="chromatic polynomial coefficients")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=("el", "g6"), default=None)

    p = sub.add_parser("construct", help="emit a named construction")
    p.add_argument("family",
                   choices=("turan", "semicomplete", "galpha", "sparse",
                            "linial", "pendant"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--center", choices=("smaller", "larger"), default="larger")
    p.add_argument("--alpha", help="subset vector, e.g. '{3}=0.5;{1,2}=0.5'")
    p.add_argument("--format", choices=("el", "g6"), default="el",
                   help="output graph format")

    p = sub.add_parser("opt", help="Problem 1: maximize obj over Feas(gamma)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--numeric", action="store_true",
                   help="use the numeric solver instead of the closed form")

    p = sub.add_parser("opt2", help="Problem 2: closed form or one partition")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--partition",
                   help="comma-separated part sizes, e.g. 2,2,3; omit for the closed form")

    p = sub.add_parser("sweep", help="Problem 2 over every partition of [q]")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("search", help="exhaustive extremal search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--t", type=int, help="clique size for --mode cliques")
    p.add_argument("--mode", choices=("max", "min", "cliques"), required=True)
    p.add_argument("--dedup", action="store_true")

    p = sub.add_parser("classify", help="match a graph against the extremal families")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=("el", "g6"), default=None)
    p.add_argument("--q", type=int, default=3)

    p = sub.add_parser("verify", help="run the numeric verification suite")
    p.add_argument("--samples", type=int, default=100_000)

    return parser


def _cmd_count(args) -> None:
    g = _read_graph(args.graph, args.format)
    value = counting.count_colorings(g, args.q, method=args.method)
    _emit({"n": g.n, "m": g.m, "q": args.q, "count": value}, args.output, str(value))


def _cmd_chromatic(args) -> None:
    g = _read_graph(args.graph, args.format)
    poly = counting.chromatic_polynomial(g)
    report = {"n": g.n, "m": g.m, "coefficients": list(poly.coefficients)}
    _emit(report, args.output, " ".join(str(c) for c in poly.coefficients))


def _require(args, names: list[str]) -> None:
    missing = [x for x in names if getattr(args, x) is None]
    if missing:
        raise ValueError(f"construct {args.family} needs --{', --'.join(missing)}")


def _cmd_construct(args) -> None:
    if args.family == "turan":
        _require(args, ["n", "r"])
        g = graphs.turan(args.n, args.r)
    elif args.family == "semicomplete":
        _require(args, ["a", "b", "r"])
        g = graphs.semi_complete(
            graphs.BipartitionSpec(args.a, args.b, args.r, args.center)
        )
    elif args.family == "galpha":
        _require(args, ["n", "q", "alpha"])
        alpha = _parse_alpha(args.q, args.alpha)
        if args.m is not None:
            g = graphs.g_alpha_prime(args.n, args.m, alpha, args.q)
        else:
            g = graphs.g_alpha(args.n, alpha, args.q)
    elif args.family == "sparse":
        _require(args, ["n", "m", "q"])
        g = graphs.sparse_optimal(args.n, args.m, args.q)
    elif args.family == "linial":
        _require(args, ["n", "m"])
        g = graphs.linial_graph(args.n, args.m)
    else:
        _require(args, ["a", "b"])
        g = graphs.pendant_graph(args.a, args.b)
    sys.stdout.write(graphs.encode(g, args.format).decode("ascii"))
    if args.format == "g6":
        sys.stdout.write("\n")


def _cmd_opt(args) -> None:
    if args.numeric:
        res = optimize.solve_opt1_numeric(args.q, args.gamma, seed=args.seed)
    elif args.q == 3:
        res = optimize.opt_closed_form_q3(args.gamma)
    else:
        res = optimize.opt_closed_form_sparse(args.q, args.gamma)
    report = {"q": args.q, "gamma": args.gamma, **res.to_dict()}
    text = f"value {res.value:.6f}"
    if res.regime:
        text += f"  regime ({res.regime})"
    _emit(report, args.output, text)


def _cmd_opt2(args) -> None:
    if args.partition:
        partition = tuple(int(x) for x in args.partition.split(","))
        res = optimize.solve_opt2_partition(args.q, partition, seed=args.seed)
        report = {"q": args.q, "partition": sorted(partition, reverse=True),
                  **res.to_dict()}
    else:
        res = optimize.opt2_closed_form(args.q)
        report = {"q": args.q, **res.to_dict()}
    _emit(report, args.output, f"value {res.value:.9f}")


def _cmd_sweep(args) -> None:
    sweep = optimize.solve_opt2_all_partitions(args.q, seed=args.seed)
    report = sweep.to_dict()
    lines = [
        f"{'+'.join(str(p) for p in parts):>16}  {res.value: .9f}"
        + ("  <= argmax" if parts == sweep.argmax_partition else "")
        for parts, res in sweep.rows
    ]
    _emit(report, args.output, "\n".join(lines))


def _cmd_search(args, threads: int) -> None:
    if args.mode == "cliques":
        if args.t is None:
            raise ValueError("--mode cliques needs --t")
        rep = search.search_max_cliques(
            args.n, args.m, args.t, dedup=args.dedup, threads=threads
        )
    else:
        if args.q is None:
            raise ValueError(f"--mode {args.mode} needs --q")
        fn = (
            search.search_max_colorings
            if args.mode == "max"
            else search.search_min_colorings
        )
        rep = fn(args.n, args.m, args.q, dedup=args.dedup, threads=threads)
    d = rep.to_dict()
    text = "\n".join(
        [f"extremal value {rep.extremal_value} over {rep.graphs_examined} graphs"]
        + [
            f"  witness {w}  tags: {', '.join(t)}"
            for w, t in zip(d["witnesses"], d["tags"])
        ]
    )
    _emit(d, args.output, text)


def _cmd_classify(args) -> None:
    g = _read_graph(args.graph, args.format)
    tags = search.classify_extremal(g, args.q)
    _emit({"n": g.n, "m": g.m, "tags": tags}, args.output, ", ".join(tags))


def _cmd_verify(args) -> None:
    results = verify.run_all_checks(sample_count=args.samples, seed=args.seed)
    report = {"rows": [r.to_dict() for r in results],
              "passed": all(r.passed for r in results)}
    _emit(report, args.output, verify.format_report(results))
    if not report["passed"]:
        raise ValueError("verification suite reported failures")


def run(argv: list[str]) -> int:
    """Dispatch a command line; 0 on success, 1 on domain errors, 2 on
    usage errors."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    threads = args.threads if args.threads else _threads_default()
    try:
        if args.command == "count":
            _cmd_count(args)
        elif args.command == "chromatic":
            _cmd_chromatic(args)
        elif args.command == "construct":
            _cmd_construct(args)
        elif args.command == "opt":
            _cmd_opt(args)
        elif args.command == "opt2":
            _cmd_opt2(args)
        elif args.command == "sweep":
            _cmd_sweep(args)
        elif args.command == "search":
            _cmd_search(args, threads)
        elif args.command == "classify":
            _cmd_classify(args)
        elif args.command == "verify":
            _cmd_verify(args)
        else:  # pragma: no cover
            parser.print_usage(sys.stderr)
            return USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    return 0


def main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
