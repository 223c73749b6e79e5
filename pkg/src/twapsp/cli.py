"""Command-line entry point.

Exit codes: 0 success, 1 usage or input error, 2 validation failure.
"""

import argparse
import logging
import sys

import numpy as np

from . import apsp, bench
from .formats import read_graph_file, write_native
from .generators import FAMILIES, generate, manifest_line
from .graph import GraphError, NegativeCycleError
from .heaps import HeapKind
from .ordering import Heuristic, order_vertices, triangulate

EXIT_USAGE = 1
EXIT_FAILED = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p, reps=True):
    p.add_argument("--seed", type=int, default=0)
    if reps:
        p.add_argument("--reps", type=int, default=10)


def _algorithm(text):
    name = text.strip().upper()
    if name not in apsp.ALGORITHMS:
        raise argparse.ArgumentTypeError(f"choose from {', '.join(apsp.ALGORITHMS)}")
    return name


def _heuristic(text):
    try:
        return Heuristic.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _heap(text):
    try:
        return HeapKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    parser = _Parser(prog="twapsp", description="Treewidth-aware all-pairs shortest paths.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a benchmark instance in native format")
    fams = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)
    for name, fam in FAMILIES.items():
        fp = fams.add_parser(name.replace("_", "-"), aliases=[name] if "_" in name else [])
        for pname, typ in fam.params:
            fp.add_argument(f"--{pname.replace('_', '-')}", dest=pname, type=typ, required=True)
        fp.add_argument("--seed", type=int, default=0)
        fp.add_argument("-o", "--out", help="output path (default stdout)")

    order = sub.add_parser("order", help="print an ordering and its width statistics")
    order.add_argument("instance")
    order.add_argument("--heuristic", type=_heuristic, default=Heuristic.MIN_DEGREE)
    _add_common(order, reps=False)

    solve = sub.add_parser("solve", help="time one algorithm and emit a CSV row")
    solve.add_argument("instance")
    solve.add_argument("--algorithm", type=_algorithm, required=True)
    solve.add_argument("--heuristic", type=_heuristic)
    solve.add_argument("--heap", type=_heap, default=HeapKind.BINARY)
    solve.add_argument("--csv", help="append the row to this CSV file")
    solve.add_argument("--cross-check", action="store_true",
                       help="also compare the matrix with the oracle (and the other heap for JOHNSON)")
    solve.add_argument("--print-matrix", action="store_true")
    _add_common(solve)

    val = sub.add_parser("validate", help="compare an algorithm with the Bellman-Ford oracle")
    val.add_argument("instance")
    val.add_argument("--algorithm", default="ALL", help="algorithm name or ALL")
    val.add_argument("--heuristic", type=_heuristic, default=Heuristic.MIN_DEGREE)
    val.add_argument("--heap", type=_heap)
    _add_common(val, reps=False)

    sw = sub.add_parser("sweep", help="run a manifest of generated instances")
    sw.add_argument("manifest")
    sw.add_argument("--csv", required=True)
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--cross-check", action="store_true")
    return parser


def _cmd_generate(args):
    fam = FAMILIES[args.family.replace("-", "_")]
    params = {p: getattr(args, p) for p, _ in fam.params}
    try:
        g = generate(args.family, params, args.seed)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    text = write_native(g, [manifest_line(args.family, params, args.seed)])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _load(path):
    try:
        g, _ = read_graph_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return g


def _cmd_order(args):
    g = _load(args.instance)
    d = order_vertices(g, args.heuristic, seed=args.seed)
    m, m_c, w_d, s_d = bench.instance_stats(g, d)
    tri = triangulate(g, d)
    print(d.to_line())
    print(f"n={g.n} m={m} m_c={m_c} w_d={w_d} s_d={s_d} fill={len(tri.fill_edges)}")
    return 0


def _cmd_solve(args):
    if args.algorithm in apsp.ORDERED and args.heuristic is None:
        raise UsageError(f"{args.algorithm} needs --heuristic")
    g = _load(args.instance)
    rec = bench.measure(g, args.algorithm, args.heuristic, args.heap, args.reps, args.seed,
                        instance_id=args.instance, family="file")
    row = bench.format_row(rec)
    print(",".join(bench.COLUMNS))
    print(",".join(str(row[c]) for c in bench.COLUMNS))
    if args.csv:
        with bench.CsvSink(args.csv) as sink:
            sink.write(rec)
    if args.print_matrix and rec.status == "OK":
        dm = bench.run_solver(g, args.algorithm, args.heuristic, args.heap, args.seed)
        np.savetxt(sys.stdout, dm.dist, fmt="%.17g")
    if args.cross_check:
        ok, msg = bench.validate(g, args.algorithm, args.heuristic, args.heap, seed=args.seed)
        print(f"cross-check: {'PASS' if ok else 'FAIL'} ({msg})")
        if ok and args.algorithm == "JOHNSON":
            other = HeapKind.FIBONACCI if args.heap is HeapKind.BINARY else HeapKind.BINARY
            ok, msg = _same_result(g, args.heap, other)
            print(f"heap cross-check: {'PASS' if ok else 'FAIL'} ({msg})")
        if not ok:
            return EXIT_FAILED
    return 0


def _same_result(g, a, b):
    try:
        da = apsp.johnson(g, a).dist
    except NegativeCycleError:
        da = None
    try:
        db = apsp.johnson(g, b).dist
    except NegativeCycleError:
        db = None
    if da is None or db is None:
        return (da is None) == (db is None), "status compared"
    return bool(np.array_equal(da, db)), f"{a.value} vs {b.value} matrices compared"


def _cmd_validate(args):
    g = _load(args.instance)
    if g.n > bench.ORACLE_LIMIT:
        raise UsageError(f"oracle guard: n={g.n} exceeds {bench.ORACLE_LIMIT}")
    name = args.algorithm.strip().upper()
    if name == "ALL":
        runs = [(a, h) for a in apsp.ALGORITHMS for h in ([None] if a != "JOHNSON" else list(HeapKind))]
    else:
        try:
            name = _algorithm(name)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from None
        runs = [(name, args.heap or HeapKind.BINARY)]
    failed = False
    for alg, heap in runs:
        ok, msg = bench.validate(g, alg, args.heuristic, heap or HeapKind.BINARY, seed=args.seed)
        label = alg + (f"/{heap.value}" if alg == "JOHNSON" else "")
        print(f"{label}: {'PASS' if ok else 'FAIL'} ({msg})")
        failed |= not ok
    return EXIT_FAILED if failed else 0


def _cmd_sweep(args):
    try:
        with open(args.manifest, encoding="utf-8") as fh:
            text = fh.read()
        records = bench.sweep(text, args.csv, workers=args.workers, cross_check=args.cross_check)
    except OSError as exc:
        raise UsageError(f"cannot read {args.manifest}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bad = sum(r.status in ("ERROR", "MISMATCH") for r in records)
    print(f"{len(records)} rows written to {args.csv}, {bad} failed")
    return EXIT_FAILED if bad else 0


COMMANDS = {
    "generate": _cmd_generate,
    "order": _cmd_order,
    "solve": _cmd_solve,
    "validate": _cmd_validate,
    "sweep": _cmd_sweep,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"twapsp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
