"""Measurement harness: timed solves, oracle validation and manifest sweeps."""

import csv
import itertools
import logging
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import apsp
from .clique_tree import build_clique_tree, separator_stats
from .generators import FAMILIES, generate
from .graph import NegativeCycleError, oracle_apsp
from .heaps import HeapKind
from .ordering import Heuristic, order_vertices, triangulate

log = logging.getLogger(__name__)

ORACLE_LIMIT = 2000


@dataclass
class BenchRecord:
    instance_id: str
    family: str
    n: int
    m: int
    m_c: int
    w_d: int
    s_d: int
    heuristic: str
    algorithm: str
    heap_kind: str
    seed: int
    repetitions: int
    wall_time_mean: float
    wall_time_stddev: float
    update_count: int
    status: str
    wall_time_median: float


COLUMNS = list(BenchRecord.__dataclass_fields__)


def instance_stats(g, d):
    """(m, m_c, w_d, s_d) of ``g`` under ordering ``d``."""
    tri = triangulate(g, d)
    tree = build_clique_tree(tri.filled_graph(g), d)
    return g.m, tri.m_c, tri.induced_width, separator_stats(tree).s_d


def run_solver(g, algorithm, heuristic=None, heap=HeapKind.BINARY, seed=None):
    """One solve, ordering included. Raises NegativeCycleError."""
    name = algorithm.upper()
    d = None
    if name in apsp.ORDERED:
        if heuristic is None:
            raise ValueError(f"{name} needs a heuristic")
        d = order_vertices(g, heuristic, seed=seed)
    return apsp.solve(g, name, d, heap)


def measure(g, algorithm, heuristic=None, heap=HeapKind.BINARY, reps=10, seed=0,
            instance_id="", family=""):
    """Warm-up run, then ``reps`` timed runs; returns a BenchRecord."""
    name = algorithm.upper()
    ordered = name in apsp.ORDERED
    h = Heuristic.parse(heuristic) if ordered else None
    kind = HeapKind.parse(heap) if name == "JOHNSON" else None
    stats_order = order_vertices(g, h or Heuristic.MIN_DEGREE, seed=seed)
    m, m_c, w_d, s_d = instance_stats(g, stats_order)
    status, count, times = "OK", 0, []
    try:
        count = run_solver(g, name, h, kind or HeapKind.BINARY, seed).updates
        for _ in range(reps):
            t0 = time.perf_counter()
            run_solver(g, name, h, kind or HeapKind.BINARY, seed)
            times.append(time.perf_counter() - t0)
    except NegativeCycleError:
        status, times = "INCONSISTENT", []
    return BenchRecord(
        instance_id=instance_id, family=family, n=g.n, m=m, m_c=m_c, w_d=w_d, s_d=s_d,
        heuristic=h.value if h else "", algorithm=name, heap_kind=kind.value if kind else "",
        seed=seed, repetitions=reps,
        wall_time_mean=statistics.fmean(times) if times else 0.0,
        wall_time_stddev=statistics.stdev(times) if len(times) > 1 else 0.0,
        update_count=count, status=status,
        wall_time_median=statistics.median(times) if times else 0.0,
    )


def validate(g, algorithm, heuristic=None, heap=HeapKind.BINARY, solver=None, seed=None):
    """Compare a solver's matrix with the oracle; returns (passed, message).

    ``solver`` overrides the algorithm lookup (used to inject faults).
    """
    if g.n > ORACLE_LIMIT:
        raise ValueError(f"oracle guard: n={g.n} exceeds {ORACLE_LIMIT}")
    try:
        want = oracle_apsp(g)
    except NegativeCycleError:
        want = None
    try:
        got = solver(g) if solver else run_solver(g, algorithm, heuristic, heap, seed).dist
    except NegativeCycleError:
        got = None
    if want is None or got is None:
        if want is None and got is None:
            return True, "both report a negative cycle"
        side = "solver" if got is None else "oracle"
        return False, f"only the {side} reports a negative cycle"
    diff = np.argwhere(~((got == want) | (np.isinf(got) & np.isinf(want)) | (np.abs(got - want) <= 1e-9)))
    if len(diff):
        i, j = (int(x) + 1 for x in diff[0])
        return False, f"first difference at ({i}, {j}): got {got[i - 1, j - 1]}, oracle {want[i - 1, j - 1]}"
    return True, "matrix equals oracle"


def format_row(rec):
    row = asdict(rec)
    for key in ("wall_time_mean", "wall_time_stddev", "wall_time_median"):
        row[key] = f"{row[key]:.6f}"
    return row


class CsvSink:
    """Appends rows, writing the header only for a new or empty file."""

    def __init__(self, path):
        self.fh = open(path, "a", newline="", encoding="utf-8")
        self.writer = csv.DictWriter(self.fh, COLUMNS)
        if self.fh.tell() == 0:
            self.writer.writeheader()
            self.fh.flush()

    def write(self, rec):
        self.writer.writerow(format_row(rec))
        self.fh.flush()

    def close(self):
        self.fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


# ------------------------------------------------------------------ manifests

RESERVED = ("algorithms", "heuristics", "heaps", "reps", "seeds")


def _seed_list(text):
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


@dataclass
class Job:
    family: str
    params: dict
    seed: int
    algorithm: str
    heuristic: str
    heap: str
    reps: int

    @property
    def instance_id(self):
        body = "-".join(f"{k}{v}" for k, v in self.params.items())
        return f"{self.family}-{body}-s{self.seed}"


def parse_manifest(text):
    """Expand manifest lines into Jobs; comma lists form a cross-product."""
    jobs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        family, *pairs = line.split()
        family = family.lower().replace("-", "_")
        if family not in FAMILIES:
            raise ValueError(f"manifest line {lineno}: unknown family {family!r}")
        opts = {}
        for pair in pairs:
            if "=" not in pair:
                raise ValueError(f"manifest line {lineno}: expected key=value, got {pair!r}")
            k, v = pair.split("=", 1)
            opts[k.replace("-", "_")] = v
        algorithms = opts.pop("algorithms", "SNOWBALL").split(",")
        heuristics = opts.pop("heuristics", "MIN_DEGREE").split(",")
        heaps = opts.pop("heaps", "BINARY").split(",")
        reps = int(opts.pop("reps", "10"))
        seeds = _seed_list(opts.pop("seeds", "0"))
        keys = list(opts)
        for values in itertools.product(*(opts[k].split(",") for k in keys)):
            params = dict(zip(keys, values))
            for seed in seeds:
                for alg in algorithms:
                    alg = alg.upper()
                    if alg not in apsp.ALGORITHMS:
                        raise ValueError(f"manifest line {lineno}: unknown algorithm {alg!r}")
                    hs = heuristics if alg in apsp.ORDERED else [""]
                    ks = heaps if alg == "JOHNSON" else [""]
                    for h, k in itertools.product(hs, ks):
                        jobs.append(Job(family, params, seed, alg, h, k, reps))
    return jobs


def run_job(job, cache, cross_check=False):
    g = cache.get((job.family, tuple(job.params.items()), job.seed))
    try:
        if g is None:
            g = generate(job.family, job.params, job.seed)
        rec = measure(g, job.algorithm, job.heuristic or None, job.heap or HeapKind.BINARY,
                      job.reps, job.seed, job.instance_id, job.family)
        if cross_check:
            ok, msg = validate(g, job.algorithm, job.heuristic or None, job.heap or HeapKind.BINARY, seed=job.seed)
            if not ok:
                log.error("%s %s: %s", job.instance_id, job.algorithm, msg)
                rec.status = "MISMATCH"
        return rec
    except Exception as exc:  # a failed row must not stop the sweep
        log.error("%s %s failed: %s", job.instance_id, job.algorithm, exc)
        return BenchRecord(job.instance_id, job.family, g.n if g is not None else 0, 0, 0, 0, 0,
                           job.heuristic, job.algorithm, job.heap, job.seed, job.reps,
                           0.0, 0.0, 0, "ERROR", 0.0)


def sweep(manifest_text, csv_path, workers=1, cross_check=False):
    """Run every job of a manifest, one flushed CSV row per job.

    Rows come out in manifest order whatever the worker count. Returns the
    list of records.
    """
    jobs = parse_manifest(manifest_text)
    cache = {}
    for job in jobs:
        key = (job.family, tuple(job.params.items()), job.seed)
        if key not in cache:
            try:
                cache[key] = generate(job.family, job.params, job.seed)
            except Exception as exc:
                log.error("cannot generate %s: %s", job.instance_id, exc)
    records = []
    with CsvSink(csv_path) as sink:
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                for rec in pool.map(lambda j: run_job(j, cache, cross_check), jobs):
                    sink.write(rec)
                    records.append(rec)
        else:
            for job in jobs:
                rec = run_job(job, cache, cross_check)
                sink.write(rec)
                records.append(rec)
    return records
