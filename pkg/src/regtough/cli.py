"""Command-line interface: gen, analyze, verify, sweep, lemma-check.

Exit codes: 0 success, 1 usage or parse error, 2 precondition violation,
3 certified theorem violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    DEFAULT_EXACT_CAP,
    TOL,
    BoundError,
    BoundReport,
    TheoremViolation,
    reports_to_csv,
    verify_graph,
)
from .graph import (
    EXACT_VERTEX_CAP,
    Graph,
    GraphError,
    ParseError,
    dump_graph,
    gen_named,
    load_graph,
    random_regular_graph,
    structural_flags,
)
from .polyroots import (
    PolySpec,
    all_roots,
    certify_lemma2,
    eval_f,
    eval_terms_scale,
    h_poly_from_cut,
    largest_root,
    lemma2_bounds,
    random_polyspec,
    sign_pattern,
)
from .spectra import cut_partition, quotient_matrix, quotient_spectrum

log = logging.getLogger("regtough")

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    output_format: str = "json"
    exact_cap: int = DEFAULT_EXACT_CAP
    tolerance: float = TOL
    input: str | None = None
    output: str | None = None

    def __post_init__(self):
        if not 0 < self.exact_cap <= EXACT_VERTEX_CAP:
            raise UsageError(f"exact cap must be in 1..{EXACT_VERTEX_CAP}")
        if self.tolerance <= 0:
            raise UsageError("tolerance must be positive")
        if self.output_format not in ("json", "csv"):
            raise UsageError("format must be json or csv")


def parse_range(text: str) -> list[int]:
    """``"10..14"`` -> [10, ..., 14]; ``"3"`` -> [3]; ``"3,5"`` -> [3, 5]."""
    out = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}; use e.g. 10..14 or 3,5") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _render(reports: list[BoundReport], fmt: str, summary: dict | None = None) -> str:
    if fmt == "csv":
        return reports_to_csv(reports)
    if summary is None:
        return _dumps(reports[0].to_dict())
    return _dumps({"summary": summary, "reports": [r.to_dict() for r in reports]})


# ---------------------------------------------------------------------------
# gen

def cmd_gen(args) -> int:
    fam = args.family.replace("-", "_")
    params = {}
    if fam in ("complete", "cycle"):
        params = {"n": args.n}
    elif fam == "complete_bipartite":
        params = {"a": args.a, "b": args.b}
    elif fam == "random_regular":
        params = {"n": args.n, "d": args.d, "seed": args.seed, "max_tries": args.max_tries}
    elif fam == "hd":
        params = {"d": args.d, "k": args.k}
    if any(v is None for v in params.values()):
        missing = [k for k, v in params.items() if v is None]
        raise UsageError(f"{args.family} needs --{' --'.join(missing)}")
    g = gen_named(fam, **params)
    _emit(dump_graph(g), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze

def _read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return load_graph(text)


def cmd_analyze(args, cfg: RunConfig) -> int:
    g = _read_graph(cfg.input)
    graph_id = Path(cfg.input).stem if cfg.input != "-" else "stdin"
    try:
        report = verify_graph(g, graph_id, exact_cap=cfg.exact_cap, tol=cfg.tolerance, strict=False)
    except TheoremViolation as exc:  # pragma: no cover - strict=False never raises
        report = exc.report
    _emit(_render([report], cfg.output_format), cfg.output)
    if report.toughness is not None and not (report.main_theorem_ok and report.thresholds_ok):
        return EXIT_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / sweep

def _verify_job(job):
    graph_id, n, d, seed, exact_cap, tol, max_tries = job
    g = random_regular_graph(n, d, seed, max_tries=max_tries)
    return verify_graph(g, graph_id, exact_cap=exact_cap, tol=tol, strict=False)


def random_connected_regular(n: int, d: int, rng: random.Random, max_draws: int = 1000,
                             max_tries: int = 1000):
    """Draw (graph, seed, rejected) with a connected non-complete d-regular graph."""
    rejected = 0
    for _ in range(max_draws):
        seed = rng.getrandbits(64)
        g = random_regular_graph(n, d, seed, max_tries=max_tries)
        connected, _, complete = structural_flags(g)
        if connected and not complete:
            return g, seed, rejected
        rejected += 1
    raise GraphError(f"no connected {d}-regular graph on {n} vertices in {max_draws} draws")


def plan_random_batch(count: int, degrees: list[int], orders: list[int], seed: int,
                      max_tries: int = 1000):
    """Deterministic list of (graph_id, n, d, graph_seed) plus failure count."""
    valid = [(n, d) for d in degrees for n in orders if n * d % 2 == 0 and d < n - 1 and d >= 3]
    if count and not valid:
        raise GraphError(
            f"no (n, d) combination with n*d even, 3 <= d < n-1 in d={degrees}, n={orders}"
        )
    rng = random.Random(seed)
    jobs, failures = [], 0
    for i in range(count):
        n, d = valid[rng.randrange(len(valid))]
        try:
            _, gseed, rejected = random_connected_regular(n, d, rng, max_tries=max_tries)
        except GraphError as exc:
            log.warning("sample %d: %s", i, exc)
            failures += 1
            continue
        failures += rejected
        jobs.append((f"rr-{i:04d}-n{n}-d{d}", n, d, gseed))
    return jobs, failures


def _run_jobs(jobs, cfg: RunConfig, workers: int, max_tries: int) -> list[BoundReport]:
    payload = [(gid, n, d, s, cfg.exact_cap, cfg.tolerance, max_tries) for gid, n, d, s in jobs]
    if workers > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_job, payload))
    else:
        reports = [_verify_job(j) for j in payload]
    return sorted(reports, key=lambda r: r.graph_id)


def _summary(reports: list[BoundReport], generation_failures: int) -> dict:
    tested = [r for r in reports if r.toughness is not None]
    failed = [r for r in tested if not (r.main_theorem_ok and r.thresholds_ok)]
    return {
        "tested": len(tested),
        "passed": len(tested) - len(failed),
        "failed": len(failed),
        "bound_only": len(reports) - len(tested),
        "generation_failures": generation_failures,
        "failed_ids": [r.graph_id for r in failed],
    }


def cmd_verify(args, cfg: RunConfig) -> int:
    degrees, orders = parse_range(args.d), parse_range(args.n)
    if args.count < 0:
        raise UsageError("--count must be nonnegative")
    if args.count and max(orders) > cfg.exact_cap:
        raise GraphError(f"n up to {max(orders)} exceeds the exact cap {cfg.exact_cap}")
    jobs, failures = plan_random_batch(args.count, degrees, orders, cfg.seed, args.max_tries)
    reports = _run_jobs(jobs, cfg, args.jobs, args.max_tries)
    summary = _summary(reports, failures)
    _emit(_render(reports, cfg.output_format, summary), cfg.output)
    log.info("verify: %s", {k: v for k, v in summary.items() if k != "failed_ids"})
    return EXIT_VIOLATION if summary["failed"] else EXIT_OK


def cmd_sweep(args, cfg: RunConfig) -> int:
    """Named families, the extremal family, and a random grid in one table."""
    named: list[tuple[str, Graph]] = [
        ("petersen", gen_named("petersen")),
        ("k33", gen_named("complete_bipartite", a=3, b=3)),
        ("k44", gen_named("complete_bipartite", a=4, b=4)),
    ]
    for d in parse_range(args.hd):
        for k in range(2, d, 2):
            named.append((f"hd-d{d}-k{k}", gen_named("hd", d=d, k=k)))
    reports = []
    for gid, g in named:
        reports.append(verify_graph(g, gid, exact_cap=cfg.exact_cap, tol=cfg.tolerance, strict=False))
    degrees, orders = parse_range(args.d), parse_range(args.n)
    jobs, failures = plan_random_batch(args.per_cell * len(orders) * len(degrees),
                                       degrees, orders, cfg.seed, args.max_tries)
    reports.extend(_run_jobs(jobs, cfg, args.jobs, args.max_tries))
    reports.sort(key=lambda r: r.graph_id)
    summary = _summary(reports, failures)
    fmt = cfg.output_format
    _emit(_render(reports, fmt, summary), cfg.output)
    return EXIT_VIOLATION if summary["failed"] else EXIT_OK


# ---------------------------------------------------------------------------
# lemma-check

def check_polyspec(p: PolySpec, tol: float = 1e-8) -> dict[str, bool]:
    """Run the real-rootedness and largest-root properties on one spec."""
    roots = all_roots(p)
    res = {}
    res["root_count"] = len(roots) == p.n
    res["residual"] = all(
        abs(float(eval_f(p, r))) <= tol * max(1.0, eval_terms_scale(p, r)) for r in roots
    )
    res["vieta"] = abs(sum(roots) - float(sum(p.a) - sum(p.b))) <= tol
    rho = largest_root(p)
    res["largest_is_max"] = abs(rho - max(roots)) <= 1e-10 * max(1.0, abs(rho))
    res["upper"] = rho <= float(p.a[0]) + 1e-10
    res["sign_alternation"] = sign_pattern(p) == [1 if j % 2 == 0 else -1 for j in range(p.collapsed()[0].n)]
    if p.n >= 2:
        upper, lowers = lemma2_bounds(p)
        res["lower"] = rho >= float(max(lowers)) - 1e-10
        res["lower_exact"] = certify_lemma2(p)
        res["above_a2"] = rho >= float(p.a[1]) - 1e-10
    return res


def duplicate_heavy_polyspec(rng: random.Random, n_max: int) -> PolySpec:
    n = rng.randint(1, n_max)
    a = sorted((rng.randint(0, 1) for _ in range(n)), reverse=True)
    b = [Fraction(rng.randint(1, 5000), 1000) for _ in range(n)]
    return PolySpec(tuple(a), tuple(b))


def cut_polyspecs(count: int, rng: random.Random):
    """(graph, cut, spec) triples from random cuts of random regular graphs."""
    out = []
    while len(out) < count:
        d = rng.choice([3, 4])
        n = rng.choice([x for x in range(d + 3, 15) if x * d % 2 == 0])
        g, _, _ = random_connected_regular(n, d, rng)
        size = rng.randint(1, n - 2)
        s = rng.sample(range(n), size)
        try:
            out.append((g, s, h_poly_from_cut(g, s)))
        except GraphError:
            continue
    return out


def cmd_lemma_check(args, cfg: RunConfig) -> int:
    if args.count < 0:
        raise UsageError("--count must be nonnegative")
    rng = random.Random(cfg.seed)
    tallies: dict[str, dict[str, dict[str, int]]] = {}

    def tally(stream: str, res: dict[str, bool]):
        t = tallies.setdefault(stream, {})
        for k, ok in res.items():
            entry = t.setdefault(k, {"passed": 0, "checked": 0})
            entry["passed"] += int(ok)
            entry["checked"] += 1
        return all(res.values())

    failures = []
    for i in range(args.count):
        p = random_polyspec(rng, n_max=args.n_max)
        if not tally("random", check_polyspec(p)):
            failures.append(("random", i, p.to_dict()))
    for i in range(args.count):
        p = duplicate_heavy_polyspec(rng, args.n_max)
        if not tally("duplicates", check_polyspec(p)):
            failures.append(("duplicates", i, p.to_dict()))
    for i, (g, s, p) in enumerate(cut_polyspecs(args.cuts if args.cuts is not None else args.count // 4, rng)):
        res = check_polyspec(p)
        lam2_b = quotient_spectrum(quotient_matrix(g, cut_partition(g, s))).lambda2
        res["rho_is_quotient_lambda2"] = abs(largest_root(p) - lam2_b) <= 1e-7
        if not tally("cuts", res):
            failures.append(("cuts", i, p.to_dict()))
    doc = {"tallies": tallies, "failures": failures, "passed": not failures}
    _emit(_dumps(doc), cfg.output)
    return EXIT_VIOLATION if failures else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="regtough", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-tries", type=int, default=1000,
                       help="pairing-model retries per random regular graph")
        p.add_argument("--out", "-o", default=None, help="output file (default stdout)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")
            p.add_argument("--exact-cap", type=int, default=DEFAULT_EXACT_CAP)
            p.add_argument("--tolerance", type=float, default=TOL)

    p = sub.add_parser("gen", help="emit a graph in edge-list format")
    p.add_argument("family", help="complete, cycle, complete-bipartite, petersen, random-regular, hd")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    common(p, fmt=False)

    p = sub.add_parser("analyze", help="bound report for one edge-list file")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    common(p)

    p = sub.add_parser("verify", help="certify the main bound on random regular graphs")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--d", default="3")
    p.add_argument("--n", default="10..14")
    p.add_argument("--jobs", type=int, default=1)
    common(p)

    p = sub.add_parser("sweep", help="named families, extremal graphs and a random grid")
    p.add_argument("--d", default="3,4")
    p.add_argument("--n", default="8..14")
    p.add_argument("--hd", default="3,4", help="degrees of extremal graphs to include")
    p.add_argument("--per-cell", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(format="csv")

    p = sub.add_parser("lemma-check", help="property sweep over the polynomial family")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--cuts", type=int, default=None, help="cut-derived instances (default count/4)")
    common(p, fmt=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig(
            command=args.command,
            seed=args.seed,
            output_format=getattr(args, "format", "json"),
            exact_cap=getattr(args, "exact_cap", DEFAULT_EXACT_CAP),
            tolerance=getattr(args, "tolerance", TOL),
            input=getattr(args, "graph", None),
            output=args.out,
        )
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "analyze":
            return cmd_analyze(args, cfg)
        if args.command == "verify":
            return cmd_verify(args, cfg)
        if args.command == "sweep":
            return cmd_sweep(args, cfg)
        return cmd_lemma_check(args, cfg)
    except (UsageError, ParseError, OSError) as exc:
        print(f"regtough: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, BoundError) as exc:
        print(f"regtough: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
