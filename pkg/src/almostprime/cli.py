"""``almostprime`` command line: count, table, verify, bench.

Exit codes: 0 success, 1 usage error, 2 domain/ceiling error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import asdict, dataclass
from typing import Sequence, TextIO

from .backend import PrimeCountEngine, ceiling_from_env, parse_exact_int
from .errors import AlmostPrimeError, InvalidArgumentError
from .kcount import CountQuery, CountReport, count_semiprime_direct, count_table, evaluate
from .oracle import ORACLE_BUDGET, build_factor_sieve, cumulative_counts

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3

DEFAULT_SEED = 20240601
CSV_FIELDS = ("x", "k", "squarefree", "min_index", "count", "elapsed_ms", "pi_evaluations")


@dataclass(frozen=True)
class OutputRecord:
    x: int
    k: int
    squarefree: bool
    min_index: int
    count: int
    elapsed_ms: float
    pi_evaluations: int

    @classmethod
    def from_report(cls, report: CountReport) -> "OutputRecord":
        q = report.query
        return cls(
            x=q.x,
            k=q.k,
            squarefree=q.squarefree,
            min_index=q.min_index,
            count=report.count,
            elapsed_ms=round(report.elapsed_ms, 3),
            pi_evaluations=report.pi_evaluations,
        )


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for domain errors here.
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _exact_int(text: str) -> int:
    try:
        return parse_exact_int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    value = _exact_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = _exact_int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _int_list(text: str) -> list[int]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return [_nonneg_int(s) for s in items]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--ceiling", type=_positive_int, default=None,
                        help="largest x the backend accepts (default: $ALMOSTPRIME_CEILING or 1e12)")

    query = _Parser(add_help=False)
    query.add_argument("--k", type=_positive_int, required=True)
    query.add_argument("--squarefree", action="store_true")
    query.add_argument("--min-index", type=_positive_int, default=1)

    parser = _Parser(prog="almostprime", description="Exact counts of k-almost primes up to x.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common, query], help="count one (k, x)")
    p.add_argument("--x", type=_nonneg_int, required=True)
    p.add_argument("--threads", type=_positive_int, default=1)

    p = sub.add_parser("table", parents=[common, query], help="count along a list of x")
    p.add_argument("--points", type=_int_list)
    p.add_argument("--from", dest="start", type=_positive_int)
    p.add_argument("--to", dest="stop", type=_positive_int)
    p.add_argument("--factor", type=_positive_int, default=10)
    p.add_argument("--threads", type=_positive_int, default=1)

    p = sub.add_parser("verify", parents=[common], help="compare formula against brute force")
    p.add_argument("--limit", type=_nonneg_int, required=True)
    p.add_argument("--max-k", type=_positive_int, required=True)
    p.add_argument("--min-index", type=_positive_int, default=1)
    p.add_argument("--samples", type=_nonneg_int, default=1000,
                   help="random checkpoints when limit > 1e4")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("bench", parents=[common, query], help="time sequential vs parallel")
    p.add_argument("--x", type=_nonneg_int, required=True)
    p.add_argument("--threads", type=_positive_int, default=4)
    return parser


def _engine(args) -> PrimeCountEngine:
    ceiling = args.ceiling if args.ceiling is not None else ceiling_from_env()
    return PrimeCountEngine(ceiling=ceiling)


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def write_records(records: Sequence[OutputRecord], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(asdict(rec)) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for rec in records:
            row = asdict(rec)
            writer.writerow([_fmt_value(row[f]) for f in CSV_FIELDS])
    else:
        for rec in records:
            out.write(" ".join(f"{k}={_fmt_value(v)}" for k, v in asdict(rec).items()) + "\n")


def geometric_points(start: int, stop: int, factor: int) -> list[int]:
    if factor < 2:
        raise UsageError("--factor must be >= 2")
    if stop < start:
        raise UsageError("--to must not be below --from")
    points = []
    x = start
    while x <= stop:
        points.append(x)
        x *= factor
    return points


def cmd_count(args, out: TextIO) -> int:
    engine = _engine(args)
    query = CountQuery(k=args.k, x=args.x, squarefree=args.squarefree, min_index=args.min_index)
    report = evaluate(query, engine, workers=args.threads)
    write_records([OutputRecord.from_report(report)], args.format, out)
    return EXIT_OK


def cmd_table(args, out: TextIO) -> int:
    if args.points is not None:
        if args.start is not None or args.stop is not None:
            raise UsageError("use either --points or --from/--to, not both")
        points = args.points
    elif args.start is not None and args.stop is not None:
        points = geometric_points(args.start, args.stop, args.factor)
    else:
        raise UsageError("table needs --points or both --from and --to")
    if any(b < a for a, b in zip(points, points[1:])):
        raise UsageError("--points must be ascending")
    engine = _engine(args)
    reports = count_table(args.k, points, args.squarefree, args.min_index, engine, args.threads)
    write_records([OutputRecord.from_report(r) for r in reports], args.format, out)
    return EXIT_OK


def verify_checkpoints(limit: int, samples: int, seed: int) -> list[int]:
    """Every x when limit <= 1e4; otherwise powers of 2 and 10 plus seeded random x."""
    if limit < 2:
        return []
    if limit <= 10**4:
        return list(range(2, limit + 1))
    grid = {limit}
    g = 2
    while g <= limit:
        grid.add(g)
        g *= 2
    g = 10
    while g <= limit:
        grid.add(g)
        g *= 10
    rng = random.Random(seed)
    grid.update(rng.randint(2, limit) for _ in range(samples))
    return sorted(grid)


def cmd_verify(args, out: TextIO) -> int:
    if args.limit > ORACLE_BUDGET:
        raise InvalidArgumentError(f"--limit {args.limit} exceeds the oracle budget {ORACLE_BUDGET}")
    engine = _engine(args)
    checkpoints = verify_checkpoints(args.limit, args.samples, args.seed)
    sieve = build_factor_sieve(args.limit) if checkpoints else None
    checks = 0
    first_failure = None
    mismatches = 0
    final = []
    for k in range(1, args.max_k + 1):
        for sf in (False, True):
            expected = cumulative_counts(sieve, k, sf, args.min_index) if sieve else None
            for x in checkpoints:
                want = int(expected[x])
                got = evaluate(CountQuery(k, x, sf, args.min_index), engine).count
                checks += 1
                if got != want:
                    mismatches += 1
                    if first_failure is None:
                        first_failure = (x, k, sf, want, got)
            if checkpoints:
                final.append((checkpoints[-1], k, sf, int(expected[checkpoints[-1]])))

    if args.format == "json":
        out.write(json.dumps({
            "limit": args.limit,
            "max_k": args.max_k,
            "checks": checks,
            "mismatches": mismatches,
            "first_failure": None if first_failure is None else dict(
                zip(("x", "k", "squarefree", "expected", "got"), first_failure)),
        }) + "\n")
    else:
        for x, k, sf, count in final:
            out.write(f"check x={x} k={k} squarefree={_fmt_value(sf)} count={count}\n")
        out.write(f"{checks} checks, {mismatches} mismatches\n")
        if first_failure is not None:
            x, k, sf, want, got = first_failure
            out.write(f"first mismatch: x={x} k={k} squarefree={_fmt_value(sf)} "
                      f"expected={want} got={got}\n")
    return EXIT_OK if mismatches == 0 else EXIT_VERIFY


def cmd_bench(args, out: TextIO) -> int:
    engine = _engine(args)
    query = CountQuery(k=args.k, x=args.x, squarefree=args.squarefree, min_index=args.min_index)
    # A fresh engine per run would re-sieve; clear the tables instead so each
    # run pays for its own sublinear passes.
    engine.clear_cache()
    seq = evaluate(query, engine, workers=1)
    engine.clear_cache()
    par = evaluate(query, engine, workers=args.threads)
    direct = None
    if args.k == 2 and args.min_index == 1:
        direct = count_semiprime_direct(args.x, args.squarefree, engine)
    ok = seq.count == par.count and (direct is None or direct == seq.count)
    summary = {
        "x": args.x,
        "k": args.k,
        "squarefree": args.squarefree,
        "min_index": args.min_index,
        "count": seq.count,
        "threads": args.threads,
        "sequential_ms": round(seq.elapsed_ms, 3),
        "parallel_ms": round(par.elapsed_ms, 3),
        "pi_evaluations": seq.pi_evaluations,
        "cache_hits": seq.cache_hits,
        "parallel_count": par.count,
        "direct_count": direct,
        "consistent": ok,
    }
    if args.format == "json":
        out.write(json.dumps(summary) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(summary.keys())
        writer.writerow(_fmt_value(v) if v is not None else "" for v in summary.values())
    else:
        for key, value in summary.items():
            if value is not None:
                out.write(f"{key}={_fmt_value(value)}\n")
    if not ok:
        sys.stderr.write(f"almostprime: sequential={seq.count} parallel={par.count} "
                         f"direct={direct} disagree\n")
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {"count": cmd_count, "table": cmd_table, "verify": cmd_verify, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        msg = str(exc)
        sys.stderr.write(msg if msg.startswith("almostprime") else f"almostprime: {msg}")
        sys.stderr.write("\n")
        return EXIT_USAGE
    except AlmostPrimeError as exc:
        sys.stderr.write(f"almostprime: {exc}\n")
        return EXIT_DOMAIN


def run() -> None:  # pragma: no cover - console entry point
    sys.exit(main())
