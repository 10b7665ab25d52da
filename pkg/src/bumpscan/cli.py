"""Command-line front end: ``bumpscan {calibrate,detect,power,grid}``.

Exit codes: 0 retain (or success), 10 reject, 64 usage error, 65 bad
data or tables, 70 internal error.
"""

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from . import calibration, grids, simulation
from .errors import BumpScanError, DataError, MissingTable
from .statistics import StatKind, evaluate, statistic_hash
from .transform import NullCdf, load_sample, pit_transform

EXIT_RETAIN = 0
EXIT_REJECT = 10
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class DetectReport:
    statistic: str
    observed: float
    critical_value: float
    alpha: float
    p_value: Optional[float]
    decision: str
    n: int
    interval_pit: Optional[tuple]
    interval_data: Optional[tuple]
    argmax: Optional[tuple]
    table_B: int
    table_seed: int
    table_source: str

    @property
    def rejected(self):
        return self.decision == "reject"

    def summary(self):
        lines = [
            f"statistic     {self.statistic}",
            f"n             {self.n}",
            f"observed      {self.observed:.6g}",
            f"critical      {self.critical_value:.6g} (alpha={self.alpha:g}, B={self.table_B})",
        ]
        if self.p_value is not None:
            lines.append(f"p-value       {self.p_value:.4g}")
        lines.append(f"decision      {self.decision}")
        if self.interval_pit is not None:
            lo, hi = self.interval_pit
            lines.append(f"interval PIT  [{lo:.6g}, {hi:.6g}]")
        if self.interval_data is not None:
            lo, hi = self.interval_data
            lines.append(f"interval data [{lo:.6g}, {hi:.6g}]")
        return "\n".join(lines)


def detect(sample, kind, table, alpha=0.05, table_source=""):
    """Evaluate ``kind`` on a PIT sample and test it against ``table``."""
    kind = StatKind.parse(kind)
    table.check(kind, sample.n, statistic_hash(kind, sample.n))
    result = evaluate(kind, sample)
    crit = table.critical_value(alpha)
    p = table.p_value(result.value)
    interval_pit = interval_data = argmax = None
    if result.argmax is not None:
        j, k = result.argmax.j, result.argmax.k
        argmax = (j, k)
        if kind is StatKind.PEN_SCAN_FIXED:
            n = sample.n
            interval_pit = (j / n, k / n)
            inside = (sample.u > j / n) & (sample.u <= k / n)
            if sample.x is not None and inside.any():
                xs = sample.x[inside]
                interval_data = (float(xs.min()), float(xs.max()))
        else:
            interval_pit = (float(sample.u[j - 1]), float(sample.u[k - 1]))
            if sample.x is not None:
                interval_data = (float(sample.x[j - 1]), float(sample.x[k - 1]))
    return DetectReport(
        statistic=kind.value,
        observed=result.value,
        critical_value=crit,
        alpha=alpha,
        p_value=p,
        decision="reject" if result.value > crit else "retain",
        n=sample.n,
        interval_pit=interval_pit,
        interval_data=interval_data,
        argmax=argmax,
        table_B=table.B,
        table_seed=table.seed,
        table_source=table_source,
    )


def _cmd_calibrate(args):
    kind = StatKind.parse(args.stat)
    if args.grid_kind is not None:
        wanted = grids.GridKind.parse(args.grid_kind)
        if kind.grid_kind is not wanted:
            raise UsageError(f"statistic {kind.value} does not use a {wanted.value!r} grid")
    null = calibration.simulate_null(
        kind, args.n, args.B, args.seed, threads=args.threads, allow_large=args.allow_large
    )
    table = calibration.make_table(null, args.alpha or calibration.DEFAULT_ALPHAS)
    calibration.save_table(table, args.out)
    crits = ", ".join(f"alpha={a:g}: {c:.6g}" for a, c in table.alphas.items())
    print(f"wrote {args.out} ({kind.value}, n={args.n}, B={args.B}, seed={args.seed}; {crits})")
    return 0


def _cmd_detect(args):
    kind = StatKind.parse(args.stat)
    raw = load_sample(args.data, args.format)
    sample = pit_transform(raw, NullCdf.parse(args.f0))
    if args.table:
        table = calibration.load_table(args.table)
        source = str(args.table)
    elif args.auto_calibrate:
        table = calibration.cached_table(kind, sample.n, args.B, args.seed, threads=args.threads)
        source = str(calibration.table_path(kind, sample.n, args.B, args.seed))
    else:
        raise MissingTable("no --table given; pass --auto-calibrate to simulate one")
    report = detect(sample, kind, table, args.alpha, source)
    print(report.summary())
    if args.out:
        Path(args.out).write_text(json.dumps(asdict(report), indent=1) + "\n")
    return EXIT_REJECT if report.rejected else EXIT_RETAIN


def _cmd_power(args):
    if args.config:
        configs = simulation.load_power_config(args.config)
    else:
        if args.n is None or args.len is None or not args.r:
            raise UsageError("power: give --config or all of --n, --len, --r")
        configs = [simulation.PowerConfig(n=args.n, interval_len=args.len, r_values=args.r)]
    for cfg in configs:
        if args.stats:
            cfg.statistics = args.stats
        for name in ("reps", "alpha", "seed", "calibration_B", "calibration_seed"):
            value = getattr(args, name)
            if value is not None:
                setattr(cfg, name, value)
        cfg.auto_calibrate = not args.no_calibrate
    rows = []
    for cfg in configs:
        rows.extend(simulation.power_study(cfg, threads=args.threads))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            simulation.write_power_csv(rows, fh)
    else:
        simulation.write_power_csv(rows, sys.stdout)
    return 0


def _cmd_grid(args):
    grid = grids.build_grid(args.n, args.kind)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["ell", "m", "d", "count"])
    for level in grid.describe()["levels"]:
        writer.writerow([level["ell"], repr(level["m"]), level["d"], level["count"]])
    return 0


def build_parser():
    parser = _Parser(prog="bumpscan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)
    stats = [k.value for k in StatKind]

    def common(p):
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: all cores); never changes results")

    p = sub.add_parser("calibrate", help="simulate a null distribution and write a table")
    p.add_argument("--stat", required=True, choices=stats)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--B", type=int, default=calibration.DEFAULT_B)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--grid-kind", default=None)
    p.add_argument("--alpha", type=float, action="append")
    p.add_argument("--allow-large", action="store_true",
                   help="allow the quadratic pen-scan-all beyond n=20000")
    common(p)
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("detect", help="test a data set for a bump")
    p.add_argument("--data", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default=None)
    p.add_argument("--f0", required=True,
                   help="uniform | exp:<rate> | normal:<mu>,<sigma> | table:<path>")
    p.add_argument("--stat", required=True, choices=stats)
    p.add_argument("--table")
    p.add_argument("--auto-calibrate", action="store_true")
    p.add_argument("--B", type=int, default=calibration.DEFAULT_B)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--out", help="write the JSON report here")
    common(p)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("power", help="run a power study, CSV output")
    p.add_argument("--config")
    p.add_argument("--n", type=int)
    p.add_argument("--len", type=float)
    p.add_argument("--r", type=float, nargs="+")
    p.add_argument("--stats", nargs="+", choices=stats)
    p.add_argument("--reps", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--calibration-B", dest="calibration_B", type=int)
    p.add_argument("--calibration-seed", type=int)
    p.add_argument("--no-calibrate", action="store_true",
                   help="fail instead of simulating missing tables")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("grid", help="print the levels of an approximating set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", default="scan", choices=[k.value for k in grids.GridKind])
    p.set_defaults(func=_cmd_grid)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "threads", None) is not None and args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (BumpScanError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
