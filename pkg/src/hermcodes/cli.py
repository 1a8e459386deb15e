"""Command line entry point: ``hermcodes <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import checks
from .agcode import DEFAULT_BUDGET, build_hermitian_code, code_params, dual_code
from .hermitian import HermitianCurve
from .subfield import report_csv, subfield_subcode, sweep, trace_code

log = logging.getLogger("hermcodes")


@dataclass
class RunConfig:
    command: str
    q: int | None = None
    r: int | None = None
    s: int | None = None
    s_from: int | None = None
    s_to: int | None = None
    out: str | None = None
    format: str = "csv"
    budget: int = DEFAULT_BUDGET
    jobs: int = 1
    seed: int = 0
    which: str | None = None
    code: str = "hermitian"

    def tower(self):
        if self.q is None:
            raise ValueError("--q is required")
        return checks.tower_for(self.q, self.r)

    def s_values(self, default: range) -> list[int]:
        if self.s is not None:
            return [self.s]
        lo = default.start if self.s_from is None else self.s_from
        hi = default.stop - 1 if self.s_to is None else self.s_to
        if lo < 0 or hi < lo:
            raise ValueError(f"empty or negative s-range {lo}..{hi}")
        return list(range(lo, hi + 1))


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_points(cfg: RunConfig) -> int:
    curve = HermitianCurve(cfg.tower())
    _emit(cfg, curve.points_csv())
    return 0


def cmd_params(cfg: RunConfig) -> int:
    if cfg.s is None:
        raise ValueError("--s is required")
    curve = HermitianCurve(cfg.tower())
    _emit(cfg, json.dumps(code_params(curve, cfg.s), sort_keys=True) + "\n")
    return 0


def default_subfield_range(tower) -> range:
    """From a little below q^3/r up to q^3 - 1."""
    q = tower.q
    return range(max(0, q**3 // tower.r - q), q**3)


def cmd_subfield(cfg: RunConfig) -> int:
    tower = cfg.tower()
    rows = sweep(tower, cfg.s_values(default_subfield_range(tower)), jobs=cfg.jobs)
    if cfg.format == "json":
        payload = {"tower": tower.describe(), "rows": [row.as_dict() for row in rows]}
        _emit(cfg, json.dumps(payload, sort_keys=True) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "dim_subcode", "dim_parent"])
        for row in rows:
            w.writerow([row.s, row.k0, row.k])
        _emit(cfg, buf.getvalue())
    return 0 if all(row.sound for row in rows) else 1


def cmd_export(cfg: RunConfig) -> int:
    if cfg.s is None or not cfg.out:
        raise ValueError("--s and --out are required")
    tower = cfg.tower()
    parent = build_hermitian_code(HermitianCurve(tower), cfg.s)
    code = {
        "hermitian": lambda: parent,
        "dual": lambda: dual_code(parent),
        "subfield": lambda: subfield_subcode(parent, tower).code,
        "trace": lambda: trace_code(parent, tower).code,
    }[cfg.code]()
    matrix = code.canonical()
    Path(cfg.out + ".txt").write_text(matrix.to_text())
    side = matrix.sidecar() | {"code": cfg.code, "q": tower.q, "s": cfg.s, "dimension": code.dimension}
    Path(cfg.out + ".json").write_text(json.dumps(side, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    which = cfg.which
    if which == "table1":
        results = checks.check_table1(jobs=cfg.jobs)
    elif which == "theorem":
        results = checks.check_theorem(cfg.tower(), jobs=cfg.jobs)
    elif which == "delsarte":
        tower = cfg.tower()
        results = checks.check_delsarte(tower, cfg.s_values(checks.duality_range(tower.q)), jobs=cfg.jobs)
    elif which == "duality":
        tower = cfg.tower()
        results = checks.check_duality(tower, cfg.s_values(checks.duality_range(tower.q)))
    elif which == "distance":
        tower = cfg.tower()
        s_vals = [cfg.s] if cfg.s is not None else None
        results = checks.check_distance(tower, s_vals, budget=cfg.budget)
    elif which == "properties":
        results = checks.check_properties(seed=cfg.seed)
    else:
        raise ValueError(f"unknown verification {which!r}")

    passed = sum(c.ok for c in results)
    if cfg.format == "json":
        payload = {
            "which": which,
            "passed": passed,
            "total": len(results),
            "checks": [{"name": c.name, "ok": c.ok, **c.detail} for c in results],
        }
        _emit(cfg, json.dumps(payload, sort_keys=True) + "\n")
    else:
        lines = [f"{'PASS' if c.ok else 'FAIL'} {c.name} {json.dumps(c.detail, sort_keys=True)}" for c in results]
        lines.append(f"{which}: {passed}/{len(results)} passed")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if passed == len(results) else 1


def cmd_report(cfg: RunConfig) -> int:
    tower = cfg.tower()
    rows = sweep(tower, cfg.s_values(range(0, tower.q**3 // tower.r + 1)), jobs=cfg.jobs)
    _emit(cfg, report_csv(rows))
    return 0 if all(row.passed for row in rows) else 1


COMMANDS = {
    "points": cmd_points,
    "params": cmd_params,
    "subfield": cmd_subfield,
    "verify": cmd_verify,
    "report": cmd_report,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="order of GF(q); codes live over GF(q^2)")
    common.add_argument("--r", type=int, help="subfield order, q = r^m (default: the prime)")
    common.add_argument("--s", type=int, help="single value of s")
    common.add_argument("--s-from", type=int, dest="s_from", help="first s (inclusive)")
    common.add_argument("--s-to", type=int, dest="s_to", help="last s (inclusive)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max codewords to enumerate")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hermcodes", description="Subfield subcodes of one-point Hermitian codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("points", parents=[common], help="affine rational points as CSV")
    sub.add_parser("params", parents=[common], help="n, k, designed d of H(q^2, s) as JSON")
    sub.add_parser("subfield", parents=[common], help="dim of C|GF(r) and of H(q^2, s) over an s-range")
    sub.add_parser("report", parents=[common], help="full subfield report CSV for 0 <= s <= q^3/r")
    verify = sub.add_parser("verify", parents=[common], help="run a verification; exit 0 iff all pass")
    verify.add_argument("which", choices=("table1", "theorem", "delsarte", "duality", "distance", "properties"))
    export = sub.add_parser("export", parents=[common], help="write a generator matrix plus JSON sidecar")
    export.add_argument("--code", choices=("hermitian", "dual", "subfield", "trace"), default="hermitian")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = vars(build_parser().parse_args(argv))
    logging.basicConfig(level=logging.INFO if args.pop("verbose") else logging.WARNING)
    cfg = RunConfig(**args)
    try:
        return COMMANDS[cfg.command](cfg)
    except ValueError as exc:
        print(f"hermcodes: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
