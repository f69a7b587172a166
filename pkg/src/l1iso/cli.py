"""Command-line interface: ``l1iso analyze | verify | sweep | gen``.

Exit codes: 0 when every check passes, 1 for input or configuration errors,
2 when a check fails beyond its slack.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from l1iso.errors import L1IsoError, ParseError, RangeError
from l1iso.extremal import FamilySpec, gen_family, parse_family, staircase_corpus
from l1iso.geometry import Polygon
from l1iso.isoperimetry import IsoReport, full_report, prop2_bound

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2
CSV_COLUMNS = ("param", "area", "perimeter", "epsilon", "delta", "q_ratio", "mu", "asymmetry", "prop2_bound")
_CORPUS_RE = re.compile(r"^staircase:(\d+):(\d+)$")


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-5
    resolution: float | None = None
    seed: int = 0
    output_path: str | None = None
    format: str = "json"
    jobs: int = 1

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ParseError(f"--tol must be positive, got {self.tol}")
        if self.resolution is not None and not self.resolution > 0.0:
            raise ParseError(f"--resolution must be positive, got {self.resolution}")
        if self.jobs < 1:
            raise ParseError(f"--jobs must be at least 1, got {self.jobs}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_polygon(path: str) -> Polygon:
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    return Polygon.from_dict(doc)


def load_corpus(source: str) -> list[Polygon]:
    """A JSON Lines file, or an inline ``staircase:SEED:COUNT`` generator."""
    m = _CORPUS_RE.match(source)
    if m and not os.path.exists(source):
        return staircase_corpus(int(m.group(1)), int(m.group(2)))
    out = []
    for lineno, line in enumerate(_read_text(source).splitlines(), start=1):
        if not line.strip():
            continue
        try:
            p = Polygon.from_dict(json.loads(line))
        except (json.JSONDecodeError, L1IsoError) as exc:
            raise ParseError(f"{source}: line {lineno}: {exc}") from exc
        if p.name is None:
            p = Polygon(p.vertices, f"line{lineno}")
        out.append(p)
    return out


def parse_range(text: str) -> list[float]:
    """``START:STOP:COUNT`` with ``0 < START < STOP < 0.5``, evenly spaced."""
    parts = text.split(":")
    if len(parts) != 3:
        raise RangeError(f"range must be START:STOP:COUNT, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise RangeError(f"bad range {text!r}") from exc
    if not (0.0 < start < stop < 0.5):
        raise RangeError(f"need 0 < START < STOP < 0.5, got {text!r}")
    if count < 1:
        raise RangeError(f"COUNT must be at least 1, got {count}")
    if count == 1:
        return [start]
    return [float(v) for v in np.linspace(start, stop, count)]


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _report_job(args):
    p, tol, resolution = args
    return full_report(p, tol, resolution)


def _reports(polys: list[Polygon], cfg: RunConfig) -> list[IsoReport]:
    jobs = [(p, cfg.tol, cfg.resolution) for p in polys]
    if cfg.jobs > 1 and len(polys) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            return list(ex.map(_report_job, jobs, chunksize=4))
    return [_report_job(j) for j in jobs]


def cmd_analyze(input_path: str, cfg: RunConfig) -> int:
    report = full_report(load_polygon(input_path), cfg.tol, cfg.resolution)
    _emit(_dumps(report.to_dict()), cfg.output_path)
    return EXIT_OK if report.passed else EXIT_CHECK


def summarize(reports: list[IsoReport]) -> dict:
    qs = [r.q_ratio for r in reports if r.q_ratio is not None]
    ratios = [r.asymmetry_ratio for r in reports if r.asymmetry_ratio is not None]
    return {
        "count": len(reports),
        "failures": sum(not r.passed for r in reports),
        "max_Q": max(qs) if qs else None,
        "max_asymmetry_ratio": max(ratios) if ratios else None,
        "reports": [r.to_dict() for r in reports],
    }


def cmd_verify(source: str, cfg: RunConfig) -> int:
    summary = summarize(_reports(load_corpus(source), cfg))
    _emit(_dumps(summary), cfg.output_path)
    return EXIT_OK if summary["failures"] == 0 else EXIT_CHECK


def sweep_rows(family: str, params: list[float], cfg: RunConfig) -> tuple[list[dict], bool]:
    polys = [gen_family(FamilySpec(family, p)) for p in params]
    reports = _reports(polys, cfg)
    rows = []
    for p, r in zip(params, reports):
        rows.append(
            {
                "param": p,
                "area": r.area,
                "perimeter": r.perimeter,
                "epsilon": r.epsilon,
                "delta": r.delta,
                "q_ratio": r.q_ratio,
                "mu": r.mu,
                "asymmetry": r.asymmetry,
                "prop2_bound": prop2_bound(r.epsilon),
            }
        )
    return rows, all(r.passed for r in reports)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_cell(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def rows_to_svg(family: str, rows: list[dict]) -> str:
    from l1iso.svg import Series, plot_panels

    xs = tuple(r["param"] for r in rows)
    q = tuple(r["q_ratio"] for r in rows)
    ratio = tuple(
        r["asymmetry"] / (0.5 * r["epsilon"] ** 0.5) if r["epsilon"] > 0 else None for r in rows
    )
    return plot_panels(
        [
            (f"{family}: equality ratio Q", "param", "Q", [Series("Q", xs, q)]),
            (
                f"{family}: asymmetry / (sqrt(eps)/2)",
                "param",
                "ratio",
                [Series("asymmetry ratio", xs, ratio)],
            ),
        ]
    )


def cmd_sweep(family_text: str, range_text: str, cfg: RunConfig) -> int:
    family, single = parse_family(family_text)
    params = [single] if single is not None and not range_text else parse_range(range_text)
    rows, ok = sweep_rows(family, params, cfg)
    if cfg.format == "svg":
        _emit(rows_to_svg(family, rows), cfg.output_path)
    elif cfg.format == "json":
        _emit(_dumps(rows), cfg.output_path)
    else:
        _emit(rows_to_csv(rows), cfg.output_path)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_gen(family_text: str, range_text: str | None, cfg: RunConfig) -> int:
    m = _CORPUS_RE.match(family_text)
    if m:
        polys = staircase_corpus(int(m.group(1)), int(m.group(2)))
    else:
        family, single = parse_family(family_text)
        if range_text:
            params = parse_range(range_text)
        elif single is not None:
            params = [single]
        else:
            raise RangeError("--params START:STOP:COUNT is required without an inline parameter")
        polys = [gen_family(FamilySpec(family, p)) for p in params]
    text = "".join(json.dumps(p.to_dict(), allow_nan=False) + "\n" for p in polys)
    _emit(text, cfg.output_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="l1iso", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt_default="json"):
        sp.add_argument("--output", default=None, help="output path (default stdout)")
        sp.add_argument("--tol", type=float, default=1e-5, help="optimiser tolerance (default 1e-5)")
        sp.add_argument("--resolution", type=float, default=None, help="Hausdorff grid resolution")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("json", "csv", "svg"), default=fmt_default)
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    sp = sub.add_parser("analyze", help="report on one polygon JSON file")
    sp.add_argument("--input", required=True)
    common(sp)
    sp = sub.add_parser("verify", help="check a JSONL corpus or staircase:SEED:COUNT")
    sp.add_argument("--input", required=True)
    common(sp)
    sp = sub.add_parser("sweep", help="sweep an extremal family, CSV/SVG/JSON output")
    sp.add_argument("--family", required=True, help="corner or rect")
    sp.add_argument("--params", default="", help="START:STOP:COUNT")
    common(sp, "csv")
    sp = sub.add_parser("gen", help="write family polygons as JSON Lines")
    sp.add_argument("--family", required=True, help="corner, rect, corner:0.1 or staircase:SEED:COUNT")
    sp.add_argument("--params", default=None, help="START:STOP:COUNT")
    common(sp)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            tol=args.tol,
            resolution=args.resolution,
            seed=args.seed,
            output_path=args.output,
            format=args.format,
            jobs=args.jobs,
        )
        if args.command == "analyze":
            return cmd_analyze(args.input, cfg)
        if args.command == "verify":
            return cmd_verify(args.input, cfg)
        if args.command == "sweep":
            return cmd_sweep(args.family, args.params, cfg)
        return cmd_gen(args.family, args.params, cfg)
    except (L1IsoError, OSError, ValueError) as exc:
        print(f"l1iso: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
