"""Command line entry point: ``vrpersist compute`` and ``vrpersist plot``.

Exit codes: 0 success, 2 unreadable input, 3 parse error, 4 invalid
configuration.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .complex import build_vr_filtration, dump_filtration
from .homology import FieldSpec, betti_numbers, reduction
from .metric import METRICS, ParseError, load_distance_matrix, load_point_cloud, pairwise_distances
from .persistence import PairsFormatError, format_number, loads_pairs, pairs_to_scales, top_features, write_pairs
from .svg import render

EXIT_OK = 0
EXIT_UNREADABLE = 2
EXIT_PARSE = 3
EXIT_CONFIG = 4

FORMATS = ("csv-points", "lower-distance")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    input: str
    output: str
    format: str = "csv-points"
    metric: str = "euclidean"
    max_dim: int = 2
    max_eps: float = math.inf
    field: int = 2
    plot: str = "none"
    plot_output: Optional[str] = None
    drop_zero: bool = True
    top_n: int = 5
    dump_filtration: Optional[str] = None

    def validate(self) -> None:
        if self.format not in FORMATS:
            raise ConfigError(f"unknown input format {self.format!r}")
        if self.metric not in METRICS:
            raise ConfigError(f"unknown metric {self.metric!r}")
        if self.max_dim < 0:
            raise ConfigError("--max-dim must be >= 0")
        if not (self.max_eps > 0):
            raise ConfigError("--max-eps must be positive")
        try:
            FieldSpec(self.field)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.top_n < 0:
            raise ConfigError("--top must be >= 0")
        if self.plot not in ("none", "diagram", "barcode"):
            raise ConfigError(f"unknown plot kind {self.plot!r}")
        if self.plot != "none" and not self.plot_output:
            raise ConfigError("--plot needs --plot-out")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _float(text: str) -> float:
    if text.lower() in ("inf", "infinity", "none"):
        return math.inf
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vrpersist", description="Vietoris-Rips persistent homology.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="compute persistence pairs from points or distances")
    c.add_argument("--input", required=True)
    c.add_argument("--format", default="csv-points", choices=FORMATS)
    c.add_argument("--metric", default="euclidean", choices=sorted(METRICS))
    c.add_argument("--max-dim", type=int, default=2)
    c.add_argument("--max-eps", type=_float, default=math.inf)
    c.add_argument("--field", type=int, default=2)
    c.add_argument("--output", required=True)
    c.add_argument("--keep-zero", action="store_true", help="keep zero-persistence pairs")
    c.add_argument("--top", type=int, default=5)
    c.add_argument("--plot", default="none", choices=("none", "diagram", "barcode"))
    c.add_argument("--plot-out")
    c.add_argument("--dump-filtration", help="write the filtration, one simplex per line")

    p = sub.add_parser("plot", help="render a pairs file as an SVG barcode or diagram")
    p.add_argument("--pairs", required=True)
    p.add_argument("--kind", default="diagram", choices=("diagram", "barcode"))
    p.add_argument("--out", required=True)
    p.add_argument("--infinity-cap", type=float)
    return parser


def _fail(code: int, message: str) -> int:
    print(f"vrpersist: {message}", file=sys.stderr)
    return code


def run_compute(config: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        config.validate()
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    try:
        with open(config.input, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        return _fail(EXIT_UNREADABLE, f"cannot read input {config.input!r}: {exc.strerror}")
    try:
        if config.format == "csv-points":
            dm = pairwise_distances(load_point_cloud(raw), config.metric)
        else:
            dm = load_distance_matrix(raw)
    except (ParseError, UnicodeDecodeError, ValueError) as exc:
        return _fail(EXIT_PARSE, f"{config.input}: {exc}")

    filt = build_vr_filtration(dm, config.max_dim, config.max_eps)
    res = reduction(filt, config.field)
    pairs = pairs_to_scales(res, filt)
    if config.drop_zero:
        pairs = [q for q in pairs if not q.zero_persistence]

    try:
        with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
            write_pairs(pairs, fh)
        if config.dump_filtration:
            with open(config.dump_filtration, "w", encoding="utf-8", newline="\n") as fh:
                dump_filtration(filt, fh)
        if config.plot != "none":
            with open(config.plot_output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(render(pairs, config.plot))
    except OSError as exc:
        return _fail(EXIT_UNREADABLE, f"cannot write output: {exc}")

    if config.max_dim >= 1:
        betti = betti_numbers(filt, None, config.field, up_to_dim=config.max_dim - 1)
        eps = "inf" if math.isinf(config.max_eps) else format_number(config.max_eps)
        print(f"betti at eps={eps}: " + " ".join(f"b{k}={b}" for k, b in enumerate(betti)), file=stdout)
    for q in top_features(pairs, config.top_n):
        death = "inf" if q.essential else format_number(q.death)
        pers = "inf" if q.essential else format_number(q.persistence)
        print(f"H{q.dim} [{format_number(q.birth)}, {death}) persistence {pers}", file=stdout)
    return EXIT_OK


def run_plot(pairs_path: str, kind: str, out: str, infinity_cap: Optional[float] = None) -> int:
    try:
        with open(pairs_path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        return _fail(EXIT_UNREADABLE, f"cannot read pairs file {pairs_path!r}: {exc.strerror}")
    except UnicodeDecodeError as exc:
        return _fail(EXIT_PARSE, f"{pairs_path}: {exc}")
    try:
        pairs = loads_pairs(text)
    except PairsFormatError as exc:
        return _fail(EXIT_PARSE, f"{pairs_path}: {exc}")
    try:
        svg = render(pairs, kind, infinity_cap)
    except ValueError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        return _fail(EXIT_UNREADABLE, f"cannot write {out!r}: {exc.strerror}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "compute":
        config = RunConfig(
            input=args.input, output=args.output, format=args.format, metric=args.metric,
            max_dim=args.max_dim, max_eps=args.max_eps, field=args.field, plot=args.plot,
            plot_output=args.plot_out, drop_zero=not args.keep_zero, top_n=args.top,
            dump_filtration=args.dump_filtration,
        )
        return run_compute(config)
    return run_plot(args.pairs, args.kind, args.out, args.infinity_cap)


if __name__ == "__main__":
    sys.exit(main())
