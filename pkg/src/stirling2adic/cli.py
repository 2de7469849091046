"""Command-line frontend.

Exit status: 0 success or Pass, 1 verification Fail, 2 usage error,
3 precision cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .exact import stirling1_signed, stirling2, stirling2_column, vp
from .levels import ExactPeriodic, Sampled, build_level_tree, export_tree, level_summary
from .padic import PrecisionExceeded, v2_stirling5
from .verify import STATEMENTS, verify_all, verify_statement

OUTPUT_DIR_ENV = "STIRLING2ADIC_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass(frozen=True)
class CliConfig:
    precision_cap: int = 256
    sample_count: int = 64
    output_format: str = "plain"
    output_path: str | None = None

    def __post_init__(self):
        if self.precision_cap < 8:
            raise ValueError("precision_cap must be >= 8")
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")
        if self.output_format not in ("json", "csv", "dot", "plain"):
            raise ValueError(f"unknown output format {self.output_format!r}")


def load_config(path: str | None) -> dict:
    """Read a key=value config file; blank lines and '#' comments are skipped."""
    if path is None:
        return {}
    known = {f.name: f.type for f in fields(CliConfig)}
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in known:
            raise ValueError(f"{path}:{lineno}: bad config line {line!r}")
        out[key] = int(value) if key in ("precision_cap", "sample_count") else value
    return out


def _natural(text: str) -> int:
    # decimal digits only; no signs, no scientific notation
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"expected a non-negative decimal integer, got {text!r}")
    return int(text)


def _output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


def _write(text: str, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _fmt_val(v) -> str:
    return "inf" if v == float("inf") else str(v)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="stirling2adic",
        description="Exact Stirling numbers and their 2-adic valuations.",
    )
    p.add_argument("--config", help="key=value config file (flags take precedence)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stirling", help="exact S(n,k) or s(n,k)")
    s.add_argument("n", type=_natural)
    s.add_argument("k", type=_natural)
    s.add_argument("--kind", choices=("first", "second"), default="second")
    s.add_argument("--valuation", type=_natural, metavar="P", help="print v_P instead of the value")

    v = sub.add_parser("v2s5", help="v_2(S(n,5)) for arbitrarily large n")
    v.add_argument("n", type=_natural)
    v.add_argument("--precision-cap", type=_natural)

    t = sub.add_parser("tree", help="build the congruence-class level tree")
    t.add_argument("--k", type=_natural, required=True)
    t.add_argument("--max-level", type=_natural, required=True)
    mode = t.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact classification (k = 5 only)")
    mode.add_argument("--samples", type=_natural, help="members inspected per class")
    t.add_argument("--min-samples", type=_natural, default=16)
    t.add_argument("--precision-cap", type=_natural)
    t.add_argument("--format", choices=("dot", "json"), default=None)
    t.add_argument("--output", help="file for the DOT/JSON export")

    w = sub.add_parser("sweep", help="table of v_p(S(n,k)) for a range of n")
    w.add_argument("--k", type=_natural, required=True)
    w.add_argument("--n-min", type=_natural, default=0)
    w.add_argument("--n-max", type=_natural, required=True)
    w.add_argument("--p", type=_natural, default=2)
    w.add_argument("--format", choices=("csv", "json", "plain"), default=None)
    w.add_argument("--output")

    r = sub.add_parser("verify", help="check a statement over a range and write a JSON report")
    r.add_argument("statement", choices=STATEMENTS + ("all",))
    r.add_argument("--i-max", type=_natural, default=100_000)
    r.add_argument("--n-max", type=_natural, default=10)
    r.add_argument("--low-n-max", type=_natural, default=10_000)
    r.add_argument("--k-max", type=_natural, default=10**6)
    r.add_argument("--max-level", type=_natural, default=8)
    r.add_argument("--lte-grid", type=_natural, nargs=4, metavar=("N_MAX", "R_MAX", "M_MAX", "I_MAX"),
                   default=(8, 9, 8, 9))
    r.add_argument("--jobs", type=_natural, default=1)
    r.add_argument("--report", help="path of the JSON report")
    return p


def _config(args) -> CliConfig:
    base = load_config(args.config)
    over = {}
    if getattr(args, "precision_cap", None) is not None:
        over["precision_cap"] = args.precision_cap
    if getattr(args, "samples", None) is not None:
        over["sample_count"] = args.samples
    if getattr(args, "format", None) is not None:
        over["output_format"] = args.format
    if getattr(args, "output", None) is not None:
        over["output_path"] = args.output
    return replace(CliConfig(**base), **over)


def cmd_stirling(args, cfg: CliConfig, out) -> int:
    value = stirling1_signed(args.n, args.k) if args.kind == "first" else stirling2(args.n, args.k)
    if args.valuation is not None:
        out.write(_fmt_val(vp(value, args.valuation)) + "\n")
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_v2s5(args, cfg: CliConfig, out) -> int:
    if args.n < 1:
        raise argparse.ArgumentTypeError("n must be >= 1")
    out.write(_fmt_val(v2_stirling5(args.n, cfg.precision_cap)) + "\n")
    return EXIT_OK


def cmd_tree(args, cfg: CliConfig, out) -> int:
    if args.exact:
        if args.k != 5:
            raise argparse.ArgumentTypeError("--exact classification is only available for k = 5")
        policy = ExactPeriodic(cfg.precision_cap)
    else:
        policy = Sampled(cfg.sample_count, args.min_samples)
    tree = build_level_tree(args.k, args.max_level, policy)
    out.write(level_summary(tree))
    fmt = cfg.output_format if cfg.output_format in ("dot", "json") else "dot"
    path = cfg.output_path or _output_dir() / f"tree-k{args.k}-L{args.max_level}.{fmt}"
    _write(export_tree(tree, fmt), path)
    return EXIT_OK


def cmd_sweep(args, cfg: CliConfig, out) -> int:
    column = stirling2_column(args.k, args.n_max)
    rows = [(n, args.k, vp(column[n], args.p)) for n in range(args.n_min, args.n_max + 1)]
    fmt = cfg.output_format if cfg.output_format in ("csv", "json") else "plain"
    if fmt == "csv":
        text = "n,k,valuation\n" + "".join(f"{n},{k},{_fmt_val(v)}\n" for n, k, v in rows)
    elif fmt == "json":
        text = json.dumps([{"n": n, "k": k, "valuation": _fmt_val(v) if v == float("inf") else v}
                           for n, k, v in rows], indent=2) + "\n"
    else:
        text = "".join(f"{n} {_fmt_val(v)}\n" for n, _, v in rows)
    if cfg.output_path:
        _write(text, cfg.output_path)
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args, cfg: CliConfig, out) -> int:
    if args.statement in ("theorem-2-7", "all") and args.i_max < 39:
        raise argparse.ArgumentTypeError("--i-max must be >= 39")
    if args.statement in ("wannemacker", "theorem-3-2", "theorem-3-3", "all") and not 1 <= args.n_max <= 10:
        raise argparse.ArgumentTypeError("--n-max must be in [1, 10]")
    if args.statement in ("level-constants", "all") and not 4 <= args.max_level <= 8:
        raise argparse.ArgumentTypeError("--max-level must be in [4, 8]")
    if args.statement in ("lemma-2-1", "all") and args.lte_grid[0] < 2:
        raise argparse.ArgumentTypeError("N_MAX must be >= 2")
    jobs = max(1, args.jobs)
    if args.statement == "all":
        reports = verify_all(args.i_max, args.n_max, args.low_n_max, args.k_max, args.max_level, jobs)
    else:
        params = {
            "lemma-2-1": dict(zip(("N_max", "r_max", "m_max", "i_max"), args.lte_grid)),
            "theorem-2-7": {"i_max": args.i_max, "jobs": jobs},
            "wannemacker": {"n_max": args.n_max},
            "theorem-3-2": {"n_max": args.n_max},
            "theorem-3-3": {"n_max": args.n_max},
            "level-constants": {"max_level": args.max_level},
            "low-residues": {"n_max": args.low_n_max, "jobs": jobs},
            "digit-identity": {"k_max": args.k_max, "jobs": jobs},
        }[args.statement]
        reports = [verify_statement(args.statement, **params)]
    for rep in reports:
        out.write(rep.summary() + "\n")
    if args.statement == "all":
        text = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    else:
        text = reports[0].to_json()
    path = args.report or cfg.output_path or _output_dir() / f"report-{args.statement}.json"
    _write(text, path)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {
    "stirling": cmd_stirling,
    "v2s5": cmd_v2s5,
    "tree": cmd_tree,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except (argparse.ArgumentTypeError, ValueError, OSError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExceeded as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
