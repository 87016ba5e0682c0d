"""``ercd`` command line: run a verification suite, write a JSON report.

Exit status is 0 when every enabled suite passes, 1 on any relation failure
and 2 on configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from pathlib import Path

from threadpoolctl import threadpool_limits

from .suites import COMMANDS, ConfigError, RunConfig, run_command

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _float_list(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _counts(text: str) -> list:
    parts = [int(x) for x in text.split(",")]
    return parts * 3 if len(parts) == 1 else parts


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ercd", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, suites in COMMANDS.items():
        s = sub.add_parser(name, help=f"suites: {', '.join(suites)}")
        s.add_argument("--config", type=Path, help="flat JSON file with RunConfig fields")
        s.add_argument("--seed", type=int)
        s.add_argument("--out", help="report path (default: stdout)")
        s.add_argument("--suite", action="append", dest="suites", choices=suites,
                       help="run only this suite (repeatable)")
        s.add_argument("--times", type=_float_list)
        s.add_argument("--refine", type=int)
        s.add_argument("--ordering", choices=("left", "right", "both"))
        s.add_argument("--modes", help="'random' or 'single:k=<kx>[,<ky>,<kz>]'")
        s.add_argument("--counts", type=_counts, help="odd node count per axis, e.g. 9 or 9,9,11")
        s.add_argument("--dk", type=float)
        s.add_argument("--mass", type=float)
        for tol in ("tol_alg", "tol_link", "tol_cons", "tol_exact", "tol_spec"):
            s.add_argument("--" + tol.replace("_", "-"), dest=tol, type=float)
    return p


def load_config(args: argparse.Namespace) -> RunConfig:
    data = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    cfg = RunConfig.from_dict(data)
    for name in ("seed", "out", "suites", "times", "refine", "ordering", "modes", "counts",
                 "dk", "mass", "tol_alg", "tol_link", "tol_cons", "tol_exact", "tol_spec"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    return cfg.validate()


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=True) + "\n"


def _limits():
    n = os.environ.get("ERCD_THREADS")
    if not n:
        return contextlib.nullcontext()
    return threadpool_limits(limits=int(n))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        if cfg.out is not None and not Path(cfg.out).parent.is_dir():
            raise OSError(f"output directory does not exist: {Path(cfg.out).parent}")
        with _limits():
            report = run_command(args.command, cfg)
        text = render(report)
        if cfg.out is None:
            sys.stdout.write(text)
        else:
            Path(cfg.out).write_text(text, encoding="utf-8")
    except (ConfigError, ValueError, OSError) as exc:
        print(f"ercd: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    status = "PASS" if report["pass"] else "FAIL"
    print(f"ercd {args.command}: {status} ({report['wall_time']:.2f} s)", file=sys.stderr)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
