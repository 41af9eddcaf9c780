"""Command line entry points.

    wavelab run --config FILE --out DIR [--threads N]
    wavelab scenario NAME --out DIR [--threads N] [--h H] [--cfl C]
                          [--T T] [--eps LIST]

Exit status: 0 when every scenario assertion passes, 1 on assertion failure,
2 on usage errors (unknown scenario, malformed configuration).  --threads
falls back to the WAVELAB_THREADS environment variable, then to 1.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .config import ConfigParseError, ConfigValidationError, load_scenario
from .scenarios import SCENARIOS, UsageError, default_config, run_scenario


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("WAVELAB_THREADS", "1")))
    except ValueError:
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavelab",
        description="desk-scale experiments for a cubic semilinear wave system")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the scenario described by a config file")
    p_run.add_argument("--config", required=True, help="configuration file")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.add_argument("--threads", type=int, default=None)

    p_sc = sub.add_parser("scenario", help="run a named scenario with its defaults")
    p_sc.add_argument("name", help=f"one of {', '.join(sorted(SCENARIOS))}")
    p_sc.add_argument("--out", default=None, help="output directory")
    p_sc.add_argument("--threads", type=int, default=None)
    p_sc.add_argument("--h", type=float, default=None, help="grid spacing override")
    p_sc.add_argument("--cfl", type=float, default=None)
    p_sc.add_argument("--T", type=float, default=None, help="final time override")
    p_sc.add_argument("--eps", default=None, help="epsilon (scalar or comma list)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    threads = args.threads if args.threads else _default_threads()

    try:
        if args.command == "run":
            config = load_scenario(args.config)
        else:
            config = default_config(args.name)
            overrides = {}
            if args.h is not None:
                overrides["h"] = args.h
            if args.cfl is not None:
                overrides["cfl"] = args.cfl
            if args.T is not None:
                overrides["T"] = args.T
            if args.eps is not None:
                eps = tuple(float(tok) for tok in args.eps.split(",") if tok.strip())
                overrides["eps_list"] = eps
                overrides["data"] = config.data.with_epsilon(eps[0])
            if overrides:
                config = replace(config, **overrides)
    except (ConfigParseError, ConfigValidationError, UsageError, OSError) as exc:
        print(f"wavelab: {exc}", file=sys.stderr)
        return 2

    try:
        summary = run_scenario(config, out_dir=args.out, threads=threads)
    except UsageError as exc:
        print(f"wavelab: {exc}", file=sys.stderr)
        return 2

    for item in summary["assertions"]:
        status = "PASS" if item["passed"] else "FAIL"
        print(f"[{status}] {item['name']}: value={item['value']:.6g} "
              f"{item['op']} {item['threshold']:.6g}")
    print(f"scenario {summary['scenario']}: "
          f"{'all assertions passed' if summary['passed'] else 'FAILED'}")
    return 0 if summary["passed"] else 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
