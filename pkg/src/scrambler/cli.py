"""``scrambler <script> <redundancy> <scrub|noscrub> <adaptive|noadaptive>``"""

from __future__ import annotations

import argparse
import sys

from .harness import DESK_READS, PAPER_READS, ExperimentConfig, format_command, format_summary, run_experiment
from .injection import ScriptError


def _choice(yes: str, no: str):
    def parse(text: str) -> bool:
        if text == yes:
            return True
        if text == no:
            return False
        raise argparse.ArgumentTypeError(f"expected {yes!r} or {no!r}, got {text!r}")

    parse.__name__ = f"{yes}|{no}"
    return parse


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="scrambler",
        description="Run a fault-injection script against adaptively redundant memory.",
    )
    ap.add_argument("script", help="fault script file")
    ap.add_argument("redundancy", type=int, help="initial redundancy (odd, 3..11)")
    ap.add_argument("scrub", type=_choice("scrub", "noscrub"))
    ap.add_argument("adaptive", type=_choice("adaptive", "noadaptive"))
    ap.add_argument("--cells", type=int, default=20000)
    ap.add_argument("--stride", type=int, default=20)
    ap.add_argument("--reads", type=int, default=DESK_READS)
    ap.add_argument("--full", action="store_true", help=f"run {PAPER_READS} reads")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--reads-per-second", type=int, default=100000)
    ap.add_argument("--trace", metavar="FILE", help="write cycle,redundancy CSV here")
    ap.add_argument("-q", "--quiet", action="store_true", help="print only the summary")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = ExperimentConfig(
        script_path=args.script,
        initial_redundancy=args.redundancy,
        scrub=args.scrub,
        adaptive=args.adaptive,
        n_cells=args.cells,
        stride=args.stride,
        total_reads=PAPER_READS if args.full else args.reads,
        seed=args.seed,
        reads_per_second=args.reads_per_second,
        trace_path=args.trace,
    )

    def echo(cycle, cmd):
        if not args.quiet:
            print(f"run {cycle + 1}: {format_command(cmd)}")

    try:
        report = run_experiment(config, on_command=echo)
    except ScriptError as exc:
        print(f"scrambler: {args.script}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"scrambler: {exc}", file=sys.stderr)
        return 2

    sys.stdout.write(format_summary(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
