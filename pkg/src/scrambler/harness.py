"""Experiment runner: fault scripts in virtual time against a round-robin reader.

Time is counted in read cycles. ``SLEEP s`` advances the script clock by
``s * reads_per_second`` cycles; injecting commands run in one piece at
the boundary before the next read. Per cycle the order is always
scheduler, injection, read, risk, adaptation.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple, Union

from .adaptation import AdaptationPolicy, RedundancyController, RedundancyEvent
from .injection import Burst, Command, End, InjectionEngine, Prng, Scramble, Sleep, parse_script
from .memory import LEVELS, RedundantStore, make_layout
from .voting import compute_risk

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "compile_schedule",
    "run_experiment",
    "cost",
    "emit_trace",
    "format_summary",
    "format_command",
]

PAPER_READS = 65_000_000
DESK_READS = 1_000_000


@dataclass(frozen=True)
class ExperimentConfig:
    script_path: Optional[str] = None
    initial_redundancy: int = 5
    scrub: bool = True
    adaptive: bool = False
    n_cells: int = 20000
    stride: int = 20
    total_reads: int = PAPER_READS
    seed: int = 1
    reads_per_second: int = 100000
    trace_path: Optional[str] = None
    # inline script text, used instead of script_path when given
    script: Optional[str] = None

    def validate(self) -> None:
        if self.initial_redundancy % 2 == 0 or not 3 <= self.initial_redundancy <= 11:
            raise ValueError(
                f"initial redundancy must be odd in [3, 11], got {self.initial_redundancy}"
            )
        for name in ("n_cells", "stride", "total_reads", "reads_per_second"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.seed % (1 << 64) == 0:
            raise ValueError("seed must be nonzero modulo 2**64")
        if self.script is None and self.script_path is None:
            raise ValueError("no fault script given")

    def load_script(self) -> List[Command]:
        if self.script is not None:
            return parse_script(self.script)
        with open(self.script_path) as fh:
            return parse_script(fh.read())


@dataclass
class ExperimentReport:
    scrambled_cells: int
    failures: int
    final_redundancy: int
    runs_per_level: Dict[int, int]
    replica_accesses: int
    events: List[RedundancyEvent] = field(default_factory=list)
    initial_redundancy: int = 5
    total_reads: int = 0

    def to_json(self) -> str:
        d = asdict(self)
        d["runs_per_level"] = {str(k): v for k, v in sorted(self.runs_per_level.items())}
        return json.dumps(d, sort_keys=True, indent=2)


def compile_schedule(
    commands: Sequence[Command], reads_per_second: int
) -> List[Tuple[int, Command]]:
    """Pair each injecting command with the number of reads completed before it runs."""
    clock = 0
    schedule = []
    for cmd in commands:
        if isinstance(cmd, Sleep):
            clock += int(round(cmd.seconds * reads_per_second))
        elif isinstance(cmd, End):
            break
        else:
            schedule.append((clock, cmd))
    return schedule


def format_command(cmd: Command) -> str:
    if isinstance(cmd, Sleep):
        return f"Scrambler::sleep({cmd.seconds:g})"
    if isinstance(cmd, Scramble):
        return f"Scrambler::scramble({cmd.n},{cmd.p:g})"
    if isinstance(cmd, Burst):
        return f"Scrambler::burst({cmd.n},{cmd.p:g},{cmd.l})"
    return "Scrambler::END"


def run_experiment(
    config: ExperimentConfig,
    on_command: Optional[Callable[[int, Command], None]] = None,
) -> ExperimentReport:
    config.validate()
    commands = config.load_script()
    schedule = compile_schedule(commands, config.reads_per_second)

    layout = make_layout(config.n_cells, config.stride)
    store = RedundantStore(layout, config.initial_redundancy, scrub=config.scrub)
    for cell in range(config.n_cells):
        store.write(cell, cell)
    engine = InjectionEngine(store.memory, Prng(config.seed))
    controller = RedundancyController(AdaptationPolicy(), current=config.initial_redundancy)

    n_cells = config.n_cells
    total = config.total_reads
    adaptive = config.adaptive
    read = store.read
    observe = controller.observe

    # boundaries at which the loop must stop and run injections
    stops = sorted({at for at, _ in schedule if at < total})
    pending = iter(schedule)
    nxt = next(pending, None)
    done = 0
    for stop in stops + [total]:
        while nxt is not None and nxt[0] <= done:
            if on_command is not None:
                on_command(done, nxt[1])
            engine.execute(nxt[1])
            nxt = next(pending, None)
        for c in range(done + 1, stop + 1):
            out = read((c - 1) % n_cells)
            if adaptive and observe(compute_risk(out.k, out.m), c) is not None:
                store.set_redundancy(controller.publish())
        done = stop

    counters = store.counters
    report = ExperimentReport(
        scrambled_cells=engine.scrambled_count,
        failures=counters.read_failures,
        final_redundancy=store.active_redundancy,
        runs_per_level=dict(counters.reads_at_redundancy),
        replica_accesses=counters.replica_accesses,
        events=list(controller.events),
        initial_redundancy=config.initial_redundancy,
        total_reads=total,
    )
    if config.trace_path:
        emit_trace(report, config.trace_path)
    return report


def cost(report: Union[ExperimentReport, Dict[int, int]]) -> int:
    """Replica reads weighted by level: sum of ``level * runs`` over all levels."""
    runs = report.runs_per_level if isinstance(report, ExperimentReport) else report
    return sum(level * n for level, n in runs.items())


def emit_trace(report: ExperimentReport, sink: Union[str, os.PathLike, TextIO]) -> None:
    """Write the redundancy step function as ``cycle,redundancy`` CSV."""
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", newline="") as fh:
            emit_trace(report, fh)
        return
    sink.write("cycle,redundancy\n")
    sink.write(f"0,{report.initial_redundancy}\n")
    for ev in report.events:
        sink.write(f"{ev.cycle},{ev.new_level}\n")
    sink.write(f"{report.total_reads},{report.final_redundancy}\n")


def trace_text(report: ExperimentReport) -> str:
    buf = io.StringIO()
    emit_trace(report, buf)
    return buf.getvalue()


def format_summary(report: ExperimentReport) -> str:
    lines = [
        f"{report.scrambled_cells} scrambled cells, {report.failures} failures, "
        f"redundance == {report.final_redundancy}"
    ]
    for level in LEVELS:
        lines.append(f"redundance {level}: {report.runs_per_level.get(level, 0)} runs")
    return "\n".join(lines) + "\n"
