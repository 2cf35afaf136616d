"""Fault-injection scripts and the engine that executes them.

Script grammar, one command per line, ``//`` comments::

    SLEEP s
    SCRAMBLE n, p
    BURST n, p, l
    END

Randomness comes from a xorshift64* generator so every platform draws
the same sequence for the same seed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Union

import numpy as np

from .memory import PhysicalMemory

__all__ = [
    "Sleep",
    "Scramble",
    "Burst",
    "End",
    "Command",
    "ScriptError",
    "parse_script",
    "format_script",
    "Prng",
    "InjectionEngine",
]

MASK64 = (1 << 64) - 1
_XS_MULT = 0x2545F4914F6CDD1D
_TWO_POW_M53 = 2.0 ** -53


@dataclass(frozen=True)
class Sleep:
    seconds: float


@dataclass(frozen=True)
class Scramble:
    n: int
    p: float


@dataclass(frozen=True)
class Burst:
    n: int
    p: float
    l: int


@dataclass(frozen=True)
class End:
    pass


Command = Union[Sleep, Scramble, Burst, End]


class ScriptError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


_INT_RE = re.compile(r"\d+")
_NUM_RE = re.compile(r"\d+(\.\d*)?|\.\d+")
_ARITY = {"SLEEP": 1, "SCRAMBLE": 2, "BURST": 3, "END": 0}


def _count(tok: str, lineno: int, what: str) -> int:
    if not _INT_RE.fullmatch(tok):
        raise ScriptError(lineno, f"{what} must be a non-negative integer, got {tok!r}")
    return int(tok)


def _number(tok: str, lineno: int, what: str) -> float:
    if not _NUM_RE.fullmatch(tok):
        raise ScriptError(lineno, f"malformed number for {what}: {tok!r}")
    return float(tok)


def _probability(tok: str, lineno: int) -> float:
    p = _number(tok, lineno, "probability")
    if not 0.0 <= p <= 1.0:
        raise ScriptError(lineno, f"probability {tok} outside [0, 1]")
    return p


def _parse_line(keyword: str, args: List[str], lineno: int) -> Command:
    if keyword not in _ARITY:
        raise ScriptError(lineno, f"unknown command {keyword!r}")
    if len(args) != _ARITY[keyword]:
        raise ScriptError(
            lineno, f"{keyword} takes {_ARITY[keyword]} argument(s), got {len(args)}"
        )
    if keyword == "SLEEP":
        s = _number(args[0], lineno, "SLEEP")
        if s <= 0:
            raise ScriptError(lineno, "SLEEP duration must be positive")
        return Sleep(s)
    if keyword == "SCRAMBLE":
        return Scramble(_count(args[0], lineno, "repetition count"), _probability(args[1], lineno))
    if keyword == "BURST":
        l = _count(args[2], lineno, "burst length")
        if l < 1:
            raise ScriptError(lineno, "burst length must be >= 1")
        return Burst(_count(args[0], lineno, "repetition count"), _probability(args[1], lineno), l)
    return End()


def parse_script(text: str) -> List[Command]:
    """Parse script text into commands; raises :class:`ScriptError` with a line number."""
    commands: List[Command] = []
    ended_at = None
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        if ended_at is not None:
            raise ScriptError(lineno, f"command after END (line {ended_at})")
        keyword, *tail = line.split(None, 1)
        rest = tail[0] if tail else ""
        args = [a.strip() for a in rest.split(",")] if rest else []
        if any(not a for a in args):
            raise ScriptError(lineno, "empty argument")
        cmd = _parse_line(keyword, args, lineno)
        commands.append(cmd)
        if isinstance(cmd, End):
            ended_at = lineno
    if ended_at is None:
        raise ScriptError(last_line + 1, "missing END")
    return commands


def _fmt(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return np.format_float_positional(x, trim="-")


def format_script(commands: Iterable[Command]) -> str:
    lines = []
    for c in commands:
        if isinstance(c, Sleep):
            lines.append(f"SLEEP {_fmt(c.seconds)}")
        elif isinstance(c, Scramble):
            lines.append(f"SCRAMBLE {c.n}, {_fmt(c.p)}")
        elif isinstance(c, Burst):
            lines.append(f"BURST {c.n}, {_fmt(c.p)}, {c.l}")
        elif isinstance(c, End):
            lines.append("END")
        else:
            raise TypeError(f"not a script command: {c!r}")
    return "\n".join(lines) + "\n"


class Prng:
    """xorshift64* generator (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D)."""

    def __init__(self, seed: int = 1):
        state = seed & MASK64
        if state == 0:
            raise ValueError("seed must be nonzero modulo 2**64")
        self.state = state
        self.draws = 0

    def next_u64(self) -> int:
        s = self.state
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        self.state = s
        self.draws += 1
        return (s * _XS_MULT) & MASK64

    def uniform_index(self, bound: int) -> int:
        """Index in ``[0, bound)`` by plain modulo reduction (slightly biased, fully portable)."""
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        return self.next_u64() % bound

    def bernoulli(self, p: float) -> bool:
        return (self.next_u64() >> 11) * _TWO_POW_M53 < p

    def mask32(self) -> int:
        while True:
            m = self.next_u64() & 0xFFFFFFFF
            if m:
                return m


class InjectionEngine:
    def __init__(self, memory: PhysicalMemory, rng: Prng):
        self.memory = memory
        self.rng = rng
        self.scrambled_count = 0

    def scramble(self, n: int, p: float) -> None:
        rng = self.rng
        words = self.memory.words
        capacity = self.memory.capacity
        for _ in range(n):
            idx = rng.uniform_index(capacity)
            if rng.bernoulli(p):
                words[idx] ^= rng.mask32()
                self.scrambled_count += 1

    def burst(self, n: int, p: float, l: int) -> None:
        capacity = self.memory.capacity
        if l < 1 or l > capacity:
            raise ValueError(f"burst length {l} must lie in [1, {capacity}]")
        rng = self.rng
        words = self.memory.words
        for _ in range(n):
            start = rng.uniform_index(capacity - l + 1)
            if rng.bernoulli(p):
                for addr in range(start, start + l):
                    words[addr] ^= rng.mask32()
                self.scrambled_count += l

    def execute(self, cmd: Command) -> None:
        """Run one injecting command; SLEEP and END are scheduling-only and do nothing here."""
        if isinstance(cmd, Scramble):
            self.scramble(cmd.n, cmd.p)
        elif isinstance(cmd, Burst):
            self.burst(cmd.n, cmd.p, cmd.l)
