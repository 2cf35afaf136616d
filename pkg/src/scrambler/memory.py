"""Replicated logical cells living in a flat physical memory.

Replicas of logical cell ``i`` sit exactly ``stride`` physical words apart.
Cells are grouped in blocks of ``stride``; a block occupies
``stride * r_max`` words with all replica-0 copies first, then all
replica-1 copies, and so on::

    addr(i, j) = (i // stride) * stride * r_max + j * stride + i % stride

A burst no longer than ``stride`` therefore touches at most one replica of
any logical cell.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .voting import MAX_REDUNDANCY, MIN_REDUNDANCY, _check_level, majority_vote

__all__ = [
    "LayoutMap",
    "make_layout",
    "PhysicalMemory",
    "CellCounters",
    "ReadOutcome",
    "RedundantStore",
    "WORD_MASK",
]

WORD_MASK = 0xFFFFFFFF
LEVELS = tuple(range(MIN_REDUNDANCY, MAX_REDUNDANCY + 1, 2))


@dataclass(frozen=True)
class LayoutMap:
    n_cells: int
    stride: int
    r_max: int = MAX_REDUNDANCY

    @property
    def capacity(self) -> int:
        return self.n_cells * self.r_max

    def addr(self, cell: int, replica: int) -> int:
        if not 0 <= cell < self.n_cells:
            raise IndexError(f"cell {cell} out of range [0, {self.n_cells})")
        if not 0 <= replica < self.r_max:
            raise IndexError(f"replica {replica} out of range [0, {self.r_max})")
        g, off = divmod(cell, self.stride)
        return g * self.stride * self.r_max + replica * self.stride + off

    def address_table(self) -> np.ndarray:
        """All addresses as an ``(n_cells, r_max)`` int64 array."""
        cells = np.arange(self.n_cells, dtype=np.int64)[:, None]
        reps = np.arange(self.r_max, dtype=np.int64)[None, :]
        g, off = np.divmod(cells, self.stride)
        return g * (self.stride * self.r_max) + reps * self.stride + off


def make_layout(n_cells: int, stride: int, r_max: int = MAX_REDUNDANCY) -> LayoutMap:
    if n_cells <= 0:
        raise ValueError(f"n_cells must be positive, got {n_cells}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if n_cells % stride:
        raise ValueError(f"n_cells ({n_cells}) must be a multiple of stride ({stride})")
    if r_max < 3 or r_max % 2 == 0:
        raise ValueError(f"r_max must be odd and >= 3, got {r_max}")
    return LayoutMap(n_cells, stride, r_max)


class PhysicalMemory:
    """Flat array of unsigned 32-bit words."""

    def __init__(self, capacity: int):
        if capacity <= 0:
            raise ValueError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self.words = array("I", bytes(4 * capacity))

    def __len__(self) -> int:
        return self.capacity

    def __getitem__(self, addr: int) -> int:
        if not 0 <= addr < self.capacity:
            raise IndexError(f"address {addr} out of range")
        return self.words[addr]

    def __setitem__(self, addr: int, value: int) -> None:
        if not 0 <= addr < self.capacity:
            raise IndexError(f"address {addr} out of range")
        self.words[addr] = value & WORD_MASK

    def xor(self, addr: int, mask: int) -> None:
        self.words[addr] ^= mask

    def snapshot(self) -> np.ndarray:
        return np.frombuffer(self.words.tobytes(), dtype=np.uint32).copy()


@dataclass
class CellCounters:
    replica_accesses: int = 0
    read_failures: int = 0
    reads_at_redundancy: Dict[int, int] = field(
        default_factory=lambda: {k: 0 for k in LEVELS}
    )

    @property
    def total_reads(self) -> int:
        return sum(self.reads_at_redundancy.values())


@dataclass(frozen=True)
class ReadOutcome:
    """Result of a redundant read.

    ``k`` is the number of replicas that took part in the vote. It is below
    the active level only while a cell's newly activated replicas are still
    unpopulated.
    """

    value: Optional[int]
    m: int
    k: int

    @property
    def ok(self) -> bool:
        return self.value is not None


class RedundantStore:
    """Logical cells kept as replica sets with majority-voted reads.

    Raising the redundancy does not rewrite anything. Each cell remembers how
    many of its replicas hold data written at an active level, and only those
    take part in its votes. A write, or a successful scrubbed read, brings the
    cell up to the current level.
    """

    def __init__(self, layout: LayoutMap, redundancy: int = 3, scrub: bool = True):
        _check_level(redundancy)
        if redundancy > layout.r_max:
            raise ValueError(f"redundancy {redundancy} exceeds r_max {layout.r_max}")
        self.layout = layout
        self.memory = PhysicalMemory(layout.capacity)
        self.scrub_enabled = scrub
        self.counters = CellCounters()
        self._active = redundancy
        self._stride = layout.stride
        self._base = [int(a) for a in layout.address_table()[:, 0]]
        # replicas per cell holding data written at an active level;
        # zeroed memory counts as a consistent initial write
        self._filled = [redundancy] * layout.n_cells

    @property
    def active_redundancy(self) -> int:
        return self._active

    def filled(self, cell: int) -> int:
        return self._filled[cell]

    def replica_addresses(self, cell: int, k: Optional[int] = None) -> range:
        self._check_cell(cell)
        k = self._active if k is None else k
        base = self._base[cell]
        return range(base, base + k * self._stride, self._stride)

    def replicas(self, cell: int) -> list:
        """Current contents of the active replicas of ``cell``."""
        r = self.replica_addresses(cell)
        return self.memory.words[r.start:r.stop:r.step].tolist()

    def _check_cell(self, cell: int) -> None:
        if not 0 <= cell < self.layout.n_cells:
            raise IndexError(f"cell {cell} out of range [0, {self.layout.n_cells})")

    def write(self, cell: int, value: int) -> None:
        self._check_cell(cell)
        k = self._active
        base = self._base[cell]
        stride = self._stride
        self.memory.words[base:base + k * stride:stride] = array("I", [value & WORD_MASK]) * k
        self._filled[cell] = k
        self.counters.replica_accesses += k

    def read(self, cell: int) -> ReadOutcome:
        if not 0 <= cell < self.layout.n_cells:
            raise IndexError(f"cell {cell} out of range [0, {self.layout.n_cells})")
        k = self._active
        counters = self.counters
        counters.reads_at_redundancy[k] += 1
        counters.replica_accesses += k

        voters = self._filled[cell]
        if voters > k:
            voters = k
        base = self._base[cell]
        stride = self._stride
        words = self.memory.words
        vals = words[base:base + voters * stride:stride]
        first = vals[0]
        if vals.count(first) == voters:
            if voters < k and self.scrub_enabled:
                self._materialize(cell, first, voters, k)
            return ReadOutcome(first, voters, voters)

        vote = majority_vote(vals)
        if vote.majority_value is None:
            counters.read_failures += 1
            return ReadOutcome(None, vote.m, voters)
        if self.scrub_enabled:
            good = vote.majority_value
            for j in range(voters):
                if vals[j] != good:
                    words[base + j * stride] = good
                    counters.replica_accesses += 1
            if voters < k:
                self._materialize(cell, good, voters, k)
        return ReadOutcome(vote.majority_value, vote.m, voters)

    def _materialize(self, cell: int, value: int, start: int, k: int) -> None:
        base = self._base[cell]
        stride = self._stride
        self.memory.words[base + start * stride:base + k * stride:stride] = (
            array("I", [value]) * (k - start)
        )
        self._filled[cell] = k
        self.counters.replica_accesses += k - start

    def set_redundancy(self, level: int) -> None:
        _check_level(level)
        if level > self.layout.r_max:
            raise ValueError(f"redundancy {level} exceeds r_max {self.layout.r_max}")
        if level < self._active:
            # dropped replicas stop receiving writes, so they can no longer vote
            self._filled = [f if f < level else level for f in self._filled]
        self._active = level
