"""Feedback controller that sizes redundancy from observed read risk.

The controller stands in for the monitor thread behind the reflective
``_Redundance`` variable: each read reports its risk, the controller
decides on a level, and the store picks that level up through
:meth:`RedundancyController.publish` before the next read.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .voting import RiskSample

__all__ = ["AdaptationPolicy", "RedundancyController", "RedundancyEvent", "RAISED", "LOWERED"]

RAISED = "raised"
LOWERED = "lowered"


@dataclass(frozen=True)
class AdaptationPolicy:
    raise_threshold: float = 0.5
    calm_window: int = 1000
    step: int = 2
    min_redundancy: int = 3
    max_redundancy: int = 11

    def __post_init__(self):
        if self.min_redundancy % 2 == 0 or self.max_redundancy % 2 == 0:
            raise ValueError("redundancy bounds must be odd")
        if self.min_redundancy < 3 or self.min_redundancy > self.max_redundancy:
            raise ValueError("need 3 <= min_redundancy <= max_redundancy")
        if self.step <= 0 or self.step % 2:
            raise ValueError(f"step must be a positive even number, got {self.step}")
        if not 0 < self.raise_threshold < 1:
            raise ValueError(f"raise_threshold must lie in (0, 1), got {self.raise_threshold}")
        if self.calm_window < 1:
            raise ValueError(f"calm_window must be >= 1, got {self.calm_window}")


@dataclass(frozen=True)
class RedundancyEvent:
    """Level change decided after observing read ``cycle``; reads from
    ``cycle + 1`` on run at ``new_level``."""

    cycle: int
    new_level: int
    cause: str


@dataclass
class RedundancyController:
    policy: AdaptationPolicy = field(default_factory=AdaptationPolicy)
    current: int = 5
    calm_count: int = 0
    events: List[RedundancyEvent] = field(default_factory=list)
    last_cycle: Optional[int] = None

    def __post_init__(self):
        p = self.policy
        if self.current % 2 == 0 or not p.min_redundancy <= self.current <= p.max_redundancy:
            raise ValueError(
                f"initial level must be odd in [{p.min_redundancy}, {p.max_redundancy}],"
                f" got {self.current}"
            )
        self._t_num, self._t_den = Fraction(p.raise_threshold).as_integer_ratio()

    def publish(self) -> int:
        return self.current

    def observe(self, risk: RiskSample, cycle: int) -> Optional[RedundancyEvent]:
        if self.last_cycle is not None and cycle <= self.last_cycle:
            raise ValueError(f"cycle {cycle} not after previous cycle {self.last_cycle}")
        self.last_cycle = cycle
        p = self.policy

        if risk.num * self._t_den > self._t_num * risk.den:
            self.calm_count = 0
            if self.current < p.max_redundancy:
                self.current = min(self.current + p.step, p.max_redundancy)
                return self._emit(cycle, RAISED)
            return None

        if risk.num == 0:
            self.calm_count += 1
            if self.calm_count >= p.calm_window:
                self.calm_count = 0
                if self.current > p.min_redundancy:
                    self.current = max(self.current - p.step, p.min_redundancy)
                    return self._emit(cycle, LOWERED)
            return None

        self.calm_count = 0
        return None

    def _emit(self, cycle: int, cause: str) -> RedundancyEvent:
        event = RedundancyEvent(cycle, self.current, cause)
        self.events.append(event)
        return event
