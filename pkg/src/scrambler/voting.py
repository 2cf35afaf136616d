"""Majority voting over replica sets and the risk-of-failure metric."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["VoteResult", "RiskSample", "majority_vote", "compute_risk"]

MIN_REDUNDANCY = 3
MAX_REDUNDANCY = 11


def _check_level(k: int) -> None:
    if k % 2 == 0 or not MIN_REDUNDANCY <= k <= MAX_REDUNDANCY:
        raise ValueError(f"redundancy must be odd in [3, 11], got {k}")


@dataclass(frozen=True)
class VoteResult:
    """Outcome of one vote.

    ``m`` is the multiplicity of the most common value among the ``k``
    replicas; ``majority_value`` is None unless ``m > k // 2``.
    """

    majority_value: Optional[int]
    m: int
    k: int

    @property
    def ok(self) -> bool:
        return self.majority_value is not None


def majority_vote(replicas: Sequence[int]) -> VoteResult:
    k = len(replicas)
    _check_level(k)
    first = replicas[0]
    if replicas.count(first) == k:
        return VoteResult(first, k, k)
    value, m = Counter(replicas).most_common(1)[0]
    if m > k // 2:
        return VoteResult(value, m, k)
    return VoteResult(None, m, k)


@dataclass(frozen=True)
class RiskSample:
    """Risk of failure kept as the exact ratio ``num / den``.

    Stored as two integers so threshold tests like ``r > 0.5`` never hit a
    floating-point tie.
    """

    num: int
    den: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def exceeds(self, threshold: float) -> bool:
        t_num, t_den = Fraction(threshold).as_integer_ratio()
        return self.num * t_den > t_num * self.den

    def __float__(self) -> float:
        return self.num / self.den


_RISK_ONE = RiskSample(1, 1)


def compute_risk(k: int, m: int) -> RiskSample:
    """Risk for a read at redundancy ``k = 2n + 1`` whose largest agreeing set is ``m``.

    ``(k - m) / n`` while a majority survives, 1 once it is lost.
    """
    if k % 2 == 0 or k < MIN_REDUNDANCY:
        raise ValueError(f"redundancy must be odd and >= 3, got {k}")
    if not 1 <= m <= k:
        raise ValueError(f"agreement count must lie in [1, {k}], got {m}")
    n = (k - 1) // 2
    if m > n:
        return RiskSample(k - m, n)
    return _RISK_ONE
