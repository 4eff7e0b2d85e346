"""Finite surrogates for infinite sequences.

A `SequenceSpec` wraps a generator ``index -> value`` (1-based) together
with a horizon, an optional monotonicity claim, and optional metadata about
the limit behaviour.  Every claim is certified at sampled indices before a
result that depends on it is produced; nothing is ever inferred from the
samples alone beyond what the metadata licenses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

DEFAULT_HORIZON = 64

# Default certification schedule for gaps against the order unit.
DEFAULT_EPSILONS = (
    Fraction(1, 2**4),
    Fraction(1, 2**8),
    Fraction(1, 2**12),
    Fraction(1, 2**16),
)


@dataclass(frozen=True)
class StabilizesAt:
    """The sequence is constant from this index on."""

    index: int


@dataclass(frozen=True)
class DeclaredLimit:
    """The sequence converges to this value (certified by gap schedules)."""

    value: Any


@dataclass(frozen=True)
class DivergesToInfinity:
    """The sequence is unbounded above (certified against a bound ladder)."""


Metadata = Optional[object]


@dataclass
class SequenceSpec:
    """Lazily evaluated 1-indexed sequence with declared behaviour."""

    generator: Callable[[int], Any]
    horizon: int = DEFAULT_HORIZON
    metadata: Metadata = None
    monotonicity: str = "none"  # increasing | decreasing | none
    _memo: dict = field(default_factory=dict, repr=False)

    def term(self, n: int):
        if n < 1:
            raise IndexError("sequence indices start at 1")
        if n not in self._memo:
            self._memo[n] = self.generator(n)
        return self._memo[n]

    def sample(self, horizon: Optional[int] = None) -> list:
        h = horizon if horizon is not None else self.horizon
        return [self.term(n) for n in range(1, h + 1)]


def constant_sequence(value, horizon: int = DEFAULT_HORIZON) -> SequenceSpec:
    return SequenceSpec(
        generator=lambda n: value,
        horizon=horizon,
        metadata=StabilizesAt(1),
        monotonicity="increasing",
    )


def from_terms(
    terms: list,
    horizon: int = DEFAULT_HORIZON,
    metadata: Metadata = None,
    monotonicity: str = "none",
) -> SequenceSpec:
    """Explicit sequence; the final term repeats forever past the list.

    Repeating the last term makes the infinite sequence well defined, so
    stabilization metadata is attached automatically when none is given.
    """
    if not terms:
        raise ValueError("explicit sequence needs at least one term")
    items = list(terms)

    def gen(n, _items=items):
        return _items[n - 1] if n <= len(_items) else _items[-1]

    if metadata is None:
        metadata = StabilizesAt(len(items))
    return SequenceSpec(gen, horizon=max(horizon, len(items)), metadata=metadata,
                        monotonicity=monotonicity)


def detect_stable_tail(samples: list) -> Optional[int]:
    """Smallest 1-based index from which the sampled values are constant.

    Returns None when the last two samples differ (no evidence of
    stabilization within the sampled window).
    """
    if not samples:
        return None
    last = samples[-1]
    idx = len(samples)
    for i in range(len(samples) - 1, 0, -1):
        if samples[i - 1] == last:
            idx = i
        else:
            break
    if idx == len(samples) and len(samples) > 1:
        return None
    return idx


def detect_cycle(samples: list) -> Optional[tuple]:
    """Detect an eventually periodic pattern in the sampled window.

    Returns ``(preperiod, period)`` with 0-based preperiod, where
    ``samples[i + period] == samples[i]`` for all ``i >= preperiod``, and the
    window covers at least two full periods past the preperiod.  Returns
    None when no such pattern exists in the window.
    """
    n = len(samples)
    for period in range(1, n // 2 + 1):
        for pre in range(0, n - 2 * period + 1):
            if all(samples[i] == samples[i + period] for i in range(pre, n - period)):
                return pre, period
    return None
