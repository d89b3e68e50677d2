"""Frames of discernment, permutation events and the permutation event space.

A permutation event is stored as a plain tuple of element indices into its
frame; ``(0, 1)`` and ``(1, 0)`` are different events and ``()`` is the empty
event. Labels are only resolved when reading or writing documents.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, permutations
from typing import Iterator, Sequence

from .combinatorics import BigCount, permutation_count
from .errors import DomainError

PermutationEvent = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class FrameOfDiscernment:
    """An ordered list of distinct, non-empty element labels."""

    elements: tuple

    def __init__(self, elements: Sequence[str]):
        elements = tuple(elements)
        if not elements:
            raise DomainError("a frame of discernment needs at least one element")
        for label in elements:
            if not isinstance(label, str) or not label:
                raise DomainError(f"element labels must be non-empty strings, got {label!r}")
        if len(set(elements)) != len(elements):
            dupes = sorted({x for x in elements if elements.count(x) > 1})
            raise DomainError(f"duplicate element labels: {', '.join(dupes)}")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def generic(cls, n: int) -> "FrameOfDiscernment":
        """Frame ``t1 .. tn`` used when only the size is known."""
        if n < 1:
            raise DomainError(f"frame size must be >= 1, got {n}")
        return cls([f"t{k}" for k in range(1, n + 1)])

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise DomainError(f"unknown element label {label!r}") from None

    def event(self, labels: Sequence[str]) -> PermutationEvent:
        """Build an event from labels, checking it is valid for this frame."""
        event = tuple(self.index(label) for label in labels)
        check_event(self, event)
        return event

    def labels(self, event: Sequence[int]) -> list:
        return [self.elements[k] for k in event]

    def format_event(self, event: Sequence[int]) -> str:
        """Render as ``(R,B)``; the empty event renders as ``∅``."""
        if not event:
            return "∅"
        return "(" + ",".join(self.labels(event)) + ")"

    def format_subset(self, subset) -> str:
        return "{" + ",".join(self.labels(sorted(subset))) + "}"


def check_event(frame: FrameOfDiscernment, event: Sequence[int]) -> None:
    """Raise :class:`DomainError` unless ``event`` is valid for ``frame``."""
    for k in event:
        if not isinstance(k, int) or not 0 <= k < frame.n:
            raise DomainError(f"event index {k!r} out of range for a frame of size {frame.n}")
    if len(set(event)) != len(event):
        raise DomainError(f"event {tuple(event)} repeats an element")


def enumerate_events(
    frame: FrameOfDiscernment, include_empty: bool = False
) -> Iterator[PermutationEvent]:
    """Lazily yield every permutation event of ``frame``.

    Events come in ascending cardinality, lexicographically by index tuple
    within a cardinality. The empty event is yielded first when
    ``include_empty`` is set.
    """
    start = 0 if include_empty else 1
    indices = range(frame.n)
    return chain.from_iterable(permutations(indices, i) for i in range(start, frame.n + 1))


def pes_size(n: int, include_empty: bool = False) -> BigCount:
    """Exact number of events :func:`enumerate_events` yields for an ``n``-frame."""
    if n < 1:
        raise DomainError(f"pes_size requires n >= 1, got {n}")
    start = 0 if include_empty else 1
    return sum(permutation_count(n, i) for i in range(start, n + 1))


def forget_order(event: Sequence[int]) -> frozenset:
    """The unordered subset underlying a permutation event."""
    return frozenset(event)
