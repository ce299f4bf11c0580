"""Shared types: arcs, arc streams, insertion outcomes and instrumentation.

Arc streams use a small line-oriented text format::

    # comment lines start with '#'
    p 4 3        <- optional header: vertex count, arc count
    0 1
    1 2
    2 3

Vertices are 0-based integers. Events are kept in file order because every
engine is sensitive to insertion order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple


class UsageError(Exception):
    """Invalid use of an engine or data structure (bad vertex, poisoned engine, ...)."""


class PoisonedEngineError(UsageError):
    """Raised when inserting into an engine that has already reported a cycle."""


class ArcStreamError(ValueError):
    """Malformed arc-stream text."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BoundsError(ArcStreamError):
    """An endpoint is outside the declared vertex range."""


class Arc(NamedTuple):
    tail: int
    head: int


@dataclass
class ArcStream:
    events: List[Arc] = field(default_factory=list)
    declared_n: Optional[int] = None
    declared_m: Optional[int] = None

    @property
    def n(self) -> int:
        """Declared vertex count, or one more than the largest endpoint."""
        if self.declared_n is not None:
            return self.declared_n
        top = -1
        for a, b in self.events:
            top = max(top, a, b)
        return top + 1

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def to_text(self) -> str:
        return format_arc_stream(self)


def _parse_int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ArcStreamError(f"expected an integer, got {token!r}", lineno) from None
    if value < 0:
        raise ArcStreamError(f"negative value {value}", lineno)
    return value


def parse_arc_stream(text: str) -> ArcStream:
    """Parse arc-stream text into an :class:`ArcStream`.

    Raises :class:`ArcStreamError` for malformed lines and
    :class:`BoundsError` for endpoints not below the declared vertex count.
    """
    stream = ArcStream()
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if seen_content:
                raise ArcStreamError("header must be the first non-comment line", lineno)
            if len(parts) != 3:
                raise ArcStreamError("header must be 'p <n> <m>'", lineno)
            stream.declared_n = _parse_int(parts[1], lineno)
            stream.declared_m = _parse_int(parts[2], lineno)
            seen_content = True
            continue
        if len(parts) != 2:
            raise ArcStreamError(f"expected 'u v', got {line!r}", lineno)
        tail, head = _parse_int(parts[0], lineno), _parse_int(parts[1], lineno)
        n = stream.declared_n
        if n is not None and (tail >= n or head >= n):
            raise BoundsError(f"endpoint out of range for n={n}: {tail} {head}", lineno)
        stream.events.append(Arc(tail, head))
        seen_content = True
    return stream


def format_arc_stream(stream: ArcStream) -> str:
    lines = []
    if stream.declared_n is not None:
        m = stream.declared_m if stream.declared_m is not None else len(stream.events)
        lines.append(f"p {stream.declared_n} {m}")
    lines.extend(f"{a} {b}" for a, b in stream.events)
    return "\n".join(lines) + "\n"


def make_stream(arcs: Iterable[Tuple[int, int]], n: Optional[int] = None) -> ArcStream:
    events = [Arc(a, b) for a, b in arcs]
    return ArcStream(events, n, len(events) if n is not None else None)


class Outcome(enum.Enum):
    ACCEPTED = "accepted"
    CYCLE = "cycle"
    MERGED = "merged"
    NOOP = "noop"


@dataclass(frozen=True)
class InsertionOutcome:
    """Result of one arc insertion.

    ``witness`` is set for :attr:`Outcome.CYCLE`. It lists the cycle starting
    at the head of the inserted arc and ending at its tail, so consecutive
    entries are arcs and the closing arc (last, first) is the inserted one.
    ``merged``/``canonical`` are set for :attr:`Outcome.MERGED`.
    """

    kind: Outcome
    witness: Optional[Tuple[int, ...]] = None
    merged: Optional[Tuple[int, ...]] = None
    canonical: Optional[int] = None

    @property
    def is_cycle(self) -> bool:
        return self.kind is Outcome.CYCLE


ACCEPTED = InsertionOutcome(Outcome.ACCEPTED)
NOOP = InsertionOutcome(Outcome.NOOP)


def cycle_found(witness: Sequence[int]) -> InsertionOutcome:
    return InsertionOutcome(Outcome.CYCLE, witness=tuple(witness))


def components_merged(old: Sequence[int], canonical: int) -> InsertionOutcome:
    return InsertionOutcome(Outcome.MERGED, merged=tuple(sorted(old)), canonical=canonical)


def is_valid_witness(witness: Sequence[int], arcs, trigger: Optional[Tuple[int, int]] = None) -> bool:
    """Check that ``witness`` is a closed walk over ``arcs`` (a container of pairs).

    When ``trigger`` is given, the walk must also use that arc.
    """
    if not witness:
        return False
    steps = list(zip(witness, witness[1:])) + [(witness[-1], witness[0])]
    if any(step not in arcs for step in steps):
        return False
    return trigger is None or tuple(trigger) in steps


@dataclass
class TraversalCounters:
    arc_traversals: int = 0
    backward_aborts: int = 0
    level_increases: int = 0
    counter_resets: int = 0
    reindex_moves: int = 0

    def as_dict(self) -> dict:
        return {
            "arc_traversals": self.arc_traversals,
            "backward_aborts": self.backward_aborts,
            "level_increases": self.level_increases,
            "counter_resets": self.counter_resets,
            "reindex_moves": self.reindex_moves,
        }
