"""Result sinks.

A sink is any callable taking a path (tuple of vertex ids) and returning
True to continue enumeration or False to stop.  Sinks are single-consumer
per query.
"""
from __future__ import annotations

import time
from typing import IO, Callable, Optional

CONTINUE = True
STOP = False


class CountingSink:
    """Counts results; optionally records when the nth result arrived."""

    def __init__(self, checkpoint: Optional[int] = None):
        self.count = 0
        self.checkpoint = checkpoint
        self.checkpoint_time: Optional[float] = None

    def __call__(self, path) -> bool:
        self.count += 1
        if self.checkpoint is not None and self.count == self.checkpoint:
            self.checkpoint_time = time.perf_counter()
        return CONTINUE


class CollectSink:
    """Collects paths, stopping after ``limit`` results if given."""

    def __init__(self, limit: Optional[int] = None):
        self.paths: list[tuple[int, ...]] = []
        self.limit = limit

    def __call__(self, path) -> bool:
        self.paths.append(path)
        if self.limit is not None and len(self.paths) >= self.limit:
            return STOP
        return CONTINUE


class StreamSink:
    """Writes one path per line, space-separated, translating ids through
    ``id_of`` (typically internal -> external)."""

    def __init__(self, stream: IO, id_of: Callable[[int], int] = lambda v: v):
        self.stream = stream
        self.id_of = id_of
        self.count = 0

    def __call__(self, path) -> bool:
        self.stream.write(" ".join(str(self.id_of(v)) for v in path) + "\n")
        self.count += 1
        return CONTINUE


class DeadlineSink:
    """Wraps another sink and stops enumeration once a wall-clock
    deadline passes; used to implement query time limits."""

    def __init__(self, inner, deadline: float):
        self.inner = inner
        self.deadline = deadline
        self.expired = False

    def __call__(self, path) -> bool:
        keep_going = self.inner(path)
        if time.perf_counter() >= self.deadline:
            self.expired = True
            return STOP
        return keep_going
