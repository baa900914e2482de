"""Optional per-query constraints: edge predicates, accumulative values
and action-sequence automata."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional


class ConstraintConfigError(ValueError):
    """A constraint table does not cover every edge it may be asked about."""


@dataclass
class Accumulator:
    """Fold an edge value along the path with a commutative, associative
    binary op and accept the path when ``accept(total)`` holds.

    ``prune`` may be supplied only when the accumulated value is monotone
    under ``combine`` (e.g. nonnegative weights under addition): it is
    called on each partial total and a True return abandons the branch.
    """

    combine: Callable[[object, object], object]
    identity: object
    edge_values: Mapping[tuple[int, int], object]
    accept: Callable[[object], bool]
    prune: Optional[Callable[[object], bool]] = None


@dataclass
class Automaton:
    """Finite automaton over edge labels; a missing transition entry
    prunes the branch."""

    transitions: Mapping[tuple[object, object], object]
    start: object
    accepting: frozenset = field(default_factory=frozenset)
    edge_labels: Mapping[tuple[int, int], object] = field(default_factory=dict)

    def step(self, state, label):
        return self.transitions.get((state, label))


@dataclass
class ConstraintBundle:
    edge_predicate: Optional[Callable[[int, int], bool]] = None
    accumulator: Optional[Accumulator] = None
    automaton: Optional[Automaton] = None

    def validate_coverage(self, edges) -> None:
        """Check the side tables cover every edge in ``edges`` before any
        enumeration starts."""
        missing = []
        for e in edges:
            if self.accumulator is not None and e not in self.accumulator.edge_values:
                missing.append(("value", e))
            if self.automaton is not None and e not in self.automaton.edge_labels:
                missing.append(("label", e))
        if missing:
            kind, e = missing[0]
            raise ConstraintConfigError(
                f"missing edge {kind} for {e} ({len(missing)} edges uncovered)"
            )
