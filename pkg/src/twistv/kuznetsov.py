"""Kuznetsov-style day/night word problem solver for finite presentations.

Given a finite presentation <X | R> and a word w, two semidecision
procedures run against a shared budget:

* the *day* search enumerates consequences of R starting from w, inserting
  relators (or their inverses) at every position and freely reducing; if it
  empties the word, w = 1 in the group;
* the *night* search does the same over <X | R + {w}> starting from each
  generator; if every generator dies in the quotient, the quotient is
  trivial, so (for a nontrivial group) w != 1 and in fact w normally
  generates.

Both phases produce replayable traces: a trace step (pos, relator, exp)
means "insert relator^exp at position pos, then freely reduce".
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .label_group import LabelElement, free_reduce

Word = tuple[tuple[str, int], ...]
TraceStep = tuple[int, int, int]      # (position, relator index, exponent)


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("generator names must be distinct")
        for rel in self.relators:
            if not rel:
                raise PresentationError("relators must be non-empty")
            if free_reduce(rel) != rel:
                raise PresentationError("relators must be freely reduced")
            for name, exp in rel:
                if name not in self.generators:
                    raise PresentationError(f"relator uses unknown generator {name!r}")
                if exp not in (1, -1):
                    raise PresentationError("relator letters must carry exponent +1 or -1")

    @staticmethod
    def parse(generators: Sequence[str], relator_words: Sequence[str]) -> "FinitePresentation":
        rels = tuple(LabelElement.parse(t).word for t in relator_words)
        return FinitePresentation(tuple(generators), rels)

    @staticmethod
    def load(path: str) -> "FinitePresentation":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return FinitePresentation.parse(data["generators"], data["relators"])

    def check_word(self, w: Word) -> None:
        for name, _ in w:
            if name not in self.generators:
                raise PresentationError(f"word uses unknown generator {name!r}")


@dataclass(frozen=True)
class Budget:
    max_length: int = 24
    max_states: int = 200_000


@dataclass(frozen=True)
class Verdict:
    status: str                                   # trivial | nontrivial | budget_exhausted
    day_trace: tuple[TraceStep, ...] | None = None
    night_traces: dict | None = None              # generator name -> trace
    stats: dict = field(default_factory=dict)

    def is_decided(self) -> bool:
        return self.status in ("trivial", "nontrivial")


def _invert(word: Word) -> Word:
    return tuple((n, -e) for n, e in reversed(word))


def apply_step(word: Word, relators: Sequence[Word], step: TraceStep) -> Word:
    """Insert relators[idx]^exp at pos and freely reduce (trace replay)."""
    pos, idx, exp = step
    rel = relators[idx] if exp == 1 else _invert(relators[idx])
    if not 0 <= pos <= len(word):
        raise PresentationError(f"trace step position {pos} out of range")
    return free_reduce(word[:pos] + rel + word[pos:])


def replay_trace(word: Word, relators: Sequence[Word],
                 trace: Sequence[TraceStep]) -> Word:
    out = free_reduce(word)
    for step in trace:
        out = apply_step(out, relators, step)
    return out


def _search_to_empty(start: Word, relators: Sequence[Word],
                     budget: Budget) -> tuple[tuple[TraceStep, ...] | None, dict]:
    """BFS over freely reduced words; None when the budget runs out first."""
    start = free_reduce(start)
    stats = {"states": 0, "max_length_seen": len(start)}
    if not start:
        return (), stats
    moves: list[tuple[int, int, Word]] = []
    for idx, rel in enumerate(relators):
        if rel:
            moves.append((idx, 1, rel))
            moves.append((idx, -1, _invert(rel)))
    seen = {start}
    parent: dict[Word, tuple[Word, TraceStep]] = {}
    queue: deque[Word] = deque([start])
    while queue:
        word = queue.popleft()
        stats["states"] += 1
        if stats["states"] > budget.max_states:
            return None, stats
        for pos in range(len(word) + 1):
            for idx, exp, rel in moves:
                new = free_reduce(word[:pos] + rel + word[pos:])
                if len(new) > budget.max_length or new in seen:
                    continue
                seen.add(new)
                stats["max_length_seen"] = max(stats["max_length_seen"], len(new))
                parent[new] = (word, (pos, idx, exp))
                if not new:
                    trace: list[TraceStep] = []
                    cur: Word = new
                    while cur != start:
                        prev, step = parent[cur]
                        trace.append(step)
                        cur = prev
                    trace.reverse()
                    return tuple(trace), stats
                queue.append(new)
    stats["exhausted_space"] = True
    return None, stats


def decide_word(pres: FinitePresentation, w: Word, budget: Budget = Budget()) -> Verdict:
    """Run the day search, then the night search, within the budget.

    The night phase is only a valid nontriviality certificate when the
    presented group itself is nontrivial; that is the caller's contract.
    """
    pres.check_word(w)
    w = free_reduce(w)

    day_trace, day_stats = _search_to_empty(w, pres.relators, budget)
    stats = {"day": day_stats}
    if day_trace is not None:
        return Verdict("trivial", day_trace=day_trace, stats=stats)

    night_relators = pres.relators + (w,)
    night_traces = {}
    night_stats = {}
    all_dead = True
    for gen in pres.generators:
        trace, gstats = _search_to_empty(((gen, 1),), night_relators, budget)
        night_stats[gen] = gstats
        if trace is None:
            all_dead = False
            break
        night_traces[gen] = trace
    stats["night"] = night_stats
    if all_dead:
        return Verdict("nontrivial", night_traces=night_traces, stats=stats)
    return Verdict("budget_exhausted", stats=stats)
