"""Per-run phase timings and instrumentation counters.

The bench harness reports five phases plus a total; nested phases pause the
enclosing one so the columns stay disjoint.  The counters back the
early-termination assertions (how many entries each rank processed, how many
minimal annihilating polynomials were computed).
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from time import perf_counter

PHASES = ("f1A", "annihpol", "krylovgs", "preprocessing", "jkelim", "total")


@dataclass
class RunStats:
    seconds: dict[str, float] = field(default_factory=lambda: {p: 0.0 for p in PHASES})
    annih_polys: int = 0
    reductions_by_rank: dict[int, int] = field(default_factory=dict)
    accepted_by_rank: dict[int, int] = field(default_factory=dict)
    _stack: list[list] = field(default_factory=list, repr=False)

    @contextmanager
    def phase(self, name: str):
        now = perf_counter()
        if self._stack:
            top = self._stack[-1]
            self.seconds[top[0]] += now - top[1]
        self._stack.append([name, now])
        try:
            yield
        finally:
            end = perf_counter()
            done = self._stack.pop()
            self.seconds[done[0]] = self.seconds.get(done[0], 0.0) + end - done[1]
            if self._stack:
                self._stack[-1][1] = end

    def count_annih(self) -> None:
        self.annih_polys += 1

    def count_reduction(self, ell: int) -> None:
        self.reductions_by_rank[ell] = self.reductions_by_rank.get(ell, 0) + 1

    def count_accept(self, ell: int) -> None:
        self.accepted_by_rank[ell] = self.accepted_by_rank.get(ell, 0) + 1

    def timing_row(self) -> dict[str, float]:
        """Phase seconds rounded to microsecond resolution."""
        return {p: round(self.seconds.get(p, 0.0), 6) for p in PHASES}
