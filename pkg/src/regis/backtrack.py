"""Deterministic backtracking matcher over Thompson NFAs with step counting.

The walker explores transitions depth-first in construction order (greedy:
star loops are entered before they are skipped).  Two mechanisms bound the
search:

* a per-input-position visited set, scoped to the current epsilon exploration
  and unwound on backtrack, which breaks epsilon cycles;
* a single-entry memo of the first failed (state, position) subsearch, which
  is sound because a subsearch entered through a symbol edge depends only on
  its entry state and position.

Step-counting convention (the calibration, also echoed in stats output):
``steps`` counts every attempted transition traversal - epsilon edges, symbol
edges whether they match or not, and traversals denied by the cycle check.
Expansions skipped by the memo entry or the cycle check are tallied in
``memo_skips`` and the memo-entry prunes are excluded from ``steps``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nfa import thompson
from .regex_ast import Regex

STEP_CONVENTION = (
    "steps=all attempted transitions (eps+symbol+cycle-denied); "
    "single-entry failure memo prunes excluded"
)

DEFAULT_CEILING = 10_000_000


@dataclass(frozen=True)
class MatchTrace:
    matched: bool
    steps: int
    memo_skips: int


@dataclass(frozen=True)
class GrowthSeries:
    rows: tuple[tuple[int, int, bool], ...]  # (n, steps, matched)
    truncated: bool


class _Budget(Exception):
    pass


def count_steps(r: Regex, input_str: str, step_ceiling: int = DEFAULT_CEILING) -> MatchTrace:
    """Full-match backtracking search over thompson(r), counting transitions."""
    n = thompson(r)
    accept_mask = n.accepting_mask
    out_edges = [n.out_edges(s) for s in range(n.n_states)]
    length = len(input_str)
    steps = 0
    skips = 0
    failed_memo: tuple[int, int] | None = None  # first failed subsearch

    def explore(state: int, pos: int, visited: set[int]) -> bool:
        nonlocal steps, skips, failed_memo
        if steps > step_ceiling:
            raise _Budget
        if pos == length and (1 << state) & accept_mask:
            return True
        for label, dst in out_edges[state]:
            if label is None:
                steps += 1
                if dst in visited:
                    skips += 1
                    continue
                visited.add(dst)
                if explore(dst, pos, visited):
                    return True
                visited.discard(dst)
            else:
                if pos < length and input_str[pos] == label:
                    steps += 1
                    key = (dst, pos + 1)
                    if failed_memo == key:
                        skips += 1
                        continue
                    if explore(dst, pos + 1, {dst}):
                        return True
                    if failed_memo is None:
                        failed_memo = key
                else:
                    steps += 1
        return False

    try:
        matched = explore(n.initial, 0, {n.initial})
    except _Budget:
        return MatchTrace(False, steps, skips)
    return MatchTrace(matched, steps, skips)


def growth_series(r: Regex, prefix_char: str, suffix: str, n_max: int,
                  step_ceiling: int = DEFAULT_CEILING) -> GrowthSeries:
    """Step counts for inputs prefix_char**n + suffix, n = 0..n_max.

    The series is truncated (not an error) once a trace hits the ceiling.
    """
    rows: list[tuple[int, int, bool]] = []
    for n in range(n_max + 1):
        trace = count_steps(r, prefix_char * n + suffix, step_ceiling)
        if trace.steps > step_ceiling:
            return GrowthSeries(tuple(rows), truncated=True)
        rows.append((n, trace.steps, trace.matched))
    return GrowthSeries(tuple(rows), truncated=False)
