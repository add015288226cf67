"""Thompson NFAs, subset-simulation acceptance, and bisimulation equality.

The NFA is the semantic domain for regexes: two expressions are considered
semantically equal when their automata accept the same language.  Equality is
decided by an on-the-fly determinized bisimulation with an explicit work
budget, so a verdict is either Equal, NotEqual, or Timeout.
"""

from __future__ import annotations

import enum
from typing import Optional

from .regex_ast import Alt, Cat, Char, Empty, Epsilon, Regex, Star


class EqResult(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    TIMEOUT = "timeout"


class Nfa:
    """Immutable epsilon-NFA with integer states and a single start state.

    Epsilon closures over state subsets are memoized per automaton; subsets
    are represented as int bitmasks.
    """

    __slots__ = (
        "n_states", "initial", "accepting", "transitions",
        "_eps_out", "_char_out", "_out_edges", "_closure_cache",
        "_state_closure", "alphabet",
    )

    def __init__(self, n_states: int, initial: int,
                 accepting: frozenset[int],
                 transitions: tuple[tuple[int, Optional[str], int], ...]):
        self.n_states = n_states
        self.initial = initial
        self.accepting = accepting
        self.transitions = transitions
        eps_out: list[list[int]] = [[] for _ in range(n_states)]
        char_out: list[dict[str, list[int]]] = [{} for _ in range(n_states)]
        out_edges: list[list[tuple[Optional[str], int]]] = [[] for _ in range(n_states)]
        alphabet = []
        for src, label, dst in transitions:
            out_edges[src].append((label, dst))
            if label is None:
                eps_out[src].append(dst)
            else:
                char_out[src].setdefault(label, []).append(dst)
                if label not in alphabet:
                    alphabet.append(label)
        self._eps_out = eps_out
        self._char_out = char_out
        self._out_edges = out_edges
        self.alphabet = sorted(alphabet)
        self._state_closure: list[int] = self._compute_state_closures()
        self._closure_cache: dict[int, int] = {}

    def _compute_state_closures(self) -> list[int]:
        closures = [0] * self.n_states
        for s in range(self.n_states):
            mask = 1 << s
            stack = [s]
            while stack:
                u = stack.pop()
                for v in self._eps_out[u]:
                    bit = 1 << v
                    if not mask & bit:
                        mask |= bit
                        stack.append(v)
            closures[s] = mask
        return closures

    def out_edges(self, state: int) -> list[tuple[Optional[str], int]]:
        """Out transitions of a state in construction order."""
        return self._out_edges[state]

    def closure(self, mask: int) -> int:
        """Epsilon closure of a subset bitmask, memoized."""
        cached = self._closure_cache.get(mask)
        if cached is not None:
            return cached
        result = 0
        m = mask
        while m:
            low = m & -m
            result |= self._state_closure[low.bit_length() - 1]
            m ^= low
        self._closure_cache[mask] = result
        return result

    def move(self, mask: int, symbol: str) -> int:
        """States reachable from the subset by one symbol edge (no closure)."""
        result = 0
        m = mask
        while m:
            low = m & -m
            state = low.bit_length() - 1
            for dst in self._char_out[state].get(symbol, ()):
                result |= 1 << dst
            m ^= low
        return result

    @property
    def accepting_mask(self) -> int:
        mask = 0
        for s in self.accepting:
            mask |= 1 << s
        return mask


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.transitions: list[tuple[int, Optional[str], int]] = []

    def state(self) -> int:
        s = self.n
        self.n += 1
        return s

    def edge(self, a: int, label: Optional[str], b: int) -> None:
        self.transitions.append((a, label, b))


def thompson(r: Regex) -> Nfa:
    """Classical Thompson construction with deterministic state numbering.

    Every leaf and every Alt/Star node allocates a fresh start/accept pair;
    Cat joins its operands with a single epsilon edge.  Loop/branch edges are
    emitted greedy-first (enter a star before skipping it), which fixes the
    exploration order of the backtracking simulator.
    """
    b = _Builder()

    def go(node: Regex) -> tuple[int, int]:
        if isinstance(node, Empty):
            return b.state(), b.state()
        if isinstance(node, Epsilon):
            s, f = b.state(), b.state()
            b.edge(s, None, f)
            return s, f
        if isinstance(node, Char):
            s, f = b.state(), b.state()
            b.edge(s, node.sym, f)
            return s, f
        if isinstance(node, Alt):
            s, f = b.state(), b.state()
            ls, lf = go(node.left)
            rs, rf = go(node.right)
            b.edge(s, None, ls)
            b.edge(s, None, rs)
            b.edge(lf, None, f)
            b.edge(rf, None, f)
            return s, f
        if isinstance(node, Cat):
            ls, lf = go(node.left)
            rs, rf = go(node.right)
            b.edge(lf, None, rs)
            return ls, rf
        if isinstance(node, Star):
            s, f = b.state(), b.state()
            is_, if_ = go(node.inner)
            b.edge(s, None, is_)   # greedy: enter the loop first
            b.edge(s, None, f)
            b.edge(if_, None, is_)
            b.edge(if_, None, f)
            return s, f
        raise TypeError(f"not a regex node: {node!r}")

    initial, accept = go(r)
    return Nfa(b.n, initial, frozenset({accept}), tuple(b.transitions))


def accepts(n: Nfa, input_str: str) -> bool:
    """Membership via subset simulation (polynomial, no backtracking)."""
    current = n.closure(1 << n.initial)
    for ch in input_str:
        current = n.closure(n.move(current, ch))
        if not current:
            return False
    return bool(current & n.accepting_mask)


def bisim_equal(n1: Nfa, n2: Nfa, budget: int) -> EqResult:
    """Language equality via paired on-the-fly determinization, BFS order.

    Explores pairs of subset-states; a pair disagreeing on acceptance is a
    counterexample.  The budget counts explored pairs; exceeding it yields
    Timeout rather than an error.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    alphabet = sorted(set(n1.alphabet) | set(n2.alphabet))
    acc1 = n1.accepting_mask
    acc2 = n2.accepting_mask
    start = (n1.closure(1 << n1.initial), n2.closure(1 << n2.initial))
    seen = {start}
    queue = [start]
    head = 0
    explored = 0
    while head < len(queue):
        m1, m2 = queue[head]
        head += 1
        explored += 1
        if explored > budget:
            return EqResult.TIMEOUT
        if bool(m1 & acc1) != bool(m2 & acc2):
            return EqResult.NOT_EQUAL
        for ch in alphabet:
            pair = (n1.closure(n1.move(m1, ch)), n2.closure(n2.move(m2, ch)))
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return EqResult.EQUAL


def nfa_to_dot(n: Nfa, name: str = "nfa") -> str:
    """DOT rendering for debugging; epsilon edges are labelled with 'ε'."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  start [shape=point];']
    for s in range(n.n_states):
        shape = "doublecircle" if s in n.accepting else "circle"
        lines.append(f"  q{s} [shape={shape} label=\"q{s}\"];")
    lines.append(f"  start -> q{n.initial};")
    for src, label, dst in n.transitions:
        text = label if label is not None else "ε"
        lines.append(f'  q{src} -> q{dst} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines)
