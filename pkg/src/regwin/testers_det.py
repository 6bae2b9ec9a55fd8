"""Deterministic sliding-window testers.

Three testers share one interface:

* :func:`exact_tester` stores the window outright -- the linear-space
  baseline every other tester is measured against.
* :func:`trivial_tester` is the constant-space tester available whenever a
  language is trivial (all words of a realized length sit within bounded
  distance of the language): accept iff the window length is realized.
* :func:`deterministic_tester` is the logarithmic-space tester: for every
  state q it maintains the segment summary of the window's run from q in
  the analyzed right-to-left machine, updating both ends as the window
  slides, and accepts iff the oldest segment's length is an acceptance
  length of the oldest segment's start state.  Accepted windows are within
  prefix distance t (the analysis threshold) of the language.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable

from .analysis import AnalyzedRdfa, EventuallyPeriodicSet
from .automata import Dfa, Rdfa
from .oracle import WindowBuffer


class SlidingWindowTester(ABC):
    """Streaming decision procedure over the active window.

    ``feed`` is the only mutation; ``decide`` reports for the current
    window; ``state_bits`` is the information-theoretic size of the
    maintained state (the space measure all scaling claims refer to).
    """

    window_size: int

    @abstractmethod
    def feed(self, symbol: str) -> None: ...

    @abstractmethod
    def decide(self) -> bool: ...

    @abstractmethod
    def state_bits(self) -> int: ...

    def feed_all(self, stream: Iterable[str]) -> "SlidingWindowTester":
        for symbol in stream:
            self.feed(symbol)
        return self


class ExactWindowTester(SlidingWindowTester):
    """Stores the window explicitly; exact membership, Θ(n log |Σ|) bits."""

    def __init__(self, machine: Dfa | Rdfa, window_size: int):
        self.window_size = window_size
        self._machine = machine
        self._window = WindowBuffer(machine.alphabet, window_size)
        self._symbol_bits = max(1, (len(machine.alphabet) - 1).bit_length())

    def feed(self, symbol: str) -> None:
        self._machine.alphabet.code(symbol)  # validate
        self._window.feed(symbol)

    def decide(self) -> bool:
        return self._machine.accepts(self._window.contents())

    def state_bits(self) -> int:
        return self.window_size * self._symbol_bits


def exact_tester(machine: Dfa | Rdfa, window_size: int) -> ExactWindowTester:
    return ExactWindowTester(machine, window_size)


class FixedVerdictTester(SlidingWindowTester):
    """Constant-space tester for trivial languages: the verdict depends
    only on whether the window length is a realized length."""

    def __init__(self, lengths: EventuallyPeriodicSet, window_size: int):
        self.window_size = window_size
        self._verdict = lengths.member(window_size)

    def feed(self, symbol: str) -> None:
        pass

    def decide(self) -> bool:
        return self._verdict

    def state_bits(self) -> int:
        return 1


def trivial_tester(lengths: EventuallyPeriodicSet, window_size: int) -> FixedVerdictTester:
    """``lengths`` must be the language's realized-length set (see
    :func:`regwin.analysis.realized_lengths`)."""
    return FixedVerdictTester(lengths, window_size)


@dataclass(frozen=True)
class PathSummary:
    """Run summary: (segment length, segment start state) pairs, oldest
    segment first.

    A run is factored into maximal single-SCC segments joined by
    SCC-changing transitions; each pair except the oldest counts its
    segment plus the transition that follows it, so lengths sum to the run
    length and every pair but the first is at least 1.
    """

    pairs: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return sum(l for l, _q in self.pairs)

    def validate(self, analyzed: AnalyzedRdfa) -> None:
        assert self.pairs, "summary must hold at least one pair"
        assert self.pairs[0][0] >= 0
        assert all(l >= 1 for l, _q in self.pairs[1:])
        assert len(self.pairs) <= analyzed.rdfa.n_states
        scc = analyzed.scc
        ids = [scc.scc_id[q] for _l, q in self.pairs]
        for older, newer in zip(ids, ids[1:]):
            assert older != newer and scc.order_less(newer, older), "SCC chain out of order"


def path_summary_of(window: str, q: int, analyzed: AnalyzedRdfa) -> PathSummary:
    """Reference (non-streaming) summary of the run on ``window`` from q;
    the oracle the streaming updates are tested against."""
    states = analyzed.rdfa.run(window, q)
    scc = analyzed.scc
    pairs: list[tuple[int, int]] = []
    seg_start = states[0]
    seg_len = 0
    for prev, nxt in zip(states, states[1:]):
        if scc.same_scc(prev, nxt):
            seg_len += 1
        else:
            pairs.append((seg_len + 1, seg_start))  # segment plus its exit transition
            seg_start = nxt
            seg_len = 0
    pairs.append((seg_len, seg_start))
    pairs.reverse()
    return PathSummary(tuple(pairs))


class PathSummaryTester(SlidingWindowTester):
    """Logarithmic-space deterministic tester.

    For every state q the map holds the summary of the window's run from q
    (keyed by the run's start state; the machine is deterministic so this
    realizes the set of summaries unambiguously).  Each feed first extends
    every run at its start with the new symbol, then trims one step off the
    oldest end as the window slides.
    """

    def __init__(self, analyzed: AnalyzedRdfa, window_size: int):
        self.window_size = window_size
        self._a = analyzed
        rdfa = analyzed.rdfa
        self._summaries: dict[int, list[list[int]]] = {
            q: [[0, q]] for q in range(rdfa.n_states)
        }
        pad = rdfa.alphabet.code(rdfa.alphabet.pad)
        for _ in range(window_size):
            self._extend(pad)

    def _extend(self, code: int) -> None:
        rdfa, scc = self._a.rdfa, self._a.scc
        old = self._summaries
        new: dict[int, list[list[int]]] = {}
        for p in range(rdfa.n_states):
            q = rdfa.delta[p][code]
            pairs = [pair.copy() for pair in old[q]]  # old[q] may feed several p
            if scc.same_scc(p, q):
                pairs[-1][0] += 1
                pairs[-1][1] = p
            else:
                pairs.append([1, p])
            new[p] = pairs
        self._summaries = new

    def _shrink(self) -> None:
        for pairs in self._summaries.values():
            if pairs[0][0] > 0:
                pairs[0][0] -= 1
            else:
                assert len(pairs) > 1, "empty oldest segment in a single-segment summary"
                pairs.pop(0)
                pairs[0][0] -= 1
                assert pairs[0][0] >= 0

    def feed(self, symbol: str) -> None:
        self._extend(self._a.rdfa.alphabet.code(symbol))
        self._shrink()

    def decide(self) -> bool:
        oldest_len, oldest_state = self._summaries[self._a.rdfa.initial][0]
        return self._a.acc[oldest_state].member(oldest_len)

    def summaries(self) -> dict[int, PathSummary]:
        """Immutable view of the maintained map (for auditing)."""
        return {q: PathSummary(tuple((l, s) for l, s in pairs)) for q, pairs in self._summaries.items()}

    def state_bits(self) -> int:
        n_states = self._a.rdfa.n_states
        per_pair = self.window_size.bit_length() + (n_states - 1).bit_length()
        return sum(len(pairs) * per_pair for pairs in self._summaries.values())


def deterministic_tester(analyzed: AnalyzedRdfa, window_size: int) -> SlidingWindowTester:
    """Logspace tester; below |Q| the window is cheaper stored outright."""
    if window_size < analyzed.rdfa.n_states:
        return exact_tester(analyzed.rdfa, window_size)
    return PathSummaryTester(analyzed, window_size)
