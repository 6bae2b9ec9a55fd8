"""Randomized sliding-window testers.

Two-sided tester (constant space for fixed gap fraction): for every state
the tester keeps a *compact summary* of the run on the whole stream: per
SCC segment a triple (segment start state, segment-end staleness mod g,
probabilistic staleness counter).  The counter is a bank of one-bit
Bernoulli cells whose majority flips from "low" to "high" somewhere
between the gap's two marks, so the summary locates the window's left edge
up to the allowed slack without storing any length exactly.

One-sided tester (double-log space for suffix-free languages): the
machine is split into finitely many partial machines, one per chain of
SCCs ending in a final state.  Each partial machine has essentially one
accepting length profile, so membership reduces to "the shortest suffix
driving the start state to the final state has length exactly n", which is
checked modulo a random prime drawn from a pool of the first
Θ(log window-size) primes.  Member windows are accepted for every prime;
far windows survive for at most a third of the pool.

A union combinator runs testers for finitely many languages in parallel
(with one-sided amplification by independent copies).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .analysis import (
    AnalyzedRdfa,
    EventuallyPeriodicSet,
    OneSidedClass,
    _acceptance_sets_from_successors,
    analyze,
    one_sided_class,
    realized_lengths,
    retarget_finals,
)
from .automata import Dfa, Rdfa, StateLimitExceeded
from .oracle import WindowBuffer
from .testers_det import SlidingWindowTester, exact_tester, trivial_tester

PATH_DESCRIPTION_CAP = 4096


def _ensure_rng(rng: np.random.Generator | int | None) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


# --- probabilistic counters ---------------------------------------------------


def counter_copies(qsize: int, noise_margin: float) -> int:
    """Cell count making the majority vote err with probability at most
    1/(3*qsize): ceil(96 ln(3 qsize) / margin^2)."""
    if not 0 < noise_margin <= 1:
        raise ValueError("noise margin must lie in (0, 1]")
    return math.ceil(96.0 * math.log(3.0 * qsize) / noise_margin**2)


class ProbabilisticCounter:
    """Staleness counter reading "low" below ``low_mark`` increments and
    "high" above ``high_mark``, erring with probability <= 1/(3*qsize).

    Holds ``copies`` one-bit cells; an increment sets each still-unset cell
    independently with the per-step probability, and the reading is the
    majority vote (ties count high; ``copies`` is forced odd so ties cannot
    occur).  Only the number of set cells is stored.
    """

    __slots__ = ("high_mark", "low_mark", "qsize", "margin", "per_step_p", "copies", "set_copies", "pulses", "rng")

    def __init__(
        self,
        high_mark: int,
        low_mark: float,
        qsize: int,
        rng: np.random.Generator | int | None = None,
        per_step_p: float | None = None,
    ):
        if high_mark < 1:
            raise ValueError("high mark must be at least 1")
        if not low_mark < high_mark:
            raise ValueError(f"low mark {low_mark} must lie below high mark {high_mark}")
        self.high_mark = high_mark
        self.low_mark = low_mark
        self.qsize = qsize
        self.margin = (high_mark - low_mark) / high_mark
        if per_step_p is None:
            per_step_p = 1.0 - (0.5 - self.margin / 8.0) ** (1.0 / high_mark)
        if not 0.0 <= per_step_p <= 1.0:
            raise ValueError("per-step probability out of range")
        self.per_step_p = per_step_p
        copies = counter_copies(qsize, self.margin)
        self.copies = copies + 1 if copies % 2 == 0 else copies
        self.set_copies = 0
        self.pulses = 0
        self.rng = None if rng is None else _ensure_rng(rng)

    @property
    def is_high(self) -> bool:
        return 2 * self.set_copies >= self.copies

    def increment(self, rng: np.random.Generator | None = None) -> None:
        self.increment_many(1, rng)

    def increment_many(self, k: int, rng: np.random.Generator | None = None) -> None:
        """Apply k increments at once.  Each unset cell survives all k
        rounds with probability (1-p)^k, so one binomial draw suffices."""
        if k <= 0:
            return
        self.pulses += k
        unset = self.copies - self.set_copies
        if unset == 0:
            return
        p = self.per_step_p
        if p >= 1.0:
            self.set_copies = self.copies
            return
        if p <= 0.0:
            return
        rng = rng or self.rng
        if rng is None:
            raise RuntimeError("counter increment needs a randomness source")
        flip_p = 1.0 - (1.0 - p) ** k
        self.set_copies += int(rng.binomial(unset, flip_p))

    def copy(self) -> "ProbabilisticCounter":
        dup = object.__new__(ProbabilisticCounter)
        dup.high_mark = self.high_mark
        dup.low_mark = self.low_mark
        dup.qsize = self.qsize
        dup.margin = self.margin
        dup.per_step_p = self.per_step_p
        dup.copies = self.copies
        dup.set_copies = self.set_copies
        dup.pulses = self.pulses
        dup.rng = None  # copies are independent lineages
        return dup

    def state_bit_cost(self) -> int:
        return self.copies.bit_length()

    def __repr__(self) -> str:
        return f"<Counter {self.set_copies}/{self.copies} after {self.pulses} pulses>"


def make_counter(
    n: int,
    eps: float,
    qsize: int,
    t: int,
    rng: np.random.Generator | int | None = None,
) -> ProbabilisticCounter:
    """Counter with marks derived from the window size: high at n - t,
    low at (1-eps)n + t + 1.  Callers must fall back to an exact tester
    when eps*n < t or the marks collapse."""
    if eps * n < t:
        raise ValueError(f"gap eps*n = {eps * n} is below the analysis threshold {t}")
    high = n - t
    low = (1.0 - eps) * n + t + 1
    if not low < high:
        raise ValueError(f"counter marks collapsed (low {low} >= high {high})")
    return ProbabilisticCounter(high, low, qsize, rng)


def counter_increment(
    counter: "ProbabilisticCounter | ThresholdCounter", rng: np.random.Generator | None = None
) -> None:
    counter.increment(rng)


def counter_is_high(counter: "ProbabilisticCounter | ThresholdCounter") -> bool:
    return counter.is_high


class ThresholdCounter:
    """Deterministic test double: exact count, high iff count >= cutoff."""

    __slots__ = ("cutoff", "pulses")

    def __init__(self, cutoff: int, pulses: int = 0):
        if cutoff < 1:
            raise ValueError("cutoff must be at least 1")
        self.cutoff = cutoff
        self.pulses = pulses

    @property
    def is_high(self) -> bool:
        return self.pulses >= self.cutoff

    def increment(self, rng: np.random.Generator | None = None) -> None:
        self.pulses += 1

    def increment_many(self, k: int, rng: np.random.Generator | None = None) -> None:
        self.pulses += k

    def copy(self) -> "ThresholdCounter":
        return ThresholdCounter(self.cutoff, self.pulses)

    def state_bit_cost(self) -> int:
        return self.cutoff.bit_length()


# --- compact summaries and the two-sided tester --------------------------------


@dataclass
class SummaryTriple:
    """One SCC segment of a run: its start state, the residue mod g of the
    stream length consumed after the segment ended, and the staleness
    counter tracking that same length approximately."""

    state: int
    residue: int
    counter: ProbabilisticCounter | ThresholdCounter

    def copy(self) -> "SummaryTriple":
        return SummaryTriple(self.state, self.residue, self.counter.copy())


class CompactSummary:
    """Constant-size surrogate of a run's segment summary, oldest segment
    first.  The newest triple always has residue 0 and a low counter."""

    __slots__ = ("triples",)

    def __init__(self, triples: Sequence[SummaryTriple]):
        self.triples = list(triples)
        if not self.triples:
            raise ValueError("summary must hold at least one triple")

    @property
    def start_state(self) -> int:
        return self.triples[-1].state

    def copy(self) -> "CompactSummary":
        return CompactSummary([tr.copy() for tr in self.triples])

    def validate(self, analyzed: AnalyzedRdfa) -> None:
        newest = self.triples[-1]
        assert newest.residue == 0, "newest triple must carry residue 0"
        assert not newest.counter.is_high, "newest triple must stay low"
        assert len(self.triples) <= analyzed.rdfa.n_states
        scc = analyzed.scc
        ids = [scc.scc_id[tr.state] for tr in self.triples]
        for older, newer in zip(ids, ids[1:]):
            assert older != newer and scc.order_less(newer, older), "SCC chain out of order"


def prolong_compact_summary(
    cs: CompactSummary,
    symbol_code: int,
    new_start: int,
    analyzed: AnalyzedRdfa,
    coins: Callable[[int], np.random.Generator] | None = None,
) -> CompactSummary:
    """Extend the summarized run by one transition at its start.

    ``coins(i)`` supplies the randomness for the counter of the triple at
    list position i; with None, counters fall back to their own source
    (deterministic stubs need none).
    """
    rdfa, scc, g = analyzed.rdfa, analyzed.scc, analyzed.g
    q = rdfa.delta[new_start][symbol_code]
    if q != cs.start_state:
        raise ValueError(
            f"transition from {new_start} reaches {q}, but the summary starts at {cs.start_state}"
        )
    triples = [tr.copy() for tr in cs.triples]
    if scc.same_scc(new_start, q):
        for i, tr in enumerate(triples[:-1]):
            tr.counter.increment(coins(i) if coins else None)
            tr.residue = (tr.residue + 1) % g
        triples[-1].state = new_start
    else:
        fresh = cs.triples[-1].counter.copy()  # the always-low newest counter
        assert not fresh.is_high
        for i, tr in enumerate(triples):
            tr.counter.increment(coins(i) if coins else None)
            tr.residue = (tr.residue + 1) % g
        triples.append(SummaryTriple(new_start, 0, fresh))
    return CompactSummary(triples)


class TwoSidedTester(SlidingWindowTester):
    """Constant-space tester with two-sided error for gap eps*n.

    Keeps one compact summary per start state for the run on the entire
    stream (initialized on a pad-filled window).  Accepts iff, in the
    summary starting at the machine's initial state, the oldest triple
    whose counter still reads low has an acceptance residue matching the
    window size.

    Counter randomness is derived from a master seed split by (stream
    position, summary key, triple position), so trials are reproducible
    and every cell sees independent coins.
    """

    def __init__(
        self,
        analyzed: AnalyzedRdfa,
        window_size: int,
        eps: float,
        rng: np.random.Generator | int | None = None,
        counter_factory: Callable[[], ProbabilisticCounter | ThresholdCounter] | None = None,
    ):
        self.window_size = window_size
        self._a = analyzed
        self._stub_mode = counter_factory is not None
        if counter_factory is None:
            master_rng = _ensure_rng(rng)
            self._master = int(master_rng.integers(0, 2**63 - 1))
            qsize = analyzed.rdfa.n_states
            counter_factory = lambda: make_counter(window_size, eps, qsize, analyzed.t)
        self._factory = counter_factory
        self._pos = 0
        self._summaries = {
            q: CompactSummary([SummaryTriple(q, 0, counter_factory())])
            for q in range(analyzed.rdfa.n_states)
        }
        pad = analyzed.rdfa.alphabet.code(analyzed.rdfa.alphabet.pad)
        for _ in range(window_size):
            self._feed_code(pad)

    def _coins_for(self, key: int) -> Callable[[int], np.random.Generator] | None:
        if self._stub_mode:
            return None
        pos, master = self._pos, self._master
        return lambda idx: np.random.default_rng((master, pos, key, idx))

    def _feed_code(self, code: int) -> None:
        rdfa = self._a.rdfa
        old = self._summaries
        self._summaries = {
            p: prolong_compact_summary(
                old[rdfa.delta[p][code]], code, p, self._a, self._coins_for(p)
            )
            for p in range(rdfa.n_states)
        }
        self._pos += 1

    def feed(self, symbol: str) -> None:
        self._feed_code(self._a.rdfa.alphabet.code(symbol))

    def decide(self) -> bool:
        cs = self._summaries[self._a.rdfa.initial]
        for tr in cs.triples:  # oldest first: first low triple wins
            if not tr.counter.is_high:
                residue = (self.window_size - tr.residue) % self._a.g
                return residue in self._a.acc_mod[tr.state]
        raise AssertionError("newest triple is low by invariant")

    def summaries(self) -> Mapping[int, CompactSummary]:
        return dict(self._summaries)

    def state_bits(self) -> int:
        n_states = self._a.rdfa.n_states
        state_bits = (n_states - 1).bit_length()
        residue_bits = (self._a.g - 1).bit_length()
        return sum(
            state_bits + residue_bits + tr.counter.state_bit_cost()
            for cs in self._summaries.values()
            for tr in cs.triples
        )


def two_sided_tester(
    analyzed: AnalyzedRdfa,
    window_size: int,
    eps: float,
    rng: np.random.Generator | int | None = None,
    counter_factory: Callable[[], ProbabilisticCounter | ThresholdCounter] | None = None,
) -> SlidingWindowTester:
    """Two-sided tester, or the exact fallback when the window is too small
    for the counter marks to separate."""
    t = analyzed.t
    marks_ok = eps * window_size >= t and (1.0 - eps) * window_size + t + 1 < window_size - t
    if not marks_ok:
        return exact_tester(analyzed.rdfa, window_size)
    return TwoSidedTester(analyzed, window_size, eps, rng, counter_factory)


# --- partial machines for suffix-free languages ---------------------------------


@dataclass(frozen=True, eq=False)
class PartialRdfa:
    """Restriction of the machine to one chain of SCCs ending in a final
    state, as induced by a path description: per chain component its
    internal transitions plus one connecting transition to the next
    component, with a single final state and a partial transition function.

    Derived data: per-connector residues (every crossing from one entry
    state to the next has length congruent to the residue mod g), the
    acceptance sets of the partial machine, the thresholds beyond which
    they become plain residue classes, and the prefix-distance slack
    ``soundness_gap`` within which the fingerprint tester's verdict is
    unconstrained.
    """

    alphabet: object
    states: tuple[int, ...]
    start: int
    final: int
    delta: tuple[tuple[int, int, int], ...]  # (state, symbol code, target)
    connectors: tuple[tuple[int, int, int], ...]  # (target entry, symbol code, source)
    chain: tuple[int, ...]  # SCC ids, start's component first
    entries: tuple[int, ...]  # entry states, start first, final last
    residue_steps: tuple[int, ...]
    period: int
    acc: Mapping[int, EventuallyPeriodicSet]
    tail_thresholds: tuple[int, ...]
    last_recurrent: int | None
    length_slack: int  # the threshold s
    threshold: int  # beyond it, the partial machine's acceptance sets are periodic and shift-consistent
    soundness_gap: int  # prefix distances above this must be rejected
    singleton_word: str | None
    _table: Mapping[tuple[int, int], int] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_table", {(p, a): q for p, a, q in self.delta})

    @property
    def k(self) -> int:
        return len(self.connectors)

    def step(self, symbol_code: int, state: int) -> int | None:
        return self._table.get((state, symbol_code))

    def accepts(self, word: str) -> bool:
        q = self.start
        code = self.alphabet.code
        for ch in reversed(word):
            q = self._table.get((q, code(ch)))
            if q is None:
                return False
        return q == self.final


def _partial_acceptance_sets(
    states: Sequence[int], table: Mapping[tuple[int, int], int], final: int
) -> dict[int, EventuallyPeriodicSet]:
    index = {q: i for i, q in enumerate(states)}
    succ: list[list[int]] = [[] for _ in states]
    for (p, _a), q in table.items():
        succ[index[p]].append(index[q])
    sets = _acceptance_sets_from_successors(len(states), succ, frozenset((index[final],)))
    return {q: sets[index[q]] for q in states}


def _build_partial(
    analyzed: AnalyzedRdfa, connectors: list[tuple[int, int, int]]
) -> PartialRdfa:
    rdfa, scc, g = analyzed.rdfa, analyzed.scc, analyzed.g
    start = rdfa.initial
    entries = [start] + [target for target, _a, _src in connectors]
    final = entries[-1]
    chain = tuple(scc.scc_id[q] for q in entries[:-1])

    states: set[int] = {final}
    for cid in chain:
        states |= scc.components[cid]
    connector_table = {(src, a): target for target, a, src in connectors}
    delta = []
    for p in sorted(states):
        if p == final:
            continue
        for a in range(len(rdfa.alphabet)):
            q = rdfa.delta[p][a]
            if scc.same_scc(p, q) and q in states:
                delta.append((p, a, q))
            elif connector_table.get((p, a)) == q:
                delta.append((p, a, q))

    residue_steps = []
    for i, (target, _a, source) in enumerate(connectors):
        cid = chain[i]
        if scc.transient[cid]:
            residue_steps.append(1)
        else:
            residue_steps.append((analyzed.shift(entries[i], source) + 1) % g)

    recurrent = [i for i, cid in enumerate(chain) if not scc.transient[cid]]
    last_recurrent = max(recurrent) if recurrent else None
    singleton_word = None
    if last_recurrent is None:
        singleton_word = "".join(
            rdfa.alphabet.symbols[a] for _t, a, _s in reversed(connectors)
        )

    table = {(p, a): q for p, a, q in delta}
    acc = _partial_acceptance_sets(sorted(states), table, final)

    k = len(connectors)
    tail_thresholds: list[int] = []
    if last_recurrent is not None:
        for i in range(last_recurrent + 1):
            target_set = EventuallyPeriodicSet.from_progression(sum(residue_steps[i:]), g)
            agree = acc[entries[i]].min_threshold_agree(target_set)
            if agree is None:
                raise RuntimeError("partial acceptance set is not an eventual residue class")
            tail_thresholds.append(agree)
    length_slack = max([k, sum(residue_steps), *tail_thresholds] or [0])

    # Threshold of the partial machine itself: beyond it every acceptance
    # set is g-periodic and same-SCC sets agree after the residue shift.
    threshold = 0
    for q in states:
        threshold = max(threshold, acc[q].min_threshold_periodic(g))
    for cid in set(chain):
        if scc.transient[cid]:
            continue
        component = sorted(scc.components[cid])
        for p in component:
            for q in component:
                if p == q:
                    continue
                shifted = acc[q].shifted(analyzed.shift(p, q))
                agree = acc[p].min_threshold_agree(shifted)
                if agree is None:
                    raise RuntimeError("partial acceptance sets failed to almost agree")
                threshold = max(threshold, agree)

    return PartialRdfa(
        alphabet=rdfa.alphabet,
        states=tuple(sorted(states)),
        start=start,
        final=final,
        delta=tuple(delta),
        connectors=tuple(connectors),
        chain=chain,
        entries=tuple(entries),
        residue_steps=tuple(residue_steps),
        period=g,
        acc=acc,
        tail_thresholds=tuple(tail_thresholds),
        last_recurrent=last_recurrent,
        length_slack=length_slack,
        threshold=threshold,
        soundness_gap=1 + length_slack + k + threshold,
        singleton_word=singleton_word,
    )


def enumerate_path_descriptions(
    analyzed: AnalyzedRdfa, cap: int = PATH_DESCRIPTION_CAP
) -> list[PartialRdfa]:
    """All chains of SCCs from the initial state to a final state, each as
    a partial machine.  Requires a suffix-free language: no final state may
    reach a final state (checked).  Their union recognizes the language."""
    rdfa, scc = analyzed.rdfa, analyzed.scc
    for f in rdfa.finals:
        frontier = {rdfa.delta[f][a] for a in range(len(rdfa.alphabet))}
        seen = set(frontier)
        while frontier:
            if frontier & rdfa.finals:
                raise ValueError("language is not suffix-free (final reaches final)")
            frontier = {rdfa.delta[q][a] for q in frontier for a in range(len(rdfa.alphabet))} - seen
            seen |= frontier

    results: list[PartialRdfa] = []
    if rdfa.initial in rdfa.finals:
        results.append(_build_partial(analyzed, []))

    def expand(connectors: list[tuple[int, int, int]], current_component: int) -> None:
        for p in sorted(scc.components[current_component]):
            for a in range(len(rdfa.alphabet)):
                q = rdfa.delta[p][a]
                if scc.scc_id[q] == current_component:
                    continue
                if q in rdfa.finals:
                    if len(results) >= cap:
                        raise StateLimitExceeded(f"more than {cap} path descriptions")
                    results.append(_build_partial(analyzed, connectors + [(q, a, p)]))
                else:
                    expand(connectors + [(q, a, p)], scc.scc_id[q])

    expand([], scc.scc_id[rdfa.initial])
    return results


# --- prime fingerprints and the one-sided tester ---------------------------------


def _first_primes(count: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % p for p in primes):
            primes.append(candidate)
        candidate += 1
    return primes


def prime_pool(n: int) -> list[int]:
    """First max(2, 3*ceil(log2(n+1))) primes.  Any D <= n has at most
    log2(n) distinct prime factors, so at most a third of the pool can
    divide a fixed nonzero difference D."""
    if n < 2:
        raise ValueError("window size must be at least 2")
    return _first_primes(max(2, 3 * n.bit_length()))


def sample_prime(n: int, rng: np.random.Generator | int | None = None) -> int:
    pool = prime_pool(n)
    return pool[int(_ensure_rng(rng).integers(len(pool)))]


class ModularLengthTable:
    """Per-state length of the shortest suffix of the stream that drives
    the state to the partial machine's final state, maintained mod a prime;
    None is the explicit infinity (1 + inf = inf)."""

    __slots__ = ("prime", "values")

    def __init__(self, partial: PartialRdfa, prime: int):
        self.prime = prime
        self.values: dict[int, int | None] = {
            q: (0 if q == partial.final else None) for q in partial.states
        }

    def feed(self, symbol_code: int, partial: PartialRdfa) -> None:
        old = self.values
        new: dict[int, int | None] = {}
        for q in partial.states:
            if q == partial.final:
                new[q] = 0
                continue
            target = partial.step(symbol_code, q)
            prev = old[target] if target is not None else None
            new[q] = None if prev is None else (1 + prev) % self.prime
        self.values = new


class _FingerprintPart:
    def __init__(self, partial: PartialRdfa, window_size: int, prime: int):
        self.partial = partial
        self.window_size = window_size
        self.prime = prime
        self.table = ModularLengthTable(partial, prime)
        self.reachable_length = partial.acc[partial.start].member(window_size)
        self.target = window_size % prime

    def feed(self, code: int) -> None:
        self.table.feed(code, self.partial)

    def decide(self) -> bool:
        if not self.reachable_length:
            return False
        return self.table.values[self.partial.start] == self.target

    def state_bits(self) -> int:
        return len(self.partial.states) * (self.prime.bit_length() + 1)


class _ExactPart:
    """Fallback for small windows and singleton partial languages: track
    the window and test membership directly."""

    def __init__(self, partial: PartialRdfa, window_size: int):
        self.partial = partial
        self.window = WindowBuffer(partial.alphabet, window_size)
        self._symbol_bits = max(1, (len(partial.alphabet) - 1).bit_length())

    def feed(self, code: int) -> None:
        self.window.feed(self.partial.alphabet.symbols[code])

    def decide(self) -> bool:
        return self.partial.accepts(self.window.contents())

    def state_bits(self) -> int:
        return self.window.size * self._symbol_bits


class OneSidedTester(SlidingWindowTester):
    """One-sided tester for a suffix-free language given its partial
    machines: one shared random prime, one modular length table per
    fingerprintable partial machine, exact tracking for the rest."""

    def __init__(
        self,
        partials: Sequence[PartialRdfa],
        window_size: int,
        rng: np.random.Generator | int | None = None,
        prime: int | None = None,
    ):
        if not partials:
            raise ValueError("need at least one partial machine")
        self.window_size = window_size
        self._alphabet = partials[0].alphabet
        fingerprintable = [
            partial.singleton_word is None
            and window_size >= partial.length_slack + len(partial.states)
            for partial in partials
        ]
        if prime is None and any(fingerprintable):
            prime = sample_prime(window_size, rng)
        self.prime = prime  # None when every part tracks its window exactly
        self._parts: list[_FingerprintPart | _ExactPart] = []
        for partial, use_fingerprint in zip(partials, fingerprintable):
            if use_fingerprint:
                self._parts.append(_FingerprintPart(partial, window_size, self.prime))
            else:
                self._parts.append(_ExactPart(partial, window_size))
        pad = self._alphabet.code(self._alphabet.pad)
        for _ in range(window_size):
            for part in self._parts:
                part.feed(pad)

    def feed(self, symbol: str) -> None:
        code = self._alphabet.code(symbol)
        for part in self._parts:
            part.feed(code)

    def decide(self) -> bool:
        return any(part.decide() for part in self._parts)

    def state_bits(self) -> int:
        prime_bits = self.prime.bit_length() if self.prime is not None else 0
        return prime_bits + sum(part.state_bits() for part in self._parts)


def one_sided_suffix_free_tester(
    partials: Sequence[PartialRdfa],
    window_size: int,
    rng: np.random.Generator | int | None = None,
    prime: int | None = None,
) -> OneSidedTester:
    return OneSidedTester(partials, window_size, rng, prime)


# --- unions ---------------------------------------------------------------------


class UnionTester(SlidingWindowTester):
    """Run testers for finitely many languages in parallel; accept iff some
    language's testers accept.  For one-sided randomized parts, a group of
    independent copies accepts only if every copy accepts, driving that
    part's false-accept probability to (base error)^copies."""

    def __init__(self, groups: Sequence[Sequence[SlidingWindowTester]]):
        self._groups = [list(group) for group in groups]
        sizes = {t.window_size for group in self._groups for t in group}
        if len(sizes) > 1:
            raise ValueError(f"sub-testers disagree on the window size: {sorted(sizes)}")
        self.window_size = sizes.pop() if sizes else 0

    def feed(self, symbol: str) -> None:
        for group in self._groups:
            for tester in group:
                tester.feed(symbol)

    def decide(self) -> bool:
        return any(all(t.decide() for t in group) for group in self._groups)

    def state_bits(self) -> int:
        return sum(t.state_bits() for group in self._groups for t in group)


def union_tester(
    factories: Sequence[Callable[[], SlidingWindowTester]], amplification: int = 1
) -> UnionTester:
    """Build ``amplification`` independent copies per language (factories
    must return fresh, independently seeded testers on each call)."""
    if amplification < 1:
        raise ValueError("amplification must be at least 1")
    return UnionTester([[factory() for _ in range(amplification)] for factory in factories])


def amplification_copies(k: int, beta: float = 0.5, base_error: float = 0.5) -> int:
    """Smallest copy count r with base_error^r <= beta/k."""
    if not 0 < base_error < 1:
        raise ValueError("base error must lie in (0, 1)")
    r = 1
    while base_error**r > beta / k:
        r += 1
    return r


def composed_one_sided_tester(
    dfa: Dfa,
    window_size: int,
    rng: np.random.Generator | int | None = None,
    amplification: int = 1,
    prime: int | None = None,
) -> SlidingWindowTester:
    """One-sided tester for a full language in the loglog class: a
    constant-space part for the (trivial) non-transient-finals language
    united with one suffix-free fingerprint tester per transient final."""
    classification = one_sided_class(dfa)
    if classification is OneSidedClass.LOG_LOWER_BOUND:
        raise ValueError(
            "language is not a finite union of trivial and suffix-free parts; "
            "no loglog-space one-sided tester exists"
        )
    if classification is OneSidedClass.CONSTANT_TRIVIAL:
        return trivial_tester(realized_lengths(dfa), window_size)

    analyzed = analyze(dfa)
    rdfa, scc = analyzed.rdfa, analyzed.scc
    master = _ensure_rng(rng)
    factories: list[Callable[[], SlidingWindowTester]] = []

    recurrent_finals = [f for f in rdfa.finals if not scc.is_transient_state(f)]
    if recurrent_finals:
        lengths = realized_lengths(Rdfa(rdfa.alphabet, rdfa.delta, rdfa.initial, recurrent_finals))
        factories.append(lambda lengths=lengths: trivial_tester(lengths, window_size))

    for f in sorted(rdfa.finals):
        if f in recurrent_finals:
            continue
        partials = enumerate_path_descriptions(retarget_finals(analyzed, (f,)))

        def factory(partials=partials):
            return OneSidedTester(partials, window_size, rng=master, prime=prime)

        factories.append(factory)
    return union_tester(factories, amplification)
