"""Static analyses the sliding-window testers compile against.

The pipeline in :func:`analyze` turns any machine for a regular language
into an :class:`AnalyzedRdfa`:

1. build a right-to-left reader and trim it to reachable states;
2. make every non-transient SCC share one period ``g`` (product with a
   modular counter that resets on SCC-leaving transitions);
3. decompose into SCCs, compute per-SCC periods and residue classes;
4. compute each state's acceptance-length set as an eventually periodic
   set, by iterating the "some final reachable in exactly k more symbols"
   boolean vector until it cycles;
5. fix one global threshold ``t`` beyond which every acceptance set is
   ``g``-periodic and any two states of one non-transient SCC have
   acceptance sets equal up to their residue shift.

The classifiers at the bottom (length language, trivial, suffix-free,
one-sided space class, excluded factor) all reduce to finite automaton
constructions plus the machinery above.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .automata import (
    DEFAULT_STATE_CAP,
    Alphabet,
    Dfa,
    Nfa,
    Rdfa,
    StateLimitExceeded,
    determinize,
    equivalent,
    product_intersect,
    rdfa_to_dfa,
    reverse_to_rdfa,
    trim_reachable,
)

# Boolean-vector iteration is exponential in the worst case; keep it on a
# short leash since this is a desk-scale tool.
VECTOR_ITERATION_STATE_LIMIT = 24


# --- eventually periodic sets -------------------------------------------------


class EventuallyPeriodicSet:
    """Subset of the naturals stored as an explicit prefix plus residue
    classes: for ``x >= threshold`` membership depends only on
    ``x % period``.  Instances are canonical (minimal period, then minimal
    threshold), so structural equality is set equality.
    """

    __slots__ = ("threshold", "period", "prefix", "residues")

    def __init__(self, threshold: int, period: int, prefix: Sequence[bool], residues: Sequence[bool]):
        if period < 1:
            raise ValueError("period must be positive")
        if len(prefix) != threshold or len(residues) != period:
            raise ValueError("prefix/residue lengths must match threshold/period")
        threshold, period, prefix, residues = self._canonicalize(
            threshold, period, tuple(bool(b) for b in prefix), tuple(bool(b) for b in residues)
        )
        self.threshold = threshold
        self.period = period
        self.prefix = prefix
        self.residues = residues

    @staticmethod
    def _canonicalize(t, d, prefix, residues):
        for div in range(1, d + 1):
            if d % div:
                continue
            if all(residues[r] == residues[(r + div) % d] for r in range(d)):
                residues = tuple(residues[r] for r in range(div))
                d = div
                break
        while t > 0 and prefix[t - 1] == residues[(t - 1) % d]:
            t -= 1
        return t, d, prefix[:t], residues

    # -- constructors

    @classmethod
    def from_member_fn(cls, fn, threshold: int, period: int) -> "EventuallyPeriodicSet":
        """Build from a membership function that is ``period``-periodic at
        and beyond ``threshold``."""
        prefix = [fn(x) for x in range(threshold)]
        residues = [False] * period
        for x in range(threshold, threshold + period):
            residues[x % period] = bool(fn(x))
        return cls(threshold, period, prefix, residues)

    @classmethod
    def from_progression(cls, offset: int, step: int) -> "EventuallyPeriodicSet":
        """The arithmetic progression ``{offset + step*k : k >= 0}``."""
        return cls.from_member_fn(lambda x: x >= offset and (x - offset) % step == 0, offset, step)

    @classmethod
    def from_finite(cls, values: Iterable[int]) -> "EventuallyPeriodicSet":
        values = set(values)
        bound = max(values) + 1 if values else 0
        return cls(bound, 1, [x in values for x in range(bound)], [False])

    @classmethod
    def empty(cls) -> "EventuallyPeriodicSet":
        return cls(0, 1, [], [False])

    @classmethod
    def universal(cls) -> "EventuallyPeriodicSet":
        return cls(0, 1, [], [True])

    # -- queries

    def member(self, x: int) -> bool:
        if x < 0:
            return False
        if x < self.threshold:
            return self.prefix[x]
        return self.residues[x % self.period]

    @property
    def is_empty(self) -> bool:
        return not (any(self.prefix) or any(self.residues))

    @property
    def is_finite(self) -> bool:
        return not any(self.residues)

    def shifted(self, offset: int) -> "EventuallyPeriodicSet":
        """The set ``{x + offset : x in self}``."""
        if offset == 0:
            return self
        return EventuallyPeriodicSet.from_member_fn(
            lambda x: x >= offset and self.member(x - offset), self.threshold + offset, self.period
        )

    def min_threshold_agree(self, other: "EventuallyPeriodicSet") -> int | None:
        """Least t with self(x) == other(x) for all x >= t, or None if the
        sets are not almost equal."""
        window = math.lcm(self.period, other.period)
        start = max(self.threshold, other.threshold)
        if any(self.member(x) != other.member(x) for x in range(start, start + window)):
            return None
        t = start
        while t > 0 and self.member(t - 1) == other.member(t - 1):
            t -= 1
        return t

    def min_threshold_periodic(self, step: int) -> int:
        """Least t with member(x) == member(x + step) for all x >= t."""
        window = math.lcm(self.period, step)
        start = self.threshold
        if any(self.member(x) != self.member(x + step) for x in range(start, start + window)):
            raise ValueError(f"set is not eventually periodic with step {step}")
        t = start
        while t > 0 and self.member(t - 1) == self.member(t - 1 + step):
            t -= 1
        return t

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventuallyPeriodicSet):
            return NotImplemented
        return (
            self.threshold == other.threshold
            and self.period == other.period
            and self.prefix == other.prefix
            and self.residues == other.residues
        )

    def __hash__(self) -> int:
        return hash((self.threshold, self.period, self.prefix, self.residues))

    def __repr__(self) -> str:
        members = [x for x in range(self.threshold + self.period) if self.member(x)]
        return f"<EPSet t={self.threshold} d={self.period} members~{members}>"

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "period": self.period,
            "prefix": [x for x in range(self.threshold) if self.prefix[x]],
            "residues": [r for r in range(self.period) if self.residues[r]],
        }


# --- SCC structure and periods -------------------------------------------------


@dataclass(frozen=True)
class SccDecomposition:
    """SCC partition of a machine's transition graph.

    ``reach[c]`` is the set of component ids reachable from component c
    (reflexive); it realizes the SCC partial order.  A component is
    transient iff it is a singleton with no self-loop.
    """

    scc_id: tuple[int, ...]
    components: tuple[frozenset[int], ...]
    transient: tuple[bool, ...]
    reach: tuple[frozenset[int], ...]

    def same_scc(self, p: int, q: int) -> bool:
        return self.scc_id[p] == self.scc_id[q]

    def is_transient_state(self, q: int) -> bool:
        return self.transient[self.scc_id[q]]

    def order_less(self, c: int, d: int) -> bool:
        return c != d and d in self.reach[c]


def _successor_sets(n_states: int, edges: Iterable[tuple[int, int]]) -> list[set[int]]:
    succ: list[set[int]] = [set() for _ in range(n_states)]
    for p, q in edges:
        succ[p].add(q)
    return succ


def _scc_from_edges(n_states: int, edges: Iterable[tuple[int, int]]) -> SccDecomposition:
    succ = _successor_sets(n_states, edges)

    # Iterative Tarjan.
    index_of = [-1] * n_states
    lowlink = [0] * n_states
    on_stack = [False] * n_states
    stack: list[int] = []
    counter = 0
    comp_id = [-1] * n_states
    components: list[frozenset[int]] = []

    for root in range(n_states):
        if index_of[root] != -1:
            continue
        work = [(root, iter(sorted(succ[root])))]
        index_of[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index_of[w] == -1:
                    index_of[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(sorted(succ[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index_of[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    members.append(w)
                    if w == v:
                        break
                cid = len(components)
                components.append(frozenset(members))
                for w in members:
                    comp_id[w] = cid

    transient = tuple(
        len(comp) == 1 and not any(q in succ[q] for q in comp) for comp in components
    )

    # Condensation reachability (reflexive) by reverse-topological sweep;
    # Tarjan emits components sinks-first, so successors are already done.
    n_comps = len(components)
    reach: list[set[int]] = [set() for _ in range(n_comps)]
    for cid in range(n_comps):
        reach[cid].add(cid)
        for q in components[cid]:
            for w in succ[q]:
                if comp_id[w] != cid:
                    reach[cid] |= reach[comp_id[w]]
    return SccDecomposition(
        tuple(comp_id), tuple(components), transient, tuple(frozenset(r) for r in reach)
    )


def scc_decompose(rdfa: Rdfa) -> SccDecomposition:
    """SCCs of the transition graph (edges q -> step(a, q))."""
    return _scc_from_edges(rdfa.n_states, ((p, q) for p, _a, q in rdfa.transitions()))


def _component_period_and_depths(
    component: frozenset[int], succ: Sequence[set[int]]
) -> tuple[int | None, dict[int, int]]:
    intra = {q: sorted(succ[q] & component) for q in component}
    if len(component) == 1:
        (q,) = component
        if q not in intra[q]:
            return None, {q: 0}
    root = min(component)
    depth = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in intra[u]:
                if v not in depth:
                    depth[v] = depth[u] + 1
                    nxt.append(v)
        frontier = nxt
    # gcd of depth(u) + 1 - depth(v) over intra-SCC edges is the gcd of all
    # cycle lengths: every closed walk telescopes into these differences.
    g = 0
    for u in component:
        for v in intra[u]:
            g = math.gcd(g, depth[u] + 1 - depth[v])
    return g, depth


def scc_period(component: Iterable[int], rdfa: Rdfa) -> int | None:
    """Period (gcd of cycle lengths) of one SCC; None marks a transient
    (acyclic singleton) component."""
    component = frozenset(component)
    succ = _successor_sets(rdfa.n_states, ((p, q) for p, _a, q in rdfa.transitions()))
    period, _ = _component_period_and_depths(component, succ)
    return period


@dataclass(frozen=True)
class PeriodInfo:
    """Per-SCC periods with the residue-class labelling that makes every
    intra-SCC path length congruent to the class difference."""

    scc: SccDecomposition
    component_period: tuple[int | None, ...]
    global_period: int
    class_of: tuple[int, ...]


def compute_period_info(rdfa: Rdfa, scc: SccDecomposition | None = None) -> PeriodInfo:
    scc = scc or scc_decompose(rdfa)
    succ = _successor_sets(rdfa.n_states, ((p, q) for p, _a, q in rdfa.transitions()))
    periods: list[int | None] = []
    class_of = [0] * rdfa.n_states
    global_period = 1
    for component in scc.components:
        period, depth = _component_period_and_depths(component, succ)
        periods.append(period)
        if period is not None:
            global_period *= period
            for q in component:
                class_of[q] = depth[q] % period
    return PeriodInfo(scc, tuple(periods), global_period, tuple(class_of))


def shift(p: int, q: int, info: PeriodInfo) -> int:
    """Residue mod the SCC period of every path length from p to q inside
    their shared non-transient SCC."""
    cid = info.scc.scc_id[p]
    if info.scc.scc_id[q] != cid:
        raise ValueError(f"states {p} and {q} are not in the same SCC")
    period = info.component_period[cid]
    if period is None:
        raise ValueError(f"SCC of states {p}, {q} is transient")
    return (info.class_of[q] - info.class_of[p]) % period


def uniformize_period(rdfa: Rdfa) -> tuple[Rdfa, int]:
    """Product with a counter mod g (g = product of all non-transient SCC
    periods) that resets on SCC-leaving transitions.  The result accepts
    the same language and every non-transient SCC has period exactly g."""
    info = compute_period_info(rdfa)
    g = info.global_period
    scc = info.scc

    index: dict[tuple[int, int], int] = {(rdfa.initial, 0): 0}
    order = [(rdfa.initial, 0)]
    delta: list[list[int]] = []
    i = 0
    while i < len(order):
        q, counter = order[i]
        row = []
        for a in range(len(rdfa.alphabet)):
            target = rdfa.delta[q][a]
            pair = (target, (counter + 1) % g if scc.same_scc(q, target) else 0)
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
            row.append(index[pair])
        delta.append(row)
        i += 1
    finals = [i for i, (q, _c) in enumerate(order) if q in rdfa.finals]
    return Rdfa(rdfa.alphabet, delta, 0, finals), g


# --- acceptance sets -----------------------------------------------------------


def _iterate_reach_vector(
    n_states: int, succ: Sequence[Sequence[int]], start_vector: tuple[bool, ...]
) -> tuple[int, int, list[tuple[bool, ...]]]:
    """Iterate v' (q) = OR over successors of v, recording vectors until the
    sequence cycles; returns (preperiod, cycle length, all vectors seen)."""
    if n_states > VECTOR_ITERATION_STATE_LIMIT:
        raise StateLimitExceeded(
            f"boolean-vector iteration is limited to {VECTOR_ITERATION_STATE_LIMIT} states"
        )
    seen: dict[tuple[bool, ...], int] = {}
    vectors: list[tuple[bool, ...]] = []
    v = start_vector
    cap = 2 ** n_states + 1
    for step in range(cap + 1):
        if v in seen:
            first = seen[v]
            return first, step - first, vectors
        seen[v] = step
        vectors.append(v)
        v = tuple(any(v[s] for s in succ[q]) for q in range(n_states))
    raise RuntimeError("vector iteration failed to cycle within its hard cap")


def _acceptance_sets_from_successors(
    n_states: int, succ: Sequence[Sequence[int]], finals: frozenset[int]
) -> list[EventuallyPeriodicSet]:
    start = tuple(q in finals for q in range(n_states))
    preperiod, cycle, vectors = _iterate_reach_vector(n_states, succ, start)
    sets = []
    for q in range(n_states):
        prefix = [vectors[x][q] for x in range(preperiod)]
        residues = [False] * cycle
        for j in range(cycle):
            residues[(preperiod + j) % cycle] = vectors[preperiod + j][q]
        sets.append(EventuallyPeriodicSet(preperiod, cycle, prefix, residues))
    return sets


def global_threshold(
    acc: Sequence[EventuallyPeriodicSet], g: int, info: PeriodInfo
) -> int:
    """Least t such that every acceptance set is g-periodic from t on and
    same-SCC sets agree (after the residue shift) from t on."""
    t = 0
    for a in acc:
        t = max(t, a.min_threshold_periodic(g))
    for cid, component in enumerate(info.scc.components):
        if info.component_period[cid] is None:
            continue
        for p, q in itertools.permutations(sorted(component), 2):
            shifted = acc[q].shifted(shift(p, q, info))
            agree = acc[p].min_threshold_agree(shifted)
            if agree is None:
                raise RuntimeError("same-SCC acceptance sets failed to almost agree")
            t = max(t, agree)
    return t


def acceptance_sets(
    rdfa: Rdfa, g: int, info: PeriodInfo | None = None
) -> tuple[list[EventuallyPeriodicSet], int]:
    """Acceptance-length set of every state plus the global threshold t.

    Expects a period-uniformized machine (see :func:`uniformize_period`).
    """
    info = info or compute_period_info(rdfa)
    succ = [rdfa.delta[q] for q in range(rdfa.n_states)]
    sets = _acceptance_sets_from_successors(rdfa.n_states, succ, rdfa.finals)
    return sets, global_threshold(sets, g, info)


@dataclass(frozen=True)
class AnalyzedRdfa:
    """A trimmed, period-uniformized right-to-left machine bundled with all
    the static data the testers need."""

    rdfa: Rdfa
    g: int
    scc: SccDecomposition
    periods: PeriodInfo
    acc: tuple[EventuallyPeriodicSet, ...]
    t: int
    acc_mod: tuple[frozenset[int], ...]

    def shift(self, p: int, q: int) -> int:
        return shift(p, q, self.periods)

    def same_scc(self, p: int, q: int) -> bool:
        return self.scc.same_scc(p, q)


def analyze(machine: Dfa | Rdfa, cap: int = DEFAULT_STATE_CAP) -> AnalyzedRdfa:
    """Compile any machine for the language into an :class:`AnalyzedRdfa`."""
    rdfa = machine if isinstance(machine, Rdfa) else reverse_to_rdfa(machine, cap)
    rdfa = trim_reachable(rdfa)
    rdfa, g = uniformize_period(rdfa)
    scc = scc_decompose(rdfa)
    info = compute_period_info(rdfa, scc)
    for cid, period in enumerate(info.component_period):
        if period is not None and period != g:
            raise RuntimeError(f"uniformization left SCC {cid} with period {period} != {g}")
    acc, t = acceptance_sets(rdfa, g, info)
    acc_mod = tuple(
        frozenset(x % g for x in range(t, t + g) if acc[q].member(x))
        for q in range(rdfa.n_states)
    )
    return AnalyzedRdfa(rdfa, g, scc, info, tuple(acc), t, acc_mod)


def retarget_finals(analyzed: AnalyzedRdfa, finals: Iterable[int]) -> AnalyzedRdfa:
    """Same machine with a different final-state set; SCC and period data
    carry over, acceptance sets and threshold are recomputed."""
    rdfa = Rdfa(analyzed.rdfa.alphabet, analyzed.rdfa.delta, analyzed.rdfa.initial, finals)
    acc, t = acceptance_sets(rdfa, analyzed.g, analyzed.periods)
    acc_mod = tuple(
        frozenset(x % analyzed.g for x in range(t, t + analyzed.g) if acc[q].member(x))
        for q in range(rdfa.n_states)
    )
    return AnalyzedRdfa(rdfa, analyzed.g, analyzed.scc, analyzed.periods, tuple(acc), t, acc_mod)


# --- length sets ----------------------------------------------------------------


def realized_lengths(machine: Dfa | Rdfa | Nfa, cap: int = DEFAULT_STATE_CAP) -> EventuallyPeriodicSet:
    """The set {|w| : w in L} as an eventually periodic set, via iteration
    of the exactly-k-steps reachable state set."""
    if isinstance(machine, Nfa):
        starts: frozenset[int] = machine.initials
        succ_sets: list[set[int]] = [set() for _ in range(machine.n_states)]
        for p, _a, q in machine.transitions:
            succ_sets[p].add(q)
        succ: list[Sequence[int]] = [sorted(s) for s in succ_sets]
        n = machine.n_states
        finals = machine.finals
    else:
        starts = frozenset((machine.initial,))
        succ = [machine.delta[q] for q in range(machine.n_states)]
        n = machine.n_states
        finals = machine.finals

    if n > VECTOR_ITERATION_STATE_LIMIT:
        raise StateLimitExceeded(
            f"length-set iteration is limited to {VECTOR_ITERATION_STATE_LIMIT} states"
        )
    seen: dict[frozenset[int], int] = {}
    flags: list[bool] = []
    current = starts
    while current not in seen:
        seen[current] = len(flags)
        flags.append(bool(current & finals))
        current = frozenset(q for p in current for q in succ[p])
    preperiod = seen[current]
    cycle = len(flags) - preperiod
    residues = [False] * cycle
    for j in range(cycle):
        residues[(preperiod + j) % cycle] = flags[preperiod + j]
    return EventuallyPeriodicSet(preperiod, cycle, flags[:preperiod], residues)


def _length_dfa(alphabet: Alphabet, lengths: EventuallyPeriodicSet) -> Dfa:
    """DFA accepting exactly the words whose length lies in ``lengths``."""
    t, d = lengths.threshold, lengths.period
    n = t + d
    delta = [[i + 1 if i + 1 < n else t] * len(alphabet) for i in range(n)]
    finals = [i for i in range(n) if lengths.member(i)]
    return Dfa(alphabet, delta, 0, finals)


# --- cut languages and the triviality classifier ---------------------------------


def cut_language(dfa: Dfa, i: int, j: int, cap: int = DEFAULT_STATE_CAP) -> Nfa:
    """NFA for the words of L with i leading and j trailing symbols removed:
    initials are the states reachable in exactly i steps, finals the states
    from which a final state is reachable in exactly j steps."""
    initials = {dfa.initial}
    for _ in range(i):
        initials = {dfa.delta[q][a] for q in initials for a in range(len(dfa.alphabet))}
    finals = set(dfa.finals)
    for _ in range(j):
        finals = {
            q
            for q in range(dfa.n_states)
            if any(dfa.delta[q][a] in finals for a in range(len(dfa.alphabet)))
        }
    return Nfa(dfa.alphabet, dfa.n_states, initials, dfa.transitions(), finals)


def is_length_language(machine: Nfa | Dfa, cap: int = DEFAULT_STATE_CAP) -> bool:
    """True iff membership depends only on word length."""
    dfa = determinize(machine, cap) if isinstance(machine, Nfa) else machine
    lengths = realized_lengths(dfa)
    return equivalent(dfa, _length_dfa(dfa.alphabet, lengths))


def _front_sets(dfa: Dfa) -> list[frozenset[int]]:
    """Distinct values of the exactly-i-steps reachable set, i = 0, 1, ..."""
    seen: set[frozenset[int]] = set()
    values: list[frozenset[int]] = []
    current = frozenset((dfa.initial,))
    while current not in seen:
        seen.add(current)
        values.append(current)
        current = frozenset(dfa.delta[q][a] for q in current for a in range(len(dfa.alphabet)))
    return values


def _back_sets(dfa: Dfa) -> list[frozenset[int]]:
    """Distinct values of the exactly-j-steps-to-final set, j = 0, 1, ..."""
    seen: set[frozenset[int]] = set()
    values: list[frozenset[int]] = []
    current = frozenset(dfa.finals)
    while current not in seen:
        seen.add(current)
        values.append(current)
        current = frozenset(
            q
            for q in range(dfa.n_states)
            if any(dfa.delta[q][a] in current for a in range(len(dfa.alphabet)))
        )
    return values


def length_cut_witness(dfa: Dfa, cap: int = DEFAULT_STATE_CAP) -> tuple[int, int] | None:
    """A pair (i, j) whose cut language is a length language, or None.

    Both set sequences cycle, so scanning their distinct values covers all
    cut languages; the language is trivial exactly when a witness exists.
    """
    fronts = _front_sets(dfa)
    backs = _back_sets(dfa)
    checked: dict[tuple[frozenset[int], frozenset[int]], bool] = {}
    for i, front in enumerate(fronts):
        for j, back in enumerate(backs):
            key = (front, back)
            if key not in checked:
                nfa = Nfa(dfa.alphabet, dfa.n_states, front, dfa.transitions(), back)
                checked[key] = is_length_language(nfa, cap)
            if checked[key]:
                return (i, j)
    return None


def is_trivial(dfa: Dfa, cap: int = DEFAULT_STATE_CAP) -> bool:
    """True iff, at every realized length, all words are within a bounded
    Hamming distance of the language."""
    return length_cut_witness(dfa, cap) is not None


# --- suffix-freeness and the one-sided space classes ------------------------------


def is_suffix_free(rdfa: Rdfa) -> bool:
    """True iff no member is a proper suffix of another member.  Decided on
    the trimmed right-to-left machine: no final state may reach a final
    state by a nonempty path."""
    rdfa = trim_reachable(rdfa)
    succ = _successor_sets(rdfa.n_states, ((p, q) for p, _a, q in rdfa.transitions()))
    for f in rdfa.finals:
        frontier = set(succ[f])
        seen = set(frontier)
        while frontier:
            if frontier & rdfa.finals:
                return False
            frontier = {q for p in frontier for q in succ[p]} - seen
            seen |= frontier
    return True


class OneSidedClass(Enum):
    """Space class of one-sided-error sliding-window testing."""

    CONSTANT_TRIVIAL = "constant"
    LOGLOG = "loglog"
    LOG_LOWER_BOUND = "log"


def one_sided_class(dfa: Dfa, cap: int = DEFAULT_STATE_CAP) -> OneSidedClass:
    """Classify: trivial languages need constant space; finite unions of
    trivial and suffix-free languages admit loglog space; everything else
    sits at the log lower bound.

    The union test splits the right-to-left machine's finals into the
    non-transient part (language must be trivial) and transient finals
    (each yields a suffix-free part).
    """
    if is_trivial(dfa, cap):
        return OneSidedClass.CONSTANT_TRIVIAL
    rdfa = trim_reachable(reverse_to_rdfa(dfa, cap))
    scc = scc_decompose(rdfa)
    recurrent_finals = [f for f in rdfa.finals if not scc.is_transient_state(f)]
    recurrent_part = rdfa_to_dfa(Rdfa(rdfa.alphabet, rdfa.delta, rdfa.initial, recurrent_finals), cap)
    if is_trivial(recurrent_part, cap):
        return OneSidedClass.LOGLOG
    return OneSidedClass.LOG_LOWER_BOUND


# --- excluded factors (adversarial stream material) --------------------------------


@dataclass(frozen=True)
class Progression:
    """Arithmetic progression {offset + step*k : k >= 0} of window sizes."""

    offset: int
    step: int

    def member(self, n: int) -> bool:
        return n >= self.offset and (n - self.offset) % self.step == 0

    def iterate(self, count: int) -> list[int]:
        return [self.offset + self.step * k for k in range(count)]


def _factor_dfa(alphabet: Alphabet, factor: str) -> Dfa:
    """DFA for the words containing ``factor`` as a factor."""
    m = len(factor)
    transitions = {(i, alphabet.code(factor[i]), i + 1) for i in range(m)}
    transitions |= {(0, a, 0) for a in range(len(alphabet))}
    transitions |= {(m, a, m) for a in range(len(alphabet))}
    return determinize(Nfa(alphabet, m + 1, (0,), transitions, (m,)))


def _language_is_empty(dfa: Dfa) -> bool:
    frontier = {dfa.initial}
    seen = set(frontier)
    while frontier:
        if frontier & dfa.finals:
            return False
        frontier = {dfa.delta[q][a] for q in frontier for a in range(len(dfa.alphabet))} - seen
        seen |= frontier
    return True


def find_excluded_factor(
    dfa: Dfa, max_len: int = 4, max_step_multiple: int = 8
) -> tuple[Progression, str] | None:
    """For a nontrivial language, search for an infinite restriction to an
    arithmetic progression of lengths that excludes some factor.

    Every window of a length in the progression that is packed with k
    disjoint copies of the factor then has distance >= k from the language.
    Returns None for trivial languages or if the bounded search exhausts.
    """
    if is_trivial(dfa):
        return None
    lengths = realized_lengths(dfa)
    alphabet = dfa.alphabet
    t, d = lengths.threshold, lengths.period
    for factor_len in range(1, max_len + 1):
        for factor_syms in itertools.product(alphabet.symbols, repeat=factor_len):
            factor = "".join(factor_syms)
            factor_hit = _factor_dfa(alphabet, factor)
            for multiple in range(1, max_step_multiple + 1):
                step = d * multiple
                for offset in range(t, t + step):
                    if not lengths.member(offset):
                        continue
                    progression = Progression(offset, step)
                    restriction = product_intersect(
                        dfa, _length_dfa(alphabet, EventuallyPeriodicSet.from_progression(offset, step))
                    )
                    if _language_is_empty(restriction):
                        continue  # the progression must realize words
                    if _language_is_empty(product_intersect(restriction, factor_hit)):
                        return progression, factor
    return None
