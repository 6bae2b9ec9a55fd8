"""Core finite-automaton types and constructions.

States are dense integers ``0..n-1`` and symbols are single characters
mapped to dense codes by :class:`Alphabet`, so transition tables are plain
nested tuples with O(1) lookup.  Deterministic tables are always total:
constructions add an explicit sink state rather than leaving gaps.

Two deterministic flavours exist.  A :class:`Dfa` consumes a word left to
right.  An :class:`Rdfa` has the same table shape but consumes the word
from its last symbol to its first; it recognizes the language itself (not
the reversal), which makes it the natural machine for suffix-anchored
sliding-window runs.

The regex front end is deliberately small: literals, ``.`` (any alphabet
symbol), ``|``, ``*``, ``+``, ``?`` and grouping.  Patterns compile to an
epsilon-free NFA via the position (Glushkov) construction.
"""

from __future__ import annotations

from typing import Iterable, Iterator

DEFAULT_STATE_CAP = 1 << 16


class AutomatonError(Exception):
    """Base class for errors raised by this package's automaton layer."""


class RegexSyntaxError(AutomatonError):
    """Malformed pattern; ``position`` is the 0-based offset of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class StateLimitExceeded(AutomatonError):
    """A construction would exceed its configured state cap."""


class AlphabetMismatch(AutomatonError):
    """Two machines with different alphabets were combined."""


class Alphabet:
    """Ordered set of distinct single-character symbols with a pad symbol.

    The pad is the symbol an empty sliding window is filled with.  It
    defaults to the lexicographically smallest symbol.
    """

    __slots__ = ("symbols", "pad", "_code")

    def __init__(self, symbols: Iterable[str], pad: str | None = None):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must be nonempty")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"alphabet symbols are single characters, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError("alphabet symbols must be pairwise distinct")
        if pad is None:
            pad = min(symbols)
        if pad not in symbols:
            raise ValueError(f"pad symbol {pad!r} is not in the alphabet")
        self.symbols = symbols
        self.pad = pad
        self._code = {s: i for i, s in enumerate(symbols)}

    @classmethod
    def from_string(cls, text: str, pad: str | None = None) -> "Alphabet":
        return cls(tuple(text), pad)

    def code(self, symbol: str) -> int:
        try:
            return self._code[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} is not in the alphabet") from None

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._code

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.symbols == other.symbols and self.pad == other.pad

    def __hash__(self) -> int:
        return hash((self.symbols, self.pad))

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.symbols)!r}, pad={self.pad!r})"


def _check_table(delta, n_symbols: int) -> tuple[tuple[int, ...], ...]:
    delta = tuple(tuple(row) for row in delta)
    n = len(delta)
    if n == 0:
        raise ValueError("automaton needs at least one state")
    for q, row in enumerate(delta):
        if len(row) != n_symbols:
            raise ValueError(f"state {q}: transition row must cover all {n_symbols} symbols")
        for target in row:
            if not 0 <= target < n:
                raise ValueError(f"state {q}: transition target {target} out of range")
    return delta


class Dfa:
    """Complete deterministic automaton reading its input left to right."""

    __slots__ = ("alphabet", "delta", "initial", "finals")

    def __init__(self, alphabet: Alphabet, delta, initial: int, finals: Iterable[int]):
        self.alphabet = alphabet
        self.delta = _check_table(delta, len(alphabet))
        n = len(self.delta)
        if not 0 <= initial < n:
            raise ValueError("initial state out of range")
        self.initial = initial
        self.finals = frozenset(finals)
        if any(not 0 <= f < n for f in self.finals):
            raise ValueError("final state out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def step(self, state: int, symbol: str) -> int:
        return self.delta[state][self.alphabet.code(symbol)]

    def accepts(self, word: str) -> bool:
        q = self.initial
        code = self.alphabet.code
        for ch in word:
            q = self.delta[q][code(ch)]
        return q in self.finals

    def transitions(self) -> Iterator[tuple[int, int, int]]:
        """Yield (state, symbol code, target) for the whole table."""
        for p, row in enumerate(self.delta):
            for a, q in enumerate(row):
                yield p, a, q

    def __repr__(self) -> str:
        return f"<Dfa states={self.n_states} finals={sorted(self.finals)}>"


class Rdfa:
    """Complete deterministic automaton consuming the word right to left.

    ``delta[q][a]`` is the state reached from ``q`` after consuming symbol
    ``a``, where symbols of a word are consumed last-first.  The language
    is ``{w : run on w from initial ends in a final state}`` -- the same
    language the corresponding left-to-right machine would accept, not its
    reversal.
    """

    __slots__ = ("alphabet", "delta", "initial", "finals")

    def __init__(self, alphabet: Alphabet, delta, initial: int, finals: Iterable[int]):
        self.alphabet = alphabet
        self.delta = _check_table(delta, len(alphabet))
        n = len(self.delta)
        if not 0 <= initial < n:
            raise ValueError("initial state out of range")
        self.initial = initial
        self.finals = frozenset(finals)
        if any(not 0 <= f < n for f in self.finals):
            raise ValueError("final state out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def step(self, symbol_code: int, state: int) -> int:
        return self.delta[state][symbol_code]

    def run(self, word: str, start: int | None = None) -> list[int]:
        """State sequence of the unique run on ``word`` (consumed right to
        left) from ``start``; index i holds the state after i symbols."""
        q = self.initial if start is None else start
        states = [q]
        code = self.alphabet.code
        for ch in reversed(word):
            q = self.delta[q][code(ch)]
            states.append(q)
        return states

    def accepts(self, word: str) -> bool:
        return self.run(word)[-1] in self.finals

    def transitions(self) -> Iterator[tuple[int, int, int]]:
        for p, row in enumerate(self.delta):
            for a, q in enumerate(row):
                yield p, a, q

    def __repr__(self) -> str:
        return f"<Rdfa states={self.n_states} finals={sorted(self.finals)}>"


class Nfa:
    """Nondeterministic automaton without epsilon transitions."""

    __slots__ = ("alphabet", "n_states", "initials", "transitions", "finals")

    def __init__(
        self,
        alphabet: Alphabet,
        n_states: int,
        initials: Iterable[int],
        transitions: Iterable[tuple[int, int, int]],
        finals: Iterable[int],
    ):
        if n_states <= 0:
            raise ValueError("automaton needs at least one state")
        self.alphabet = alphabet
        self.n_states = n_states
        self.initials = frozenset(initials)
        self.transitions = frozenset(transitions)
        self.finals = frozenset(finals)
        n_symbols = len(alphabet)
        for group, name in ((self.initials, "initial"), (self.finals, "final")):
            if any(not 0 <= q < n_states for q in group):
                raise ValueError(f"{name} state out of range")
        for p, a, q in self.transitions:
            if not (0 <= p < n_states and 0 <= q < n_states and 0 <= a < n_symbols):
                raise ValueError(f"transition ({p}, {a}, {q}) references invalid state or symbol")

    def successors(self) -> dict[tuple[int, int], set[int]]:
        succ: dict[tuple[int, int], set[int]] = {}
        for p, a, q in self.transitions:
            succ.setdefault((p, a), set()).add(q)
        return succ

    def accepts(self, word: str) -> bool:
        succ = self.successors()
        frontier = set(self.initials)
        code = self.alphabet.code
        for ch in word:
            a = code(ch)
            frontier = {q for p in frontier for q in succ.get((p, a), ())}
            if not frontier:
                return False
        return bool(frontier & self.finals)

    def __repr__(self) -> str:
        return f"<Nfa states={self.n_states} transitions={len(self.transitions)}>"


# --- regex front end -------------------------------------------------------

_EPS = ("eps",)


class _RegexParser:
    """Recursive-descent parser; precedence: alternation < concatenation <
    postfix repetition."""

    def __init__(self, pattern: str, alphabet: Alphabet):
        self.pattern = pattern
        self.alphabet = alphabet
        self.pos = 0

    def _peek(self) -> str | None:
        return self.pattern[self.pos] if self.pos < len(self.pattern) else None

    def parse(self):
        node = self._alternation()
        if self.pos != len(self.pattern):
            raise RegexSyntaxError(f"unexpected {self._peek()!r}", self.pos)
        return node

    def _alternation(self):
        node = self._concatenation()
        while self._peek() == "|":
            self.pos += 1
            node = ("alt", node, self._concatenation())
        return node

    def _concatenation(self):
        node = None
        while self._peek() not in (None, "|", ")"):
            item = self._postfix()
            node = item if node is None else ("cat", node, item)
        return _EPS if node is None else node

    def _postfix(self):
        node = self._atom()
        while self._peek() in ("*", "+", "?"):
            op = {"*": "star", "+": "plus", "?": "opt"}[self._peek()]
            node = (op, node)
            self.pos += 1
        return node

    def _atom(self):
        ch = self._peek()
        if ch == "(":
            open_pos = self.pos
            self.pos += 1
            node = self._alternation()
            if self._peek() != ")":
                raise RegexSyntaxError("unclosed group", open_pos)
            self.pos += 1
            return node
        if ch in ("*", "+", "?"):
            raise RegexSyntaxError("nothing to repeat", self.pos)
        if ch == ".":
            self.pos += 1
            return ("any",)
        if ch not in self.alphabet:
            raise RegexSyntaxError(f"symbol {ch!r} not in alphabet", self.pos)
        self.pos += 1
        return ("lit", self.alphabet.code(ch))


def parse_regex(pattern: str, alphabet: Alphabet) -> Nfa:
    """Compile a pattern over the alphabet into an epsilon-free NFA.

    State 0 is the single initial state; the remaining states are the
    pattern's symbol positions (Glushkov construction).
    """
    ast = _RegexParser(pattern, alphabet).parse()
    all_codes = tuple(range(len(alphabet)))

    position_codes: list[tuple[int, ...]] = []  # per position: codes it matches
    follow: dict[int, set[int]] = {}

    def walk(node) -> tuple[bool, frozenset[int], frozenset[int]]:
        kind = node[0]
        if kind == "eps":
            return True, frozenset(), frozenset()
        if kind in ("lit", "any"):
            position_codes.append((node[1],) if kind == "lit" else all_codes)
            pid = len(position_codes)  # positions are 1-based; 0 is initial
            follow.setdefault(pid, set())
            return False, frozenset((pid,)), frozenset((pid,))
        if kind == "cat":
            n1, f1, l1 = walk(node[1])
            n2, f2, l2 = walk(node[2])
            for p in l1:
                follow[p] |= f2
            return n1 and n2, f1 | (f2 if n1 else frozenset()), l2 | (l1 if n2 else frozenset())
        if kind == "alt":
            n1, f1, l1 = walk(node[1])
            n2, f2, l2 = walk(node[2])
            return n1 or n2, f1 | f2, l1 | l2
        if kind in ("star", "plus", "opt"):
            n1, f1, l1 = walk(node[1])
            if kind != "opt":
                for p in l1:
                    follow[p] |= f1
            return n1 or kind != "plus", f1, l1
        raise AssertionError(f"unknown node {kind}")

    nullable, first, last = walk(ast)

    transitions: set[tuple[int, int, int]] = set()
    for p in first:
        for a in position_codes[p - 1]:
            transitions.add((0, a, p))
    for q, targets in follow.items():
        for p in targets:
            for a in position_codes[p - 1]:
                transitions.add((q, a, p))
    finals = set(last)
    if nullable:
        finals.add(0)
    return Nfa(alphabet, len(position_codes) + 1, (0,), transitions, finals)


# --- standard constructions -------------------------------------------------


def determinize(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Subset construction.  The empty subset doubles as the sink, so the
    result is always complete.  Raises StateLimitExceeded beyond ``cap``."""
    succ = nfa.successors()
    n_symbols = len(nfa.alphabet)

    index: dict[frozenset[int], int] = {}
    order: list[frozenset[int]] = []

    def intern(subset: frozenset[int]) -> int:
        if subset not in index:
            if len(order) >= cap:
                raise StateLimitExceeded(f"subset construction exceeded {cap} states")
            index[subset] = len(order)
            order.append(subset)
        return index[subset]

    intern(frozenset(nfa.initials))
    delta: list[list[int]] = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = []
        for a in range(n_symbols):
            target = frozenset(q for p in subset for q in succ.get((p, a), ()))
            row.append(intern(target))
        delta.append(row)
        i += 1
    finals = [i for i, subset in enumerate(order) if subset & nfa.finals]
    return Dfa(nfa.alphabet, delta, 0, finals)


def reverse_to_rdfa(dfa: Dfa, cap: int = DEFAULT_STATE_CAP) -> Rdfa:
    """Build a right-to-left reader for the *same* language: reverse the
    transition relation, determinize, and reinterpret the result as a
    machine consuming the word last symbol first."""
    reversed_nfa = Nfa(
        dfa.alphabet,
        dfa.n_states,
        dfa.finals,
        ((q, a, p) for p, a, q in dfa.transitions()),
        (dfa.initial,),
    )
    det = determinize(reversed_nfa, cap)
    return Rdfa(det.alphabet, det.delta, det.initial, det.finals)


def rdfa_to_dfa(rdfa: Rdfa, cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Inverse direction of :func:`reverse_to_rdfa` (same language)."""
    reversed_nfa = Nfa(
        rdfa.alphabet,
        rdfa.n_states,
        rdfa.finals,
        ((q, a, p) for p, a, q in rdfa.transitions()),
        (rdfa.initial,),
    )
    return determinize(reversed_nfa, cap)


def product_intersect(a: Dfa, b: Dfa) -> Dfa:
    """DFA for the intersection, restricted to reachable state pairs."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("product requires a shared alphabet")
    n_symbols = len(a.alphabet)
    index: dict[tuple[int, int], int] = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    delta: list[list[int]] = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for sym in range(n_symbols):
            pair = (a.delta[p][sym], b.delta[q][sym])
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
            row.append(index[pair])
        delta.append(row)
        i += 1
    finals = [i for i, (p, q) in enumerate(order) if p in a.finals and q in b.finals]
    return Dfa(a.alphabet, delta, 0, finals)


def _restrict_reachable(dfa: Dfa) -> Dfa:
    order = [dfa.initial]
    index = {dfa.initial: 0}
    i = 0
    while i < len(order):
        for target in dfa.delta[order[i]]:
            if target not in index:
                index[target] = len(order)
                order.append(target)
        i += 1
    delta = [[index[t] for t in dfa.delta[q]] for q in order]
    finals = [index[q] for q in dfa.finals if q in index]
    return Dfa(dfa.alphabet, delta, 0, finals)


def minimize(dfa: Dfa) -> Dfa:
    """Language-preserving minimal DFA (partition refinement on the
    reachable part; completeness is preserved)."""
    dfa = _restrict_reachable(dfa)
    n = dfa.n_states
    block = [1 if q in dfa.finals else 0 for q in range(n)]
    while True:
        signatures = {}
        new_block = []
        for q in range(n):
            sig = (block[q], tuple(block[t] for t in dfa.delta[q]))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block.append(signatures[sig])
        if len(signatures) == len(set(block)):
            block = new_block
            break
        block = new_block
    # renumber blocks by first occurrence so the initial state is state 0
    renumber: dict[int, int] = {}
    for q in range(n):
        renumber.setdefault(block[q], len(renumber))
    block = [renumber[b] for b in block]
    representative: dict[int, int] = {}
    for q in range(n):
        representative.setdefault(block[q], q)
    m = len(representative)
    delta = [[block[dfa.delta[representative[b]][a]] for a in range(len(dfa.alphabet))] for b in range(m)]
    finals = {block[q] for q in dfa.finals}
    return Dfa(dfa.alphabet, delta, block[dfa.initial], finals)


def trim_reachable(rdfa: Rdfa) -> Rdfa:
    """Drop states unreachable from the initial state.  Reachability is
    closed under the transition function, so the result stays complete."""
    order = [rdfa.initial]
    index = {rdfa.initial: 0}
    i = 0
    while i < len(order):
        for target in rdfa.delta[order[i]]:
            if target not in index:
                index[target] = len(order)
                order.append(target)
        i += 1
    delta = [[index[t] for t in rdfa.delta[q]] for q in order]
    finals = [index[q] for q in rdfa.finals if q in index]
    return Rdfa(rdfa.alphabet, delta, 0, finals)


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality via synchronized reachability over state pairs."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("equivalence check requires a shared alphabet")
    seen = {(a.initial, b.initial)}
    stack = [(a.initial, b.initial)]
    while stack:
        p, q = stack.pop()
        if (p in a.finals) != (q in b.finals):
            return False
        for sym in range(len(a.alphabet)):
            pair = (a.delta[p][sym], b.delta[q][sym])
            if pair not in seen:
                seen.add(pair)
                stack.append(pair)
    return True


# --- JSON wire format --------------------------------------------------------


def automaton_to_json(machine: Dfa | Rdfa) -> dict:
    """Wire form: direction "left" for a Dfa, "right" for an Rdfa."""
    symbols = machine.alphabet.symbols
    return {
        "alphabet": list(symbols),
        "pad": machine.alphabet.pad,
        "states": machine.n_states,
        "initial": machine.initial,
        "finals": sorted(machine.finals),
        "direction": "left" if isinstance(machine, Dfa) else "right",
        "transitions": [
            {"from": p, "symbol": symbols[a], "to": q} for p, a, q in machine.transitions()
        ],
    }


def automaton_from_json(data: dict) -> Dfa | Rdfa:
    try:
        alphabet = Alphabet(data["alphabet"], data.get("pad"))
        n = int(data["states"])
        direction = data["direction"]
    except KeyError as exc:
        raise ValueError(f"automaton JSON is missing field {exc}") from None
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    table: list[list[int | None]] = [[None] * len(alphabet) for _ in range(n)]
    for entry in data["transitions"]:
        p, a, q = int(entry["from"]), alphabet.code(entry["symbol"]), int(entry["to"])
        if table[p][a] is not None and table[p][a] != q:
            raise ValueError(f"conflicting transitions from state {p} on {entry['symbol']!r}")
        table[p][a] = q
    missing = [(p, a) for p in range(n) for a in range(len(alphabet)) if table[p][a] is None]
    if missing:
        p, a = missing[0]
        raise ValueError(
            f"transition table is not total: {len(missing)} entries missing, "
            f"first is state {p} on {alphabet.symbols[a]!r}"
        )
    cls = Dfa if direction == "left" else Rdfa
    return cls(alphabet, table, int(data["initial"]), data["finals"])
