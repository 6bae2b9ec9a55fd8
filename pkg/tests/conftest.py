"""Shared corpus and brute-force helpers.

The corpus spans the behaviours the testers care about: trivial and
nontrivial languages, suffix-free ones, length-periodic ones, finite sets,
unions, and the universal language, all over the two-symbol alphabet
{a, b} (plus a unary variant).  Build results are cached per pattern so
the analysis pipeline runs once per language for the whole session.
"""

from __future__ import annotations

import functools
import itertools
import re

from regwin import (
    Alphabet,
    AnalyzedRdfa,
    Dfa,
    analyze,
    determinize,
    minimize,
    parse_regex,
)

CORPUS: list[tuple[str, str]] = [
    ("a-star", "a*"),
    ("aa-star", "(aa)*"),
    ("ends-a", "(a|b)*a"),
    ("b-then-a", "ba*"),
    ("pairs-end-a", "((a|b)a)*"),
    ("ab-star", "(ab)*"),
    ("just-ab", "ab"),
    ("a-or-bb", "a|bb"),
    ("astar-or-bastar", "a*|ba*"),
    ("universal", "(a|b)*"),
    ("b-prefix", "b(a|b)*"),
    ("b-even-a", "b(aa)*"),
]

AB = Alphabet.from_string("ab")
UNARY = Alphabet.from_string("a")

_SAFE_PATTERN = re.compile(r"^[ab.|*+?()]*$")


def reference_match(pattern: str, word: str) -> bool:
    """Independent matcher for the test grammar: delegate to the stdlib
    regex engine, whose semantics coincide on this fragment."""
    assert _SAFE_PATTERN.match(pattern), f"pattern {pattern!r} outside the oracle-safe fragment"
    return re.fullmatch(pattern, word) is not None


@functools.lru_cache(maxsize=None)
def build_dfa(pattern: str, symbols: str = "ab", pad: str | None = None) -> Dfa:
    alphabet = Alphabet.from_string(symbols, pad)
    return minimize(determinize(parse_regex(pattern, alphabet)))


@functools.lru_cache(maxsize=None)
def build_analyzed(pattern: str, symbols: str = "ab", pad: str | None = None) -> AnalyzedRdfa:
    return analyze(build_dfa(pattern, symbols, pad))


def words_up_to(alphabet: Alphabet, max_len: int):
    """All words over the alphabet of length 0..max_len, shortest first."""
    for length in range(max_len + 1):
        for combo in itertools.product(alphabet.symbols, repeat=length):
            yield "".join(combo)


def language_slice(dfa: Dfa, length: int) -> set[str]:
    """L ∩ Σ^length by exhaustive enumeration."""
    return {
        "".join(combo)
        for combo in itertools.product(dfa.alphabet.symbols, repeat=length)
        if dfa.accepts("".join(combo))
    }


def last_n(window_size: int, stream: str, pad: str) -> str:
    """The active window after feeding ``stream``: last n symbols of the
    pad-prefixed stream, computed by plain slicing."""
    padded = pad * window_size + stream
    return padded[len(padded) - window_size :] if window_size else ""
