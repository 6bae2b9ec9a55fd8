import math

import pytest
from conftest import AB, CORPUS, build_analyzed, build_dfa, language_slice, last_n, words_up_to
from hypothesis import given, settings
from hypothesis import strategies as st

from regwin import (
    WindowBuffer,
    check_t_simulation,
    distance_to_language,
    exhaustive_accepting_run,
    hamming_distance,
    prefix_distance_to_language,
)

ab_words = st.text(alphabet="ab", max_size=12)


# --- hamming distance ----------------------------------------------------------


def test_hamming_examples():
    assert hamming_distance("abc", "abc") == 0
    assert hamming_distance("bbbb", "aaaa") == 4
    with pytest.raises(ValueError):
        hamming_distance("a", "ab")


def test_hamming_block_language_example():
    # words of b's against the blocks-ending-in-a language: one change per block
    dfa = build_dfa("((a|b)a)*")
    assert distance_to_language("bbbb", dfa) == 2
    for k in range(1, 5):
        assert distance_to_language("b" * (2 * k), dfa) == k


@settings(max_examples=100, deadline=None)
@given(ab_words, ab_words)
def test_hamming_is_symmetric(u, v):
    n = min(len(u), len(v))
    assert hamming_distance(u[:n], v[:n]) == hamming_distance(v[:n], u[:n])


# --- distance to language --------------------------------------------------------


def test_distance_examples():
    assert distance_to_language("aaaa", build_dfa("a*")) == 0
    assert distance_to_language("ab", build_dfa("(aa)*")) == 1
    assert distance_to_language("b", build_dfa("(aa)*")) == math.inf  # odd length slice is empty


def brute_distance(word, slice_):
    if not slice_:
        return math.inf
    return min(hamming_distance(word, member) for member in slice_)


def test_distance_dp_matches_enumeration():
    for _id, pattern in CORPUS:
        dfa = build_dfa(pattern)
        slices = {length: language_slice(dfa, length) for length in range(9)}
        for word in words_up_to(AB, 8):
            expected = brute_distance(word, slices[len(word)])
            assert distance_to_language(word, dfa) == expected, (pattern, word)


# --- prefix distance ---------------------------------------------------------------


def test_prefix_distance_examples():
    a_star = build_dfa("a*")
    assert prefix_distance_to_language("aaaa", a_star) == 0
    assert prefix_distance_to_language("baaa", a_star) == 1
    assert prefix_distance_to_language("aaab", a_star) == 4
    assert prefix_distance_to_language("b", build_dfa("(aa)*")) == math.inf


def brute_prefix_distance(word, dfa):
    slice_ = language_slice(dfa, len(word))
    best = math.inf
    for member in slice_:
        i = len(word)
        while i > 0 and word[i - 1] == member[i - 1]:
            i -= 1
        best = min(best, i)
    return best


def test_prefix_distance_matches_enumeration_and_dominates_hamming():
    for _id, pattern in CORPUS:
        dfa = build_dfa(pattern)
        for word in words_up_to(AB, 6):
            pdist = prefix_distance_to_language(word, dfa)
            assert pdist == brute_prefix_distance(word, dfa), (pattern, word)
            assert pdist >= distance_to_language(word, dfa)


# --- window buffer ---------------------------------------------------------------


@settings(max_examples=120, deadline=None)
@given(stream=ab_words, size=st.integers(0, 8))
def test_window_buffer_tracks_last_n(stream, size):
    window = WindowBuffer(AB, size)
    for symbol in stream:
        window.feed(symbol)
    assert window.contents() == last_n(size, stream, AB.pad)


# --- exhaustive runs and the simulation property -----------------------------------


def test_exhaustive_run_found_when_length_is_accepted():
    analyzed = build_analyzed("(aa)*", "a")
    p0 = analyzed.rdfa.initial
    run = exhaustive_accepting_run(analyzed, p0, 4)
    assert run is not None and len(run) == 5
    assert run[0] == p0 and run[-1] in analyzed.rdfa.finals
    for prev, nxt in zip(run, run[1:]):  # every step is a real transition
        assert nxt in analyzed.rdfa.delta[prev]
    assert exhaustive_accepting_run(analyzed, p0, 3) is None  # odd length


def test_exhaustive_run_guard_is_loud():
    analyzed = build_analyzed("a*")
    with pytest.raises(ValueError):
        exhaustive_accepting_run(analyzed, analyzed.rdfa.initial, analyzed.t + 2 * analyzed.g + 9)


def test_t_simulation_degenerate_short_run():
    analyzed = build_analyzed("(aa)*", "a")
    p0 = analyzed.rdfa.initial
    # run of length <= t always simulable when the length is accepted
    for n in range(0, 7, 2):
        assert check_t_simulation(analyzed, [p0], n)


def test_t_simulation_even_as_internal_run():
    analyzed = build_analyzed("(aa)*", "a")
    p0 = analyzed.rdfa.initial
    run = analyzed.rdfa.run("aa", p0)
    assert check_t_simulation(analyzed, run, 4)


def test_t_simulation_rejects_non_internal_runs():
    analyzed = build_analyzed("a*")
    q0 = analyzed.rdfa.initial
    run = analyzed.rdfa.run("ba", q0)  # crosses into the sink component
    with pytest.raises(ValueError):
        check_t_simulation(analyzed, run, 4)
