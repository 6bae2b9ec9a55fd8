import math

import pytest
from conftest import AB, UNARY, CORPUS, build_analyzed, build_dfa, words_up_to
from hypothesis import given, settings
from hypothesis import strategies as st

from regwin import (
    EventuallyPeriodicSet,
    OneSidedClass,
    Progression,
    Rdfa,
    analyze,
    compute_period_info,
    cut_language,
    determinize,
    distance_to_language,
    equivalent,
    find_excluded_factor,
    is_length_language,
    is_suffix_free,
    is_trivial,
    length_cut_witness,
    one_sided_class,
    rdfa_to_dfa,
    retarget_finals,
    reverse_to_rdfa,
    scc_decompose,
    scc_period,
    trim_reachable,
    uniformize_period,
)


def brute_accept_length_flags(rdfa, q: int, up_to: int) -> list[bool]:
    """flags[n] == some length-n word leads from q to a final state."""
    flags = []
    frontier = {q}
    for _ in range(up_to + 1):
        flags.append(bool(frontier & rdfa.finals))
        frontier = {rdfa.delta[p][a] for p in frontier for a in range(len(rdfa.alphabet))}
    return flags


def brute_component_period(component, rdfa):
    """gcd of closed-walk lengths up to 2|Q| inside the component."""
    comp = set(component)
    g = 0
    for start in comp:
        frontier = {start}
        for length in range(1, 2 * rdfa.n_states + 1):
            frontier = {
                rdfa.delta[p][a] for p in frontier for a in range(len(rdfa.alphabet))
            } & comp
            if start in frontier:
                g = math.gcd(g, length)
    return g or None


def two_three_machine() -> Rdfa:
    """Hand-built machine with non-transient SCC periods {2, 3}."""
    delta = [
        [1, 2],  # state 0: a->1, b->2
        [0, 2],  # state 1: a->0, b->2
        [3, 3],  # 3-cycle 2 -> 3 -> 4 -> 2 on every symbol
        [4, 4],
        [2, 2],
    ]
    return Rdfa(AB, delta, 0, [2])


# --- EventuallyPeriodicSet ------------------------------------------------------


def test_ep_set_canonicalizes_period_and_threshold():
    # all-even set described with a redundant period and threshold
    s = EventuallyPeriodicSet(3, 4, [True, False, True], [True, False, True, False])
    assert (s.threshold, s.period) == (0, 2)
    assert [s.member(x) for x in range(6)] == [True, False, True, False, True, False]


def test_ep_set_constructors():
    prog = EventuallyPeriodicSet.from_progression(3, 4)
    assert [x for x in range(15) if prog.member(x)] == [3, 7, 11]
    finite = EventuallyPeriodicSet.from_finite([1, 4])
    assert finite.is_finite and finite.member(4) and not finite.member(5)
    assert EventuallyPeriodicSet.empty().is_empty
    assert EventuallyPeriodicSet.universal().member(123)


def test_ep_set_shift_and_agreement():
    evens = EventuallyPeriodicSet.from_member_fn(lambda x: x % 2 == 0, 0, 2)
    odds_from_one = evens.shifted(1)
    assert [x for x in range(7) if odds_from_one.member(x)] == [1, 3, 5]
    assert evens.min_threshold_agree(evens) == 0
    # evens vs evens-shifted-by-2 differ only at 0 and 1
    assert evens.min_threshold_agree(evens.shifted(2)) == 1
    assert evens.min_threshold_agree(odds_from_one) is None
    assert evens.min_threshold_periodic(2) == 0
    assert evens.min_threshold_periodic(4) == 0


@settings(max_examples=150, deadline=None)
@given(
    threshold=st.integers(0, 5),
    period=st.integers(1, 5),
    bits=st.lists(st.booleans(), min_size=10, max_size=10),
)
def test_ep_set_canonical_form_preserves_membership(threshold, period, bits):
    prefix = bits[:threshold]
    residues = (bits + bits)[threshold : threshold + period]
    raw = lambda x: prefix[x] if x < threshold else residues[x % period]
    s = EventuallyPeriodicSet(threshold, period, prefix, residues)
    for x in range(threshold + 3 * period + 2):
        assert s.member(x) == raw(x)


# --- SCC decomposition ------------------------------------------------------------


def test_scc_a_star_rdfa():
    analyzed = build_analyzed("a*")
    scc = analyzed.scc
    rdfa = analyzed.rdfa
    q0, sink = rdfa.initial, 1 - rdfa.initial
    assert len(scc.components) == 2
    assert not scc.transient[scc.scc_id[q0]] and not scc.transient[scc.scc_id[sink]]
    assert scc.order_less(scc.scc_id[q0], scc.scc_id[sink])
    assert not scc.order_less(scc.scc_id[sink], scc.scc_id[q0])


def test_scc_b_then_a_has_transient_final():
    analyzed = build_analyzed("ba*")
    scc = analyzed.scc
    (final,) = analyzed.rdfa.finals
    assert scc.is_transient_state(final)
    assert not scc.is_transient_state(analyzed.rdfa.initial)
    assert len(scc.components) == 3


def test_scc_self_loop_singleton_is_not_transient():
    analyzed = build_analyzed("(a|b)*")
    assert len(analyzed.scc.components) == 1
    assert not analyzed.scc.transient[0]


def test_scc_components_partition_states():
    for _id, pattern in CORPUS:
        analyzed = build_analyzed(pattern)
        states = [q for comp in analyzed.scc.components for q in comp]
        assert sorted(states) == list(range(analyzed.rdfa.n_states))


# --- periods -----------------------------------------------------------------------


def test_scc_period_examples():
    even = build_analyzed("(aa)*", "a")
    comp = even.scc.components[even.scc.scc_id[even.rdfa.initial]]
    assert scc_period(comp, even.rdfa) == 2

    star = build_analyzed("a*")
    comp = star.scc.components[star.scc.scc_id[star.rdfa.initial]]
    assert scc_period(comp, star.rdfa) == 1

    ba = build_analyzed("ba*")
    (final,) = ba.rdfa.finals
    comp = ba.scc.components[ba.scc.scc_id[final]]
    assert scc_period(comp, ba.rdfa) is None  # transient


def test_scc_period_agrees_with_cycle_length_gcd():
    for _id, pattern in CORPUS:
        analyzed = build_analyzed(pattern)
        for comp in analyzed.scc.components:
            assert scc_period(comp, analyzed.rdfa) == brute_component_period(comp, analyzed.rdfa)


def test_residue_classes_respect_edges():
    for _id, pattern in CORPUS:
        analyzed = build_analyzed(pattern)
        info = analyzed.periods
        for p, _a, q in analyzed.rdfa.transitions():
            cid = info.scc.scc_id[p]
            if cid != info.scc.scc_id[q] or info.component_period[cid] is None:
                continue
            g = info.component_period[cid]
            assert info.class_of[q] == (info.class_of[p] + 1) % g


# --- uniformize_period ----------------------------------------------------------------


def test_uniformize_mixed_periods():
    base = two_three_machine()
    uniform, g = uniformize_period(base)
    assert g == 6
    assert uniform.n_states <= 6 * base.n_states
    info = compute_period_info(uniform)
    assert all(p in (None, 6) for p in info.component_period)
    assert equivalent(rdfa_to_dfa(base), rdfa_to_dfa(uniform))


def test_uniformize_period_one_is_isomorphic_after_trim():
    base = reverse_to_rdfa(build_dfa("a*"))
    uniform, g = uniformize_period(base)
    assert g == 1
    assert uniform.n_states == base.n_states
    assert equivalent(rdfa_to_dfa(base), rdfa_to_dfa(uniform))


def test_uniformize_even_as():
    base = reverse_to_rdfa(build_dfa("(aa)*", "a"))
    uniform, g = uniformize_period(base)
    assert g == 2
    comp_periods = [
        scc_period(comp, uniform) for comp in scc_decompose(uniform).components
    ]
    assert all(p in (None, 2) for p in comp_periods)


def test_analyze_checks_uniform_periods_on_corpus():
    for _id, pattern in CORPUS:
        analyzed = build_analyzed(pattern)
        for cid, period in enumerate(analyzed.periods.component_period):
            assert period in (None, analyzed.g)


# --- shift ------------------------------------------------------------------------


def test_shift_even_as():
    analyzed = build_analyzed("(aa)*", "a")
    p0 = analyzed.rdfa.initial
    p1 = analyzed.rdfa.delta[p0][UNARY.code("a")]
    assert analyzed.shift(p0, p1) == 1
    assert analyzed.shift(p1, p0) == 1
    assert analyzed.shift(p0, p0) == 0


def test_shift_errors_outside_shared_recurrent_scc():
    analyzed = build_analyzed("ba*")
    (final,) = analyzed.rdfa.finals
    with pytest.raises(ValueError):
        analyzed.shift(analyzed.rdfa.initial, final)
    with pytest.raises(ValueError):
        analyzed.shift(final, final)  # transient


def test_shift_antisymmetry_on_mixed_period_machine():
    analyzed = analyze(two_three_machine())
    assert analyzed.g == 6
    scc = analyzed.scc
    for cid, comp in enumerate(scc.components):
        if analyzed.periods.component_period[cid] is None:
            continue
        for p in comp:
            for q in comp:
                assert (analyzed.shift(p, q) + analyzed.shift(q, p)) % analyzed.g == 0


# --- acceptance sets ---------------------------------------------------------------


def test_acceptance_sets_a_star():
    analyzed = build_analyzed("a*")
    q0, sink = analyzed.rdfa.initial, 1 - analyzed.rdfa.initial
    assert analyzed.acc[q0] == EventuallyPeriodicSet.universal()
    assert analyzed.acc[sink].is_empty
    assert analyzed.t == 0
    assert analyzed.acc_mod[q0] == {0} and analyzed.acc_mod[sink] == frozenset()


def test_acceptance_sets_even_as():
    analyzed = build_analyzed("(aa)*", "a")
    assert analyzed.g == 2
    p0 = analyzed.rdfa.initial
    p1 = analyzed.rdfa.delta[p0][UNARY.code("a")]
    flags0 = brute_accept_length_flags(analyzed.rdfa, p0, 16)
    flags1 = brute_accept_length_flags(analyzed.rdfa, p1, 16)
    assert flags0 == [n % 2 == 0 for n in range(17)]
    assert flags1 == [n % 2 == 1 for n in range(17)]
    for n in range(17):
        assert analyzed.acc[p0].member(n) == flags0[n]
        assert analyzed.acc[p1].member(n) == flags1[n]


def test_acceptance_sets_b_then_a():
    analyzed = build_analyzed("ba*")
    q0 = analyzed.rdfa.initial
    (final,) = analyzed.rdfa.finals
    sink = next(q for q in range(3) if q not in (q0, final))
    assert [analyzed.acc[q0].member(n) for n in range(17)] == [False] + [True] * 16
    assert [n for n in range(17) if analyzed.acc[final].member(n)] == [0]
    assert analyzed.acc[sink].is_empty


def test_acceptance_sets_match_brute_force_on_corpus():
    for _id, pattern in CORPUS:
        analyzed = build_analyzed(pattern)
        bound = analyzed.t + 2 * analyzed.g + 8
        for q in range(analyzed.rdfa.n_states):
            flags = brute_accept_length_flags(analyzed.rdfa, q, bound)
            for n in range(bound + 1):
                assert analyzed.acc[q].member(n) == flags[n], (pattern, q, n)


def test_acceptance_periodicity_beyond_threshold():
    for _id, pattern in CORPUS:
        analyzed = build_analyzed(pattern)
        for q in range(analyzed.rdfa.n_states):
            for x in range(analyzed.t, analyzed.t + 4 * analyzed.g + 1):
                assert analyzed.acc[q].member(x) == analyzed.acc[q].member(x + analyzed.g)


def test_threshold_respects_shift_condition():
    for _id, pattern in CORPUS:
        analyzed = build_analyzed(pattern)
        scc = analyzed.scc
        for cid, comp in enumerate(scc.components):
            if analyzed.periods.component_period[cid] is None:
                continue
            for p in comp:
                for q in comp:
                    s = analyzed.shift(p, q)
                    for x in range(analyzed.t, analyzed.t + 3 * analyzed.g + 1):
                        assert analyzed.acc[p].member(x) == analyzed.acc[q].shifted(s).member(x)


def test_retarget_finals_recomputes_acceptance():
    analyzed = build_analyzed("ba*")
    (final,) = analyzed.rdfa.finals
    retargeted = retarget_finals(analyzed, (analyzed.rdfa.initial,))
    assert retargeted.acc[analyzed.rdfa.initial].member(0)
    assert retargeted.g == analyzed.g


# --- cut languages --------------------------------------------------------------------


def test_cut_zero_zero_is_identity():
    for _id, pattern in CORPUS[:6]:
        dfa = build_dfa(pattern)
        assert equivalent(determinize(cut_language(dfa, 0, 0)), dfa)


def test_cut_language_b_then_a():
    dfa = build_dfa("ba*")
    cut = cut_language(dfa, 1, 0)
    # brute-force the definition: v is in the cut iff some one-symbol
    # extension on the left lands in L
    for v in words_up_to(AB, 5):
        expected = any(dfa.accepts(x + v) for x in AB.symbols)
        assert cut.accepts(v) == expected, v
    assert equivalent(determinize(cut), build_dfa("a*"))


def test_cut_language_even_as():
    dfa = build_dfa("(aa)*", "a")
    cut = cut_language(dfa, 1, 1)
    for v in words_up_to(UNARY, 8):
        expected = any(dfa.accepts(x + v + z) for x in "a" for z in "a")
        assert cut.accepts(v) == expected, v
    assert equivalent(determinize(cut), dfa)


# --- length languages and triviality ----------------------------------------------------


def test_is_length_language_examples():
    assert is_length_language(build_dfa("(aa)*", "a"))
    assert not is_length_language(build_dfa("(aa)*"))  # ab has even length but is out
    assert not is_length_language(build_dfa("a*"))


def test_is_trivial_examples():
    assert is_trivial(build_dfa("(a|b)*a"))
    assert not is_trivial(build_dfa("a*"))
    assert is_trivial(build_dfa("(a|b)*"))


def test_trivial_language_has_bounded_distance():
    dfa = build_dfa("(a|b)*a")
    for n in range(1, 9):
        worst = max(distance_to_language(w, dfa) for w in words_up_to(AB, n) if len(w) == n)
        assert worst == 1


def test_length_cut_witness_is_a_real_witness():
    dfa = build_dfa("(a|b)*a")
    witness = length_cut_witness(dfa)
    assert witness is not None
    i, j = witness
    assert is_length_language(cut_language(dfa, i, j))
    assert length_cut_witness(build_dfa("a*")) is None


# --- suffix-freeness ---------------------------------------------------------------------


def brute_suffix_free(dfa, max_len: int) -> bool:
    """Definitional check: no member xy with nonempty x has y in L."""
    for w in words_up_to(dfa.alphabet, max_len):
        if not dfa.accepts(w):
            continue
        for cut in range(1, len(w) + 1):  # x = w[:cut] is nonempty
            if dfa.accepts(w[cut:]):
                return False
    return True


def test_is_suffix_free_examples():
    assert is_suffix_free(trim_reachable(reverse_to_rdfa(build_dfa("ba*"))))
    assert not is_suffix_free(trim_reachable(reverse_to_rdfa(build_dfa("a*"))))
    # fixed-length block language: proper suffixes are shorter
    assert is_suffix_free(trim_reachable(reverse_to_rdfa(build_dfa("(a|b)(a|b)"))))


def test_is_suffix_free_matches_definition_on_corpus():
    for _id, pattern in CORPUS:
        dfa = build_dfa(pattern)
        rdfa = trim_reachable(reverse_to_rdfa(dfa))
        assert is_suffix_free(rdfa) == brute_suffix_free(dfa, 7), pattern


# --- one-sided classes ----------------------------------------------------------------------


def test_one_sided_class_examples():
    assert one_sided_class(build_dfa("(a|b)*a")) is OneSidedClass.CONSTANT_TRIVIAL
    assert one_sided_class(build_dfa("ba*")) is OneSidedClass.LOGLOG
    assert one_sided_class(build_dfa("a*")) is OneSidedClass.LOG_LOWER_BOUND


def test_one_sided_class_b_even_a_is_loglog():
    assert one_sided_class(build_dfa("b(aa)*")) is OneSidedClass.LOGLOG


# --- excluded factors -------------------------------------------------------------------------


def test_find_excluded_factor_a_star():
    result = find_excluded_factor(build_dfa("a*"))
    assert result == (Progression(0, 1), "b")


def test_find_excluded_factor_ab_star():
    result = find_excluded_factor(build_dfa("(ab)*"))
    assert result is not None
    progression, factor = result
    assert progression.step % 2 == 0 and progression.member(progression.offset)
    assert factor in ("aa", "bb")


def test_find_excluded_factor_none_for_trivial():
    assert find_excluded_factor(build_dfa("(a|b)*a")) is None


def test_excluded_factor_packing_gives_linear_distance():
    for pattern in ("a*", "(ab)*", "((a|b)a)*"):
        dfa = build_dfa(pattern)
        progression, factor = find_excluded_factor(dfa)
        n = next(m for m in progression.iterate(20) if m >= 6)
        packed = (factor * (n // len(factor) + 1))[:n]
        copies = n // len(factor)
        assert distance_to_language(packed, dfa) >= copies, pattern
