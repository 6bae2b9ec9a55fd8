"""Sliding-window property testers for regular languages.

Given a window size n and a stream, a tester must accept whenever the last
n stream symbols form a word of the language and reject whenever they are
far from every such word.  The package provides the exact baseline, a
constant-space tester for trivial languages, a deterministic tester in
O(log n) bits, a two-sided randomized tester in O(1) bits, and a one-sided
randomized tester in O(log log n) bits for unions of trivial and
suffix-free languages -- plus the automaton analyses those testers compile
from and brute-force oracles to audit them.
"""

from .analysis import (
    AnalyzedRdfa,
    EventuallyPeriodicSet,
    OneSidedClass,
    PeriodInfo,
    Progression,
    SccDecomposition,
    acceptance_sets,
    analyze,
    compute_period_info,
    cut_language,
    find_excluded_factor,
    is_length_language,
    is_suffix_free,
    is_trivial,
    length_cut_witness,
    one_sided_class,
    realized_lengths,
    retarget_finals,
    scc_decompose,
    scc_period,
    shift,
    uniformize_period,
)
from .automata import (
    Alphabet,
    AlphabetMismatch,
    AutomatonError,
    Dfa,
    Nfa,
    Rdfa,
    RegexSyntaxError,
    StateLimitExceeded,
    automaton_from_json,
    automaton_to_json,
    determinize,
    equivalent,
    minimize,
    parse_regex,
    product_intersect,
    rdfa_to_dfa,
    reverse_to_rdfa,
    trim_reachable,
)
from .oracle import (
    WindowBuffer,
    check_t_simulation,
    distance_to_language,
    exhaustive_accepting_run,
    hamming_distance,
    prefix_distance_to_language,
)
from .streams import (
    AdversarialStream,
    LiteralStream,
    MonteCarloResult,
    PeriodicStream,
    RandomStream,
    StreamSpec,
    generate,
    monte_carlo,
    spec_from_dict,
    spec_from_string,
    trial_seed,
)
from .testers_det import (
    PathSummary,
    SlidingWindowTester,
    deterministic_tester,
    exact_tester,
    path_summary_of,
    trivial_tester,
)
from .testers_rand import (
    CompactSummary,
    ModularLengthTable,
    PartialRdfa,
    ProbabilisticCounter,
    SummaryTriple,
    ThresholdCounter,
    amplification_copies,
    composed_one_sided_tester,
    counter_copies,
    counter_increment,
    counter_is_high,
    enumerate_path_descriptions,
    make_counter,
    one_sided_suffix_free_tester,
    prime_pool,
    prolong_compact_summary,
    sample_prime,
    two_sided_tester,
    union_tester,
)

__version__ = "0.1.0"
