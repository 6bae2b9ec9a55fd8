"""Command-line harness: classify and analyze languages, run single
testers over streams, query the distance oracles, and drive reproducible
experiments from a JSON config.

Experiment configs look like::

    {
      "seed": 7,
      "trials": 100,
      "eps": 0.5,
      "window_sizes": [256, 4096],
      "languages": [{"id": "a-star", "regex": "a*", "alphabet": "ab"}],
      "testers": ["det", "two-sided"],
      "streams": [{"kind": "periodic", "block": "ba", "repeats": 4096}],
      "timing": false
    }

Reports are CSV (or ``--json``) with one row per language x tester x
window size x stream; rows carry the oracle distance of the final window
so every accept/reject frequency can be audited, and the maximum state
size in bits seen over the run.  With ``"timing": false`` the wall-time
column is zeroed so identical configs and seeds give byte-identical
reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass

from . import analysis, oracle, streams, testers_det, testers_rand
from .automata import (
    Alphabet,
    AutomatonError,
    Dfa,
    automaton_from_json,
    automaton_to_json,
    determinize,
    minimize,
    parse_regex,
    rdfa_to_dfa,
)


class ConfigError(ValueError):
    """Invalid experiment config; message carries the offending field path."""


TESTER_KINDS = ("exact", "trivial", "det", "two-sided", "one-sided")


@dataclass(frozen=True)
class Language:
    ident: str
    dfa: Dfa

    @property
    def alphabet(self) -> Alphabet:
        return self.dfa.alphabet


def language_from_regex(ident: str, pattern: str, alphabet: Alphabet) -> Language:
    return Language(ident, minimize(determinize(parse_regex(pattern, alphabet))))


def language_from_file(ident: str, path: str) -> Language:
    with open(path, "r", encoding="utf-8") as handle:
        machine = automaton_from_json(json.load(handle))
    if not isinstance(machine, Dfa):
        machine = rdfa_to_dfa(machine)
    return Language(ident, machine)


def _language_from_config(entry: dict, path: str) -> Language:
    if not isinstance(entry, dict):
        raise ConfigError(f"{path}: expected an object")
    ident = entry.get("id")
    if not isinstance(ident, str) or not ident:
        raise ConfigError(f"{path}.id: expected a nonempty string")
    if "regex" in entry:
        alphabet_text = entry.get("alphabet")
        if not isinstance(alphabet_text, str) or not alphabet_text:
            raise ConfigError(f"{path}.alphabet: required with a regex")
        alphabet = Alphabet.from_string(alphabet_text, entry.get("pad"))
        try:
            return language_from_regex(ident, entry["regex"], alphabet)
        except AutomatonError as exc:
            raise ConfigError(f"{path}.regex: {exc}") from exc
    if "automaton" in entry:
        return language_from_file(ident, entry["automaton"])
    raise ConfigError(f"{path}: needs either 'regex' or 'automaton'")


def build_tester_factory(kind: str, language: Language, n: int, eps: float):
    """Factory mapping a per-trial rng to a fresh tester instance."""
    if kind == "exact":
        return lambda rng: testers_det.exact_tester(language.dfa, n)
    if kind == "trivial":
        lengths = analysis.realized_lengths(language.dfa)
        return lambda rng: testers_det.trivial_tester(lengths, n)
    if kind == "det":
        analyzed = analysis.analyze(language.dfa)
        return lambda rng: testers_det.deterministic_tester(analyzed, n)
    if kind == "two-sided":
        analyzed = analysis.analyze(language.dfa)
        return lambda rng: testers_rand.two_sided_tester(analyzed, n, eps, rng)
    if kind == "one-sided":
        return lambda rng: testers_rand.composed_one_sided_tester(language.dfa, n, rng)
    raise ConfigError(f"unknown tester kind {kind!r} (choose from {', '.join(TESTER_KINDS)})")


REPORT_COLUMNS = (
    "language",
    "tester",
    "n",
    "eps",
    "stream",
    "trials",
    "accept_freq",
    "oracle_dist",
    "state_bits",
    "wall_time_s",
)


@dataclass(frozen=True)
class ReportRow:
    language: str
    tester: str
    n: int
    eps: float
    stream: str
    trials: int
    accept_freq: float
    oracle_dist: int | float
    state_bits: int
    wall_time_s: float

    def as_record(self) -> dict:
        record = {col: getattr(self, col) for col in REPORT_COLUMNS}
        if record["oracle_dist"] == math.inf:
            record["oracle_dist"] = "inf"
        return record


def run_experiment(config: dict) -> list[ReportRow]:
    """Cross product of languages x testers x window sizes x streams."""
    if not isinstance(config, dict):
        raise ConfigError("config: expected a JSON object")
    seed = config.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed: expected an integer")
    trials = config.get("trials", 1)
    if not isinstance(trials, int) or trials < 1:
        raise ConfigError("trials: expected a positive integer")
    eps = float(config.get("eps", 0.5))
    timing = bool(config.get("timing", True))

    window_sizes = config.get("window_sizes")
    if not isinstance(window_sizes, list) or not all(isinstance(n, int) and n >= 0 for n in window_sizes):
        raise ConfigError("window_sizes: expected a list of nonnegative integers")

    raw_languages = config.get("languages")
    if not isinstance(raw_languages, list) or not raw_languages:
        raise ConfigError("languages: expected a nonempty list")
    languages = [
        _language_from_config(entry, f"languages[{i}]") for i, entry in enumerate(raw_languages)
    ]

    kinds = config.get("testers", [])
    if not isinstance(kinds, list):
        raise ConfigError("testers: expected a list")
    for i, kind in enumerate(kinds):
        if kind not in TESTER_KINDS:
            raise ConfigError(f"testers[{i}]: unknown kind {kind!r}")

    raw_streams = config.get("streams")
    if not isinstance(raw_streams, list) or not raw_streams:
        raise ConfigError("streams: expected a nonempty list")
    try:
        specs = [streams.spec_from_dict(entry) for entry in raw_streams]
    except ValueError as exc:
        raise ConfigError(f"streams: {exc}") from exc

    rows = []
    for language in languages:
        for kind in kinds:
            for n in window_sizes:
                for spec in specs:
                    symbols = list(streams.generate(spec, language.alphabet))
                    factory = build_tester_factory(kind, language, n, eps)
                    started = time.perf_counter()
                    result = streams.monte_carlo(factory, symbols, trials, seed)
                    elapsed = time.perf_counter() - started if timing else 0.0
                    window = oracle.WindowBuffer(language.alphabet, n)
                    for symbol in symbols:
                        window.feed(symbol)
                    dist = oracle.distance_to_language(window.contents(), language.dfa)
                    rows.append(
                        ReportRow(
                            language=language.ident,
                            tester=kind,
                            n=n,
                            eps=eps,
                            stream=spec.label(),
                            trials=trials,
                            accept_freq=result.accept_rate,
                            oracle_dist=dist,
                            state_bits=result.max_state_bits,
                            wall_time_s=round(elapsed, 6),
                        )
                    )
    rows.sort(key=lambda r: (r.language, r.tester, r.n, r.stream))
    return rows


def report_to_csv(rows: list[ReportRow]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_record())
    return out.getvalue()


def report_to_json(rows: list[ReportRow]) -> str:
    return json.dumps([row.as_record() for row in rows], indent=2) + "\n"


# --- argparse front end --------------------------------------------------------


def _add_language_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--regex", help="language as a regex over --alphabet")
    parser.add_argument("--regex-file", help="file holding the regex on its first line")
    parser.add_argument("--alphabet", help="alphabet symbols, e.g. 'ab'")
    parser.add_argument("--pad", help="pad symbol (default: smallest alphabet symbol)")
    parser.add_argument("--automaton", help="automaton JSON file (direction left or right)")


def _language_from_args(args: argparse.Namespace) -> Language:
    pattern = args.regex
    if pattern is None and args.regex_file:
        with open(args.regex_file, "r", encoding="utf-8") as handle:
            pattern = handle.readline().strip()
    if pattern is not None:
        if not args.alphabet:
            raise SystemExit("a regex needs --alphabet")
        alphabet = Alphabet.from_string(args.alphabet, args.pad)
        return language_from_regex(pattern, pattern, alphabet)
    if args.automaton:
        return language_from_file(args.automaton, args.automaton)
    raise SystemExit("give a language with --regex, --regex-file or --automaton")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_classify(args: argparse.Namespace) -> int:
    language = _language_from_args(args)
    rdfa = analysis.trim_reachable(analysis.reverse_to_rdfa(language.dfa))
    report = {
        "language": language.ident,
        "trivial": analysis.is_trivial(language.dfa),
        "suffix_free": analysis.is_suffix_free(rdfa),
        "one_sided_class": analysis.one_sided_class(language.dfa).value,
    }
    excluded = analysis.find_excluded_factor(language.dfa)
    if excluded is not None:
        progression, factor = excluded
        report["excluded_factor"] = {
            "factor": factor,
            "lengths": {"offset": progression.offset, "step": progression.step},
        }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    language = _language_from_args(args)
    analyzed = analysis.analyze(language.dfa)
    scc = analyzed.scc
    report = {
        "language": language.ident,
        "period": analyzed.g,
        "threshold": analyzed.t,
        "states": analyzed.rdfa.n_states,
        "initial": analyzed.rdfa.initial,
        "finals": sorted(analyzed.rdfa.finals),
        "acceptance_sets": {str(q): analyzed.acc[q].to_dict() for q in range(analyzed.rdfa.n_states)},
        "acceptance_residues": {str(q): sorted(analyzed.acc_mod[q]) for q in range(analyzed.rdfa.n_states)},
        "sccs": [
            {
                "id": cid,
                "states": sorted(component),
                "transient": scc.transient[cid],
                "period": analyzed.periods.component_period[cid],
            }
            for cid, component in enumerate(scc.components)
        ],
        "classification": analysis.one_sided_class(language.dfa).value,
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def _cmd_tester_run(args: argparse.Namespace) -> int:
    language = _language_from_args(args)
    spec = streams.spec_from_string(args.stream)
    symbols = list(streams.generate(spec, language.alphabet))
    factory = build_tester_factory(args.kind, language, args.n, args.eps)
    result = streams.monte_carlo(factory, symbols, args.trials, args.seed, trace=args.trace)
    window = oracle.WindowBuffer(language.alphabet, args.n)
    for symbol in symbols:
        window.feed(symbol)
    dist = oracle.distance_to_language(window.contents(), language.dfa)
    report = {
        "language": language.ident,
        "kind": args.kind,
        "n": args.n,
        "stream": spec.label(),
        "trials": args.trials,
        "accept_freq": result.accept_rate,
        "state_bits": result.max_state_bits,
        "oracle_dist": "inf" if dist == math.inf else dist,
    }
    if args.trace:
        report["traces"] = [list(t) for t in result.traces]
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    with open(args.config, "r", encoding="utf-8") as handle:
        config = json.load(handle)
    rows = run_experiment(config)
    text = report_to_json(rows) if args.json else report_to_csv(rows)
    _emit(text, args.out)
    return 0


def _cmd_oracle_dist(args: argparse.Namespace) -> int:
    language = _language_from_args(args)
    spec = streams.spec_from_string(args.stream)
    window = oracle.WindowBuffer(language.alphabet, args.n)
    for symbol in streams.generate(spec, language.alphabet):
        window.feed(symbol)
    contents = window.contents()
    dist = oracle.distance_to_language(contents, language.dfa)
    pdist = oracle.prefix_distance_to_language(contents, language.dfa)
    report = {
        "language": language.ident,
        "n": args.n,
        "window": contents,
        "hamming_dist": "inf" if dist == math.inf else dist,
        "prefix_dist": "inf" if pdist == math.inf else pdist,
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    language = _language_from_args(args)
    _emit(json.dumps(automaton_to_json(language.dfa), indent=2) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regwin", description="sliding-window property testers for regular languages"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="triviality / suffix-freeness / one-sided class")
    _add_language_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("analyze", help="period, threshold, SCCs and acceptance sets")
    _add_language_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("tester", help="tester subcommands")
    tester_sub = p.add_subparsers(dest="tester_command", required=True)
    run = tester_sub.add_parser("run", help="run one tester over a stream")
    _add_language_flags(run)
    run.add_argument("--kind", required=True, choices=TESTER_KINDS)
    run.add_argument("--n", type=int, required=True)
    run.add_argument("--eps", type=float, default=0.5)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--trials", type=int, default=1)
    run.add_argument("--stream", required=True, help="e.g. literal:baaa or periodic:ba,64")
    run.add_argument("--trace", action="store_true", help="record per-step decisions")
    run.add_argument("--out")
    run.set_defaults(func=_cmd_tester_run)

    p = sub.add_parser("experiment", help="run a JSON experiment config")
    p.add_argument("config")
    p.add_argument("--json", action="store_true", help="JSON report instead of CSV")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("oracle", help="oracle subcommands")
    oracle_sub = p.add_subparsers(dest="oracle_command", required=True)
    dist = oracle_sub.add_parser("dist", help="distances of the final window")
    _add_language_flags(dist)
    dist.add_argument("--n", type=int, required=True)
    dist.add_argument("--stream", required=True)
    dist.add_argument("--out")
    dist.set_defaults(func=_cmd_oracle_dist)

    p = sub.add_parser("export", help="emit the language's automaton as JSON")
    _add_language_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, AutomatonError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
