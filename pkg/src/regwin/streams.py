"""Stream generators and seeded Monte Carlo estimation.

Stream specs are small declarative records so experiment configs and CLI
flags can describe inputs reproducibly.  The adversarial kind expands to
``factor^n · x · y^k · z``, the shape used to drive testers onto windows
that are provably far from a language (pack the window with disjoint
copies of an excluded factor).

Monte Carlo trials derive per-trial seeds by hashing (master seed, trial
index) with BLAKE2, so results do not depend on scheduling or on Python's
per-process hash salt.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .automata import Alphabet
from .testers_det import SlidingWindowTester


@dataclass(frozen=True)
class LiteralStream:
    word: str

    def to_dict(self) -> dict:
        return {"kind": "literal", "word": self.word}

    def label(self) -> str:
        return f"literal:{self.word}"


@dataclass(frozen=True)
class PeriodicStream:
    block: str
    repeats: int

    def to_dict(self) -> dict:
        return {"kind": "periodic", "block": self.block, "repeats": self.repeats}

    def label(self) -> str:
        return f"periodic:{self.block},{self.repeats}"


@dataclass(frozen=True)
class RandomStream:
    seed: int
    length: int
    weights: tuple[tuple[str, float], ...] = ()  # empty means uniform

    def to_dict(self) -> dict:
        data = {"kind": "random", "seed": self.seed, "length": self.length}
        if self.weights:
            data["weights"] = {s: w for s, w in self.weights}
        return data

    def label(self) -> str:
        return f"random:{self.seed},{self.length}"


@dataclass(frozen=True)
class AdversarialStream:
    """Expands to factor^n x y^k z."""

    factor: str
    x: str
    y: str
    z: str
    n: int
    k: int

    def to_dict(self) -> dict:
        return {
            "kind": "adversarial",
            "factor": self.factor,
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "n": self.n,
            "k": self.k,
        }

    def label(self) -> str:
        return f"adversarial:{self.factor},{self.x},{self.y},{self.z},{self.n},{self.k}"


StreamSpec = LiteralStream | PeriodicStream | RandomStream | AdversarialStream


def spec_from_dict(data: dict) -> StreamSpec:
    kind = data.get("kind")
    try:
        if kind == "literal":
            return LiteralStream(data["word"])
        if kind == "periodic":
            return PeriodicStream(data["block"], int(data["repeats"]))
        if kind == "random":
            weights = tuple(sorted((s, float(w)) for s, w in data.get("weights", {}).items()))
            return RandomStream(int(data["seed"]), int(data["length"]), weights)
        if kind == "adversarial":
            return AdversarialStream(
                data["factor"], data["x"], data["y"], data["z"], int(data["n"]), int(data["k"])
            )
    except KeyError as exc:
        raise ValueError(f"stream spec of kind {kind!r} is missing field {exc}") from None
    raise ValueError(f"unknown stream kind {kind!r}")


def spec_from_string(text: str) -> StreamSpec:
    """Compact CLI form, e.g. literal:baaa | periodic:ba,64 |
    random:7,10000 | adversarial:b,,a,,4,3."""
    kind, _, rest = text.partition(":")
    if kind == "literal":
        return LiteralStream(rest)
    if kind == "periodic":
        block, _, repeats = rest.rpartition(",")
        if not block:
            raise ValueError("periodic stream needs block,repeats")
        return PeriodicStream(block, int(repeats))
    if kind == "random":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ValueError("random stream needs seed,length")
        return RandomStream(int(parts[0]), int(parts[1]))
    if kind == "adversarial":
        parts = rest.split(",")
        if len(parts) != 6:
            raise ValueError("adversarial stream needs factor,x,y,z,n,k")
        return AdversarialStream(parts[0], parts[1], parts[2], parts[3], int(parts[4]), int(parts[5]))
    raise ValueError(f"unknown stream kind {kind!r}")


def generate(spec: StreamSpec, alphabet: Alphabet) -> Iterator[str]:
    """Lazily yield the stream's symbols; deterministic given the spec."""
    if isinstance(spec, LiteralStream):
        literal_parts: Iterable[str] = (spec.word,)
    elif isinstance(spec, PeriodicStream):
        literal_parts = (spec.block,) * spec.repeats
    elif isinstance(spec, AdversarialStream):
        literal_parts = (spec.factor,) * spec.n + (spec.x,) + (spec.y,) * spec.k + (spec.z,)
    elif isinstance(spec, RandomStream):
        symbols = alphabet.symbols
        if spec.weights:
            for s, _w in spec.weights:
                alphabet.code(s)  # validate
            symbols = tuple(s for s, _w in spec.weights)
            weights = np.array([w for _s, w in spec.weights], dtype=float)
            probs = weights / weights.sum()
        else:
            probs = None
        rng = np.random.default_rng(spec.seed)
        draws = rng.choice(len(symbols), size=spec.length, p=probs)
        for i in draws:
            yield symbols[int(i)]
        return
    else:
        raise TypeError(f"not a stream spec: {spec!r}")
    for part in literal_parts:
        for ch in part:
            alphabet.code(ch)  # validate
            yield ch


def trial_seed(master_seed: int, trial_index: int) -> int:
    digest = hashlib.blake2b(
        f"{master_seed}:{trial_index}".encode("ascii"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")


@dataclass(frozen=True)
class MonteCarloResult:
    accept_rate: float
    max_state_bits: int
    traces: tuple[tuple[bool, ...], ...] | None = None


def monte_carlo(
    factory: Callable[[np.random.Generator], SlidingWindowTester],
    stream: Sequence[str] | Iterable[str],
    trials: int,
    master_seed: int,
    trace: bool = False,
) -> MonteCarloResult:
    """Fraction of independent tester instances accepting at end of stream.

    Every trial runs a fresh tester (from ``factory`` with a derived rng)
    over the same materialized stream.  ``trace=True`` additionally records
    each trial's per-step decisions.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    symbols = list(stream)
    accepted = 0
    max_bits = 0
    traces: list[tuple[bool, ...]] = []
    for i in range(trials):
        tester = factory(np.random.default_rng(trial_seed(master_seed, i)))
        max_bits = max(max_bits, tester.state_bits())
        steps: list[bool] = []
        for symbol in symbols:
            tester.feed(symbol)
            if trace:
                steps.append(tester.decide())
            max_bits = max(max_bits, tester.state_bits())
        if trace:
            traces.append(tuple(steps))
        if tester.decide():
            accepted += 1
    return MonteCarloResult(
        accepted / trials, max_bits, tuple(traces) if trace else None
    )
