"""Mean-generator closure: saturate a scale with its own proportional means.

One pass collects every pairwise mean of the current tones that stays
inside the prime limit; passes repeat until nothing new appears (the
fixpoint) or a generation cap intervenes.  The whole run is recorded as
a ClosureTrace: per-generation additions, each with one witnessing pair,
plus the final scale.  Batch passes are an implementation choice — the
one-tone-at-a-time variant provably lands on the same fixpoint, and
`closure_order_independence` re-derives that on demand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .exact import FIVE_LIMIT, Ratio, Restriction, is_smooth
from .means import MeanKind, mean_of_kind
from .scales import Scale, reduce_to_diapason

__all__ = [
    "ClosureTrace",
    "Generation",
    "GeneratorConfig",
    "Restriction",
    "Witness",
    "closure_order_independence",
    "generate_means",
    "mean_closure",
]

_ONE = Ratio(1)
_TWO = Ratio(2)


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for one closure run.

    kinds defaults to arithmetic alone: that single kind under the
    5-limit already reproduces both published natural closures, and
    admitting harmonic means changes the fixpoint.  The diapason flag
    folds any out-of-range mean back into [1, 2]; with arithmetic,
    harmonic or geometric means of in-range tones it can never fire,
    since all three lie between their arguments.
    """

    kinds: frozenset[MeanKind] = frozenset({MeanKind.ARITHMETIC})
    restriction: Restriction = FIVE_LIMIT
    max_generations: int = 64
    keep_within_diapason: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "kinds", frozenset(self.kinds))
        if not self.kinds:
            raise ValueError("at least one mean kind is required")
        if self.max_generations < 1:
            raise ValueError("max_generations must be >= 1")


class Witness(NamedTuple):
    """One pair (and kind) that produces `tone` as its mean."""

    tone: Ratio
    a: Ratio
    b: Ratio
    kind: MeanKind

    def to_json_dict(self) -> dict:
        return {
            "tone": str(self.tone),
            "a": str(self.a),
            "b": str(self.b),
            "kind": self.kind.value,
        }


class Generation(NamedTuple):
    """Tones added by one closure pass, sorted, each with its witness."""

    added: tuple[Ratio, ...]
    witnesses: tuple[Witness, ...]


@dataclass(frozen=True)
class ClosureTrace:
    """Complete record of a closure run.

    `generations` lists only productive passes; the silent confirming
    pass shows up as fixpoint_reached instead.  When the generation cap
    is exhausted before a silent pass, fixpoint_reached stays False.
    """

    seed: Scale
    generations: tuple[Generation, ...]
    fixpoint_reached: bool
    final: Scale

    def added_tones(self) -> list[Ratio]:
        return [tone for generation in self.generations for tone in generation.added]

    def to_json_dict(self) -> dict:
        return {
            "seed": [str(t) for t in self.seed.tones],
            "generations": [
                {
                    "added": [str(t) for t in generation.added],
                    "witnesses": [w.to_json_dict() for w in generation.witnesses],
                }
                for generation in self.generations
            ],
            "fixpoint": self.fixpoint_reached,
            "final": [str(t) for t in self.final.tones],
        }


def _admissible_means(
    tones: Iterable[Ratio], config: GeneratorConfig
) -> dict[Ratio, Witness]:
    """Every in-limit pairwise mean of `tones`, keyed by value.

    Pairs are scanned in sorted order and kinds alphabetically, so the
    witness stored for each mean is the lexicographically least one —
    that is what makes traces reproducible.
    """
    ordered = sorted(tones)
    found: dict[Ratio, Witness] = {}
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            for kind in sorted(config.kinds, key=lambda k: k.value):
                mean = mean_of_kind(a, b, kind)
                if mean is None:
                    continue  # irrational geometric mean
                if config.keep_within_diapason and not _ONE <= mean <= _TWO:
                    mean = reduce_to_diapason(mean)
                if not is_smooth(mean, config.restriction):
                    continue
                if mean not in found:
                    found[mean] = Witness(mean, a, b, kind)
    return found


def generate_means(tones: Scale, config: GeneratorConfig) -> set[Ratio]:
    """One generator pass: all admissible pairwise means of the scale.

    Means that coincide with input tones are reported too; novelty is
    the closure loop's concern, not this operation's.
    """
    if len(tones.tones) < 2:
        raise ValueError("need at least two tones to take means")
    return set(_admissible_means(tones.tones, config))


def mean_closure(seed: Scale, config: GeneratorConfig = GeneratorConfig()) -> ClosureTrace:
    """Iterate generator passes from `seed` until saturation or the cap."""
    if len(seed.tones) < 2:
        raise ValueError("need at least two tones to take means")
    current = set(seed.tones)
    generations: list[Generation] = []
    fixpoint = False
    for _ in range(config.max_generations):
        found = _admissible_means(current, config)
        new = set(found) - current
        if not new:
            fixpoint = True
            break
        added = tuple(sorted(new))
        generations.append(Generation(added, tuple(found[t] for t in added)))
        current |= new
    final = Scale(f"{seed.name}-closure", sorted(current))
    return ClosureTrace(seed, tuple(generations), fixpoint, final)


def closure_order_independence(
    seed: Scale,
    config: GeneratorConfig,
    trials: int,
    rng_seed: int = 0,
) -> bool:
    """Certify that insertion order cannot change the fixpoint.

    Runs `trials` sequential closures, each inserting one randomly
    chosen admissible mean at a time, and compares every outcome with
    the batch fixpoint.  The batch closure must terminate, otherwise
    there is nothing to compare against.
    """
    batch = mean_closure(seed, config)
    if not batch.fixpoint_reached:
        raise ValueError("batch closure hit the generation cap; no fixpoint to certify")
    target = set(batch.final.tones)
    rng = random.Random(rng_seed)
    for _ in range(trials):
        current = set(seed.tones)
        while True:
            candidates = sorted(set(_admissible_means(current, config)) - current)
            if not candidates:
                break
            current.add(rng.choice(candidates))
        if current != target:
            return False
    return True
