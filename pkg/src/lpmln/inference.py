"""Weights, probabilities, and query modes over stable models.

The infinite-weight limit is realized lexicographically: models are ranked
first by their hard tier (an integer count of hard rules) and probability
mass is shared, proportionally to the exponentiated soft tier, only among
models with the extremal hard tier.  No finite stand-in for the infinite
weight is ever used.

Every query function takes ``hard_mode``: ``"strict"`` (default) enforces
hard rules outright, ``"relaxed"`` lets them participate in the hard-tier
ranking, which is what makes inconsistency diagnosis possible.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .engine import DEFAULT_ATOM_CAP, StableModelEnumerator
from .grounder import GroundProgram, ground
from .model import Atom, Interpretation, Program, atom_sort_key, merge_programs

DEFAULT_SCALE = 1000
_TIE_EPS = 1e-9


class NoStableModelsError(RuntimeError):
    pass


class InconsistentEvidenceError(NoStableModelsError):
    pass


class UnknownPredicateWarning(UserWarning):
    pass


@dataclass(frozen=True)
class WeightVector:
    """Lexicographic weight: integer hard tier, real soft tier.

    Reward mode counts satisfied rules, penalty mode counts violated ones.
    """

    hard: int
    soft: float


@dataclass(frozen=True)
class DistEntry:
    interpretation: Interpretation
    weight: WeightVector
    probability: float


@dataclass(frozen=True)
class Distribution:
    mode: str
    entries: tuple[DistEntry, ...]

    def probability(self, interp: Interpretation) -> float:
        for e in self.entries:
            if e.interpretation == interp:
                return e.probability
        return 0.0

    def support(self) -> list[DistEntry]:
        return [e for e in self.entries if e.probability > 0.0]


def weight_reward(gp: GroundProgram, interp: Interpretation) -> WeightVector:
    """Hard tier = satisfied hard rules, soft tier = sum of satisfied soft
    weights; the model weight is exp(alpha*hard + soft) symbolically."""
    enum = StableModelEnumerator(gp, "relaxed", cap=len(gp.atoms) + 1)
    return WeightVector(*enum.reward_vector(enum.comp.bits_of(interp)))


def weight_penalty(gp: GroundProgram, interp: Interpretation) -> WeightVector:
    """Hard tier = violated hard rules, soft tier = sum of violated soft
    weights; the model weight is exp(-alpha*hard - soft) symbolically."""
    enum = StableModelEnumerator(gp, "relaxed", cap=len(gp.atoms) + 1)
    return WeightVector(*enum.penalty_vector(enum.comp.bits_of(interp)))


def distribution(gp: GroundProgram, mode: str = "penalty",
                 hard_mode: str = "strict",
                 cap: int = DEFAULT_ATOM_CAP) -> Distribution:
    """Normalized distribution over SM[P].

    Models whose hard tier is not extremal (maximal for reward, minimal for
    penalty) get probability exactly 0 but remain listed.
    """
    if mode not in ("reward", "penalty"):
        raise ValueError(f"unknown mode {mode!r}")
    enum = StableModelEnumerator(gp, hard_mode, cap)
    bits_list = enum.models_bits()
    if not bits_list:
        raise NoStableModelsError("no probabilistic stable models")

    if mode == "reward":
        vectors = [WeightVector(*enum.reward_vector(b)) for b in bits_list]
        best_hard = max(v.hard for v in vectors)
        sign = 1.0
    else:
        vectors = [WeightVector(*enum.penalty_vector(b)) for b in bits_list]
        best_hard = min(v.hard for v in vectors)
        sign = -1.0

    exponents = [sign * v.soft for v, b in zip(vectors, bits_list) if v.hard == best_hard]
    shift = max(exponents)
    total = sum(math.exp(e - shift) for e in exponents)

    entries = []
    for v, b in zip(vectors, bits_list):
        if v.hard == best_hard:
            p = math.exp(sign * v.soft - shift) / total
        else:
            p = 0.0
        entries.append(DistEntry(enum.comp.interp_of(b), v, p))
    return Distribution(mode, tuple(entries))


@dataclass(frozen=True)
class MapResult:
    models: tuple[Interpretation, ...]
    optimizations: tuple[int, ...]  # round(soft penalty * scale), for display
    scale: int


def map_estimate(gp: GroundProgram, hard_mode: str = "strict",
                 cap: int = DEFAULT_ATOM_CAP,
                 scale: int = DEFAULT_SCALE) -> MapResult:
    """All most probable stable models (ties included), with each model's
    scaled integer penalty for display."""
    dist = distribution(gp, "penalty", hard_mode, cap)
    best = max(e.probability for e in dist.entries)
    models = []
    opts = []
    for e in dist.entries:
        if e.probability >= best - _TIE_EPS:
            models.append(e.interpretation)
            opts.append(int(round(e.weight.soft * scale)))
    return MapResult(tuple(models), tuple(opts), scale)


def marginal(gp: GroundProgram, query_preds, mode: str = "penalty",
             hard_mode: str = "strict",
             cap: int = DEFAULT_ATOM_CAP) -> dict[Atom, float]:
    """Per-atom probability: the summed probability of the stable models
    containing each ground atom whose predicate name is queried."""
    preds = set(query_preds)
    known = {a.predicate for a in gp.atoms}
    for name in sorted(preds - known):
        warnings.warn(f"query predicate {name!r} does not occur in the program",
                      UnknownPredicateWarning, stacklevel=2)
    targets = sorted((a for a in gp.atoms if a.predicate in preds), key=atom_sort_key)
    dist = distribution(gp, mode, hard_mode, cap)
    result = {a: 0.0 for a in targets}
    for e in dist.entries:
        if e.probability == 0.0:
            continue
        for a in targets:
            if a in e.interpretation:
                result[a] += e.probability
    return result


def conditional(program: Program, evidence: Program, query_preds,
                mode: str = "penalty", hard_mode: str = "strict",
                cap: int = DEFAULT_ATOM_CAP) -> dict[Atom, float]:
    """Marginal of the program merged with the evidence rules.

    Evidence must be hard-only (usually constraints); an evidence set that
    kills every stable model is reported as inconsistent.
    """
    for r in evidence.rules:
        if r.weight.is_soft:
            raise ValueError(f"evidence rule {r.index} is not hard")
    merged = merge_programs(program, evidence)
    gp = ground(merged)
    try:
        return marginal(gp, query_preds, mode, hard_mode, cap)
    except NoStableModelsError as exc:
        raise InconsistentEvidenceError("evidence is inconsistent with the program") from exc
