import math
import random

import pytest

from lpmln import fixture_path, ground, parse_evidence, parse_program
from lpmln.inference import (
    InconsistentEvidenceError, NoStableModelsError, UnknownPredicateWarning,
    conditional, distribution, map_estimate, marginal, weight_penalty,
    weight_reward,
)
from lpmln.model import atom
from helpers import P, random_program_text


def bird_gp():
    return ground(parse_program(fixture_path("bird.lpmln").read_text()))


BIRD_RB = frozenset([atom("bird", "jo"), atom("residentbird", "jo")])
BIRD_MB = frozenset([atom("bird", "jo"), atom("migratorybird", "jo")])


class TestWeightVectors:
    def test_smoke_all_smokers(self):
        gp = ground(parse_program(fixture_path("smoke.lpmln").read_text()))
        all_true = frozenset([
            atom("smoke", "alice"), atom("smoke", "bob"), atom("smoke", "carol"),
            atom("influence", "alice", "bob"), atom("influence", "bob", "carol"),
        ])
        wv = weight_reward(gp, all_true)
        assert wv.hard == 3
        assert wv.soft == pytest.approx(9.0)

    def test_bird_reward(self):
        wv = weight_reward(bird_gp(), BIRD_RB)
        assert (wv.hard, wv.soft) == (3, pytest.approx(2.0))

    def test_bird_penalty(self):
        gp = bird_gp()
        assert weight_penalty(gp, BIRD_RB).soft == pytest.approx(1.0)
        assert weight_penalty(gp, BIRD_RB).hard == 0
        assert weight_penalty(gp, frozenset()).soft == pytest.approx(3.0)
        assert weight_penalty(gp, BIRD_RB | BIRD_MB).hard == 1  # constraint violated

    def test_empty_program(self):
        gp = ground(P(""))
        assert weight_reward(gp, frozenset()) == weight_penalty(gp, frozenset())


class TestDistribution:
    def test_bird_probabilities(self):
        dist = distribution(bird_gp(), "penalty")
        by_model = {e.interpretation: e.probability for e in dist.entries}
        assert by_model[BIRD_RB] == pytest.approx(0.665240955775, abs=1e-9)
        assert by_model[frozenset()] == pytest.approx(0.0900305731704, abs=1e-9)
        assert by_model[BIRD_MB] == pytest.approx(0.244728471055, abs=1e-9)

    def test_single_hard_fact(self):
        dist = distribution(ground(P("a.\n")))
        assert dist.probability(frozenset([atom("a")])) == 1.0

    def test_soft_fact_penalty(self):
        dist = distribution(ground(P("2 a.\n")), "penalty")
        # two stable models; brute-force normalization of e^0 vs e^-2
        assert dist.probability(frozenset([atom("a")])) == \
            pytest.approx(1.0 / (1.0 + math.exp(-2.0)), abs=1e-12)
        assert dist.probability(frozenset([atom("a")])) == pytest.approx(0.880797077978, abs=1e-9)

    def test_probabilities_sum_to_one(self):
        rng = random.Random(3)
        for _ in range(25):
            gp = ground(P(random_program_text(rng, rng.randint(1, 6), rng.randint(1, 6))))
            try:
                dist = distribution(gp, "penalty", "relaxed")
            except NoStableModelsError:
                continue
            assert sum(e.probability for e in dist.entries) == pytest.approx(1.0, abs=1e-9)

    def test_zero_probability_models_remain_listed(self):
        # {} violates both hard rules, {a} violates none; both are in SM[P]
        dist = distribution(ground(P("a.\n:- not a.\n")), "penalty", "relaxed")
        assert len(dist.entries) == 2
        assert sorted(e.probability for e in dist.entries) == [0.0, 1.0]

    def test_no_models_reported(self):
        with pytest.raises(NoStableModelsError):
            distribution(ground(P("a.\n:- a.\n")), "penalty", "strict")


class TestHardModes:
    def test_all_hard_bird_strict_unsat(self):
        gp = ground(parse_program(fixture_path("bird.lp").read_text()))
        with pytest.raises(NoStableModelsError):
            distribution(gp, "penalty", "strict")

    def test_all_hard_bird_relaxed_three_models(self):
        gp = ground(parse_program(fixture_path("bird.lp").read_text()))
        dist = distribution(gp, "penalty", "relaxed")
        support = {e.interpretation for e in dist.entries if e.probability > 0}
        assert len(support) == 3
        assert BIRD_RB in support

    def test_consistent_hard_program_modes_agree(self):
        gp = ground(P("a.\nb :- a.\n{c}.\n1 d :- c.\n"))
        ds = distribution(gp, "penalty", "strict")
        dr = distribution(gp, "penalty", "relaxed")
        strict = {e.interpretation: e.probability for e in ds.entries}
        relaxed = {e.interpretation: e.probability for e in dr.entries if e.probability > 0}
        assert strict.keys() == relaxed.keys()
        for k in strict:
            assert strict[k] == pytest.approx(relaxed[k], abs=1e-12)


class TestMapEstimate:
    def test_bird(self):
        result = map_estimate(bird_gp())
        assert result.models == (BIRD_RB,)
        assert result.optimizations == (1000,)

    def test_tied_models_all_returned(self):
        result = map_estimate(ground(P("1 a.\n1 :- a.\n")))
        assert len(result.models) == 2
        assert set(result.optimizations) == {1000}

    def test_hard_only_program_ties_everything(self):
        result = map_estimate(ground(P("{a}.\n")))
        assert len(result.models) == 2

    def test_scaling_preserves_argmax(self):
        rng = random.Random(17)
        for _ in range(20):
            text = random_program_text(rng, rng.randint(1, 5), rng.randint(1, 5),
                                       hard_frac=0.2)
            scaled = []
            for line in text.splitlines():
                head, _, rest = line.partition(" ")
                try:
                    w = float(head)
                    scaled.append(f"{repr(w * 3.5)} {rest}")
                except ValueError:
                    scaled.append(line)
            gp1, gp2 = ground(P(text)), ground(P("\n".join(scaled) + "\n"))
            try:
                m1 = set(map_estimate(gp1, "relaxed").models)
                m2 = set(map_estimate(gp2, "relaxed").models)
            except NoStableModelsError:
                continue
            assert m1 == m2


class TestMarginalAndConditional:
    def test_smoke_marginals(self):
        gp = ground(parse_program(fixture_path("smoke.lpmln").read_text()))
        result = marginal(gp, ["smoke"])
        assert result[atom("smoke", "alice")] == pytest.approx(1.0, abs=1e-12)
        assert result[atom("smoke", "bob")] == pytest.approx(0.788058442382915, abs=1e-9)
        assert result[atom("smoke", "carol")] == pytest.approx(0.576116884765829, abs=1e-9)

    def test_bird_marginal(self):
        result = marginal(bird_gp(), ["residentbird"])
        assert result[atom("residentbird", "jo")] == pytest.approx(0.665240955775, abs=1e-9)

    def test_predicate_false_everywhere(self):
        gp = ground(P("a.\np :- q.\n"))
        assert marginal(gp, ["p"]) == {atom("p"): 0.0}

    def test_unknown_predicate_warns(self):
        with pytest.warns(UnknownPredicateWarning):
            result = marginal(bird_gp(), ["nosuch"])
        assert result == {}

    def test_bird_conditional(self):
        prog = parse_program(fixture_path("bird.lpmln").read_text())
        ev = parse_evidence(fixture_path("bird_evid.db").read_text())
        result = conditional(prog, ev, ["residentbird"])
        assert result[atom("residentbird", "jo")] == pytest.approx(0.73105857863, abs=1e-9)

    def test_pcm_counterfactual(self):
        prog = parse_program(fixture_path("pcm_firing_squad.lpmln").read_text())
        ev = parse_evidence(fixture_path("pcm_evid.db").read_text())
        result = conditional(prog, ev, ["ds"])
        assert result[atom("ds")] == pytest.approx(0.921047297896, abs=1e-9)

    def test_entailed_evidence_is_noop(self):
        prog = parse_program(fixture_path("bird.lpmln").read_text())
        ev = parse_evidence(":- residentbird(jo), migratorybird(jo).\n")
        assert conditional(prog, ev, ["bird"]) == marginal(ground(prog), ["bird"])

    def test_empty_evidence_equals_marginal(self):
        prog = parse_program(fixture_path("bird.lpmln").read_text())
        assert conditional(prog, parse_evidence(""), ["residentbird"]) == \
            marginal(ground(prog), ["residentbird"])

    def test_inconsistent_evidence(self):
        prog = parse_program(fixture_path("bird.lpmln").read_text())
        with pytest.raises(InconsistentEvidenceError):
            conditional(prog, parse_evidence(":- bird(jo).\n:- not bird(jo).\n"), ["bird"])

    def test_soft_evidence_rejected(self):
        prog = parse_program(fixture_path("bird.lpmln").read_text())
        with pytest.raises(ValueError):
            conditional(prog, P("2 a.\n"), ["bird"])


class TestConditionalIsBayesFilter:
    def test_matches_filtered_renormalized_joint(self):
        import warnings as _warnings
        from lpmln import parse_evidence

        rng = random.Random(24680)
        checked = 0
        while checked < 40:
            n = rng.randint(2, 6)
            prog = P(random_program_text(rng, n, rng.randint(1, 6), hard_frac=0.25))
            target, ev_atom = (f"a{rng.randint(1, n)}" for _ in range(2))
            want_true = rng.random() < 0.5
            ev = parse_evidence(f":- {'not ' if want_true else ''}{ev_atom}.\n")
            try:
                dist = distribution(ground(prog), "penalty", "strict")
            except NoStableModelsError:
                continue
            num = sum(e.probability for e in dist.entries
                      if (atom(ev_atom) in e.interpretation) == want_true
                      and atom(target) in e.interpretation)
            den = sum(e.probability for e in dist.entries
                      if (atom(ev_atom) in e.interpretation) == want_true)
            with _warnings.catch_warnings():
                _warnings.simplefilter("ignore")
                if den < 1e-12:
                    with pytest.raises(InconsistentEvidenceError):
                        conditional(prog, ev, [target])
                    continue
                got = conditional(prog, ev, [target]).get(atom(target), 0.0)
            assert got == pytest.approx(num / den, abs=1e-9)
            checked += 1


class TestSemanticEquivalences:
    def test_reward_equals_penalty_probabilities(self):
        rng = random.Random(2024)
        for _ in range(60):
            gp = ground(P(random_program_text(rng, rng.randint(1, 8), rng.randint(1, 8))))
            try:
                dp = distribution(gp, "penalty", "relaxed")
            except NoStableModelsError:
                continue
            dr = distribution(gp, "reward", "relaxed")
            assert len(dp.entries) == len(dr.entries)
            for ep, er in zip(dp.entries, dr.entries):
                assert ep.interpretation == er.interpretation
                assert ep.probability == pytest.approx(er.probability, abs=1e-9)

    def test_trivial_rule_insensitivity(self):
        base = "2 a.\n1 b :- a, not c.\n{c}.\n"
        extended = base + "1.5 a :- a.\n"
        gp1, gp2 = ground(P(base)), ground(P(extended))
        for interp in (frozenset(), frozenset([atom("a")]),
                       frozenset([atom("a"), atom("b")]), frozenset([atom("c")])):
            assert weight_penalty(gp1, interp).soft == \
                pytest.approx(weight_penalty(gp2, interp).soft, abs=1e-12)
        for mode in ("penalty", "reward"):
            d1 = distribution(gp1, mode, "relaxed")
            d2 = distribution(gp2, mode, "relaxed")
            for e in d1.entries:
                assert d2.probability(e.interpretation) == \
                    pytest.approx(e.probability, abs=1e-12)
