import random

import pytest

from lpmln import enumerate_sm, ground, is_stable_model, reduce_program
from lpmln.engine import EnumerationCapError, StableModelEnumerator, _check_stable, _Compiled
from lpmln.model import atom
from helpers import P, naive_sm, random_program_text


def rules_of(text):
    return ground(P(text)).rules


def sm_sets(models):
    return {frozenset(str(a) for a in m) for m in models}


class TestReduce:
    def test_negation_satisfied(self):
        red = reduce_program(rules_of("a :- not b.\n"), frozenset([atom("a")]))
        assert red.rules == ((frozenset([atom("a")]), frozenset()),)

    def test_double_negation_unsatisfied_drops_rule(self):
        red = reduce_program(rules_of("a :- not not a.\n"), frozenset())
        assert red.rules == ()

    def test_double_negation_satisfied(self):
        red = reduce_program(rules_of("a :- not not a.\n"), frozenset([atom("a")]))
        assert red.rules == ((frozenset([atom("a")]), frozenset()),)


class TestIsStableModel:
    def test_default_negation(self):
        rs = rules_of("a :- not b.\n")
        assert is_stable_model(rs, frozenset([atom("a")]))
        assert not is_stable_model(rs, frozenset([atom("b")]))

    def test_disjunction_minimality(self):
        rs = rules_of("a ; b.\n")
        assert is_stable_model(rs, frozenset([atom("a")]))
        assert is_stable_model(rs, frozenset([atom("b")]))
        assert not is_stable_model(rs, frozenset([atom("a"), atom("b")]))

    def test_choice_has_two_stable_models(self):
        rs = rules_of("{a}.\n")
        assert is_stable_model(rs, frozenset())
        assert is_stable_model(rs, frozenset([atom("a")]))

    def test_unsupported_atom_rejected(self):
        rs = rules_of("a :- b.\n")
        assert not is_stable_model(rs, frozenset([atom("a"), atom("b")]))

    def test_minimality_methods_agree_on_nondisjunctive(self):
        rng = random.Random(13)
        for _ in range(60):
            gp = ground(P(random_program_text(rng, rng.randint(1, 5), rng.randint(1, 6),
                                              hard_frac=1.0, allow_disjunction=False)))
            comp = _Compiled(gp.rules)
            for mask in range(1 << len(comp.atoms)):
                sat = [r for r in comp.rules if comp.satisfied(r, mask)]
                assert _check_stable(comp, sat, mask, "lfp") == \
                    _check_stable(comp, sat, mask, "subset")


class TestEnumerateSm:
    def test_bird_strict(self):
        gp = ground(P("bird(X) :- residentbird(X).\nbird(X) :- migratorybird(X).\n"
                      ":- residentbird(X), migratorybird(X).\n"
                      "2 residentbird(jo).\n1 migratorybird(jo).\n"))
        assert sm_sets(enumerate_sm(gp, "strict")) == {
            frozenset(),
            frozenset({"bird(jo)", "residentbird(jo)"}),
            frozenset({"bird(jo)", "migratorybird(jo)"}),
        }

    def test_each_candidate_checked_against_own_rules(self):
        # a hard fact plus a contradicting hard constraint: pure semantics
        # keeps both {a} and {} because each is stable for the rules it keeps
        gp = ground(P("a.\n:- a.\n"))
        assert sm_sets(enumerate_sm(gp, "relaxed")) == {frozenset(), frozenset({"a"})}
        assert enumerate_sm(gp, "strict") == []

    def test_empty_program(self):
        assert enumerate_sm(ground(P(""))) == [frozenset()]

    def test_cap_error_names_cap_and_size(self):
        gp = ground(P("\n".join(f"1 a{k}." for k in range(6)) + "\n"))
        with pytest.raises(EnumerationCapError) as exc:
            enumerate_sm(gp, cap=4)
        assert exc.value.cap == 4
        assert exc.value.size == 6
        assert "4" in str(exc.value) and "6" in str(exc.value)

    def test_deterministic_order(self):
        gp = ground(P("{a}. {b}. 1 c :- a, b.\n"))
        assert enumerate_sm(gp) == enumerate_sm(gp)


class TestEngineAgainstNaiveOracle:
    """The enumerator must agree with a from-scratch definitional oracle."""

    @pytest.mark.parametrize("seed", range(8))
    def test_full_agreement_small(self, seed):
        rng = random.Random(seed)
        for _ in range(12):
            text = random_program_text(rng, rng.randint(1, 4), rng.randint(1, 5),
                                       allow_disjunction=True)
            gp = ground(P(text))
            assert sm_sets(enumerate_sm(gp, "relaxed")) == sm_sets(naive_sm(gp)), text
            assert sm_sets(enumerate_sm(gp, "strict")) == \
                sm_sets(naive_sm(gp, require_hard=True)), text

    def test_returned_models_recheck(self):
        rng = random.Random(21)
        for _ in range(30):
            text = random_program_text(rng, rng.randint(1, 7), rng.randint(1, 7))
            gp = ground(P(text))
            for interp in enumerate_sm(gp, "relaxed"):
                satisfied = [r for r in gp.rules
                             if not _body_holds(r, interp) or any(h in interp for h in r.head)]
                assert is_stable_model(satisfied, interp)

    def test_supported_models(self):
        # every true atom in a stable model of a non-disjunctive program has
        # a satisfied rule with true body deriving it
        rng = random.Random(31)
        for _ in range(30):
            text = random_program_text(rng, rng.randint(1, 6), rng.randint(1, 6),
                                       allow_disjunction=False)
            gp = ground(P(text))
            for interp in enumerate_sm(gp, "relaxed"):
                for a in interp:
                    assert any(a in r.head and _body_holds(r, interp)
                               for r in gp.rules
                               if not _body_holds(r, interp)
                               or any(h in interp for h in r.head)), (text, a)


def _body_holds(rule, interp):
    return all((lit.atom in interp) if lit.negation != 1 else (lit.atom not in interp)
               for lit in rule.body)


class TestLargeDeterminedPrograms:
    def test_free_atom_analysis_keeps_clique_tractable(self):
        from lpmln import fixture_path
        gp = ground(P(fixture_path("clique10.lpmln").read_text()))
        enum = StableModelEnumerator(gp, "strict")
        # only the ten choice atoms are free; the 200+ others are determined
        assert len(enum.free_positions) == 10
        assert len(enum.models_bits()) == 1024
