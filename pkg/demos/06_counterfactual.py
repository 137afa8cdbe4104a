"""Walkthrough: counterfactual reasoning with a twin network.

The firing-squad story: the court orders the execution (u) with
probability 0.7, rifleman A is nervous (w) with probability 0.2, and
either rifleman shooting kills the prisoner.  The twin copies (cs, as,
bs, ds) share the exogenous facts but respond to do(...) atoms, so one
program answers: given that the prisoner is dead, what is the probability
he would still be dead had rifleman A not shot?

Interventions are facts (do(a0).) while observations are constraints
(:- not d.) over the factual copy.
"""

from lpmln import fixture_path, parse_evidence, parse_program
from lpmln.inference import conditional
from lpmln.model import atom

program = parse_program(fixture_path("pcm_firing_squad.lpmln").read_text())
evidence = parse_evidence(fixture_path("pcm_evid.db").read_text())
print(fixture_path("pcm_evid.db").read_text())

got = conditional(program, evidence, ["ds"])
p = got[atom("ds")]
print(f"P(ds | do(a0), d) = {p:.12g}")
print(f"so the prisoner would be alive with probability {1 - p:.3g} "
      "had rifleman A not shot")
