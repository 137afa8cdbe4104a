"""Walkthrough: compiling weighted rules to plain ASP with weak constraints.

The penalty translation guards each rule with an unsat marker and charges
the rule weight when the marker is derived; the reward translation credits
a sat marker instead.  Both admit a witness map between source stable
models and translated ones, and most probable models correspond exactly to
optimal (undominated) models of the translation.
"""

from lpmln import fixture_path, ground, parse_program
from lpmln.asp_backend import (
    emit_asp_text, optimal_models, phi_extend, translate_penalty,
    translate_reward, wc_penalty,
)
from lpmln.grounder import ground_to_program
from lpmln.inference import map_estimate

bird = parse_program(fixture_path("bird.lpmln").read_text())

tp = translate_penalty(bird, scale=1000)
print("penalty translation:")
print(emit_asp_text(tp))

best = map_estimate(ground(bird)).models[0]
witness = phi_extend(bird, best, "penalty")
print("witness of the MAP model:", " ".join(sorted(str(a) for a in witness)))
print("its level-0 penalty:", wc_penalty(tp, witness, 0))

optimal = optimal_models(tp)
assert optimal == [witness]
print("optimal stable model of the translation matches the MAP witness\n")

tw = translate_reward(ground_to_program(ground(bird)), scale=1000)
print("reward translation (ground input required):")
print(emit_asp_text(tw))
