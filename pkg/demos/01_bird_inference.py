"""Walkthrough: exact inference on the bird knowledge base.

Three hard rules state definite knowledge; two soft facts state uncertain
knowledge at different confidence levels.  We list the stable models with
their probabilities, compute the MAP estimate, then condition on evidence.
"""

from lpmln import fixture_path, ground, parse_evidence, parse_program
from lpmln.inference import conditional, distribution, map_estimate

program = parse_program(fixture_path("bird.lpmln").read_text())
print("program:")
print(program)

gp = ground(program)
dist = distribution(gp, mode="penalty")
print("stable models and probabilities:")
for entry in dist.entries:
    atoms = " ".join(sorted(str(a) for a in entry.interpretation)) or "(empty)"
    print(f"  {atoms:45s} soft penalty {entry.weight.soft:g}"
          f"  ->  {entry.probability:.12g}")

result = map_estimate(gp)
print("\nMAP estimate (most probable stable model):")
for model, opt in zip(result.models, result.optimizations):
    print(f"  {' '.join(sorted(str(a) for a in model))}   Optimization: {opt}")

evidence = parse_evidence(fixture_path("bird_evid.db").read_text())
posterior = conditional(program, evidence, ["residentbird"])
print("\nafter observing bird(jo):")
for a, p in posterior.items():
    print(f"  P({a}) = {p:.12g}")
