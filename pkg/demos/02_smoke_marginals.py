"""Walkthrough: the smokers network, and why rule direction matters.

Under the stable-model reading, smoking spreads only along the influence
chain, so the probability degrades with distance from alice.  Reading the
same weighted formulas as a Markov-logic-style model (choice rules opened
over smoke) loses that direction: bob and carol become equally likely.
"""

from lpmln import fixture_path, ground, parse_program
from lpmln.frontends import mln_embed
from lpmln.inference import marginal

smoke = parse_program(fixture_path("smoke.lpmln").read_text())
print("directed (stable-model) reading:")
for a, p in marginal(ground(smoke), ["smoke"]).items():
    print(f"  {a} {p:.12g}")

embedded = mln_embed(smoke, open_predicates=["smoke"])
print("\nweighted-formula reading (choice rule on smoke):")
for a, p in marginal(ground(embedded), ["smoke"]).items():
    print(f"  {a} {p:.12g}")
