"""Walkthrough: compiling other probabilistic formalisms.

A Boolean Bayesian network becomes one probabilistic fact per CPT row plus
one hard rule per parent-value combination; conditioning then answers
diagnostic, predictive, and intercausal queries.  ProbLog-style
probabilistic facts map to soft facts at their log-odds.
"""

from lpmln import fixture_path, ground, parse_evidence, parse_program
from lpmln.frontends import bayes_to_lpmln, parse_bayes_net, parse_problog
from lpmln.inference import conditional, marginal
from lpmln.model import atom

net = parse_bayes_net(fixture_path("fire_alarm.bn").read_text())
compiled = bayes_to_lpmln(net)
print("compiled network, first rules:")
for rule in compiled.rules[:6]:
    print("  ", rule)
print(f"  ... {len(compiled.rules)} rules total\n")

print("diagnostic query on the compiled network, P(fire | leaving):")
got = conditional(compiled, parse_evidence(":- not leaving.\n"), ["fire"])
print(f"  fire {got[atom('fire')]:.12g}")

# the shipped fire_bayes.lpmln fixture carries the weights the published
# outputs were produced with (four-decimal log-odds)
fixture = parse_program(fixture_path("fire_bayes.lpmln").read_text())
got = conditional(fixture, parse_evidence(":- not leaving.\n"), ["fire"])
print(f"  fire {got[atom('fire')]:.12g}   (shipped fixture)\n")

problog = parse_problog("0.3::edge(n1, n2).\n0.8::edge(n2, n1).\n"
                        "path(X,Y) :- edge(X,Y).\n"
                        "path(X,Y) :- path(X,Z), path(Z,Y), Y != Z.\n")
print("probabilistic reachability marginals:")
for a, p in marginal(ground(problog), ["path"]).items():
    print(f"  {a} {p:.12g}")
