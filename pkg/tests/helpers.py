"""Shared test utilities: tiny program builders, independent oracles, and
seeded random generators.

The naive stable-model oracle here is deliberately a from-scratch
implementation over plain sets (full 2^n candidate sweep, subset-search
minimality) so the engine under test is checked against something that
shares none of its code paths.
"""

from __future__ import annotations

import random
from itertools import chain, combinations

from lpmln import parse_program
from lpmln.grounder import GroundProgram
from lpmln.model import Program


def P(text: str) -> Program:
    return parse_program(text)


# --- independent stable-model oracle ---------------------------------------

def _classically_satisfies(interp, rule) -> bool:
    body = True
    for lit in rule.body:
        holds = (lit.atom in interp) if lit.negation != 1 else (lit.atom not in interp)
        if not holds:
            body = False
            break
    return (not body) or any(h in interp for h in rule.head)


def _reduct(rules, interp):
    out = []
    for r in rules:
        ok = True
        for lit in r.body:
            if lit.negation == 1 and lit.atom in interp:
                ok = False
            if lit.negation == 2 and lit.atom not in interp:
                ok = False
        if ok:
            out.append((set(r.head), {l.atom for l in r.body if l.negation == 0}))
    return out


def _models_reduct(subset, reduct) -> bool:
    return not any(pos <= subset and not (heads & subset) for heads, pos in reduct)


def _powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


def naive_is_stable(rules, interp) -> bool:
    if not all(_classically_satisfies(interp, r) for r in rules):
        return False
    reduct = _reduct(rules, interp)
    if not _models_reduct(set(interp), reduct):
        return False
    for sub in _powerset(interp):
        s = set(sub)
        if s != set(interp) and _models_reduct(s, reduct):
            return False
    return True


def naive_sm(gp: GroundProgram, require_hard: bool = False):
    """SM[P] by definition: try every subset of the occurring atoms, and for
    each candidate check stability with respect to the rules it satisfies."""
    models = []
    for sub in _powerset(gp.atoms):
        interp = frozenset(sub)
        if require_hard and not all(
                _classically_satisfies(interp, r) for r in gp.rules if r.is_hard):
            continue
        satisfied = [r for r in gp.rules if _classically_satisfies(interp, r)]
        if naive_is_stable(satisfied, interp):
            models.append(interp)
    return models


# --- random program generation ----------------------------------------------

def grid_weight(rng: random.Random) -> str:
    return f"{rng.randint(-3000, 3000) / 1000:g}"


def random_program_text(rng: random.Random, n_atoms: int, n_rules: int,
                        hard_frac: float = 0.3, allow_disjunction: bool = False,
                        allow_choice: bool = True) -> str:
    atoms = [f"a{k}" for k in range(1, n_atoms + 1)]
    lines = []
    for _ in range(n_rules):
        roll = rng.random()
        head_atoms = []
        choice = False
        if roll < 0.12:
            pass  # constraint
        elif allow_disjunction and n_atoms >= 2 and roll < 0.24:
            head_atoms = rng.sample(atoms, 2)
        elif allow_choice and roll < 0.3:
            head_atoms = [rng.choice(atoms)]
            choice = True
        else:
            head_atoms = [rng.choice(atoms)]
        body = []
        for b in rng.sample(atoms, rng.randint(0, min(3, n_atoms))):
            body.append(("", "not ", "not not ")[rng.choices([0, 1, 2], [5, 3, 2])[0]] + b)
        if not head_atoms and not body:
            body = [rng.choice(atoms)]
        weight = "" if rng.random() < hard_frac else grid_weight(rng) + " "
        head = "{" + head_atoms[0] + "}" if choice else " ; ".join(head_atoms)
        rule = weight + head
        if body:
            rule += (" :- " if head else ":- ") + ", ".join(body)
        lines.append(rule + ".")
    return "\n".join(lines) + "\n"


def random_tight_text(rng: random.Random, n_atoms: int, n_rules: int,
                      hard_frac: float = 0.25) -> str:
    """Tight programs: positive body atoms are strictly lower-numbered than
    the head, so the positive dependency graph is acyclic."""
    atoms = [f"a{k}" for k in range(1, n_atoms + 1)]
    lines = []
    for _ in range(n_rules):
        roll = rng.random()
        if roll < 0.1:
            head_idx = None
        else:
            head_idx = rng.randrange(n_atoms)
        body = []
        if head_idx is not None and head_idx > 0:
            for b in rng.sample(range(head_idx), rng.randint(0, min(2, head_idx))):
                body.append(atoms[b])
        for b in rng.sample(atoms, rng.randint(0, 2)):
            body.append(rng.choice(["not ", "not not "]) + b)
        weight = "" if rng.random() < hard_frac else grid_weight(rng) + " "
        if head_idx is None:
            if not body:
                continue
            lines.append(weight + ":- " + ", ".join(body) + ".")
        elif roll < 0.25:
            rule = weight + "{" + atoms[head_idx] + "}"
            if body:
                rule += " :- " + ", ".join(body)
            lines.append(rule + ".")
        else:
            rule = weight + atoms[head_idx]
            if body:
                rule += " :- " + ", ".join(body)
            lines.append(rule + ".")
    return "\n".join(lines) + "\n" if lines else "a1 :- a1.\n"
