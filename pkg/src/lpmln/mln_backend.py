"""Tightness check, ground Clark completion, auxiliary-atom rewriting, an
exact evaluator for weighted-formula programs, and text emission.

The completion path turns a tight, non-disjunctive ground program into a
set of weighted propositional formulas whose log-linear distribution
matches the program's own.  The evaluator enumerates worlds exactly:
worlds violating a hard formula carry no mass (falling back to the
maximal count of satisfied hard formulas when nothing satisfies them
all), and the rest weigh in at the exponentiated sum of their satisfied
soft weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .engine import DEFAULT_ATOM_CAP, EnumerationCapError
from .grounder import GroundProgram
from .model import HARD, Atom, Interpretation, Weight, atom_sort_key


class NotTightError(ValueError):
    pass


class DisjunctiveProgramError(ValueError):
    pass


# --- propositional formulas ----------------------------------------------

class Formula:
    pass


@dataclass(frozen=True)
class FAtom(Formula):
    atom: Atom


@dataclass(frozen=True)
class FNot(Formula):
    sub: Formula


@dataclass(frozen=True)
class FAnd(Formula):
    subs: tuple[Formula, ...]


@dataclass(frozen=True)
class FOr(Formula):
    subs: tuple[Formula, ...]


@dataclass(frozen=True)
class FImpl(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class FIff(Formula):
    lhs: Formula
    rhs: Formula


TRUE = FAnd(())
FALSE = FOr(())


def conj(subs) -> Formula:
    subs = tuple(subs)
    if not subs:
        return TRUE
    if len(subs) == 1:
        return subs[0]
    return FAnd(subs)


def disj(subs) -> Formula:
    subs = tuple(subs)
    if not subs:
        return FALSE
    if len(subs) == 1:
        return subs[0]
    return FOr(subs)


def evaluate(f: Formula, interp: Interpretation) -> bool:
    if isinstance(f, FAtom):
        return f.atom in interp
    if isinstance(f, FNot):
        return not evaluate(f.sub, interp)
    if isinstance(f, FAnd):
        return all(evaluate(s, interp) for s in f.subs)
    if isinstance(f, FOr):
        return any(evaluate(s, interp) for s in f.subs)
    if isinstance(f, FImpl):
        return not evaluate(f.lhs, interp) or evaluate(f.rhs, interp)
    if isinstance(f, FIff):
        return evaluate(f.lhs, interp) == evaluate(f.rhs, interp)
    raise TypeError(f"not a formula: {f!r}")


def formula_atoms(f: Formula) -> set[Atom]:
    if isinstance(f, FAtom):
        return {f.atom}
    if isinstance(f, FNot):
        return formula_atoms(f.sub)
    if isinstance(f, (FAnd, FOr)):
        out: set[Atom] = set()
        for s in f.subs:
            out |= formula_atoms(s)
        return out
    if isinstance(f, (FImpl, FIff)):
        return formula_atoms(f.lhs) | formula_atoms(f.rhs)
    raise TypeError(f"not a formula: {f!r}")


def _is_literal(f: Formula) -> bool:
    return isinstance(f, FAtom) or (isinstance(f, FNot) and isinstance(f.sub, FAtom))


def _replace(f: Formula, target: Formula, repl: Formula) -> Formula:
    if f == target:
        return repl
    if isinstance(f, FNot):
        return FNot(_replace(f.sub, target, repl))
    if isinstance(f, FAnd):
        return FAnd(tuple(_replace(s, target, repl) for s in f.subs))
    if isinstance(f, FOr):
        return FOr(tuple(_replace(s, target, repl) for s in f.subs))
    if isinstance(f, FImpl):
        return FImpl(_replace(f.lhs, target, repl), _replace(f.rhs, target, repl))
    if isinstance(f, FIff):
        return FIff(_replace(f.lhs, target, repl), _replace(f.rhs, target, repl))
    return f


# --- weighted formula programs --------------------------------------------

@dataclass(frozen=True)
class MlnFormula:
    weight: Weight
    formula: Formula


@dataclass(frozen=True)
class MlnProgram:
    formulas: tuple[MlnFormula, ...]
    aux_defs: tuple[tuple[Atom, Formula], ...] = ()
    # atoms the worlds range over even when no formula mentions them
    # (e.g. a choice-rule atom whose completion is a tautology)
    signature: tuple[Atom, ...] = ()

    @cached_property
    def aux_atoms(self) -> frozenset:
        return frozenset(a for a, _ in self.aux_defs)

    @cached_property
    def atoms(self) -> tuple[Atom, ...]:
        out: set[Atom] = set(self.signature)
        for mf in self.formulas:
            out |= formula_atoms(mf.formula)
        return tuple(sorted(out, key=atom_sort_key))


# --- tightness and completion ----------------------------------------------

def _choice_marker(rule) -> int | None:
    """Index of the desugared-choice marker literal (head atom under double
    negation), or None."""
    if len(rule.head) != 1:
        return None
    for k, lit in enumerate(rule.body):
        if lit.negation == 2 and lit.atom == rule.head[0]:
            return k
    return None


def is_tight(gp: GroundProgram) -> bool:
    """True iff the positive dependency graph (head -> positive body atom)
    is acyclic."""
    for r in gp.rules:
        if len(r.head) > 1:
            raise DisjunctiveProgramError(
                f"rule {r.origin_index} has a disjunctive head")
    index = {a: i for i, a in enumerate(gp.atoms)}
    succ: dict[int, set[int]] = {}
    for r in gp.rules:
        if not r.head:
            continue
        h = index[r.head[0]]
        for lit in r.body:
            if lit.negation == 0:
                succ.setdefault(h, set()).add(index[lit.atom])
    # iterative DFS cycle detection
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * len(gp.atoms)
    for start in range(len(gp.atoms)):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(sorted(succ.get(start, ()))))]
        color[start] = GREY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GREY:
                    return False
                if color[nxt] == WHITE:
                    color[nxt] = GREY
                    stack.append((nxt, iter(sorted(succ.get(nxt, ())))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return True


def _body_formula(body) -> Formula:
    parts = []
    for lit in body:
        if lit.negation == 1:
            parts.append(FNot(FAtom(lit.atom)))
        else:
            parts.append(FAtom(lit.atom))  # double negation is classical identity
    return conj(parts)


def complete(gp: GroundProgram) -> MlnProgram:
    """Ground Clark completion of a tight non-disjunctive program.

    Each weighted rule w: H :- B contributes the formula w: B -> H, and for
    every atom p a hard formula p -> (disjunction of the bodies of rules
    with head p) is added; an empty disjunction yields hard !p.  A
    choice-shaped rule contributes its body as a completion disjunct and no
    rule formula (its implication is a tautology).
    """
    if not is_tight(gp):
        raise NotTightError("completion is only defined for tight programs")

    formulas: list[MlnFormula] = []
    disjuncts: dict[Atom, list[Formula]] = {a: [] for a in gp.atoms}
    for r in gp.rules:
        marker = _choice_marker(r)
        if marker is not None:
            body = r.body[:marker] + r.body[marker + 1:]
            disjuncts[r.head[0]].append(_body_formula(body))
            continue
        body_f = _body_formula(r.body)
        if not r.head:
            formulas.append(MlnFormula(r.weight, FNot(body_f)))
            continue
        head_f = FAtom(r.head[0])
        rule_f = head_f if body_f == TRUE else FImpl(body_f, head_f)
        formulas.append(MlnFormula(r.weight, rule_f))
        disjuncts[r.head[0]].append(body_f)

    for a in gp.atoms:
        ds = disjuncts[a]
        if any(d == TRUE for d in ds):
            continue  # completion is a tautology
        if not ds:
            formulas.append(MlnFormula(HARD, FNot(FAtom(a))))
        else:
            formulas.append(MlnFormula(HARD, FImpl(FAtom(a), disj(ds))))
    return MlnProgram(tuple(formulas), signature=gp.atoms)


# --- auxiliary-atom rewriting ----------------------------------------------

def _fresh_aux(mln: MlnProgram, k: int) -> Atom:
    return Atom(f"aux_{len(mln.aux_defs) + k}")


def tseytin(mln: MlnProgram) -> MlnProgram:
    """Replace every non-literal conjunction appearing as a disjunct on the
    right-hand side of a completion implication with a defined auxiliary
    atom (one shared atom per distinct conjunction)."""
    memo: dict[Formula, Atom] = {}
    defs: list[tuple[Atom, Formula]] = []
    out: list[MlnFormula] = []

    def aux_for(f: Formula) -> Formula:
        if not isinstance(f, FAnd) or _is_literal(f):
            return f
        if f not in memo:
            a = _fresh_aux(mln, len(defs) + 1)
            memo[f] = a
            defs.append((a, f))
        return FAtom(memo[f])

    for mf in mln.formulas:
        f = mf.formula
        if isinstance(f, FImpl) and isinstance(f.lhs, FAtom):
            if isinstance(f.rhs, FOr):
                f = FImpl(f.lhs, FOr(tuple(aux_for(d) for d in f.rhs.subs)))
            else:
                f = FImpl(f.lhs, aux_for(f.rhs))
        out.append(MlnFormula(mf.weight, f))
    for a, d in defs:
        out.append(MlnFormula(HARD, FIff(FAtom(a), d)))
    return MlnProgram(tuple(out), mln.aux_defs + tuple(defs), mln.signature)


def aux_extract(mln: MlnProgram, target: Formula) -> MlnProgram:
    """Replace every occurrence of ``target`` with a fresh defined atom and
    add the hard biconditional defining it (the general one-subformula
    rewriting step)."""
    a = _fresh_aux(mln, 1)
    out = [MlnFormula(mf.weight, _replace(mf.formula, target, FAtom(a)))
           for mf in mln.formulas]
    out.append(MlnFormula(HARD, FIff(FAtom(a), target)))
    return MlnProgram(tuple(out), mln.aux_defs + ((a, target),), mln.signature)


# --- exact evaluation -------------------------------------------------------

@dataclass(frozen=True)
class MlnDistribution:
    atoms: tuple[Atom, ...]
    entries: tuple[tuple[Interpretation, float], ...]

    def probability(self, interp: Interpretation) -> float:
        target = frozenset(interp)
        for w, p in self.entries:
            if w == target:
                return p
        return 0.0

    def marginal_of(self, atom: Atom) -> float:
        return sum(p for w, p in self.entries if atom in w)

    def project(self, drop) -> dict[Interpretation, float]:
        """Marginalize the listed atoms away."""
        drop = frozenset(drop)
        out: dict[Interpretation, float] = {}
        for w, p in self.entries:
            key = w - drop
            out[key] = out.get(key, 0.0) + p
        return out


def mln_distribution(mln: MlnProgram, cap: int = DEFAULT_ATOM_CAP) -> MlnDistribution:
    """Enumerate all interpretations of the program's atoms: zero mass on
    any world violating a hard formula, weight exp(sum of satisfied soft
    weights) elsewhere, normalized.  If no world satisfies every hard
    formula, mass concentrates on the worlds maximizing the number of
    satisfied hard formulas."""
    atoms = mln.atoms
    n = len(atoms)
    if n > cap:
        raise EnumerationCapError(cap, n)
    hard = [mf.formula for mf in mln.formulas if mf.weight.is_hard]
    softs = [(mf.formula, mf.weight.value) for mf in mln.formulas if mf.weight.is_soft]

    worlds = []
    best_hard = -1
    for mask in range(1 << n):
        interp = frozenset(a for i, a in enumerate(atoms) if mask >> i & 1)
        n_hard = sum(1 for f in hard if evaluate(f, interp))
        soft_sum = sum(w for f, w in softs if evaluate(f, interp))
        worlds.append((interp, n_hard, soft_sum))
        best_hard = max(best_hard, n_hard)

    exponents = [s for _, h, s in worlds if h == best_hard]
    shift = max(exponents)
    total = sum(math.exp(s - shift) for s in exponents)
    entries = tuple((w, math.exp(s - shift) / total)
                    for w, h, s in worlds if h == best_hard)
    return MlnDistribution(atoms, entries)


# --- text emission -----------------------------------------------------------

def _caps(name: str) -> str:
    name = name.strip('"')
    return name[:1].upper() + name[1:]


def _render_atom(a: Atom) -> str:
    if not a.args:
        return _caps(a.predicate)
    return f"{_caps(a.predicate)}({','.join(_caps(t.name) for t in a.args)})"


def _render(f: Formula, required: int = 0) -> str:
    """Render with minimal parentheses; ``required`` is the binding strength
    the surrounding context demands (iff=0 < impl=1 < or=2 < and=3 < not=4)."""
    if isinstance(f, FAtom):
        return _render_atom(f.atom)
    if isinstance(f, FNot):
        return "!" + _render(f.sub, 5)
    if isinstance(f, FAnd):
        if not f.subs:
            return "TRUE"
        text = " ^ ".join(_render(s, 4) for s in f.subs)
        return f"({text})" if 3 < required and len(f.subs) > 1 else text
    if isinstance(f, FOr):
        if not f.subs:
            return "FALSE"
        text = " v ".join(_render(s, 3) for s in f.subs)
        return f"({text})" if 2 < required and len(f.subs) > 1 else text
    if isinstance(f, FImpl):
        text = f"{_render(f.lhs, 2)} => {_render(f.rhs, 1)}"
        return f"({text})" if 1 < required else text
    if isinstance(f, FIff):
        text = f"{_render(f.lhs, 2)} <=> {_render(f.rhs, 2)}"
        return f"({text})" if 0 < required else text
    raise TypeError(f"not a formula: {f!r}")


def aux_mapping_text(mln: MlnProgram) -> str:
    """Sidecar content mapping each defined atom to its formula."""
    return "".join(f"{_render_atom(a)} <=> {_render(d)}\n" for a, d in mln.aux_defs)


def emit_mln_text(mln: MlnProgram) -> str:
    """Deterministic solver-style text: sort declaration, predicate
    declarations, then one formula per line (hard formulas end with '.',
    soft formulas carry a leading weight)."""
    consts = sorted({t.name for a in mln.atoms for t in a.args})
    schemas = sorted({a.schema for a in mln.atoms})
    lines = []
    if consts:
        lines.append("entity={" + ", ".join(_caps(c) for c in consts) + "}")
        lines.append("")
    for pred, arity in schemas:
        if arity:
            lines.append(f"{_caps(pred)}({', '.join(['entity'] * arity)})")
        else:
            lines.append(_caps(pred))
    if schemas:
        lines.append("")
    for mf in mln.formulas:
        if mf.weight.is_hard:
            lines.append(f"{_render(mf.formula)}.")
        else:
            lines.append(f"{mf.weight.value:.12g} {_render(mf.formula)}")
    if mln.aux_defs:
        lines.append("")
        for a, d in mln.aux_defs:
            lines.append(f"// {_render_atom(a)} <=> {_render(d)}")
    return "".join(line + "\n" for line in lines)
