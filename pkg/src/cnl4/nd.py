"""Natural deduction: derivation trees, checking, search, bundled corpus.

The calculus has fifteen rules.  Alongside the usual introduction and
elimination rules for & and |, double negation is governed by two rules
(from A and ~~A infer anything; A | ~~A as a premise-free axiom) and the
remaining rules push ~ through & and | in both directions, with a case
rule over ~(A | B) mirroring disjunction elimination.

Derivations are finite trees.  ``Hyp`` leaves carry a label; ``OrE`` and
``NOrE`` nodes carry a pair of labels naming the hypotheses their second
and third premises may discharge.  ``check`` validates every node's
schema and the discharge discipline and returns the open assumptions
together with the conclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .formula import And, Atom, Formula, Neg, Or, Sequent, format_formula, parse
from .matrix import DEFAULT_CAP, is_consequence

DEFAULT_DEPTH = 6


class Rule(Enum):
    HYP = "Hyp"
    AND_I = "AndI"
    AND_E_L = "AndE_L"
    AND_E_R = "AndE_R"
    OR_I_L = "OrI_L"
    OR_I_R = "OrI_R"
    OR_E = "OrE"
    NN1 = "NN1"
    NN2 = "NN2"
    NAND_I = "NAndI"
    NAND_E_L = "NAndE_L"
    NAND_E_R = "NAndE_R"
    NOR_I_L = "NOrI_L"
    NOR_I_R = "NOrI_R"
    NOR_E = "NOrE"


#: Rules whose nodes discharge hypotheses (second and third premises).
DISCHARGING_RULES = frozenset({Rule.OR_E, Rule.NOR_E})


@dataclass(frozen=True)
class Derivation:
    """One node of a derivation tree.

    ``discharge`` is a pair (left-case label, right-case label), present
    exactly on OrE/NOrE nodes; ``label`` is present exactly on Hyp leaves.
    """

    rule: Rule
    conclusion: Formula
    premises: tuple[Derivation, ...] = ()
    discharge: tuple[str, str] | None = None
    label: str | None = None


@dataclass(frozen=True)
class CheckedSequent:
    """Open assumptions (as a set of formulas) and conclusion."""

    open_assumptions: frozenset[Formula]
    conclusion: Formula


class DerivationError(Exception):
    """A node violates its rule schema or the discharge discipline.

    ``path`` locates the node from the root by premise indices.
    """

    def __init__(self, path: tuple[int, ...], rule: Rule | None, message: str) -> None:
        where = ".".join(str(i) for i in path) if path else "root"
        name = rule.value if rule is not None else "?"
        super().__init__(f"{name} at {where}: {message}")
        self.path = path
        self.rule = rule
        self.message = message


class ProofFormatError(Exception):
    """A proof file does not follow the JSON tree format."""


# --------------------------------------------------------------------------
# Builders.  These compute the conclusion a rule instance must carry;
# check() remains the authority on well-formedness.

def hyp(label: str, f: Formula) -> Derivation:
    return Derivation(Rule.HYP, f, label=label)


def and_i(left: Derivation, right: Derivation) -> Derivation:
    return Derivation(Rule.AND_I, And(left.conclusion, right.conclusion), (left, right))


def and_e_l(premise: Derivation) -> Derivation:
    if not isinstance(premise.conclusion, And):
        raise ValueError("AndE_L needs a conjunction premise")
    return Derivation(Rule.AND_E_L, premise.conclusion.left, (premise,))


def and_e_r(premise: Derivation) -> Derivation:
    if not isinstance(premise.conclusion, And):
        raise ValueError("AndE_R needs a conjunction premise")
    return Derivation(Rule.AND_E_R, premise.conclusion.right, (premise,))


def or_i_l(premise: Derivation, right: Formula) -> Derivation:
    return Derivation(Rule.OR_I_L, Or(premise.conclusion, right), (premise,))


def or_i_r(premise: Derivation, left: Formula) -> Derivation:
    return Derivation(Rule.OR_I_R, Or(left, premise.conclusion), (premise,))


def or_e(major: Derivation, left: Derivation, right: Derivation,
         labels: tuple[str, str]) -> Derivation:
    return Derivation(Rule.OR_E, left.conclusion, (major, left, right), discharge=labels)


def nn1(first: Derivation, second: Derivation, conclusion: Formula) -> Derivation:
    return Derivation(Rule.NN1, conclusion, (first, second))


def nn2(a: Formula) -> Derivation:
    return Derivation(Rule.NN2, Or(a, Neg(Neg(a))))


def nand_i(left: Derivation, right: Derivation) -> Derivation:
    if not (isinstance(left.conclusion, Neg) and isinstance(right.conclusion, Neg)):
        raise ValueError("NAndI needs two negation premises")
    return Derivation(Rule.NAND_I,
                      Neg(And(left.conclusion.body, right.conclusion.body)),
                      (left, right))


def nand_e_l(premise: Derivation) -> Derivation:
    c = premise.conclusion
    if not (isinstance(c, Neg) and isinstance(c.body, And)):
        raise ValueError("NAndE_L needs a negated conjunction premise")
    return Derivation(Rule.NAND_E_L, Neg(c.body.left), (premise,))


def nand_e_r(premise: Derivation) -> Derivation:
    c = premise.conclusion
    if not (isinstance(c, Neg) and isinstance(c.body, And)):
        raise ValueError("NAndE_R needs a negated conjunction premise")
    return Derivation(Rule.NAND_E_R, Neg(c.body.right), (premise,))


def nor_i_l(premise: Derivation, right: Formula) -> Derivation:
    if not isinstance(premise.conclusion, Neg):
        raise ValueError("NOrI_L needs a negation premise")
    return Derivation(Rule.NOR_I_L, Neg(Or(premise.conclusion.body, right)), (premise,))


def nor_i_r(premise: Derivation, left: Formula) -> Derivation:
    if not isinstance(premise.conclusion, Neg):
        raise ValueError("NOrI_R needs a negation premise")
    return Derivation(Rule.NOR_I_R, Neg(Or(left, premise.conclusion.body)), (premise,))


def nor_e(major: Derivation, left: Derivation, right: Derivation,
          labels: tuple[str, str]) -> Derivation:
    return Derivation(Rule.NOR_E, left.conclusion, (major, left, right), discharge=labels)


# --------------------------------------------------------------------------
# Checking

# open hypotheses: label -> set of formulas it labels (normally a singleton)
_Open = dict[str, set[Formula]]


def check(d: Derivation) -> CheckedSequent:
    """Validate every node of ``d``; return open assumptions and conclusion.

    Raises :class:`DerivationError` naming the offending node's rule and
    path on the first violation found.
    """
    open_map, _ = _check(d, ())
    formulas = frozenset(f for fs in open_map.values() for f in fs)
    return CheckedSequent(formulas, d.conclusion)


def _fail(path: tuple[int, ...], rule: Rule | None, message: str) -> None:
    raise DerivationError(path, rule, message)


def _expect_arity(d: Derivation, path: tuple[int, ...], n: int) -> None:
    if len(d.premises) != n:
        _fail(path, d.rule, f"expected {n} premises, found {len(d.premises)}")


def _merge(path: tuple[int, ...], rule: Rule,
           results: list[tuple[_Open, set[str]]]) -> tuple[_Open, set[str]]:
    # A label discharged inside one subtree may not be open or discharged
    # in a sibling subtree.
    for i, (_, discharged_i) in enumerate(results):
        for k, (open_k, discharged_k) in enumerate(results):
            if i == k:
                continue
            clash = discharged_i & (set(open_k) | discharged_k)
            if clash:
                label = sorted(clash)[0]
                _fail(path, rule,
                      f"label {label!r} is discharged in one branch but "
                      f"used in a sibling branch")
    merged: _Open = {}
    discharged: set[str] = set()
    for open_i, discharged_i in results:
        for label, formulas in open_i.items():
            merged.setdefault(label, set()).update(formulas)
        discharged |= discharged_i
    return merged, discharged


def _discharge(path: tuple[int, ...], rule: Rule, open_map: _Open,
               label: str, case: Formula) -> None:
    if label in open_map:
        for f in open_map[label]:
            if f != case:
                _fail(path, rule,
                      f"hypothesis {label!r} is {format_formula(f)}, "
                      f"but the case formula is {format_formula(case)}")
        del open_map[label]


def _check(d: Derivation, path: tuple[int, ...]) -> tuple[_Open, set[str]]:
    rule = d.rule
    if not isinstance(rule, Rule):
        _fail(path, None, f"unknown rule {rule!r}")
    if (d.label is not None) != (rule is Rule.HYP):
        _fail(path, rule, "only Hyp nodes carry a hypothesis label")
    if (d.discharge is not None) != (rule in DISCHARGING_RULES):
        _fail(path, rule, "only OrE/NOrE nodes carry discharge labels")

    if rule is Rule.HYP:
        _expect_arity(d, path, 0)
        if not d.label:
            _fail(path, rule, "hypothesis label must be a non-empty string")
        return {d.label: {d.conclusion}}, set()

    if rule is Rule.NN2:
        _expect_arity(d, path, 0)
        c = d.conclusion
        if not (isinstance(c, Or) and c.right == Neg(Neg(c.left))):
            _fail(path, rule, "conclusion must have the form A | ~~A")
        return {}, set()

    results = [_check(p, path + (i,)) for i, p in enumerate(d.premises)]
    concs = [p.conclusion for p in d.premises]

    if rule is Rule.AND_I:
        _expect_arity(d, path, 2)
        if d.conclusion != And(concs[0], concs[1]):
            _fail(path, rule, "conclusion must conjoin the two premises in order")
    elif rule in (Rule.AND_E_L, Rule.AND_E_R):
        _expect_arity(d, path, 1)
        if not isinstance(concs[0], And):
            _fail(path, rule, "premise must be a conjunction")
        wanted = concs[0].left if rule is Rule.AND_E_L else concs[0].right
        if d.conclusion != wanted:
            _fail(path, rule, f"conclusion must be {format_formula(wanted)}")
    elif rule in (Rule.OR_I_L, Rule.OR_I_R):
        _expect_arity(d, path, 1)
        if not isinstance(d.conclusion, Or):
            _fail(path, rule, "conclusion must be a disjunction")
        own = d.conclusion.left if rule is Rule.OR_I_L else d.conclusion.right
        if own != concs[0]:
            _fail(path, rule, "premise must be the matching disjunct")
    elif rule is Rule.NN1:
        _expect_arity(d, path, 2)
        if concs[1] != Neg(Neg(concs[0])):
            _fail(path, rule, "second premise must be the double negation "
                              "of the first")
        # conclusion arbitrary
    elif rule is Rule.NAND_I:
        _expect_arity(d, path, 2)
        if not (isinstance(concs[0], Neg) and isinstance(concs[1], Neg)):
            _fail(path, rule, "premises must be negations")
        if d.conclusion != Neg(And(concs[0].body, concs[1].body)):
            _fail(path, rule, "conclusion must negate the conjunction of "
                              "the premises' bodies")
    elif rule in (Rule.NAND_E_L, Rule.NAND_E_R):
        _expect_arity(d, path, 1)
        if not (isinstance(concs[0], Neg) and isinstance(concs[0].body, And)):
            _fail(path, rule, "premise must be a negated conjunction")
        conjunct = (concs[0].body.left if rule is Rule.NAND_E_L
                    else concs[0].body.right)
        if d.conclusion != Neg(conjunct):
            _fail(path, rule, f"conclusion must be {format_formula(Neg(conjunct))}")
    elif rule in (Rule.NOR_I_L, Rule.NOR_I_R):
        _expect_arity(d, path, 1)
        if not isinstance(concs[0], Neg):
            _fail(path, rule, "premise must be a negation")
        c = d.conclusion
        if not (isinstance(c, Neg) and isinstance(c.body, Or)):
            _fail(path, rule, "conclusion must be a negated disjunction")
        own = c.body.left if rule is Rule.NOR_I_L else c.body.right
        if own != concs[0].body:
            _fail(path, rule, "premise must negate the matching disjunct")
    elif rule in DISCHARGING_RULES:
        _expect_arity(d, path, 3)
        if rule is Rule.OR_E:
            if not isinstance(concs[0], Or):
                _fail(path, rule, "major premise must be a disjunction")
            case_l: Formula = concs[0].left
            case_r: Formula = concs[0].right
        else:
            if not (isinstance(concs[0], Neg) and isinstance(concs[0].body, Or)):
                _fail(path, rule, "major premise must be a negated disjunction")
            case_l = Neg(concs[0].body.left)
            case_r = Neg(concs[0].body.right)
        if concs[1] != d.conclusion or concs[2] != d.conclusion:
            _fail(path, rule, "both case branches must conclude the node's "
                              "conclusion")
        assert d.discharge is not None
        if len(d.discharge) != 2:
            _fail(path, rule, "discharge must name exactly two labels")
        label_l, label_r = d.discharge
        open_major, dis_major = results[0]
        open_l, dis_l = results[1]
        open_r, dis_r = results[2]
        for label in (label_l, label_r):
            if label in dis_major | dis_l | dis_r:
                _fail(path, rule, f"label {label!r} is already discharged "
                                  f"deeper in the tree")
        _discharge(path, rule, open_l, label_l, case_l)
        _discharge(path, rule, open_r, label_r, case_r)
        if label_l in open_major or label_l in open_r:
            _fail(path, rule, f"discharged label {label_l!r} is still open "
                              f"outside its case branch")
        if label_r in open_major or label_r in open_l:
            _fail(path, rule, f"discharged label {label_r!r} is still open "
                              f"outside its case branch")
        open_map, discharged = _merge(
            path, rule, [(open_major, dis_major), (open_l, dis_l), (open_r, dis_r)])
        return open_map, discharged | {label_l, label_r}
    else:  # pragma: no cover - all rules handled above
        _fail(path, rule, "unhandled rule")

    return _merge(path, rule, results)


def soundness_check(d: Derivation, cap: int = DEFAULT_CAP) -> bool:
    """True iff ``d`` checks and its sequent is matrix-valid."""
    try:
        seq = check(d)
    except DerivationError:
        return False
    premises = tuple(sorted(seq.open_assumptions, key=format_formula))
    return is_consequence(Sequent(premises, seq.conclusion), cap).valid


def derivation_sequent(d: Derivation) -> Sequent:
    """The sequent established by ``d`` (premises sorted by rendering)."""
    seq = check(d)
    premises = tuple(sorted(seq.open_assumptions, key=format_formula))
    return Sequent(premises, seq.conclusion)


# --------------------------------------------------------------------------
# Bounded proof search

def search(s: Sequent, depth: int = DEFAULT_DEPTH) -> Derivation | None:
    """Goal-directed backward search, bounded by tree height ``depth``.

    Deterministic: assumption order and a fixed rule order decide the
    result.  ``None`` means no derivation was found within the bound, not
    that none exists.
    """
    assumptions: list[tuple[str, Formula]] = []
    seen: set[Formula] = set()
    for i, p in enumerate(s.premises):
        if p not in seen:
            seen.add(p)
            assumptions.append((f"p{len(assumptions) + 1}", p))
    fresh = itertools.count(1)
    return _prove(s.conclusion, assumptions, depth, fresh)


def _find(assumptions: list[tuple[str, Formula]], f: Formula) -> str | None:
    for label, g in assumptions:
        if g == f:
            return label
    return None


def _prove(goal: Formula, assumptions: list[tuple[str, Formula]],
           depth: int, fresh: "itertools.count[int]") -> Derivation | None:
    if depth < 1:
        return None

    label = _find(assumptions, goal)
    if label is not None:
        return hyp(label, goal)

    if isinstance(goal, Or) and goal.right == Neg(Neg(goal.left)):
        return nn2(goal.left)

    if depth >= 2:
        for label_a, f in assumptions:
            label_nn = _find(assumptions, Neg(Neg(f)))
            if label_nn is not None:
                return nn1(hyp(label_a, f), hyp(label_nn, Neg(Neg(f))), goal)

        # introduction rules on the goal's shape
        if isinstance(goal, And):
            left = _prove(goal.left, assumptions, depth - 1, fresh)
            if left is not None:
                right = _prove(goal.right, assumptions, depth - 1, fresh)
                if right is not None:
                    return and_i(left, right)
        elif isinstance(goal, Or):
            left = _prove(goal.left, assumptions, depth - 1, fresh)
            if left is not None:
                return or_i_l(left, goal.right)
            right = _prove(goal.right, assumptions, depth - 1, fresh)
            if right is not None:
                return or_i_r(right, goal.left)
        elif isinstance(goal, Neg) and isinstance(goal.body, And):
            left = _prove(Neg(goal.body.left), assumptions, depth - 1, fresh)
            if left is not None:
                right = _prove(Neg(goal.body.right), assumptions, depth - 1, fresh)
                if right is not None:
                    return nand_i(left, right)
        elif isinstance(goal, Neg) and isinstance(goal.body, Or):
            left = _prove(Neg(goal.body.left), assumptions, depth - 1, fresh)
            if left is not None:
                return nor_i_l(left, goal.body.right)
            right = _prove(Neg(goal.body.right), assumptions, depth - 1, fresh)
            if right is not None:
                return nor_i_r(right, goal.body.left)

        # single-step eliminations from assumptions
        for label_a, f in assumptions:
            if isinstance(f, And):
                if f.left == goal:
                    return and_e_l(hyp(label_a, f))
                if f.right == goal:
                    return and_e_r(hyp(label_a, f))
            if isinstance(f, Neg) and isinstance(f.body, And):
                if goal == Neg(f.body.left):
                    return nand_e_l(hyp(label_a, f))
                if goal == Neg(f.body.right):
                    return nand_e_r(hyp(label_a, f))

        # case analysis, tried last
        for label_a, f in assumptions:
            if isinstance(f, Or):
                cases: tuple[Formula, Formula] = (f.left, f.right)
                build = or_e
            elif isinstance(f, Neg) and isinstance(f.body, Or):
                cases = (Neg(f.body.left), Neg(f.body.right))
                build = nor_e
            else:
                continue
            label_l = f"h{next(fresh)}"
            label_r = f"h{next(fresh)}"
            left = _prove(goal, assumptions + [(label_l, cases[0])], depth - 1, fresh)
            if left is None:
                continue
            right = _prove(goal, assumptions + [(label_r, cases[1])], depth - 1, fresh)
            if right is None:
                continue
            return build(hyp(label_a, f), left, right, (label_l, label_r))

    return None


# --------------------------------------------------------------------------
# Bundled corpus

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    derivation: Derivation


def corpus() -> list[CorpusEntry]:
    """Named derivations exercising every rule.

    Includes the double-negation axiom and explosion, intro/elim round
    trips for & and |, and all four directions of the de Morgan
    interderivabilities.
    """
    p, q = Atom("p"), Atom("q")
    np_, nq = Neg(p), Neg(q)

    entries = [
        CorpusEntry("nn2", nn2(p)),
        CorpusEntry("nn1-explosion",
                    nn1(hyp("h1", p), hyp("h2", Neg(Neg(p))), q)),
        CorpusEntry("andI-andE-roundtrip",
                    and_i(and_e_l(hyp("h1", And(p, q))),
                          and_e_r(hyp("h1", And(p, q))))),
        CorpusEntry("orE-roundtrip",
                    or_e(hyp("h1", Or(p, p)),
                         hyp("h2", p), hyp("h3", p), ("h2", "h3"))),
        CorpusEntry("orI-orE-roundtrip",
                    or_e(or_i_l(hyp("h1", p), p),
                         hyp("h2", p), hyp("h3", p), ("h2", "h3"))),
        CorpusEntry("deMorgan-and-L", nand_e_l(hyp("h1", Neg(And(p, q))))),
        CorpusEntry("deMorgan-nand-to-conj",
                    and_i(nand_e_l(hyp("h1", Neg(And(p, q)))),
                          nand_e_r(hyp("h1", Neg(And(p, q)))))),
        CorpusEntry("deMorgan-conj-to-nand",
                    nand_i(and_e_l(hyp("h1", And(np_, nq))),
                           and_e_r(hyp("h1", And(np_, nq))))),
        CorpusEntry("deMorgan-nor-to-disj",
                    nor_e(hyp("h1", Neg(Or(p, q))),
                          or_i_l(hyp("h2", np_), nq),
                          or_i_r(hyp("h3", nq), np_),
                          ("h2", "h3"))),
        CorpusEntry("deMorgan-disj-to-nor",
                    or_e(hyp("h1", Or(np_, nq)),
                         nor_i_l(hyp("h2", np_), q),
                         nor_i_r(hyp("h3", nq), p),
                         ("h2", "h3"))),
    ]
    return entries


# --------------------------------------------------------------------------
# JSON proof files

def to_json_dict(d: Derivation) -> dict:
    obj: dict = {"rule": d.rule.value, "conclusion": format_formula(d.conclusion)}
    obj["premises"] = [to_json_dict(p) for p in d.premises]
    if d.discharge is not None:
        obj["discharge"] = list(d.discharge)
    if d.label is not None:
        obj["label"] = d.label
    return obj


def from_json_dict(obj: object) -> Derivation:
    """Build a derivation from the JSON tree format.

    Raises :class:`ProofFormatError` for structural problems; formula
    text is parsed with the usual grammar.
    """
    if not isinstance(obj, dict):
        raise ProofFormatError("proof node must be a JSON object")
    try:
        rule = Rule(obj["rule"])
    except KeyError:
        raise ProofFormatError("proof node is missing 'rule'") from None
    except ValueError:
        raise ProofFormatError(f"unknown rule {obj['rule']!r}") from None
    if "conclusion" not in obj:
        raise ProofFormatError("proof node is missing 'conclusion'")
    conclusion = parse(str(obj["conclusion"]))
    premises = obj.get("premises", [])
    if not isinstance(premises, list):
        raise ProofFormatError("'premises' must be an array")
    discharge = None
    if rule in DISCHARGING_RULES:
        raw = obj.get("discharge")
        if (not isinstance(raw, list) or len(raw) != 2
                or not all(isinstance(x, str) for x in raw)):
            raise ProofFormatError(f"{rule.value} needs a 'discharge' array "
                                   f"of two label strings")
        discharge = (raw[0], raw[1])
    elif "discharge" in obj:
        raise ProofFormatError(f"{rule.value} must not carry 'discharge'")
    label = None
    if rule is Rule.HYP:
        raw_label = obj.get("label")
        if not isinstance(raw_label, str) or not raw_label:
            raise ProofFormatError("Hyp needs a non-empty 'label' string")
        label = raw_label
    elif "label" in obj:
        raise ProofFormatError(f"{rule.value} must not carry 'label'")
    return Derivation(rule, conclusion,
                      tuple(from_json_dict(p) for p in premises),
                      discharge=discharge, label=label)


def render_derivation(d: Derivation, indent: int = 0) -> str:
    """Indented one-node-per-line rendering of a derivation tree."""
    pad = "  " * indent
    if d.rule is Rule.HYP:
        line = f"{pad}Hyp [{d.label}] {format_formula(d.conclusion)}"
    elif d.discharge is not None:
        line = (f"{pad}{d.rule.value} {format_formula(d.conclusion)}"
                f"  [discharges {d.discharge[0]}, {d.discharge[1]}]")
    else:
        line = f"{pad}{d.rule.value} {format_formula(d.conclusion)}"
    parts = [line]
    parts.extend(render_derivation(p, indent + 1) for p in d.premises)
    return "\n".join(parts)
