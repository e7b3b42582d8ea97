"""Relational (truth-set) readings of the four matrix values.

A relational interpretation assigns each atom one of the four subsets of
{1, 0}: {1} (true only), {1, 0} (both), {} (neither), {0} (false only),
written t, b, n, f.  Four option readings translate the matrix semantics
into this style.  Each option is a bijection between matrix values and
truth sets together with membership clauses for the connectives and a
preserved property for consequence:

    option  1   i   0   j   negation clauses        and/or falsity  preserves
    O1      t   b   f   n   1: 0 absent, 0: 1 in    either / both   truth
    O2      t   n   f   b   1: 0 in, 0: 1 absent    either / both   non-falsity
    O3      b   t   n   f   1: 0 in, 0: 1 absent    both / either   truth
    O4      b   f   n   t   1: 0 absent, 0: 1 in    both / either   falsity

The truth clauses for & and | are classical in every option (1 is in the
value of a conjunction iff it is in both conjuncts, of a disjunction iff
it is in some disjunct); the options differ in how falsity propagates.
Under each option the clause-by-clause evaluation commutes with the
value translation, so all four describe the same consequence relation as
the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator, Mapping

from .formula import And, Atom, Formula, Neg, Or, Sequent, sequent_variables, variables
from .matrix import (
    CANONICAL_ORDER,
    DEFAULT_CAP,
    DESIGNATED,
    WITNESS_ORDER,
    CapExceededError,
    UnboundVariableError,
    Value,
    evaluate,
    interpretations,
    render_table_lines,
)


class FdeValue(Enum):
    """Names for the four truth sets: true, both, neither, false."""

    T = "t"
    B = "b"
    N = "n"
    F = "f"

    def __str__(self) -> str:
        return self.value


FDE_ORDER: tuple[FdeValue, ...] = (FdeValue.T, FdeValue.B, FdeValue.N, FdeValue.F)


@dataclass(frozen=True)
class TruthSet:
    """A subset of {1, 0}, tracked as two membership flags."""

    has1: bool
    has0: bool

    def __str__(self) -> str:
        members = [m for m, present in (("1", self.has1), ("0", self.has0)) if present]
        return "{" + ",".join(members) + "}"


TRUTH_SETS: dict[FdeValue, TruthSet] = {
    FdeValue.T: TruthSet(True, False),
    FdeValue.B: TruthSet(True, True),
    FdeValue.N: TruthSet(False, False),
    FdeValue.F: TruthSet(False, True),
}

FDE_OF_SET: dict[TruthSet, FdeValue] = {s: v for v, s in TRUTH_SETS.items()}


class NegTruthClause(Enum):
    """When is 1 in the value of ~A?"""

    ZERO_ABSENT = "0 not in V(A)"
    ZERO_PRESENT = "0 in V(A)"


class NegFalsityClause(Enum):
    """When is 0 in the value of ~A?"""

    ONE_PRESENT = "1 in V(A)"
    ONE_ABSENT = "1 not in V(A)"


class FalsityStyle(Enum):
    """How falsity propagates through & (dually through |)."""

    EITHER = "conjunction false when either conjunct is"
    BOTH = "conjunction false when both conjuncts are"


class Preservation(Enum):
    """Property preserved from premises to conclusion."""

    TRUTH = "truth"
    NON_FALSITY = "non-falsity"
    FALSITY = "falsity"


@dataclass(frozen=True)
class OptionReading:
    id: str
    value_map: Mapping[Value, FdeValue]
    neg_truth: NegTruthClause
    neg_falsity: NegFalsityClause
    falsity_style: FalsityStyle
    preservation: Preservation


OPTIONS: dict[str, OptionReading] = {
    "O1": OptionReading(
        id="O1",
        value_map={Value.V1: FdeValue.T, Value.VI: FdeValue.B,
                   Value.VJ: FdeValue.N, Value.V0: FdeValue.F},
        neg_truth=NegTruthClause.ZERO_ABSENT,
        neg_falsity=NegFalsityClause.ONE_PRESENT,
        falsity_style=FalsityStyle.EITHER,
        preservation=Preservation.TRUTH,
    ),
    "O2": OptionReading(
        id="O2",
        value_map={Value.V1: FdeValue.T, Value.VI: FdeValue.N,
                   Value.VJ: FdeValue.B, Value.V0: FdeValue.F},
        neg_truth=NegTruthClause.ZERO_PRESENT,
        neg_falsity=NegFalsityClause.ONE_ABSENT,
        falsity_style=FalsityStyle.EITHER,
        preservation=Preservation.NON_FALSITY,
    ),
    "O3": OptionReading(
        id="O3",
        value_map={Value.V1: FdeValue.B, Value.VI: FdeValue.T,
                   Value.VJ: FdeValue.F, Value.V0: FdeValue.N},
        neg_truth=NegTruthClause.ZERO_PRESENT,
        neg_falsity=NegFalsityClause.ONE_ABSENT,
        falsity_style=FalsityStyle.BOTH,
        preservation=Preservation.TRUTH,
    ),
    "O4": OptionReading(
        id="O4",
        value_map={Value.V1: FdeValue.B, Value.VI: FdeValue.F,
                   Value.VJ: FdeValue.T, Value.V0: FdeValue.N},
        neg_truth=NegTruthClause.ZERO_ABSENT,
        neg_falsity=NegFalsityClause.ONE_PRESENT,
        falsity_style=FalsityStyle.BOTH,
        preservation=Preservation.FALSITY,
    ),
}


def get_option(option_id: str) -> OptionReading:
    try:
        return OPTIONS[option_id]
    except KeyError:
        raise ValueError(f"unknown option {option_id!r}; expected one of "
                         f"{', '.join(OPTIONS)}") from None


def correspond(option: OptionReading, v: Value) -> TruthSet:
    """The truth set assigned to matrix value ``v`` under ``option``."""
    return TRUTH_SETS[option.value_map[v]]


RelInterpretation = Mapping[str, TruthSet]


def rel_eval(option: OptionReading, f: Formula, assignment: RelInterpretation) -> TruthSet:
    """Evaluate ``f`` clause by clause over truth sets."""
    if isinstance(f, Atom):
        try:
            return assignment[f.name]
        except KeyError:
            raise UnboundVariableError(f.name) from None
    if isinstance(f, Neg):
        s = rel_eval(option, f.body, assignment)
        truth = (not s.has0) if option.neg_truth is NegTruthClause.ZERO_ABSENT else s.has0
        falsity = s.has1 if option.neg_falsity is NegFalsityClause.ONE_PRESENT else not s.has1
        return TruthSet(truth, falsity)
    if isinstance(f, (And, Or)):
        a = rel_eval(option, f.left, assignment)
        b = rel_eval(option, f.right, assignment)
        either = option.falsity_style is FalsityStyle.EITHER
        if isinstance(f, And):
            return TruthSet(a.has1 and b.has1,
                            (a.has0 or b.has0) if either else (a.has0 and b.has0))
        return TruthSet(a.has1 or b.has1,
                        (a.has0 and b.has0) if either else (a.has0 or b.has0))
    raise TypeError(f"not a formula: {f!r}")


def rel_designated(option: OptionReading, s: TruthSet) -> bool:
    """Does ``s`` have the property the option's consequence preserves?"""
    if option.preservation is Preservation.TRUTH:
        return s.has1
    if option.preservation is Preservation.NON_FALSITY:
        return not s.has0
    return s.has0


def designated_truth_sets(option: OptionReading) -> frozenset[TruthSet]:
    """Images of the designated matrix values under the option's map."""
    return frozenset(correspond(option, v) for v in DESIGNATED)


def rel_interpretations(option: OptionReading,
                        names: list[str]) -> Iterator[dict[str, TruthSet]]:
    """All truth-set assignments to ``names``.

    Scanned in the image of the matrix witness order, so the first
    relational countermodel is the translation of the matrix one.
    """
    order = [correspond(option, v) for v in WITNESS_ORDER]
    for sets in product(order, repeat=len(names)):
        yield dict(zip(names, sets))


@dataclass(frozen=True)
class RelVerdict:
    valid: bool
    witness: dict[str, TruthSet] | None
    checked: int


def rel_consequence(option: OptionReading, s: Sequent,
                    cap: int = DEFAULT_CAP) -> RelVerdict:
    """Consequence over relational interpretations, per the option's clauses.

    Computed entirely on the truth-set side; agreement with the matrix
    verdict is a theorem, not an implementation shortcut.
    """
    names = sequent_variables(s)
    if len(names) > cap:
        raise CapExceededError(len(names), cap)
    checked = 0
    for assignment in rel_interpretations(option, names):
        checked += 1
        if all(rel_designated(option, rel_eval(option, p, assignment))
               for p in s.premises):
            if not rel_designated(option, rel_eval(option, s.conclusion, assignment)):
                return RelVerdict(valid=False, witness=assignment, checked=checked)
    return RelVerdict(valid=True, witness=None, checked=checked)


@dataclass(frozen=True)
class Mismatch:
    interpretation: dict[str, Value]
    via_map: TruthSet
    via_clauses: TruthSet


@dataclass(frozen=True)
class EquivalenceReport:
    """Comparison of the two evaluation routes for one formula.

    ``via_map`` translates the matrix value of the whole formula;
    ``via_clauses`` translates only the atoms and evaluates relationally.
    """

    option_id: str
    formula: Formula
    checked: int
    mismatches: tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_option_equivalence(option: OptionReading, f: Formula,
                             cap: int = DEFAULT_CAP) -> EquivalenceReport:
    """Verify that translation commutes with evaluation for ``f``."""
    names = variables(f)
    if len(names) > cap:
        raise CapExceededError(len(names), cap)
    mismatches = []
    checked = 0
    for inter in interpretations(names):
        checked += 1
        via_map = correspond(option, evaluate(f, inter))
        assignment = {name: correspond(option, v) for name, v in inter.items()}
        via_clauses = rel_eval(option, f, assignment)
        if via_map != via_clauses:
            mismatches.append(Mismatch(inter, via_map, via_clauses))
    return EquivalenceReport(option.id, f, checked, tuple(mismatches))


@dataclass(frozen=True)
class OptionTables:
    neg: dict[FdeValue, FdeValue]
    conj: dict[tuple[FdeValue, FdeValue], FdeValue]
    disj: dict[tuple[FdeValue, FdeValue], FdeValue]


def option_tables(option: OptionReading) -> OptionTables:
    """Connective tables over t/b/n/f generated from the option's clauses."""
    x, y = Atom("x"), Atom("y")
    neg_table = {
        w: FDE_OF_SET[rel_eval(option, Neg(x), {"x": TRUTH_SETS[w]})]
        for w in FDE_ORDER
    }
    conj_table = {}
    disj_table = {}
    for w1 in FDE_ORDER:
        for w2 in FDE_ORDER:
            assignment = {"x": TRUTH_SETS[w1], "y": TRUTH_SETS[w2]}
            conj_table[(w1, w2)] = FDE_OF_SET[rel_eval(option, And(x, y), assignment)]
            disj_table[(w1, w2)] = FDE_OF_SET[rel_eval(option, Or(x, y), assignment)]
    return OptionTables(neg_table, conj_table, disj_table)


def option_table_lines(option: OptionReading) -> list[str]:
    """The option's 36 table entries in golden-file format."""
    tables = option_tables(option)
    return render_table_lines(tables.neg, tables.conj, tables.disj, FDE_ORDER)
