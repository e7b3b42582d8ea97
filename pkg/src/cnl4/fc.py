"""Functional completeness machinery.

Three ingredients:

* defining terms for the indicator functions delta_a (value 1 at a, else
  0), the constant functions C_a, and a derived Boolean-style negation
  macro, each evaluated pointwise and compared against its defining
  equation;
* the closure of {identity, ~} under composition, pointwise & / | and
  post-negation, which reaches all 256 unary functions on the carrier
  and keeps a smallest-found witness term per function;
* the two-condition criterion for functional completeness of a finite
  matrix with at least three elements: all unary functions definable,
  plus one surjective essentially binary definable function.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .formula import And, Atom, Formula, Neg, Or, format_formula, parse, size, substitute, variables
from .matrix import AND, CANONICAL_ORDER, NEG, OR, Value, evaluate

_INDEX = {v: k for k, v in enumerate(CANONICAL_ORDER)}


class ReservedVariableError(Exception):
    """A term mentions atoms outside its reserved variable set."""


class ClosureBudgetError(Exception):
    """The closure exceeded its table budget before reaching a fixpoint."""

    def __init__(self, reached: int, budget: int) -> None:
        super().__init__(f"closure exceeded budget {budget} (reached {reached} tables)")
        self.reached = reached
        self.budget = budget


@dataclass(frozen=True)
class UnaryTable:
    """A unary function on the carrier, tabulated in canonical order."""

    outputs: tuple[Value, Value, Value, Value]

    def apply(self, v: Value) -> Value:
        return self.outputs[_INDEX[v]]

    def __str__(self) -> str:
        return ",".join(f"{a}:{self.apply(a)}" for a in CANONICAL_ORDER)


@dataclass(frozen=True)
class BinaryTable:
    """A binary function on the carrier, tabulated row-major."""

    outputs: tuple[Value, ...]  # 16 entries, left argument major

    def apply(self, a: Value, b: Value) -> Value:
        return self.outputs[_INDEX[a] * 4 + _INDEX[b]]


def unary_table(fn) -> UnaryTable:
    a, b, c, d = (fn(v) for v in CANONICAL_ORDER)
    return UnaryTable((a, b, c, d))


def binary_table(fn) -> BinaryTable:
    return BinaryTable(tuple(fn(a, b) for a in CANONICAL_ORDER for b in CANONICAL_ORDER))


IDENTITY_TABLE = unary_table(lambda v: v)
NEG_TABLE = unary_table(lambda v: NEG[v])
AND_TABLE = binary_table(lambda a, b: AND[(a, b)])
OR_TABLE = binary_table(lambda a, b: OR[(a, b)])


def all_unary_tables() -> list[UnaryTable]:
    """All 256 unary functions on the four-element carrier."""
    return [UnaryTable(outs) for outs in product(CANONICAL_ORDER, repeat=4)]


# --------------------------------------------------------------------------
# Defining terms

X = Atom("x")

#: The negation macro: maps 1 and i to 0, and j and 0 to 1 (the table is
#: derived by evaluation, not stipulated).  The subterm x & ~~~x does the
#: work: it collapses j and 0 to 0 while sending 1 and i elsewhere.
BOOLEAN_NEG = parse(
    "~~~(~~((x & ~~~x) & ~~~(x & ~~~x)) & ((x & ~~~x) | ~~~(x & ~~~x)))"
)


def boolean_neg(arg: Formula) -> Formula:
    """Expand the negation macro structurally at ``arg``."""
    return substitute(BOOLEAN_NEG, "x", arg)


def _nn(f: Formula) -> Formula:
    return Neg(Neg(f))


def _nnn(f: Formula) -> Formula:
    return Neg(Neg(Neg(f)))


#: Terms defining the indicator functions delta_a, the constants C_a,
#: and the negation macro itself.  The delta terms use the macro, fully
#: expanded, so evaluating them exercises the macro at depth.
DEFINING_TERMS: dict[str, Formula] = {
    "delta_1": boolean_neg(Or(_nn(X), _nnn(X))),
    "delta_i": boolean_neg(Or(_nn(X), boolean_neg(_nnn(X)))),
    "delta_j": boolean_neg(Or(_nnn(X), boolean_neg(boolean_neg(X)))),
    "delta_0": boolean_neg(boolean_neg(And(_nn(X), _nnn(X)))),
    "C_1": parse("x | ~~x"),
    "C_i": parse("~(x | ~~x)"),
    "C_j": parse("~(x & ~~x)"),
    "C_0": parse("x & ~~x"),
    "bool_neg": BOOLEAN_NEG,
}

_DELTA_VALUE = {"delta_1": Value.V1, "delta_i": Value.VI,
                "delta_j": Value.VJ, "delta_0": Value.V0}
_CONSTANT_VALUE = {"C_1": Value.V1, "C_i": Value.VI,
                   "C_j": Value.VJ, "C_0": Value.V0}


def fn_of_unary_term(t: Formula) -> UnaryTable:
    """Tabulate a term in the single reserved variable ``x``."""
    extra = set(variables(t)) - {"x"}
    if extra:
        raise ReservedVariableError(
            f"unary terms may mention only 'x'; found {', '.join(sorted(extra))}")
    return unary_table(lambda v: evaluate(t, {"x": v}))


def indicator_table(a: Value) -> UnaryTable:
    """delta_a as a table: 1 at a, 0 elsewhere."""
    return unary_table(lambda b: Value.V1 if b == a else Value.V0)


def constant_table(a: Value) -> UnaryTable:
    return unary_table(lambda _: a)


@dataclass(frozen=True)
class PointCheck:
    term_name: str
    argument: Value
    expected: Value
    actual: Value

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def delta_c_point_checks(tables: Mapping[str, UnaryTable]) -> list[PointCheck]:
    """Compare delta/C tables against their defining equations, pointwise."""
    checks = []
    for name, a in _DELTA_VALUE.items():
        expected = indicator_table(a)
        for b in CANONICAL_ORDER:
            checks.append(PointCheck(name, b, expected.apply(b), tables[name].apply(b)))
    for name, a in _CONSTANT_VALUE.items():
        for b in CANONICAL_ORDER:
            checks.append(PointCheck(name, b, a, tables[name].apply(b)))
    return checks


@dataclass(frozen=True)
class DeltaCReport:
    checks: tuple[PointCheck, ...]
    bool_neg_table: UnaryTable

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[PointCheck]:
        return [c for c in self.checks if not c.ok]


def verify_delta_c() -> DeltaCReport:
    """Evaluate all delta/C terms and check their 32 defining points.

    The table of the negation macro is included in the report for
    inspection; it has no stipulated reference values.
    """
    tables = {name: fn_of_unary_term(term) for name, term in DEFINING_TERMS.items()}
    checks = delta_c_point_checks(tables)
    return DeltaCReport(tuple(checks), tables["bool_neg"])


# --------------------------------------------------------------------------
# Unary clone closure

@dataclass(frozen=True)
class ClosureResult:
    """Tables reached from {x, ~x}, each with its smallest-found witness."""

    witnesses: dict[UnaryTable, Formula]
    rounds: int

    @property
    def size(self) -> int:
        return len(self.witnesses)


def _term_key(term: Formula) -> tuple[int, str]:
    return (size(term), format_formula(term))


def unary_clone_closure(budget: int = 256) -> ClosureResult:
    """Close {identity, ~} under composition, pointwise & / |, and ~.

    Breadth-first by rounds; within a round, new tables adopt the
    smallest candidate witness (term size, then lexicographic), so the
    witness map is deterministic.  Raises :class:`ClosureBudgetError` if
    more than ``budget`` tables appear.
    """
    if budget < 256:
        raise ValueError(f"budget must be at least 256, got {budget}")
    known: dict[UnaryTable, Formula] = {}
    known[IDENTITY_TABLE] = X
    known.setdefault(NEG_TABLE, Neg(X))
    frontier = list(known.items())
    rounds = 0
    while frontier:
        fresh: dict[UnaryTable, Formula] = {}

        def offer(table: UnaryTable, term: Formula) -> None:
            if table in known:
                return
            current = fresh.get(table)
            if current is None or _term_key(term) < _term_key(current):
                fresh[table] = term

        # pair each frontier table with everything known, both ways round;
        # old-old pairs were offered in an earlier round
        for table_f, term_f in frontier:
            offer(unary_table(lambda v, t=table_f: NEG[t.apply(v)]), Neg(term_f))
            for table_g, term_g in known.items():
                for (tf, ef), (tg, eg) in (((table_f, term_f), (table_g, term_g)),
                                           ((table_g, term_g), (table_f, term_f))):
                    offer(unary_table(lambda v, a=tf, b=tg: a.apply(b.apply(v))),
                          substitute(ef, "x", eg))
                    offer(unary_table(lambda v, a=tf, b=tg: AND[(a.apply(v), b.apply(v))]),
                          And(ef, eg))
                    offer(unary_table(lambda v, a=tf, b=tg: OR[(a.apply(v), b.apply(v))]),
                          Or(ef, eg))

        if not fresh:
            break
        rounds += 1
        if len(known) + len(fresh) > budget:
            raise ClosureBudgetError(len(known) + len(fresh), budget)
        additions = sorted(fresh.items(), key=lambda kv: _term_key(kv[1]))
        for table, term in additions:
            known[table] = term
        frontier = additions
    return ClosureResult(known, rounds)


_closure_cache: dict[int, ClosureResult] = {}


def _closure(budget: int = 256) -> ClosureResult:
    if budget not in _closure_cache:
        _closure_cache[budget] = unary_clone_closure(budget)
    return _closure_cache[budget]


def find_term_for_unary(target: UnaryTable, budget: int = 256) -> Formula | None:
    """A witness term for ``target`` from the closure, or None."""
    return _closure(budget).witnesses.get(target)


# --------------------------------------------------------------------------
# Essential binarity and the completeness criterion

def depends_on_left(f: BinaryTable) -> bool:
    return any(f.apply(a1, b) != f.apply(a2, b)
               for b in CANONICAL_ORDER
               for a1 in CANONICAL_ORDER for a2 in CANONICAL_ORDER)


def depends_on_right(f: BinaryTable) -> bool:
    return any(f.apply(a, b1) != f.apply(a, b2)
               for a in CANONICAL_ORDER
               for b1 in CANONICAL_ORDER for b2 in CANONICAL_ORDER)


def is_essentially_binary(f: BinaryTable) -> bool:
    """True iff ``f`` depends on both coordinates.

    Dependence on both coordinates is equivalent to ``f`` not being of
    the form g(x) or g(y) for any unary g: if f ignores a coordinate,
    its section along the other one is such a g, and conversely.
    """
    return depends_on_left(f) and depends_on_right(f)


def is_unary_reducible(f: BinaryTable,
                       tables: Iterable[UnaryTable] | None = None) -> bool:
    """Literal reducibility check: does some unary g tabulate f?

    Quantifies g over all 256 unary tables (or a supplied collection);
    kept as an independent cross-check of :func:`is_essentially_binary`.
    """
    if tables is None:
        tables = all_unary_tables()
    values = CANONICAL_ORDER
    for g in tables:
        if all(f.apply(a, b) == g.apply(a) for a in values for b in values):
            return True
        if all(f.apply(a, b) == g.apply(b) for a in values for b in values):
            return True
    return False


def is_surjective(f: BinaryTable) -> bool:
    return set(f.outputs) == set(CANONICAL_ORDER)


@dataclass(frozen=True)
class SlupeckiReport:
    """The two-condition completeness criterion, instantiated with &."""

    closure_size: int
    unary_complete: bool       # condition (1): all 256 unary functions
    binary_witness: str
    surjective: bool           # condition (2a)
    essentially_binary: bool   # condition (2b)

    @property
    def functionally_complete(self) -> bool:
        return self.unary_complete and self.surjective and self.essentially_binary


def slupecki_check(budget: int = 256) -> SlupeckiReport:
    closure = _closure(budget)
    return SlupeckiReport(
        closure_size=closure.size,
        unary_complete=closure.size == 256,
        binary_witness="&",
        surjective=is_surjective(AND_TABLE),
        essentially_binary=is_essentially_binary(AND_TABLE),
    )
