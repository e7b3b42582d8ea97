"""Four-valued matrix semantics.

The carrier is {1, i, j, 0} ordered as the diamond lattice 0 < i, j < 1
with i and j incomparable.  Conjunction is lattice meet, disjunction is
lattice join, and negation is the four-cycle 1 -> i -> 0 -> j -> 1.  The
designated values are 1 and i; consequence is preservation of
designation under every interpretation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator, Mapping, Sequence

from .formula import And, Atom, Formula, Neg, Or, Sequent, sequent_variables, variables

DEFAULT_CAP = 10


class Value(Enum):
    V1 = "1"
    VI = "i"
    VJ = "j"
    V0 = "0"

    def __str__(self) -> str:
        return self.value


V1, VI, VJ, V0 = Value.V1, Value.VI, Value.VJ, Value.V0

#: Row/column order used by truth tables and table renderings.
CANONICAL_ORDER: tuple[Value, ...] = (V1, VI, VJ, V0)

#: Scan order for countermodel search: the designated values first, then
#: their images under double negation (~~1 = 0, ~~i = j).  Fixing this
#: order makes the first reported countermodel stable across runs.
WITNESS_ORDER: tuple[Value, ...] = (V1, VI, V0, VJ)

DESIGNATED: frozenset[Value] = frozenset({V1, VI})

NEG: dict[Value, Value] = {V1: VI, VI: V0, VJ: V1, V0: VJ}


def _binary_table(rows: Mapping[Value, str]) -> dict[tuple[Value, Value], Value]:
    table: dict[tuple[Value, Value], Value] = {}
    for left, cells in rows.items():
        for right, cell in zip(CANONICAL_ORDER, cells.split()):
            table[(left, right)] = Value(cell)
    return table


# Meet and join of the diamond lattice, rows keyed by the left argument,
# columns in canonical order 1 i j 0.
AND: dict[tuple[Value, Value], Value] = _binary_table({
    V1: "1 i j 0",
    VI: "i i 0 0",
    VJ: "j 0 j 0",
    V0: "0 0 0 0",
})

OR: dict[tuple[Value, Value], Value] = _binary_table({
    V1: "1 1 1 1",
    VI: "1 i 1 i",
    VJ: "1 1 j j",
    V0: "1 i j 0",
})


def neg(a: Value) -> Value:
    return NEG[a]


def conj(a: Value, b: Value) -> Value:
    return AND[(a, b)]


def disj(a: Value, b: Value) -> Value:
    return OR[(a, b)]


def is_designated(a: Value) -> bool:
    return a in DESIGNATED


class UnboundVariableError(Exception):
    """An interpretation is missing a value for an atom."""

    def __init__(self, name: str) -> None:
        super().__init__(f"no value assigned to atom {name!r}")
        self.name = name


class CapExceededError(Exception):
    """A sequent or formula has more variables than the configured cap."""

    def __init__(self, count: int, cap: int) -> None:
        super().__init__(f"{count} variables exceed the cap of {cap}")
        self.count = count
        self.cap = cap


Interpretation = Mapping[str, Value]


def evaluate(f: Formula, interpretation: Interpretation) -> Value:
    """Value of ``f`` under ``interpretation``.

    Raises :class:`UnboundVariableError` if an atom of ``f`` has no value.
    """
    if isinstance(f, Atom):
        try:
            return interpretation[f.name]
        except KeyError:
            raise UnboundVariableError(f.name) from None
    if isinstance(f, Neg):
        return NEG[evaluate(f.body, interpretation)]
    if isinstance(f, And):
        return AND[(evaluate(f.left, interpretation), evaluate(f.right, interpretation))]
    if isinstance(f, Or):
        return OR[(evaluate(f.left, interpretation), evaluate(f.right, interpretation))]
    raise TypeError(f"not a formula: {f!r}")


def interpretations(names: Sequence[str],
                    order: Sequence[Value] = CANONICAL_ORDER) -> Iterator[dict[str, Value]]:
    """All assignments to ``names``, the last variable cycling fastest."""
    for values in product(order, repeat=len(names)):
        yield dict(zip(names, values))


def truth_table(f: Formula, cap: int = DEFAULT_CAP) -> list[tuple[dict[str, Value], Value]]:
    """All rows ``(interpretation, value)`` for ``f``.

    Variables appear in first-occurrence order and rows cycle through
    ``CANONICAL_ORDER``, rightmost variable fastest.
    """
    names = variables(f)
    if len(names) > cap:
        raise CapExceededError(len(names), cap)
    return [(inter, evaluate(f, inter)) for inter in interpretations(names)]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a consequence check.

    ``witness`` is the first countermodel found (scan order
    :data:`WITNESS_ORDER`) or ``None`` when the sequent is valid;
    ``checked`` counts the interpretations inspected.
    """

    valid: bool
    witness: dict[str, Value] | None
    checked: int


def is_consequence(s: Sequent, cap: int = DEFAULT_CAP) -> Verdict:
    """Decide designation-preservation for ``s`` by full enumeration.

    Visits at most ``4 ** n`` interpretations for ``n`` variables and
    stops at the first countermodel.
    """
    names = sequent_variables(s)
    if len(names) > cap:
        raise CapExceededError(len(names), cap)
    checked = 0
    for inter in interpretations(names, order=WITNESS_ORDER):
        checked += 1
        if all(evaluate(p, inter) in DESIGNATED for p in s.premises):
            if evaluate(s.conclusion, inter) not in DESIGNATED:
                return Verdict(valid=False, witness=inter, checked=checked)
    return Verdict(valid=True, witness=None, checked=checked)


def countermodel(s: Sequent, cap: int = DEFAULT_CAP) -> dict[str, Value] | None:
    """First interpretation designating all premises but not the conclusion."""
    return is_consequence(s, cap).witness


def render_table_lines(neg_table: Mapping, and_table: Mapping, or_table: Mapping,
                       order: Sequence, symbol=str) -> list[str]:
    """Render the three connective tables as ``op lhs [rhs] result`` lines.

    Unary rows come first, then the two binary tables row-major in
    ``order``.  Shared by the matrix and the option-reading tables, which
    differ only in their value sets.
    """
    lines = [f"~ {symbol(a)} {symbol(neg_table[a])}" for a in order]
    for op, table in (("&", and_table), ("|", or_table)):
        for a in order:
            for b in order:
                lines.append(f"{op} {symbol(a)} {symbol(b)} {symbol(table[(a, b)])}")
    return lines


def matrix_table_lines() -> list[str]:
    """The 36 connective-table entries in golden-file format."""
    return render_table_lines(NEG, AND, OR, CANONICAL_ORDER)
