"""Workbench for a four-valued logic: matrix semantics over {1, i, j, 0}
with designated {1, i}, natural deduction with hypothesis discharge,
relational option readings, and functional-completeness verification.
"""

from .formula import (
    And,
    Atom,
    Formula,
    Neg,
    Or,
    ParseError,
    Sequent,
    format_formula,
    format_sequent,
    parse,
    parse_sequent,
    sequent_variables,
    substitute,
    variables,
)
from .matrix import (
    AND,
    CANONICAL_ORDER,
    DESIGNATED,
    NEG,
    OR,
    WITNESS_ORDER,
    CapExceededError,
    UnboundVariableError,
    Value,
    Verdict,
    conj,
    countermodel,
    disj,
    evaluate,
    interpretations,
    is_consequence,
    is_designated,
    neg,
    truth_table,
)
from .relational import (
    FDE_ORDER,
    OPTIONS,
    EquivalenceReport,
    FdeValue,
    OptionReading,
    RelVerdict,
    TruthSet,
    check_option_equivalence,
    correspond,
    get_option,
    option_table_lines,
    option_tables,
    rel_consequence,
    rel_designated,
    rel_eval,
)
from .nd import (
    CheckedSequent,
    CorpusEntry,
    Derivation,
    DerivationError,
    ProofFormatError,
    Rule,
    check,
    corpus,
    from_json_dict,
    render_derivation,
    search,
    soundness_check,
    to_json_dict,
)
from .fc import (
    BinaryTable,
    ClosureBudgetError,
    ClosureResult,
    DeltaCReport,
    ReservedVariableError,
    SlupeckiReport,
    UnaryTable,
    find_term_for_unary,
    fn_of_unary_term,
    is_essentially_binary,
    slupecki_check,
    unary_clone_closure,
    verify_delta_c,
)

__version__ = "0.1.0"

__all__ = [
    "And", "Atom", "Formula", "Neg", "Or", "ParseError", "Sequent",
    "format_formula", "format_sequent", "parse", "parse_sequent",
    "sequent_variables", "substitute", "variables",
    "AND", "CANONICAL_ORDER", "DESIGNATED", "NEG", "OR", "WITNESS_ORDER",
    "CapExceededError", "UnboundVariableError", "Value", "Verdict",
    "conj", "countermodel", "disj", "evaluate", "interpretations",
    "is_consequence", "is_designated", "neg", "truth_table",
    "FDE_ORDER", "OPTIONS", "EquivalenceReport", "FdeValue",
    "OptionReading", "RelVerdict", "TruthSet", "check_option_equivalence",
    "correspond", "get_option", "option_table_lines", "option_tables",
    "rel_consequence", "rel_designated", "rel_eval",
    "CheckedSequent", "CorpusEntry", "Derivation", "DerivationError",
    "ProofFormatError", "Rule", "check", "corpus", "from_json_dict",
    "render_derivation", "search", "soundness_check", "to_json_dict",
    "BinaryTable", "ClosureBudgetError", "ClosureResult", "DeltaCReport",
    "ReservedVariableError", "SlupeckiReport", "UnaryTable",
    "find_term_for_unary", "fn_of_unary_term", "is_essentially_binary",
    "slupecki_check", "unary_clone_closure", "verify_delta_c",
]
