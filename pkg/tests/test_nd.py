"""Natural-deduction tests: checking, discharge discipline, search, JSON.

The metamorphic corruption tests take a derivation that checks and break it
in one targeted way (swap discharge labels, change the major premise, mutate
a leaf); every corruption must be rejected by check().
"""

from __future__ import annotations

import json
import random

import pytest

from cnl4.formula import And, Atom, Neg, Or, ParseError, format_sequent, parse_sequent
from cnl4.nd import (
    DISCHARGING_RULES,
    CorpusEntry,
    Derivation,
    DerivationError,
    ProofFormatError,
    Rule,
    and_e_l,
    and_e_r,
    and_i,
    check,
    corpus,
    derivation_sequent,
    from_json_dict,
    hyp,
    nand_e_l,
    nand_i,
    nn1,
    nn2,
    nor_e,
    or_e,
    or_i_l,
    render_derivation,
    search,
    soundness_check,
    to_json_dict,
)
from helpers import random_sequent

P, Q = Atom("p"), Atom("q")


# ---------------------------------------------------------------------------
# check()


def test_check_axiom_leaf() -> None:
    seq = check(nn2(P))
    assert seq.open_assumptions == frozenset()
    assert seq.conclusion == Or(P, Neg(Neg(P)))


def test_check_hyp_leaf() -> None:
    seq = check(hyp("h1", P))
    assert seq.open_assumptions == {P}
    assert seq.conclusion == P


def test_check_collects_open_assumptions() -> None:
    d = nn1(hyp("h1", P), hyp("h2", Neg(Neg(P))), Q)
    seq = check(d)
    assert seq.open_assumptions == {P, Neg(Neg(P))}
    assert seq.conclusion == Q


def test_check_or_elimination_discharges() -> None:
    d = or_e(hyp("h1", Or(P, Q)), hyp("h2", P), hyp("h3", Q), ("h2", "h3"))
    # The branches conclude different formulas, so this must be rejected.
    with pytest.raises(DerivationError) as exc_info:
        check(d)
    assert exc_info.value.path == ()
    assert exc_info.value.rule is Rule.OR_E


def test_check_or_elimination_good() -> None:
    d = or_e(hyp("h1", Or(P, P)), hyp("h2", P), hyp("h3", P), ("h2", "h3"))
    seq = check(d)
    assert seq.open_assumptions == {Or(P, P)}
    assert seq.conclusion == P


def test_vacuous_discharge_is_allowed() -> None:
    # Neither branch uses its case hypothesis; the labels are still legal.
    d = or_e(hyp("h1", Or(P, Q)), nn2(P), nn2(P), ("h2", "h3"))
    seq = check(d)
    assert seq.open_assumptions == {Or(P, Q)}
    assert seq.conclusion == Or(P, Neg(Neg(P)))


def test_error_path_points_at_the_bad_node() -> None:
    bad = Derivation(Rule.AND_E_L, P, (hyp("h1", P),))
    wrapped = Derivation(Rule.AND_I, And(Q, P), (hyp("h2", Q), bad))
    with pytest.raises(DerivationError) as exc_info:
        check(wrapped)
    assert exc_info.value.path == (1,)
    assert exc_info.value.rule is Rule.AND_E_L
    assert "1" in str(exc_info.value)


@pytest.mark.parametrize(
    "bad",
    [
        # Conclusion does not match the rule schema.
        Derivation(Rule.AND_I, Or(P, Q), (hyp("h1", P), hyp("h2", Q))),
        # NN2 axiom with the wrong shape.
        Derivation(Rule.NN2, Or(P, Neg(P))),
        # NN1 whose second premise is not the double negation of the first.
        Derivation(Rule.NN1, Q, (hyp("h1", P), hyp("h2", Neg(P)))),
        # Eliminating a non-conjunction.
        Derivation(Rule.AND_E_L, P, (hyp("h1", Or(P, Q)),)),
        # OrI whose premise is not a disjunct of the conclusion.
        Derivation(Rule.OR_I_L, Or(P, Q), (hyp("h1", Q),)),
        # NAndI premises are not negations.
        Derivation(Rule.NAND_I, Neg(And(P, Q)), (hyp("h1", P), hyp("h2", Q))),
        # Wrong arity.
        Derivation(Rule.AND_I, And(P, Q), (hyp("h1", P),)),
        Derivation(Rule.HYP, P, (hyp("h1", P),), label="h2"),
        # Label on a non-hypothesis node.
        Derivation(Rule.NN2, Or(P, Neg(Neg(P))), label="h1"),
        # Missing label on a hypothesis.
        Derivation(Rule.HYP, P),
        # Discharge pair on a rule that cannot discharge.
        Derivation(Rule.AND_I, And(P, Q),
                   (hyp("h1", P), hyp("h2", Q)), discharge=("h1", "h2")),
        # Missing discharge pair on OrE.
        Derivation(Rule.OR_E, P,
                   (hyp("h1", Or(P, P)), hyp("h2", P), hyp("h3", P))),
    ],
)
def test_check_rejects_malformed_nodes(bad: Derivation) -> None:
    with pytest.raises(DerivationError):
        check(bad)


def test_one_label_bound_to_two_formulas_stays_open() -> None:
    # Reusing a label for a different formula is legal while the label is
    # open; both formulas count as assumptions.
    d = and_i(hyp("h1", P), hyp("h1", Q))
    assert check(d).open_assumptions == {P, Q}


def test_discharge_rejects_label_bound_to_two_formulas() -> None:
    # Once h2 stands for both p and q, no single case formula can
    # discharge it.
    left = and_e_l(and_i(hyp("h2", P), hyp("h2", Q)))
    d = or_e(hyp("h1", Or(P, P)), left, hyp("h3", P), ("h2", "h3"))
    with pytest.raises(DerivationError, match="h2"):
        check(d)


def test_same_label_in_disjoint_scopes_is_fine() -> None:
    # Both branches call their case hypothesis h2; the scopes never meet.
    d = or_e(hyp("h1", Or(P, P)), hyp("h2", P), hyp("h2", P), ("h2", "h2"))
    assert check(d).conclusion == P


# ---------------------------------------------------------------------------
# Discharge corruptions


def _de_morgan_nor() -> Derivation:
    return nor_e(
        hyp("h1", Neg(Or(P, Q))),
        or_i_l(hyp("h2", Neg(P)), Neg(Q)),
        Derivation(
            Rule.OR_I_R,
            Or(Neg(P), Neg(Q)),
            (hyp("h3", Neg(Q)),),
        ),
        ("h2", "h3"),
    )


def test_de_morgan_nor_elimination_checks() -> None:
    seq = check(_de_morgan_nor())
    assert seq.open_assumptions == {Neg(Or(P, Q))}
    assert seq.conclusion == Or(Neg(P), Neg(Q))


def test_corruption_swapped_discharge_labels() -> None:
    good = _de_morgan_nor()
    bad = Derivation(
        good.rule, good.conclusion, good.premises, ("h3", "h2"), None
    )
    with pytest.raises(DerivationError):
        check(bad)


def test_corruption_discharged_formula_mismatch() -> None:
    # Discharging a hypothesis whose formula is not the case formula.
    d = or_e(hyp("h1", Or(P, Q)), hyp("h2", P), hyp("h3", P), ("h2", "h3"))
    with pytest.raises(DerivationError, match="h3"):
        check(d)


def test_corruption_label_open_outside_its_branch() -> None:
    # The major premise itself uses the label being discharged.
    d = or_e(hyp("h2", Or(P, P)), hyp("h2", P), hyp("h3", P), ("h2", "h3"))
    with pytest.raises(DerivationError):
        check(d)


def test_corruption_double_discharge() -> None:
    inner = or_e(hyp("h1", Or(P, P)), hyp("h2", P), hyp("h3", P), ("h2", "h3"))
    outer = or_e(hyp("h0", Or(Or(P, P), Or(P, P))), inner, inner, ("h2", "h2"))
    with pytest.raises(DerivationError):
        check(outer)


def test_corruption_mutated_leaf() -> None:
    good = corpus()[1].derivation  # NN1 explosion: p, ~~p |- q
    assert soundness_check(good)
    bad = Derivation(
        good.rule,
        good.conclusion,
        (good.premises[0], hyp("h2", Neg(P))),
    )
    with pytest.raises(DerivationError):
        check(bad)
    assert not soundness_check(bad)


# ---------------------------------------------------------------------------
# Corpus


def test_corpus_names_are_unique_and_complete() -> None:
    entries = corpus()
    names = [e.name for e in entries]
    assert len(names) == len(set(names))
    assert len(entries) >= 8
    for required in (
        "nn2",
        "nn1-explosion",
        "deMorgan-nand-to-conj",
        "deMorgan-conj-to-nand",
        "deMorgan-nor-to-disj",
        "deMorgan-disj-to-nor",
    ):
        assert required in names


def test_corpus_checks_and_is_sound() -> None:
    for entry in corpus():
        seq = check(entry.derivation)
        assert isinstance(seq.open_assumptions, frozenset), entry.name
        assert soundness_check(entry.derivation), entry.name


@pytest.mark.parametrize(
    ("name", "sequent_text"),
    [
        ("nn2", "|- p | ~~p"),
        ("nn1-explosion", "p, ~~p |- q"),
        ("orE-roundtrip", "p | p |- p"),
        ("orI-orE-roundtrip", "p |- p"),
        ("deMorgan-and-L", "~(p & q) |- ~p"),
        ("deMorgan-nand-to-conj", "~(p & q) |- ~p & ~q"),
        ("deMorgan-conj-to-nand", "~p & ~q |- ~(p & q)"),
        ("deMorgan-nor-to-disj", "~(p | q) |- ~p | ~q"),
        ("deMorgan-disj-to-nor", "~p | ~q |- ~(p | q)"),
    ],
)
def test_corpus_establishes_expected_sequents(name, sequent_text) -> None:
    by_name = {e.name: e for e in corpus()}
    sequent = derivation_sequent(by_name[name].derivation)
    assert format_sequent(sequent) == sequent_text


def test_corpus_covers_every_rule() -> None:
    used: set[Rule] = set()

    def visit(d: Derivation) -> None:
        used.add(d.rule)
        for premise in d.premises:
            visit(premise)

    for entry in corpus():
        visit(entry.derivation)
    assert used == set(Rule)


# ---------------------------------------------------------------------------
# Search


def test_search_finds_axiom_at_depth_one() -> None:
    d = search(parse_sequent("|- p | ~~p"), depth=1)
    assert d is not None
    assert d.rule is Rule.NN2
    assert soundness_check(d)


def test_search_explosion_at_depth_two() -> None:
    d = search(parse_sequent("p, ~~p |- q"), depth=2)
    assert d is not None
    assert d.rule is Rule.NN1


def test_search_depth_bound_is_respected() -> None:
    assert search(parse_sequent("p, ~~p |- q"), depth=1) is None
    assert search(parse_sequent("~p, ~q |- ~(p & q)"), depth=1) is None


CURATED = (
    ("|- p | ~~p", Rule.NN2),
    ("p, ~~p |- q", Rule.NN1),
    ("~p, ~q |- ~(p & q)", Rule.NAND_I),
    ("~(p & q) |- ~p", Rule.NAND_E_L),
    ("~p |- ~(p | q)", Rule.NOR_I_L),
    ("~(p | q) |- ~p | ~q", Rule.NOR_E),
)


@pytest.mark.parametrize(("text", "root"), CURATED)
def test_search_solves_curated_sequents_within_depth_four(text, root) -> None:
    sequent = parse_sequent(text)
    d = search(sequent, depth=4)
    assert d is not None
    assert d.rule is root
    seq = check(d)
    assert seq.conclusion == sequent.conclusion
    assert seq.open_assumptions <= set(sequent.premises)
    assert soundness_check(d)


def test_search_none_when_no_derivation_exists() -> None:
    assert search(parse_sequent("p |- q"), depth=5) is None
    assert search(parse_sequent("|- p"), depth=5) is None
    assert search(parse_sequent("~~p |- p"), depth=5) is None


def test_search_is_deterministic() -> None:
    sequent = parse_sequent("~(p | q) |- ~p | ~q")
    first = search(sequent, depth=4)
    second = search(sequent, depth=4)
    assert first == second


def test_search_results_are_sound_on_random_sequents() -> None:
    rng = random.Random(93)
    found = 0
    for _ in range(250):
        sequent = random_sequent(rng, max_premises=2, max_depth=2)
        d = search(sequent, depth=3)
        if d is None:
            continue
        found += 1
        seq = check(d)
        assert seq.conclusion == sequent.conclusion
        assert seq.open_assumptions <= set(sequent.premises)
        assert soundness_check(d)
    assert found >= 25  # the sample is not degenerate (32 with this seed)


# ---------------------------------------------------------------------------
# JSON round trip


def test_json_roundtrip_preserves_corpus() -> None:
    for entry in corpus():
        blob = json.dumps(to_json_dict(entry.derivation))
        assert from_json_dict(json.loads(blob)) == entry.derivation


def test_json_emits_wire_rule_names() -> None:
    obj = to_json_dict(corpus()[0].derivation)
    assert obj["rule"] == "NN2"
    assert obj["conclusion"] == "p | ~~p"
    assert obj["premises"] == []


def test_json_discharge_shape() -> None:
    entry = next(e for e in corpus() if e.name == "orE-roundtrip")
    obj = to_json_dict(entry.derivation)
    assert obj["discharge"] == ["h2", "h3"]
    assert obj["premises"][1]["label"] == "h2"


@pytest.mark.parametrize(
    "obj",
    [
        "not an object",
        {"conclusion": "p"},
        {"rule": "Frobnicate", "conclusion": "p", "premises": []},
        {"rule": "Hyp", "conclusion": "p", "premises": []},  # missing label
        {"rule": "Hyp", "conclusion": "p", "premises": [], "label": ""},
        {"rule": "NN2", "conclusion": "p | ~~p", "premises": [],
         "label": "h1"},
        {"rule": "AndI", "conclusion": "p & q", "premises": [
            {"rule": "Hyp", "conclusion": "p", "premises": [], "label": "h1"},
            {"rule": "Hyp", "conclusion": "q", "premises": [], "label": "h2"},
        ], "discharge": ["h1", "h2"]},
        {"rule": "OrE", "conclusion": "p", "discharge": ["h2"], "premises": [
            {"rule": "Hyp", "conclusion": "p | p", "premises": [],
             "label": "h1"},
            {"rule": "Hyp", "conclusion": "p", "premises": [], "label": "h2"},
            {"rule": "Hyp", "conclusion": "p", "premises": [], "label": "h3"},
        ]},
    ],
)
def test_from_json_dict_rejects_malformed_input(obj) -> None:
    with pytest.raises(ProofFormatError):
        from_json_dict(obj)


def test_from_json_dict_propagates_formula_parse_errors() -> None:
    with pytest.raises(ParseError):
        from_json_dict({"rule": "NN2", "conclusion": "p | ~~", "premises": []})


def test_render_derivation_shows_structure() -> None:
    entry = next(e for e in corpus() if e.name == "orE-roundtrip")
    text = render_derivation(entry.derivation)
    assert "OrE" in text
    assert "[discharges h2, h3]" in text
    assert "Hyp [h2]" in text


def test_discharging_rules_constant() -> None:
    assert DISCHARGING_RULES == {Rule.OR_E, Rule.NOR_E}


def test_corpus_entry_is_a_plain_record() -> None:
    entry = corpus()[0]
    assert isinstance(entry, CorpusEntry)
    assert entry.name and entry.derivation.rule in set(Rule)
