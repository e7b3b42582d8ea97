"""Shared formula and sequent generators for the test suite.

Two flavours: a seeded ``random.Random`` generator for tests that need a
fixed, reproducible sample of a given size, and hypothesis strategies for
property tests that benefit from shrinking.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from cnl4.formula import And, Atom, Formula, Neg, Or, Sequent

DEFAULT_ATOMS = ("p", "q", "r")


def random_formula(
    rng: random.Random,
    max_depth: int,
    atoms: tuple[str, ...] = DEFAULT_ATOMS,
) -> Formula:
    """Return a random formula of connective depth at most ``max_depth``."""
    if max_depth <= 0 or rng.random() < 0.3:
        return Atom(rng.choice(atoms))
    kind = rng.randrange(3)
    if kind == 0:
        return Neg(random_formula(rng, max_depth - 1, atoms))
    left = random_formula(rng, max_depth - 1, atoms)
    right = random_formula(rng, max_depth - 1, atoms)
    return And(left, right) if kind == 1 else Or(left, right)


def random_sequent(
    rng: random.Random,
    max_premises: int = 2,
    max_depth: int = 3,
    atoms: tuple[str, ...] = ("p", "q"),
) -> Sequent:
    premises = tuple(
        random_formula(rng, max_depth, atoms)
        for _ in range(rng.randint(0, max_premises))
    )
    return Sequent(premises, random_formula(rng, max_depth, atoms))


def formula_strategy(
    atoms: tuple[str, ...] = DEFAULT_ATOMS,
    max_leaves: int = 16,
) -> st.SearchStrategy[Formula]:
    base = st.sampled_from([Atom(name) for name in atoms])
    return st.recursive(
        base,
        lambda sub: st.one_of(
            sub.map(Neg),
            st.tuples(sub, sub).map(lambda pair: And(pair[0], pair[1])),
            st.tuples(sub, sub).map(lambda pair: Or(pair[0], pair[1])),
        ),
        max_leaves=max_leaves,
    )
