"""Shared helpers for the test suite: independent oracles, random data, and
the two-sided coproduct bookkeeping used by the coalgebra law tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from higher_braces import (
    Block,
    CoElem,
    Expr,
    Gen,
    Nabla,
    coderive_nabla,
    deconcatenate,
    extend_morphism,
    gens_from_parities,
    word_degree,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def sign_by_adjacent_swaps(perm, parities):
    """Koszul sign oracle: bubble the permutation into the identity one
    adjacent transposition at a time, paying -1 whenever both symbols are odd."""
    seq = list(perm)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                if parities[seq[i] - 1] & 1 and parities[seq[i + 1] - 1] & 1:
                    sign = -sign
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                changed = True
    return sign


def random_expr(rng: random.Random, flavor: str, n_terms=3, max_len=3, depth=2) -> Expr:
    # one degree per index, as in any well-formed generator context
    degree_of = {i: rng.randint(-1, 2) for i in range(1, 5)}

    def atom(d):
        if d > 0 and rng.random() < 0.35:
            return Nabla(tuple(atom(d - 1) for _ in range(rng.randint(1, 2))))
        index = rng.randint(1, 4)
        return Gen(index, degree_of[index])

    raw = []
    for _ in range(rng.randint(1, n_terms)):
        word = tuple(atom(depth) for _ in range(rng.randint(1, max_len)))
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        raw.append((word, coeff))
    return Expr.from_terms(flavor, raw)


def gen_strategy():
    return st.builds(Gen, index=st.integers(1, 4), degree=st.integers(-1, 2))


def atom_strategy(depth: int):
    if depth <= 0:
        return gen_strategy()
    return st.one_of(
        gen_strategy(),
        st.builds(
            lambda w: Nabla(tuple(w)),
            st.lists(atom_strategy(depth - 1), min_size=1, max_size=2),
        ),
    )


def word_strategy(depth=2, max_len=3):
    return st.lists(atom_strategy(depth), min_size=1, max_size=max_len).map(tuple)


def coeff_strategy():
    return st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool)


def expr_strategy(flavor: str, depth=2, max_terms=3):
    return st.lists(
        st.tuples(word_strategy(depth=depth), coeff_strategy()),
        min_size=0,
        max_size=max_terms,
    ).map(lambda raw: Expr.from_terms(flavor, raw))


def single_word_expr_strategy(flavor: str, depth=2):
    return st.tuples(word_strategy(depth=depth), coeff_strategy()).map(
        lambda wc: Expr.from_terms(flavor, [wc])
    )


def generator_block(parities, flavor: str) -> Block:
    """The canonical block a_1 * ... * a_n with one generator per slot."""
    gens = gens_from_parities(parities)
    elem = CoElem.from_terms(flavor, [(tuple((g,) for g in gens), 1)])
    ((block, coeff),) = elem.terms.items()
    assert coeff == 1
    return block


def deconcat_coelem(x: CoElem) -> dict:
    """Linear extension of deconcatenate to a dict keyed by block pairs."""
    acc: dict = {}
    for block, c in x.terms.items():
        for left, right, sign in deconcatenate(block):
            key = (left, right)
            s = acc.get(key, Fraction(0)) + c * sign
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
    return acc


def _block_generators(block: Block):
    gens = []
    for word in block.factors:
        assert len(word) == 1 and isinstance(word[0], Gen)
        gens.append(word[0])
    return gens


def morphism_on_pairs(pairs: dict, f, flavor: str) -> dict:
    """Apply the coalgebra morphism to both halves of every block pair."""
    out: dict = {}
    for (left, right), c in pairs.items():
        img_l = extend_morphism(_block_generators(left), f, flavor)
        img_r = extend_morphism(_block_generators(right), f, flavor)
        for bl, cl in img_l.terms.items():
            for br, cr in img_r.terms.items():
                key = (bl, br)
                s = out.get(key, Fraction(0)) + c * cl * cr
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return out


def block_degree(block: Block) -> int:
    return sum(word_degree(word) for word in block.factors)


def coderive_on_pairs(pairs: dict, flavor: str) -> dict:
    """(derive (x) id + id (x) derive) with the sign of jumping the left half."""
    out: dict = {}

    def add(key, value):
        s = out.get(key, Fraction(0)) + value
        if s:
            out[key] = s
        elif key in out:
            del out[key]

    for (left, right), c in pairs.items():
        left_elem = CoElem(flavor, {left: Fraction(1)})
        right_elem = CoElem(flavor, {right: Fraction(1)})
        for bl, cl in coderive_nabla(left_elem).terms.items():
            add((bl, right), c * cl)
        jump = -1 if block_degree(left) & 1 else 1
        for br, cr in coderive_nabla(right_elem).terms.items():
            add((left, br), c * cr * jump)
    return out
