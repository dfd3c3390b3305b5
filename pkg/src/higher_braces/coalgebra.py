"""Symmetric and tensor coalgebra machinery and the pullback pipeline.

Blocks hold one canonical word per slot.  The commutative flavor models the
symmetric coalgebra: factors are kept sorted with the Koszul sign absorbed
into the coefficient and a repeated odd factor kills the block.  The
noncommutative flavor models the tensor coalgebra: slots keep their order and
splittings are contiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .algebra import (
    COMMUTATIVE,
    FLAVORS,
    NONCOMMUTATIVE,
    Expr,
    Gen,
    Nabla,
    Word,
    _canonical_word,
    word_degree,
    word_key,
)
from .combinatorics import compositions, koszul_sign, set_partitions, sort_with_sign, unshuffles
from .errors import ContractViolationError, InsufficientOrderError
from .series import FACTORIAL, PLAIN, TruncatedSeries, invert

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Block:
    """A monomial of the coalgebra: an ordered tuple of canonical words."""

    flavor: str
    factors: tuple[Word, ...]

    def __len__(self) -> int:
        return len(self.factors)


def _series_convention_for(flavor: str) -> str:
    return FACTORIAL if flavor == COMMUTATIVE else PLAIN


def _make_block(factors: Sequence[Word], flavor: str):
    """Canonicalize a factor tuple; returns (Block, sign) or None if zero."""
    if flavor == NONCOMMUTATIVE:
        return Block(flavor, tuple(factors)), 1
    keys = [word_key(w) for w in factors]
    parities = [word_degree(w) & 1 for w in factors]
    order, sign, vanished = sort_with_sign(keys, parities)
    if vanished:
        return None
    return Block(flavor, tuple(factors[i] for i in order)), sign


class CoElem:
    """Exact-rational combination of blocks; immutable by convention."""

    __slots__ = ("flavor", "terms")

    def __init__(self, flavor: str, terms: dict):
        if flavor not in FLAVORS:
            raise ContractViolationError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.terms = terms

    @classmethod
    def zero(cls, flavor: str) -> "CoElem":
        return cls(flavor, {})

    @classmethod
    def from_terms(cls, flavor: str, raw) -> "CoElem":
        """Normalize (factor words, coefficient) pairs; words may be raw atoms."""
        terms: dict = {}
        for factors, coeff in raw:
            coeff = Fraction(coeff)
            if not coeff:
                continue
            words = []
            dead = False
            for factor in factors:
                got = _canonical_word(tuple(factor), flavor)
                if got is None:
                    dead = True
                    break
                word, sign = got
                coeff *= sign
                words.append(word)
            if dead:
                continue
            made = _make_block(words, flavor)
            if made is None:
                continue
            block, sign = made
            c = terms.get(block, _ZERO) + sign * coeff
            if c:
                terms[block] = c
            elif block in terms:
                del terms[block]
        return cls(flavor, terms)

    @classmethod
    def from_expr_factors(cls, factors: Sequence[Expr], flavor: str) -> "CoElem":
        """Multilinear expansion of expression-valued slots into word blocks."""
        raw = [((), Fraction(1))]
        for factor in factors:
            if factor.flavor != flavor:
                raise ContractViolationError("factor flavor mismatch")
            raw = [
                (words + (w,), c * cw)
                for words, c in raw
                for w, cw in factor.terms.items()
            ]
        return cls.from_terms(flavor, raw)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoElem):
            return NotImplemented
        return self.flavor == other.flavor and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.flavor, frozenset(self.terms.items())))

    def __add__(self, other: "CoElem") -> "CoElem":
        if self.flavor != other.flavor:
            raise ContractViolationError("flavor mismatch in +")
        terms = dict(self.terms)
        for block, c in other.terms.items():
            s = terms.get(block, _ZERO) + c
            if s:
                terms[block] = s
            elif block in terms:
                del terms[block]
        return CoElem(self.flavor, terms)

    def __sub__(self, other: "CoElem") -> "CoElem":
        return self + other.scale(-1)

    def scale(self, coeff) -> "CoElem":
        coeff = Fraction(coeff)
        if not coeff:
            return CoElem.zero(self.flavor)
        return CoElem(self.flavor, {b: c * coeff for b, c in self.terms.items()})

    def __repr__(self) -> str:
        join = " (.) " if self.flavor == COMMUTATIVE else " (x) "
        from .render import _word_text

        parts = []
        for block, c in self.terms.items():
            body = join.join(_word_text(w) for w in block.factors)
            parts.append(f"{c} * [{body}]")
        return "CoElem(" + (" + ".join(parts) or "0") + ")"


def deconcatenate(block: Block) -> list[tuple[Block, Block, Fraction]]:
    """All two-sided splittings of a block with their Koszul signs.

    Symmetric flavor: one triple per (j, n-j)-unshuffle of the factors;
    tensor flavor: the n-1 contiguous cuts, all with sign +1.  A single
    factor splits into nothing.
    """
    n = len(block.factors)
    out: list[tuple[Block, Block, Fraction]] = []
    if n < 2:
        return out
    if block.flavor == NONCOMMUTATIVE:
        for j in range(1, n):
            out.append(
                (
                    Block(block.flavor, block.factors[:j]),
                    Block(block.flavor, block.factors[j:]),
                    Fraction(1),
                )
            )
        return out
    parities = [word_degree(w) & 1 for w in block.factors]
    for j in range(1, n):
        for sigma in unshuffles(j, n - j):
            eps = koszul_sign(sigma, parities)
            left = tuple(block.factors[k - 1] for k in sigma[:j])
            right = tuple(block.factors[k - 1] for k in sigma[j:])
            out.append(
                (Block(block.flavor, left), Block(block.flavor, right), Fraction(eps))
            )
    return out


def extend_morphism(
    generators: Sequence[Gen], f: TruncatedSeries, flavor: str
) -> CoElem:
    """Image of the top generator block under the coalgebra morphism of f.

    Symmetric flavor sums over unordered set partitions, each weighted by the
    product of f-coefficients of the block sizes and the Koszul sign of
    regrouping; the block-count factorial is already cancelled against the
    ordered-listing multiplicity.  Tensor flavor sums over compositions with
    contiguous blocks and no signs.
    """
    n = len(generators)
    if n < 1:
        raise ContractViolationError("need at least one generator")
    if f.convention != _series_convention_for(flavor):
        raise ContractViolationError(
            f"{flavor} flavor needs a {_series_convention_for(flavor)}-convention series"
        )
    if n > f.order:
        raise InsufficientOrderError(f"n = {n} exceeds series order {f.order}")
    parities = [g.degree & 1 for g in generators]
    raw = []
    if flavor == COMMUTATIVE:
        for partition in set_partitions(n):
            perm = tuple(pos for blk in partition for pos in blk)
            eps = koszul_sign(perm, parities)
            coeff = Fraction(eps)
            for blk in partition:
                coeff *= f[len(blk)]
            factors = tuple(
                tuple(generators[pos - 1] for pos in blk) for blk in partition
            )
            raw.append((factors, coeff))
    else:
        for parts in compositions(n):
            coeff = Fraction(1)
            factors = []
            start = 0
            for size in parts:
                coeff *= f[size]
                factors.append(tuple(generators[start : start + size]))
                start += size
            raw.append((tuple(factors), coeff))
    return CoElem.from_terms(flavor, raw)


def coderive_nabla(x: CoElem) -> CoElem:
    """The operator as a coderivation: apply it in each slot with the sign of
    moving a degree +1 map past the preceding factors."""
    raw = []
    for block, coeff in x.terms.items():
        prefix_parity = 0
        for i, factor in enumerate(block.factors):
            sign = -1 if prefix_parity & 1 else 1
            prefix_parity += word_degree(factor)
            if len(factor) == 1 and isinstance(factor[0], Nabla):
                continue
            new_factor = (Nabla(factor),)
            factors = block.factors[:i] + (new_factor,) + block.factors[i + 1 :]
            raw.append((factors, coeff * sign))
    return CoElem.from_terms(x.flavor, raw)


def project_series(x: CoElem, g: TruncatedSeries) -> Expr:
    """Collapse each k-slot block to g_k times the product of its factors."""
    if g.convention != _series_convention_for(x.flavor):
        raise ContractViolationError(
            f"{x.flavor} flavor needs a {_series_convention_for(x.flavor)}-convention series"
        )
    raw = []
    for block, coeff in x.terms.items():
        k = len(block.factors)
        if k > g.order:
            raise InsufficientOrderError(f"block of {k} slots exceeds order {g.order}")
        word = tuple(a for factor in block.factors for a in factor)
        raw.append((word, coeff * g[k]))
    return Expr.from_terms(x.flavor, raw)


def pullback_brace(
    generators: Sequence[Gen], f: TruncatedSeries, flavor: str
) -> Expr:
    """The n-th brace of the pulled-back linear field: project through the
    inverse after deriving the morphism image of the generator block."""
    image = extend_morphism(generators, f, flavor)
    return project_series(coderive_nabla(image), invert(f))


def pairing(
    labels: Sequence[int],
    generators: Sequence[Gen],
    parities: Sequence[int] | None = None,
) -> Fraction:
    """Graded pairing of a dual-basis block against a generator block.

    ``labels[i]`` names the generator index the i-th functional is dual to.
    Each matching permutation contributes the Koszul sign of interleaving the
    functionals with the permuted generators.
    """
    n = len(labels)
    if len(generators) != n:
        raise ContractViolationError("pairing needs equally long blocks")
    if parities is None:
        parities = [g.degree & 1 for g in generators]
    elif len(parities) != n:
        raise ContractViolationError("parities length mismatch")
    parity_of_index = {g.index: p & 1 for g, p in zip(generators, parities)}
    if any(lab not in parity_of_index for lab in labels):
        return Fraction(0)
    functional_parities = [parity_of_index[lab] for lab in labels]
    combined = list(functional_parities) + [p & 1 for p in parities]
    total = 0
    for sigma in permutations(range(n)):
        if any(labels[i] != generators[sigma[i]].index for i in range(n)):
            continue
        rho = []
        for i in range(n):
            rho.append(i + 1)
            rho.append(n + sigma[i] + 1)
        total += koszul_sign(tuple(rho), combined)
    return Fraction(total)


def diagonal(generator: Gen, n: int, flavor: str) -> CoElem:
    """The n-fold diagonal of a single generator.

    Symmetric flavor carries 1/n! and vanishes for odd generators at n >= 2;
    tensor flavor is the bare n-fold block.
    """
    if n < 1:
        raise ContractViolationError("diagonal needs n >= 1")
    coeff = Fraction(1, math.factorial(n)) if flavor == COMMUTATIVE else Fraction(1)
    factors = tuple(((generator,),) * n)
    return CoElem.from_terms(flavor, [(factors, coeff)])
