"""Closed-form brace families, independent of the pullback pipeline.

Each family is a sequence of multilinear degree +1 operations on the free
expression algebra.  Arguments may be arbitrary homogeneous-or-not
expressions: evaluation expands every argument into its words and applies the
closed formula to each combination, so the extension beyond generators is
forced by linearity alone.

Term lists have a fixed order (documented per family) so that single-term
sign mutations are addressable for sensitivity checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    COMMUTATIVE,
    NONCOMMUTATIVE,
    Expr,
    Gen,
    Nabla,
    Word,
    gen_expr,
    word_degree,
)
from .combinatorics import koszul_sign, unshuffles
from .errors import ContractViolationError, InsufficientOrderError
from .series import (
    FACTORIAL,
    PLAIN,
    CoefficientVector,
    TruncatedSeries,
    invert,
    pair_coefficient,
)

KOSZUL = "koszul"
BORJESON = "borjeson"
GENERALIZED = "generalized"
TRIVIAL = "trivial"


def _nabla_term(
    flavor: str,
    coeff,
    head: Sequence[Word],
    wrapped: Sequence[Word],
    tail: Sequence[Word],
) -> Expr:
    """coeff * head-words * Nabla(concatenated wrapped words) * tail-words."""
    inner = tuple(a for w in wrapped for a in w)
    atoms = (
        tuple(a for w in head for a in w)
        + (Nabla(inner),)
        + tuple(a for w in tail for a in w)
    )
    return Expr.from_terms(flavor, [(atoms, coeff)])


def _koszul_terms(words: Sequence[Word]) -> list[Expr]:
    """Terms of the commutative brace, ordered by descending operator block
    size, then unshuffle: (-1)**(n-i) eps(sigma) Nabla(w_s1..w_si) w_s(i+1).."""
    n = len(words)
    parities = [word_degree(w) & 1 for w in words]
    terms = []
    for i in range(n, 0, -1):
        outer = -1 if (n - i) & 1 else 1
        for sigma in unshuffles(i, n - i):
            eps = koszul_sign(sigma, parities)
            head = [words[k - 1] for k in sigma[:i]]
            tail = [words[k - 1] for k in sigma[i:]]
            terms.append(_nabla_term(COMMUTATIVE, outer * eps, (), head, tail))
    return terms


def _borjeson_terms(words: Sequence[Word]) -> list[Expr]:
    """Terms of the noncommutative brace in display order: the full wrap, the
    wrap dropping the last factor, the wrap dropping the first (signed by the
    first factor's parity), and for n >= 3 the wrap dropping both."""
    n = len(words)
    if n == 1:
        return [_nabla_term(NONCOMMUTATIVE, 1, (), words, ())]
    s1 = -1 if word_degree(words[0]) & 1 else 1
    terms = [
        _nabla_term(NONCOMMUTATIVE, 1, (), words, ()),
        _nabla_term(NONCOMMUTATIVE, -1, (), words[:-1], words[-1:]),
        _nabla_term(NONCOMMUTATIVE, -s1, words[:1], words[1:], ()),
    ]
    if n >= 3:
        terms.append(
            _nabla_term(NONCOMMUTATIVE, s1, words[:1], words[1:-1], words[-1:])
        )
    return terms


def _generalized_commutative_terms(
    words: Sequence[Word], f: TruncatedSeries, c: CoefficientVector
) -> list[Expr]:
    """c_{n-i} f_i weighted unshuffle terms; same ordering as the Koszul list."""
    n = len(words)
    if n > f.order:
        raise InsufficientOrderError(f"arity {n} exceeds series order {f.order}")
    if n - 1 > c.r_max:
        raise InsufficientOrderError(f"arity {n} needs c up to r = {n - 1}")
    parities = [word_degree(w) & 1 for w in words]
    terms = []
    for i in range(n, 0, -1):
        weight = c[n - i] * f[i]
        for sigma in unshuffles(i, n - i):
            eps = koszul_sign(sigma, parities)
            head = [words[k - 1] for k in sigma[:i]]
            tail = [words[k - 1] for k in sigma[i:]]
            terms.append(_nabla_term(COMMUTATIVE, weight * eps, (), head, tail))
    return terms


def _generalized_noncommutative_terms(
    words: Sequence[Word],
    f: TruncatedSeries,
    g: TruncatedSeries,
    d_cache: dict,
) -> list[Expr]:
    """Contiguous terms a_1..a_s Nabla(a_{s+1}..a_{s+i}) a_{s+i+1}..a_n with
    weight f_i d(s, t) and the sign of moving the operator past the prefix."""
    n = len(words)
    if n > f.order:
        raise InsufficientOrderError(f"arity {n} exceeds series order {f.order}")
    terms = []
    for s in range(n):
        prefix_parity = sum(word_degree(w) for w in words[:s]) & 1
        sign = -1 if prefix_parity else 1
        for i in range(1, n - s + 1):
            t = n - s - i
            if (s, t) not in d_cache:
                d_cache[(s, t)] = pair_coefficient(f, g, s, t)
            weight = f[i] * d_cache[(s, t)] * sign
            if not weight:
                continue
            terms.append(
                _nabla_term(
                    NONCOMMUTATIVE,
                    weight,
                    words[:s],
                    words[s : s + i],
                    words[s + i :],
                )
            )
    return terms


@dataclass
class BraceFamily:
    """A named family of braces together with its expression flavor.

    ``flip`` negates one term of the closed form at one arity, addressed as
    (arity, term index into the documented term order); it exists so the
    axiom checkers can demonstrate sensitivity to single sign errors.
    """

    kind: str
    flavor: str
    f: Optional[TruncatedSeries] = None
    c: Optional[CoefficientVector] = None
    flip: Optional[tuple[int, int]] = None
    _g: Optional[TruncatedSeries] = None
    _d_cache: dict = field(default_factory=dict)

    def _single_word_terms(self, words: Sequence[Word]) -> list[Expr]:
        if self.kind == KOSZUL:
            terms = _koszul_terms(words)
        elif self.kind == BORJESON:
            terms = _borjeson_terms(words)
        elif self.kind == GENERALIZED:
            if self.flavor == COMMUTATIVE:
                terms = _generalized_commutative_terms(words, self.f, self.c)
            else:
                terms = _generalized_noncommutative_terms(
                    words, self.f, self._g, self._d_cache
                )
        elif self.kind == TRIVIAL:
            if len(words) == 1:
                terms = [_nabla_term(self.flavor, 1, (), words, ())]
            else:
                terms = []
        else:
            raise ContractViolationError(f"unknown family kind {self.kind!r}")
        if self.flip is not None and self.flip[0] == len(words):
            idx = self.flip[1]
            if idx < len(terms):
                terms = list(terms)
                terms[idx] = -terms[idx]
        return terms

    def brace(self, args: Sequence[Expr]) -> Expr:
        """Evaluate the arity-len(args) brace, multilinearly in every slot."""
        if not args:
            raise ContractViolationError("braces need at least one argument")
        for a in args:
            if a.flavor != self.flavor:
                raise ContractViolationError(
                    f"{self.kind} family expects {self.flavor} arguments"
                )
        combos = [((), Fraction(1))]
        for a in args:
            combos = [
                (words + (w,), coeff * cw)
                for words, coeff in combos
                for w, cw in a.terms.items()
            ]
        total = Expr.zero(self.flavor)
        for words, coeff in combos:
            for term in self._single_word_terms(words):
                total = total + term.scale(coeff)
        return total

    def __call__(self, *args: Expr) -> Expr:
        return self.brace(args)


def koszul_family(flip: Optional[tuple[int, int]] = None) -> BraceFamily:
    return BraceFamily(KOSZUL, COMMUTATIVE, flip=flip)


def borjeson_family(flip: Optional[tuple[int, int]] = None) -> BraceFamily:
    return BraceFamily(BORJESON, NONCOMMUTATIVE, flip=flip)


def trivial_family(flavor: str) -> BraceFamily:
    return BraceFamily(TRIVIAL, flavor)


def generalized_family(
    f: TruncatedSeries, c: CoefficientVector, flavor: str
) -> BraceFamily:
    """Family weighted by a series and its derived coefficient vector.

    The commutative closed form consumes c directly.  The noncommutative one
    needs the two-sided weights d(s, t), which a single-index vector cannot
    carry, so they are derived from f and its inverse; c is still required to
    open with the inverse's linear coefficient as a consistency check.
    """
    expected = FACTORIAL if flavor == COMMUTATIVE else PLAIN
    if f.convention != expected:
        raise ContractViolationError(
            f"{flavor} flavor needs a {expected}-convention series"
        )
    g = invert(f)
    if c.values and c[0] != g[1]:
        raise ContractViolationError("coefficient vector does not open with g_1")
    return BraceFamily(GENERALIZED, flavor, f=f, c=c, _g=g)


def _check_arity(generators: Sequence[Gen]) -> None:
    if len(generators) < 1:
        raise ContractViolationError("braces need at least one generator")


def koszul_brace(generators: Sequence[Gen]) -> Expr:
    """The commutative brace on the given generators (2^n - 1 term shapes)."""
    _check_arity(generators)
    fam = koszul_family()
    return fam.brace([gen_expr(g, COMMUTATIVE) for g in generators])


def borjeson_brace(generators: Sequence[Gen]) -> Expr:
    """The noncommutative brace: three terms at n = 2, four for n >= 3."""
    _check_arity(generators)
    fam = borjeson_family()
    return fam.brace([gen_expr(g, NONCOMMUTATIVE) for g in generators])


def generalized_brace(
    generators: Sequence[Gen],
    f: TruncatedSeries,
    c: CoefficientVector,
    flavor: str,
) -> Expr:
    """The series-weighted brace in either flavor."""
    _check_arity(generators)
    fam = generalized_family(f, c, flavor)
    return fam.brace([gen_expr(g, flavor) for g in generators])
