"""Free graded (non)commutative expressions over a square-zero operator.

Elements are exact-rational linear combinations of words of atoms; an atom is
either a generator or an uninterpreted application ``Nabla(word)`` of the
degree +1 operator.  The one sign convention used everywhere: transposing two
adjacent symbols x, y costs (-1)**(|x||y|), and the wrapped operator itself
has degree +1.  Commutative words are kept sorted in a fixed total atom order
with the accumulated sign absorbed into the coefficient, so equality of
expressions is equality of term maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence, Union

from .combinatorics import sort_with_sign
from .errors import ContractViolationError

COMMUTATIVE = "commutative"
NONCOMMUTATIVE = "noncommutative"
FLAVORS = (COMMUTATIVE, NONCOMMUTATIVE)

Scalar = Fraction


@dataclass(frozen=True)
class Gen:
    """A free generator; only the parity of ``degree`` influences signs."""

    index: int
    degree: int = 0


@dataclass(frozen=True)
class Nabla:
    """The operator applied to a nonempty word, forming a fresh atom."""

    word: tuple["Atom", ...]

    def __post_init__(self):
        if not self.word:
            raise ContractViolationError("Nabla needs a nonempty word")


Atom = Union[Gen, Nabla]
Word = tuple  # tuple[Atom, ...]


@lru_cache(maxsize=None)
def atom_degree(atom: Atom) -> int:
    if isinstance(atom, Gen):
        return atom.degree
    return word_degree(atom.word) + 1


def word_degree(word: Word) -> int:
    return sum(atom_degree(a) for a in word)


@lru_cache(maxsize=None)
def atom_key(atom: Atom):
    """Total order on atoms: operator atoms first, generators by index."""
    if isinstance(atom, Nabla):
        return (0, word_key(atom.word))
    return (1, atom.index, atom.degree)


def word_key(word: Word):
    """Total order on words: by length, then atomwise."""
    return (len(word), tuple(atom_key(a) for a in word))


def _canonical_atom(atom: Atom, flavor: str):
    """Return (atom, sign) with any inner word canonicalized, or None if zero.

    A Nabla whose word is a single Nabla atom is the square of the operator
    and vanishes.
    """
    if isinstance(atom, Gen):
        return atom, 1
    inner = _canonical_word(atom.word, flavor)
    if inner is None:
        return None
    word, sign = inner
    if len(word) == 1 and isinstance(word[0], Nabla):
        return None
    return Nabla(word), sign


def _canonical_word(atoms: Sequence[Atom], flavor: str):
    """Return (word, sign) in canonical form, or None if the word is zero."""
    if not atoms:
        raise ContractViolationError("words must be nonempty")
    sign = 1
    fixed = []
    for atom in atoms:
        got = _canonical_atom(atom, flavor)
        if got is None:
            return None
        atom, s = got
        sign *= s
        fixed.append(atom)
    if flavor == NONCOMMUTATIVE:
        return tuple(fixed), sign
    keys = [atom_key(a) for a in fixed]
    parities = [atom_degree(a) & 1 for a in fixed]
    order, s, vanished = sort_with_sign(keys, parities)
    if vanished:
        return None
    return tuple(fixed[i] for i in order), sign * s


class Expr:
    """Exact-rational combination of canonical words; immutable by convention."""

    __slots__ = ("flavor", "terms")

    def __init__(self, flavor: str, terms: dict):
        if flavor not in FLAVORS:
            raise ContractViolationError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.terms = terms

    @classmethod
    def zero(cls, flavor: str) -> "Expr":
        return cls(flavor, {})

    @classmethod
    def from_terms(cls, flavor: str, raw) -> "Expr":
        """Normalize a list of (atoms, coefficient) pairs into an expression."""
        terms: dict = {}
        for atoms, coeff in raw:
            coeff = Fraction(coeff)
            if not coeff:
                continue
            got = _canonical_word(tuple(atoms), flavor)
            if got is None:
                continue
            word, sign = got
            c = terms.get(word, _ZERO) + sign * coeff
            if c:
                terms[word] = c
            elif word in terms:
                del terms[word]
        return cls(flavor, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """The common degree of all words, or None for zero / mixed degrees."""
        degs = {word_degree(w) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self, degree=None) -> bool:
        degs = {word_degree(w) for w in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    def coefficient(self, atoms: Sequence[Atom]) -> Fraction:
        """Coefficient of the given word after canonicalization."""
        got = _canonical_word(tuple(atoms), self.flavor)
        if got is None:
            return _ZERO
        word, sign = got
        return sign * self.terms.get(word, _ZERO)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return self.flavor == other.flavor and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.flavor, frozenset(self.terms.items())))

    def __add__(self, other: "Expr") -> "Expr":
        if self.flavor != other.flavor:
            raise ContractViolationError("flavor mismatch in +")
        terms = dict(self.terms)
        for word, c in other.terms.items():
            s = terms.get(word, _ZERO) + c
            if s:
                terms[word] = s
            elif word in terms:
                del terms[word]
        return Expr(self.flavor, terms)

    def __sub__(self, other: "Expr") -> "Expr":
        return self + (-other)

    def __neg__(self) -> "Expr":
        return self.scale(-1)

    def scale(self, coeff) -> "Expr":
        coeff = Fraction(coeff)
        if not coeff:
            return Expr.zero(self.flavor)
        return Expr(self.flavor, {w: c * coeff for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Expr):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __repr__(self) -> str:
        from .render import render_text

        return f"Expr[{self.flavor}]({render_text(self)})"


_ZERO = Fraction(0)


def normalize(raw, flavor: str) -> Expr:
    """Canonical form of a raw term list; the single choke point for rewriting."""
    return Expr.from_terms(flavor, raw)


def multiply(e1: Expr, e2: Expr) -> Expr:
    """Bilinear product: concatenate words, then normalize."""
    if e1.flavor != e2.flavor:
        raise ContractViolationError("cannot multiply expressions of different flavor")
    raw = []
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            raw.append((w1 + w2, c1 * c2))
    return Expr.from_terms(e1.flavor, raw)


def apply_nabla(e: Expr) -> Expr:
    """Apply the square-zero operator linearly, wrapping each word as an atom."""
    raw = []
    for word, c in e.terms.items():
        if len(word) == 1 and isinstance(word[0], Nabla):
            continue
        raw.append(((Nabla(word),), c))
    return Expr.from_terms(e.flavor, raw)


def gens_from_parities(parities: Sequence[int]) -> tuple[Gen, ...]:
    """Generators a_1..a_n with the given degrees (0/1 parities in practice)."""
    return tuple(Gen(i + 1, int(p)) for i, p in enumerate(parities))


def word_expr(atoms: Sequence[Atom], flavor: str, coeff=1) -> Expr:
    return Expr.from_terms(flavor, [(tuple(atoms), coeff)])


def gen_expr(g: Gen, flavor: str) -> Expr:
    return word_expr((g,), flavor)


def prod_exprs(factors: Sequence[Expr]) -> Expr:
    if not factors:
        raise ContractViolationError("empty product has no unit here")
    return reduce(multiply, factors)
