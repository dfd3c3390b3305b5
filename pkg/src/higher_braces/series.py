"""Truncated one-variable formal power series over exact rationals.

A series has zero constant term and a fixed truncation order N.  Two storage
conventions coexist and are never mixed silently: ``factorial`` stores f_k
for the map sum(f_k a^k / k!) (the commutative side), ``plain`` stores the
literal coefficients of sum(f_k a^k) (the noncommutative side).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinatorics import compositions
from .errors import (
    ContractViolationError,
    InsufficientOrderError,
    SingularSeriesError,
    UsageError,
)

FACTORIAL = "factorial"
PLAIN = "plain"
CONVENTIONS = (FACTORIAL, PLAIN)

DEFAULT_ORDER = 16

PRESETS = (
    "exp_minus_one",
    "log_one_plus",
    "geometric",
    "alt_geometric",
    "identity",
)


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_1..c_N of a constant-free series in one convention."""

    convention: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ContractViolationError(f"unknown convention {self.convention!r}")
        if not self.coeffs:
            raise ContractViolationError("truncation order must be at least 1")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        """1-based coefficient access: series[k] is the stored k-th coefficient."""
        if not 1 <= k <= self.order:
            raise InsufficientOrderError(
                f"coefficient {k} beyond truncation order {self.order}"
            )
        return self.coeffs[k - 1]

    def plain_coeffs(self) -> list[Fraction]:
        if self.convention == PLAIN:
            return list(self.coeffs)
        return [c / math.factorial(k) for k, c in enumerate(self.coeffs, start=1)]

    def with_convention(self, convention: str) -> "TruncatedSeries":
        if convention == self.convention:
            return self
        if convention == PLAIN:
            return TruncatedSeries(PLAIN, tuple(self.plain_coeffs()))
        coeffs = tuple(
            c * math.factorial(k) for k, c in enumerate(self.plain_coeffs(), start=1)
        )
        return TruncatedSeries(FACTORIAL, coeffs)


@dataclass(frozen=True)
class CoefficientVector:
    """Derived coefficients c_0..c_R; c_0 always equals the linear coefficient g_1."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(c) for c in self.values))

    @property
    def r_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, r: int) -> Fraction:
        if not 0 <= r <= self.r_max:
            raise InsufficientOrderError(f"c_{r} beyond available r_max {self.r_max}")
        return self.values[r]


def _mul_trunc(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    # index k-1 holds the coefficient of a^k; both inputs have zero constant term
    out = [Fraction(0)] * order
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            k = i + j + 1
            if k >= order:
                break
            if bj:
                out[k] += ai * bj
    return out


def _compose_plain(
    outer: list[Fraction], inner: list[Fraction], order: int
) -> list[Fraction]:
    out = [Fraction(0)] * order
    power = list(inner[:order]) + [Fraction(0)] * (order - len(inner))
    for k in range(1, order + 1):
        c = outer[k - 1] if k <= len(outer) else Fraction(0)
        if c:
            for m in range(order):
                if power[m]:
                    out[m] += c * power[m]
        if k < order:
            power = _mul_trunc(power, inner, order)
    return out


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Exact coefficients of outer(inner(a)) truncated to the common order."""
    if outer.order != inner.order:
        raise ContractViolationError("compose needs matching truncation orders")
    if outer.convention != inner.convention:
        raise ContractViolationError("compose needs matching conventions")
    plain = _compose_plain(outer.plain_coeffs(), inner.plain_coeffs(), outer.order)
    return TruncatedSeries(PLAIN, tuple(plain)).with_convention(outer.convention)


def identity_series(order: int, convention: str = PLAIN) -> TruncatedSeries:
    coeffs = [Fraction(0)] * order
    coeffs[0] = Fraction(1)
    return TruncatedSeries(convention, tuple(coeffs))


@lru_cache(maxsize=512)
def invert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse, solved order by order from compose(f, g) = a.

    Values are immutable, so results are memoized; checkers and pipelines
    invert the same series over and over.
    """
    p = f.plain_coeffs()
    if not p[0]:
        raise SingularSeriesError("series with zero linear coefficient is not invertible")
    order = f.order
    q = [Fraction(0)] * order
    q[0] = 1 / p[0]
    for m in range(2, order + 1):
        residue = _compose_plain(p, q, m)[m - 1]
        q[m - 1] = -residue / p[0]
    return TruncatedSeries(PLAIN, tuple(q)).with_convention(f.convention)


def preset(name: str, order: int = DEFAULT_ORDER, convention: str = FACTORIAL) -> TruncatedSeries:
    """One of the named series, exactly, in the requested convention."""
    if order < 1:
        raise ContractViolationError("truncation order must be at least 1")
    if convention not in CONVENTIONS:
        raise ContractViolationError(f"unknown convention {convention!r}")
    ks = range(1, order + 1)
    if name == "exp_minus_one":
        base = TruncatedSeries(FACTORIAL, tuple(Fraction(1) for _ in ks))
    elif name == "log_one_plus":
        base = TruncatedSeries(
            FACTORIAL, tuple(Fraction((-1) ** (k - 1) * math.factorial(k - 1)) for k in ks)
        )
    elif name == "geometric":
        base = TruncatedSeries(PLAIN, tuple(Fraction(1) for _ in ks))
    elif name == "alt_geometric":
        base = TruncatedSeries(PLAIN, tuple(Fraction((-1) ** (k - 1)) for k in ks))
    elif name == "identity":
        base = identity_series(order, PLAIN)
    else:
        raise UsageError(f"unknown preset {name!r}")
    return base.with_convention(convention)


def _check_inverse_pair(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.convention != g.convention or f.order != g.order:
        raise ContractViolationError("f and g must share order and convention")
    if invert(f) != g:
        raise ContractViolationError("g is not the compositional inverse of f")


def c_from_series(f: TruncatedSeries, g: TruncatedSeries, r_max: int) -> CoefficientVector:
    """c_r as the r-th derivative at 0 of g'(f(a)), by exact series algebra.

    The analytic route: differentiate the inverse termwise, compose with f,
    and read off scaled coefficients.  Checks that g really inverts f.
    """
    _check_inverse_pair(f, g)
    if r_max >= f.order:
        raise InsufficientOrderError(
            f"r_max {r_max} needs order > r_max, have {f.order}"
        )
    pf = f.plain_coeffs()
    pg = g.plain_coeffs()
    # g'(a) has coefficients (j+1) g_{j+1} of a^j, constant term included
    dg = [(j + 1) * pg[j] for j in range(len(pg))]
    order = r_max + 1 if r_max >= 1 else 1
    tail = _compose_plain(dg[1:], pf, order)
    values = [dg[0]]
    for r in range(1, r_max + 1):
        values.append(math.factorial(r) * tail[r - 1])
    return CoefficientVector(tuple(values))


def c_closed_form(f: TruncatedSeries, g: TruncatedSeries, r: int) -> Fraction:
    """The same c_r from the finite composition sum over g_k f_{i_2}..f_{i_k}.

    For each ordered tuple (i_2..i_k) of positive integers summing to r the
    summand is g_k * f_{i_2}..f_{i_k} / (k-1)! * r! / (i_2!..i_k!); r = 0
    degenerates to g_1.  Stored coefficients are converted to the factorial
    convention, which is the one the sum is written in.
    """
    _check_inverse_pair(f, g)
    if r >= f.order:
        raise InsufficientOrderError(f"c_{r} needs order > {r}, have {f.order}")
    ff = f.with_convention(FACTORIAL)
    gg = g.with_convention(FACTORIAL)
    total = Fraction(0)
    r_fact = math.factorial(r)
    for parts in compositions(r):
        k = len(parts) + 1
        term = gg[k] / math.factorial(k - 1)
        for i in parts:
            term *= ff[i]
        denom = 1
        for i in parts:
            denom *= math.factorial(i)
        total += term * Fraction(r_fact, denom)
    return total


def pair_coefficient(f: TruncatedSeries, g: TruncatedSeries, s: int, t: int) -> Fraction:
    """Weight of a term with s factors left and t factors right of the operator
    in the noncommutative pullback:

        d(s, t) = sum over u, v of g_{u+v+1} * (sum over compositions of s
        into u parts of the f-product) * (same for t into v parts).

    Plain convention only; d(0,0) = g_1 and d is symmetric in (s, t).
    """
    if f.convention != PLAIN or g.convention != PLAIN:
        raise ContractViolationError("pair coefficients live on the plain side")
    _check_inverse_pair(f, g)
    if s + t + 1 > g.order:
        raise InsufficientOrderError(
            f"d({s},{t}) needs order >= {s + t + 1}, have {g.order}"
        )

    def weights(m: int) -> dict[int, Fraction]:
        acc: dict[int, Fraction] = {}
        for parts in compositions(m):
            w = Fraction(1)
            for i in parts:
                w *= f[i]
            acc[len(parts)] = acc.get(len(parts), Fraction(0)) + w
        return acc

    left = weights(s)
    right = weights(t)
    total = Fraction(0)
    for u, wu in left.items():
        for v, wv in right.items():
            total += g[u + v + 1] * wu * wv
    return total


def random_invertible(
    rng: random.Random, order: int, convention: str = FACTORIAL
) -> TruncatedSeries:
    """A pseudo-random series with nonzero linear term, for sweep tests."""
    coeffs = [Fraction(rng.choice([1, -1, 2, -2]), rng.choice([1, 2]))]
    for _ in range(order - 1):
        coeffs.append(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    return TruncatedSeries(convention, tuple(coeffs))
