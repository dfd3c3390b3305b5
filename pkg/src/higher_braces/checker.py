"""Symbolic verification of the strong homotopy axioms for a brace family.

Both checkers sweep every arity up to the bound and every parity vector at
that arity, evaluate the full quadratic relation on fresh generators and
demand the normalized result be the zero expression.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .algebra import COMMUTATIVE, NONCOMMUTATIVE, Expr, gen_expr, gens_from_parities
from .braces import BraceFamily
from .combinatorics import koszul_sign, unshuffles
from .errors import ContractViolationError


@dataclass
class VerificationReport:
    checked_arities: list[int]
    parity_vectors_checked: int
    first_failure: Optional[tuple[int, tuple[int, ...], Expr]] = None

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def summary(self) -> str:
        arities = (
            f"arities {self.checked_arities[0]}..{self.checked_arities[-1]}"
            if self.checked_arities
            else "no arities"
        )
        if self.passed:
            return f"pass ({arities}, {self.parity_vectors_checked} parity vectors)"
        n, parities, residual = self.first_failure
        from .render import render_text

        return (
            f"fail at arity {n}, parities {parities}: "
            f"residual {render_text(residual)}"
        )


def l_infinity_residual(family: BraceFamily, parities) -> Expr:
    """Sum over i + j = n + 1 and (i, n-i)-unshuffles of the nested braces."""
    n = len(parities)
    gens = gens_from_parities(parities)
    args = [gen_expr(g, COMMUTATIVE) for g in gens]
    total = Expr.zero(COMMUTATIVE)
    for i in range(1, n + 1):
        for sigma in unshuffles(i, n - i):
            eps = koszul_sign(sigma, parities)
            inner = family.brace([args[k - 1] for k in sigma[:i]])
            if inner.is_zero():
                continue
            outer_args = [inner] + [args[k - 1] for k in sigma[i:]]
            total = total + family.brace(outer_args).scale(eps)
    return total


def a_infinity_residual(family: BraceFamily, parities) -> Expr:
    """Sum over u + v = n + 1 of the inner brace in each of the u slots, with
    the sign of moving a degree +1 map past the skipped arguments."""
    n = len(parities)
    gens = gens_from_parities(parities)
    args = [gen_expr(g, NONCOMMUTATIVE) for g in gens]
    total = Expr.zero(NONCOMMUTATIVE)
    for v in range(1, n + 1):
        u = n + 1 - v
        for i in range(1, u + 1):
            sign = -1 if sum(parities[: i - 1]) & 1 else 1
            inner = family.brace(args[i - 1 : i - 1 + v])
            if inner.is_zero():
                continue
            outer_args = args[: i - 1] + [inner] + args[i - 1 + v :]
            total = total + family.brace(outer_args).scale(sign)
    return total


def _sweep(family: BraceFamily, n_max: int, residual_fn) -> VerificationReport:
    report = VerificationReport(checked_arities=[], parity_vectors_checked=0)
    for n in range(1, n_max + 1):
        for parities in product((0, 1), repeat=n):
            residual = residual_fn(family, parities)
            report.parity_vectors_checked += 1
            if not residual.is_zero():
                report.first_failure = (n, parities, residual)
                return report
        report.checked_arities.append(n)
    return report


def check_l_infinity(family: BraceFamily, n_max: int) -> VerificationReport:
    """Verify the transferred strong homotopy Lie axioms up to arity n_max."""
    if family.flavor != COMMUTATIVE:
        raise ContractViolationError("the Lie-side checker needs a commutative family")
    return _sweep(family, n_max, l_infinity_residual)


def check_a_infinity(family: BraceFamily, n_max: int) -> VerificationReport:
    """Verify the transferred strong homotopy associativity axioms up to n_max."""
    if family.flavor != NONCOMMUTATIVE:
        raise ContractViolationError(
            "the associative-side checker needs a noncommutative family"
        )
    return _sweep(family, n_max, a_infinity_residual)
