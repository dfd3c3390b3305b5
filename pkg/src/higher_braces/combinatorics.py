"""Graded permutation signs and the enumerations the rest of the engine consumes.

Permutations are tuples of 1-based values: ``perm[i]`` is which original
element ends up in position ``i + 1``.  Parities are 0/1 sequences indexed by
the original element, so ``parities[k]`` belongs to element ``k + 1``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import ContractViolationError


def koszul_sign(perm: Sequence[int], parities: Sequence[int]) -> int:
    """Sign picked up when graded symbols are rearranged into ``perm`` order.

    Every inversion of two odd symbols contributes a factor of -1; all other
    inversions are free.  Multiplicative under composition acting on
    consistently permuted parities.
    """
    n = len(perm)
    if len(parities) != n:
        raise ContractViolationError(
            f"permutation of {n} elements but {len(parities)} parities"
        )
    if sorted(perm) != list(range(1, n + 1)):
        raise ContractViolationError(f"{perm!r} is not a permutation of 1..{n}")
    sign = 1
    for i in range(n):
        if not parities[perm[i] - 1] & 1:
            continue
        for j in range(i + 1, n):
            if perm[i] > perm[j] and parities[perm[j] - 1] & 1:
                sign = -sign
    return sign


def unshuffles(u: int, v: int) -> list[tuple[int, ...]]:
    """All (u,v)-unshuffles of 1..u+v, increasing on the first u and last v slots.

    Returned in lexicographic order of the permutation sequence; there are
    C(u+v, u) of them.
    """
    n = u + v
    out = []
    for head in combinations(range(1, n + 1), u):
        head_set = set(head)
        tail = tuple(k for k in range(1, n + 1) if k not in head_set)
        out.append(head + tail)
    return out


def compositions(r: int) -> list[tuple[int, ...]]:
    """All ordered tuples of positive integers summing to r (2^(r-1) of them)."""
    if r == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], remaining: int) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for first in range(1, remaining + 1):
            extend(prefix + (first,), remaining - first)

    extend((), r)
    return out


def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All partitions of {1..n} into nonempty blocks; Bell(n) of them.

    Blocks are internally sorted and listed by their minimal element, so each
    partition appears exactly once.
    """
    if n < 0:
        raise ContractViolationError("set_partitions needs n >= 0")
    partitions: list[tuple[tuple[int, ...], ...]] = [()]
    for element in range(1, n + 1):
        extended: list[tuple[tuple[int, ...], ...]] = []
        for part in partitions:
            for i, block in enumerate(part):
                extended.append(part[:i] + (block + (element,),) + part[i + 1 :])
            extended.append(part + ((element,),))
        partitions = extended
    return partitions


def sort_with_sign(
    keys: Sequence, parities: Sequence[int]
) -> tuple[list[int], int, bool]:
    """Stable-sort positions by key, tracking the graded sign of the shuffle.

    Returns ``(order, sign, vanished)`` where ``order`` lists source positions
    in sorted-key order, ``sign`` is the Koszul sign of that rearrangement and
    ``vanished`` is True when two equal keys both carry odd parity (the square
    of an odd symbol).
    """
    order = list(range(len(keys)))
    sign = 1
    for i in range(1, len(order)):
        j = i
        while j > 0 and keys[order[j - 1]] > keys[order[j]]:
            if parities[order[j - 1]] & 1 and parities[order[j]] & 1:
                sign = -sign
            order[j - 1], order[j] = order[j], order[j - 1]
            j -= 1
    vanished = any(
        keys[order[i]] == keys[order[i + 1]]
        and parities[order[i]] & 1
        and parities[order[i + 1]] & 1
        for i in range(len(order) - 1)
    )
    return order, sign, vanished
