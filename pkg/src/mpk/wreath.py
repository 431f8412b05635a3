"""Wreath products G~S(n): elements, cycle products, conjugacy types.

Permutations are stored in one-line notation, 0-based (perm[i] is the image
of i); external text forms are 1-based.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .errors import BudgetError
from .groups import FiniteGroupData, class_of
from .partitions import MultiPartition, row_multiplicities

DEFAULT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class WreathElement:
    colors: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        n = len(self.colors)
        if len(self.perm) != n or sorted(self.perm) != list(range(n)):
            raise ValueError(f"perm {self.perm} is not a permutation of 0..{n-1}")

    @property
    def n(self) -> int:
        return len(self.colors)


def wreath_identity(n: int, group: FiniteGroupData) -> WreathElement:
    return WreathElement((group.identity,) * n, tuple(range(n)))


def wreath_multiply(x: WreathElement, y: WreathElement,
                    group: FiniteGroupData) -> WreathElement:
    """Product ((g_1 h_{s^-1(1)}, ..., g_n h_{s^-1(n)}), s t)."""
    if x.n != y.n:
        raise ValueError(f"size mismatch: {x.n} vs {y.n}")
    s, t = x.perm, y.perm
    s_inv = [0] * x.n
    for i, img in enumerate(s):
        s_inv[img] = i
    colors = tuple(group.mul(x.colors[i], y.colors[s_inv[i]])
                   for i in range(x.n))
    perm = tuple(s[t[i]] for i in range(x.n))
    return WreathElement(colors, perm)


def wreath_inverse(x: WreathElement, group: FiniteGroupData) -> WreathElement:
    s = x.perm
    s_inv = [0] * x.n
    for i, img in enumerate(s):
        s_inv[img] = i
    colors = tuple(group.inv(x.colors[s[j]]) for j in range(x.n))
    return WreathElement(colors, tuple(s_inv))


def perm_cycles(perm: tuple[int, ...]) -> list[list[int]]:
    """Cycles of a 0-based one-line permutation, smallest entry first."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        cycles.append(cyc)
    return cycles


def cycle_product(x: WreathElement, cycle: list[int],
                  group: FiniteGroupData) -> int:
    """g_{i_r} g_{i_{r-1}} ... g_{i_1} for the cycle (i_1, ..., i_r)."""
    acc = x.colors[cycle[-1]]
    for i in reversed(cycle[:-1]):
        acc = group.mul(acc, x.colors[i])
    return acc


def conjugacy_type(x: WreathElement, group: FiniteGroupData) -> MultiPartition:
    """The multipartition indexing the conjugacy class of x in G~S(n).

    Every cycle of the permutation contributes a row of its length to the
    component of the class containing its cycle product.
    """
    rows: list[list[int]] = [[] for _ in range(group.k)]
    for cyc in perm_cycles(x.perm):
        cls = class_of(cycle_product(x, cyc, group), group)
        rows[cls].append(len(cyc))
    return tuple(tuple(sorted(r, reverse=True)) for r in rows)


def class_size(mp: MultiPartition, n: int, group: FiniteGroupData) -> int:
    """Number of elements of G~S(n) with conjugacy type mp, exactly."""
    if len(mp) != group.k:
        raise ValueError(f"{len(mp)} components for a group with k={group.k}")
    if sum(sum(c) for c in mp) != n:
        raise ValueError(f"total size of {mp} is not {n}")
    denom = 1
    for lam in mp:
        for j, r in row_multiplicities(lam).items():
            denom *= j ** r * factorial(r)
    value = Fraction(factorial(n) * group.order ** n, denom)
    for l, lam in enumerate(mp):
        value /= group.zeta(l) ** len(lam)
    if value.denominator != 1:
        raise AssertionError(f"class size of {mp} is not an integer: {value}")
    return int(value)


def enumerate_wreath(n: int, group: FiniteGroupData, budget: int | None = None):
    """Yield every element of G~S(n) exactly once.

    The budget (element count) defaults to 10^7 and can be overridden by the
    MPK_BUDGET environment variable or the budget argument.
    """
    if budget is None:
        budget = int(os.environ.get("MPK_BUDGET", DEFAULT_BUDGET))
    count = group.order ** n * factorial(n)
    if count > budget:
        raise BudgetError(
            f"|G|^n n! = {count} exceeds the enumeration budget {budget}")
    for colors in product(range(group.order), repeat=n):
        for perm in permutations(range(n)):
            yield WreathElement(colors, perm)


def parse_permutation(text: str) -> tuple[int, ...]:
    """Parse a 1-based one-line permutation like "3,2,1"."""
    images = [int(p) for p in text.split(",")]
    perm = tuple(i - 1 for i in images)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"{text!r} is not a permutation of 1..{len(perm)}")
    return perm
