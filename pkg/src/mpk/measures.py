"""Multiparameter Ewens measures and coherence machinery.

One positive parameter per conjugacy class of the underlying finite group.
The element-level weight on the wreath product depends only on the colored
cycle type, so the level measure on multipartitions can be written either
by summing weights over classes or through the product form that splits a
multipartition into a Dirichlet-type size prefactor and independent
single-diagram Ewens factors; both are implemented and agree exactly.

Coherence is with respect to the one-box deletion channel: remove one of
the n boxes uniformly, i.e. leave row length L of a component with
probability r_L * L / n.  check_mps_consistency verifies that a sequence of
level measures is a projective system under that channel, exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .branching import GraphContext, upsilon
from .groups import FiniteGroupData
from .partitions import (
    Diagram,
    MultiPartition,
    covering_pairs,
    enumerate_multipartitions,
    new_box,
    removal_pairs,
    row_multiplicities,
    total_size,
)
from .wreath import WreathElement, class_size, conjugacy_type

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rising(a, n: int) -> Fraction:
    """Rising factorial a (a+1) ... (a+n-1)."""
    a = Fraction(a)
    out = _ONE
    for i in range(n):
        out *= a + i
    return out


@dataclass(frozen=True)
class EwensParams:
    """One positive rational parameter per conjugacy class."""
    t: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(Fraction(x) for x in self.t))
        if not self.t or any(x <= 0 for x in self.t):
            raise ValueError("parameters must be positive")

    @property
    def k(self) -> int:
        return len(self.t)

    def scaled(self, group: FiniteGroupData) -> tuple[Fraction, ...]:
        """t_l divided by |G| / |c_l|, the natural boundary parameters."""
        if group.k != self.k:
            raise ValueError(
                f"{self.k} parameters for a group with {group.k} classes")
        return tuple(tl / group.zeta(l) for l, tl in enumerate(self.t))


def _params(t, k: int | None = None) -> EwensParams:
    p = t if isinstance(t, EwensParams) else EwensParams(tuple(t))
    if k is not None and p.k != k:
        raise ValueError(f"expected {k} parameters, got {p.k}")
    return p


def ewens_weight(x: WreathElement, t, group: FiniteGroupData) -> Fraction:
    """Weight of one wreath-product element; depends only on its type."""
    p = _params(t, group.k)
    mp = conjugacy_type(x, group)
    big_t = p.scaled(group)
    num = _ONE
    for l, lam in enumerate(mp):
        num *= p.t[l] ** len(lam)
    return num / (group.order ** x.n * rising(sum(big_t), x.n))


def ewens_single(lam: Diagram, t) -> Fraction:
    """The one-parameter measure of a single diagram at its own level."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("parameter must be positive")
    n = sum(lam)
    denom = 1
    for j, r in row_multiplicities(lam).items():
        denom *= j ** r * factorial(r)
    return Fraction(factorial(n), denom) * t ** len(lam) / rising(t, n)


def ewens_multi(mp: MultiPartition, t, group: FiniteGroupData) -> Fraction:
    """Level-measure weight of a multipartition, via the product form."""
    p = _params(t, group.k)
    big_t = p.scaled(group)
    n = total_size(mp)
    out = Fraction(factorial(n)) / rising(sum(big_t), n)
    for l, lam in enumerate(mp):
        m = sum(lam)
        out *= rising(big_t[l], m) / factorial(m)
        out *= ewens_single(lam, big_t[l])
    return out


@dataclass(frozen=True)
class LevelMeasure:
    n: int
    k: int
    weights: dict[MultiPartition, Fraction]

    def total(self) -> Fraction:
        return sum(self.weights.values(), _ZERO)

    def __getitem__(self, mp: MultiPartition) -> Fraction:
        return self.weights.get(mp, _ZERO)


def level_measure_ewens(n: int, t, group: FiniteGroupData) -> LevelMeasure:
    p = _params(t, group.k)
    weights = {}
    for mp in enumerate_multipartitions(n, group.k):
        w = ewens_multi(mp, p, group)
        if w:
            weights[mp] = w
    return LevelMeasure(n, group.k, weights)


def deletion_transition(big: MultiPartition, small: MultiPartition) -> Fraction:
    """Probability that removing a uniform box from big leaves small."""
    n = total_size(big)
    if n == 0 or total_size(small) != n - 1 or len(small) != len(big):
        return _ZERO
    where = None
    for l in range(len(big)):
        if big[l] != small[l]:
            if where is not None:
                return _ZERO
            where = l
    if where is None:
        return _ZERO
    box = new_box(small[where], big[where])
    if box is None:
        return _ZERO
    length = big[where][box[0] - 1]
    return Fraction(row_multiplicities(big[where])[length] * length, n)


def deletion_row(big: MultiPartition) -> dict[MultiPartition, Fraction]:
    row = {}
    for _, small in removal_pairs(big):
        row[small] = deletion_transition(big, small)
    return row


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    witness: tuple | None = None

    def __str__(self):
        if self.ok:
            return "consistent"
        n, mp, expected, got = self.witness
        return (f"level {n} weight of {mp} pushes to {got}, "
                f"level measure says {expected}")


def check_mps_consistency(measures) -> ConsistencyReport:
    """Verify adjacent level measures agree through the deletion channel."""
    measures = sorted(measures, key=lambda m: m.n)
    for lower, upper in zip(measures, measures[1:]):
        if upper.n != lower.n + 1:
            raise ValueError(
                f"levels {lower.n} and {upper.n} are not adjacent")
        pushed: dict[MultiPartition, Fraction] = {}
        for mp, w in upper.weights.items():
            for small, q in deletion_row(mp).items():
                pushed[small] = pushed.get(small, _ZERO) + w * q
        keys = set(pushed) | set(lower.weights)
        for mp in keys:
            expected = lower[mp]
            got = pushed.get(mp, _ZERO)
            if expected != got:
                return ConsistencyReport(False, (lower.n, mp, expected, got))
    return ConsistencyReport(True)


def check_harmonicity(phi, ctx: GraphContext) -> ConsistencyReport:
    """Verify phi(mp) = sum over covers of upsilon * phi(cover).

    phi is a sparse mapping, zero off its keys; every key below the top
    represented level is checked.
    """
    if not phi:
        return ConsistencyReport(True)
    top = max(total_size(mp) for mp in phi)
    for mp, val in phi.items():
        if total_size(mp) == top:
            continue
        s = _ZERO
        for _, up in covering_pairs(mp):
            s += upsilon(mp, up, ctx) * Fraction(phi.get(up, 0))
        if s != Fraction(val):
            return ConsistencyReport(False, (total_size(mp), mp, val, s))
    return ConsistencyReport(True)


def harmonic_from_product(psis, tau, ctx: GraphContext,
                          max_n: int) -> dict[MultiPartition, Fraction]:
    """Assemble a multipartition harmonic function from per-class ones.

    psis[l] maps single diagrams to values of a harmonic function of the
    one-component graph at the same theta; tau supplies one positive weight
    per class.  The result is the product function on all levels up to
    max_n, with the Dirichlet-type size prefactor in place.
    """
    k = ctx.group.k
    if len(psis) != k:
        raise ValueError(f"need {k} component functions, got {len(psis)}")
    tau = tuple(Fraction(x) for x in tau)
    if len(tau) != k or any(x <= 0 for x in tau):
        raise ValueError("tau must be positive, one entry per class")
    out: dict[MultiPartition, Fraction] = {}
    for n in range(max_n + 1):
        for mp in enumerate_multipartitions(n, k):
            val = _ONE / rising(sum(tau), n)
            for l, lam in enumerate(mp):
                m = sum(lam)
                val *= rising(tau[l], m)
                val *= Fraction(psis[l][lam])
                val /= ctx.group.dims[l] ** m
            if val:
                out[mp] = val
    return out


def pochhammer_simplex_identity(T, n: int) -> tuple[Fraction, Fraction]:
    """Both sides of the composition sum identity for rising factorials.

    n! * sum over compositions (m_1 .. m_k) of n of prod (T_l)_{m_l} / m_l!
    against (T_1 + ... + T_k)_n.  Returned as (lhs, rhs).
    """
    T = tuple(Fraction(x) for x in T)
    k = len(T)
    if k == 0:
        raise ValueError("need at least one parameter")

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    lhs = _ZERO
    for comp in compositions(n, k):
        term = _ONE
        for tl, m in zip(T, comp):
            term *= rising(tl, m) / factorial(m)
        lhs += term
    lhs *= factorial(n)
    rhs = rising(sum(T), n)
    return lhs, rhs
