"""Boundary points and boundary kernels.

A boundary point carries, for every conjugacy class of the group, two
weakly decreasing non-negative sequences alpha and beta and a mass delta
with sum(alpha) + sum(beta) <= delta; the deltas over all classes sum to 1.
Entries may be exact rationals or floats; validation is exact in the first
case and tolerant in the second.

Two kernels pair multipartitions with boundary points: the deformed one,
built by substituting extended power sums into Jack polynomials, and the
undeformed one, built from extended monomial functions with an explicit
dust term.  They are tied together by the degeneration identity checked in
the tests: at deformation zero the first kernel times the graph dimension
equals the second.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .branching import (
    GraphContext,
    big_dim_level,
    martin_kernel_shifted,
    upsilon,
)
from .groups import FiniteGroupData
from .partitions import (
    Diagram,
    MultiPartition,
    covering_pairs,
    enumerate_multipartitions,
    theta_content_split,
    total_size,
)
from .symfunc import (
    _monomial_to_powersum_table,
    jack_p_powersum,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

_SUM_TOL = 1e-9
_ORDER_TOL = 1e-12


def parse_rational(text):
    """Accept 'p/q', 'p', ints and floats; keep floats as floats."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError("booleans are not numbers here")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return text
    return Fraction(str(text).strip())


def _format_value(v):
    return str(v) if isinstance(v, Fraction) else float(v)


@dataclass(frozen=True)
class ThomaPoint:
    alpha: tuple[tuple, ...]
    beta: tuple[tuple, ...]
    delta: tuple

    def __post_init__(self):
        alpha = tuple(tuple(row) for row in self.alpha)
        beta = tuple(tuple(row) for row in self.beta)
        delta = tuple(self.delta)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "delta", delta)
        if not len(alpha) == len(beta) == len(delta):
            raise ValueError("alpha, beta and delta must have equal width")
        if not delta:
            raise ValueError("at least one class is required")
        values = [v for row in alpha + beta for v in row] + list(delta)
        exact = all(isinstance(v, (int, Fraction)) for v in values)
        sum_tol = 0 if exact else _SUM_TOL
        order_tol = 0 if exact else _ORDER_TOL
        for rows in (alpha, beta):
            for row in rows:
                for a, b in zip(row, row[1:]):
                    if b > a + order_tol:
                        raise ValueError(f"sequence {row} is not decreasing")
                if row and row[-1] < -order_tol:
                    raise ValueError(f"sequence {row} has negative entries")
        for l in range(len(delta)):
            if delta[l] < -order_tol:
                raise ValueError("negative class mass")
            if sum(alpha[l]) + sum(beta[l]) > delta[l] + sum_tol:
                raise ValueError(
                    f"class {l}: alpha and beta mass exceeds delta")
        total = sum(delta)
        if abs(total - 1) > sum_tol:
            raise ValueError(f"class masses sum to {total}, not 1")

    @property
    def k(self) -> int:
        return len(self.delta)

    def is_exact(self) -> bool:
        values = [v for row in self.alpha + self.beta for v in row]
        return all(isinstance(v, (int, Fraction))
                   for v in values + list(self.delta))


def thoma_from_json(doc: dict) -> ThomaPoint:
    try:
        alpha = tuple(tuple(parse_rational(v) for v in row)
                      for row in doc["alpha"])
        beta = tuple(tuple(parse_rational(v) for v in row)
                     for row in doc["beta"])
        delta = tuple(parse_rational(v) for v in doc["delta"])
    except KeyError as missing:
        raise ValueError(f"boundary point document lacks {missing}") from None
    return ThomaPoint(alpha, beta, delta)


def thoma_to_json(point: ThomaPoint) -> dict:
    return {
        "alpha": [[_format_value(v) for v in row] for row in point.alpha],
        "beta": [[_format_value(v) for v in row] for row in point.beta],
        "delta": [_format_value(v) for v in point.delta],
    }


def load_thoma_file(path) -> ThomaPoint:
    with open(path) as fh:
        return thoma_from_json(json.load(fh))


def extended_powersum(r: int, l: int, omega: ThomaPoint, theta):
    """The boundary extension of the r-th power sum in class l."""
    if r < 1:
        raise ValueError("r must be at least 1")
    theta = Fraction(theta)
    if r == 1:
        return omega.delta[l]
    out = sum(a ** r for a in omega.alpha[l])
    out += (-theta) ** (r - 1) * sum(b ** r for b in omega.beta[l])
    return out


def extended_jack(lam: Diagram, l: int, omega: ThomaPoint, theta):
    """Jack polynomial of one class evaluated at a boundary point."""
    theta = Fraction(theta)
    if theta == 0:
        expansion = _monomial_to_powersum_table(sum(lam))[lam]
    else:
        expansion = jack_p_powersum(lam, theta).terms
    cache: dict[int, object] = {}
    out = 0
    for rho, c in expansion.items():
        term = c
        for r in rho:
            if r not in cache:
                cache[r] = extended_powersum(r, l, omega, theta)
            term = term * cache[r]
        out = out + term
    return out


def kernel_theta(mp: MultiPartition, omega: ThomaPoint, ctx: GraphContext):
    """The deformed boundary kernel at one multipartition."""
    if omega.k != ctx.group.k:
        raise ValueError("boundary point width does not match the group")
    out = _ONE
    for l, lam in enumerate(mp):
        out = out * Fraction(1, ctx.group.dims[l] ** sum(lam))
        out = out * extended_jack(lam, l, omega, ctx.theta)
    return out


def monomial_value(mu: Diagram, atoms):
    """m_mu at a finite atom tuple, through its power-sum expansion."""
    expansion = _monomial_to_powersum_table(sum(mu))[mu] if mu else {(): _ONE}
    powers: dict[int, object] = {}
    out = 0
    for rho, c in expansion.items():
        term = c
        for r in rho:
            if r not in powers:
                powers[r] = sum(a ** r for a in atoms)
            term = term * powers[r]
        out = out + term
    return out


def extended_monomial(lam: Diagram, atoms, delta):
    """Monomial function extended by a dust term of mass delta - sum(atoms).

    Rows of length one may be filled from the dust; each choice of how many
    contributes a Poisson-type factor dust^p / p!.
    """
    dust = delta - sum(atoms)
    if isinstance(dust, Fraction) and dust < 0:
        raise ValueError("atoms carry more mass than delta")
    if not isinstance(dust, Fraction) and dust < -_SUM_TOL:
        raise ValueError("atoms carry more mass than delta")
    ones = sum(1 for part in lam if part == 1)
    rest = tuple(part for part in lam if part != 1)
    out = 0
    for p in range(ones + 1):
        reduced = tuple(sorted(rest + (1,) * (ones - p), reverse=True))
        term = monomial_value(reduced, atoms)
        if term:
            out = out + dust ** p / factorial(p) * term
    return out


def kernel_kingman(mp: MultiPartition, omega: ThomaPoint,
                   group: FiniteGroupData):
    """The undeformed boundary kernel; requires beta-free points."""
    if omega.k != group.k:
        raise ValueError("boundary point width does not match the group")
    if any(any(b > 0 for b in row) for row in omega.beta):
        raise ValueError("the undeformed kernel needs beta = 0")
    n = total_size(mp)
    out = Fraction(factorial(n))
    for l, lam in enumerate(mp):
        for part in lam:
            out = out / factorial(part)
        out = out * extended_monomial(lam, omega.alpha[l], omega.delta[l])
    return out


def embed_multipartition(mp: MultiPartition, theta) -> ThomaPoint:
    """The scaled boundary image of a non-empty multipartition."""
    theta = Fraction(theta)
    n = total_size(mp)
    if n == 0:
        raise ValueError("cannot embed the empty multipartition")
    alpha = []
    beta = []
    delta = []
    for lam in mp:
        a, b = theta_content_split(lam, theta)
        alpha.append(tuple(Fraction(x, n) for x in a))
        beta.append(tuple(Fraction(x, n) for x in b))
        delta.append(Fraction(sum(lam), n))
    return ThomaPoint(tuple(alpha), tuple(beta), tuple(delta))


def kernel_level_sum(omega: ThomaPoint, m: int, ctx: GraphContext):
    """Sum of DIM * kernel over one level; 1 for every boundary point."""
    out = 0
    for mp in enumerate_multipartitions(m, ctx.group.k):
        out = out + big_dim_level(mp, ctx) * kernel_theta(mp, omega, ctx)
    return out


def kernel_harmonic_defect(omega: ThomaPoint, mp: MultiPartition,
                           ctx: GraphContext):
    """Edge-weighted sum over covers minus the value; 0 when harmonic."""
    out = -kernel_theta(mp, omega, ctx)
    for _, up in covering_pairs(mp):
        out = out + upsilon(mp, up, ctx) * kernel_theta(up, omega, ctx)
    return out


def boundary_gap(small: MultiPartition, big: MultiPartition,
                 ctx: GraphContext) -> float:
    """Distance between the finite Martin kernel and its boundary limit.

    The finite route goes through the closed shifted-Jack formula, so the
    gap can be computed at levels far beyond path enumeration.
    """
    route = martin_kernel_shifted(small, big, ctx)
    limit = kernel_theta(small, embed_multipartition(big, ctx.theta), ctx)
    return abs(float(route) - float(limit))
