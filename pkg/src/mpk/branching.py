"""The deformed branching graph on colored multipartitions.

Levels are the sets of k-component multipartitions of each total size; edges
add a single box to one component.  Edge weights combine the one-box Jack
multiplicity chi_theta on the affected component with that component's
group-character dimension.  On top of the weights the module provides the
relative dimension DIM (weighted path count), the down-transition kernel
between levels, the associated Martin kernel with two independently computed
routes, and the graph Laplacian.

theta = 0 is a genuine degeneration (the generic box product becomes 0/0)
and is handled explicitly everywhere: chi collapses to the row-multiplicity
weight of the Kingman graph and Jack polynomials collapse to monomials.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import factorial

from .errors import VerificationError
from .groups import FiniteGroupData
from .partitions import (
    Diagram,
    MultiPartition,
    conjugate,
    contains,
    covering_pairs,
    diagram_predecessors,
    enumerate_multipartitions,
    enumerate_partitions,
    mp_contains,
    new_box,
    row_multiplicities,
    total_size,
)
from .symfunc import (
    eval_shifted_powersum_expr,
    hook_product,
    jack_p_powersum,
    make_expr,
    shifted_powersum,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

# closed-form cross-checks run automatically below this total size
CROSS_CHECK_LEVEL = 7
# ratio-formula cross-check ceiling for shifted Jack evaluation
SHIFTED_CROSS_CHECK_MAX = 8


@dataclass
class GraphContext:
    """A group together with a deformation parameter and check policy.

    cross_check = None enables the redundant closed-form verification of
    every DIM computed at levels below CROSS_CHECK_LEVEL; True forces it
    everywhere, False disables it.
    """
    group: FiniteGroupData
    theta: Fraction
    cross_check: bool | None = None
    _dim_memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.theta = Fraction(self.theta)
        if self.theta < 0:
            raise ValueError("theta must be non-negative")

    def _checks_at(self, n: int) -> bool:
        if self.cross_check is None:
            return n < CROSS_CHECK_LEVEL
        return self.cross_check


def chi_theta(mu: Diagram, lam: Diagram, theta) -> Fraction:
    """One-box multiplicity on diagrams; 0 unless lam covers mu."""
    theta = Fraction(theta)
    box = new_box(mu, lam)
    if box is None:
        return _ZERO
    row, col = box
    if theta == 0:
        return Fraction(row_multiplicities(lam)[lam[row - 1]])
    out = _ONE
    mu_conj = conjugate(mu)
    col_height = mu_conj[col - 1] if col <= len(mu_conj) else 0
    for i in range(1, col_height + 1):
        a = Fraction(mu[i - 1] - col)
        l = Fraction(col_height - i)
        out *= (a + (l + 2) * theta) * (a + 1 + l * theta)
        out /= (a + 1 + (l + 1) * theta) * (a + (l + 1) * theta)
    return out


def upsilon(small: MultiPartition, big: MultiPartition,
            ctx: GraphContext) -> Fraction:
    """Edge weight between consecutive levels; 0 off the covering relation."""
    if len(small) != ctx.group.k or len(big) != ctx.group.k:
        raise ValueError("component count does not match the group")
    if total_size(big) != total_size(small) + 1:
        return _ZERO
    where = None
    for l in range(len(small)):
        if small[l] != big[l]:
            if where is not None:
                return _ZERO
            where = l
    if where is None:
        return _ZERO
    if new_box(small[where], big[where]) is None:
        return _ZERO
    return ctx.group.dims[where] * chi_theta(small[where], big[where], ctx.theta)


@cache
def dim_theta(mu: Diagram, lam: Diagram, theta) -> Fraction:
    """Weighted path count from mu up to lam inside one component."""
    theta = Fraction(theta)
    if not contains(mu, lam):
        return _ZERO
    if mu == lam:
        return _ONE
    out = _ZERO
    for prev in diagram_predecessors(lam):
        if contains(mu, prev):
            out += dim_theta(mu, prev, theta) * chi_theta(prev, lam, theta)
    return out


def dim_theta_level(lam: Diagram, theta) -> Fraction:
    return dim_theta((), lam, theta)


def _big_dim_closed(small: MultiPartition, big: MultiPartition,
                    ctx: GraphContext) -> Fraction:
    gap = total_size(big) - total_size(small)
    out = Fraction(factorial(gap))
    for l in range(len(small)):
        d = sum(big[l]) - sum(small[l])
        out *= Fraction(ctx.group.dims[l] ** d, factorial(d))
        out *= dim_theta(small[l], big[l], ctx.theta)
    return out


def big_dim(small: MultiPartition, big: MultiPartition,
            ctx: GraphContext) -> Fraction:
    """Weighted path count from small up to big in the multipartition graph.

    Computed by the edge recursion; below CROSS_CHECK_LEVEL (or always, when
    ctx.cross_check is set) the result is verified against the product
    closed form and a mismatch raises VerificationError with the witness.
    """
    if len(small) != ctx.group.k or len(big) != ctx.group.k:
        raise ValueError("component count does not match the group")
    key = (small, big)
    hit = ctx._dim_memo.get(key)
    if hit is not None:
        return hit
    if not mp_contains(small, big):
        out = _ZERO
    elif small == big:
        out = _ONE
    else:
        out = _ZERO
        n = total_size(big)
        for l in range(len(big)):
            for prev_diag in diagram_predecessors(big[l]):
                prev = big[:l] + (prev_diag,) + big[l + 1:]
                if mp_contains(small, prev):
                    out += big_dim(small, prev, ctx) * upsilon(prev, big, ctx)
        if ctx._checks_at(n):
            closed = _big_dim_closed(small, big, ctx)
            if closed != out:
                raise VerificationError(
                    f"DIM mismatch at {small} -> {big}, theta={ctx.theta}: "
                    f"recursion {out} vs closed form {closed}")
    ctx._dim_memo[key] = out
    return out


def big_dim_level(mp: MultiPartition, ctx: GraphContext) -> Fraction:
    empty = ((),) * ctx.group.k
    return big_dim(empty, mp, ctx)


@cache
def _pstar_expansion(mu: Diagram, theta):
    """P*_mu as a shifted-power-sum expression.

    Top-degree coefficients are those of the Jack polynomial P_mu on the
    power-sum basis; the lower coefficients are pinned by the vanishing of
    P*_mu on every strictly smaller diagram.  Both defining properties are
    re-verified on the full degree-|mu| layer before the expression is
    returned.
    """
    theta = Fraction(theta)
    n = sum(mu)
    if theta == 0:
        # the m -> p table is the Jack family at theta = 0
        from .symfunc import _monomial_to_powersum_table
        top = _monomial_to_powersum_table(n)[mu]
    else:
        top = jack_p_powersum(mu, theta).terms
    lower_keys = [rho for d in range(n) for rho in enumerate_partitions(d)]
    smaller = [lam for d in range(n) for lam in enumerate_partitions(d)]
    # rows: vanishing at each smaller diagram; unknowns: lower coefficients
    matrix = []
    rhs = []
    for lam in smaller:
        row = [_pstar_monomial(rho, lam, theta) for rho in lower_keys]
        fixed = sum((c * _pstar_monomial(rho, lam, theta)
                     for rho, c in top.items()), _ZERO)
        matrix.append(row)
        rhs.append([-fixed])
    from .symfunc import _solve_exact
    solved = _solve_exact(matrix, rhs) if lower_keys else []
    terms = dict(top)
    for rho, (val,) in zip(lower_keys, solved):
        if val:
            terms[rho] = terms.get(rho, _ZERO) + val
    expr = make_expr("p*", terms)
    for lam in enumerate_partitions(n):
        got = eval_shifted_powersum_expr(expr, lam, theta)
        want = hook_product(mu, theta) if lam == mu else _ZERO
        if got != want:
            raise VerificationError(
                f"shifted Jack P*_{mu} failed its normalization at {lam}: "
                f"{got} vs {want} (theta={theta})")
    return expr


def _pstar_monomial(rho: Diagram, lam: Diagram, theta) -> Fraction:
    out = _ONE
    for r in rho:
        out *= shifted_powersum(r, lam, theta)
    return out


def shifted_jack_eval(mu: Diagram, lam: Diagram, theta) -> Fraction:
    """P*_mu(lam; theta), exactly.

    Cross-checked against the dimension-ratio formula on small lam, where
    the two derivations are independent.
    """
    theta = Fraction(theta)
    if not contains(mu, lam):
        return _ZERO
    out = eval_shifted_powersum_expr(_pstar_expansion(mu, theta), lam, theta)
    if sum(lam) <= SHIFTED_CROSS_CHECK_MAX:
        n, m = sum(lam), sum(mu)
        fall = _ONE
        for i in range(m):
            fall *= n - i
        dim_lam = dim_theta_level(lam, theta)
        if dim_lam:
            ratio = fall * dim_theta(mu, lam, theta) / dim_lam
            if ratio != out:
                raise VerificationError(
                    f"shifted Jack mismatch at mu={mu}, lam={lam}, "
                    f"theta={theta}: expansion {out} vs ratio {ratio}")
    return out


def martin_kernel(small: MultiPartition, big: MultiPartition,
                  ctx: GraphContext) -> Fraction:
    """DIM(small, big) / DIM(big), cross-checked against the shifted route."""
    denom = big_dim_level(big, ctx)
    if denom == 0:
        raise ValueError(f"{big} has zero dimension")
    out = big_dim(small, big, ctx) / denom
    if ctx._checks_at(total_size(big)):
        alt = martin_kernel_shifted(small, big, ctx)
        if alt != out:
            raise VerificationError(
                f"Martin kernel mismatch at {small} -> {big}, "
                f"theta={ctx.theta}: dimension ratio {out} vs shifted {alt}")
    return out


def martin_kernel_shifted(small: MultiPartition, big: MultiPartition,
                          ctx: GraphContext) -> Fraction:
    """The closed Martin-kernel route through shifted Jack evaluations.

    Scales to large levels because it never enumerates paths; used on its
    own for boundary asymptotics.
    """
    if len(small) != ctx.group.k or len(big) != ctx.group.k:
        raise ValueError("component count does not match the group")
    n = total_size(big)
    m = total_size(small)
    fall = _ONE
    for i in range(m):
        fall *= n - i
    if fall == 0:
        return _ZERO
    out = 1 / fall
    for l in range(len(small)):
        out *= Fraction(1, ctx.group.dims[l] ** sum(small[l]))
        out *= shifted_jack_eval(small[l], big[l], ctx.theta)
    return out


def propagator(big: MultiPartition, small: MultiPartition,
               ctx: GraphContext) -> Fraction:
    """Down-transition probability from a big level element to a small one."""
    denom = big_dim_level(big, ctx)
    if denom == 0:
        raise ValueError(f"{big} has zero dimension")
    return big_dim(small, big, ctx) * big_dim_level(small, ctx) / denom


def propagator_row(big: MultiPartition, m: int, ctx: GraphContext) -> dict:
    """The whole transition row onto level m, as a sparse dict."""
    n = total_size(big)
    if not 0 <= m <= n:
        raise ValueError(f"level {m} out of range for size {n}")
    row = {}
    for small in enumerate_multipartitions(m, ctx.group.k):
        w = propagator(big, small, ctx)
        if w:
            row[small] = w
    return row


def graph_laplacian_apply(f, mp: MultiPartition, ctx: GraphContext) -> Fraction:
    """(Delta f)(mp) = -f(mp) + sum over covers of the edge-weighted f.

    f is a sparse mapping; missing keys count as zero.
    """
    out = -Fraction(f.get(mp, 0))
    for _, up in covering_pairs(mp):
        out += upsilon(mp, up, ctx) * Fraction(f.get(up, 0))
    return out
