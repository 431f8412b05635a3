from fractions import Fraction
from math import factorial

import pytest

from mpk.branching import (
    GraphContext,
    big_dim,
    big_dim_level,
    chi_theta,
    dim_theta,
    dim_theta_level,
    graph_laplacian_apply,
    martin_kernel,
    martin_kernel_shifted,
    propagator,
    propagator_row,
    shifted_jack_eval,
    upsilon,
)
from mpk.errors import VerificationError
from mpk.groups import builtin_group
from mpk.partitions import (
    conjugate,
    covering_pairs,
    diagram_successors,
    enumerate_multipartitions,
    enumerate_partitions,
    total_size,
)
from mpk.symfunc import hook_product

F = Fraction

THETAS = [F(0), F(1, 2), F(1), F(2)]


def ctx_for(name, theta, **kw):
    return GraphContext(builtin_group(name), F(theta), **kw)


def test_chi_theta_two_box_pinned():
    for theta in (F(1, 3), F(1), F(7, 2)):
        assert chi_theta((1,), (2,), theta) == 1
        assert chi_theta((1,), (1, 1), theta) == 2 / (1 + theta)
    assert chi_theta((1,), (1, 1), 0) == 2  # two rows of length 1


def test_chi_theta_one_at_theta_one():
    # the Young graph is multiplicity-free
    for n in range(0, 7):
        for mu in enumerate_partitions(n):
            for lam in diagram_successors(mu):
                assert chi_theta(mu, lam, 1) == 1


def test_chi_theta_kingman_row_counts():
    assert chi_theta((3, 1), (3, 2), 0) == 1  # one row of length 2
    assert chi_theta((3, 1), (3, 1, 1), 0) == 2
    assert chi_theta((3, 3), (4, 3), 0) == 1
    assert chi_theta((2,), (3,), 0) == 1


def test_chi_theta_non_cover_is_zero():
    assert chi_theta((2,), (2,), 1) == 0
    assert chi_theta((2,), (2, 2), 1) == 0
    assert chi_theta((2, 1), (2,), 1) == 0


def syt_count(lam):
    """Standard tableaux via the hook length formula."""
    conj = conjugate(lam)
    hooks = 1
    for i, r in enumerate(lam, start=1):
        for j in range(1, r + 1):
            hooks *= (r - j) + (conj[j - 1] - i) + 1
    return factorial(sum(lam)) // hooks


def test_dim_theta_one_counts_standard_tableaux():
    for n in range(0, 9):
        for lam in enumerate_partitions(n):
            assert dim_theta_level(lam, 1) == syt_count(lam)


def test_dim_theta_zero_multinomial():
    for n in range(0, 8):
        for lam in enumerate_partitions(n):
            denom = 1
            for part in lam:
                denom *= factorial(part)
            assert dim_theta_level(lam, 0) == F(factorial(n), denom)


def test_dim_theta_hook_identity():
    # |lam|! / H_theta(lam) reproduces the recursive dimension
    for theta in (F(1, 2), F(1), F(3)):
        for n in range(0, 8):
            for lam in enumerate_partitions(n):
                assert dim_theta_level(lam, theta) == \
                    factorial(n) / hook_product(lam, theta)


def brute_force_big_dim(small, big, ctx):
    """Sum of edge-weight products over all saturated paths, by recursion."""
    if total_size(small) == total_size(big):
        return F(1) if small == big else F(0)
    total = F(0)
    for _, nxt in covering_pairs(small):
        w = upsilon(small, nxt, ctx)
        total += w * brute_force_big_dim(nxt, big, ctx)
    return total


@pytest.mark.parametrize("theta", THETAS)
def test_big_dim_matches_path_enumeration(theta):
    ctx = ctx_for("S3", theta)
    empty = ((),) * 3
    for n in range(0, 5):
        for mp in enumerate_multipartitions(n, 3):
            assert big_dim_level(mp, ctx) == brute_force_big_dim(empty, mp, ctx)


def test_big_dim_interior_pairs():
    ctx = ctx_for("Z2", F(1, 2))
    for m in range(0, 4):
        for small in enumerate_multipartitions(m, 2):
            for n in range(m, 5):
                for big in enumerate_multipartitions(n, 2):
                    assert big_dim(small, big, ctx) == \
                        brute_force_big_dim(small, big, ctx)


def test_big_dim_cross_check_is_on_by_default():
    # the recursion itself re-verifies the closed form below the threshold;
    # seed a poisoned memo entry and watch the next level detect it
    ctx = ctx_for("Z2", F(1))
    empty = ((), ())
    ctx._dim_memo[(empty, ((1,), ()))] = F(99)
    with pytest.raises(VerificationError):
        big_dim(empty, ((2,), ()), ctx)


def test_upsilon_component_dimension_factor():
    ctx = ctx_for("S3", F(1))
    small = ((), (), ())
    assert upsilon(small, (((1,), (), ())), ctx) == 1
    assert upsilon(small, (((), (1,), ())), ctx) == 1
    assert upsilon(small, (((), (), (1,))), ctx) == 2
    assert upsilon(small, small, ctx) == 0


def test_upsilon_rejects_mismatched_width():
    ctx = ctx_for("Z2", F(1))
    with pytest.raises(ValueError):
        upsilon(((),), (((1,),)), ctx)


@pytest.mark.parametrize("theta", [F(1, 2), F(1)])
def test_propagator_rows_are_stochastic(theta):
    ctx = ctx_for("Z2", theta)
    for n in range(1, 5):
        for big in enumerate_multipartitions(n, 2):
            for m in range(0, n + 1):
                row = propagator_row(big, m, ctx)
                assert sum(row.values()) == 1
                assert all(w > 0 for w in row.values())


def test_propagator_semigroup():
    ctx = ctx_for("Z2", F(1, 2))
    n, m, p = 4, 2, 1
    for big in enumerate_multipartitions(n, 2):
        for target in enumerate_multipartitions(p, 2):
            direct = propagator(big, target, ctx)
            step = sum(
                propagator(big, mid, ctx) * propagator(mid, target, ctx)
                for mid in enumerate_multipartitions(m, 2))
            assert direct == step


@pytest.mark.parametrize("theta", [F(1, 2), F(1), F(2)])
def test_shifted_jack_characterization(theta):
    # P*_mu(mu) equals the deformed hook product; vanishing off containment
    for n in range(0, 6):
        for mu in enumerate_partitions(n):
            assert shifted_jack_eval(mu, mu, theta) == hook_product(mu, theta)
    assert shifted_jack_eval((2,), (1, 1, 1), theta) == 0
    assert shifted_jack_eval((3, 1), (2, 2), theta) == 0


def test_shifted_jack_single_box_is_size():
    for theta in THETAS:
        for lam in [(4, 2, 1), (3, 3), (1,), (2, 1)]:
            assert shifted_jack_eval((1,), lam, theta) == sum(lam)


def test_shifted_jack_theta_zero_two_rows():
    # P*_(2) at theta 0 is p_2 - p_1 on the Kingman side
    for lam in [(2,), (3, 1), (2, 2, 1)]:
        want = sum(x * x for x in lam) - sum(lam)
        assert shifted_jack_eval((2,), lam, 0) == want


@pytest.mark.parametrize("theta", [F(1, 2), F(1)])
@pytest.mark.parametrize("name", ["Z2", "S3"])
def test_martin_kernel_routes_agree(name, theta):
    # martin_kernel cross-checks the two routes internally below the
    # threshold; this drives both explicitly and compares
    ctx = ctx_for(name, theta, cross_check=False)
    k = ctx.group.k
    for m in range(0, 3):
        for small in enumerate_multipartitions(m, k):
            for n in range(m, 5):
                for big in enumerate_multipartitions(n, k):
                    if big_dim_level(big, ctx) == 0:
                        continue
                    assert martin_kernel(small, big, ctx) == \
                        martin_kernel_shifted(small, big, ctx)


@pytest.mark.parametrize("theta", [F(1, 2), F(1)])
def test_green_function_column(theta):
    # minus the Laplacian of DIM(., target) is the point mass at target
    ctx = ctx_for("Z2", theta)
    n = 3
    for target in enumerate_multipartitions(n, 2):
        col = {}
        for lev in range(0, n + 1):
            for mp in enumerate_multipartitions(lev, 2):
                val = big_dim(mp, target, ctx)
                if val:
                    col[mp] = val
        for m in range(0, n + 1):
            for mp in enumerate_multipartitions(m, 2):
                want = 1 if mp == target else 0
                assert -graph_laplacian_apply(col, mp, ctx) == want
