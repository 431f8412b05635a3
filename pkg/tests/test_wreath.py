import random
from math import factorial

import pytest

from mpk.errors import BudgetError
from mpk.groups import builtin_group, element_index
from mpk.partitions import enumerate_multipartitions
from mpk.wreath import (
    WreathElement,
    class_size,
    conjugacy_type,
    enumerate_wreath,
    parse_permutation,
    perm_cycles,
    wreath_identity,
    wreath_inverse,
    wreath_multiply,
)


def random_element(n, group, rng):
    colors = tuple(rng.randrange(group.order) for _ in range(n))
    perm = list(range(n))
    rng.shuffle(perm)
    return WreathElement(colors, tuple(perm))


def test_perm_validation():
    with pytest.raises(ValueError):
        WreathElement((0, 0), (0, 0))


def test_perm_cycles():
    assert perm_cycles((2, 1, 0)) == [[0, 2], [1]]
    assert perm_cycles(()) == []


def test_multiply_identity_and_associativity():
    g = builtin_group("S3")
    rng = random.Random(7)
    e = wreath_identity(3, g)
    for _ in range(25):
        x = random_element(3, g, rng)
        y = random_element(3, g, rng)
        z = random_element(3, g, rng)
        assert wreath_multiply(x, e, g) == x
        assert wreath_multiply(e, x, g) == x
        assert wreath_multiply(wreath_multiply(x, y, g), z, g) == \
            wreath_multiply(x, wreath_multiply(y, z, g), g)
        inv = wreath_inverse(x, g)
        assert wreath_multiply(x, inv, g) == e
        assert wreath_multiply(inv, x, g) == e


def test_trivial_group_reduces_to_permutations():
    g = builtin_group("trivial")
    rng = random.Random(3)
    for _ in range(20):
        x = random_element(4, g, rng)
        y = random_element(4, g, rng)
        prod = wreath_multiply(x, y, g)
        assert prod.perm == tuple(x.perm[y.perm[i]] for i in range(4))


def test_conjugacy_type_worked_example():
    # G = S3, n = 3, s = (13)(2), colors ((132), (123), (1)(23))
    g = builtin_group("S3")
    colors = tuple(element_index(g, t) for t in ["(132)", "(123)", "(1)(23)"])
    s = parse_permutation("3,2,1")
    x = WreathElement(colors, s)
    assert conjugacy_type(x, g) == ((), (2,), (1,))


def test_conjugacy_type_identity():
    for name in ("Z2", "S3"):
        g = builtin_group(name)
        e = wreath_identity(3, g)
        expected = ((1, 1, 1),) + ((),) * (g.k - 1)
        assert conjugacy_type(e, g) == expected


@pytest.mark.parametrize("name,n", [("Z2", 3), ("S3", 2), ("Z3", 3)])
def test_conjugation_invariance(name, n):
    g = builtin_group(name)
    rng = random.Random(11)
    for _ in range(40):
        x = random_element(n, g, rng)
        y = random_element(n, g, rng)
        conj = wreath_multiply(wreath_multiply(y, x, g), wreath_inverse(y, g), g)
        assert conjugacy_type(conj, g) == conjugacy_type(x, g)


def test_class_size_examples():
    triv = builtin_group("trivial")
    assert class_size(((1, 1, 1),), 3, triv) == 1
    assert class_size(((3,),), 3, triv) == 2
    s3 = builtin_group("S3")
    sizes = [class_size(mp, 3, s3) for mp in enumerate_multipartitions(3, 3)]
    assert sum(sizes) == 6 ** 3 * factorial(3)


@pytest.mark.parametrize("name", ["trivial", "Z2", "Z3", "S3"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_class_sizes_sum_to_group_order(name, n):
    g = builtin_group(name)
    total = sum(class_size(mp, n, g)
                for mp in enumerate_multipartitions(n, g.k))
    assert total == g.order ** n * factorial(n)


@pytest.mark.parametrize("name,n", [("trivial", 3), ("Z2", 3), ("Z3", 2),
                                    ("S3", 2), ("S3", 3)])
def test_bucketed_enumeration_matches_class_size(name, n):
    g = builtin_group(name)
    buckets = {}
    for x in enumerate_wreath(n, g):
        mp = conjugacy_type(x, g)
        buckets[mp] = buckets.get(mp, 0) + 1
    assert sum(buckets.values()) == g.order ** n * factorial(n)
    for mp, count in buckets.items():
        assert count == class_size(mp, n, g)


def test_enumerate_wreath_counts():
    assert len(list(enumerate_wreath(1, builtin_group("trivial")))) == 1
    assert len(list(enumerate_wreath(2, builtin_group("Z2")))) == 8
    assert len(list(enumerate_wreath(3, builtin_group("S3")))) == 1296


def test_enumerate_wreath_budget():
    g = builtin_group("S3")
    with pytest.raises(BudgetError):
        list(enumerate_wreath(3, g, budget=100))


def test_class_size_k_mismatch():
    with pytest.raises(ValueError):
        class_size(((1,),), 1, builtin_group("Z2"))
