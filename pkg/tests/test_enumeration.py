import itertools

import pytest
from hypothesis import given, strategies as st

from symconv.enumeration import (
    Composition,
    Partition,
    all_compositions,
    bounded_compositions,
    compositions,
    multinomial_partition_coeff,
    partitions_bounded_length,
    prefix_sums,
    weak_compositions,
)
from symconv.errors import UsageError

from .oracles import compositions_count, distinct_permutations, partition_count


def _brute_compositions(n, m):
    return sorted(
        c for c in itertools.product(range(1, n + 1), repeat=m) if sum(c) == n
    )


def test_compositions_examples():
    assert [c.parts for c in compositions(3, 2)] == [(1, 2), (2, 1)]
    assert [c.parts for c in compositions(1, 1)] == [(1,)]
    assert sum(1 for _ in compositions(5, 3)) == 6
    assert list(compositions(2, 3)) == []
    assert list(compositions(4, 0)) == []


@pytest.mark.parametrize("n", range(1, 9))
def test_compositions_match_brute_force(n):
    for m in range(1, n + 1):
        got = [c.parts for c in compositions(n, m)]
        assert got == _brute_compositions(n, m)
        assert len(got) == compositions_count(n, m)


def test_total_composition_count():
    for n in range(1, 13):
        assert sum(sum(1 for _ in compositions(n, m)) for m in range(1, n + 1)) == 2 ** (n - 1)
        assert sum(1 for _ in all_compositions(n)) == 2 ** (n - 1)


def test_all_compositions_is_lex_and_respects_max_parts():
    got = [c.parts for c in all_compositions(5, max_parts=2)]
    assert got == sorted(got)
    assert all(len(c) <= 2 for c in got)
    assert len(got) == 1 + 4


def test_composition_validation_and_prefix_sums():
    with pytest.raises(UsageError):
        Composition((2, 0))
    assert prefix_sums([2, 1, 2]) == (0, 2, 3, 5)
    assert Composition((7,)).prefix_sums() == (0, 7)
    assert prefix_sums((1, 1, 1)) == (0, 1, 2, 3)


def test_bounded_compositions_five_summands():
    tuples = list(bounded_compositions(3, (2, 1, 2)))
    assert len(tuples) == 5
    # the five summands: f1(x3)f2(x4,x5), f1(x1,x2)f2(x4,x5), f1 f1 f1,
    # f2(x1,x2)f1(x4,x5), f2(x1,x2)f1(x3)
    assert set(tuples) == {(0, 1, 2), (1, 0, 2), (1, 1, 1), (2, 0, 1), (2, 1, 0)}
    assert tuples == sorted(tuples)
    assert list(bounded_compositions(0, (3, 1))) == [(0, 0)]
    assert list(bounded_compositions(6, (2, 1, 2))) == []


@given(
    st.integers(0, 8),
    st.lists(st.integers(1, 4), min_size=1, max_size=4),
)
def test_bounded_compositions_property(k, bounds):
    got = list(bounded_compositions(k, bounds))
    assert len(got) == len(set(got))
    assert all(sum(t) == k and all(0 <= a <= b for a, b in zip(t, bounds)) for t in got)
    brute = [
        t for t in itertools.product(*(range(b + 1) for b in bounds)) if sum(t) == k
    ]
    assert got == sorted(brute)


def test_weak_compositions_count():
    from math import comb

    for k in range(6):
        for m in range(1, 5):
            assert sum(1 for _ in weak_compositions(k, m)) == comb(k + m - 1, m - 1)


def test_partitions_of_four():
    parts = [p.parts for p in partitions_bounded_length(4, 3)]
    assert sorted(sorted(p) for p in parts) == [[1, 1, 2], [1, 3], [2, 2], [4]]
    assert [p.parts for p in partitions_bounded_length(1, 1)] == [(1,)]
    assert sum(1 for _ in partitions_bounded_length(5, 5)) == 7


@pytest.mark.parametrize("k", range(1, 21))
def test_partition_counts(k):
    got = list(partitions_bounded_length(k, k))
    assert len(got) == partition_count(k)
    assert len({p.parts for p in got}) == len(got)
    for p in got:
        assert list(p.parts) == sorted(p.parts, reverse=True)
        assert p.length == sum(p.multiplicities.values())
        assert sum(i * t for i, t in p.multiplicities.items()) == k


def test_partition_type():
    lam = Partition((1, 2, 1))
    assert lam.parts == (2, 1, 1)
    assert lam.multiplicity(1) == 2 and lam.multiplicity(3) == 0
    assert lam.length == 3 and lam.weight == 4


def test_multinomial_coefficients_for_k4_m3():
    assert [multinomial_partition_coeff(3, p) for p in ([1, 1, 2], [1, 3], [2, 2], [4])] == [3, 6, 3, 3]
    for m in range(1, 7):
        assert multinomial_partition_coeff(m, [5]) == m
    assert multinomial_partition_coeff(4, [1, 1, 1, 1]) == 1
    with pytest.raises(UsageError):
        multinomial_partition_coeff(2, [1, 1, 1])


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("m", range(1, 7))
def test_multinomials_count_bounded_tuples(k, m):
    # each partition stands for the distinct orderings of its parts padded with zeros
    total = sum(
        multinomial_partition_coeff(m, lam)
        for lam in partitions_bounded_length(k, m)
    )
    padded = sum(
        distinct_permutations(lam.parts + (0,) * (m - lam.length))
        for lam in partitions_bounded_length(k, m)
    )
    assert total == padded == sum(1 for _ in bounded_compositions(k, (k,) * m))
