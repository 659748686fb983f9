"""Partitions, tableau counts, Kostka numbers, Young symmetrizers."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diffhom.tableaux import (GroupAlgebraElem, Partition, Permutation, Tableau,
                              canonical_tableau, count_semistandard,
                              count_standard, group_algebra_mul,
                              hook_length_count, kostka, partitions_of,
                              relabel, schur_poly_eval, semistandard_tableaux,
                              young_symmetrizer)

F = Fraction


def test_partitions_of_one():
    assert [p.parts for p in partitions_of(1)] == [(1,)]


def test_partitions_of_four():
    assert [p.parts for p in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partitions_max_parts_filter():
    assert [p.parts for p in partitions_of(4, max_parts=2)] == [(4,), (3, 1), (2, 2)]


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition.of(1, 2)
    with pytest.raises(ValueError):
        Partition.of(2, 0)


def test_count_standard_small():
    assert count_standard(Partition.of(1, 1, 1)) == 1
    assert count_standard(Partition.of(2, 1)) == 2
    assert count_standard(Partition.of(3, 2)) == 5


def test_count_standard_matches_hook_lengths():
    for d in range(1, 7):
        for lam in partitions_of(d):
            assert count_standard(lam) == hook_length_count(lam)


def test_rsk_square_identity():
    for d in range(1, 9):
        assert sum(count_standard(lam) ** 2 for lam in partitions_of(d)) == math.factorial(d)


def test_rsk_mixed_identity():
    for d in range(1, 7):
        for n in range(1, 5):
            total = sum(count_standard(lam) * count_semistandard(lam, n)
                        for lam in partitions_of(d))
            assert total == n ** d


def test_count_semistandard_examples():
    assert count_semistandard(Partition.of(1), 7) == 7
    assert count_semistandard(Partition.of(2), 2) == 3
    assert count_semistandard(Partition.of(1, 1), 2) == 1


def test_semistandard_zero_based_alphabet():
    fillings = [t.filling for t in semistandard_tableaux(Partition.of(2), 2, lo=0)]
    assert fillings == [(0, 0), (0, 1), (1, 1)]


def test_kostka_diagonal_is_one():
    for d in range(1, 6):
        for lam in partitions_of(d):
            assert kostka(lam, lam.parts) == 1


def test_kostka_standard_content():
    assert kostka(Partition.of(2, 1), (1, 1, 1)) == 2


def test_kostka_rejects_size_mismatch():
    with pytest.raises(ValueError):
        kostka(Partition.of(2, 1), (1, 1))


def test_kostka_sum_is_semistandard_count():
    import itertools
    for d in range(1, 6):
        for lam in partitions_of(d):
            for n in range(1, 5):
                total = sum(kostka(lam, a)
                            for a in itertools.product(range(d + 1), repeat=n)
                            if sum(a) == d)
                assert total == count_semistandard(lam, n)


def test_count_standard_is_unit_content_kostka():
    for d in range(1, 6):
        for lam in partitions_of(d):
            assert count_standard(lam) == kostka(lam, (1,) * d)


def test_schur_eval_single_row():
    xs = [F(2), F(3)]
    assert schur_poly_eval(Partition.of(1), xs) == 5


def test_schur_eval_counts_at_ones():
    assert schur_poly_eval(Partition.of(2), [F(1), F(1)]) == 3


def test_schur_sum_against_power():
    # sum over lam of f_lam * s_lam(x) = (x_1 + ... + x_n)^d
    xs = [F(1), F(2)]
    d = 3
    total = sum(count_standard(lam) * schur_poly_eval(lam, xs) for lam in partitions_of(d))
    assert total == (xs[0] + xs[1]) ** d == 27


def test_canonical_tableau_shape():
    t = canonical_tableau(Partition.of(2, 1))
    assert t.rows() == [(1, 2), (3,)]
    assert canonical_tableau(Partition.of(3)).filling == (1, 2, 3)
    assert canonical_tableau(Partition.of(1, 1)).rows() == [(1,), (2,)]


def test_young_symmetrizer_trivial():
    c = young_symmetrizer(canonical_tableau(Partition.of(1)))
    assert c == GroupAlgebraElem.unit(1)


def test_young_symmetrizer_row_and_column():
    e = Permutation.identity(2)
    swap = Permutation((2, 1))
    row = young_symmetrizer(Tableau(Partition.of(2), (1, 2)))
    assert row.terms == {e: F(1), swap: F(1)}
    col = young_symmetrizer(Tableau(Partition.of(1, 1), (1, 2)))
    assert col.terms == {e: F(1), swap: F(-1)}


def test_young_symmetrizer_rejects_non_standard():
    with pytest.raises(ValueError):
        young_symmetrizer(Tableau(Partition.of(2), (2, 2)))


def test_symmetrizer_products_annihilate():
    sym = young_symmetrizer(Tableau(Partition.of(2), (1, 2)))
    alt = young_symmetrizer(Tableau(Partition.of(1, 1), (1, 2)))
    assert not group_algebra_mul(sym, alt)


def test_symmetrizer_almost_projection():
    for d in range(1, 6):
        for lam in partitions_of(d):
            c = young_symmetrizer(canonical_tableau(lam))
            m = F(math.factorial(d), count_standard(lam))
            assert group_algebra_mul(c, c) == c.scale(m)


def test_relabelled_symmetrizer_is_conjugate():
    # between two standard tableaux of one shape, c_{T'} = sigma c_T sigma^{-1}
    # where sigma carries the entries of T to the entries of T'
    from diffhom.tableaux import standard_tableaux
    for d in range(2, 5):
        for lam in partitions_of(d):
            tabs = list(standard_tableaux(lam))
            t = tabs[0]
            for t2 in tabs[1:]:
                images = [0] * d
                for v, w in zip(t.filling, t2.filling):
                    images[v - 1] = w
                sigma = Permutation(tuple(images))
                assert relabel(sigma, t) == t2
                lhs = young_symmetrizer(t2)
                rhs = group_algebra_mul(
                    group_algebra_mul(GroupAlgebraElem.of(sigma), young_symmetrizer(t)),
                    GroupAlgebraElem.of(sigma.inverse()))
                assert lhs == rhs


perms = st.permutations(range(1, 5)).map(lambda xs: Permutation(tuple(xs)))


@given(a=perms, b=perms, c=perms)
@settings(max_examples=50)
def test_group_algebra_associativity(a, b, c):
    u = GroupAlgebraElem(4, {a: F(2), b: F(-1)})
    v = GroupAlgebraElem(4, {b: F(1, 2)})
    w = GroupAlgebraElem(4, {c: F(3), a: F(1)})
    lhs = group_algebra_mul(group_algebra_mul(u, v), w)
    rhs = group_algebra_mul(u, group_algebra_mul(v, w))
    assert lhs == rhs


@given(a=perms, b=perms)
@settings(max_examples=50)
def test_permutation_sign_is_multiplicative(a, b):
    assert (a * b).sign() == a.sign() * b.sign()


def test_unit_acts_trivially():
    v = GroupAlgebraElem(3, {Permutation((2, 3, 1)): F(5)})
    assert group_algebra_mul(GroupAlgebraElem.unit(3), v) == v
