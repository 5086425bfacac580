import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from flagchar.combinat import (
    Composition,
    ConditionSet,
    RootSet,
    Tableau,
    compositions,
    condition_sets_for_shape,
    enumerate_rstd,
    fits,
    hook,
    hook_intersection_legs,
    is_closed,
    main_condition_sets,
    minimal_fitting_tableau,
    negative_roots,
    normality_check,
    root_sets,
    stabilizer_sets,
    two_part_compositions,
)
from flagchar.errors import DoesNotFit, NotMain, NotNegativeRoot, NotRowStandard, NotTwoPart, TooLarge


def brute_closed(S):
    return all((i, k) in S for i, j in S for j2, k in S if j == j2)


def test_negative_roots_order():
    assert negative_roots(3) == [(2, 1), (3, 1), (3, 2)]


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.sampled_from(negative_roots(n))))))
def test_is_closed_matches_definition(arg):
    n, S = arg
    assert is_closed(RootSet(n, S)) == brute_closed(S)


def test_closed_examples():
    assert is_closed(RootSet.negative(4))
    assert not is_closed(RootSet(3, [(2, 1), (3, 2)]))
    J = RootSet(3, [(2, 1)])
    assert normality_check(J, J)
    assert not normality_check(J, RootSet.negative(3))


def test_compositions_counts():
    for n in range(1, 7):
        assert len(compositions(n)) == 2 ** (n - 1)
    assert [c.parts for c in two_part_compositions(4)] == [(3, 1), (2, 2), (1, 3)]


@pytest.mark.parametrize("parts", [(2, 1), (1, 2), (2, 2), (2, 3, 2), (1, 1, 1), (4,)])
def test_rstd_count_and_order(parts):
    tabs = enumerate_rstd(parts)
    assert len(tabs) == oracles.row_standard_count(parts)
    assert all(t.is_row_standard() for t in tabs)
    assert tabs[0] == Tableau.initial(Composition(parts))
    words = [t.word for t in tabs]
    assert words == sorted(words)


def test_rstd_examples():
    assert len(enumerate_rstd((2, 1))) == 3
    assert len(enumerate_rstd((5,))) == 1
    assert enumerate_rstd((2, 3, 2))[0].rows == ((1, 2), (3, 4, 5), (6, 7))
    with pytest.raises(TooLarge):
        enumerate_rstd((6, 6), limit=10)


@pytest.mark.parametrize("n", range(2, 7))
def test_root_sets_all_tableaux(n):
    for lam in compositions(n):
        for s in enumerate_rstd(lam):
            rs = root_sets(s)
            assert set(rs.J) == oracles.J_of_rows(s.rows)
            for S in (rs.J, rs.L, rs.K, rs.P, rs.I):
                assert is_closed(S)
            assert rs.J.isdisjoint(rs.L) and (rs.J | rs.L) == rs.K
            assert normality_check(rs.J, rs.K)
            assert (rs.L | rs.I) == rs.P


def test_root_sets_examples():
    s = Tableau(Composition((2, 2, 2)), [(1, 3), (2, 4), (5, 6)])
    assert len(root_sets(s).J) == 11
    rs = root_sets(Tableau.initial(Composition((4,))))
    assert len(rs.J) == 0 and rs.L == RootSet.negative(4)
    rs = root_sets(Tableau.initial(Composition((1, 1, 1, 1))))
    assert rs.J == RootSet.negative(4) and len(rs.L) == 0
    with pytest.raises(NotRowStandard):
        root_sets(Tableau(Composition((2, 1)), [(2, 1), (3,)]))


def test_hooks():
    h = hook(2, 1, 3)
    assert not h.arm and not h.leg
    h = hook(5, 1, 6)
    assert h.arm == {(5, 2), (5, 3), (5, 4)} and h.leg == {(2, 1), (3, 1), (4, 1)}
    for n in range(2, 9):
        for i, j in negative_roots(n):
            assert len(hook(i, j, n).full) == 2 * (i - j) - 1
    with pytest.raises(NotNegativeRoot):
        hook(1, 2, 3)


def test_condition_set_classification():
    assert ConditionSet(6, [(5, 1)]).is_completely_hook_disconnected()
    p = ConditionSet(6, [(3, 1), (5, 3)])
    assert p.is_main() and not p.is_completely_hook_disconnected()
    assert not ConditionSet(6, [(3, 1), (3, 2)]).is_main()


def _rook_count(n):
    """Rook placements on the staircase: the Bell numbers."""
    return sum(
        1
        for k in range(n)
        for S in itertools.combinations(negative_roots(n), k)
        if len({i for i, _ in S}) == k and len({j for _, j in S}) == k
    )


def test_main_condition_sets_counts():
    assert [len(main_condition_sets(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]
    for n in range(1, 6):
        assert len(main_condition_sets(n)) == _rook_count(n)
        assert all(p.is_completely_hook_disconnected() for p in main_condition_sets(n, disconnected=True))


def test_fits_and_census_shape():
    lam = Composition((3, 1))
    for p in condition_sets_for_shape(lam):
        assert len(p) <= 1
        if len(p) == 1:
            (i, _), = p.pairs
            assert [s.sbar for s in enumerate_rstd(lam) if fits(p, s)] == [(i,)]
    p = ConditionSet(6, [(5, 1)])
    for sbar in [(5,), (2, 5), (5, 6), (2, 5, 6), (3, 5, 6)]:
        assert fits(p, Tableau.from_sbar(6, sbar))
    with pytest.raises(NotTwoPart):
        condition_sets_for_shape((1, 1, 1))


def test_minimal_fitting_tableau():
    p = ConditionSet(5, [(4, 1), (5, 2)])
    assert minimal_fitting_tableau(p).sbar == (4, 5)
    with pytest.raises(NotMain):
        minimal_fitting_tableau(ConditionSet(5, [(3, 1), (5, 3)]))


def test_stabilizer_sets_examples():
    n = 6
    st0 = stabilizer_sets(ConditionSet(n, []))
    assert st0.R == st0.R0 == st0.Rhat == RootSet.negative(n)
    p = ConditionSet(n, [(5, 1)])
    st1 = stabilizer_sets(p, Tableau.from_sbar(n, (5,)))
    assert (5, 1) in st1.R and (5, 1) not in st1.R0 and (6, 1) in st1.R0
    assert all((r, c) in st1.R0 for r, c in negative_roots(n) if c != 1)
    assert len(st1.L1_1) == 0 and st1.Rhat == st1.R
    p = ConditionSet(5, [(4, 1), (5, 2)])
    st2 = stabilizer_sets(p, Tableau.from_sbar(5, (4, 5)))
    assert set(st2.L1_1) == {(2, 1)} == hook_intersection_legs(p)
    assert st2.Rhat - st2.R == st2.L1_1
    with pytest.raises(DoesNotFit):
        stabilizer_sets(p, Tableau.from_sbar(5, (4,)))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_rhat_decomposition(n):
    """R-hat is the disjoint union of L2, L1^0, L1^1, J^0 and I for every fit."""
    for lam in two_part_compositions(n):
        for p in condition_sets_for_shape(lam):
            for s in enumerate_rstd(lam):
                if not fits(p, s):
                    continue
                st_ = stabilizer_sets(p, s)
                rs = root_sets(s)
                parts = [rs.L2, st_.L1_0, st_.L1_1, st_.J0, rs.I]
                union = RootSet(n)
                for S in parts:
                    assert union.isdisjoint(S)
                    union = union | S
                assert union == st_.Rhat
                assert is_closed(st_.R0) and is_closed(st_.R)
