import pytest

import supermod as sm
from conftest import brute_downsets


def test_mask_player_convention():
    assert sm.mask_from_players([2, 4], 4) == 0b1010
    assert sm.mask_from_players([], 4) == 0
    assert sm.players_from_mask(0b1010) == [2, 4]
    assert sm.players_from_mask(0) == []
    with pytest.raises(IndexError):
        sm.mask_from_players([5], 4)
    with pytest.raises(IndexError):
        sm.mask_from_players([0], 4)


def test_hierarchy_closure():
    p = sm.poset_from_covers(4, [(2, 1), (3, 1)])
    assert p.leq(2, 1) and p.leq(3, 1)
    assert not p.leq(1, 2) and not p.leq(4, 1)
    assert all(p.leq(i, i) for i in range(1, 5))
    assert p.comparable(2, 1) and not p.comparable(2, 3)
    assert p.principal_down_set(1) == sm.mask_from_players([1, 2, 3], 4)
    assert p.strict_down_set(1) == sm.mask_from_players([2, 3], 4)
    assert p.principal_down_set(4) == sm.mask_from_players([4], 4)
    assert p.strict_down_set(4) == 0


def test_transitivity_of_closure():
    p = sm.poset_from_covers(3, [(1, 2), (2, 3)])
    assert p.leq(1, 3)
    assert p.principal_down_set(3) == 0b111


def test_flat_poset_everything_is_a_down_set():
    p = sm.poset_from_covers(4, [])
    assert all(p.is_down_set(s) for s in range(1 << 4))
    assert not any(p.leq(i, j) for i in range(1, 5) for j in range(1, 5) if i != j)


def test_cycles_rejected():
    with pytest.raises(sm.CycleError):
        sm.poset_from_covers(2, [(1, 2), (2, 1)])
    with pytest.raises(sm.CycleError):
        sm.poset_from_covers(3, [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(sm.CycleError):
        sm.poset_from_covers(2, [(1, 1)])


def test_out_of_range_players_rejected():
    with pytest.raises(IndexError):
        sm.poset_from_covers(3, [(0, 1)])
    with pytest.raises(IndexError):
        sm.poset_from_covers(3, [(1, 4)])
    with pytest.raises(ValueError):
        sm.poset_from_covers(0, [])


def test_is_down_set_examples():
    p = sm.poset_from_covers(4, [(2, 1), (3, 1)])
    assert p.is_down_set(sm.mask_from_players([1, 2, 3], 4))
    assert not p.is_down_set(sm.mask_from_players([1, 2], 4))
    assert p.is_down_set(0)
    assert p.is_down_set(0b1111)


def test_principal_down_sets_are_down_sets():
    for p in (
        sm.poset_from_covers(4, [(2, 1), (3, 1)]),
        sm.poset_from_covers(3, [(1, 2), (2, 3)]),
        sm.poset_from_covers(5, [(1, 3), (2, 3), (4, 5)]),
    ):
        for i in range(1, p.n + 1):
            assert p.is_down_set(p.principal_down_set(i))
            assert p.is_down_set(p.strict_down_set(i))


def test_down_sets_closed_under_union_and_intersection():
    p = sm.poset_from_covers(4, [(2, 1), (3, 1)])
    downs = brute_downsets(p)
    for a in downs:
        for b in downs:
            assert p.is_down_set(a | b)
            assert p.is_down_set(a & b)


def test_covers_roundtrip_on_reduced_input():
    covers = [(2, 1), (3, 1)]
    p = sm.poset_from_covers(4, covers)
    assert p.covers() == sorted(covers)
    chain = [(1, 2), (2, 3), (3, 4)]
    q = sm.poset_from_covers(4, chain)
    assert q.covers() == chain
    # a transitive consequence in the input disappears from the reduction
    r = sm.poset_from_covers(3, [(1, 2), (2, 3), (1, 3)])
    assert r.covers() == [(1, 2), (2, 3)]


def test_dict_roundtrip():
    p = sm.poset_from_covers(4, [(2, 1), (3, 1)])
    d = sm.poset_to_dict(p)
    assert d == {"n": 4, "covers": [[2, 1], [3, 1]]}
    assert sm.poset_from_dict(d) == p
    with pytest.raises(ValueError):
        sm.poset_from_dict({"covers": []})


def test_poset_equality_and_repr():
    p = sm.poset_from_covers(2, [(1, 2)])
    q = sm.poset_from_covers(2, [(1, 2)])
    assert p == q and hash(p) == hash(q)
    assert "covers" in repr(p)
