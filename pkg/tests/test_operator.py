import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gammaring.errors import CapExceeded
from gammaring.operator import (
    FormalSum,
    brute_force_operator_semiring,
    build_left_operator_semiring,
    build_operator_semiring,
    build_right_operator_semiring,
    canonical_class,
    find_left_unity,
    find_right_unity,
    formal_product,
    verify_unity_is_identity,
)

import _oracles


def test_boolean_left_operator_semiring(B):
    L = build_left_operator_semiring(B)
    assert set(L.elements) == {(0, 0), (0, 1)}
    assert L.witnesses[L.index_of((0, 1))] == FormalSum(((1, 0),))
    u = find_left_unity(B, L)
    assert u is not None and str(u.formal_sum) == "[1,0]"
    assert verify_unity_is_identity(L, u)


def test_boolean_right_unity(B):
    R = build_right_operator_semiring(B)
    u = find_right_unity(B, R)
    assert str(u.formal_sum) == "[0,1]"
    assert R.elements[u.element] == (0, 1)


def test_z2_unity(Z2):
    for side, finder in (("left", find_left_unity), ("right", find_right_unity)):
        sr = build_operator_semiring(Z2, side)
        u = finder(Z2, sr)
        assert str(u.formal_sum) == "[1,1]"
        assert verify_unity_is_identity(sr, u)


def test_trivial_operator_semirings(trivial):
    for side in ("left", "right"):
        sr = build_operator_semiring(trivial, side)
        assert sr.size == 1 and sr.add.tolist() == [[0]] and sr.mul.tolist() == [[0]]


def test_zero_product_has_no_unity(B):
    g = B.with_prod(np.zeros_like(B.prod))
    L = build_left_operator_semiring(g)
    assert L.elements == ((0, 0),)
    assert find_left_unity(g, L) is None
    assert find_right_unity(g, build_right_operator_semiring(g)) is None


def test_max_elements_cap(B):
    with pytest.raises(CapExceeded):
        build_left_operator_semiring(B, max_elements=1)


def test_wrong_side_for_unity(B):
    with pytest.raises(ValueError):
        find_left_unity(B, build_right_operator_semiring(B))


def test_formal_sum_is_a_multiset():
    assert FormalSum(((0, 1), (1, 0))) == FormalSum(((1, 0), (0, 1)))
    assert FormalSum(((0, 1),)) != FormalSum(((0, 1), (0, 1)))
    assert len({FormalSum(((0, 1), (1, 0))), FormalSum(((1, 0), (0, 1)))}) == 1
    with pytest.raises(ValueError):
        FormalSum(())
    with pytest.raises(ValueError):
        FormalSum(((0, 0),), "left") + FormalSum(((0, 0),), "right")


def test_canonical_class_examples(B, Z2):
    assert canonical_class(B, FormalSum(((1, 0),))) == (0, 1)
    assert canonical_class(B, FormalSum(((0, 0),))) == (0, 0)
    assert canonical_class(Z2, FormalSum(((1, 1), (1, 1)))) == (0, 0)


@pytest.mark.parametrize("side", ["left", "right"])
def test_closure_matches_brute_force_on_corpus(corpus, side):
    for g in corpus:
        if g.s_size > 3 or g.g_size > 2:
            continue
        sr = build_operator_semiring(g, side)
        brute = brute_force_operator_semiring(g, side, sr.size + 1)
        assert set(sr.elements) == brute, g.label


def test_brute_force_kernel_matches_literal_sums(corpus):
    for g in corpus[:25]:
        for side in ("left", "right"):
            for max_len in (1, 2, 3):
                if g.s_size * g.g_size > 6 and max_len == 3:
                    continue
                assert brute_force_operator_semiring(g, side, max_len) == \
                    _oracles.all_actions_by_sums(g, side, max_len)


def test_brute_force_caps(B):
    with pytest.raises(CapExceeded):
        brute_force_operator_semiring(B, "left", 50, cap=10)
    with pytest.raises(ValueError):
        brute_force_operator_semiring(B, "left", 0)


def test_witnesses_reproduce_their_class(corpus):
    for g in corpus:
        for side in ("left", "right"):
            sr = build_operator_semiring(g, side)
            for elem, w in zip(sr.elements, sr.witnesses):
                assert w.side == side
                assert canonical_class(g, w) == elem


def test_semiring_laws_hold(corpus):
    for g in corpus:
        for side in ("left", "right"):
            assert build_operator_semiring(g, side).law_violations() == []


def test_tables_match_formal_operations(corpus):
    for g in corpus[:40]:
        for side in ("left", "right"):
            sr = build_operator_semiring(g, side)
            for i, wi in enumerate(sr.witnesses):
                for j, wj in enumerate(sr.witnesses):
                    assert sr.elements[sr.add[i, j]] == canonical_class(g, wi + wj)
                    assert sr.elements[sr.mul[i, j]] == canonical_class(g, formal_product(g, wi, wj))


def test_unity_found_iff_identity_action_reachable(corpus):
    for g in corpus:
        for side, finder in (("left", find_left_unity), ("right", find_right_unity)):
            sr = build_operator_semiring(g, side)
            u = finder(g, sr)
            ident = tuple(range(g.s_size))
            assert (u is not None) == (ident in set(sr.elements))
            if u is not None:
                assert canonical_class(g, u.formal_sum) == ident
                assert verify_unity_is_identity(sr, u)


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_canonical_class_ignores_term_order(corpus, data):
    g = data.draw(st.sampled_from(corpus))
    side = data.draw(st.sampled_from(["left", "right"]))
    pair = (st.tuples(st.integers(0, g.s_size - 1), st.integers(0, g.g_size - 1)) if side == "left"
            else st.tuples(st.integers(0, g.g_size - 1), st.integers(0, g.s_size - 1)))
    terms = data.draw(st.lists(pair, min_size=1, max_size=6))
    perm = data.draw(st.permutations(terms))
    assert canonical_class(g, FormalSum(tuple(terms), side)) == canonical_class(g, FormalSum(tuple(perm), side))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_well_defined_on_classes(corpus, data):
    """Equivalent formal sums give equivalent sums and products."""
    g = data.draw(st.sampled_from(corpus))
    side = data.draw(st.sampled_from(["left", "right"]))
    sr = build_operator_semiring(g, side)
    pair = (st.tuples(st.integers(0, g.s_size - 1), st.integers(0, g.g_size - 1)) if side == "left"
            else st.tuples(st.integers(0, g.g_size - 1), st.integers(0, g.s_size - 1)))
    f = FormalSum(tuple(data.draw(st.lists(pair, min_size=1, max_size=4))), side)
    h = FormalSum(tuple(data.draw(st.lists(pair, min_size=1, max_size=4))), side)
    i, j = sr.index_of(canonical_class(g, f)), sr.index_of(canonical_class(g, h))
    assert canonical_class(g, f + h) == sr.elements[sr.add[i, j]]
    assert canonical_class(g, formal_product(g, f, h)) == sr.elements[sr.mul[i, j]]
