import itertools

import pytest
from hypothesis import given, strategies as st

from itrails.liealg import cartan, longest_element, reduced_words, weyl_orbit
from itrails.repmod import build_highest_weight_module, build_module
from itrails.trails import (TrailError, enumerate_trails, extremal_trails, is_trail, is_trail_lowering,
                            trail_from_weights, unique_trail)


def _brute(mod, gamma, delta, word, cap=3):
    out = []
    for c in itertools.product(range(cap + 1), repeat=len(word)):
        if is_trail(mod, gamma, delta, word, c):
            out.append(c)
    return sorted(out)


def test_a2_trails_top_to_bottom():
    a = cartan("A2")
    (tr,) = enumerate_trails(build_module(a, 1), (1, 0), (0, -1), (1, 2, 1))
    assert tr.c == (1, 1, 0) and tr.d == (0, 0, 0)
    assert tr.weights == ((1, 0), (-1, 1), (0, -1), (0, -1))
    (tr,) = enumerate_trails(build_module(a, 2), (0, 1), (-1, 0), (1, 2, 1))
    assert tr.c == (0, 1, 1)


def test_b2_trails():
    b = cartan("B2")
    assert [t.c for t in enumerate_trails(build_module(b, 2), (0, 1), (0, -1), (1, 2, 1, 2))] == [(0, 1, 1, 1)]
    assert [t.c for t in enumerate_trails(build_module(b, 1), (1, 0), (-1, 0), (1, 2, 1, 2))] == [(1, 2, 1, 0)]


def test_several_trails_through_zero_weight():
    # the zero weight of the adjoint module of A2 has multiplicity two
    a = cartan("A2")
    mod = build_highest_weight_module(a, (1, 1))
    trails = enumerate_trails(mod, (1, 1), (-1, -1), (1, 2, 1, 2, 1, 2))
    assert len(trails) >= 2
    assert [t.c for t in trails] == _brute(mod, (1, 1), (-1, -1), (1, 2, 1, 2, 1, 2), 2)


CASES = [("A2", 1, (1, 2, 1)), ("A2", 2, (2, 1, 2)), ("B2", 1, (1, 2, 1, 2)), ("B2", 2, (2, 1, 2, 1)),
         ("C2", 2, (1, 2, 1, 2)), ("G2", 1, (1, 2, 1, 2, 1, 2)), ("A3", 2, (1, 2, 1, 3, 2, 1))]


@pytest.mark.parametrize("name,i,word", CASES)
def test_enumeration_matches_brute_force(name, i, word):
    a = cartan(name)
    mod = build_module(a, i)
    orbit = weyl_orbit(a, a.fundamental(i))
    for g in orbit:
        for d in orbit:
            fast = [t.c for t in enumerate_trails(mod, g, d, word)]
            slow = [t.c for t in enumerate_trails(mod, g, d, word, use_bounds=False)]
            assert fast == slow == _brute(mod, g, d, word, cap=3 if name != "G2" else 2)


MINUSCULE = {("A2", 1), ("A2", 2), ("B2", 2), ("C2", 1), ("A3", 1), ("A3", 2)}


@pytest.mark.parametrize("name,i,word", CASES)
def test_extremal_trails_are_a_subset(name, i, word):
    a = cartan(name)
    lam = a.fundamental(i)
    mod = build_module(a, i)
    for g in weyl_orbit(a, lam):
        for d in weyl_orbit(a, lam):
            ext = [t.c for t in extremal_trails(a, lam, g, d, word)]
            full = [t.c for t in enumerate_trails(mod, g, d, word)]
            assert set(ext) <= set(full)
            if (name, i) in MINUSCULE:
                assert ext == full


def test_extremal_trails_not_everything_outside_minuscule():
    # V_{omega_1} of B2 has a zero weight; a trail through it is not extremal
    a = cartan("B2")
    ext = extremal_trails(a, (1, 0), (-1, 2), (1, -2), (1, 2, 1, 2))
    full = enumerate_trails(build_module(a, 1), (-1, 2), (1, -2), (1, 2, 1, 2))
    assert [t.c for t in ext] == [(0, 0, 0, 2), (0, 2, 0, 0)]
    assert [t.c for t in full] == [(0, 0, 0, 2), (0, 1, 0, 1), (0, 2, 0, 0)]


def test_extremal_subword_count_a2():
    a = cartan("A2")
    trails = extremal_trails(a, (1, 0), (1, 0), (-1, 1), (1, 2, 1))
    assert len(trails) == 2


def test_unique_trail_is_the_enumerated_one():
    a = cartan("B2")
    for i in (1, 2):
        om = a.fundamental(i)
        lo = longest_element(a).act(om)
        for w in reduced_words(longest_element(a)):
            u = unique_trail(a, om, w)
            assert u.weights[-1] == lo
            assert enumerate_trails(build_module(a, i), om, lo, w) == (u,)


def test_errors():
    a = cartan("A2")
    mod = build_module(a, 1)
    with pytest.raises(TrailError):
        enumerate_trails(mod, (1, 0), (0, -1), (1, 3))
    with pytest.raises(TrailError):
        enumerate_trails(mod, (1, 0), (2, 0), (1,))
    with pytest.raises(TrailError):
        trail_from_weights(a, (1,), [(1, 0), (0, 1)])
    assert enumerate_trails(mod, (0, -1), (1, 0), (1, 2)) == ()


@given(st.sampled_from(CASES), st.data())
def test_raising_and_lowering_checks_agree(case, data):
    name, i, word = case
    a = cartan(name)
    mod = build_module(a, i)
    pts = sorted(set(mod.weights))
    g = data.draw(st.sampled_from(pts))
    d = data.draw(st.sampled_from(pts))
    c = data.draw(st.lists(st.integers(0, 2), min_size=len(word), max_size=len(word)))
    assert is_trail(mod, g, d, word, c) == is_trail_lowering(mod, g, d, word, c)


@given(st.sampled_from(CASES), st.data())
def test_trail_vectors_are_consistent(case, data):
    name, i, word = case
    a = cartan(name)
    mod = build_module(a, i)
    pts = sorted(set(mod.weights))
    g = data.draw(st.sampled_from(pts))
    d = data.draw(st.sampled_from(pts))
    for t in enumerate_trails(mod, g, d, word):
        assert t.weights[0] == g and t.weights[-1] == d
        for k, ik in enumerate(word):
            # d_k = (g_{k-1}(h) + g_k(h)) / 2 for h the coroot of i_k
            assert 2 * t.d[k] == t.weights[k][ik - 1] + t.weights[k + 1][ik - 1]
