import pytest
from hypothesis import given, strategies as st

from itrails.liealg import (LieAlgError, all_elements, apply_move, available_moves, cartan,
                            commutation_class, is_fully_commutative, is_reduced, iter_reduced_words,
                            longest_element, min_left_coset_rep, minuscule_coset_rep, parse_weight,
                            reduced_words, simple_reflection, tits_path, weyl_from_word, weyl_orbit,
                            word_star_op)

TYPES = ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "D4"]

# |W|, length of w_o, number of reduced words of w_o
WEYL_DATA = {
    "A1": (2, 1, 1), "A2": (6, 3, 2), "B2": (8, 4, 2), "G2": (12, 6, 2), "A3": (24, 6, 16),
    "B3": (48, 9, 42), "C3": (48, 9, 42), "D4": (192, 12, 2316),
}


def test_cartan_matrices_bourbaki():
    assert cartan("A2").matrix == ((2, -1), (-1, 2))
    assert cartan("B2").matrix == ((2, -1), (-2, 2))
    assert cartan("G2").matrix == ((2, -3), (-1, 2))
    assert cartan("C3").matrix == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert cartan("B3").langlands_dual().matrix == cartan("C3").matrix


@pytest.mark.parametrize("name", ["a2", "B_3", " g2 ", "E6", "F4"])
def test_type_parsing(name):
    a = cartan(name)
    assert a.rank == int(name.strip()[-1])


@pytest.mark.parametrize("bad", ["A0", "B1", "D2", "E5", "G3", "X2", "A"])
def test_bad_types(bad):
    with pytest.raises(LieAlgError):
        cartan(bad)


@pytest.mark.parametrize("name", sorted(WEYL_DATA))
def test_weyl_group_data(name):
    a = cartan(name)
    order, length, nwords = WEYL_DATA[name]
    assert len(all_elements(a)) == order
    w0 = longest_element(a)
    assert w0.length == length
    assert len(reduced_words(w0)) == nwords
    assert sum(1 for _ in iter_reduced_words(w0)) == nwords


def test_positive_roots_count():
    for name, n in [("A3", 6), ("B3", 9), ("G2", 6), ("F4", 24), ("E6", 36)]:
        assert len(cartan(name).positive_roots) == n


def test_star_involution():
    assert [cartan("A3").star(i) for i in (1, 2, 3)] == [3, 2, 1]
    assert [cartan("B3").star(i) for i in (1, 2, 3)] == [1, 2, 3]
    assert [cartan("E6").star(i) for i in range(1, 7)] == [6, 2, 5, 4, 3, 1]
    a = cartan("A2")
    assert word_star_op(a, (1, 2, 1)) == (2, 1, 2)


def test_tits_path_a2():
    a = cartan("A2")
    path = tits_path(a, (1, 2, 1), (2, 1, 2))
    assert len(path) == 1 and path[0].d == 3
    assert apply_move(a, (1, 2, 1), path[0]) == (2, 1, 2)


@pytest.mark.parametrize("name", ["B2", "G2", "A3", "B3"])
def test_tits_path_connects_all_words(name):
    a = cartan(name)
    words = reduced_words(longest_element(a))
    src = words[0]
    for dst in words[:: max(1, len(words) // 6)]:
        w = src
        for mv in tits_path(a, src, dst):
            w = apply_move(a, w, mv)
        assert w == dst


def test_commutation_class_and_fc():
    a = cartan("A3")
    cls = commutation_class(a, (2, 1, 3, 2, 1, 3))
    assert cls == {(2, 1, 3, 2, 1, 3), (2, 3, 1, 2, 3, 1), (2, 1, 3, 2, 3, 1), (2, 3, 1, 2, 1, 3)}
    assert not is_fully_commutative(longest_element(cartan("A2")))
    assert is_fully_commutative(minuscule_coset_rep(a, 2))
    assert minuscule_coset_rep(a, 2).word == (2, 1, 3)


def test_parse_weight():
    assert parse_weight("1,0,-2") == (1, 0, -2)
    assert parse_weight("") == ()
    with pytest.raises(LieAlgError):
        parse_weight("1,2", 3)


def test_orbit_sizes():
    assert len(weyl_orbit(cartan("A3"), (0, 1, 0))) == 6
    assert len(weyl_orbit(cartan("B3"), (0, 0, 1))) == 8
    assert len(weyl_orbit(cartan("G2"), (1, 1))) == 12


def _types_and_words():
    return st.sampled_from(TYPES).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.integers(1, cartan(n).rank), max_size=8)))


@given(_types_and_words())
def test_word_product_matches_reduction(case):
    name, word = case
    a = cartan(name)
    w = weyl_from_word(a, word)
    assert w.length <= len(word)
    assert is_reduced(a, word) == (w.length == len(word))
    assert weyl_from_word(a, w.word) == w
    assert (w * w.inverse()).is_identity()


@given(_types_and_words(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_weyl_action_preserves_form(case, coords):
    name, word = case
    a = cartan(name)
    lam = tuple(coords[: a.rank])
    w = weyl_from_word(a, word)
    wl = w.act(lam)
    assert a.inner(wl, wl) == a.inner(lam, lam)
    assert w.inverse().act(wl) == lam


@given(st.sampled_from(TYPES), st.data())
def test_reflections_are_involutions(name, data):
    a = cartan(name)
    i = data.draw(st.integers(1, a.rank))
    g = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=a.rank, max_size=a.rank)))
    assert a.reflect(i, a.reflect(i, g)) == g
    s = simple_reflection(a, i)
    assert (s * s).is_identity()


@given(st.sampled_from(["A2", "B2", "A3", "B3"]), st.data())
def test_coset_representative_is_minimal(name, data):
    a = cartan(name)
    word = data.draw(st.lists(st.integers(1, a.rank), max_size=6))
    subset = data.draw(st.lists(st.integers(1, a.rank), unique=True, max_size=a.rank - 1))
    w = weyl_from_word(a, word)
    m = min_left_coset_rep(subset, w)
    assert all(m.left_mul(i).length > m.length for i in subset)


@given(st.sampled_from(["B2", "G2", "A3"]), st.data())
def test_moves_preserve_element(name, data):
    a = cartan(name)
    words = reduced_words(longest_element(a))
    w = data.draw(st.sampled_from(words))
    moves = available_moves(a, w)
    assert moves
    mv = data.draw(st.sampled_from(moves))
    assert weyl_from_word(a, apply_move(a, w, mv)) == longest_element(a)
