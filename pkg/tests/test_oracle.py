import itertools

import pytest
from hypothesis import given, strategies as st

from itrails.liealg import cartan, weyl_from_word
from itrails.oracle import (OracleError, branching_multiplicity, character, dimension, dominant_character,
                            levi_dimension, tensor_multiplicity, weight_multiplicity)

FUND_DIMS = {
    "A3": [4, 6, 4], "B3": [7, 21, 8], "C3": [6, 14, 14], "D4": [8, 28, 8, 8], "G2": [7, 14],
    "F4": [52, 1274, 273, 26], "E6": [27, 78, 351, 2925, 351, 27],
}


@pytest.mark.parametrize("name", sorted(FUND_DIMS))
def test_fundamental_dimensions(name):
    a = cartan(name)
    assert [dimension(a, a.fundamental(i)) for i in a.indices] == FUND_DIMS[name]


def test_e7_e8_smallest():
    assert dimension(cartan("E7"), (0, 0, 0, 0, 0, 0, 1)) == 56
    assert dimension(cartan("E8"), (0, 0, 0, 0, 0, 0, 0, 1)) == 248


def test_known_characters():
    a = cartan("A2")
    assert dominant_character(a, (1, 1)) == {(1, 1): 1, (0, 0): 2}
    assert dominant_character(a, (2, 2)) == {(2, 2): 1, (3, 0): 1, (0, 3): 1, (1, 1): 2, (0, 0): 3}
    assert weight_multiplicity(a, (1, 1), (0, 0)) == 2
    assert weight_multiplicity(cartan("G2"), (1, 0), (0, 0)) == 1
    assert weight_multiplicity(cartan("G2"), (0, 1), (0, 0)) == 2


@pytest.mark.parametrize("name,lam", [("B3", (1, 0, 1)), ("C3", (0, 1, 1)), ("D4", (1, 0, 0, 1)),
                                      ("F4", (0, 0, 0, 1)), ("G2", (2, 1)), ("E6", (1, 0, 0, 0, 0, 0))])
def test_character_sums_to_dimension(name, lam):
    a = cartan(name)
    assert sum(character(a, lam).values()) == dimension(a, lam)


def test_tensor_values():
    a2 = cartan("A2")
    got = {mu: tensor_multiplicity(a2, (1, 1), (1, 1), mu) for mu in [(2, 2), (3, 0), (0, 3), (1, 1), (0, 0)]}
    assert got == {(2, 2): 1, (3, 0): 1, (0, 3): 1, (1, 1): 2, (0, 0): 1}
    g2 = cartan("G2")
    assert [tensor_multiplicity(g2, (1, 0), (1, 0), mu) for mu in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)]] == \
        [1, 1, 1, 1, 0]
    assert [tensor_multiplicity(g2, (0, 1), (0, 1), mu) for mu in [(0, 0), (0, 1), (2, 0), (3, 0), (0, 2), (1, 1)]] \
        == [1, 1, 1, 1, 1, 0]
    b2 = cartan("B2")
    assert [tensor_multiplicity(b2, (0, 1), (0, 1), mu) for mu in [(0, 0), (1, 0), (0, 2), (1, 1)]] == [1, 1, 1, 0]


def test_a1_clebsch_gordan():
    a = cartan("A1")
    for l, n, m in itertools.product(range(5), repeat=3):
        want = int(abs(l - n) <= m <= l + n and (l + n - m) % 2 == 0)
        assert tensor_multiplicity(a, (l,), (n,), (m,)) == want


def test_branching_adjoint_a3():
    # sl4 adjoint restricted to the Levi of {1, 2}: 8 + 3 + 3bar + 1
    a = cartan("A3")
    total = 0
    for beta in _levi_candidates(a, (1, 2), (1, 0, 1)):
        m = branching_multiplicity(a, (1, 2), (1, 0, 1), beta)
        total += m * levi_dimension(a, (1, 2), beta)
    assert total == 15
    assert branching_multiplicity(a, (1, 2), (1, 0, 1), (1, 1, -1)) == 1


def _levi_candidates(a, sub, nu):
    return [b for b in character(a, nu) if all(b[i - 1] >= 0 for i in sub)]


@pytest.mark.parametrize("name,sub,nu", [("A3", (1, 3), (1, 1, 0)), ("B2", (1,), (1, 1)), ("B3", (2, 3), (1, 0, 1)),
                                         ("G2", (2,), (1, 1)), ("C3", (1, 2), (0, 1, 0))])
def test_branching_dimension_sum(name, sub, nu):
    a = cartan(name)
    total = sum(branching_multiplicity(a, sub, nu, b) * levi_dimension(a, sub, b)
                for b in _levi_candidates(a, sub, nu))
    assert total == dimension(a, nu)


def test_errors():
    a = cartan("A2")
    with pytest.raises(OracleError):
        dimension(a, (1, -1))
    with pytest.raises(OracleError):
        tensor_multiplicity(a, (1, 0), (0, 1), (0,))
    with pytest.raises(OracleError):
        branching_multiplicity(a, (1,), (1, 1), (-1, 0))


def _dominant(rank, top=2):
    return st.lists(st.integers(0, top), min_size=rank, max_size=rank).map(tuple)


@given(st.sampled_from(["A2", "B2", "G2", "A3"]), st.data())
def test_tensor_dimension_identity_and_symmetry(name, data):
    a = cartan(name)
    top = 1 if a.rank == 3 or name == "G2" else 2
    lam = data.draw(_dominant(a.rank, top))
    nu = data.draw(_dominant(a.rank, top))
    total = 0
    for mu in dominant_character(a, tuple(x + y for x, y in zip(lam, nu))):
        if not a.is_dominant(mu):
            continue
        c = tensor_multiplicity(a, lam, nu, mu)
        assert c == tensor_multiplicity(a, nu, lam, mu)
        star = lambda w: tuple(w[a.star(i) - 1] for i in a.indices)
        assert c == tensor_multiplicity(a, lam, star(mu), star(nu))
        total += c * dimension(a, mu)
    assert total == dimension(a, lam) * dimension(a, nu)


@given(st.sampled_from(["A2", "B2", "C3", "G2"]), st.data())
def test_character_is_weyl_invariant(name, data):
    a = cartan(name)
    lam = data.draw(_dominant(a.rank, 2 if a.rank == 2 else 1))
    word = data.draw(st.lists(st.integers(1, a.rank), max_size=6))
    w = weyl_from_word(a, word)
    ch = character(a, lam)
    assert all(ch.get(w.act(mu)) == m for mu, m in ch.items())
