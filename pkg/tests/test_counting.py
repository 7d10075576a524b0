import itertools

import pytest
from hypothesis import given, strategies as st

from itrails.counting import (METHODS, CountingError, MultiplicityQuery, build_system, classical_layout,
                              classical_system, count, is_plane_partition, lusztig_trails_system,
                              multiplicity, plucker_coordinates, pq_plane_partition_rows, reduction_pq,
                              solutions, string_trails_system)
from itrails.ineq import count_lattice, enumerate_lattice
from itrails.liealg import cartan, longest_element, reduced_words
from itrails.oracle import branching_multiplicity, tensor_multiplicity
from itrails.param import lusztig_to_string, string_cone
from itrails.trails import enumerate_trails

TRAIL_METHODS = [m for m in METHODS if m not in ("classical", "oracle")]


def _q(name, method, lam, nu, mu, word=None):
    return MultiplicityQuery(cartan(name), method, lam, nu, mu, word)


@pytest.mark.parametrize("method", TRAIL_METHODS + ["oracle"])
def test_a2_rho_rho_rho(method):
    assert count(_q("A2", method, (1, 1), (1, 1), (1, 1))) == 2


def test_classical_needs_a_classical_family():
    with pytest.raises(CountingError):
        count(_q("A2", "classical", (1, 1), (1, 1), (1, 1)))


@pytest.mark.parametrize("method", TRAIL_METHODS + ["oracle"])
def test_trivial_weights(method):
    assert count(_q("B2", method, (0, 0), (0, 0), (0, 0))) == 1


def test_a1_systems():
    a = cartan("A1")
    s = lusztig_trails_system(a, (1,), (1,), (1,))
    assert s.infeasible and count_lattice(s) == 0
    s = lusztig_trails_system(a, (1,), (1,), (0,))
    assert solutions(MultiplicityQuery(a, "lusztig-trails", (1,), (1,), (0,))) == [(1,)]
    assert {(tuple(c), rel, r) for c, rel, r in s.rows} == {((1,), "==", 1), ((1,), ">=", 0)}


def test_string_trails_contain_the_cone():
    a = cartan("A2")
    rows = set(string_trails_system(a, (1, 1), (1, 1), (1, 1), (1, 2, 1)).rows)
    assert set(string_cone(a, (1, 2, 1)).rows) <= rows


def test_multiplicity_diagnostics():
    out = multiplicity(_q("A2", "string-trails", (1, 1), (1, 1), (1, 1)))
    assert out["count"] == 2
    d = out["diagnostics"]
    assert d["variables"] == 3 and d["enumerated_points"] >= 2 and d["elapsed_ms"] >= 0


def test_plucker_example():
    a = cartan("A2")
    pc = plucker_coordinates(a, (1, 2, 1), (1, 2, 3), "lusztig")
    assert pc.values[(1, (0, -1))] == 1 + 2
    assert all(v == 0 for (i, g), v in pc.values.items() if g == a.fundamental(i))
    zero = plucker_coordinates(a, (1, 2, 1), (0, 0, 0), "lusztig")
    assert set(zero.values.values()) == {0} and set(zero.derived.values()) == {0}
    with pytest.raises(CountingError):
        plucker_coordinates(a, (1, 2, 1), (0, 0, 1), "string")  # outside the cone


def test_errors():
    with pytest.raises(CountingError):
        count(_q("A2", "lusztig-trails", (1, -1), (1, 1), (1, 1)))
    with pytest.raises(CountingError):
        count(_q("A2", "lusztig-trails", (1, 1), (1, 1), (1, 1), word=(1, 2)))
    with pytest.raises(CountingError):
        build_system(_q("A2", "oracle", (1, 1), (1, 1), (1, 1)))
    with pytest.raises(CountingError):
        classical_layout("A", 3)


SMALL = [("A1", 2), ("A2", 1), ("B2", 1), ("C2", 1), ("G2", 1)]


@pytest.mark.parametrize("name,top", SMALL)
def test_all_methods_match_oracle(name, top):
    a = cartan(name)
    words = reduced_words(longest_element(a))[:2]
    box = list(itertools.product(range(top + 1), repeat=a.rank))
    for lam, nu, mu in itertools.product(box, repeat=3):
        want = tensor_multiplicity(a, lam, nu, mu)
        for w in words:
            for m in TRAIL_METHODS:
                assert count(MultiplicityQuery(a, m, lam, nu, mu, w)) == want, (m, w, lam, nu, mu)


@pytest.mark.parametrize("name,top", [("B2", 1), ("C2", 1), ("B3", 1), ("C3", 1), ("D4", 1)])
def test_classical_matches_string_trails(name, top):
    a = cartan(name)
    lay = classical_layout(a.family, a.rank)
    box = list(itertools.product(range(top + 1), repeat=a.rank))
    picks = box if a.rank <= 3 else [w for w in box if sum(w) <= 1]
    for lam, nu, mu in itertools.product(picks, repeat=3):
        sys, layout = classical_system(a, lam, nu, mu)
        assert layout == lay
        assert count_lattice(sys) == count(MultiplicityQuery(a, "string-trails", lam, nu, mu, lay.word))


def test_classical_layout_index_maps():
    assert classical_layout("B", 3).index_map == {0: 3, 1: 2, 2: 1}
    assert classical_layout("D", 4).index_map == {1: 3, 2: 2, 3: 1, -1: 4}
    for fam, r in [("B", 2), ("C", 3), ("D", 4)]:
        lay = classical_layout(fam, r)
        assert lay.word in reduced_words(longest_element(cartan(f"{fam}{r}")))
        assert len(lay.names) == len(lay.variables)


@pytest.mark.parametrize("name,subsets,top", [("A2", [(1,), (2,)], 2), ("A3", [(1, 2), (1, 3), (2,)], 1),
                                              ("B2", [(1,), (2,)], 2), ("G2", [(1,), (2,)], 1)])
def test_reductions_match_branching(name, subsets, top):
    a = cartan(name)
    for sub in subsets:
        for nu in itertools.product(range(top + 1), repeat=a.rank):
            for beta in itertools.product(range(-top - 1, top + 2), repeat=a.rank):
                if any(beta[i - 1] < 0 for i in sub):
                    continue
                want = branching_multiplicity(a, sub, nu, beta)
                for m in ("reduction-lusztig", "reduction-string"):
                    q = MultiplicityQuery(a, m, nu=nu, subset=sub, beta=beta)
                    assert count(q) == want, (m, sub, nu, beta)


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_pq_corollaries(p, q):
    a = cartan("A", p + q - 1)
    sub = [i for i in a.indices if i != p]
    for nu in itertools.product(range(2), repeat=a.rank):
        for beta in itertools.product(range(-2, 3), repeat=a.rank):
            if any(beta[i - 1] < 0 for i in sub):
                continue
            want = branching_multiplicity(a, sub, nu, beta)
            assert count_lattice(reduction_pq(p, q, nu, beta, "lusztig")) == want
            sys = reduction_pq(p, q, nu, beta, "string")
            pts = list(enumerate_lattice(sys))
            assert len(pts) == want
            assert all(is_plane_partition(p, q, t) for t in pts)


def test_plane_partition_rows():
    sys = pq_plane_partition_rows(2, 2)
    for t in itertools.product(range(3), repeat=4):
        assert sys.satisfied(t) == is_plane_partition(2, 2, t)
    with pytest.raises(CountingError):
        reduction_pq(0, 1, (1,), (1,), "lusztig")


def test_reduction_is_a_tensor_multiplicity_for_large_lambda():
    # with lambda large off the subset, branching equals c_{lambda,nu}^{lambda+beta}
    a = cartan("A2")
    sub, nu = (1,), (1, 1)
    for beta in [(0, 1), (1, 0), (2, -1), (0, -2), (1, -3)]:
        lam = (0, 10)
        mu = tuple(x + y for x, y in zip(lam, beta))
        want = count(MultiplicityQuery(a, "reduction-string", nu=nu, subset=sub, beta=beta))
        assert tensor_multiplicity(a, lam, nu, mu) == want


@given(st.sampled_from(["A2", "B2", "G2"]), st.data())
def test_lusztig_points_map_to_string_points(name, data):
    # the Lusztig-trail polytope maps onto the string-trail polytope of the same query
    a = cartan(name)
    w = reduced_words(longest_element(a))[0]
    top = 1
    lam, nu, mu = (tuple(data.draw(st.lists(st.integers(0, top), min_size=a.rank, max_size=a.rank)))
                   for _ in range(3))
    lus = solutions(MultiplicityQuery(a, "lusztig-trails", lam, nu, mu, w))
    strs = solutions(MultiplicityQuery(a, "string-trails", lam, nu, mu, w))
    assert len(lus) == len(strs)


@given(st.sampled_from(["A2", "B2", "C2", "G2"]), st.data())
def test_plucker_values_are_trail_minima(name, data):
    a = cartan(name)
    w = data.draw(st.sampled_from(reduced_words(longest_element(a))))
    t = data.draw(st.lists(st.integers(0, 3), min_size=len(w), max_size=len(w)))
    pc = plucker_coordinates(a, w, t, "lusztig")
    d = a.langlands_dual()
    from itrails.repmod import build_module

    for (i, g), v in pc.values.items():
        trails = enumerate_trails(build_module(d, i), d.fundamental(i), g, w)
        assert v == min(sum(c * x for c, x in zip(tr.c, t)) for tr in trails)
    s = lusztig_to_string(a, w, w, t)
    assert string_cone(a, w).satisfied(s)
    plucker_coordinates(a, w, s, "string")
