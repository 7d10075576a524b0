import itertools

import pytest
from hypothesis import given, strategies as st

from itrails.ineq import IneqError, IneqSystem, UnboundedError, count_lattice, enumerate_lattice


def _brute(sys, box):
    return sorted(t for t in itertools.product(range(-box, box + 1), repeat=sys.nvars) if sys.satisfied(t))


def test_simplex_count():
    # x, y, z >= 0, x + y + z <= 4
    sys = IneqSystem(["x", "y", "z"])
    for k in range(3):
        sys.add_ge([int(j == k) for j in range(3)], 0)
    sys.add_le([1, 1, 1], 4)
    assert count_lattice(sys) == 35


def test_fractional_rows_are_rounded():
    sys = IneqSystem(["x"])
    sys.add_ge([2], 3)  # x >= 3/2
    sys.add_le([3], 10)  # x <= 10/3
    assert list(enumerate_lattice(sys)) == [(2,), (3,)]
    sys.add_eq([2], 5)
    assert sys.infeasible and count_lattice(sys) == 0


def test_lp_fallback_bounds_a_rotated_box():
    sys = IneqSystem(["x", "y"])
    sys.add_ge([1, -1], -1)
    sys.add_ge([-1, 1], -1)
    sys.add_le([1, 1], 4)
    sys.add_ge([1, 1], 0)
    assert sorted(enumerate_lattice(sys)) == _brute(sys, 5)


def test_unbounded_is_reported():
    sys = IneqSystem(["x", "y"])
    sys.add_ge([1, 0], 0)
    sys.add_ge([0, 1], 0)
    sys.add_le([1, -1], 0)
    with pytest.raises(UnboundedError):
        count_lattice(sys)


def test_predicates_filter_leaves():
    sys = IneqSystem(["x", "y"])
    for k in range(2):
        sys.add_ge([int(j == k) for j in range(2)], 0)
        sys.add_le([int(j == k) for j in range(2)], 3)
    sys.add_predicate("x*y is even", lambda t: t[0] * t[1] % 2 == 0)
    stats: dict = {}
    assert count_lattice(sys, stats) == 12
    assert stats["leaves"] == 16
    with pytest.raises(IneqError):
        IneqSystem.from_dict(sys.to_dict())


def test_canonical_and_json():
    sys = IneqSystem(["a", "b"])
    sys.add_ge([2, 4], 1)
    sys.add_ge([1, 2], 3)
    sys.add_eq([-1, 1], 2)
    d = sys.to_dict()
    assert d["rows"] == [{"coeffs": [1, -1], "rel": "==", "rhs": -2},
                         {"coeffs": [1, 2], "rel": ">=", "rhs": 3}]
    back = IneqSystem.from_dict(d)
    assert back.to_json() == sys.to_json()
    with pytest.raises(IneqError):
        sys.add_ge([1], 0)


def test_conflicting_equations():
    sys = IneqSystem(["a"])
    sys.add_eq([1], 1)
    sys.add_eq([1], 2)
    assert sys.canonical().infeasible


rows = st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                          st.sampled_from([">=", "<=", "=="]), st.integers(-4, 4)), max_size=5)


@given(rows)
def test_enumeration_matches_brute_force(rs):
    sys = IneqSystem(["x", "y", "z"])
    for k in range(3):
        sys.add_ge([int(j == k) for j in range(3)], -3)
        sys.add_le([int(j == k) for j in range(3)], 3)
    for c, rel, r in rs:
        {">=": sys.add_ge, "<=": sys.add_le, "==": sys.add_eq}[rel](c, r)
    pts = list(enumerate_lattice(sys))
    assert len(pts) == len(set(pts))
    assert sorted(pts) == _brute(sys, 3)
    assert count_lattice(sys.canonical()) == len(pts)
