"""Multiplicity polytopes: builders for every counting method, and the counts.

All trails are taken in the fundamental modules of the Langlands dual
algebra.  Weights are in fundamental-weight coordinates; the pairing of a
weight with a fundamental coweight is its simple-root coefficient.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Sequence

from .ineq import IneqSystem, count_lattice, enumerate_lattice
from .liealg import (CartanData, Weight, Word, is_reduced, longest_element, min_orbit_rep,
                     simple_reflection, weyl_from_word, weyl_orbit)
from .param import ParamError, dual_trails, root_sequence, string_cone
from .semifield import TROP, TROP_INF, Semifield

METHODS = ("lusztig-trails", "string-trails", "plucker-lusztig", "plucker-strings",
           "classical", "oracle")
REDUCTION_METHODS = ("reduction-lusztig", "reduction-string")


class CountingError(ValueError):
    pass


@dataclass(frozen=True)
class MultiplicityQuery:
    """A tensor-product query (lam, nu, mu) or a reduction query (subset, nu, beta)."""

    cartan: CartanData
    method: str
    lam: Weight | None = None
    nu: Weight | None = None
    mu: Weight | None = None
    word: Word | None = None
    subset: tuple[int, ...] | None = None
    beta: Weight | None = None

    @property
    def is_reduction(self) -> bool:
        return self.method in REDUCTION_METHODS

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"type": self.cartan.name, "method": self.method}
        for k in ("lam", "nu", "mu", "beta"):
            v = getattr(self, k)
            if v is not None:
                d[k] = list(v)
        if self.subset is not None:
            d["subset"] = list(self.subset)
        if self.word is not None:
            d["word"] = list(self.word)
        return d


def _weight(a: CartanData, w: Sequence[int] | None, what: str, dominant: bool = True) -> Weight:
    if w is None:
        raise CountingError(f"{what} is required")
    w = tuple(int(x) for x in w)
    if len(w) != a.rank:
        raise CountingError(f"{what} has {len(w)} coordinates, expected {a.rank}")
    if dominant and not a.is_dominant(w):
        raise CountingError(f"{what} = {w} is not dominant")
    return w


def _pair(a: CartanData, w: Sequence[int]) -> tuple[Fraction, ...]:
    """(w(omega_1^vee), ..., w(omega_r^vee))."""
    return a.root_coords(w)


def _sub(x: Sequence[int], y: Sequence[int]) -> Weight:
    return tuple(p - q for p, q in zip(x, y))


def _add(x: Sequence[int], y: Sequence[int]) -> Weight:
    return tuple(p + q for p, q in zip(x, y))


def _in_root_lattice(a: CartanData, w: Sequence[int]) -> bool:
    return a.int_root_coords(w) is not None


def _names(m: int) -> list[str]:
    return [f"t{k + 1}" for k in range(m)]


def _infeasible(names: list[str]) -> IneqSystem:
    return IneqSystem(names, [], True)


def default_word(a: CartanData) -> Word:
    return longest_element(a).word


def _w0_word(a: CartanData, word: Sequence[int] | None) -> Word:
    w = default_word(a) if word is None else tuple(word)
    if not is_reduced(a, w) or weyl_from_word(a, w) != longest_element(a):
        raise CountingError(f"{w} is not a reduced word for the longest element")
    return w


def _coweight(a: CartanData, elem, i: int) -> Weight:
    d = a.langlands_dual()
    return elem.act(d.fundamental(i), on=d)


# ------------------------------------------------------------ tensor products


def lusztig_trails_system(a: CartanData, lam, nu, mu, word=None) -> IneqSystem:
    w = _w0_word(a, word)
    m = len(w)
    names = _names(m)
    target = _sub(_add(lam, nu), mu)
    if not _in_root_lattice(a, target):
        return _infeasible(names)
    sys = IneqSystem(names)
    for k in range(m):
        sys.add_ge([int(j == k) for j in range(m)], 0)
    betas = root_sequence(a, w)
    rhs = _pair(a, target)
    for j in range(a.rank):
        sys.add_eq([b[j] for b in betas], rhs[j])
    w0 = longest_element(a)
    e = weyl_from_word(a, ())
    for i in a.indices:
        si = simple_reflection(a, i)
        b3 = _pair(a, _sub(_add(a.reflect(i, lam), nu), mu))[i - 1]
        for tr in dual_trails(a, i, _coweight(a, si, i), _coweight(a, w0, i), w):
            sys.add_ge(tr.c, b3)
        b4 = _pair(a, _sub(_add(lam, a.reflect(i, nu)), mu))[i - 1]
        for tr in dual_trails(a, i, _coweight(a, e, i), _coweight(a, w0 * si, i), w):
            sys.add_ge(tr.c, b4)
    return sys.canonical()


def _cap_rows(a: CartanData, sys: IneqSystem, w: Word, nu: Weight) -> None:
    m = len(w)
    for k in range(m):
        row = [0] * m
        row[k] = 1
        for l in range(k + 1, m):
            row[l] += a.a(w[k], w[l])
        sys.add_le(row, nu[w[k] - 1])


def string_trails_system(a: CartanData, lam, nu, mu, word=None) -> IneqSystem:
    w = _w0_word(a, word)
    m = len(w)
    names = _names(m)
    target = _sub(_add(lam, nu), mu)
    if not _in_root_lattice(a, target):
        return _infeasible(names)
    sys = IneqSystem(names)
    w0 = longest_element(a)
    e = weyl_from_word(a, ())
    for i in a.indices:
        si = simple_reflection(a, i)
        for tr in dual_trails(a, i, _coweight(a, e, i), _coweight(a, w0 * si, i), w):
            sys.add_ge(tr.d, 0)
    rhs = _pair(a, target)
    for j in a.indices:
        sys.add_eq([int(x == j) for x in w], rhs[j - 1])
    for i in a.indices:
        si = simple_reflection(a, i)
        for tr in dual_trails(a, i, _coweight(a, si, i), _coweight(a, w0, i), w):
            sys.add_ge(tr.d, -lam[i - 1])
    _cap_rows(a, sys, w, nu)
    return sys.canonical()


# ------------------------------------------------------------------ reduction


def _levi_word(a: CartanData, subset: Sequence[int], word) -> tuple[Word, Any]:
    w0i = longest_element(a, subset)
    x = w0i.inverse() * longest_element(a)
    w = x.word if word is None else tuple(word)
    if not is_reduced(a, w) or weyl_from_word(a, w) != x:
        raise CountingError(f"{w} is not a reduced word for w_o(I)^-1 w_o")
    return w, w0i


def _levi_beta(a: CartanData, subset: Sequence[int], beta) -> Weight:
    b = _weight(a, beta, "beta", dominant=False)
    if any(b[i - 1] < 0 for i in subset):
        raise CountingError(f"beta = {b} is not dominant for the Levi subalgebra")
    return b


def reduction_lusztig_system(a: CartanData, subset, nu, beta, word=None) -> IneqSystem:
    sub = tuple(sorted(set(subset)))
    w, w0i = _levi_word(a, sub, word)
    n = len(w)
    names = _names(n)
    diff = _sub(nu, beta)
    if not _in_root_lattice(a, diff):
        return _infeasible(names)
    sys = IneqSystem(names)
    for k in range(n):
        sys.add_ge([int(j == k) for j in range(n)], 0)
    betas = root_sequence(a, w)
    rhs = _pair(a, w0i.act(diff))
    for j in range(a.rank):
        sys.add_eq([b[j] for b in betas] if betas else [], rhs[j])
    w0 = longest_element(a)
    for i in a.indices:
        si = simple_reflection(a, i)
        b3 = _pair(a, _sub(a.reflect(i, nu), beta))[i - 1]
        for tr in dual_trails(a, i, _coweight(a, w0i, i), _coweight(a, w0 * si, i), w):
            sys.add_ge(tr.c, b3)
    return sys.canonical()


def reduction_string_system(a: CartanData, subset, nu, beta, word=None) -> IneqSystem:
    sub = tuple(sorted(set(subset)))
    w, w0i = _levi_word(a, sub, word)
    n = len(w)
    names = _names(n)
    diff = _sub(nu, beta)
    if not _in_root_lattice(a, diff):
        return _infeasible(names)
    sys = IneqSystem(names)
    w0 = longest_element(a)
    for i in a.indices:
        si = simple_reflection(a, i)
        for tr in dual_trails(a, i, _coweight(a, w0i, i), _coweight(a, w0 * si, i), w):
            sys.add_ge(tr.d, 0)
    rhs = _pair(a, diff)
    for j in a.indices:
        sys.add_eq([int(x == j) for x in w], rhs[j - 1])
    _cap_rows(a, sys, w, nu)
    return sys.canonical()


# ------------------------------------------------------------ Pluecker models


@dataclass
class PluckerTuple:
    """Tropical Pluecker coordinates M[(i, gamma)] and derived M_{s_i omega_i, gamma}."""

    values: dict[tuple[int, Weight], Any]
    derived: dict[tuple[int, Weight], Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        def enc(d):
            return [{"i": i, "gamma": list(g), "value": v} for (i, g), v in sorted(d.items())]
        return {"values": enc(self.values), "derived": enc(self.derived)}


def subflag_minor(c: CartanData, M: Callable[[int, Weight], Any], i: int, gamma: Sequence[int],
                  K: Semifield) -> Any:
    """M_{s_i omega_i, gamma} from the coordinates M_{omega_j, delta} (weights of ``c``)."""
    om = c.fundamental(i)
    gamma = tuple(gamma)
    if gamma == om:
        raise CountingError("M_{s_i omega_i, omega_i} is not a derived coordinate")
    u = min_orbit_rep(c, om, gamma)
    v = u * simple_reflection(c, i)
    word = v.word + (i,)
    if len(word) != u.length:
        raise CountingError("minimal representative does not end with the required letter")
    terms = []
    for k in range(len(word)):
        if word[k] != i:
            continue
        uk = weyl_from_word(c, word[:k + 1])
        uk1 = weyl_from_word(c, word[:k])
        f = [K.inv(M(i, uk.act(om))), K.inv(M(i, uk1.act(om)))]
        for j in c.indices:
            if j != i and c.a(j, i):
                f.append(K.pow(M(j, uk.act(c.fundamental(j))), -c.a(j, i)))
        terms.append(K.prod(f))
    return K.mul(M(i, gamma), K.sum(terms))


@lru_cache(maxsize=None)
def _plucker_forms(a: CartanData, word: Word, side: str) -> dict:
    """(i, gamma) -> tuple of exponent vectors; tropical value is the minimum of the dots."""
    d = a.langlands_dual()
    out = {}
    for i in a.indices:
        om = d.fundamental(i)
        for g in weyl_orbit(d, om):
            if side == "lusztig":
                trs = dual_trails(a, i, om, g, word)
                out[(i, g)] = tuple(sorted({tr.c for tr in trs}))
            else:
                j = a.star(i)
                neg = lambda x: tuple(-y for y in x)
                trs = dual_trails(a, j, neg(g), neg(om), word)
                out[(i, g)] = tuple(sorted({tr.d for tr in trs}))
    return out


def _dot(c, t) -> int:
    return sum(x * y for x, y in zip(c, t))


def _tmin(forms, t):
    return min(_dot(c, t) for c in forms) if forms else TROP_INF


class _PluckerEval:
    def __init__(self, a: CartanData, word: Word, side: str):
        self.a = a
        self.d = a.langlands_dual()
        self.word = word
        self.forms = _plucker_forms(a, word, side)

    def coords(self, t) -> Callable[[int, Weight], int]:
        memo: dict = {}

        def M(i: int, g: Weight) -> int:
            key = (i, g)
            if key not in memo:
                memo[key] = _tmin(self.forms[key], t)
            return memo[key]

        return M

    def derived(self, M, i: int, g: Weight) -> int:
        return subflag_minor(self.d, M, i, g, TROP)


def plucker_coordinates(a: CartanData, word: Sequence[int], t: Sequence[int], side: str,
                        check: bool = True) -> PluckerTuple:
    """All tropical Pluecker coordinates of Lusztig (``side='lusztig'``) or string parameters."""
    w = _w0_word(a, word)
    if side not in ("lusztig", "string"):
        raise CountingError(f"unknown side {side!r}")
    t = tuple(int(x) for x in t)
    if len(t) != len(w):
        raise CountingError("parameter length does not match the word")
    if check:
        if side == "lusztig" and any(x < 0 for x in t):
            raise CountingError("Lusztig parameters must be nonnegative")
        if side == "string" and not string_cone(a, w).satisfied(t):
            raise CountingError("string parameters must lie in the string cone")
    ev = _PluckerEval(a, w, side)
    M = ev.coords(t)
    values = {key: M(*key) for key in ev.forms}
    derived = {}
    for i, g in ev.forms:
        if g != ev.d.fundamental(i):
            derived[(i, g)] = ev.derived(M, i, g)
    return PluckerTuple(values, derived)


def _equal_condition(sys: IneqSystem, forms, rhs, label: str, mkpred) -> None:
    if len(forms) == 1:
        sys.add_eq(forms[0], rhs)
    else:
        sys.add_predicate(label, mkpred)


def plucker_lusztig_system(a: CartanData, lam, nu, mu, word=None) -> IneqSystem:
    w = _w0_word(a, word)
    m = len(w)
    names = _names(m)
    target = _sub(_add(lam, nu), mu)
    if not _in_root_lattice(a, target):
        return _infeasible(names)
    ev = _PluckerEval(a, w, "lusztig")
    d = ev.d
    w0 = longest_element(a)
    sys = IneqSystem(names)
    # the image of the model is parametrized by t >= 0
    for k in range(m):
        sys.add_ge([int(j == k) for j in range(m)], 0)
    rhs2 = _pair(a, target)
    for i in a.indices:
        om = d.fundamental(i)
        si = simple_reflection(a, i)
        for c in ev.forms[(i, om)]:
            sys.add_eq(c, 0)
        for c in ev.forms[(i, d.reflect(i, om))]:
            sys.add_ge(c, 0)
        low = _coweight(a, w0, i)
        forms = ev.forms[(i, low)]
        r2 = rhs2[i - 1]
        _equal_condition(sys, forms, r2, f"M[{i},w0] == {r2}",
                         lambda t, f=forms, r=r2: _tmin(f, t) == r)
        b3 = _pair(a, _sub(_add(a.reflect(i, lam), nu), mu))[i - 1]

        def cond3(t, i=i, low=low, b3=b3):
            return ev.derived(ev.coords(t), i, low) >= b3

        sys.add_predicate(f"M[s{i} omega{i}, w0 omega{i}] >= {b3}", cond3)
        b4 = _pair(a, _sub(_add(lam, a.reflect(i, nu)), mu))[i - 1]
        for c in ev.forms[(i, _coweight(a, w0 * si, i))]:
            sys.add_ge(c, b4)
    return sys.canonical()


def plucker_strings_system(a: CartanData, lam, nu, mu, word=None) -> IneqSystem:
    w = _w0_word(a, word)
    m = len(w)
    names = _names(m)
    target = _sub(_add(lam, nu), mu)
    if not _in_root_lattice(a, target):
        return _infeasible(names)
    ev = _PluckerEval(a, w, "string")
    d = ev.d
    w0 = longest_element(a)
    sys = IneqSystem(names)
    # strings are nonnegative; these rows only bound the search
    for k in range(m):
        sys.add_ge([int(j == k) for j in range(m)], 0)
    rhs2 = _pair(a, target)
    for i in a.indices:
        om = d.fundamental(i)
        si = simple_reflection(a, i)
        low = _coweight(a, w0, i)
        f0 = ev.forms[(i, low)]
        _equal_condition(sys, f0, 0, f"M[{i},w0] == 0", lambda t, f=f0: _tmin(f, t) == 0)

        def cond1(t, i=i, low=low):
            return ev.derived(ev.coords(t), i, low) >= 0

        sys.add_predicate(f"M[s{i} omega{i}, w0 omega{i}] >= 0", cond1)
        f2 = ev.forms[(i, om)]
        r2 = -rhs2[i - 1]
        _equal_condition(sys, f2, r2, f"M[{i},{i}] == {r2}", lambda t, f=f2, r=r2: _tmin(f, t) == r)
        for c in ev.forms[(i, _coweight(a, w0 * si, i))]:
            sys.add_ge(c, -lam[a.star(i) - 1])
        b4 = -_pair(a, _sub(_add(a.reflect(i, lam), nu), a.reflect(i, mu)))[i - 1]
        for c in ev.forms[(i, d.reflect(i, om))]:
            sys.add_ge(c, b4)
    return sys.canonical()


# ------------------------------------------------------------------ classical


@dataclass(frozen=True)
class ClassicalLayout:
    """Variables t_i^(j) of the classical systems and the index map to node numbers."""

    family: str
    rank: int
    variables: tuple[tuple[int, int], ...]  # (i, j) in word order
    index_map: dict[int, int]  # classical label -> node number

    def letter(self, i: int) -> int:
        if self.family == "D" and abs(i) == 1:
            return i
        return abs(i)

    @property
    def word(self) -> Word:
        return tuple(self.index_map[self.letter(i)] for i, _ in self.variables)

    @property
    def names(self) -> list[str]:
        return [f"t[{i}]^({j})" for i, j in self.variables]


def classical_layout(family: str, rank: int) -> ClassicalLayout:
    r = rank
    if family in ("B", "C"):
        if r < 2:
            raise CountingError("classical systems of type B/C need rank >= 2")
        index_map = {p: r - p for p in range(r)}
        var = [(i, j) for j in range(r) for i in range(-j, j + 1)]
    elif family == "D":
        if r < 3:
            raise CountingError("classical systems of type D need rank >= 3")
        index_map = {p: r - p for p in range(1, r)}
        index_map[-1] = r
        var = [(i, j) for j in range(1, r) for i in list(range(-j, 0)) + list(range(1, j + 1))]
    else:
        raise CountingError(f"no classical system for family {family}")
    return ClassicalLayout(family, r, tuple(var), index_map)


class _Lin:
    """Tiny linear-form builder over the classical variables, zero outside the range."""

    def __init__(self, layout: ClassicalLayout):
        self.pos = {v: k for k, v in enumerate(layout.variables)}
        self.n = len(layout.variables)

    def form(self, *terms: tuple[int, int, int]) -> list[int]:
        row = [0] * self.n
        for coef, i, j in terms:
            k = self.pos.get((i, j))
            if k is not None:
                row[k] += coef
        return row


def classical_system(a: CartanData, lam, nu, mu) -> tuple[IneqSystem, ClassicalLayout]:
    lay = classical_layout(a.family, a.rank)
    r = a.rank
    L = _Lin(lay)
    names = lay.names
    target = _sub(_add(lam, nu), mu)
    if not _in_root_lattice(a, target):
        return _infeasible(names), lay
    imap = lay.index_map
    lam_at = lambda p: lam[imap[p] - 1]
    nu_at = lambda p: nu[imap[p] - 1]
    rhs = _pair(a, target)
    sys = IneqSystem(names)
    ge = sys.add_ge

    def le(form, bound):
        sys.add_le(form, bound)

    if a.family in ("B", "C"):
        av = 1 if a.family == "B" else 2
        if (2 * 1) % av:
            raise CountingError("2/a is not integral")
        ta = 2 // av
        # (1) the chains 2t_{-j} >= ... >= 2t_{-1} >= a t_0 >= 2t_1 >= ... >= 2t_j >= 0
        for j in range(r):
            chain = [(2, i) for i in range(-j, 0)] + [(av, 0)] + [(2, i) for i in range(1, j + 1)]
            for (c1, i1), (c2, i2) in zip(chain, chain[1:]):
                ge(L.form((c1, i1, j), (-c2, i2, j)), 0)
            c, i = chain[-1]
            ge(L.form((c, i, j)), 0)
        # (2) weight
        for p in range(r):
            ge_eq = L.form(*[(1, i, j) for (i, j) in lay.variables if abs(i) == p])
            sys.add_eq(ge_eq, rhs[imap[p] - 1])
        # (3)
        le(L.form((1, 0, 0)), lam_at(0))
        for j in range(1, r):
            b = lam_at(j)
            le(L.form((1, j, j)), b)
            le(L.form((av, 0, j), (-1, 1, j - 1), (-1, -1, j)), b)
            le(L.form((1, 1, j - 1), (1, -1, j), (-av, 0, j - 1)), b)
            for i in range(1, j):
                _phi_rows(L, le, i, j, b)
        # (4); sums over k > j run up to k = r with the zero convention
        for j in range(r):
            terms = [(1, 0, j)]
            for k in range(j + 1, r + 1):
                terms += [(ta * av, 0, k), (-ta, -1, k), (-ta, 1, k - 1)]
            le(L.form(*terms), nu_at(0))
        if r > 1:
            for j in range(1, r):
                t1 = [(1, -1, j)]
                t2 = [(1, 1, j)]
                for k in range(j + 1, r + 1):
                    t1 += [(2, -1, k), (2, 1, k - 1), (-av, 0, k - 1), (-1, -2, k), (-1, 2, k - 1)]
                    t2 += [(2, -1, k), (2, 1, k), (-av, 0, k), (-1, -2, k), (-1, 2, k - 1)]
                le(L.form(*t1), nu_at(1))
                le(L.form(*t2), nu_at(1))
        _nu_rows_high(L, le, r, nu_at, start=2)
    else:
        # (1)
        for j in range(1, r):
            for i in range(-j, -2):
                ge(L.form((1, i, j), (-1, i + 1, j)), 0)
            for s in (-1, 1):
                if j >= 2:
                    ge(L.form((1, -2, j), (-1, s, j)), 0)
                    ge(L.form((1, s, j), (-1, 2, j)), 0)
                else:
                    ge(L.form((1, s, j)), 0)
            for i in range(2, j):
                ge(L.form((1, i, j), (-1, i + 1, j)), 0)
            if j >= 2:
                ge(L.form((1, j, j)), 0)
        # (2)
        for p in imap:
            vars_p = [(1, i, j) for (i, j) in lay.variables if lay.letter(i) == p]
            sys.add_eq(L.form(*vars_p), rhs[imap[p] - 1])
        # (3)
        for s in (-1, 1):
            le(L.form((1, s, 1)), lam_at(s))
        for j in range(2, r):
            b = lam_at(j)
            le(L.form((1, j, j)), b)
            for s in (-1, 1):
                le(L.form((1, s, j), (-1, -s, j - 1)), b)
            le(L.form((1, 1, j), (1, -1, j), (-1, -2, j), (-1, 2, j - 1)), b)
            le(L.form((1, -2, j), (1, 2, j - 1), (-1, 1, j - 1), (-1, -1, j - 1)), b)
            for i in range(2, j):
                _phi_rows(L, le, i, j, b)
        # (4)
        for s in (-1, 1):
            for j in range(1, r):
                terms = [(1, s, j)]
                for k in range(j + 1, r + 1):
                    terms += [(2, s, k), (-1, -2, k), (-1, 2, k - 1)]
                le(L.form(*terms), nu_at(s))
        _nu_rows_high(L, le, r, nu_at, start=2)
    return sys.canonical(), lay


def _phi_rows(L: _Lin, le, i: int, j: int, b: int) -> None:
    le(L.form((1, i, j), (1, -i, j), (-1, i + 1, j - 1), (-1, -i - 1, j)), b)
    le(L.form((1, i + 1, j - 1), (1, -i - 1, j), (-1, -i, j - 1), (-1, i, j - 1)), b)
    for s in (1, -1):
        le(L.form((1, s * i, j), (-1, s * i, j - 1)), b)


def _nu_rows_high(L: _Lin, le, r: int, nu_at, start: int) -> None:
    for i in range(start, r):
        for j in range(i, r):
            t1 = [(1, -i, j)]
            t2 = [(1, i, j)]
            for k in range(j + 1, r + 1):
                t1 += [(2, -i, k), (2, i, k - 1), (-1, -i + 1, k - 1), (-1, i - 1, k - 1),
                       (-1, -i - 1, k), (-1, i + 1, k - 1)]
                t2 += [(2, -i, k), (2, i, k), (-1, -i + 1, k), (-1, i - 1, k),
                       (-1, -i - 1, k), (-1, i + 1, k - 1)]
            le(L.form(*t1), nu_at(i))
            le(L.form(*t2), nu_at(i))


# ----------------------------------------------------------------- p x q case


def _pq_names(p: int, q: int) -> list[str]:
    return [f"t{i}_{j}" for i in range(1, p + 1) for j in range(1, q + 1)]


def reduction_pq(p: int, q: int, nu, beta, method: str) -> IneqSystem:
    """Type A_{p+q-1} reduction to I = [1,r] minus {p}, over p x q integer matrices."""
    from .liealg import cartan

    if p < 1 or q < 1:
        raise CountingError("p and q must be positive")
    r = p + q - 1
    a = cartan("A", r)
    nu = _weight(a, nu, "nu")
    subset = [i for i in a.indices if i != p]
    beta = _levi_beta(a, subset, beta)
    names = _pq_names(p, q)
    diff = _sub(nu, beta)
    if not _in_root_lattice(a, diff):
        return _infeasible(names)
    rhs = _pair(a, diff)
    pos = {(i, j): (i - 1) * q + (j - 1) for i in range(1, p + 1) for j in range(1, q + 1)}
    n = p * q

    def form(*terms):
        row = [0] * n
        for c, i, j in terms:
            k = pos.get((i, j))
            if k is not None:
                row[k] += c
        return row

    sys = IneqSystem(names)
    if method == "lusztig":
        for k in range(n):
            sys.add_ge([int(x == k) for x in range(n)], 0)
        for l in range(1, r + 1):
            sys.add_eq(form(*[(1, i, j) for (i, j) in pos if i <= l and j <= p + q - l]), rhs[l - 1])
        for i in range(1, p):
            for j in range(1, q + 1):
                terms = []
                for k in range(0, q + 1):
                    terms += [(1, i, j + k), (-1, i + 1, j + k + 1)]
                sys.add_le(form(*terms), nu[i - 1])
        sys.add_le(form((1, p, q)), nu[p - 1])
        for j in range(1, q):
            for i in range(1, p + 1):
                terms = []
                for k in range(0, p + 1):
                    terms += [(1, i + k, j), (-1, i + k + 1, j + 1)]
                sys.add_le(form(*terms), nu[p + q - j - 1])
    elif method == "string":
        sys.rows.extend(pq_plane_partition_rows(p, q).rows)
        for l in range(1, r + 1):
            sys.add_eq(form(*[(1, i, j) for (i, j) in pos if j - i == l - p]), rhs[l - 1])
        for l in range(1, r + 1):
            for (i, j) in pos:
                if j - i != l - p:
                    continue
                terms = [(1, i, j)]
                for k in range(1, max(p, q) + 1):
                    terms += [(2, i + k, j + k), (-1, i + k - 1, j + k), (-1, i + k, j + k - 1)]
                sys.add_le(form(*terms), nu[l - 1])
    else:
        raise CountingError(f"unknown p x q method {method!r}")
    return sys.canonical()


def pq_plane_partition_rows(p: int, q: int) -> IneqSystem:
    """t_ij >= max(t_{i+1,j}, t_{i,j+1}) with zeros outside the rectangle."""
    sys = IneqSystem(_pq_names(p, q))
    n = p * q
    idx = lambda i, j: (i - 1) * q + (j - 1)
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            for di, dj in ((1, 0), (0, 1)):
                row = [0] * n
                row[idx(i, j)] += 1
                if i + di <= p and j + dj <= q:
                    row[idx(i + di, j + dj)] -= 1
                sys.add_ge(row, 0)
    return sys


def is_plane_partition(p: int, q: int, t: Sequence[int]) -> bool:
    get = lambda i, j: t[(i - 1) * q + (j - 1)] if 1 <= i <= p and 1 <= j <= q else 0
    return all(get(i, j) >= max(get(i + 1, j), get(i, j + 1))
               for i in range(1, p + 1) for j in range(1, q + 1))


# ---------------------------------------------------------------- dispatcher


def build_system(query: MultiplicityQuery) -> IneqSystem:
    a = query.cartan
    meth = query.method
    if meth in REDUCTION_METHODS:
        if query.subset is None:
            raise CountingError("reduction queries need a subset")
        sub = tuple(sorted(set(query.subset)))
        if any(not 1 <= i <= a.rank for i in sub):
            raise CountingError(f"subset {sub} out of range")
        nu = _weight(a, query.nu, "nu")
        beta = _levi_beta(a, sub, query.beta)
        f = reduction_lusztig_system if meth == "reduction-lusztig" else reduction_string_system
        return f(a, sub, nu, beta, query.word)
    lam = _weight(a, query.lam, "lambda")
    nu = _weight(a, query.nu, "nu")
    mu = _weight(a, query.mu, "mu")
    builders = {
        "lusztig-trails": lusztig_trails_system,
        "string-trails": string_trails_system,
        "plucker-lusztig": plucker_lusztig_system,
        "plucker-strings": plucker_strings_system,
    }
    if meth in builders:
        return builders[meth](a, lam, nu, mu, query.word)
    if meth == "classical":
        return classical_system(a, lam, nu, mu)[0]
    raise CountingError(f"method {meth!r} does not build a system")


def multiplicity(query: MultiplicityQuery) -> dict:
    """Count for a query, with diagnostics."""
    from . import oracle

    t0 = time.perf_counter()
    a = query.cartan
    if query.method == "oracle":
        lam = _weight(a, query.lam, "lambda")
        nu = _weight(a, query.nu, "nu")
        mu = _weight(a, query.mu, "mu")
        count = oracle.tensor_multiplicity(a, lam, nu, mu)
        diag = {"enumerated_points": None, "variables": 0, "rows": 0}
    elif query.method == "branching-oracle":
        count = oracle.branching_multiplicity(a, query.subset or (), query.nu, query.beta)
        diag = {"enumerated_points": None, "variables": 0, "rows": 0}
    else:
        try:
            sys = build_system(query)
        except ParamError as exc:
            raise CountingError(str(exc)) from None
        stats: dict = {}
        count = count_lattice(sys, stats)
        diag = {"enumerated_points": stats.get("leaves", 0), "variables": sys.nvars,
                "rows": len(sys.rows)}
    diag["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return {"count": count, "diagnostics": diag}


def count(query: MultiplicityQuery) -> int:
    return multiplicity(query)["count"]


def solutions(query: MultiplicityQuery) -> list[tuple[int, ...]]:
    return sorted(enumerate_lattice(build_system(query)))
