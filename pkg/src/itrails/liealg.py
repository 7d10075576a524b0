"""Cartan data, Weyl group elements and reduced words.

Conventions: simple indices run over 1..r (Bourbaki numbering), weights are
integer tuples in the fundamental-weight basis, and ``a[i][j]`` is the value of
the j-th simple root on the i-th simple coroot.  The Langlands dual system is
the one with the transposed matrix.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

Weight = tuple[int, ...]
Word = tuple[int, ...]

MATERIALIZE_MAX_LENGTH = 16


class LieAlgError(ValueError):
    pass


def _chain(rank: int) -> list[list[int]]:
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
        if i + 1 < rank:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _bourbaki(family: str, rank: int) -> list[list[int]]:
    if family == "A" and rank >= 1:
        return _chain(rank)
    if family == "B" and rank >= 2:
        a = _chain(rank)
        a[rank - 1][rank - 2] = -2
        return a
    if family == "C" and rank >= 2:
        a = _chain(rank)
        a[rank - 2][rank - 1] = -2
        return a
    if family == "D" and rank >= 3:
        a = _chain(rank)
        a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
        return a
    if family == "E" and rank in (6, 7, 8):
        a = [[0] * rank for _ in range(rank)]
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, rank)]
        for i in range(rank):
            a[i][i] = 2
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    if family == "F" and rank == 4:
        a = _chain(4)
        a[2][1] = -2
        return a
    if family == "G" and rank == 2:
        return [[2, -3], [-1, 2]]
    raise LieAlgError(f"unsupported Cartan type {family}{rank}")


@dataclass(frozen=True)
class CartanData:
    family: str
    rank: int
    matrix: tuple[tuple[int, ...], ...]
    dual: bool = field(default=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}" + ("^dual" if self.dual else "")

    def a(self, i: int, j: int) -> int:
        return self.matrix[i - 1][j - 1]

    @property
    def indices(self) -> range:
        return range(1, self.rank + 1)

    def langlands_dual(self) -> "CartanData":
        t = tuple(zip(*self.matrix))
        return CartanData(self.family, self.rank, tuple(tuple(r) for r in t), not self.dual)

    def simple_root(self, j: int) -> Weight:
        return tuple(self.matrix[i][j - 1] for i in range(self.rank))

    def fundamental(self, i: int) -> Weight:
        return tuple(int(k == i) for k in self.indices)

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    def reflect(self, i: int, gamma: Sequence[int]) -> Weight:
        c = gamma[i - 1]
        if c == 0:
            return tuple(gamma)
        col = i - 1
        return tuple(g - c * self.matrix[r][col] for r, g in enumerate(gamma))

    def order(self, i: int, j: int) -> int:
        """Order of s_i s_j."""
        if i == j:
            return 1
        p = self.a(i, j) * self.a(j, i)
        try:
            return {0: 2, 1: 3, 2: 4, 3: 6}[p]
        except KeyError:
            raise LieAlgError(f"infinite order for ({i},{j})") from None

    @cached_property
    def _inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.rank
        m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.matrix)]
        for c in range(n):
            p = next(r for r in range(c, n) if m[r][c] != 0)
            m[c], m[p] = m[p], m[c]
            piv = m[c][c]
            m[c] = [x / piv for x in m[c]]
            for r in range(n):
                if r != c and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return tuple(tuple(row[n:]) for row in m)

    def root_coords(self, gamma: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients of gamma in the simple-root basis, i.e. gamma(omega_i^vee)."""
        inv = self._inverse
        return tuple(sum((inv[i][j] * gamma[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    def int_root_coords(self, gamma: Sequence[int]) -> tuple[int, ...] | None:
        c = self.root_coords(gamma)
        if any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def from_root_coords(self, coeffs: Sequence[int]) -> Weight:
        return tuple(sum(self.matrix[i][j] * coeffs[j] for j in range(self.rank))
                     for i in range(self.rank))

    def pair_fundamental_coweight(self, gamma: Sequence[int], i: int) -> Fraction:
        return self.root_coords(gamma)[i - 1]

    @cached_property
    def symmetrizer(self) -> tuple[Fraction, ...]:
        """Positive d_i with d_i a_ij = d_j a_ji, the smallest being 1."""
        d: dict[int, Fraction] = {1: Fraction(1)}
        stack = [1]
        while stack:
            i = stack.pop()
            for j in self.indices:
                if j not in d and self.a(i, j) != 0:
                    d[j] = d[i] * self.a(i, j) / self.a(j, i)
                    stack.append(j)
        if len(d) != self.rank:
            raise LieAlgError("Cartan matrix is decomposable")
        m = min(d.values())
        return tuple(d[i] / m for i in self.indices)

    def inner(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        """W-invariant form with (alpha_i, alpha_i) = 2 d_i."""
        c = self.root_coords(mu)
        d = self.symmetrizer
        return sum((c[j] * d[j] * lam[j] for j in range(self.rank)), Fraction(0))

    def leq(self, a: Sequence[int], b: Sequence[int]) -> bool:
        """Dominance order: b - a is a nonnegative integer combination of simple roots."""
        c = self.int_root_coords(tuple(y - x for x, y in zip(a, b)))
        return c is not None and all(x >= 0 for x in c)

    def star(self, i: int) -> int:
        w0 = longest_element(self)
        img = w0.act(self.simple_root(i))
        neg = tuple(-x for x in img)
        for j in self.indices:
            if self.simple_root(j) == neg:
                return j
        raise LieAlgError("w_o does not permute the negative simple roots")

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots as simple-root coefficient vectors, sorted by height."""
        simple = [tuple(int(k == j) for k in self.indices) for j in self.indices]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            w = self.from_root_coords(beta)
            for i in self.indices:
                c = w[i - 1]
                nb = tuple(b - (c if k == i else 0) for k, b in zip(self.indices, beta))
                if all(x >= 0 for x in nb) and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return tuple(sorted(seen, key=lambda b: (sum(b), b)))

    def is_dominant(self, gamma: Sequence[int]) -> bool:
        return all(x >= 0 for x in gamma)


_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


@lru_cache(maxsize=None)
def cartan(family: str, rank: int | None = None) -> CartanData:
    """Cartan data of a finite simple type, e.g. ``cartan("B", 3)`` or ``cartan("B3")``."""
    if rank is None:
        m = _TYPE_RE.match(family)
        if not m:
            raise LieAlgError(f"cannot parse type {family!r}")
        family, rank = m.group(1), int(m.group(2))
    family = family.upper()
    a = _bourbaki(family, rank)
    return CartanData(family, rank, tuple(tuple(r) for r in a))


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, stored canonically as the image of rho."""

    cartan: CartanData
    key: Weight

    @cached_property
    def word(self) -> Word:
        """Reduced word whose first letter is always the smallest left descent."""
        out = []
        lam = self.key
        a = self.cartan
        while True:
            i = next((k for k in a.indices if lam[k - 1] < 0), None)
            if i is None:
                break
            out.append(i)
            lam = a.reflect(i, lam)
        return tuple(out)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, gamma: Sequence[int], on: CartanData | None = None) -> Weight:
        """Act on a weight; pass ``on=cartan.langlands_dual()`` to act on coweights."""
        a = on or self.cartan
        g = tuple(gamma)
        for i in reversed(self.word):
            g = a.reflect(i, g)
        return g

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.cartan, self.act(other.key))

    def inverse(self) -> "WeylElement":
        return weyl_from_word(self.cartan, tuple(reversed(self.word)))

    def left_descents(self) -> tuple[int, ...]:
        return tuple(i for i in self.cartan.indices if self.key[i - 1] < 0)

    def right_descents(self) -> tuple[int, ...]:
        return self.inverse().left_descents()

    def left_mul(self, i: int) -> "WeylElement":
        return WeylElement(self.cartan, self.cartan.reflect(i, self.key))

    def right_mul(self, i: int) -> "WeylElement":
        return self * simple_reflection(self.cartan, i)

    def is_identity(self) -> bool:
        return self.key == self.cartan.rho

    def __repr__(self) -> str:
        return f"WeylElement({self.cartan.name}, {self.word})"


def identity(a: CartanData) -> WeylElement:
    return WeylElement(a, a.rho)


def simple_reflection(a: CartanData, i: int) -> WeylElement:
    return WeylElement(a, a.reflect(i, a.rho))


def weyl_from_word(a: CartanData, word: Sequence[int]) -> WeylElement:
    g = a.rho
    for i in reversed(tuple(word)):
        if not 1 <= i <= a.rank:
            raise LieAlgError(f"letter {i} out of range for {a.name}")
        g = a.reflect(i, g)
    return WeylElement(a, g)


def is_reduced(a: CartanData, word: Sequence[int]) -> bool:
    return weyl_from_word(a, word).length == len(word)


def longest_element(a: CartanData, subset: Sequence[int] | None = None) -> WeylElement:
    """Longest element of W, or of the parabolic subgroup generated by ``subset``."""
    if subset is None:
        return WeylElement(a, tuple(-x for x in a.rho))
    sub = sorted(set(subset))
    w = identity(a)
    while True:
        j = next((k for k in sub if w.key[k - 1] > 0), None)
        if j is None:
            return w
        w = w.left_mul(j)


def min_left_coset_rep(subset: Sequence[int], w: WeylElement) -> WeylElement:
    """Minimal length element of W_J w."""
    sub = sorted(set(subset))
    while True:
        j = next((k for k in sub if w.key[k - 1] < 0), None)
        if j is None:
            return w
        w = w.left_mul(j)


def min_orbit_rep(a: CartanData, lam: Sequence[int], gamma: Sequence[int]) -> WeylElement:
    """Minimal u with u(lam) = gamma, lam dominant."""
    if not a.is_dominant(lam):
        raise LieAlgError("orbit representative must be dominant")
    g = tuple(gamma)
    letters = []
    while True:
        i = next((k for k in a.indices if g[k - 1] < 0), None)
        if i is None:
            break
        letters.append(i)
        g = a.reflect(i, g)
    if g != tuple(lam):
        raise LieAlgError(f"{gamma} is not in the orbit of {tuple(lam)}")
    return weyl_from_word(a, letters)


def weyl_orbit(a: CartanData, lam: Sequence[int]) -> list[Weight]:
    """Orbit of a weight, in breadth-first order from the input."""
    start = tuple(lam)
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for i in a.indices:
            h = a.reflect(i, g)
            if h not in seen:
                seen.add(h)
                order.append(h)
                queue.append(h)
    return order


def all_elements(a: CartanData) -> list[WeylElement]:
    return [WeylElement(a, k) for k in weyl_orbit(a, a.rho)]


def star(a: CartanData, i: int) -> int:
    return a.star(i)


def word_star_op(a: CartanData, word: Sequence[int]) -> Word:
    """The word (i_m*, ..., i_1*)."""
    return tuple(a.star(i) for i in reversed(tuple(word)))


@lru_cache(maxsize=None)
def _words_of(a: CartanData, key: Weight) -> tuple[Word, ...]:
    w = WeylElement(a, key)
    if w.is_identity():
        return ((),)
    out = []
    for i in w.left_descents():
        for tail in _words_of(a, a.reflect(i, key)):
            out.append((i,) + tail)
    return tuple(out)


def reduced_words(w: WeylElement) -> list[Word]:
    """All reduced words of w in lexicographic order (only for length <= 16)."""
    if w.length > MATERIALIZE_MAX_LENGTH:
        raise LieAlgError(f"refusing to materialize R(w) for length {w.length}; use iter_reduced_words")
    return list(_words_of(w.cartan, w.key))


def iter_reduced_words(w: WeylElement) -> Iterator[Word]:
    """Reduced words in lexicographic order, generated lazily."""
    a = w.cartan

    def rec(key: Weight) -> Iterator[Word]:
        u = WeylElement(a, key)
        if u.is_identity():
            yield ()
            return
        for i in u.left_descents():
            for tail in rec(a.reflect(i, key)):
                yield (i,) + tail

    return rec(w.key)


@dataclass(frozen=True)
class Move:
    """Braid move replacing ``d`` letters starting at 1-based ``position``."""

    position: int
    d: int


def available_moves(a: CartanData, word: Sequence[int]) -> list[Move]:
    out = []
    n = len(word)
    for p in range(n - 1):
        i, j = word[p], word[p + 1]
        if i == j:
            continue
        d = a.order(i, j)
        if p + d <= n and all(word[p + k] == (i if k % 2 == 0 else j) for k in range(d)):
            out.append(Move(p + 1, d))
    return out


def apply_move(a: CartanData, word: Sequence[int], move: Move) -> Word:
    w = list(word)
    p, d = move.position - 1, move.d
    i, j = w[p], w[p + 1]
    seg = w[p:p + d]
    if i == j or a.order(i, j) != d or seg != [i if k % 2 == 0 else j for k in range(d)]:
        raise LieAlgError(f"no {d}-move at position {move.position} of {tuple(word)}")
    w[p:p + d] = [j if k % 2 == 0 else i for k in range(d)]
    return tuple(w)


def tits_path(a: CartanData, source: Sequence[int], target: Sequence[int]) -> list[Move]:
    """Shortest sequence of braid moves from ``source`` to ``target``.

    Bidirectional breadth-first search; ties are broken by move position,
    so the answer is deterministic.
    """
    s, t = tuple(source), tuple(target)
    ws, wt = weyl_from_word(a, s), weyl_from_word(a, t)
    if ws.length != len(s) or wt.length != len(t):
        raise LieAlgError("tits_path needs reduced words")
    if ws != wt:
        raise LieAlgError("words represent different elements")
    if s == t:
        return []
    # parents map word -> (previous word, move taking previous to word)
    fwd: dict[Word, tuple[Word, Move] | None] = {s: None}
    bwd: dict[Word, tuple[Word, Move] | None] = {t: None}
    fq, bq = [s], [t]
    meet = None
    while fq and bq and meet is None:
        grow_fwd = len(fq) <= len(bq)
        frontier, seen, other = (fq, fwd, bwd) if grow_fwd else (bq, bwd, fwd)
        nxt = []
        for w in frontier:
            for mv in available_moves(a, w):
                u = apply_move(a, w, mv)
                if u in seen:
                    continue
                seen[u] = (w, mv)
                nxt.append(u)
                if u in other and meet is None:
                    meet = u
            if meet is not None:
                break
        if grow_fwd:
            fq = nxt
        else:
            bq = nxt
    if meet is None:
        raise LieAlgError("no braid path found")
    head: list[Move] = []
    w = meet
    while fwd[w] is not None:
        prev, mv = fwd[w]
        head.append(mv)
        w = prev
    head.reverse()
    tail: list[Move] = []
    w = meet
    while bwd[w] is not None:
        prev, mv = bwd[w]
        # a braid move is its own inverse at the same position
        tail.append(mv)
        w = prev
    return head + tail


def commutation_class(a: CartanData, word: Sequence[int]) -> set[Word]:
    start = tuple(word)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for mv in available_moves(a, w):
            if mv.d == 2:
                u = apply_move(a, w, mv)
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
    return seen


def is_fully_commutative(w: WeylElement) -> bool:
    """True iff all reduced words are related by commutations only."""
    a = w.cartan
    for u in commutation_class(a, w.word):
        if any(mv.d > 2 for mv in available_moves(a, u)):
            return False
    return True


def minuscule_coset_rep(a: CartanData, i: int) -> WeylElement:
    """Minimal representative of the coset W_J s_i w_o, where J omits i."""
    w = simple_reflection(a, i) * longest_element(a)
    return min_left_coset_rep([j for j in a.indices if j != i], w)


def parse_weight(text: str, rank: int | None = None) -> Weight:
    if text.strip() == "":
        vals: tuple[int, ...] = ()
    else:
        vals = tuple(int(x) for x in text.split(","))
    if rank is not None and len(vals) != rank:
        raise LieAlgError(f"expected {rank} coordinates, got {len(vals)}")
    return vals
