"""Enumeration of trails in a module along a word, plus their bounds.

A trail from gamma to delta along (i_1, ..., i_l) is a chain of weights
gamma = g_0, g_1, ..., g_l = delta with g_{k-1} - g_k = c_k alpha_{i_k}, c_k >= 0,
such that e_{i_1}^{c_1} ... e_{i_l}^{c_l} is nonzero from the delta weight space
to the gamma weight space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .liealg import CartanData, Weight, Word, is_reduced, min_orbit_rep, weyl_from_word, LieAlgError
from .repmod import Module, Vec, _axpy


class TrailError(ValueError):
    pass


@dataclass(frozen=True)
class Trail:
    weights: tuple[Weight, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]


def trail_from_weights(a: CartanData, word: Sequence[int], weights: Sequence[Weight]) -> Trail:
    c, d = [], []
    for k, i in enumerate(word):
        g0, g1 = weights[k], weights[k + 1]
        root = a.simple_root(i)
        ck = (g0[i - 1] - g1[i - 1]) // 2
        if tuple(x - ck * y for x, y in zip(g0, root)) != tuple(g1):
            raise TrailError("consecutive weights do not differ by a multiple of the simple root")
        c.append(ck)
        d.append(g0[i - 1] - ck)
    return Trail(tuple(tuple(w) for w in weights), tuple(c), tuple(d))


def _reduce_span(vectors: list[Vec]) -> list[Vec]:
    """Row-reduced basis of the span of sparse vectors."""
    rows: list[tuple[Vec, int]] = []
    for v in vectors:
        v = dict(v)
        for row, piv in rows:
            c = v.get(piv)
            if c:
                _axpy(v, -c / row[piv], row)
        if v:
            piv = min(v)
            for idx, (row, p) in enumerate(rows):
                c = row.get(piv)
                if c:
                    _axpy(row, -c / v[piv], v)
            rows.append((v, piv))
    return [r for r, _ in rows]


def trail_bounds(a: CartanData, gamma: Sequence[int], delta: Sequence[int],
                 word: Sequence[int]) -> tuple[list[Weight], list[Weight]]:
    """Lower and upper weight chains that any trail must lie between."""
    lo = [tuple(gamma)]
    for i in word:
        g = lo[-1]
        lo.append(a.reflect(i, g) if g[i - 1] > 0 else g)
    up = [tuple(delta)]
    for i in reversed(tuple(word)):
        g = up[-1]
        up.append(a.reflect(i, g) if g[i - 1] < 0 else g)
    up.reverse()
    return lo, up


def _bounds_apply(mod: Module, gamma: Weight, delta: Weight, word: Word) -> bool:
    a = mod.cartan
    if not is_reduced(a, word):
        return False
    try:
        min_orbit_rep(a, mod.highest, gamma)
        min_orbit_rep(a, mod.highest, delta)
    except LieAlgError:
        return False
    return True


_CACHE: dict[tuple, tuple[Trail, ...]] = {}


def enumerate_trails(mod: Module, gamma: Sequence[int], delta: Sequence[int],
                     word: Sequence[int], use_bounds: bool | None = None) -> tuple[Trail, ...]:
    """All trails from gamma to delta along word, sorted by their c-vectors.

    ``use_bounds=None`` prunes with the bound chains whenever they are known to
    apply (extremal endpoints and a reduced word).
    """
    gamma, delta, word = tuple(gamma), tuple(delta), tuple(word)
    a = mod.cartan
    for i in word:
        if not 1 <= i <= a.rank:
            raise TrailError(f"letter {i} out of range")
    if not mod.has_weight(gamma) or not mod.has_weight(delta):
        raise TrailError("endpoints must be weights of the module")
    if use_bounds is None:
        use_bounds = _bounds_apply(mod, gamma, delta, word)
    key = (a, mod.highest, gamma, delta, word, use_bounds)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    out = _dfs(mod, gamma, delta, word, use_bounds)
    _CACHE[key] = out
    return out


def _dfs(mod: Module, gamma: Weight, delta: Weight, word: Word, use_bounds: bool) -> tuple[Trail, ...]:
    a = mod.cartan
    l = len(word)
    diff = a.int_root_coords(tuple(x - y for x, y in zip(gamma, delta)))
    if diff is None or any(x < 0 for x in diff):
        return ()
    # letters available strictly before position k (1-based): prefix[k-1]
    prefix = [set(word[:k]) for k in range(l + 1)]
    if use_bounds:
        lo, up = trail_bounds(a, gamma, delta, word)
    roots = {i: a.simple_root(i) for i in set(word)}
    found: list[Trail] = []
    chain: list[Weight] = [delta]

    def admissible(g: Weight, k: int) -> bool:
        # g is the candidate for g_k
        rc = a.int_root_coords(tuple(x - y for x, y in zip(gamma, g)))
        if rc is None or any(x < 0 for x in rc):
            return False
        if any(x and (j + 1) not in prefix[k] for j, x in enumerate(rc)):
            return False
        if use_bounds and not (a.leq(lo[k], g) and a.leq(g, up[k])):
            return False
        return True

    def rec(k: int, g: Weight, span: list[Vec]) -> None:
        # g = g_k with k letters still to be placed
        if k == 0:
            if g == gamma:
                ws = tuple(reversed(chain))
                found.append(trail_from_weights(a, word, ws))
            return
        i = word[k - 1]
        root = roots[i]
        cur, vecs, c = g, span, 0
        while True:
            if admissible(cur, k - 1):
                chain.append(cur)
                rec(k - 1, cur, vecs)
                chain.pop()
            c += 1
            cur = tuple(x + y for x, y in zip(cur, root))
            if not mod.has_weight(cur):
                break
            rc = a.int_root_coords(tuple(x - y for x, y in zip(gamma, cur)))
            if rc is None or rc[i - 1] < 0:
                break
            vecs = _reduce_span([mod.apply("e", i, v) for v in vecs])
            if not vecs:
                break

    start = [{b: Fraction(1)} for b in mod.by_weight[delta]]
    if use_bounds and not (a.leq(lo[l], delta) and a.leq(delta, up[l])):
        return ()
    rec(l, delta, start)
    found.sort(key=lambda t: t.c)
    return tuple(found)


def is_trail(mod: Module, gamma: Sequence[int], delta: Sequence[int], word: Sequence[int],
             c: Sequence[int]) -> bool:
    """Direct check of the defining conditions for a given c-vector (raising form)."""
    a = mod.cartan
    g = tuple(delta)
    if any(x < 0 for x in c) or len(c) != len(word):
        return False
    span = [{b: Fraction(1)} for b in mod.by_weight.get(g, [])]
    for i, ck in zip(reversed(tuple(word)), reversed(tuple(c))):
        for _ in range(ck):
            span = _reduce_span([mod.apply("e", i, v) for v in span])
        g = tuple(x + ck * y for x, y in zip(g, a.simple_root(i)))
    return g == tuple(gamma) and bool(span)


def is_trail_lowering(mod: Module, gamma: Sequence[int], delta: Sequence[int],
                      word: Sequence[int], c: Sequence[int]) -> bool:
    """Equivalent check with f_{i_l}^{c_l} ... f_{i_1}^{c_1} from gamma to delta."""
    a = mod.cartan
    g = tuple(gamma)
    if any(x < 0 for x in c) or len(c) != len(word):
        return False
    span = [{b: Fraction(1)} for b in mod.by_weight.get(g, [])]
    for i, ck in zip(word, c):
        for _ in range(ck):
            span = _reduce_span([mod.apply("f", i, v) for v in span])
        g = tuple(x - ck * y for x, y in zip(g, a.simple_root(i)))
    return g == tuple(delta) and bool(span)


def unique_trail(a: CartanData, gamma: Sequence[int], word: Sequence[int]) -> Trail:
    """The trail from gamma along a word where gamma >= s_{i_1} gamma >= ... ."""
    g = tuple(gamma)
    ws = [g]
    for i in word:
        if g[i - 1] < 0:
            raise TrailError("weights along the word are not decreasing")
        g = a.reflect(i, g)
        ws.append(g)
    return trail_from_weights(a, word, ws)


def extremal_trails(a: CartanData, lam: Sequence[int], gamma: Sequence[int], delta: Sequence[int],
                    word: Sequence[int]) -> tuple[Trail, ...]:
    """Trails between extremal weights, from subwords that are reduced words for u v^{-1}.

    Here gamma = u(lam) and delta = v(lam) with u, v minimal.
    """
    word = tuple(word)
    if not is_reduced(a, word):
        raise TrailError("extremal trails need a reduced word")
    u = min_orbit_rep(a, lam, gamma)
    v = min_orbit_rep(a, lam, delta)
    target = u * v.inverse()
    p = target.length
    if p != v.length - u.length:
        return ()
    out = []
    for pos in combinations(range(len(word)), p):
        sub = tuple(word[k] for k in pos)
        if weyl_from_word(a, sub) != target:
            continue
        g = tuple(gamma)
        ws = [g]
        chosen = set(pos)
        for k, i in enumerate(word):
            if k in chosen:
                g = a.reflect(i, g)
            ws.append(g)
        t = trail_from_weights(a, word, ws)
        if any(x < 0 for x in t.c):
            continue
        out.append(t)
    out.sort(key=lambda t: t.c)
    return tuple(out)


def splitting_indices(a: CartanData, gamma: Sequence[int], delta: Sequence[int],
                      word: Sequence[int]) -> list[int]:
    word = tuple(word)
    l = len(word)
    down = [tuple(gamma)]
    ok_down = [True]
    for i in word:
        g = down[-1]
        ok_down.append(ok_down[-1] and g[i - 1] >= 0)
        down.append(a.reflect(i, g))
    up = [tuple(delta)]
    ok_up = [True]
    for i in reversed(word):
        g = up[-1]
        ok_up.append(ok_up[-1] and g[i - 1] <= 0)
        up.append(a.reflect(i, g))
    simple = {a.simple_root(i) for i in a.indices}
    out = []
    for k in range(l + 1):
        if not (ok_down[k] and ok_up[l - k]):
            continue
        diff = tuple(x - y for x, y in zip(up[l - k], down[k]))
        if diff in simple:
            out.append(k)
    return out
