"""Lusztig and string parametrizations: transitions, cones and crystal operators.

Tropical maps on canonical-basis parameters are tropicalizations of the
geometric maps for the Langlands dual group, so the tropical entry points use
the transposed Cartan matrix by default.  Trails always live in the
fundamental modules of the dual algebra.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Any, Sequence

from .ineq import IneqSystem
from .liealg import (CartanData, LieAlgError, Word, is_fully_commutative, is_reduced,
                     longest_element, minuscule_coset_rep, simple_reflection, weyl_from_word)
from .repmod import build_module
from .semifield import POS, TROP, TROP_INF, Semifield, rank2_transition
from .trails import enumerate_trails


class ParamError(ValueError):
    pass


def _check_w0_word(a: CartanData, word: Sequence[int]) -> Word:
    w = tuple(word)
    if not is_reduced(a, w) or weyl_from_word(a, w) != longest_element(a):
        raise ParamError(f"{w} is not a reduced word for the longest element of {a.name}")
    return w


def transition(a: CartanData, side: str, source: Sequence[int], target: Sequence[int],
               t: Sequence[Any], K: Semifield = TROP, dualize: bool | None = None) -> tuple:
    """Carry parameters for word ``source`` to word ``target`` along a braid path.

    ``side`` is ``lusztig`` (positive moves) or ``string`` (negative moves).
    """
    from .liealg import tits_path

    if side not in ("lusztig", "string"):
        raise ParamError(f"unknown side {side!r}")
    s = tuple(source)
    if len(t) != len(s):
        raise ParamError("parameter length does not match the word")
    if dualize is None:
        dualize = K is TROP
    c = a.langlands_dual() if dualize else a
    try:
        path = tits_path(a, s, target)
    except LieAlgError as exc:
        raise ParamError(str(exc)) from None
    sign = "+" if side == "lusztig" else "-"
    word = list(s)
    vals = list(t)
    for mv in path:
        p, d = mv.position - 1, mv.d
        i, j = word[p], word[p + 1]
        vals[p:p + d] = rank2_transition(c.a(i, j), c.a(j, i), sign, vals[p:p + d], K)
        word[p:p + d] = [j if k % 2 == 0 else i for k in range(d)]
    return tuple(vals)


def dual_trails(a: CartanData, i: int, gamma, delta, word):
    d = a.langlands_dual()
    return enumerate_trails(build_module(d, i), gamma, delta, word)


@lru_cache(maxsize=None)
def lusztig_to_string_forms(a: CartanData, source: Word, target: Word) -> tuple:
    """Linear forms of the map: component k is min(A_k . t') - min(B_k . t')."""
    i = _check_w0_word(a, source)
    ip = _check_w0_word(a, target)
    d = a.langlands_dual()
    w0 = longest_element(a)
    out = []
    for k, ik in enumerate(i):
        om = d.fundamental(ik)
        low = w0.act(om, on=d)
        g1 = weyl_from_word(a, i[:k]).act(om, on=d)
        g2 = weyl_from_word(a, i[:k + 1]).act(om, on=d)
        f1 = tuple(tr.c for tr in dual_trails(a, ik, g1, low, ip))
        f2 = tuple(tr.c for tr in dual_trails(a, ik, g2, low, ip))
        if not f1 or not f2:
            raise ParamError("no trails between the required extremal weights")
        out.append((f1, f2))
    return tuple(out)


def _dot(c: Sequence[int], t: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(c, t))


def lusztig_to_string(a: CartanData, i: Sequence[int], ip: Sequence[int], tp: Sequence[int]) -> tuple[int, ...]:
    """String parameters for ``i`` of the canonical basis element with Lusztig parameters ``tp`` for ``ip``."""
    forms = lusztig_to_string_forms(a, tuple(i), tuple(ip))
    if len(tp) != len(forms):
        raise ParamError("parameter length does not match the word")
    return tuple(min(_dot(c, tp) for c in f1) - min(_dot(c, tp) for c in f2) for f1, f2 in forms)


def root_sequence(a: CartanData, word: Sequence[int]) -> list[tuple[int, ...]]:
    """beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}, as simple-root coefficient vectors."""
    out = []
    for k, ik in enumerate(word):
        root = weyl_from_word(a, word[:k]).act(a.simple_root(ik))
        rc = a.int_root_coords(root)
        out.append(rc)
    return out


@lru_cache(maxsize=None)
def _l_forms(a: CartanData, i0: int, word: Word) -> tuple[tuple[int, ...], ...]:
    d = a.langlands_dual()
    w0 = longest_element(a)
    om = d.fundamental(i0)
    betas = root_sequence(a, word)
    trails = dual_trails(a, i0, d.reflect(i0, om), w0.act(om, on=d), word)
    return tuple(tuple(b[i0 - 1] - c for b, c in zip(betas, tr.c)) for tr in trails)


def l_i(a: CartanData, i0: int, word: Sequence[int], t: Sequence[int]) -> int:
    """First Lusztig coordinate for words starting with i0, from Lusztig parameters for ``word``."""
    w = _check_w0_word(a, word)
    return max(_dot(c, t) for c in _l_forms(a, i0, w))


@lru_cache(maxsize=None)
def _endpoint_forms(a: CartanData, i: Word, ip: Word) -> tuple:
    d = a.langlands_dual()
    w0 = longest_element(a)
    j = ip[0]
    om = d.fundamental(j)
    first = tuple(tr.d for tr in dual_trails(a, j, d.reflect(j, om), w0.act(om, on=d), i))
    last_letter = ip[-1]
    m = len(i)
    last = []
    for k, ik in enumerate(i):
        if a.star(ik) != last_letter:
            continue
        row = [0] * m
        row[k] = 1
        for l in range(k + 1, m):
            row[l] = a.a(last_letter, a.star(i[l]))
        last.append(tuple(row))
    if not last:
        raise ParamError(f"no letter of {i} has star image {last_letter}")
    return first, tuple(last)


def endpoints_from_string(a: CartanData, i: Sequence[int], ip: Sequence[int],
                          t: Sequence[int]) -> tuple[int, int]:
    """(t'_1, t'_m) of the Lusztig parameters for ``ip`` from string parameters ``t`` for ``i``."""
    first, last = _endpoint_forms(a, _check_w0_word(a, i), _check_w0_word(a, ip))
    return (-min(_dot(c, t) for c in first), max(_dot(c, t) for c in last))


# ----------------------------------------------------------------------- cones


def _local_cone_rows(a: CartanData, word: Word, u, v) -> list[tuple[int, ...]]:
    """d-vectors of trails from u omega_i^vee to v s_i omega_i^vee, all i."""
    d = a.langlands_dual()
    rows = []
    for i in a.indices:
        om = d.fundamental(i)
        g = u.act(om, on=d)
        h = (v * simple_reflection(a, i)).act(om, on=d)
        mod = build_module(d, i)
        if not (mod.has_weight(g) and mod.has_weight(h)):
            continue
        rows.extend(tr.d for tr in enumerate_trails(mod, g, h, word))
    return rows


def _split_word(a: CartanData, word: Word, flag: Sequence[Sequence[int]]):
    subsets = [sorted(set(s)) for s in flag]
    if not subsets or sorted(subsets[-1]) != list(a.indices):
        raise ParamError("the flag must end with the full index set")
    prev: list[int] = []
    pieces = []
    pos = 0
    for s in subsets:
        if not set(prev) <= set(s):
            raise ParamError("flag subsets must be nested")
        u = longest_element(a, prev)
        v = longest_element(a, s)
        x = u.inverse() * v
        piece = word[pos:pos + x.length]
        if len(piece) != x.length or weyl_from_word(a, piece) != x:
            raise ParamError(f"word does not split along the flag at {s}")
        pieces.append((pos, piece, u, v, prev, s))
        pos += x.length
        prev = s
    if pos != len(word):
        raise ParamError("word is longer than the flag accounts for")
    return pieces


def _fc_rows(a: CartanData, piece: Word) -> list[tuple[int, ...]]:
    l = len(piece)
    rows: list[tuple[int, ...]] = []

    def row(entries: dict[int, int]) -> tuple[int, ...]:
        r = [0] * l
        for k, v in entries.items():
            r[k] += v
        return tuple(r)

    rows.append(row({l - 1: 1}))
    for k1 in range(l):
        for k2 in range(k1 + 1, l):
            p, q = piece[k1], piece[k2]
            if p != q and a.a(p, q) * a.a(q, p) == 1:
                if all(piece[k] not in (p, q) for k in range(k1 + 1, k2)):
                    rows.append(row({k1: 1, k2: -1}))
    for k1, k2, k3 in itertools.combinations(range(l), 3):
        j, i = piece[k1], piece[k2]
        if piece[k3] != j or i == j or a.a(i, j) * a.a(j, i) != 2:
            continue
        if any(a.a(piece[k], j) != 0 for k in range(k1 + 1, k3) if k != k2):
            continue
        m = abs(a.a(i, j))
        rows.append(row({k1: m, k2: -1}))
        rows.append(row({k2: 1, k3: -m}))
    for ks in itertools.combinations(range(l), 5):
        j, i = piece[ks[0]], piece[ks[1]]
        if i == j or a.a(i, j) * a.a(j, i) != 3:
            continue
        if [piece[k] for k in ks] != [j, i, j, i, j]:
            continue
        m = abs(a.a(i, j))
        k1, k2, k3, k4, k5 = ks
        rows.append(row({k1: 2 * m, k2: -2}))
        rows.append(row({k2: 2, k3: -m}))
        rows.append(row({k3: m, k4: -2}))
        rows.append(row({k4: 2, k5: -2 * m}))
    return rows


def _typeA_rows(a: CartanData, word: Word) -> list[tuple[int, ...]]:
    m = len(word)
    rows = []
    for i in a.indices:
        u = minuscule_coset_rep(a, i)
        p = u.length
        for ks in itertools.combinations(range(m), p):
            sub = tuple(word[k] for k in ks)
            if weyl_from_word(a, sub) != u:
                continue
            r = [0] * m
            bounds = (-1,) + ks + (m,)
            for j in range(p + 1):
                pre = weyl_from_word(a, sub[:j])
                for k in range(bounds[j] + 1, bounds[j + 1]):
                    root = pre.act(a.simple_root(word[k]))
                    r[k] = int(a.root_coords(root)[i - 1])
            rows.append(tuple(r))
    return rows


def string_cone(a: CartanData, word: Sequence[int], mode: str = "general",
                flag: Sequence[Sequence[int]] | None = None) -> IneqSystem:
    """The string cone of a reduced word of w_o as an inequality system.

    Modes: ``general`` (trails), ``split`` (product over a flag, trails per
    factor), ``fully_commutative`` (explicit factor inequalities, needs a flag
    with one new index per step and fully commutative factors), ``typeA``.
    """
    w = _check_w0_word(a, word)
    m = len(w)
    sys = IneqSystem([f"t{k + 1}" for k in range(m)])
    if mode == "general":
        for r in _local_cone_rows(a, w, weyl_from_word(a, ()), longest_element(a)):
            sys.add_ge(r, 0)
    elif mode in ("split", "fully_commutative"):
        if flag is None:
            raise ParamError(f"mode {mode} needs a flag")
        for pos, piece, u, v, prev, s in _split_word(a, w, flag):
            if mode == "split":
                local = _local_cone_rows(a, piece, u, v)
            else:
                x = u.inverse() * v
                if len(s) != len(prev) + 1 or not is_fully_commutative(x):
                    raise ParamError(f"factor for {s} is not a one-step fully commutative factor")
                local = _fc_rows(a, piece)
            for r in local:
                full = [0] * m
                full[pos:pos + len(piece)] = r
                sys.add_ge(full, 0)
    elif mode == "typeA":
        if a.family != "A":
            raise ParamError("typeA mode is only valid in type A")
        for r in _typeA_rows(a, w):
            sys.add_ge(r, 0)
    else:
        raise ParamError(f"unknown cone mode {mode!r}")
    return sys.canonical()


# -------------------------------------------------------------------- crystals


def _tvee(a: CartanData, word: Sequence[int], t: Sequence[int]) -> list[int]:
    m = len(word)
    return [-t[k] - sum(a.a(word[k], word[l]) * t[l] for l in range(k + 1, m)) for k in range(m)]


def crystal_apply(a: CartanData, word: Sequence[int], t: Sequence[int], i0: int, n: int = 1) -> tuple[int, ...]:
    """The n-th power of the lowering crystal operator for i0 in string parameters."""
    w = tuple(word)
    if len(t) != len(w):
        raise ParamError("parameter length does not match the word")
    if n < 0:
        raise ParamError("n must be nonnegative")
    tv = _tvee(a, w, t)
    idx = [k for k, ik in enumerate(w) if ik == i0]
    out = list(t)
    for k in idx:
        def mn(it):
            vals = [tv[l] for l in it if w[l] == i0]
            return min(vals) if vals else TROP_INF

        m = len(w)
        num = min(mn(range(k)), n + mn(range(k, m)))
        den = min(mn(range(k + 1)), n + mn(range(k + 1, m)))
        out[k] = int(t[k] + num - den)
    return tuple(out)


def geom_crystal_apply(a: CartanData, word: Sequence[int], t: Sequence[Any], i0: int, c: Any,
                       K: Semifield = POS) -> tuple:
    """Geometric lifting of the crystal operator; ``a`` is the group whose factorization is used."""
    w = tuple(word)
    m = len(w)
    T = []
    for k in range(m):
        f = [K.inv(t[k])] + [K.pow(t[l], -a.a(w[l], w[k])) for l in range(k + 1, m)]
        T.append(K.prod(f))
    out = list(t)
    for k in range(m):
        if w[k] != i0:
            continue

        def s(it):
            vals = [T[l] for l in it if w[l] == i0]
            return vals

        def combo(left, right):
            lv, rv = s(left), s(right)
            parts = []
            if lv:
                parts.append(K.sum(lv))
            if rv:
                parts.append(K.mul(c, K.sum(rv)))
            return K.sum(parts)

        num = combo(range(k), range(k, m))
        den = combo(range(k + 1), range(k + 1, m))
        out[k] = K.mul(t[k], K.div(num, den))
    return tuple(out)
