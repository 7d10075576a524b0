"""Generalized minors, their trail expansions, and identity verification.

Group elements are words of factors ``(kind, i, t)`` acting on the
fundamental modules, applied right to left:

* ``"x"``  x_i(t) = exp(t e_i)
* ``"y"``  y_i(t) = exp(t f_i)
* ``"h"``  t^{alpha_i^vee}, acting on weight mu by t^{mu(alpha_i^vee)}
* ``"xn"`` x_{-i}(t) = y_i(t) t^{-alpha_i^vee}

The minor Delta_{gamma,delta}(x) is the coefficient of the normalized extremal
vector of weight gamma in x applied to the normalized extremal vector of
weight delta.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .liealg import (CartanData, Weight, WeylElement, all_elements,
                     longest_element, simple_reflection, weyl_from_word)
from .repmod import Module, Vec, _axpy, build_module
from .semifield import POS, Semifield, rank2_transition

Factor = tuple[str, int, Any]
Poly = dict[tuple[int, ...], Fraction]


class MinorError(ValueError):
    pass


def _exp_action(mod: Module, kind: str, i: int, t: Any, vec: Vec) -> Vec:
    out: Vec = dict(vec)
    cur = vec
    n = 0
    coef = Fraction(1)
    while True:
        n += 1
        cur = mod.apply(kind, i, cur)
        if not cur:
            return out
        coef = coef * t / n
        _axpy(out, coef, cur)


def _torus(mod: Module, i: int, t: Any, vec: Vec, sign: int = 1) -> Vec:
    return {b: c * Fraction(t) ** (sign * mod.weights[b][i - 1]) for b, c in vec.items()}


def act(mod: Module, element: Sequence[Factor], vec: Vec) -> Vec:
    v = dict(vec)
    for kind, i, t in reversed(list(element)):
        if kind == "x":
            v = _exp_action(mod, "e", i, t, v)
        elif kind == "y":
            v = _exp_action(mod, "f", i, t, v)
        elif kind == "h":
            v = _torus(mod, i, t, v)
        elif kind == "xn":
            v = _exp_action(mod, "f", i, t, _torus(mod, i, t, v, -1))
        else:
            raise MinorError(f"unknown factor kind {kind!r}")
    return v


def bar_s(i: int) -> list[Factor]:
    """The representative x_i(-1) y_i(1) x_i(-1) of a simple reflection."""
    return [("x", i, Fraction(-1)), ("y", i, Fraction(1)), ("x", i, Fraction(-1))]


def minor(mod: Module, gamma: Sequence[int], delta: Sequence[int], element: Sequence[Factor]) -> Fraction:
    return mod.coordinate(act(mod, element, mod.extremal_vector(delta)), gamma)


def positive_element(word: Sequence[int], t: Sequence[Any]) -> list[Factor]:
    return [("x", i, x) for i, x in zip(word, t)]


def negative_element(word: Sequence[int], t: Sequence[Any]) -> list[Factor]:
    return [("xn", i, x) for i, x in zip(word, t)]


def highest_minor_product(a: CartanData, i: int, word: Sequence[int], t: Sequence[Any]) -> Fraction:
    """Delta_{omega_i, w^{-1} omega_i}(x_{j_1}(t_1) ...) for a reduced word of w."""
    d = a.langlands_dual()
    out = Fraction(1)
    prefix: list[int] = []
    for j, x in zip(word, t):
        cor = weyl_from_word(a, prefix).act(d.simple_root(j), on=d)
        # omega_i evaluated on a coroot is its coefficient at alpha_i^vee
        e = d.root_coords(cor)[i - 1]
        out *= Fraction(x) ** int(e)
        prefix.append(j)
    return out


# --------------------------------------------------------------- polynomials


def _poly_apply(mod: Module, states: dict[tuple[int, ...], Vec], k: int, kind: str, i: int,
                negative: bool) -> dict[tuple[int, ...], Vec]:
    out: dict[tuple[int, ...], Vec] = {}

    def add(expo: tuple[int, ...], vec: Vec) -> None:
        tgt = out.setdefault(expo, {})
        _axpy(tgt, Fraction(1), vec)
        if not tgt:
            del out[expo]

    for expo, vec in states.items():
        parts: dict[int, Vec] = {}
        if negative:
            for b, c in vec.items():
                parts.setdefault(-mod.weights[b][i - 1], {})[b] = c
        else:
            parts[0] = vec
        for shift, v in parts.items():
            cur = v
            n = 0
            while cur:
                e = list(expo)
                e[k] += shift + n
                add(tuple(e), {b: c / math.factorial(n) for b, c in cur.items()})
                n += 1
                cur = mod.apply(kind, i, cur)
    return out


def minor_polynomial(mod: Module, gamma: Sequence[int], delta: Sequence[int], word: Sequence[int],
                     negative: bool = False) -> Poly:
    """Delta_{gamma,delta}(x_{i_1}(t_1) ... x_{i_m}(t_m)) as an exponent -> coefficient map.

    With ``negative=True`` the factors are x_{-i_k}(t_k) and the result is a Laurent polynomial.
    """
    word = tuple(word)
    m = len(word)
    states: dict[tuple[int, ...], Vec] = {(0,) * m: mod.extremal_vector(delta)}
    for k in reversed(range(m)):
        i = word[k]
        states = _poly_apply(mod, states, k, "f" if negative else "e", i, negative)
    out: Poly = {}
    ref = mod.extremal_vector(gamma)
    (b,) = mod.by_weight[tuple(gamma)]
    for expo, vec in states.items():
        c = vec.get(b)
        if c:
            out[expo] = c / ref[b]
    return dict(sorted(out.items()))


def minor_poly_positive(a: CartanData, i: int, gamma: Sequence[int], delta: Sequence[int],
                        word: Sequence[int]) -> Poly:
    return minor_polynomial(build_module(a, i), gamma, delta, word)


def minor_poly_negative(a: CartanData, i: int, gamma: Sequence[int], delta: Sequence[int],
                        word: Sequence[int]) -> Poly:
    return minor_polynomial(build_module(a, i), gamma, delta, word, negative=True)


def evaluate_poly(p: Poly, t: Sequence[Any], K: Semifield = POS) -> Any:
    if not p:
        raise MinorError("the zero polynomial has no value in a semifield")
    terms = []
    for expo, c in p.items():
        term = K.prod([K.pow(x, e) for x, e in zip(t, expo)])
        if K is POS:
            term = c * term
        terms.append(term)
    return K.sum(terms)


def minor_tropical(p: Poly, t: Sequence[int]) -> int:
    """Tropical value of a minor polynomial with positive coefficients."""
    return min(sum(e * x for e, x in zip(expo, t)) for expo in p)


def neg_to_pos_params(a: CartanData, word: Sequence[int], t: Sequence[Any], K: Semifield = POS) -> list:
    """t'_k = t_k prod_{l<k} t_l^{a_{i_l, i_k}}."""
    out = []
    for k, ik in enumerate(word):
        out.append(K.prod([t[k]] + [K.pow(t[l], a.a(word[l], ik)) for l in range(k)]))
    return out


def pos_to_neg_params(a: CartanData, word: Sequence[int], tp: Sequence[Any], K: Semifield = POS) -> list:
    """Inverse of ``neg_to_pos_params``."""
    d = a.langlands_dual()
    out = []
    for k, ik in enumerate(word):
        factors = [tp[k]]
        for l in range(k):
            cor = d.simple_root(word[l])
            mid = weyl_from_word(a, tuple(reversed(word[l + 1:k])))
            e = mid.act(cor, on=d)[ik - 1]
            factors.append(K.pow(tp[l], -e))
        out.append(K.prod(factors))
    return out


# ----------------------------------------------------------------- identities


@dataclass
class VerifyReport:
    id: str
    seed: int
    trials: int
    checks: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.checks > 0

    def to_dict(self) -> dict:
        return {"id": self.id, "seed": self.seed, "trials": self.trials,
                "checks": self.checks, "failures": self.failures}


def _rand_pos(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def random_element(a: CartanData, rng: random.Random) -> list[Factor]:
    """Generic element: negative part, torus part and positive part along w_o."""
    w = longest_element(a).word
    el: list[Factor] = [("xn", i, _rand_pos(rng)) for i in w]
    el += [("h", i, _rand_pos(rng)) for i in a.indices]
    el += [("x", i, _rand_pos(rng)) for i in w]
    return el


class _MinorTable:
    """Minors of one group element, computed lazily per (module, column weight)."""

    def __init__(self, a: CartanData, element: Sequence[Factor]):
        self.a = a
        self.element = list(element)
        self.cols: dict[tuple[int, Weight], Vec] = {}

    def __call__(self, gamma: Weight, delta: Weight, i: int) -> Fraction:
        mod = build_module(self.a, i)
        key = (i, delta)
        if key not in self.cols:
            self.cols[key] = act(mod, self.element, mod.extremal_vector(delta))
        return mod.coordinate(self.cols[key], gamma)


IDENTITY_IDS = ("dodgson", "plucker1", "plucker2", "braid", "endpoints", "luv")


def verify_identity(identity_id: str, a: CartanData, seed: int = 0, trials: int = 20) -> VerifyReport:
    if identity_id not in IDENTITY_IDS:
        raise MinorError(f"unknown identity {identity_id!r}; choose from {', '.join(IDENTITY_IDS)}")
    rng = random.Random(seed)
    rep = VerifyReport(identity_id, seed, trials)
    fn = {"dodgson": _check_dodgson, "plucker1": _check_plucker1, "plucker2": _check_plucker2,
          "braid": _check_braid, "endpoints": _check_endpoints, "luv": _check_luv}[identity_id]
    for trial in range(trials):
        fn(a, rng, rep, trial)
    return rep


def _fail(rep: VerifyReport, trial: int, **info: Any) -> None:
    rep.failures.append({"trial": trial, **{k: str(v) for k, v in info.items()}})


def _om(w: WeylElement, i: int) -> Weight:
    return w.act(w.cartan.fundamental(i))


def _check_dodgson(a: CartanData, rng: random.Random, rep: VerifyReport, trial: int) -> None:
    D = _MinorTable(a, random_element(a, rng))
    W = all_elements(a)
    for i in a.indices:
        si = simple_reflection(a, i)
        for u in W:
            us = u * si
            if us.length != u.length + 1:
                continue
            for v in W:
                vs = v * si
                if vs.length != v.length + 1:
                    continue
                lhs = D(_om(u, i), _om(v, i), i) * D(_om(us, i), _om(vs, i), i)
                rhs = D(_om(us, i), _om(v, i), i) * D(_om(u, i), _om(vs, i), i)
                prod = Fraction(1)
                for j in a.indices:
                    if j != i and a.a(j, i):
                        prod *= D(_om(u, j), _om(v, j), j) ** (-a.a(j, i))
                rep.checks += 1
                if lhs != rhs + prod:
                    _fail(rep, trial, u=u.word, v=v.word, i=i, lhs=lhs, rhs=rhs + prod)


def _check_plucker1(a: CartanData, rng: random.Random, rep: VerifyReport, trial: int) -> None:
    D = _MinorTable(a, random_element(a, rng))
    W = all_elements(a)
    for i in a.indices:
        for j in a.indices:
            if i == j or a.a(i, j) != -1 or a.a(j, i) != -1:
                continue
            for v in W:
                if weyl_from_word(a, v.word + (i, j, i)).length != v.length + 3:
                    continue
                vi, vj = v.right_mul(i), v.right_mul(j)
                vij, vji = vi.right_mul(j), vj.right_mul(i)
                for u in W:
                    lhs = D(_om(u, i), _om(vi, i), i) * D(_om(u, j), _om(vj, j), j)
                    rhs = (D(_om(u, i), _om(v, i), i) * D(_om(u, j), _om(vij, j), j)
                           + D(_om(u, i), _om(vji, i), i) * D(_om(u, j), _om(v, j), j))
                    rep.checks += 1
                    if lhs != rhs:
                        _fail(rep, trial, u=u.word, v=v.word, i=i, j=j, lhs=lhs, rhs=rhs)


def _check_plucker2(a: CartanData, rng: random.Random, rep: VerifyReport, trial: int) -> None:
    D = _MinorTable(a, random_element(a, rng))
    W = all_elements(a)
    for i in a.indices:
        for j in a.indices:
            if i == j or a.a(i, j) != -2 or a.a(j, i) != -1:
                continue
            for v in W:
                if weyl_from_word(a, v.word + (i, j, i, j)).length != v.length + 4:
                    continue
                vi, vj = v.right_mul(i), v.right_mul(j)
                vji = vj.right_mul(i)
                vij = vi.right_mul(j)
                viji = vij.right_mul(i)
                vjij = vji.right_mul(j)
                for u in W:
                    Mi = lambda w: D(_om(u, i), _om(w, i), i)  # noqa: E731
                    Mj = lambda w: D(_om(u, j), _om(w, j), j)  # noqa: E731
                    inner = Mi(v) * Mj(vjij) + Mi(viji) * Mj(vj)
                    lhs1 = Mi(vi) * Mi(vji) * Mj(vj)
                    rhs1 = Mi(vji) ** 2 * Mj(v) + Mi(v) * inner
                    lhs2 = Mj(vij) * Mi(vji) ** 2 * Mj(vj)
                    rhs2 = Mj(vjij) * Mi(vji) ** 2 * Mj(v) + inner ** 2
                    rep.checks += 2
                    if lhs1 != rhs1:
                        _fail(rep, trial, relation=1, u=u.word, v=v.word, i=i, j=j, lhs=lhs1, rhs=rhs1)
                    if lhs2 != rhs2:
                        _fail(rep, trial, relation=2, u=u.word, v=v.word, i=i, j=j, lhs=lhs2, rhs=rhs2)


def _element_matrix(a: CartanData, element: Sequence[Factor]) -> list[list[Vec]]:
    out = []
    for i in a.indices:
        mod = build_module(a, i)
        out.append([act(mod, element, {b: Fraction(1)}) for b in range(mod.dim)])
    return out


def _check_braid(a: CartanData, rng: random.Random, rep: VerifyReport, trial: int) -> None:
    for i in a.indices:
        for j in a.indices:
            if i == j:
                continue
            d = a.order(i, j)
            t = [_rand_pos(rng) for _ in range(d)]
            left = tuple(i if k % 2 == 0 else j for k in range(d))
            right = tuple(j if k % 2 == 0 else i for k in range(d))
            for sign, kind in (("+", "x"), ("-", "xn")):
                p = rank2_transition(a.a(i, j), a.a(j, i), sign, t, POS)
                lhs = _element_matrix(a, [(kind, x, y) for x, y in zip(left, t)])
                rhs = _element_matrix(a, [(kind, x, y) for x, y in zip(right, p)])
                rep.checks += 1
                if lhs != rhs:
                    _fail(rep, trial, move=f"{sign}{left}", t=t, p=p)
        for j in a.indices:
            # x_j(t1) x_{-i}(t2) = x_{-i}(p1) x_j(p2)
            t = [_rand_pos(rng), _rand_pos(rng)]
            aij = 2 if i == j else a.a(i, j)
            p = rank2_transition(aij, 0, "mixed", t, POS)
            lhs = _element_matrix(a, [("x", j, t[0]), ("xn", i, t[1])])
            rhs = _element_matrix(a, [("xn", i, p[0]), ("x", j, p[1])])
            q = rank2_transition(aij, 0, "mixed-inverse", p, POS)
            rep.checks += 1
            if lhs != rhs or list(q) != t:
                _fail(rep, trial, move=f"mixed({j},-{i})", t=t, p=p)


def _check_endpoints(a: CartanData, rng: random.Random, rep: VerifyReport, trial: int) -> None:
    w0 = longest_element(a)
    words = [w0.word, tuple(reversed(w0.word))]
    for word in words:
        m = len(word)
        t = [_rand_pos(rng) for _ in range(m)]
        i1, im = word[0], word[-1]
        s1, sm = simple_reflection(a, i1), simple_reflection(a, im)
        # positive word
        D = _MinorTable(a, positive_element(word, t))
        ims = a.star(im)
        t1 = D(a.fundamental(i1), _om(w0, i1), i1) / D(_om(s1, i1), _om(w0, i1), i1)
        tm = D(a.fundamental(ims), _om(w0, ims), ims) / D(a.fundamental(ims), _om(sm * w0, ims), ims)
        rep.checks += 1
        if (t1, tm) != (t[0], t[-1]):
            _fail(rep, trial, sign="+", word=word, got=(t1, tm), want=(t[0], t[-1]))
        # negative word
        D = _MinorTable(a, negative_element(word, t))
        i1s = a.star(i1)
        t1 = 1 / D(_om(s1 * w0, i1s), a.fundamental(i1s), i1s)
        tm = D(_om(w0, im), _om(sm, im), im)
        rep.checks += 1
        if (t1, tm) != (t[0], t[-1]):
            _fail(rep, trial, sign="-", word=word, got=(t1, tm), want=(t[0], t[-1]))


def _check_luv(a: CartanData, rng: random.Random, rep: VerifyReport, trial: int) -> None:
    """Delta_{u omega_i, omega_i} = 1 along any shuffle of a double reduced word for (u, v)."""
    W = all_elements(a)
    u = W[rng.randrange(len(W))]
    v = W[rng.randrange(len(W))]
    neg = [("xn", i, _rand_pos(rng)) for i in u.word]
    pos = [("x", i, _rand_pos(rng)) for i in v.word]
    el: list[Factor] = []
    while neg or pos:
        src = neg if (neg and (not pos or rng.random() < 0.5)) else pos
        el.append(src.pop(0))
    D = _MinorTable(a, el)
    for i in a.indices:
        x = D(_om(u, i), a.fundamental(i), i)
        rep.checks += 1
        if x != 1:
            _fail(rep, trial, u=u.word, v=v.word, i=i, got=x)
