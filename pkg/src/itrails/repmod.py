"""Exact finite-dimensional highest-weight modules with Chevalley generators.

Each module is built from f-monomials applied to the highest weight vector.
A candidate vector f_j b is kept only if it is independent of the ones already
kept modulo the joint kernel of the raising operators; in an irreducible module
that kernel (apart from the top weight) is exactly the radical of the
Shapovalov form, so the result is the simple module with all matrix entries in
the rationals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .liealg import CartanData, LieAlgError, Weight, min_orbit_rep

Vec = dict[int, Fraction]

CACHE_FORMAT_VERSION = 1


class ModuleError(ValueError):
    pass


def _axpy(y: Vec, c: Fraction, x: Vec) -> None:
    """y += c * x in place."""
    if c == 0:
        return
    for k, v in x.items():
        s = y.get(k, 0) + c * v
        if s == 0:
            y.pop(k, None)
        else:
            y[k] = s


@dataclass
class Module:
    cartan: CartanData
    highest: Weight
    weights: list[Weight] = field(default_factory=list)
    labels: list[tuple[int, ...]] = field(default_factory=list)
    # e[i-1][b] is the image of basis vector b under e_i, as a sparse vector
    e: list[list[Vec]] = field(default_factory=list)
    f: list[list[Vec]] = field(default_factory=list)
    by_weight: dict[Weight, list[int]] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def multiplicity(self, gamma: Sequence[int]) -> int:
        return len(self.by_weight.get(tuple(gamma), ()))

    def has_weight(self, gamma: Sequence[int]) -> bool:
        return tuple(gamma) in self.by_weight

    def apply(self, kind: str, i: int, vec: Vec, power: int = 1, divided: bool = False) -> Vec:
        mats = self.e if kind == "e" else self.f
        m = mats[i - 1]
        out = dict(vec)
        for _ in range(power):
            nxt: Vec = {}
            for b, c in out.items():
                _axpy(nxt, c, m[b])
            out = nxt
            if not out:
                break
        if divided and power > 1 and out:
            fac = math.factorial(power)
            out = {k: v / fac for k, v in out.items()}
        return out

    def highest_vector(self) -> Vec:
        return {0: Fraction(1)}

    def extremal_vector(self, gamma: Sequence[int]) -> Vec:
        """Extremal vector of weight gamma, reached from the top by divided powers of f."""
        a = self.cartan
        try:
            u = min_orbit_rep(a, self.highest, gamma)
        except LieAlgError as exc:
            raise ModuleError(str(exc)) from None
        v = self.highest_vector()
        wt = self.highest
        for i in reversed(u.word):
            n = wt[i - 1]
            v = self.apply("f", i, v, n, divided=True)
            wt = a.reflect(i, wt)
        return v

    def coordinate(self, vec: Vec, gamma: Sequence[int]) -> Fraction:
        """Coefficient of the normalized extremal vector of weight gamma in vec."""
        ref = self.extremal_vector(gamma)
        (b,) = self.by_weight[tuple(gamma)]
        return vec.get(b, Fraction(0)) / ref[b]

    def to_json(self) -> str:
        def enc(mats: list[list[Vec]]) -> list:
            return [[{str(k): str(v) for k, v in col.items()} for col in m] for m in mats]

        return json.dumps({
            "version": CACHE_FORMAT_VERSION,
            "matrix": [list(r) for r in self.cartan.matrix],
            "family": self.cartan.family,
            "dual": self.cartan.dual,
            "highest": list(self.highest),
            "weights": [list(w) for w in self.weights],
            "labels": [list(x) for x in self.labels],
            "e": enc(self.e),
            "f": enc(self.f),
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Module":
        d = json.loads(text)
        if d.get("version") != CACHE_FORMAT_VERSION:
            raise ModuleError("module cache has an unknown format version")
        m = tuple(tuple(r) for r in d["matrix"])
        a = CartanData(d["family"], len(m), m, d["dual"])

        def dec(mats: list) -> list[list[Vec]]:
            return [[{int(k): Fraction(v) for k, v in col.items()} for col in mm] for mm in mats]

        mod = cls(a, tuple(d["highest"]), [tuple(w) for w in d["weights"]],
                  [tuple(x) for x in d["labels"]], dec(d["e"]), dec(d["f"]))
        for b, w in enumerate(mod.weights):
            mod.by_weight.setdefault(w, []).append(b)
        return mod


def _build(a: CartanData, lam: Weight) -> Module:
    r = a.rank
    roots = [a.simple_root(j) for j in a.indices]
    mod = Module(a, lam)
    mod.e = [[] for _ in range(r)]
    mod.f = [[] for _ in range(r)]

    def new_vector(mu: Weight, label: tuple[int, ...], raising: list[Vec]) -> int:
        nb = len(mod.weights)
        mod.weights.append(mu)
        mod.labels.append(label)
        mod.by_weight.setdefault(mu, []).append(nb)
        for i in range(r):
            mod.e[i].append(raising[i])
            mod.f[i].append({})
        return nb

    level = [new_vector(lam, (), [{} for _ in range(r)])]
    while level:
        groups: dict[Weight, list[tuple[int, int]]] = {}
        for b in level:
            wb = mod.weights[b]
            for j in a.indices:
                mu = tuple(x - y for x, y in zip(wb, roots[j - 1]))
                groups.setdefault(mu, []).append((j, b))
        new_level: list[int] = []
        for mu in sorted(groups, reverse=True):
            rows: list[tuple[Vec, Vec, int]] = []  # (reduced image, combination of new basis, pivot)
            for j, b in groups[mu]:
                wb = mod.weights[b]
                # e_i f_j b = f_j e_i b + [i == j] <wt(b), alpha_i^vee> b
                parts = []
                for i in a.indices:
                    part = mod.apply("f", j, mod.e[i - 1][b])
                    if i == j and wb[i - 1] != 0:
                        _axpy(part, Fraction(wb[i - 1]), {b: Fraction(1)})
                    parts.append(part)
                img: Vec = {}
                for i, part in enumerate(parts):
                    for k, v in part.items():
                        img[i * _STRIDE + k] = v
                combo: Vec = {}
                for vec, rc, piv in rows:
                    c = img.get(piv)
                    if c:
                        cc = c / vec[piv]
                        _axpy(img, -cc, vec)
                        _axpy(combo, cc, rc)
                if not img:
                    mod.f[j - 1][b] = combo
                    continue
                nb = new_vector(mu, (j,) + mod.labels[b], parts)
                new_level.append(nb)
                rc = {nb: Fraction(1)}
                _axpy(rc, Fraction(-1), combo)
                rows.append((img, rc, min(img)))
                mod.f[j - 1][b] = {nb: Fraction(1)}
        level = new_level
    return mod


_STRIDE = 1 << 32


@lru_cache(maxsize=None)
def build_highest_weight_module(a: CartanData, lam: Weight) -> Module:
    lam = tuple(lam)
    if len(lam) != a.rank or not a.is_dominant(lam):
        raise ModuleError(f"{lam} is not a dominant weight of {a.name}")
    return _build(a, lam)


def build_module(a: CartanData, i: int) -> Module:
    """Fundamental module of highest weight omega_i."""
    if not 1 <= i <= a.rank:
        raise ModuleError(f"no fundamental weight omega_{i} in {a.name}")
    return build_highest_weight_module(a, a.fundamental(i))


def shapovalov_gram(mod: Module, gamma: Sequence[int]) -> list[list[Fraction]]:
    """Gram matrix of the contravariant form on f-monomials of weight gamma.

    Entry (p, q) is the top coefficient of e-monomial(p) applied to f-monomial(q) v_+,
    where e-monomial(p) is the reversed word of p.
    """
    a = mod.cartan
    diff = a.int_root_coords(tuple(x - y for x, y in zip(mod.highest, gamma)))
    if diff is None or any(x < 0 for x in diff):
        return []
    monos = _monomials(diff)
    out = []
    for p in monos:
        row = []
        for q in monos:
            v = mod.highest_vector()
            for j in reversed(q):
                v = mod.apply("f", j, v)
            for j in p:
                v = mod.apply("e", j, v)
            row.append(v.get(0, Fraction(0)))
        out.append(row)
    return out


def _monomials(counts: Sequence[int]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(left: list[int], acc: tuple[int, ...]) -> None:
        if not any(left):
            out.append(acc)
            return
        for j, c in enumerate(left):
            if c:
                left[j] -= 1
                rec(left, acc + (j + 1,))
                left[j] += 1

    rec(list(counts), ())
    return out


def rank_of(m: list[list[Fraction]]) -> int:
    rows = [list(r) for r in m]
    rk = 0
    ncol = len(rows[0]) if rows else 0
    for c in range(ncol):
        p = next((k for k in range(rk, len(rows)) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[rk], rows[p] = rows[p], rows[rk]
        for k in range(len(rows)):
            if k != rk and rows[k][c] != 0:
                f = rows[k][c] / rows[rk][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[rk])]
        rk += 1
    return rk
