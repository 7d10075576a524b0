"""Classical ground truth: Freudenthal multiplicities, tensor products, branching.

Nothing here touches trails or parametrizations; these routines exist so that
every count elsewhere can be compared against an independent computation.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .liealg import CartanData, Weight, all_elements, identity

WEYL_GROUP_CAP = 1152


class OracleError(ValueError):
    pass


def dominant_rep(a: CartanData, gamma: Sequence[int]) -> Weight:
    g = tuple(gamma)
    while True:
        i = next((k for k in a.indices if g[k - 1] < 0), None)
        if i is None:
            return g
        g = a.reflect(i, g)


def _check_dominant(a: CartanData, lam: Sequence[int], what: str = "weight") -> Weight:
    lam = tuple(int(x) for x in lam)
    if len(lam) != a.rank or not a.is_dominant(lam):
        raise OracleError(f"{what} {lam} is not a dominant weight of {a.name}")
    return lam


def dimension(a: CartanData, lam: Sequence[int]) -> int:
    """Weyl dimension formula."""
    lam = _check_dominant(a, lam)
    num = Fraction(1)
    for beta in a.positive_roots:
        root = a.from_root_coords(beta)
        lr = tuple(x + 1 for x in lam)
        num *= a.inner(lr, root) / a.inner(a.rho, root)
    if num.denominator != 1:
        raise OracleError("Weyl dimension formula gave a non-integer")
    return int(num)


@lru_cache(maxsize=None)
def dominant_character(a: CartanData, lam: Weight) -> dict[Weight, int]:
    """Multiplicities of the dominant weights of V_lam (Freudenthal recursion)."""
    lam = _check_dominant(a, lam)
    roots = [a.from_root_coords(b) for b in a.positive_roots]
    simple = [a.simple_root(i) for i in a.indices]
    # dominant weights below lam, by depth
    depth = {lam: 0}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for al in simple:
            nu = tuple(x - y for x, y in zip(mu, al))
            if nu in depth:
                continue
            d = dominant_rep(a, nu)
            if not a.leq(d, lam):
                continue
            depth[nu] = depth[mu] + 1
            queue.append(nu)
    doms = sorted((mu for mu in depth if a.is_dominant(mu)), key=lambda m: (depth[m], m))
    mult: dict[Weight, int] = {lam: 1}
    lr = tuple(x + 1 for x in lam)
    norm_lr = a.inner(lr, lr)

    def m_of(g: Weight) -> int:
        return mult.get(dominant_rep(a, g), 0)

    for mu in doms[1:]:
        mr = tuple(x + 1 for x in mu)
        den = norm_lr - a.inner(mr, mr)
        s = Fraction(0)
        for al in roots:
            k = 1
            while True:
                g = tuple(x + k * y for x, y in zip(mu, al))
                if not a.leq(dominant_rep(a, g), lam):
                    break
                m = m_of(g)
                if m:
                    s += m * a.inner(g, al)
                k += 1
        val = 2 * s / den
        if val.denominator != 1 or val < 0:
            raise OracleError("Freudenthal recursion produced a non-integer")
        if val:
            mult[mu] = int(val)
    return mult


def weight_multiplicity(a: CartanData, lam: Sequence[int], mu: Sequence[int]) -> int:
    char = dominant_character(a, _check_dominant(a, lam))
    return char.get(dominant_rep(a, mu), 0)


def character(a: CartanData, lam: Sequence[int]) -> dict[Weight, int]:
    """Full character: every weight of V_lam with its multiplicity."""
    from .liealg import weyl_orbit

    out: dict[Weight, int] = {}
    for mu, m in dominant_character(a, _check_dominant(a, lam)).items():
        for g in weyl_orbit(a, mu):
            out[g] = m
    return out


@lru_cache(maxsize=None)
def _group_data(a: CartanData, subset: tuple[int, ...] | None) -> tuple:
    """(sign, images of fundamental weights) for every element of W or W_I."""
    if subset is None:
        elems = all_elements(a)
    else:
        elems = [identity(a)]
        seen = {elems[0].key}
        queue = deque(elems)
        while queue:
            w = queue.popleft()
            for i in subset:
                u = w.left_mul(i)
                if u.key not in seen:
                    seen.add(u.key)
                    elems.append(u)
                    queue.append(u)
    if len(elems) > WEYL_GROUP_CAP:
        raise OracleError(f"Weyl group of order {len(elems)} exceeds the cap {WEYL_GROUP_CAP}")
    out = []
    for w in elems:
        cols = [w.act(a.fundamental(j)) for j in a.indices]
        out.append((-1 if w.length % 2 else 1, tuple(cols)))
    return tuple(out)


def _apply(cols, x: Sequence[int]) -> Weight:
    n = len(x)
    return tuple(sum(x[j] * cols[j][r] for j in range(n)) for r in range(n))


def _alternating(a: CartanData, subset, char_lam: Weight, target: Sequence[int], shift: Sequence[int]) -> int:
    # sum over w of sign(w) * m_lam(w(target + rho) - rho - shift)
    tr = tuple(x + 1 for x in target)
    total = 0
    char = dominant_character(a, char_lam)
    for sign, cols in _group_data(a, subset):
        g = tuple(x - 1 - s for x, s in zip(_apply(cols, tr), shift))
        total += sign * char.get(dominant_rep(a, g), 0)
    return total


def tensor_multiplicity(a: CartanData, lam: Sequence[int], nu: Sequence[int], mu: Sequence[int]) -> int:
    """c_{lam,nu}^mu: multiplicity of V_mu in V_lam (x) V_nu (Brauer-Klimyk)."""
    lam = _check_dominant(a, lam, "lambda")
    nu = _check_dominant(a, nu, "nu")
    mu = _check_dominant(a, mu, "mu")
    # iterate over the smaller character
    if dimension(a, nu) > dimension(a, lam):
        lam, nu = nu, lam
    out = _alternating(a, None, nu, mu, lam)
    if out < 0:
        raise OracleError("negative tensor multiplicity")
    return out


def branching_multiplicity(a: CartanData, subset: Sequence[int], nu: Sequence[int], beta: Sequence[int]) -> int:
    """Multiplicity of the g(I)-module with highest weight beta inside V_nu."""
    nu = _check_dominant(a, nu, "nu")
    sub = tuple(sorted(set(subset)))
    beta = tuple(int(x) for x in beta)
    if len(beta) != a.rank or any(beta[i - 1] < 0 for i in sub):
        raise OracleError(f"beta {beta} is not dominant for the Levi subalgebra {sub}")
    out = _alternating(a, sub, nu, beta, a.zero)
    if out < 0:
        raise OracleError("negative branching multiplicity")
    return out


def levi_dimension(a: CartanData, subset: Sequence[int], beta: Sequence[int]) -> int:
    """Dimension of the g(I)-module with highest weight beta (Weyl formula over I-roots)."""
    sub = set(subset)
    num = Fraction(1)
    for b in a.positive_roots:
        if any(x and (k + 1) not in sub for k, x in enumerate(b)):
            continue
        root = a.from_root_coords(b)
        br = tuple(x + 1 for x in beta)
        num *= a.inner(br, root) / a.inner(a.rho, root)
    return int(num)
