"""The acceptance suite: twelve end-to-end checks against independent oracles."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import counting, oracle
from .counting import MultiplicityQuery
from .ineq import IneqSystem, count_lattice, enumerate_lattice
from .liealg import cartan, longest_element, reduced_words, weyl_orbit
from .minors import minor_poly_negative, minor_poly_positive, minor_tropical, verify_identity
from .param import (crystal_apply, endpoints_from_string, geom_crystal_apply, l_i, lusztig_to_string,
                    string_cone, transition)
from .repmod import build_module
from .semifield import POS, TROP
from .trails import enumerate_trails


@dataclass
class AcceptanceConfig:
    seed: int = 2024
    tensor_small: tuple[tuple[str, int], ...] = (("A1", 2), ("A2", 2), ("B2", 2), ("G2", 2),
                                                 ("A3", 1), ("B3", 1), ("C3", 1))
    words_per_type: int = 2
    cone_box: int = 5
    a2_box: int = 5
    path_types: tuple[str, ...] = ("A2", "B2", "G2", "A3")
    path_grid: int = 2
    path_samples: int = 3
    slice_height: int = 6
    lformula_box: int = 3
    minor_types: tuple[tuple[str, tuple[int, ...]], ...] = (
        ("A2", (1, 2)), ("C2", (1, 2)), ("B2", (1, 2)), ("A3", (1, 2, 3)), ("G2", (1,)))
    minor_box: int = 3
    identity_trials: int = 20
    crystal_samples: int = 40
    valuation_prime: int = 101
    classical: tuple[tuple[str, int], ...] = (("B2", 2), ("B3", 1), ("C3", 1), ("D4", 1))
    reduction: tuple[tuple[str, int], ...] = (("A2", 2), ("A3", 2), ("B2", 2))
    pq_shapes: tuple[tuple[int, int], ...] = ((1, 1), (1, 2), (2, 2))
    pq_bound: int = 2
    large: int = 10
    larger: int = 12


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checks: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name} ({self.checks} checks, {self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "checks": self.checks, "failures": self.failures[:10]}


class _Tally:
    def __init__(self) -> None:
        self.checks = 0
        self.failures: list = []

    def check(self, ok: bool, **info) -> None:
        self.checks += 1
        if not ok:
            self.failures.append({k: _jsonable(v) for k, v in info.items()})


def _jsonable(v):
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


def _box(r: int, n: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(n + 1), repeat=r)


def _words(a, k: int) -> list[tuple[int, ...]]:
    ws = reduced_words(longest_element(a))
    if len(ws) <= k:
        return ws
    # spread the chosen words over the lexicographic list
    step = (len(ws) - 1) / (k - 1)
    return [ws[round(j * step)] for j in range(k)]


# --------------------------------------------------------------- criteria


def c1_multiplicities(cfg: AcceptanceConfig, t: _Tally) -> None:
    methods = ("lusztig-trails", "string-trails", "plucker-lusztig", "plucker-strings")
    for name, n in cfg.tensor_small:
        a = cartan(name)
        words = _words(a, cfg.words_per_type)
        for lam, nu, mu in itertools.product(list(_box(a.rank, n)), repeat=3):
            expect = oracle.tensor_multiplicity(a, lam, nu, mu)
            for meth in methods:
                for w in words:
                    got = counting.count(MultiplicityQuery(a, meth, lam, nu, mu, w))
                    t.check(got == expect, type=name, method=meth, word=w, lam=lam, nu=nu, mu=mu,
                            got=got, expected=expect)


def c2_worked_value(cfg: AcceptanceConfig, t: _Tally) -> None:
    a = cartan("A2")
    rho = (1, 1)
    t.check(oracle.tensor_multiplicity(a, rho, rho, rho) == 2, method="oracle")
    for meth in ("lusztig-trails", "string-trails", "plucker-lusztig", "plucker-strings"):
        for w in reduced_words(longest_element(a)):
            got = counting.count(MultiplicityQuery(a, meth, rho, rho, rho, w))
            t.check(got == 2, method=meth, word=w, got=got)


def _typeA_example() -> IneqSystem:
    # t1 >= 0, t2 >= t6 >= 0, t3 >= t5 >= 0, t2 + t3 >= t4 >= t5 + t6
    s = IneqSystem([f"t{k}" for k in range(1, 7)])
    s.add_ge([1, 0, 0, 0, 0, 0], 0)
    s.add_ge([0, 1, 0, 0, 0, -1], 0)
    s.add_ge([0, 0, 0, 0, 0, 1], 0)
    s.add_ge([0, 0, 1, 0, -1, 0], 0)
    s.add_ge([0, 0, 0, 0, 1, 0], 0)
    s.add_ge([0, 1, 1, -1, 0, 0], 0)
    s.add_ge([0, 0, 0, 1, -1, -1], 0)
    return s


def c3_string_cone(cfg: AcceptanceConfig, t: _Tally) -> None:
    a = cartan("A3")
    word = (2, 1, 3, 2, 1, 3)
    gen = string_cone(a, word, "general")
    ex = _typeA_example()
    lhs = {p for p in _box(6, cfg.cone_box) if gen.satisfied(p)}
    rhs = {p for p in _box(6, cfg.cone_box) if ex.satisfied(p)}
    t.check(lhs == rhs, only_general=sorted(lhs - rhs)[:5], only_example=sorted(rhs - lhs)[:5])
    tA = string_cone(a, word, "typeA")
    rhs2 = {p for p in _box(6, cfg.cone_box) if tA.satisfied(p)}
    t.check(rhs2 == rhs, mode="typeA")


def c4_a2_closed_forms(cfg: AcceptanceConfig, t: _Tally) -> None:
    a = cartan("A2")
    i, j = (1, 2, 1), (2, 1, 2)
    for t1, t2, t3 in _box(3, cfg.a2_box):
        m = min(t1, t3)
        expect = (t2 + t3 - m, m, t1 + t2 - m)
        got = transition(a, "lusztig", i, j, (t1, t2, t3), TROP)
        t.check(got == expect, side="lusztig", t=(t1, t2, t3), got=got)
    cone = string_cone(a, i)
    for p in _box(3, cfg.a2_box):
        if not cone.satisfied(p):
            continue
        t1, t2, t3 = p
        expect = (max(t3, t2 - t1), t1 + t3, min(t1, t2 - t3))
        got = transition(a, "string", i, j, p, TROP)
        t.check(got == expect, side="string", t=p, got=got)


def c5_path_independence(cfg: AcceptanceConfig, t: _Tally) -> None:
    rng = random.Random(cfg.seed)
    for name in cfg.path_types:
        a = cartan(name)
        words = reduced_words(longest_element(a))
        m = len(words[0])
        grid = list(_box(m, cfg.path_grid))
        for src, dst in itertools.product(words, repeat=2):
            mids = rng.sample(words, min(2, len(words)))
            trop_pts = rng.sample(grid, min(cfg.path_samples, len(grid)))
            pos_pts = [tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(m))
                       for _ in range(cfg.path_samples)]
            for side in ("lusztig", "string"):
                for K, pts in ((TROP, trop_pts), (POS, pos_pts)):
                    for p in pts:
                        direct = transition(a, side, src, dst, p, K)
                        for mid in mids:
                            via = transition(a, side, mid, dst, transition(a, side, src, mid, p, K), K)
                            t.check(via == direct, type=name, side=side, K=K.name, src=src, dst=dst, mid=mid)
                        back = transition(a, side, dst, src, direct, K)
                        t.check(tuple(back) == tuple(p), type=name, side=side, K=K.name, round_trip=True)


def _lusztig_weight(betas, tp) -> tuple[int, ...]:
    r = len(betas[0])
    return tuple(sum(b[j] * x for b, x in zip(betas, tp)) for j in range(r))


def c6_graded_bijection(cfg: AcceptanceConfig, t: _Tally) -> None:
    from .param import root_sequence

    for name in ("A2", "B2"):
        a = cartan(name)
        words = reduced_words(longest_element(a))
        for i, ip in itertools.product(words, repeat=2):
            betas = root_sequence(a, ip)
            cone = string_cone(a, i)
            for height in range(cfg.slice_height + 1):
                for gamma in _compositions(height, a.rank):
                    sys = IneqSystem([f"t{k}" for k in range(len(ip))])
                    for k in range(len(ip)):
                        sys.add_ge([int(x == k) for x in range(len(ip))], 0)
                    for j in range(a.rank):
                        sys.add_eq([b[j] for b in betas], gamma[j])
                    src = list(enumerate_lattice(sys))
                    img = [lusztig_to_string(a, i, ip, tp) for tp in src]
                    ssys = IneqSystem(cone.names, list(cone.rows))
                    for j in a.indices:
                        ssys.add_eq([int(x == j) for x in i], gamma[j - 1])
                    target = set(enumerate_lattice(ssys))
                    t.check(len(set(img)) == len(img) and set(img) == target,
                            type=name, i=i, ip=ip, weight=gamma)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def c7_l_and_endpoints(cfg: AcceptanceConfig, t: _Tally) -> None:
    for name in ("A2", "B2", "A3"):
        a = cartan(name)
        words = reduced_words(longest_element(a))
        chosen = _words(a, 2)
        starts = {i0: next(w for w in words if w[0] == i0) for i0 in a.indices}
        for ip in chosen:
            for tp in _box(len(ip), cfg.lformula_box):
                for i0, w in starts.items():
                    t.check(l_i(a, i0, ip, tp) == transition(a, "lusztig", ip, w, tp)[0],
                            type=name, ip=ip, t=tp, i0=i0)
                for i in chosen:
                    s = lusztig_to_string(a, i, ip, tp)
                    for j in chosen:
                        tj = transition(a, "lusztig", ip, j, tp)
                        t.check(endpoints_from_string(a, i, j, s) == (tj[0], tj[-1]),
                                type=name, i=i, j=j, t=tp)


def c8_minor_trails(cfg: AcceptanceConfig, t: _Tally) -> None:
    for name, mods in cfg.minor_types:
        a = cartan(name)
        words = _words(a, 2)
        words.append(words[0][:-1])
        for i in mods:
            mod = build_module(a, i)
            dmod = build_module(a, a.star(i))
            orbit = weyl_orbit(a, a.fundamental(i))
            for w in words:
                grid = list(itertools.product(range(-cfg.minor_box, cfg.minor_box + 1), repeat=len(w)))
                for g, dl in itertools.product(orbit, repeat=2):
                    trs = enumerate_trails(mod, g, dl, w)
                    p = minor_poly_positive(a, i, g, dl, w)
                    cs = {tr.c for tr in trs}
                    ok = set(p) == cs and all(c > 0 and c.denominator == 1 for c in p.values())
                    t.check(ok, type=name, i=i, word=w, gamma=g, delta=dl, side="positive")
                    # negative products: exponents are the d-vectors of the same trails
                    q = minor_poly_negative(a, i, g, dl, w)
                    neg = lambda x: tuple(-y for y in x)
                    ds = {tr.d for tr in enumerate_trails(dmod, neg(g), neg(dl), w)}
                    ok = set(q) == ds and all(c > 0 and c.denominator == 1 for c in q.values())
                    t.check(ok, type=name, i=i, word=w, gamma=g, delta=dl, side="negative")
                    if p and cs:
                        cl = list(cs)
                        bad = next((x for x in grid if minor_tropical(p, x) != min(
                            sum(u * v for u, v in zip(c, x)) for c in cl)), None)
                        t.check(bad is None, type=name, i=i, gamma=g, delta=dl, point=bad)


def c9_identities(cfg: AcceptanceConfig, t: _Tally) -> None:
    plan = [("dodgson", "A2"), ("dodgson", "B2"), ("plucker1", "A2"), ("plucker1", "A3"),
            ("plucker2", "B2"), ("plucker2", "C3"), ("braid", "A2"), ("braid", "B2"),
            ("braid", "C2"), ("braid", "G2"), ("endpoints", "A2"), ("endpoints", "B2"),
            ("endpoints", "G2")]
    for ident, name in plan:
        rep = verify_identity(ident, cartan(name), seed=cfg.seed, trials=cfg.identity_trials)
        t.check(rep.ok, identity=ident, type=name, failures=rep.failures[:3])


def _valuation(x: Fraction, p: int) -> int:
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def c10_crystals(cfg: AcceptanceConfig, t: _Tally) -> None:
    rng = random.Random(cfg.seed)
    for name in ("A2", "B2", "G2", "A3"):
        a = cartan(name)
        words = reduced_words(longest_element(a))
        ends = {i0: next(w for w in words if w[-1] == a.star(i0)) for i0 in a.indices}
        for _ in range(cfg.crystal_samples):
            ip = rng.choice(words)
            tp = [rng.randint(0, 3) for _ in ip]
            i = rng.choice(words)
            s = lusztig_to_string(a, i, ip, tp)
            i0 = rng.choice(list(a.indices))
            n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
            j = ends[i0]
            tj = list(transition(a, "lusztig", ip, j, tp))
            tj[-1] += n1
            got = crystal_apply(a, i, s, i0, n1)
            t.check(got == lusztig_to_string(a, i, j, tj), type=name, i=i, t=s, i0=i0, n=n1)
            t.check(crystal_apply(a, i, got, i0, n2) == crystal_apply(a, i, s, i0, n1 + n2),
                    type=name, composition=True)
            p = cfg.valuation_prime
            geo = geom_crystal_apply(a.langlands_dual(), i, [Fraction(p) ** x for x in s], i0,
                                     Fraction(p) ** n1, POS)
            t.check(tuple(_valuation(x, p) for x in geo) == got, type=name, valuation=True, t=s)
            pos = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in i]
            c1, c2 = Fraction(rng.randint(1, 9), 4), Fraction(3, rng.randint(1, 9))
            lhs = geom_crystal_apply(a, i, geom_crystal_apply(a, i, pos, i0, c1), i0, c2)
            t.check(lhs == geom_crystal_apply(a, i, pos, i0, c1 * c2), type=name, geometric=True)


def c11_classical(cfg: AcceptanceConfig, t: _Tally) -> None:
    for name, n in cfg.classical:
        a = cartan(name)
        lay = counting.classical_layout(a.family, a.rank)
        for lam, nu, mu in itertools.product(list(_box(a.rank, n)), repeat=3):
            sys, _ = counting.classical_system(a, lam, nu, mu)
            got = count_lattice(sys)
            expect = counting.count(MultiplicityQuery(a, "string-trails", lam, nu, mu, lay.word))
            t.check(got == expect, type=name, lam=lam, nu=nu, mu=mu, got=got, expected=expect)


def c12_reduction(cfg: AcceptanceConfig, t: _Tally) -> None:
    for name, n in cfg.reduction:
        a = cartan(name)
        for k in range(a.rank + 1):
            for sub in itertools.combinations(a.indices, k):
                for nu in _box(a.rank, n):
                    for beta in sorted(oracle.character(a, nu)):
                        if any(beta[i - 1] < 0 for i in sub):
                            continue
                        expect = oracle.branching_multiplicity(a, sub, nu, beta)
                        for meth in counting.REDUCTION_METHODS:
                            got = counting.count(MultiplicityQuery(a, meth, nu=nu, subset=sub, beta=beta))
                            t.check(got == expect, type=name, method=meth, subset=sub, nu=nu, beta=beta)
                        if k < a.rank and nu == tuple([n] * a.rank):
                            _large_lambda(cfg, t, a, sub, nu, beta, expect)
    for p, q in cfg.pq_shapes:
        a = cartan("A", p + q - 1)
        sub = [i for i in a.indices if i != p]
        for nu in _box(a.rank, cfg.pq_bound):
            for beta in sorted(oracle.character(a, nu)):
                if any(beta[i - 1] < 0 for i in sub):
                    continue
                expect = oracle.branching_multiplicity(a, sub, nu, beta)
                for meth in ("lusztig", "string"):
                    sys = counting.reduction_pq(p, q, nu, beta, meth)
                    sols = list(enumerate_lattice(sys))
                    t.check(len(sols) == expect, pq=(p, q), method=meth, nu=nu, beta=beta)
                    if meth == "string":
                        t.check(all(counting.is_plane_partition(p, q, s) for s in sols), pq=(p, q))
        cond1 = counting.pq_plane_partition_rows(p, q)
        box = list(_box(p * q, 3))
        t.check({x for x in box if cond1.satisfied(x)} ==
                {x for x in box if counting.is_plane_partition(p, q, x)}, pq=(p, q), plane=True)


def _large_lambda(cfg, t, a, sub, nu, beta, expect) -> None:
    for big in (cfg.large, cfg.larger):
        lam = tuple(0 if i in sub else big for i in a.indices)
        mu = tuple(x + y for x, y in zip(lam, beta))
        got = oracle.tensor_multiplicity(a, lam, nu, mu)
        t.check(got == expect, type=a.name, subset=sub, nu=nu, beta=beta, large=big)


CRITERIA: tuple[tuple[int, str, Callable], ...] = (
    (1, "multiplicity agreement with the tensor oracle", c1_multiplicities),
    (2, "A2 rho x rho contains rho twice", c2_worked_value),
    (3, "A3 string cone for (2,1,3,2,1,3)", c3_string_cone),
    (4, "A2 tropical transition closed forms", c4_a2_closed_forms),
    (5, "transition path independence and round trips", c5_path_independence),
    (6, "graded bijectivity of Lusztig to string", c6_graded_bijection),
    (7, "l_i and endpoint formulas", c7_l_and_endpoints),
    (8, "minor polynomials supported on trails", c8_minor_trails),
    (9, "Dodgson, Pluecker, braid and endpoint identities", c9_identities),
    (10, "crystal operator consistency", c10_crystals),
    (11, "classical systems match string trails", c11_classical),
    (12, "reduction multiplicities and p x q corollaries", c12_reduction),
)


def run_criterion(number: int, cfg: AcceptanceConfig | None = None) -> CriterionResult:
    cfg = cfg or AcceptanceConfig()
    for num, name, fn in CRITERIA:
        if num == number:
            tally = _Tally()
            t0 = time.perf_counter()
            fn(cfg, tally)
            res = CriterionResult(num, name, not tally.failures and tally.checks > 0,
                                  tally.checks, tally.failures, time.perf_counter() - t0)
            return res
    raise ValueError(f"no acceptance criterion {number}")


def run_all(cfg: AcceptanceConfig | None = None, only: Iterable[int] | None = None) -> list[CriterionResult]:
    nums = sorted(only) if only else [c[0] for c in CRITERIA]
    return [run_criterion(n, cfg) for n in nums]
