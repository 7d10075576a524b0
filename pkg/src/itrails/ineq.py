"""Integer inequality systems and exact lattice-point enumeration.

Rows are ``coeffs . t  rel  rhs`` with ``rel`` one of ``>=`` or ``==``.
Enumeration is a depth-first search over variables with interval
propagation at every node; optional nonlinear predicates filter the leaves.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

Row = tuple[tuple[int, ...], str, int]


class IneqError(ValueError):
    pass


class UnboundedError(IneqError):
    pass


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass
class IneqSystem:
    names: list[str]
    rows: list[Row] = field(default_factory=list)
    infeasible: bool = False
    predicates: list[tuple[str, Callable[[tuple[int, ...]], bool]]] = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def _add(self, coeffs: Sequence, rel: str, rhs) -> None:
        if len(coeffs) != self.nvars:
            raise IneqError("row length does not match the number of variables")
        c = [Fraction(x) for x in coeffs]
        r = Fraction(rhs)
        den = math.lcm(*(x.denominator for x in c + [r]))
        ci = tuple(int(x * den) for x in c)
        ri = r * den
        g = math.gcd(*ci) if any(ci) else 0
        if g == 0:
            ok = (ri == 0) if rel == "==" else (ri <= 0)
            if not ok:
                self.infeasible = True
            return
        ci = tuple(x // g for x in ci)
        q = ri / g
        if rel == "==":
            if q.denominator != 1:
                self.infeasible = True
                return
            # normalize the sign of equations
            first = next(x for x in ci if x)
            if first < 0:
                ci, q = tuple(-x for x in ci), -q
            self.rows.append((ci, "==", int(q)))
        else:
            self.rows.append((ci, ">=", _ceil(q)))

    def add_ge(self, coeffs: Sequence, rhs) -> None:
        self._add(coeffs, ">=", rhs)

    def add_le(self, coeffs: Sequence, rhs) -> None:
        self._add([-Fraction(x) for x in coeffs], ">=", -Fraction(rhs))

    def add_eq(self, coeffs: Sequence, rhs) -> None:
        self._add(coeffs, "==", rhs)

    def add_predicate(self, description: str, fn: Callable[[tuple[int, ...]], bool]) -> None:
        self.predicates.append((description, fn))

    def canonical(self) -> "IneqSystem":
        """Deduplicated, sorted copy; for repeated left sides only the strongest bound stays."""
        eqs: dict[tuple[int, ...], set[int]] = {}
        ges: dict[tuple[int, ...], int] = {}
        for c, rel, r in self.rows:
            if rel == "==":
                eqs.setdefault(c, set()).add(r)
            else:
                ges[c] = max(r, ges.get(c, r))
        out = IneqSystem(list(self.names), [], self.infeasible, list(self.predicates))
        for c, rs in eqs.items():
            if len(rs) > 1:
                out.infeasible = True
            out.rows.append((c, "==", min(rs)))
        out.rows.extend((c, ">=", r) for c, r in ges.items())
        out.rows.sort(key=lambda row: (row[1] != "==", row[0], row[2]))
        return out

    def satisfied(self, t: Sequence[int]) -> bool:
        if self.infeasible:
            return False
        for c, rel, r in self.rows:
            s = sum(x * y for x, y in zip(c, t))
            if (rel == "==" and s != r) or (rel == ">=" and s < r):
                return False
        return all(fn(tuple(t)) for _, fn in self.predicates)

    def to_dict(self) -> dict:
        s = self.canonical()
        return {
            "variables": s.names,
            "rows": [{"coeffs": list(c), "rel": rel, "rhs": r} for c, rel, r in s.rows],
            "infeasible": s.infeasible,
            "nonlinear": [d for d, _ in s.predicates],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "IneqSystem":
        if d.get("nonlinear"):
            raise IneqError("nonlinear conditions cannot be restored from JSON")
        out = cls(list(d["variables"]))
        for row in d["rows"]:
            out._add(row["coeffs"], row["rel"], row["rhs"])
        out.infeasible = out.infeasible or bool(d.get("infeasible"))
        return out


INF = math.inf


def _propagate(rows: list[tuple[list[tuple[int, int]], int]], lo: list, hi: list) -> bool:
    """Tighten integer bounds in place; False if a row cannot be satisfied.

    Each row is a list of (variable, coefficient) pairs with a >= right side.
    """
    changed = True
    while changed:
        changed = False
        for terms, b in rows:
            mx = 0
            ninf = 0
            inf_var = -1
            for k, a in terms:
                v = hi[k] if a > 0 else lo[k]
                if v == INF or v == -INF:
                    ninf += 1
                    inf_var = k
                else:
                    mx += a * v
            if ninf == 0 and mx < b:
                return False
            if ninf > 1:
                continue
            for k, a in terms:
                if ninf == 1 and k != inf_var:
                    continue
                v = hi[k] if a > 0 else lo[k]
                rest = mx - (a * v if ninf == 0 else 0)
                need = b - rest
                if a > 0:
                    nb = -((-need) // a)
                    if nb > lo[k]:
                        lo[k] = nb
                        changed = True
                        if nb > hi[k]:
                            return False
                else:
                    nb = need // a
                    if nb < hi[k]:
                        hi[k] = nb
                        changed = True
                        if nb < lo[k]:
                            return False
    return True


def _compile(sys: IneqSystem) -> list[tuple[list[tuple[int, int]], int]]:
    rows = []
    for c, rel, r in sys.rows:
        terms = [(k, a) for k, a in enumerate(c) if a]
        rows.append((terms, r))
        if rel == "==":
            rows.append(([(k, -a) for k, a in terms], -r))
    return rows


def _lp_bounds(sys: IneqSystem, k: int, lo: list, hi: list) -> tuple[float, float]:
    from scipy.optimize import linprog

    n = sys.nvars
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for c, rel, r in sys.rows:
        if rel == "==":
            a_eq.append(list(c))
            b_eq.append(r)
        else:
            a_ub.append([-x for x in c])
            b_ub.append(-r)
    bounds = [(None if lo[j] == -INF else lo[j], None if hi[j] == INF else hi[j]) for j in range(n)]
    out = []
    for sgn in (1, -1):
        obj = [0] * n
        obj[k] = sgn
        res = linprog(obj, A_ub=a_ub or None, b_ub=b_ub or None, A_eq=a_eq or None,
                      b_eq=b_eq or None, bounds=bounds, method="highs")
        if res.status == 3:
            raise UnboundedError(f"variable {sys.names[k]} is unbounded")
        if res.status == 2:
            return (1.0, 0.0)
        if res.status != 0:
            raise IneqError(f"linear programming failed: {res.message}")
        out.append(sgn * res.fun)
    return out[0], out[1]


def enumerate_lattice(sys: IneqSystem, stats: dict | None = None) -> Iterator[tuple[int, ...]]:
    """All integer points of the system, in lexicographic order of the search."""
    if stats is not None:
        stats.setdefault("leaves", 0)
        stats.setdefault("nodes", 0)
    if sys.infeasible:
        return
    n = sys.nvars
    rows = _compile(sys)
    lo = [-INF] * n
    hi = [INF] * n
    if not _propagate(rows, lo, hi):
        return
    for k in range(n):
        if lo[k] == -INF or hi[k] == INF:
            # interval propagation was not enough; ask an LP for a safe box
            l, h = _lp_bounds(sys, k, lo, hi)
            if l > h:
                return
            lo[k] = max(lo[k], math.floor(l + 1e-7)) if lo[k] == -INF else lo[k]
            hi[k] = min(hi[k], math.ceil(h - 1e-7)) if hi[k] == INF else hi[k]
            if not _propagate(rows, lo, hi):
                return
    preds = [fn for _, fn in sys.predicates]

    def rec(lo: list, hi: list) -> Iterator[tuple[int, ...]]:
        if stats is not None:
            stats["nodes"] += 1
        free = [k for k in range(n) if lo[k] != hi[k]]
        if not free:
            t = tuple(int(x) for x in lo)
            if stats is not None:
                stats["leaves"] += 1
            if all(fn(t) for fn in preds):
                yield t
            return
        k = min(free, key=lambda j: (hi[j] - lo[j], j))
        for v in range(int(lo[k]), int(hi[k]) + 1):
            l2, h2 = list(lo), list(hi)
            l2[k] = h2[k] = v
            if _propagate(rows, l2, h2):
                yield from rec(l2, h2)

    yield from rec(lo, hi)


def count_lattice(sys: IneqSystem, stats: dict | None = None) -> int:
    return sum(1 for _ in enumerate_lattice(sys, stats))
