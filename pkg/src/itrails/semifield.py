"""Semifields, subtraction-free expressions and the rank-2 transition tables.

Two concrete semifields are provided: ``POS`` (positive rationals, exact) and
``TROP`` (integers with min as addition and + as multiplication, with +inf as
the neutral element for min).  ``SYM`` builds expression DAGs, so the same
table code yields evaluable, printable formulas.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

INT64_MAX = 2**63 - 1
TROP_INF = math.inf


class SemifieldError(ValueError):
    pass


class Semifield:
    name = "abstract"

    def add(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def mul(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def div(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def const(self, n: int) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        return self.const(1)

    def inv(self, x: Any) -> Any:
        return self.div(self.one(), x)

    def pow(self, x: Any, n: int) -> Any:
        """x**n for any integer n (n < 0 means division)."""
        if n < 0:
            return self.inv(self.pow(x, -n))
        if n == 0:
            return self.one()
        out = x
        for _ in range(n - 1):
            out = self.mul(out, x)
        return out

    def sum(self, xs: Sequence[Any]) -> Any:
        out = xs[0]
        for x in xs[1:]:
            out = self.add(out, x)
        return out

    def prod(self, xs: Sequence[Any]) -> Any:
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out

    def scale(self, n: int, x: Any) -> Any:
        """n * x for a positive integer constant n."""
        return self.mul(self.const(n), x)


class PositiveRationals(Semifield):
    name = "positive"

    def coerce(self, x: Any) -> Fraction:
        v = Fraction(x)
        if v <= 0:
            raise SemifieldError(f"{x} is not a positive rational")
        return v

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def div(self, x, y):
        return x / y

    def const(self, n):
        return Fraction(n)

    def pow(self, x, n):
        return x ** n


class Tropical(Semifield):
    """(Z, min, +), with +inf allowed; results are checked against int64."""

    name = "tropical"

    def _check(self, v):
        if v != TROP_INF and abs(v) > INT64_MAX:
            raise OverflowError("tropical value exceeds the int64 range")
        return v

    def coerce(self, x: Any):
        if x == TROP_INF or x == "inf":
            return TROP_INF
        if isinstance(x, float) and not x.is_integer():
            raise SemifieldError(f"{x} is not an integer")
        return self._check(int(x))

    def add(self, x, y):
        return min(x, y)

    def mul(self, x, y):
        return self._check(x + y)

    def div(self, x, y):
        if y == TROP_INF:
            raise SemifieldError("division by the tropical zero")
        return self._check(x - y)

    def const(self, n):
        if n <= 0:
            raise SemifieldError("only positive integer constants are allowed")
        return 0

    def pow(self, x, n):
        if x == TROP_INF:
            if n < 0:
                raise SemifieldError("division by the tropical zero")
            return TROP_INF if n > 0 else 0
        return self._check(n * x)

    def sum(self, xs):
        return min(xs)


POS = PositiveRationals()
TROP = Tropical()


# ---------------------------------------------------------------- expressions


class SFExpr:
    """Node of a subtraction-free expression DAG.

    ``op`` is one of ``var``, ``const``, ``+``, ``*``, ``/``, ``^``.
    """

    __slots__ = ("op", "args", "value")

    def __init__(self, op: str, args: tuple = (), value: Any = None):
        self.op = op
        self.args = args
        self.value = value

    def __add__(self, other):
        return SFExpr("+", (self, _lift(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return SFExpr("*", (self, _lift(other)))

    def __rmul__(self, other):
        return SFExpr("*", (_lift(other), self))

    def __truediv__(self, other):
        return SFExpr("/", (self, _lift(other)))

    def __rtruediv__(self, other):
        return SFExpr("/", (_lift(other), self))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise SemifieldError("exponents must be positive integers")
        return SFExpr("^", (self,), n)

    def evaluate(self, env: Mapping[str, Any], K: Semifield) -> Any:
        return evaluate(self, env, K)

    def to_text(self) -> str:
        return to_text(self)

    def variables(self) -> set[str]:
        out: set[str] = set()
        seen: set[int] = set()
        stack = [self]
        while stack:
            e = stack.pop()
            if id(e) in seen:
                continue
            seen.add(id(e))
            if e.op == "var":
                out.add(e.value)
            stack.extend(e.args)
        return out

    def __repr__(self) -> str:
        return f"SFExpr({self.to_text()})"


def var(name: str) -> SFExpr:
    if not _IDENT.fullmatch(name):
        raise SemifieldError(f"bad variable name {name!r}")
    return SFExpr("var", (), name)


def const(n: int) -> SFExpr:
    if not isinstance(n, int) or n < 1:
        raise SemifieldError("constants must be positive integers")
    return SFExpr("const", (), n)


def _lift(x) -> SFExpr:
    if isinstance(x, SFExpr):
        return x
    return const(x)


def evaluate(expr: SFExpr, env: Mapping[str, Any], K: Semifield) -> Any:
    """Evaluate with memoization on shared nodes."""
    memo: dict[int, Any] = {}

    def ev(e: SFExpr):
        k = id(e)
        if k in memo:
            return memo[k]
        if e.op == "var":
            if e.value not in env:
                raise SemifieldError(f"unbound variable {e.value}")
            v = env[e.value]
        elif e.op == "const":
            v = K.const(e.value)
        elif e.op == "+":
            v = K.sum([ev(x) for x in e.args])
        elif e.op == "*":
            v = K.prod([ev(x) for x in e.args])
        elif e.op == "/":
            v = K.div(ev(e.args[0]), ev(e.args[1]))
        elif e.op == "^":
            v = K.pow(ev(e.args[0]), e.value)
        else:
            raise SemifieldError(f"unknown node {e.op}")
        memo[k] = v
        return v

    return ev(expr)


def to_text(expr: SFExpr) -> str:
    if expr.op == "var":
        return expr.value
    if expr.op == "const":
        return str(expr.value)
    if expr.op == "^":
        return f"(^ {to_text(expr.args[0])} {expr.value})"
    return "(" + " ".join([expr.op] + [to_text(a) for a in expr.args]) + ")"


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\()|(\))|([+*/^])|(\d+)|([A-Za-z_][A-Za-z0-9_]*))")


def parse(text: str) -> SFExpr:
    """Parse the prefix s-expression form produced by ``to_text``."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SemifieldError(f"unexpected character at offset {pos}")
        tokens.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    idx = 0

    def expr() -> SFExpr:
        nonlocal idx
        if idx >= len(tokens):
            raise SemifieldError("unexpected end of input")
        tok = tokens[idx]
        idx += 1
        if tok == "(":
            if idx >= len(tokens):
                raise SemifieldError("unexpected end of input")
            op = tokens[idx]
            idx += 1
            if op not in "+*/^" or len(op) != 1:
                raise SemifieldError(f"expected an operator, got {op!r}")
            if op == "^":
                base = expr()
                n = tokens[idx] if idx < len(tokens) else ""
                idx += 1
                if not n.isdigit() or int(n) < 1:
                    raise SemifieldError("exponent must be a positive integer")
                node = SFExpr("^", (base,), int(n))
            else:
                args = []
                while idx < len(tokens) and tokens[idx] != ")":
                    args.append(expr())
                if op == "/" and len(args) != 2:
                    raise SemifieldError("division takes exactly two operands")
                if len(args) < 1:
                    raise SemifieldError(f"operator {op} needs operands")
                node = args[0] if len(args) == 1 else SFExpr(op, tuple(args))
            if idx >= len(tokens) or tokens[idx] != ")":
                raise SemifieldError("missing closing parenthesis")
            idx += 1
            return node
        if tok == ")":
            raise SemifieldError("unbalanced parenthesis")
        if tok.isdigit():
            return const(int(tok))
        return var(tok)

    out = expr()
    if idx != len(tokens):
        raise SemifieldError("trailing input after expression")
    return out


class Symbolic(Semifield):
    """Semifield whose elements are SFExpr nodes."""

    name = "symbolic"

    def add(self, x, y):
        return SFExpr("+", (x, y))

    def mul(self, x, y):
        return SFExpr("*", (x, y))

    def div(self, x, y):
        return SFExpr("/", (x, y))

    def const(self, n):
        return const(n)

    def pow(self, x, n):
        if n < 0:
            return SFExpr("/", (const(1), self.pow(x, -n)))
        if n == 0:
            return const(1)
        return x if n == 1 else SFExpr("^", (x,), n)


SYM = Symbolic()


# ------------------------------------------------------------ rank-2 tables


def _pos_a2(K, t):
    t1, t2, t3 = t
    s = K.add(t1, t3)
    return (K.div(K.mul(t2, t3), s), s, K.div(K.mul(t1, t2), s))


def _pos_b2(K, t):
    t1, t2, t3, t4 = t
    s = K.add(t1, t3)
    pi1 = K.add(K.mul(t1, t2), K.mul(s, t4))
    pi2 = K.add(K.mul(K.pow(t1, 2), t2), K.mul(K.pow(s, 2), t4))
    return (K.div(K.prod([t2, K.pow(t3, 2), t4]), pi2), K.div(pi2, pi1),
            K.div(K.pow(pi1, 2), pi2), K.div(K.prod([t1, t2, t3]), pi1))


def _pos_g2(K, t):
    t1, t2, t3, t4, t5, t6 = t
    s13 = K.add(t1, t3)
    s35 = K.add(t3, t5)
    t1t2 = K.mul(t1, t2)
    c = K.mul(K.mul(t4, K.pow(t5, 2)), t6)  # t4 t5^2 t6
    pi1 = K.sum([K.prod([t1t2, K.pow(t3, 2), t4]),
                 K.prod([t1t2, K.pow(s35, 2), t6]),
                 K.mul(s13, c)])
    q2 = K.sum([K.scale(3, K.mul(t1, t3)), K.scale(2, K.pow(t3, 2)),
                K.scale(2, K.mul(t3, t5)), K.scale(2, K.mul(t1, t5))])
    q3 = K.sum([K.scale(3, K.mul(t1, t3)), K.scale(3, K.pow(t3, 2)),
                K.scale(3, K.mul(t3, t5)), K.scale(2, K.mul(t1, t5))])
    t4t5_3t6 = K.prod([K.pow(t4, 2), K.pow(t5, 3), t6])
    pi2 = K.sum([K.prod([K.pow(t1, 2), K.pow(t2, 2), K.pow(t3, 3), t4]),
                 K.prod([K.pow(t1, 2), K.pow(t2, 2), K.pow(s35, 3), t6]),
                 K.mul(K.pow(s13, 2), t4t5_3t6),
                 K.prod([t1t2, c, q2])])
    pi3 = K.sum([K.prod([K.pow(t1, 3), K.pow(t2, 2), K.pow(t3, 3), t4]),
                 K.prod([K.pow(t1, 3), K.pow(t2, 2), K.pow(s35, 3), t6]),
                 K.mul(K.pow(s13, 3), t4t5_3t6),
                 K.prod([K.pow(t1, 2), t2, c, q3])])
    inner = K.sum([K.prod([t1t2, K.pow(t3, 3), t4]),
                   K.scale(2, K.prod([t1t2, K.pow(s35, 3), t6])),
                   K.mul(q3, c)])
    tail = K.add(K.mul(t1t2, K.pow(s35, 2)), K.prod([s13, t4, K.pow(t5, 2)]))
    pi4 = K.add(K.prod([K.pow(t1, 2), K.pow(t2, 2), K.pow(t3, 3), t4, inner]),
                K.mul(K.pow(t6, 2), K.pow(tail, 3)))
    p1 = K.div(K.prod([t2, K.pow(t3, 3), K.pow(t4, 2), K.pow(t5, 3), t6]), pi3)
    p2 = K.div(pi3, pi2)
    p3 = K.div(K.pow(pi2, 3), K.mul(pi3, pi4))
    p4 = K.div(pi4, K.mul(pi1, pi2))
    p5 = K.div(K.pow(pi1, 3), pi4)
    p6 = K.div(K.prod([t1t2, K.pow(t3, 2), t4, t5]), pi1)
    return (p1, p2, p3, p4, p5, p6)


def _neg_a2(K, t):
    t1, t2, t3 = t
    p1 = K.inv(K.add(K.inv(t3), K.div(t1, t2)))
    return (p1, K.mul(t1, t3), K.add(t1, K.div(t2, t3)))


def _neg_b2(K, t):
    t1, t2, t3, t4 = t
    u = K.add(K.div(t2, t3), K.inv(t4))
    p1 = K.inv(K.sum([K.div(t1, t2), K.div(t2, t3), K.inv(t4)]))
    p2 = K.inv(K.add(K.div(K.pow(u, 2), t1), K.inv(t3)))
    p3 = K.sum([t2, K.mul(t1, t4), K.div(K.mul(K.pow(t2, 2), t4), t3)])
    p4 = K.add(t1, K.mul(t3, K.pow(u, 2)))
    return (p1, p2, p3, p4)


def _neg_g2(K, t):
    t1, t2, t3, t4, t5, t6 = t
    u = K.add(K.div(t2, t3), K.inv(t4))
    v = K.add(K.div(t4, t5), K.inv(t6))
    w = K.sum([K.mul(t3, K.pow(u, 2)), K.div(t4, t5), K.inv(t6)])
    p1 = K.inv(K.add(K.div(t1, t2), w))
    p2 = K.inv(K.sum([
        K.div(t1, t3),
        K.scale(2, K.mul(t3, K.pow(u, 3))),
        K.div(K.pow(w, 3), t1),
        K.scale(3, K.div(K.mul(t2, t4), K.mul(t3, t5))),
        K.scale(3, K.div(t2, K.mul(t3, t6))),
        K.scale(3, K.inv(K.mul(t4, t6))),
        K.scale(2, K.inv(t5)),
    ]))
    p5 = K.sum([
        K.mul(t1, t6),
        K.prod([K.pow(t3, 2), t6, K.pow(u, 3)]),
        K.prod([t4, t6, K.pow(v, 2)]),
        K.scale(2, t2),
        K.scale(2, K.div(t3, t4)),
        K.scale(3, K.div(K.prod([t2, t4, t6]), t5)),
        K.scale(2, K.div(K.mul(t3, t6), t5)),
    ])
    p6 = K.sum([
        t1,
        K.mul(K.pow(t3, 2), K.pow(u, 3)),
        K.mul(t5, K.pow(v, 3)),
        K.scale(3, K.div(K.mul(t2, t4), t5)),
        K.scale(3, K.div(t2, t6)),
        K.scale(3, K.div(t3, K.mul(t4, t6))),
        K.scale(2, K.div(t3, t5)),
    ])
    p3 = K.div(K.prod([t2, t4, t6]), K.mul(p1, p5))
    p4 = K.div(K.prod([t1, t3, t5]), K.mul(p2, p6))
    return (p1, p2, p3, p4, p5, p6)


def _swap(K, t):
    return (t[1], t[0])


# keyed by the Cartan pair (a_ij, a_ji) of the first letter i and second letter j
_POSITIVE: dict[tuple[int, int], Callable] = {
    (0, 0): _swap, (-1, -1): _pos_a2, (-2, -1): _pos_b2, (-3, -1): _pos_g2,
}
_NEGATIVE: dict[tuple[int, int], Callable] = {
    (0, 0): _swap, (-1, -1): _neg_a2, (-1, -2): _neg_b2, (-1, -3): _neg_g2,
}


def rank2_transition(a_ij: int, a_ji: int, sign: str, params: Sequence[Any],
                     K: Semifield = POS) -> tuple:
    """Transition map of a braid move on a rank-2 factor.

    ``sign='+'`` turns x_i(t_1) x_j(t_2) ... into x_j(p_1) x_i(p_2) ...;
    ``sign='-'`` does the same for the negative generators x_{-i}.
    ``sign='mixed'`` turns x_j(t_1) x_{-i}(t_2) into x_{-i}(p_1) x_j(p_2);
    here the pair is (a_ij, a_ji) and ``a_ij == 2`` signals i == j.
    ``sign='mixed-inverse'`` is the inverse of the mixed move.
    """
    t = tuple(params)
    if sign in ("mixed", "mixed-inverse"):
        if len(t) != 2:
            raise SemifieldError("mixed moves take two parameters")
        return _mixed(a_ij, t, K, inverse=(sign == "mixed-inverse"))
    table = _POSITIVE if sign == "+" else _NEGATIVE if sign == "-" else None
    if table is None:
        raise SemifieldError(f"unknown sign {sign!r}")
    key = (a_ij, a_ji)
    if key in table:
        f, flip = table[key], False
    elif (a_ji, a_ij) in table:
        f, flip = table[(a_ji, a_ij)], True
    else:
        raise SemifieldError(f"no transition for Cartan pair {key}")
    d = {(0, 0): 2, (-1, -1): 3}.get(key, 6 if -3 in key else 4)
    if len(t) != d:
        raise SemifieldError(f"a {d}-move takes {d} parameters, got {len(t)}")
    if not flip:
        return tuple(f(K, t))
    if sign == "+":
        return tuple(reversed(f(K, tuple(reversed(t)))))
    inv_rev = tuple(K.inv(x) for x in reversed(t))
    return tuple(K.inv(x) for x in reversed(f(K, inv_rev)))


def _mixed(a_ij: int, t: tuple, K: Semifield, inverse: bool) -> tuple:
    t1, t2 = t
    if a_ij == 2:
        if not inverse:
            p1 = K.inv(K.add(t1, K.inv(t2)))
            p2 = K.inv(K.mul(K.inv(t2), K.add(K.one(), K.inv(K.mul(t1, t2)))))
            return (p1, p2)
        # x_{-i}(t1) x_i(t2) = x_i(p1) x_{-i}(p2)
        p2 = K.add(t1, t2)
        p1 = K.div(t2, K.mul(t1, p2))
        return (p1, p2)
    if not inverse:
        return (t2, K.mul(t1, K.pow(t2, a_ij)))
    return (K.div(t2, K.pow(t1, a_ij)), t1)
