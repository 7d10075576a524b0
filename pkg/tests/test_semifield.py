from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from itrails.semifield import (POS, SYM, TROP, TROP_INF, SemifieldError, SFExpr, const, evaluate, parse,
                               rank2_transition, to_text, var)

PAIRS = [(0, 0), (-1, -1), (-1, -2), (-2, -1), (-1, -3), (-3, -1)]
SIZE = {(0, 0): 2, (-1, -1): 3}
P = 101


def _size(pair):
    return SIZE.get(pair, 6 if -3 in pair else 4)


def _valuation(x: Fraction) -> int:
    v, num, den = 0, x.numerator, x.denominator
    while num % P == 0:
        num //= P
        v += 1
    while den % P == 0:
        den //= P
        v -= 1
    return v


exprs = st.recursive(
    st.one_of(st.sampled_from(["x", "y", "z"]).map(var), st.integers(1, 5).map(const)),
    lambda sub: st.one_of(
        st.tuples(sub, sub).map(lambda p: p[0] + p[1]),
        st.tuples(sub, sub).map(lambda p: p[0] * p[1]),
        st.tuples(sub, sub).map(lambda p: p[0] / p[1]),
        st.tuples(sub, st.integers(1, 3)).map(lambda p: p[0] ** p[1]),
    ),
    max_leaves=10,
)


def test_tropical_basics():
    assert TROP.add(3, -1) == -1
    assert TROP.mul(3, -1) == 2
    assert TROP.pow(2, -3) == -6
    assert TROP.const(7) == 0
    assert TROP.add(TROP_INF, 4) == 4
    with pytest.raises(SemifieldError):
        TROP.div(1, TROP_INF)
    with pytest.raises(OverflowError):
        TROP.mul(2 ** 62, 2 ** 62)


def test_positive_rationals_reject_nonpositive():
    with pytest.raises(SemifieldError):
        POS.coerce(0)
    assert POS.add(Fraction(1, 2), 1) == Fraction(3, 2)


def test_parse_known_text():
    e = parse("(/ (* b c) (+ a c))")
    assert e.variables() == {"a", "b", "c"}
    assert evaluate(e, {"a": 1, "b": 2, "c": 3}, POS) == Fraction(3, 2)
    assert evaluate(e, {"a": 1, "b": 2, "c": 3}, TROP) == 4
    for bad in ["(+ a", "(- a b)", "a b", "(^ a 0)", ")"]:
        with pytest.raises(SemifieldError):
            parse(bad)


def test_a2_symbolic_transition():
    a, b, c = var("a"), var("b"), var("c")
    out = rank2_transition(-1, -1, "+", (a, b, c), SYM)
    assert [to_text(x) for x in out] == ["(/ (* b c) (+ a c))", "(+ a c)", "(/ (* a b) (+ a c))"]


@given(exprs)
def test_text_round_trip(e):
    assert to_text(parse(to_text(e))) == to_text(e)


@given(exprs, st.lists(st.integers(1, 9), min_size=3, max_size=3))
def test_evaluation_after_round_trip(e, vals):
    env = dict(zip("xyz", [Fraction(v) for v in vals]))
    assert evaluate(parse(to_text(e)), env, POS) == evaluate(e, env, POS)


@given(exprs, st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_tropicalization_is_valuation(e, exps):
    # subtraction-free expressions: v_p of the value at p-powers is the tropical value
    pos_env = dict(zip("xyz", [Fraction(P) ** k for k in exps]))
    trop_env = dict(zip("xyz", exps))
    assert _valuation(evaluate(e, pos_env, POS)) == evaluate(e, trop_env, TROP)


@given(st.sampled_from(PAIRS), st.sampled_from("+-"), st.data())
def test_rank2_moves_are_invertible(pair, sign, data):
    n = _size(pair)
    t = tuple(Fraction(x) for x in data.draw(st.lists(st.integers(1, 9), min_size=n, max_size=n)))
    back = rank2_transition(pair[1], pair[0], sign, rank2_transition(pair[0], pair[1], sign, t, POS), POS)
    assert back == t
    tt = tuple(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)))
    back = rank2_transition(pair[1], pair[0], sign, rank2_transition(pair[0], pair[1], sign, tt, TROP), TROP)
    assert back == tt


@given(st.sampled_from(PAIRS), st.sampled_from("+-"), st.data())
def test_rank2_symbolic_matches_numeric(pair, sign, data):
    n = _size(pair)
    names = [f"t{k}" for k in range(n)]
    vals = [Fraction(x) for x in data.draw(st.lists(st.integers(1, 9), min_size=n, max_size=n))]
    sym = rank2_transition(pair[0], pair[1], sign, [var(x) for x in names], SYM)
    env = dict(zip(names, vals))
    assert [evaluate(x, env, POS) for x in sym] == list(rank2_transition(pair[0], pair[1], sign, vals, POS))


@given(st.sampled_from(PAIRS), st.sampled_from("+-"), st.data())
def test_rank2_tropical_is_valuation(pair, sign, data):
    n = _size(pair)
    exps = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    pos = rank2_transition(pair[0], pair[1], sign, [Fraction(P) ** k for k in exps], POS)
    assert [_valuation(x) for x in pos] == list(rank2_transition(pair[0], pair[1], sign, exps, TROP))


@given(st.sampled_from([(2, 2), (-1, -1), (-2, -1), (-1, -3)]), st.data())
def test_mixed_moves_are_invertible(pair, data):
    t = tuple(Fraction(x) for x in data.draw(st.lists(st.integers(1, 9), min_size=2, max_size=2)))
    fwd = rank2_transition(pair[0], pair[1], "mixed", t, POS)
    assert rank2_transition(pair[0], pair[1], "mixed-inverse", fwd, POS) == t


def test_bad_arity():
    with pytest.raises(SemifieldError):
        rank2_transition(-1, -1, "+", (1, 2), POS)
    with pytest.raises(SemifieldError):
        rank2_transition(-1, -1, "?", (1, 2, 3), POS)
    with pytest.raises(SemifieldError):
        var("1x")
    with pytest.raises(SemifieldError):
        SFExpr("var", (), "x") ** 0
