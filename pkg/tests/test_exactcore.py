"""Unit and property tests for the exact arithmetic substrate."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from angulon.exactcore import (
    ExpRatSum,
    MultiPoly,
    PoleError,
    RatFunc,
    expsum_derive,
    expsum_eval,
    poly_derive,
    rat_normalize,
    ratfunc_derive,
)

F = Fraction


def P(expr_terms, variables=("x", "y")):
    return MultiPoly(variables, {e: F(c) for e, c in expr_terms.items()})


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def test_rat_normalize_reduction():
    assert rat_normalize(2, 4) == F(1, 2)


def test_rat_normalize_zero():
    r = rat_normalize(0, 5)
    assert r.numerator == 0 and r.denominator == 1


def test_rat_normalize_sign():
    r = rat_normalize(-3, -6)
    assert r == F(1, 2) and r.denominator > 0


def test_rat_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rat_normalize(1, 0)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def test_poly_derive_basic():
    p = P({(2, 1): 1})  # x^2 y
    assert poly_derive(p, "x") == P({(1, 1): 2})


def test_poly_derive_to_zero():
    p = P({(2, 0): 1})
    assert poly_derive(p, "y").is_zero()


def test_poly_derive_univariate():
    p = MultiPoly(("x",), {(3,): F(1), (2,): F(3), (1,): F(3)})
    assert poly_derive(p, "x") == MultiPoly(("x",), {(2,): F(3), (1,): F(6), (0,): F(3)})


def test_poly_derive_unknown_variable():
    with pytest.raises(KeyError):
        poly_derive(P({(1, 0): 1}), "z")


def test_poly_substitution_composes():
    # p = x^2 + y, substitute x -> y + 1
    p = P({(2, 0): 1, (0, 1): 1})
    q = p.substitute({"x": P({(0, 1): 1, (0, 0): 1})})
    assert q == P({(0, 2): 1, (0, 1): 3, (0, 0): 1})


def test_exact_division_roundtrip():
    a = P({(1, 0): 1, (0, 1): -1})  # x - y
    b = P({(2, 0): 1, (1, 1): 2, (0, 2): 5})
    assert (a * b).exact_div(a) == b


def test_exact_division_rejects_inexact():
    a = P({(1, 0): 1, (0, 1): -1})
    with pytest.raises(ValueError):
        (a * a + 1).exact_div(a)


def test_json_roundtrip_and_order():
    p = P({(0, 0): F(1, 3), (2, 1): -2, (1, 1): 7})
    d = p.to_json_dict()
    assert d["version"] == 1
    # descending graded lex: (2,1) before (1,1) before (0,0)
    assert [t["e"] for t in d["terms"]] == [[2, 1], [1, 1], [0, 0]]
    assert MultiPoly.from_json(p.to_json()) == p


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

def test_ratfunc_derive_inverse():
    x = MultiPoly.variable(("x",), "x")
    f = RatFunc(MultiPoly.const(("x",), 1), x)
    assert ratfunc_derive(f, "x") == RatFunc(MultiPoly.const(("x",), -1), x * x)


def test_ratfunc_derive_quotient():
    xv, yv = (MultiPoly.variable(("x", "y"), v) for v in ("x", "y"))
    f = RatFunc(xv, xv - yv)
    expected = RatFunc(-yv, (xv - yv) * (xv - yv))
    assert ratfunc_derive(f, "x") == expected


def test_ratfunc_derive_constant():
    f = RatFunc(MultiPoly.const(("x",), 5))
    assert ratfunc_derive(f, "x").is_zero()


def test_ratfunc_eval_pole():
    xv, yv = (MultiPoly.variable(("x", "y"), v) for v in ("x", "y"))
    f = RatFunc(xv, xv - yv)
    with pytest.raises(PoleError):
        f.eval({"x": F(1), "y": F(1)})


# ---------------------------------------------------------------------------
# exponential-rational sums
# ---------------------------------------------------------------------------

def _exy():
    variables = ("x1", "y1")
    return ExpRatSum.single(
        variables,
        MultiPoly.const(variables, 1),
        bilinear={("x1", "y1"): F(1)},
    )


def test_expsum_derive_exponential():
    d = expsum_derive(_exy(), "x1")
    # y1 * e^{x1 y1}
    (term,) = d.terms
    assert term.num == MultiPoly.variable(("x1", "y1"), "y1")


def test_expsum_derive_product_rule():
    variables = ("x1", "y1")
    s = ExpRatSum.single(
        variables,
        MultiPoly.const(variables, 1),
        den={("x1", F(0)): 1},
        bilinear={("x1", "y1"): F(1)},
    )
    d = expsum_derive(s, "x1")
    # (-1/x1^2 + y1/x1) e^{x1 y1}: evaluate at a couple of points
    for x, y in [(F(2), F(3)), (F(1, 2), F(-5))]:
        got = d.eval_exact({"x1": x, "y1": y})
        assert got == {x * y: -1 / x**2 + y / x}


def test_expsum_linearity_of_derivative():
    variables = ("x1", "y1", "y2")
    one = MultiPoly.const(variables, 1)
    s = ExpRatSum.single(variables, one, bilinear={("x1", "y1"): F(1)}) + ExpRatSum.single(
        variables, one, bilinear={("x1", "y2"): F(1)}
    )
    d = expsum_derive(s, "x1")
    assert len(d.terms) == 2


def test_expsum_eval_at_zero():
    val = expsum_eval(_exy(), {"x1": F(0), "y1": F(5)})
    assert val == {F(0): F(1)}


def test_expsum_eval_pole_error():
    variables = ("x1", "x2", "y1")
    s = ExpRatSum.single(
        variables,
        MultiPoly.const(variables, 1),
        den={("x1", "x2"): 1},
        bilinear={("x1", "y1"): F(1)},
    )
    with pytest.raises(PoleError):
        s.eval_exact({"x1": F(1), "x2": F(1), "y1": F(0)})


def test_expsum_identity_is_exact_zero():
    # y*e^{xy} - d/dx e^{xy} == 0 identically
    s = _exy()
    diff = s.poly_mul(MultiPoly.variable(("x1", "y1"), "y1")) - expsum_derive(s, "x1")
    assert expsum_eval(diff, {"x1": F(7), "y1": F(-3)}) == {}
    assert not diff.merged().terms


def test_expsum_float_mode():
    import math

    got = expsum_eval(_exy(), {"x1": F(2), "y1": F(3)}, exp_mode="float")
    assert got == pytest.approx(math.exp(6.0))


# ---------------------------------------------------------------------------
# property tests (ring axioms, commuting derivatives)
# ---------------------------------------------------------------------------

VARS4 = ("x", "y", "z", "w")

coeffs = st.integers(-9, 9).map(F)
exponents = st.tuples(*(st.integers(0, 2) for _ in VARS4))
polys = st.dictionaries(exponents, coeffs, max_size=5).map(lambda d: MultiPoly(VARS4, d))


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys)
@settings(max_examples=40, deadline=None)
def test_mixed_partials_commute_poly(p):
    assert p.derive("x").derive("y") == p.derive("y").derive("x")


@given(polys, polys)
@settings(max_examples=25, deadline=None)
def test_mixed_partials_commute_ratfunc(a, b):
    den = b * b + MultiPoly.const(VARS4, 1)  # never the zero polynomial
    f = RatFunc(a, den)
    assert f.derive("x").derive("y") == f.derive("y").derive("x")


@given(polys)
@settings(max_examples=25, deadline=None)
def test_mixed_partials_commute_expsum(p):
    s = ExpRatSum.single(
        VARS4, p, den={("x", F(3)): 1}, bilinear={("x", "y"): F(2), ("z", "w"): F(1)}
    )
    a = s.derive("x").derive("y")
    b = s.derive("y").derive("x")
    pt = {"x": F(1), "y": F(2), "z": F(-1), "w": F(5)}
    assert (a - b).eval_exact(pt) == {}


@given(polys, polys)
@settings(max_examples=30, deadline=None)
def test_ratfunc_equality_consistent(a, b):
    one = MultiPoly.const(VARS4, 1)
    den1 = b * b + 1
    den2 = (b * b + 1) * (a * a + 1)
    f = RatFunc(a, den1)
    g = RatFunc(a * (a * a + one), den2)
    assert f == g  # same value, different representation
    assert f == f
    if not a.is_zero():
        assert not (f + f) == f or (a + a == a)
