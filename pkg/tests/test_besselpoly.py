"""Golden tables and recurrence suites for the Bessel-polynomial families."""

import math
from fractions import Fraction

import pytest

from angulon.besselpoly import (
    BesselPoly,
    SeriesDivergenceError,
    alt_convention_translation_check,
    alt_ladder_check,
    alt_ode_check,
    alt_operator_definition_check,
    alt_three_term_check,
    bessel_Q,
    bessel_Y,
    bessel_even_series,
    carlitz_ode_check,
    mod_bessel_I,
    q_derivative_of_y_check,
    q_from_y_check,
    q_ladder_check,
    q_vanishes_at_and_beyond_beta,
    y_ode_check,
)
from angulon.exactcore import MultiPoly

F = Fraction


def upoly(coeffs: dict[int, int]) -> MultiPoly:
    return MultiPoly(("x",), {(k,): F(c) for k, c in coeffs.items()})


# golden tables ---------------------------------------------------------------

Y_TABLE = {
    0: {0: 1},
    1: {1: 1, 0: 1},
    2: {2: 3, 1: 3, 0: 1},
    3: {3: 15, 2: 15, 1: 6, 0: 1},
}

Q_TABLE = {
    (1, 0): {1: 1},
    (2, 0): {2: 1, 1: 1},
    (3, 0): {3: 1, 2: 3, 1: 3},
    (4, 0): {4: 1, 3: 6, 2: 15, 1: 15},
    (2, 1): {1: 2},
    (3, 1): {2: 6, 1: 12},
    (4, 1): {3: 12, 2: 60, 1: 90},
    (3, 2): {1: 24},
    (4, 2): {2: 120, 1: 360},
    (4, 3): {1: 720},
}


@pytest.mark.parametrize("m", sorted(Y_TABLE))
def test_Y_golden(m):
    assert bessel_Y(m).poly == upoly(Y_TABLE[m])


@pytest.mark.parametrize("beta,j", sorted(Q_TABLE))
def test_Q_golden(beta, j):
    assert bessel_Q(beta, j).poly == upoly(Q_TABLE[(beta, j)])


def test_Y_degree_invariant():
    for m in range(7):
        bp = bessel_Y(m)
        assert isinstance(bp, BesselPoly)
        assert bp.poly.degree_in("x") == m


def test_Q_degree_and_constant_term():
    for beta in range(1, 7):
        for j in range(beta):
            p = bessel_Q(beta, j).poly
            assert p.degree_in("x") == beta - j
            assert p.terms.get((0,)) is None  # no constant term below j=beta
        assert bessel_Q(beta, beta).poly.is_zero()


def test_domain_errors():
    with pytest.raises(ValueError):
        bessel_Y(-1)
    with pytest.raises(ValueError):
        bessel_Q(3, 4)
    with pytest.raises(ValueError):
        bessel_Q(3, -1)


# recurrences -----------------------------------------------------------------

def test_ladder_example_beta3():
    # 2(3 - x d/dx)(x^3+3x^2+3x) = 6x^2 + 12x
    assert q_ladder_check(3, 0)


def test_three_term_example_beta3():
    assert q_ladder_check(3, 1)


def test_ladder_beta2_gives_2x():
    assert q_ladder_check(2, 0)
    assert bessel_Q(2, 1).poly == upoly({1: 2})


@pytest.mark.parametrize("beta", range(1, 7))
def test_ladder_all(beta):
    for j in range(beta):
        assert q_ladder_check(beta, j)


@pytest.mark.parametrize("beta", range(1, 7))
def test_carlitz_ode(beta):
    assert carlitz_ode_check(beta)


def test_carlitz_beta1_by_hand():
    # Q = x: x^2*0 - 2x(1+x)*1 + 2(x+1)*x = 0
    assert carlitz_ode_check(1)


@pytest.mark.parametrize("m", range(7))
def test_y_ode(m):
    assert y_ode_check(m)


@pytest.mark.parametrize("beta", range(1, 7))
def test_q_is_reversed_y(beta):
    assert q_from_y_check(beta)


@pytest.mark.parametrize("beta", range(1, 6))
def test_q_is_derivative_of_y(beta):
    for j in range(beta + 1):
        assert q_derivative_of_y_check(beta, j)


# alternative-convention relations, checked after translation ------------------

@pytest.mark.parametrize("beta", range(1, 7))
def test_alt_translation(beta):
    for k in range(beta):
        assert alt_convention_translation_check(beta, k)


@pytest.mark.parametrize("beta", range(1, 7))
def test_alt_ode(beta):
    assert alt_ode_check(beta)


@pytest.mark.parametrize("beta", range(1, 7))
def test_alt_ladder(beta):
    for k in range(1, beta + 1):
        assert alt_ladder_check(beta, k)


@pytest.mark.parametrize("beta", range(2, 7))
def test_alt_three_term(beta):
    for k in range(beta - 1):
        assert alt_three_term_check(beta, k)


@pytest.mark.parametrize("beta", range(1, 6))
def test_alt_operator_definition(beta):
    for k in range(beta):
        assert alt_operator_definition_check(beta, k)


def test_q_truncation():
    for beta in range(1, 6):
        for k in range(beta + 3):
            assert q_vanishes_at_and_beyond_beta(beta, k)


# numeric series ---------------------------------------------------------------

def test_half_order_matches_sinh():
    # I_{1/2}(t) = sqrt(2/(pi t)) sinh t
    t = 1.0
    expected = math.sqrt(2.0 / (math.pi * t)) * math.sinh(t)
    assert abs(mod_bessel_I(0.5, t) - expected) < 1e-10
    assert abs(mod_bessel_I(0.5, t) - 0.9376748882454960) < 1e-10


def test_bessel_at_zero():
    assert mod_bessel_I(1.0, 0.0) == 0.0
    assert mod_bessel_I(0.0, 0.0) == 1.0


def test_even_series_is_even():
    assert bessel_even_series(1.5, 2.0, 1e-14) == bessel_even_series(1.5, -2.0, 1e-14)


def test_series_tolerance_validation():
    with pytest.raises(ValueError):
        bessel_even_series(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        mod_bessel_I(0.5, -1.0)


def test_series_nonconvergence_guard():
    with pytest.raises(SeriesDivergenceError):
        bessel_even_series(0.5, 1e6, 1e-300)
