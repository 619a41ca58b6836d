"""Bessel-polynomial families Y_m and Q_{beta,j}, their recurrences, and the
numeric modified-Bessel series used by the arbitrary-beta n=2 evaluator.

Coefficient conventions
-----------------------
Main-text convention (the one every other module consumes):

    Y_m(x)      = sum_k  (m+k)! / (k! (m-k)!)            (x/2)^k,  0 <= k <= m
    Q_{b,j}(x)  = sum_k  (b+j+k-1)! / (k! (b-j-k-1)!)    2^-k x^(b-j-k)

All coefficients are positive integers; Q_{b,b} degenerates to the zero
polynomial (every term is killed by the Gamma pole), which is exactly what
the three-term recurrence needs at j = b-1.

An alternative convention (used in the zoology appendix of the source
material) carries (-1)^l factors; it equals (-1)^b * Q_main(-x) and is
exposed here as ``alt_Q`` so the alternative-convention recurrences can be
checked after translation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactcore import MultiPoly

X = ("x",)


@dataclass(frozen=True)
class BesselPoly:
    kind: str  # "Y" or "Q"
    m_or_beta: int
    j: int | None
    poly: MultiPoly

    def __call__(self, value: Fraction) -> Fraction:
        return self.poly.eval({"x": Fraction(value)})


def _poly_from_coeffs(coeffs: dict[int, Fraction]) -> MultiPoly:
    return MultiPoly(X, {(k,): c for k, c in coeffs.items()})


def bessel_Y(m: int) -> BesselPoly:
    """Degree-m Bessel polynomial Y_m."""
    if m < 0:
        raise ValueError(f"Y_m needs m >= 0, got {m}")
    coeffs = {}
    for k in range(m + 1):
        coeffs[k] = Fraction(
            math.factorial(m + k), math.factorial(k) * math.factorial(m - k) * 2**k
        )
    return BesselPoly("Y", m, None, _poly_from_coeffs(coeffs))


def bessel_Q(beta: int, j: int) -> BesselPoly:
    """Q_{beta,j}, a polynomial of degree beta-j (zero polynomial at j=beta)."""
    if beta < 1:
        raise ValueError(f"Q_{{beta,j}} needs integer beta >= 1, got {beta}")
    if not 0 <= j <= beta:
        raise ValueError(f"Q_{{beta,j}} needs 0 <= j <= beta, got j={j}, beta={beta}")
    coeffs = {}
    for k in range(beta - j):  # Gamma(beta-j-k) pole kills k >= beta-j
        coeffs[beta - j - k] = Fraction(
            math.factorial(beta + j + k - 1),
            math.factorial(k) * math.factorial(beta - j - k - 1) * 2**k,
        )
    return BesselPoly("Q", beta, j, _poly_from_coeffs(coeffs))


# ---------------------------------------------------------------------------
# recurrence checks (exact polynomial identities)
# ---------------------------------------------------------------------------

def _x() -> MultiPoly:
    return MultiPoly.variable(X, "x")


def q_ladder_check(beta: int, j: int) -> bool:
    """Ladder Q_{b,j+1} = 2(b-j - x d/dx) Q_{b,j} for 0 <= j <= b-1, plus the
    three-term relation -x Q_{b,j} = 1/4 Q_{b,j+1} + j Q_{b,j}
    + (j-b)(j+b-1) Q_{b,j-1} when 1 <= j <= b-1."""
    if not 0 <= j <= beta - 1:
        raise ValueError(f"ladder needs 0 <= j <= beta-1, got j={j}")
    x = _x()
    q = bessel_Q(beta, j).poly
    q_up = bessel_Q(beta, j + 1).poly
    ladder = q_up == (q * 2 * (beta - j) - x * q.derive("x") * 2)
    if j == 0:
        return ladder
    q_dn = bessel_Q(beta, j - 1).poly
    three = (-x * q) == (
        q_up * Fraction(1, 4) + q * j + q_dn * ((j - beta) * (j + beta - 1))
    )
    return ladder and three


def carlitz_ode_check(beta: int) -> bool:
    """x^2 Q'' - 2x(beta+x) Q' + 2 beta (x+1) Q = 0 for Q = Q_{beta,0}."""
    x = _x()
    q = bessel_Q(beta, 0).poly
    qp = q.derive("x")
    qpp = qp.derive("x")
    residual = x * x * qpp - x * (x + beta) * qp * 2 + (x + 1) * q * (2 * beta)
    return residual.is_zero()


def y_ode_check(m: int) -> bool:
    """x^2 Y'' + (2x+2) Y' - m(m+1) Y = 0."""
    x = _x()
    y = bessel_Y(m).poly
    yp = y.derive("x")
    residual = x * x * yp.derive("x") + (x * 2 + 2) * yp - y * (m * (m + 1))
    return residual.is_zero()


def q_from_y_check(beta: int) -> bool:
    """Q_{beta,0}(x) = x^beta Y_{beta-1}(1/x) as exact polynomials."""
    y = bessel_Y(beta - 1).poly
    flipped = {}
    for (k,), c in y.terms.items():
        flipped[(beta - k,)] = c
    return bessel_Q(beta, 0).poly == MultiPoly(X, flipped)


def q_derivative_of_y_check(beta: int, j: int) -> bool:
    """x^(beta-j) Q_{beta,j}(1/x) = 2^j Y^{(j)}_{beta-1}(x) (denominators cleared)."""
    q = bessel_Q(beta, j).poly
    lhs = {}
    for (k,), c in q.terms.items():  # x^(b-j) * (1/x)^k = x^(b-j-k)
        lhs[(beta - j - k,)] = c
    yd = bessel_Y(beta - 1).poly
    for _ in range(j):
        yd = yd.derive("x")
    return MultiPoly(X, lhs) == yd * 2**j


# ---------------------------------------------------------------------------
# alternative (appendix) convention
# ---------------------------------------------------------------------------

def alt_Q(beta: int, k: int) -> MultiPoly:
    """Alternative-convention polynomial sum_l (-1)^(l+k) G(b+l+k)/G(b-l-k) 2^-l/l! x^(b-l-k)."""
    if beta < 1 or k < 0:
        raise ValueError("alt_Q needs beta >= 1 and k >= 0")
    coeffs = {}
    for l in range(max(beta - k, 0)):
        coeffs[beta - k - l] = Fraction(
            (-1) ** (l + k) * math.factorial(beta + l + k - 1),
            math.factorial(l) * math.factorial(beta - l - k - 1) * 2**l,
        )
    return _poly_from_coeffs(coeffs)


def alt_convention_translation_check(beta: int, k: int) -> bool:
    """alt_Q(b,k)(x) == (-1)^b * Q_{b,k}(-x): the two conventions agree after
    composing with x -> -x up to a global sign."""
    main = bessel_Q(beta, k).poly
    minus_x = {}
    for (e,), c in main.terms.items():
        minus_x[(e,)] = c * (-1) ** e
    return alt_Q(beta, k) == MultiPoly(X, minus_x) * (-1) ** beta


def alt_ode_check(beta: int) -> bool:
    """Alt-convention ODE: x^2 Q'' - 2x(b-x) Q' + 2b(1-x) Q = 0."""
    x = _x()
    q = alt_Q(beta, 0)
    qp = q.derive("x")
    residual = x * x * qp.derive("x") - x * (x * (-1) + beta) * qp * 2 + (x * (-1) + 1) * q * (2 * beta)
    return residual.is_zero()


def alt_ladder_check(beta: int, k: int) -> bool:
    """Alt-convention ladder: Q_{b,k} = 2(b-k+1) Q_{b,k-1} - 2x Q'_{b,k-1}."""
    if not 1 <= k <= beta:
        raise ValueError("alt ladder needs 1 <= k <= beta")
    x = _x()
    prev = alt_Q(beta, k - 1)
    return alt_Q(beta, k) == prev * (2 * (beta - k + 1)) - x * prev.derive("x") * 2


def alt_three_term_check(beta: int, k: int) -> bool:
    """Alt-convention three-term: Q_{b,k+2} + 4(k+1-x) Q_{b,k+1}
    - 4[b(b-1) - k(k+1)] Q_{b,k} = 0."""
    x = _x()
    residual = (
        alt_Q(beta, k + 2)
        + (x * (-1) + (k + 1)) * alt_Q(beta, k + 1) * 4
        - alt_Q(beta, k) * (4 * (beta * (beta - 1) - k * (k + 1)))
    )
    return residual.is_zero()


def alt_operator_definition_check(beta: int, k: int) -> bool:
    """Alt Q_{b,k} = (-2)^k x^(b-k) (x^2 d/dx)^k [Q_{b,0}(x) / x^b].

    The bracket is a Laurent polynomial; computed with an integer-degree
    coefficient map."""
    base = alt_Q(beta, 0)
    laurent: dict[int, Fraction] = {e - beta: c for (e,), c in base.terms.items()}
    for _ in range(k):
        # x^2 d/dx on Laurent coefficients: c x^e -> c*e x^(e+1)
        laurent = {e + 1: c * e for e, c in laurent.items() if c * e}
    shifted = {}
    for e, c in laurent.items():
        deg = e + beta - k
        if deg < 0:
            return False
        shifted[(deg,)] = c * Fraction((-2) ** k)
    return MultiPoly(X, shifted) == alt_Q(beta, k)


def q_vanishes_at_and_beyond_beta(beta: int, k: int) -> bool:
    """Q_{b,k} = 0 once k >= b (integer b): truncation by the Gamma pole."""
    return alt_Q(beta, k).is_zero() if k >= beta else not alt_Q(beta, k).is_zero()


# ---------------------------------------------------------------------------
# numeric modified Bessel series
# ---------------------------------------------------------------------------

MAX_SERIES_TERMS = 10**4


class SeriesDivergenceError(ArithmeticError):
    pass


def bessel_even_series(nu: float, tau: float, tol: float) -> float:
    """S(tau) = sum_k (tau/2)^(2k) / (k! Gamma(nu+k+1)), so that
    I_nu(tau) = (tau/2)^nu * S(tau).  Even in tau, entire in tau."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = (tau / 2.0) ** 2
    term = 1.0 / math.gamma(nu + 1.0)
    total = term
    for k in range(1, MAX_SERIES_TERMS + 1):
        term *= z / (k * (nu + k))
        total += term
        if abs(term) < tol * abs(total):
            return total
    raise SeriesDivergenceError(
        f"modified-Bessel series did not converge within {MAX_SERIES_TERMS} terms"
    )


def mod_bessel_I(nu: float, tau: float, tol: float = 1e-14) -> float:
    """Standard modified Bessel function of the first kind I_nu(tau), tau >= 0."""
    if tau < 0:
        raise ValueError("mod_bessel_I requires tau >= 0 (use bessel_even_series)")
    if tau == 0.0:
        return 1.0 if nu == 0 else 0.0
    return (tau / 2.0) ** nu * bessel_even_series(nu, tau, tol)
