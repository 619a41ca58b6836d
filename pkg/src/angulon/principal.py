"""Principal terms of angular integrals: exact recursion, tau-coordinate
extraction, closed forms, assembly and numeric evaluation.

The principal term for matrix size n is built from size n-1 by multiplying
with the factor  Delta(Y_n)^(2b) * prod_i (x_i - x_n), applying the bare
(d/da_i)^(b-1) for i = 1..n-1 to

    prev(X_{n-1}, a) * exp(sum_i (x_i - x_n)(a_i - y_i))
    / prod_{k=1..n} prod_{i != k} (y_k - a_i)^b

and evaluating at a_i = y_i.  Because the exponential is 1 at that point,
its only surviving role is the extra (x_i - x_n) produced per derivative,
so the whole computation stays inside polynomial arithmetic: the numerator
is a MultiPoly, the denominator a bookkept product of linear factors whose
powers rise uniformly under differentiation.  The final division by the
leftover Vandermonde factors is exact (this is the polynomiality theorem in
executable form; a division remainder would be a hard error).

Normalization: residue extraction uses the bare (b-1)-st derivative, no
1/(b-1)! division.  This is the convention that makes the n=2 term come
out exactly as 2^b Q_{b,0}(tau); the alternative convention differs by the
constant (b-1)!^(n-1) only, which no downstream identity can observe.

tau coordinates: t_{i,j} = -(x_i - x_j)(y_i - y_j)/2.  Extraction works in
translation-reduced coordinates (x_n = y_n = 0, losing nothing since both
sides are translation invariant), splitting the polynomial into bidegree
blocks and solving one exact linear system per block against the expanded
tau-monomial basis.  For n >= 4 the tau functions satisfy algebraic
relations, so the representation is not unique; the solver's output is
symmetrized over the index-relabeling group to produce a canonical,
relabeling-invariant representative, and every cross-comparison between two
tau-forms is done after expansion back to x,y.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .besselpoly import bessel_Q, bessel_even_series
from .exactcore import ExpRatSum, MultiPoly, var_sort_key

MAX_NUMERATOR_TERMS = 4_000_000
MIN_FLOAT_GAP = 1e-6


class ResourceLimitError(RuntimeError):
    """Recursion exceeded the configured term budget; carries progress info."""

    def __init__(self, beta: int, n: int, stage: str, terms: int):
        super().__init__(
            f"principal_term({beta},{n}) exceeded {MAX_NUMERATOR_TERMS} terms "
            f"during {stage} (reached {terms}); partial progress discarded"
        )
        self.beta, self.n, self.stage, self.terms = beta, n, stage, terms


class SpectrumGapError(ValueError):
    pass


class CacheMissError(FileNotFoundError):
    pass


class CacheCorruptError(ValueError):
    pass


class TauExtractionError(ValueError):
    """The polynomial is not a tau-polynomial within the degree bound.

    This would falsify the degree-beta polynomiality theorem, so it is a
    test failure, never silently widened."""


def xvar(i: int) -> str:
    return f"x{i}"


def yvar(i: int) -> str:
    return f"y{i}"


def tvar(i: int, j: int) -> str:
    return f"t{i}_{j}"


def edge_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class PrincipalTerm:
    beta: int
    n: int
    poly: MultiPoly


@dataclass(frozen=True)
class TauPoly:
    beta: int
    n: int
    poly: MultiPoly


@dataclass(frozen=True)
class SpectrumPair:
    x: tuple
    y: tuple
    beta: object = None

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have equal length")

    @property
    def n(self) -> int:
        return len(self.x)

    def check_gaps(self, eps: float = MIN_FLOAT_GAP):
        for vals, label in ((self.x, "x"), (self.y, "y")):
            fv = [float(v) for v in vals]
            for i in range(len(fv)):
                for j in range(i + 1, len(fv)):
                    if abs(fv[i] - fv[j]) < eps:
                        raise SpectrumGapError(
                            f"{label} entries {i + 1},{j + 1} closer than {eps}; "
                            "use exact rational mode or separate the spectrum"
                        )


# ---------------------------------------------------------------------------
# the recursion
# ---------------------------------------------------------------------------

def _pairwise_products(factors: list[MultiPoly]) -> tuple[MultiPoly, MultiPoly]:
    """(product of all factors, sum over k of product of all but factor k)."""
    total = factors[0]
    for f in factors[1:]:
        total = total * f
    partial_sum = None
    for k in range(len(factors)):
        prod = None
        for k2, f in enumerate(factors):
            if k2 == k:
                continue
            prod = f if prod is None else prod * f
        if prod is None:
            prod = MultiPoly.const(total.vars, 1)
        partial_sum = prod if partial_sum is None else partial_sum + prod
    return total, partial_sum


def _recursion_step(prev: MultiPoly, beta: int, m: int) -> MultiPoly:
    """One step n-1 -> n of the residue-free recursion (m = new size)."""
    xs = [xvar(i) for i in range(1, m + 1)]
    ys = [yvar(i) for i in range(1, m + 1)]
    avs = [f"a{i}" for i in range(1, m)]
    allvars = tuple(sorted(xs + ys + avs, key=var_sort_key))

    num = prev.rename({yvar(i): f"a{i}" for i in range(1, m)}).with_vars(allvars)

    for i in range(1, m):
        ai = f"a{i}"
        factors = [
            MultiPoly.variable(allvars, yvar(k)) - MultiPoly.variable(allvars, ai)
            for k in range(1, m + 1)
            if k != i
        ]
        prod_i, sum_i = _pairwise_products(factors)
        xim = MultiPoly.variable(allvars, xvar(i)) - MultiPoly.variable(allvars, xvar(m))
        power = beta
        for _ in range(beta - 1):
            num = num.derive(ai) * prod_i + num * sum_i * power + num * xim * prod_i
            power += 1
            if len(num.terms) > MAX_NUMERATOR_TERMS:
                raise ResourceLimitError(beta, m, f"derivatives in column {i}", len(num.terms))

    num = num.substitute(
        {f"a{i}": MultiPoly.variable((yvar(i),), yvar(i)) for i in range(1, m)}
    )

    target = tuple(sorted(xs + ys, key=var_sort_key))
    num = num.with_vars(target)

    # Delta(Y_m)^(2b) over the evaluated denominator reduces to:
    #   sign * prod_{i<j<=m-1} (y_i-y_j)^-(2b-2) * prod_{i<=m-1} (y_i-y_m)
    for i in range(1, m):
        for j in range(i + 1, m):
            if j == m:
                continue
            fac = MultiPoly.variable(target, yvar(i)) - MultiPoly.variable(target, yvar(j))
            num = num.exact_div(fac ** (2 * beta - 2))
    for i in range(1, m):
        num = num * (MultiPoly.variable(target, xvar(i)) - MultiPoly.variable(target, xvar(m)))
        num = num * (MultiPoly.variable(target, yvar(i)) - MultiPoly.variable(target, yvar(m)))
        if len(num.terms) > MAX_NUMERATOR_TERMS:
            raise ResourceLimitError(beta, m, "front factors", len(num.terms))

    k = m - 1
    sign = (-1) ** (k * (k - 1) // 2 + k)
    return num * Fraction(sign)


def principal_term(beta: int, n: int) -> PrincipalTerm:
    """Exact principal-term polynomial for integer beta >= 1, n >= 1."""
    if beta < 1 or n < 1:
        raise ValueError(f"principal_term needs integer beta >= 1 and n >= 1, got ({beta},{n})")
    variables = tuple(sorted([xvar(1), yvar(1)], key=var_sort_key))
    poly = MultiPoly.const(variables, 1)
    for m in range(2, n + 1):
        poly = _recursion_step(poly, beta, m)
    return PrincipalTerm(beta, n, poly)


# ---------------------------------------------------------------------------
# tau coordinates
# ---------------------------------------------------------------------------

def tau_defs(n: int, variables: tuple[str, ...]) -> dict[str, MultiPoly]:
    """t_{i,j} = -(x_i-x_j)(y_i-y_j)/2 as polynomials over the given vars."""
    out = {}
    for i, j in edge_list(n):
        dx = MultiPoly.variable(variables, xvar(i)) - MultiPoly.variable(variables, xvar(j))
        dy = MultiPoly.variable(variables, yvar(i)) - MultiPoly.variable(variables, yvar(j))
        out[tvar(i, j)] = dx * dy * Fraction(-1, 2)
    return out


def tau_expand(tp: TauPoly) -> MultiPoly:
    """Expand a tau-polynomial into the full x,y variables."""
    variables = tuple(
        sorted([xvar(i) for i in range(1, tp.n + 1)] + [yvar(i) for i in range(1, tp.n + 1)],
               key=var_sort_key)
    )
    return tp.poly.substitute(tau_defs(tp.n, variables)).with_vars(variables)


def _reduced_vars(n: int) -> tuple[str, ...]:
    return tuple(
        sorted([xvar(i) for i in range(1, n)] + [yvar(i) for i in range(1, n)],
               key=var_sort_key)
    )


def _reduce_xy(poly: MultiPoly, n: int) -> MultiPoly:
    """Set x_n = y_n = 0 (valid for translation-invariant polynomials)."""
    return poly.substitute({xvar(n): Fraction(0), yvar(n): Fraction(0)}).with_vars(_reduced_vars(n))


def tau_expand_reduced(tp: TauPoly) -> MultiPoly:
    rv = _reduced_vars(tp.n)
    defs = {}
    for i, j in edge_list(tp.n):
        xi = MultiPoly.variable(rv, xvar(i)) if i < tp.n else MultiPoly.zero(rv)
        xj = MultiPoly.variable(rv, xvar(j)) if j < tp.n else MultiPoly.zero(rv)
        yi = MultiPoly.variable(rv, yvar(i)) if i < tp.n else MultiPoly.zero(rv)
        yj = MultiPoly.variable(rv, yvar(j)) if j < tp.n else MultiPoly.zero(rv)
        defs[tvar(i, j)] = (xi - xj) * (yi - yj) * Fraction(-1, 2)
    return tp.poly.substitute(defs).with_vars(rv)


def _bidegree_split(poly: MultiPoly) -> dict[int, dict[tuple, Fraction]]:
    """Split by x-block total degree; checks deg_x == deg_y per monomial."""
    x_idx = [k for k, v in enumerate(poly.vars) if v.startswith("x")]
    y_idx = [k for k, v in enumerate(poly.vars) if v.startswith("y")]
    blocks: dict[int, dict[tuple, Fraction]] = {}
    for e, c in poly.terms.items():
        dx = sum(e[k] for k in x_idx)
        dy = sum(e[k] for k in y_idx)
        if dx != dy:
            raise TauExtractionError(
                f"monomial {e} has x-degree {dx} != y-degree {dy}; not a tau-polynomial"
            )
        blocks.setdefault(dx, {})[e] = c
    return blocks


class _TauMonomialBank:
    """Memoized reduced-coordinate expansions of tau monomials."""

    def __init__(self, n: int):
        self.n = n
        self.edges = edge_list(n)
        rv = _reduced_vars(n)
        self.rvars = rv
        self.base: list[MultiPoly] = []
        for i, j in self.edges:
            xi = MultiPoly.variable(rv, xvar(i)) if i < n else MultiPoly.zero(rv)
            xj = MultiPoly.variable(rv, xvar(j)) if j < n else MultiPoly.zero(rv)
            yi = MultiPoly.variable(rv, yvar(i)) if i < n else MultiPoly.zero(rv)
            yj = MultiPoly.variable(rv, yvar(j)) if j < n else MultiPoly.zero(rv)
            self.base.append((xi - xj) * (yi - yj) * Fraction(-1, 2))
        self.memo: dict[tuple, MultiPoly] = {(0,) * len(self.edges): MultiPoly.const(rv, 1)}

    def expansion(self, e: tuple) -> MultiPoly:
        got = self.memo.get(e)
        if got is not None:
            return got
        k = next(i for i, v in enumerate(e) if v)
        prev = e[:k] + (e[k] - 1,) + e[k + 1:]
        result = self.expansion(prev) * self.base[k]
        self.memo[e] = result
        return result


def _solve_block(
    monomials: list[tuple], bank: _TauMonomialBank, component: dict[tuple, Fraction]
) -> dict[tuple, Fraction]:
    """Exact sparse Gaussian elimination of sum_e c_e E_e == component."""
    expansions = {e: bank.expansion(e) for e in monomials}
    row_keys = set(component)
    for p in expansions.values():
        row_keys.update(p.terms)
    col_index = {e: k for k, e in enumerate(monomials)}

    # rows[exponent] -> {col: coeff}
    columns_by_row: dict[tuple, dict[int, Fraction]] = {}
    for e, p in expansions.items():
        col = col_index[e]
        for mono, c in p.terms.items():
            columns_by_row.setdefault(mono, {})[col] = c

    pivots: dict[int, tuple[dict[int, Fraction], Fraction]] = {}
    for mono in sorted(row_keys):
        row = dict(columns_by_row.get(mono, {}))
        rhs = component.get(mono, Fraction(0))
        while row:
            lead = min(row)
            if lead not in pivots:
                inv = 1 / row[lead]
                row = {c: v * inv for c, v in row.items()}
                pivots[lead] = (row, rhs * inv)
                break
            prow, prhs = pivots[lead]
            f = row[lead]
            for c, v in prow.items():
                nv = row.get(c, Fraction(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs -= f * prhs
        else:
            if rhs:
                raise TauExtractionError(
                    "inconsistent linear system: not a tau-polynomial within the degree bound"
                )

    solution = {e: Fraction(0) for e in monomials}
    # Back-substitute in decreasing pivot order; free columns stay zero.
    for lead in sorted(pivots, reverse=True):
        row, rhs = pivots[lead]
        val = rhs
        for c, v in row.items():
            if c != lead:
                val -= v * solution[monomials[c]]
        solution[monomials[lead]] = val
    return {e: c for e, c in solution.items() if c}


def _symmetrize_tau(coeffs: dict[tuple, Fraction], n: int) -> dict[tuple, Fraction]:
    edges = edge_list(n)
    edge_index = {e: k for k, e in enumerate(edges)}
    perms = list(permutations(range(1, n + 1)))
    out: dict[tuple, Fraction] = {}
    for perm in perms:
        mapping = [edge_index[tuple(sorted((perm[i - 1], perm[j - 1])))] for i, j in edges]
        for e, c in coeffs.items():
            ne = [0] * len(edges)
            for k, deg in enumerate(e):
                ne[mapping[k]] = deg
            ne = tuple(ne)
            out[ne] = out.get(ne, Fraction(0)) + c
    inv = Fraction(1, len(perms))
    return {e: c * inv for e, c in out.items() if c}


def tau_extract(p: PrincipalTerm, fresh_points: int = 10, seed: int = 20080617) -> TauPoly:
    """Exact tau-coordinates of a principal term (per-variable degree <= beta).

    Solves exact coefficient-matching systems blockwise in reduced
    coordinates, symmetrizes over index relabeling, re-verifies the
    expansion exactly, then spot-checks the full (unreduced) polynomial at
    random rational points."""
    beta, n = p.beta, p.n
    edges = edge_list(n)
    tvars = tuple(tvar(i, j) for i, j in edges)
    if n == 1:
        return TauPoly(beta, n, MultiPoly((), {(): p.poly.terms.get((0, 0), Fraction(0))}))

    reduced = _reduce_xy(p.poly, n)
    blocks = _bidegree_split(reduced)
    bank = _TauMonomialBank(n)

    by_degree: dict[int, list[tuple]] = {}
    for e in product(range(beta + 1), repeat=len(edges)):
        by_degree.setdefault(sum(e), []).append(e)

    coeffs: dict[tuple, Fraction] = {}
    for m, component in sorted(blocks.items()):
        monos = by_degree.get(m)
        if not monos:
            raise TauExtractionError(
                f"bidegree block {m} exceeds the maximal tau-degree {beta * len(edges)}"
            )
        coeffs.update(_solve_block(sorted(monos), bank, component))

    coeffs = _symmetrize_tau(coeffs, n)
    tp = TauPoly(beta, n, MultiPoly(tvars, coeffs))

    # exact re-verification of the symmetrized representative
    total = MultiPoly.zero(bank.rvars)
    for e, c in coeffs.items():
        total = total + bank.expansion(e) * c
    if not (total - reduced).is_zero():
        raise TauExtractionError("symmetrized tau-form fails exact re-expansion")

    # spot checks on the full polynomial at fresh random rational points
    import random

    rng = random.Random(seed)
    variables = p.poly.vars
    for _ in range(fresh_points):
        point = {v: Fraction(rng.randint(-10**6, 10**6)) for v in variables}
        tau_point = {
            tvar(i, j): Fraction(-1, 2)
            * (point[xvar(i)] - point[xvar(j)])
            * (point[yvar(i)] - point[yvar(j)])
            for i, j in edges
        }
        if tp.poly.eval(tau_point) != p.poly.eval(point):
            raise TauExtractionError("tau-form disagrees with the polynomial at a fresh point")
    return tp


def closed_form_n3(beta: int) -> TauPoly:
    """n=3 closed form: sum_{k<beta} (beta-k-1)! / (8^k k! (beta+k-1)!) *
    Q_{beta,k}(t12) Q_{beta,k}(t13) Q_{beta,k}(t23)."""
    if beta < 1:
        raise ValueError("closed_form_n3 needs integer beta >= 1")
    tvars = tuple(tvar(i, j) for i, j in edge_list(3))
    total = MultiPoly.zero(tvars)
    for k in range(beta):
        c = Fraction(
            math.factorial(beta - k - 1),
            8**k * math.factorial(k) * math.factorial(beta + k - 1),
        )
        q = bessel_Q(beta, k).poly
        prod = MultiPoly.const(tvars, c)
        for name in tvars:
            prod = prod * q.rename({"x": name}).with_vars(tvars)
        total = total + prod
    return TauPoly(beta, 3, total)


def proportionality_constant(a: MultiPoly, b: MultiPoly) -> Fraction | None:
    """The single rational c with a == c*b, or None when not proportional."""
    if b.is_zero():
        return Fraction(0) if a.is_zero() else None
    lead = max(b.terms, key=lambda e: (sum(e), e))
    a_aligned, b_aligned = (x.with_vars(b.vars) for x in (a, b)) if a.vars == b.vars else (None, None)
    if a_aligned is None:
        from .exactcore import align

        a_aligned, b_aligned = align(a, b)
        lead = max(b_aligned.terms, key=lambda e: (sum(e), e))
    c = a_aligned.terms.get(lead, Fraction(0)) / b_aligned.terms[lead]
    return c if (a_aligned - b_aligned * c).is_zero() else None


# ---------------------------------------------------------------------------
# assembly and numeric evaluation
# ---------------------------------------------------------------------------

def assemble_I(p: PrincipalTerm) -> ExpRatSum:
    """Permutation sum I = sum_sigma e^{sum x_i y_sigma(i)} Ihat(X, Y_sigma)
    / (Delta(X)^2b Delta(Y_sigma)^2b); n! terms, coinciding arguments are a
    precondition violation at evaluation, not resolved here."""
    n, beta = p.n, p.beta
    variables = tuple(
        sorted([xvar(i) for i in range(1, n + 1)] + [yvar(i) for i in range(1, n + 1)],
               key=var_sort_key)
    )
    den = {}
    for i, j in edge_list(n):
        den[(xvar(i), xvar(j))] = 2 * beta
        den[(yvar(i), yvar(j))] = 2 * beta
    total = ExpRatSum.zero(variables)
    for sigma in permutations(range(1, n + 1)):
        mapping = {yvar(i): yvar(sigma[i - 1]) for i in range(1, n + 1)}
        num = p.poly.rename(mapping).with_vars(variables)
        bil = {(xvar(i), yvar(sigma[i - 1])): Fraction(1) for i in range(1, n + 1)}
        total = total + ExpRatSum.single(variables, num, den=den, bilinear=bil)
    return total


def eval_I_numeric(p: PrincipalTerm, s: SpectrumPair) -> float:
    """Float value of the assembled integral at a pairwise-distinct spectrum."""
    if s.n != p.n:
        raise ValueError(f"spectrum has n={s.n}, principal term has n={p.n}")
    s.check_gaps()
    point = {}
    for i, v in enumerate(s.x, start=1):
        point[xvar(i)] = float(v)
    for i, v in enumerate(s.y, start=1):
        point[yvar(i)] = float(v)
    return assemble_I(p).eval_float(point)


def eval_I_exact(p: PrincipalTerm, s: SpectrumPair) -> dict[Fraction, Fraction]:
    point = {}
    for i, v in enumerate(s.x, start=1):
        point[xvar(i)] = Fraction(v)
    for i, v in enumerate(s.y, start=1):
        point[yvar(i)] = Fraction(v)
    return assemble_I(p).eval_exact(point)


_I2_CONSTANT_CACHE: dict[int, float] = {}


def _i2_raw(beta: float, s: SpectrumPair) -> float:
    x1, x2 = (float(v) for v in s.x)
    y1, y2 = (float(v) for v in s.y)
    tau = -0.5 * (x1 - x2) * (y1 - y2)
    if tau == 0.0:
        raise SpectrumGapError("n=2 Bessel evaluator needs tau != 0")
    series = bessel_even_series(beta - 0.5, tau, 1e-15)
    return math.exp(0.5 * (x1 + x2) * (y1 + y2)) * series


def eval_I2_any_beta(beta: float, s: SpectrumPair) -> float:
    """n=2 evaluator for arbitrary beta > 0 via the even modified-Bessel
    series S(tau) = sum_k (tau/2)^2k / (k! Gamma(beta+1/2+k)).

    For integer beta the normalization is calibrated once against the exact
    recursion value and cached; otherwise the constant Gamma(beta+1/2) makes
    the result the Haar-normalized integral (so Ibar -> 1 as Y -> 0)."""
    if s.n != 2:
        raise ValueError("eval_I2_any_beta is the n=2 evaluator")
    if beta <= 0:
        raise ValueError("beta must be positive")
    raw = _i2_raw(beta, s)
    if float(beta).is_integer():
        b = int(beta)
        c = _I2_CONSTANT_CACHE.get(b)
        if c is None:
            ref = SpectrumPair((Fraction(0), Fraction(1)), (Fraction(0), Fraction(3, 2)))
            c = eval_I_numeric(principal_term(b, 2), ref) / _i2_raw(beta, ref)
            _I2_CONSTANT_CACHE[b] = c
        return c * raw
    return math.gamma(beta + 0.5) * raw


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

def cache_path(beta: int, n: int, directory: str) -> str:
    return os.path.join(directory, f"ihat_b{beta}_n{n}.json")


def cache_store(p: PrincipalTerm, directory: str) -> str:
    """Write canonical JSON atomically (temp file + rename)."""
    os.makedirs(directory, exist_ok=True)
    payload = {
        "version": 1,
        "beta": p.beta,
        "n": p.n,
        "poly": p.poly.to_json_dict(),
    }
    path = cache_path(p.beta, p.n, directory)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, separators=(",", ":"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_load(beta: int, n: int, directory: str) -> PrincipalTerm:
    path = cache_path(beta, n, directory)
    if not os.path.exists(path):
        raise CacheMissError(f"no cached principal term at {path}")
    with open(path) as fh:
        text = fh.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheCorruptError(
            f"corrupt cache file {path}: {exc.msg} at byte offset {exc.pos}"
        ) from exc
    if payload.get("version") != 1:
        raise CacheCorruptError(f"unsupported cache version {payload.get('version')!r} in {path}")
    if payload.get("beta") != beta or payload.get("n") != n:
        raise CacheCorruptError(
            f"cache file {path} holds (beta={payload.get('beta')}, n={payload.get('n')}), "
            f"expected ({beta},{n})"
        )
    return PrincipalTerm(beta, n, MultiPoly.from_json_dict(payload["poly"]))


def load_or_compute(beta: int, n: int, directory: str | None) -> PrincipalTerm:
    if directory:
        try:
            return cache_load(beta, n, directory)
        except CacheMissError:
            pass
    p = principal_term(beta, n)
    if directory:
        cache_store(p, directory)
    return p
