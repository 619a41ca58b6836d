"""Exact arithmetic substrate: rationals, sparse multivariate polynomials,
rational functions, and sums of (rational function) * exp(bilinear form).

Representation conventions
--------------------------
* Rational scalars are ``fractions.Fraction`` (always reduced, positive
  denominator, zero is 0/1).
* ``MultiPoly`` maps exponent tuples to nonzero Fractions over an ordered
  variable tuple.  The canonical term order used for serialization and
  leading-term division is descending graded lexicographic: higher total
  degree first, ties broken by lexicographically larger exponent vector.
* ``RatFunc`` is an unreduced quotient num/den of MultiPolys.  No
  multivariate gcd is ever computed; equality goes through
  cross-multiplication.
* ``ExpRatSum`` stores each term as a polynomial numerator over a product
  of linear factors (v - w), v a variable and w a variable or rational,
  times exp(L) with L a polynomial exponent argument (bilinear in
  practice).  Keeping denominators factored means differentiation never
  squares a denominator.

All values are immutable after construction; every operation returns a new
object, so sharing across worker threads is safe.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Exponent = tuple[int, ...]

_NAT_SPLIT = re.compile(r"(\d+)")


def var_sort_key(name: str):
    """Natural sort key so x2 < x10 and x* < y* in the usual way."""
    return tuple(int(p) if p.isdigit() else p for p in _NAT_SPLIT.split(name))


def rat_normalize(n: int, d: int) -> Fraction:
    """Canonical reduced rational n/d with positive denominator.

    Raises ZeroDivisionError when d == 0.
    """
    return Fraction(n, d)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class PoleError(ZeroDivisionError):
    """Evaluation hit a vanishing denominator; carries the offending factor."""

    def __init__(self, factor: str):
        super().__init__(f"denominator {factor} vanishes at evaluation point")
        self.factor = factor


class MultiPoly:
    """Sparse multivariate polynomial over Fraction in named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Fraction] | None = None):
        self.vars = tuple(variables)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            nv = len(self.vars)
            for e, c in terms.items():
                if len(e) != nv:
                    raise ValueError(f"exponent {e} has wrong length for vars {self.vars}")
                c = _as_fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def const(cls, variables: Sequence[str], value) -> "MultiPoly":
        value = _as_fraction(value)
        if not value:
            return cls(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): Fraction(1)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        a, b = align(self, other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in self._ordered_exponents():
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(bits)

    def _ordered_exponents(self) -> list[Exponent]:
        # Descending graded lex: sort key (total degree, exponent vector), reversed.
        return sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, other)
        a, b = align(self, other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(a.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if not other:
                return MultiPoly(self.vars)
            return MultiPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        a, b = align(self, other)
        out: dict[Exponent, Fraction] = {}
        small, large = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
        for e1, c1 in small.items():
            for e2, c2 in large.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = out.get(e)
                if s is None:
                    out[e] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return MultiPoly(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus and evaluation --------------------------------------------

    def derive(self, name: str) -> "MultiPoly":
        if name not in self.vars:
            raise KeyError(f"unknown variable {name!r}; declared: {self.vars}")
        i = self.vars.index(name)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = out.get(ne, Fraction(0)) + c * k
        return MultiPoly(self.vars, {e: c for e, c in out.items() if c})

    def eval(self, point: Mapping[str, Fraction]) -> Fraction:
        """Full exact evaluation; every variable must be assigned."""
        vals = [_as_fraction(point[v]) for v in self.vars]
        pw: list[dict[int, Fraction]] = [{0: Fraction(1)} for _ in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = c
            for i, k in enumerate(e):
                if k:
                    cache = pw[i]
                    p = cache.get(k)
                    if p is None:
                        p = vals[i] ** k
                        cache[k] = p
                    prod *= p
            total += prod
        return total

    def eval_float(self, point: Mapping[str, float]) -> complex:
        vals = [point[v] for v in self.vars]
        total = 0.0
        for e, c in self.terms.items():
            prod = float(c)
            for i, k in enumerate(e):
                if k:
                    prod *= vals[i] ** k
            total += prod
        return total

    def substitute(self, assignments: Mapping[str, Union["MultiPoly", Fraction, int]]) -> "MultiPoly":
        """Replace variables by polynomials or rationals (full composition)."""
        keep = [v for v in self.vars if v not in assignments]
        target_vars = set(keep)
        for val in assignments.values():
            if isinstance(val, MultiPoly):
                target_vars.update(val.vars)
        tvars = tuple(sorted(target_vars, key=var_sort_key))
        subs_polys: dict[str, MultiPoly] = {}
        subs_consts: dict[str, Fraction] = {}
        for v, val in assignments.items():
            if isinstance(val, MultiPoly):
                subs_polys[v] = MultiPoly(tvars, _reindex(val, tvars))
            else:
                subs_consts[v] = _as_fraction(val)
        result = MultiPoly.zero(tvars)
        pw_cache: dict[tuple[str, int], MultiPoly] = {}
        for e, c in self.terms.items():
            coeff = c
            mono_exp = [0] * len(tvars)
            poly_factor = None
            skip = False
            for v, k in zip(self.vars, e):
                if not k:
                    continue
                if v in subs_consts:
                    val = subs_consts[v]
                    if not val:
                        skip = True
                        break
                    coeff *= val ** k
                elif v in subs_polys:
                    key = (v, k)
                    p = pw_cache.get(key)
                    if p is None:
                        p = subs_polys[v] ** k
                        pw_cache[key] = p
                    poly_factor = p if poly_factor is None else poly_factor * p
                else:
                    mono_exp[tvars.index(v)] = k
            if skip:
                continue
            piece = MultiPoly(tvars, {tuple(mono_exp): coeff})
            if poly_factor is not None:
                piece = piece * poly_factor
            result = result + piece
        return result

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError("rename would collide variables")
        order = tuple(sorted(new_vars, key=var_sort_key))
        perm = [new_vars.index(v) for v in order]
        return MultiPoly(order, {tuple(e[p] for p in perm): c for e, c in self.terms.items()})

    def with_vars(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-embed into a (super)set of variables."""
        return MultiPoly(tuple(variables), _reindex(self, tuple(variables)))

    # -- exact division -----------------------------------------------------

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact multivariate division; raises ValueError when not exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        a, d = align(self, divisor)
        lead = max(d.terms, key=lambda e: (sum(e), e))
        lead_c = d.terms[lead]
        rem = dict(a.terms)
        out: dict[Exponent, Fraction] = {}
        d_items = list(d.terms.items())
        while rem:
            e = max(rem, key=lambda t: (sum(t), t))
            c = rem[e]
            q = tuple(i - j for i, j in zip(e, lead))
            if any(k < 0 for k in q):
                raise ValueError("polynomial division is not exact")
            qc = c / lead_c
            out[q] = qc
            for de, dc in d_items:
                ne = tuple(i + j for i, j in zip(q, de))
                s = rem.get(ne, Fraction(0)) - qc * dc
                if s:
                    rem[ne] = s
                else:
                    rem.pop(ne, None)
        return MultiPoly(a.vars, out)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "version": 1,
            "vars": list(self.vars),
            "terms": [
                {
                    "e": list(e),
                    "n": str(self.terms[e].numerator),
                    "d": str(self.terms[e].denominator),
                }
                for e in self._ordered_exponents()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultiPoly":
        if data.get("version") != 1:
            raise ValueError(f"unsupported MultiPoly serialization version {data.get('version')!r}")
        variables = tuple(data["vars"])
        terms = {
            tuple(t["e"]): Fraction(int(t["n"]), int(t["d"]))
            for t in data["terms"]
        }
        return cls(variables, terms)

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_dict(json.loads(text))


def _reindex(p: MultiPoly, tvars: tuple[str, ...]) -> dict[Exponent, Fraction]:
    missing = [v for v in p.vars if v not in tvars]
    if missing:
        raise ValueError(f"target variables {tvars} lack {missing}")
    idx = [tvars.index(v) for v in p.vars]
    out: dict[Exponent, Fraction] = {}
    n = len(tvars)
    for e, c in p.terms.items():
        ne = [0] * n
        for pos, k in zip(idx, e):
            ne[pos] = k
        out[tuple(ne)] = c
    return out


def align(a: MultiPoly, b: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Bring two polynomials onto a common (sorted) variable tuple."""
    if a.vars == b.vars:
        return a, b
    union = tuple(sorted(set(a.vars) | set(b.vars), key=var_sort_key))
    return a.with_vars(union), b.with_vars(union)


def poly_derive(p: MultiPoly, v: str) -> MultiPoly:
    """Exact partial derivative; errors on undeclared variables."""
    return p.derive(v)


class RatFunc:
    """Unreduced quotient of two MultiPolys (den nonzero).

    Equality is by cross-multiplication, consistent with arithmetic; no
    gcd reduction ever happens.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.const(num.vars, 1)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc denominator is the zero polynomial")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls(p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RatFunc is unhashable (equality is by cross-multiplication)")

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(MultiPoly.const(self.num.vars, other))
        raise TypeError(f"cannot combine RatFunc with {type(other).__name__}")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def derive(self, v: str) -> "RatFunc":
        """Quotient rule: (num' den - num den') / den^2."""
        num = self.num.derive(v) * self.den - self.num * self.den.derive(v)
        return RatFunc(num, self.den * self.den)

    def eval(self, point: Mapping[str, Fraction]) -> Fraction:
        d = self.den.eval(point)
        if d == 0:
            raise PoleError(repr(self.den))
        return self.num.eval(point) / d


def ratfunc_derive(f: RatFunc, v: str) -> RatFunc:
    return f.derive(v)


# ---------------------------------------------------------------------------
# ExpRatSum
# ---------------------------------------------------------------------------

# A linear factor is (v, w): the polynomial v - w, with v a variable name and
# w either a variable name or a Fraction constant.
LinFactor = tuple[str, Union[str, Fraction]]


def _factor_poly(fac: LinFactor, variables: Sequence[str]) -> MultiPoly:
    v, w = fac
    p = MultiPoly.variable(variables, v)
    if isinstance(w, str):
        return p - MultiPoly.variable(variables, w)
    return p - MultiPoly.const(variables, w)


class ExpTerm:
    """One term: num / prod (v-w)^power * exp(L)."""

    __slots__ = ("num", "den", "exparg")

    def __init__(self, num: MultiPoly, den: Mapping[LinFactor, int], exparg: MultiPoly):
        self.num = num
        self.den = {f: p for f, p in den.items() if p}
        self.exparg = exparg

    def exp_key(self):
        return (self.exparg.vars, tuple(sorted(self.exparg.terms.items())))

    def den_key(self):
        return tuple(sorted(self.den.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))))


class ExpRatSum:
    """Finite sum of terms coeff * exp(L), coeff a rational function.

    The public constructor takes bilinear exponent data {(xi, yj): c}; the
    internal representation allows any polynomial exponent argument so that
    partially substituted objects remain closed under differentiation.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Iterable[ExpTerm] = ()):
        self.vars = tuple(variables)
        self.terms = list(terms)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "ExpRatSum":
        return cls(variables)

    @classmethod
    def single(
        cls,
        variables: Sequence[str],
        num: MultiPoly,
        den: Mapping[LinFactor, int] | None = None,
        bilinear: Mapping[tuple[str, str], Fraction] | None = None,
    ) -> "ExpRatSum":
        variables = tuple(variables)
        exparg = MultiPoly.zero(variables)
        if bilinear:
            terms = {}
            for (u, v), c in bilinear.items():
                e = [0] * len(variables)
                e[variables.index(u)] += 1
                e[variables.index(v)] += 1
                key = tuple(e)
                terms[key] = terms.get(key, Fraction(0)) + _as_fraction(c)
            exparg = MultiPoly(variables, terms)
        return cls(variables, [ExpTerm(num.with_vars(variables), dict(den or {}), exparg)])

    # -- ring-ish operations -------------------------------------------------

    def __add__(self, other: "ExpRatSum") -> "ExpRatSum":
        if self.vars != other.vars:
            raise ValueError("ExpRatSum variable sets differ")
        return ExpRatSum(self.vars, list(self.terms) + list(other.terms)).merged()

    def __sub__(self, other: "ExpRatSum") -> "ExpRatSum":
        return self + other.scaled(Fraction(-1))

    def scaled(self, c) -> "ExpRatSum":
        c = _as_fraction(c)
        return ExpRatSum(self.vars, [ExpTerm(t.num * c, t.den, t.exparg) for t in self.terms])

    def poly_mul(self, p: MultiPoly) -> "ExpRatSum":
        p = p.with_vars(self.vars)
        return ExpRatSum(self.vars, [ExpTerm(t.num * p, t.den, t.exparg) for t in self.terms])

    def div_linfactor(self, v: str, w: Union[str, Fraction], power: int = 1) -> "ExpRatSum":
        """Multiply by 1/(v - w)^power, normalizing the factor key order."""
        fac, sign = _normalize_factor(v, w)
        out = []
        for t in self.terms:
            den = dict(t.den)
            den[fac] = den.get(fac, 0) + power
            num = t.num if sign == 1 or power % 2 == 0 else -t.num
            out.append(ExpTerm(num, den, t.exparg))
        return ExpRatSum(self.vars, out)

    def merged(self) -> "ExpRatSum":
        """Merge terms sharing the same exponential argument (common den by lcm)."""
        groups: dict = {}
        for t in self.terms:
            groups.setdefault(t.exp_key(), []).append(t)
        out = []
        for _, ts in groups.items():
            if len(ts) == 1:
                t = ts[0]
                if not t.num.is_zero():
                    out.append(t)
                continue
            common: dict[LinFactor, int] = {}
            for t in ts:
                for f, p in t.den.items():
                    common[f] = max(common.get(f, 0), p)
            total = MultiPoly.zero(self.vars)
            for t in ts:
                scale = MultiPoly.const(self.vars, 1)
                for f, p in common.items():
                    extra = p - t.den.get(f, 0)
                    if extra:
                        scale = scale * _factor_poly(f, self.vars) ** extra
                total = total + t.num * scale
            if not total.is_zero():
                out.append(ExpTerm(total, common, ts[0].exparg))
        return ExpRatSum(self.vars, out)

    # -- calculus ------------------------------------------------------------

    def derive(self, v: str) -> "ExpRatSum":
        """Term-wise product rule; exp(L) differentiates into (dL/dv) exp(L)."""
        if v not in self.vars:
            raise KeyError(f"unknown variable {v!r}")
        out = []
        for t in self.terms:
            dnum = t.num.derive(v)
            if not dnum.is_zero():
                out.append(ExpTerm(dnum, t.den, t.exparg))
            # d/dv of (f)^-p contributes +p * (df/dv == ±1) / f^(p+1)
            for f, p in t.den.items():
                fv, fw = f
                s = 0
                if fv == v:
                    s = -1  # d(v-w)/dv = 1, derivative of f^-p is -p f^-(p+1)
                elif fw == v:
                    s = 1
                if s:
                    den = dict(t.den)
                    den[f] = p + 1
                    out.append(ExpTerm(t.num * Fraction(s * p), den, t.exparg))
            dl = t.exparg.derive(v)
            if not dl.is_zero():
                out.append(ExpTerm(t.num * dl, t.den, t.exparg))
        return ExpRatSum(self.vars, out).merged()

    # -- substitution ----------------------------------------------------------

    def substitute(self, assignments: Mapping[str, Fraction]) -> "ExpRatSum":
        """Substitute rational values for a subset of the variables."""
        assignments = {v: _as_fraction(c) for v, c in assignments.items()}
        keep = tuple(v for v in self.vars if v not in assignments)
        out = []
        for t in self.terms:
            num = t.num.substitute(assignments).with_vars(keep)
            exparg = t.exparg.substitute(assignments).with_vars(keep)
            den: dict[LinFactor, int] = {}
            scale = Fraction(1)
            sign = 1
            for (fv, fw), p in t.den.items():
                val_v = assignments.get(fv)
                val_w = assignments.get(fw) if isinstance(fw, str) else fw
                if val_v is not None and not isinstance(fw, str):
                    c = val_v - fw
                    if c == 0:
                        raise PoleError(f"({fv} - {fw})")
                    scale *= c ** p
                elif val_v is not None and val_w is not None:
                    c = val_v - val_w
                    if c == 0:
                        raise PoleError(f"({fv} - {fw})")
                    scale *= c ** p
                elif val_v is not None:
                    # (c - w) = -(w - c)
                    fac, s = _normalize_factor(fw, val_v)
                    den[fac] = den.get(fac, 0) + p
                    if p % 2:
                        sign *= -1
                elif val_w is not None:
                    fac, s = _normalize_factor(fv, val_w)
                    den[fac] = den.get(fac, 0) + p
                else:
                    den[(fv, fw)] = den.get((fv, fw), 0) + p
            num = num * Fraction(sign) * (Fraction(1) / scale)
            out.append(ExpTerm(num, den, exparg))
        return ExpRatSum(keep, out).merged()

    # -- evaluation ------------------------------------------------------------

    def eval_exact(self, point: Mapping[str, Fraction]) -> dict[Fraction, Fraction]:
        """Exact-symbol evaluation: map exponent q -> coefficient of e^q.

        Distinct rational q give linearly independent e^q, so the sum is
        exactly zero iff the returned dict is empty.
        """
        point = {v: _as_fraction(c) for v, c in point.items()}
        groups: dict[Fraction, Fraction] = {}
        for t in self.terms:
            d = Fraction(1)
            for (fv, fw), p in t.den.items():
                base = point[fv] - (point[fw] if isinstance(fw, str) else fw)
                if base == 0:
                    raise PoleError(f"({fv} - {fw})")
                d *= base ** p
            c = t.num.eval(point) / d
            if not c:
                continue
            q = t.exparg.eval(point)
            s = groups.get(q, Fraction(0)) + c
            if s:
                groups[q] = s
            else:
                groups.pop(q, None)
        return groups

    def eval_float(self, point: Mapping[str, float]) -> float:
        total = 0.0
        for t in self.terms:
            d = 1.0
            for (fv, fw), p in t.den.items():
                base = point[fv] - (point[fw] if isinstance(fw, str) else float(fw))
                if base == 0.0:
                    raise PoleError(f"({fv} - {fw})")
                d *= base ** p
            total += t.num.eval_float(point) / d * math.exp(t.exparg.eval_float(point))
        return total

    def eval_complex(self, point: Mapping[str, complex]) -> complex:
        total = 0.0 + 0.0j
        for t in self.terms:
            d = 1.0 + 0.0j
            for (fv, fw), p in t.den.items():
                base = point[fv] - (point[fw] if isinstance(fw, str) else complex(fw))
                d *= base ** p
            num = complex(t.num.eval_float(point))
            import cmath

            total += num / d * cmath.exp(complex(t.exparg.eval_float(point)))
        return total

    # -- views -------------------------------------------------------------

    def coeff_ratfuncs(self) -> list[tuple[RatFunc, MultiPoly]]:
        """Spec view: list of (RatFunc coefficient, exponent argument)."""
        out = []
        for t in self.terms:
            den = MultiPoly.const(self.vars, 1)
            for f, p in t.den.items():
                den = den * _factor_poly(f, self.vars) ** p
            out.append((RatFunc(t.num, den), t.exparg))
        return out


def _normalize_factor(v: str, w: Union[str, Fraction]) -> tuple[LinFactor, int]:
    """Order factor keys canonically; returns (factor, sign) with
    (v - w) == sign * factor_poly."""
    if isinstance(w, str):
        if var_sort_key(w) < var_sort_key(v):
            return (w, v), -1
        if w == v:
            raise ValueError("degenerate factor (v - v)")
        return (v, w), 1
    return (v, _as_fraction(w)), 1


def expsum_derive(s: ExpRatSum, v: str) -> ExpRatSum:
    return s.derive(v)


def expsum_eval(s: ExpRatSum, point: Mapping[str, Fraction], exp_mode: str = "exact-symbol"):
    """Exact-symbol mode returns {q: coeff} for sum of coeff*e^q; float mode
    returns a floating evaluation."""
    if exp_mode == "exact-symbol":
        return s.eval_exact(point)
    if exp_mode == "float":
        return s.eval_float({v: float(c) for v, c in point.items()})
    raise ValueError(f"unknown exp_mode {exp_mode!r}")
