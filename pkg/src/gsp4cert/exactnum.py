"""Exact scalars: Gaussian rationals, sparse multivariate polynomials, and
rational functions kept as unreduced numerator/denominator pairs.

Nothing here touches floating point. ``fractions.Fraction`` supplies the
arbitrary-precision rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = [
    "Scalar",
    "Poly",
    "RatFun",
    "I",
    "ZERO",
    "ONE",
    "as_scalar",
    "as_poly",
    "as_ratfun",
    "ratfun_eq",
    "poly_substitute",
    "MalformedInput",
]


class MalformedInput(ValueError):
    """Raised for structurally invalid exact objects (zero denominators etc.)."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational from {type(x).__name__}")


class Scalar:
    """Element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    # construction helpers
    @staticmethod
    def parse(text: str) -> "Scalar":
        """Inverse of ``str`` for the forms produced by :meth:`__str__`."""
        t = text.replace(" ", "")
        if t.endswith("i"):
            body = t[:-1]
            # split at the last sign that is not the leading one and not inside an exponent
            cut = max(body.rfind("+", 1), body.rfind("-", 1))
            if cut <= 0:
                im = body if body not in ("", "+", "-") else body + "1"
                return Scalar(0, Fraction(im))
            re, im = body[:cut], body[cut:]
            if im in ("+", "-"):
                im += "1"
            return Scalar(Fraction(re), Fraction(im))
        return Scalar(Fraction(t), 0)

    def to_json(self):
        return [str(self.re), str(self.im)]

    @staticmethod
    def from_json(obj) -> "Scalar":
        return Scalar(Fraction(obj[0]), Fraction(obj[1]))

    # predicates
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # arithmetic
    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, Scalar):
            return Scalar(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return Scalar(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return Scalar(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return Scalar(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return Scalar(a * c, 0)
            return Scalar(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return Scalar(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return Scalar(self.re / other, self.im / other)
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(other, 0) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"Scalar({self})"


I = Scalar(0, 1)
ZERO = Scalar(0)
ONE = Scalar(1)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, str)):
        return Scalar(x)
    raise TypeError(f"not a scalar: {x!r}")


Monomial = Tuple[Tuple[str, int], ...]


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


class Poly:
    """Sparse polynomial over Q(i) in named commuting variables.

    A monomial is a sorted tuple of ``(name, exponent)`` pairs; the empty
    tuple is the constant monomial. Zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                c = as_scalar(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @staticmethod
    def var(name: str) -> "Poly":
        return Poly({((name, 1),): ONE})

    @staticmethod
    def const(c) -> "Poly":
        return Poly({(): as_scalar(c)})

    @staticmethod
    def _raw(terms: Dict[Monomial, Scalar]) -> "Poly":
        p = Poly.__new__(Poly)
        p.terms = terms
        return p

    @property
    def variables(self) -> Tuple[str, ...]:
        names = set()
        for m in self.terms:
            names.update(v for v, _ in m)
        return tuple(sorted(names))

    def exponent_vectors(self) -> Dict[Tuple[int, ...], Scalar]:
        """Dense view keyed by exponent vectors over ``self.variables``."""
        names = self.variables
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            out[tuple(d.get(v, 0) for v in names)] = c
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Scalar:
        return self.terms.get((), ZERO)

    def degree(self, name: str | None = None) -> int:
        """Total degree, or the degree in one variable. Zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(name, 0) for m in self.terms)

    def coefficient(self, mono: Mapping[str, int] | Monomial) -> Scalar:
        if isinstance(mono, Mapping):
            mono = tuple(sorted((v, e) for v, e in mono.items() if e))
        return self.terms.get(tuple(mono), ZERO)

    def coefficients_in(self, name: str) -> Dict[int, "Poly"]:
        """Collect as a polynomial in ``name`` with polynomial coefficients."""
        out: Dict[int, Dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for v, k in m:
                if v == name:
                    e = k
                else:
                    rest.append((v, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly._raw(t) for e, t in out.items()}

    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            c = as_scalar(other)
            if not c:
                return Poly()
            return Poly._raw({m: v * c for m, v in self.terms.items()})
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self * as_scalar(other).inverse()
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return RatFun(self, o)

    def __rtruediv__(self, other):
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return RatFun(o, self)

    def conj(self) -> "Poly":
        """Conjugate coefficients (variables are treated as real symbols)."""
        return Poly._raw({m: c.conj() for m, c in self.terms.items()})

    def subs(self, bindings: Mapping[str, object]) -> "RatFun":
        return poly_substitute(self, bindings)

    def partial_subs(self, bindings: Mapping[str, object]) -> "Poly":
        """Substitute polynomial values for some variables, keeping the rest."""
        out = Poly()
        cache: Dict[Tuple[str, int], Poly] = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                if v in bindings:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = as_poly(bindings[v]) ** e
                    term = term * cache[key]
                else:
                    term = term * Poly({((v, e),): ONE})
            out = out + term
        return out

    def sort_key(self):
        return sorted((m, (c.re, c.im)) for m, c in self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[m]
            if not m:
                parts.append(f"({c})" if c.im and c.re else str(c))
                continue
            ms = _mono_str(m)
            if c == 1:
                parts.append(ms)
            elif c == -1:
                parts.append("-" + ms)
            elif c.im and c.re:
                parts.append(f"({c})*{ms}")
            else:
                parts.append(f"{c}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"

    def to_json(self):
        return [[[list(p) for p in m], c.to_json()] for m, c in sorted(self.terms.items(), key=lambda t: t[0])]

    @staticmethod
    def from_json(obj) -> "Poly":
        return Poly({tuple((v, int(e)) for v, e in m): Scalar.from_json(c) for m, c in obj})


def _coerce_poly(x) -> Poly | None:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (Scalar, int, Fraction)):
        c = as_scalar(x)
        return Poly._raw({(): c} if c else {})
    return None


def as_poly(x) -> Poly:
    p = _coerce_poly(x)
    if p is None:
        raise TypeError(f"not a polynomial: {x!r}")
    return p


class RatFun:
    """Quotient num/den of polynomials. Not reduced; equality cross-multiplies."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = as_poly(num)
        den = as_poly(den)
        if not den:
            raise MalformedInput("rational function with zero denominator")
        # cheap normalisation only: constant denominators are folded into the numerator
        if den.is_constant() and den.constant_value() != 1:
            num = num * den.constant_value().inverse()
            den = Poly.const(1)
        elif not num:
            den = Poly.const(1)
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = _coerce_ratfun(other)
        if o is None:
            return NotImplemented
        return ratfun_eq(self, o)

    __hash__ = None

    def is_polynomial(self) -> bool:
        return self.den == 1

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __add__(self, other):
        o = _coerce_ratfun(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_ratfun(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_ratfun(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce_ratfun(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_ratfun(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _coerce_ratfun(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFun(self.den ** (-n), self.num ** (-n))
        return RatFun(self.num ** n, self.den ** n)

    def subs(self, bindings: Mapping[str, object]) -> "RatFun":
        return poly_substitute(self.num, bindings) / poly_substitute(self.den, bindings)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.num.variables) | set(self.den.variables)))

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFun({self})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _coerce_ratfun(x) -> RatFun | None:
    if isinstance(x, RatFun):
        return x
    p = _coerce_poly(x)
    if p is None:
        return None
    return RatFun(p, Poly.const(1))


def as_ratfun(x) -> RatFun:
    r = _coerce_ratfun(x)
    if r is None:
        raise TypeError(f"not a rational function: {x!r}")
    return r


def ratfun_eq(f, g) -> bool:
    """Exact equality of rational functions by cross-multiplication."""
    f = as_ratfun(f)
    g = as_ratfun(g)
    if not f.den or not g.den:
        raise MalformedInput("zero denominator")
    return f.num * g.den == g.num * f.den


def poly_substitute(f: Poly, bindings: Mapping[str, object]) -> RatFun:
    """Compose ``f`` with ``bindings``; every variable of ``f`` must be bound.

    Bound values may be scalars, polynomials or rational functions. The
    result shares a common denominator built from powers of the bound
    denominators, so no division of polynomials is ever attempted.
    """
    f = as_poly(f)
    for v in f.variables:
        if v not in bindings:
            raise KeyError(f"unbound variable {v!r}")
    vals = {v: as_ratfun(bindings[v]) for v in f.variables}
    # max exponent per variable fixes the common denominator prod den_v^maxdeg
    maxdeg = {v: f.degree(v) for v in vals}
    num_pows: Dict[Tuple[str, int], Poly] = {}
    den_pows: Dict[Tuple[str, int], Poly] = {}

    def npow(v, e):
        key = (v, e)
        if key not in num_pows:
            num_pows[key] = vals[v].num ** e
        return num_pows[key]

    def dpow(v, e):
        key = (v, e)
        if key not in den_pows:
            den_pows[key] = vals[v].den ** e
        return den_pows[key]

    num = Poly()
    for m, c in f.terms.items():
        d = dict(m)
        term = Poly.const(c)
        for v in vals:
            e = d.get(v, 0)
            if e:
                term = term * npow(v, e)
            if maxdeg[v] - e:
                term = term * dpow(v, maxdeg[v] - e)
        num = num + term
    den = Poly.const(1)
    for v in vals:
        if maxdeg[v]:
            den = den * dpow(v, maxdeg[v])
    return RatFun(num, den)


Number = Union[int, Fraction, Scalar, Poly, RatFun]


def is_zero(x) -> bool:
    return not x
