"""Exterior calculus of left-invariant forms on the Borel frame.

``ce_d`` is the Chevalley–Eilenberg differential built from the structure
constants of b0. Twisted forms carry coefficient functions f^{Pτ}, where P is
a polynomial in the commuting Euler operators θ1 = t1∂/∂t1 and θ2 = t2∂/∂t2
applied to a base symbol τ. Their differential follows the rule

    d(f^{Pτ}) = f^{2θ2·Pτ} a* + f^{(2θ1 − 2θ2)·Pτ} h*

so every closedness statement becomes an identity in the free module over
Q(i)[θ1, θ2], checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Tuple

from . import linalg
from .exactnum import ONE, ZERO, Poly, Scalar, as_poly, as_scalar
from .forms import BOREL, Multivector, covector, k_action, named_forms, wedge, wedge_all
from .gsp4 import STD, bracket

TH1 = Poly.var("th1")
TH2 = Poly.var("th2")


# ----------------------------------------------------------------------------
# Chevalley–Eilenberg differential


@lru_cache(maxsize=None)
def structure_constants_b0() -> Tuple[Tuple[Tuple[Scalar, ...], ...], ...]:
    """c[i][j] = Borel coordinates of [x_i, x_j] (b0 is a subalgebra, so this is exact)."""
    xs = STD.b0.basis
    L = linalg.left_inverse(STD.b0.vectors())
    out = []
    for X in xs:
        row = []
        for Y in xs:
            Z = bracket(X, Y)
            c = linalg.matvec(L, Z.vector())
            if STD.b0.combine(c) != Z:
                raise ValueError("b0 is not closed under brackets")
            row.append(c)
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def _d_covector(k: int) -> Multivector:
    """d x^k = −Σ_{i<j} c^k_{ij} x^i ∧ x^j."""
    c = structure_constants_b0()
    terms = {}
    for i, j in combinations(range(6), 2):
        v = c[i][j][k]
        if v:
            terms[(i, j)] = -v
    return Multivector(BOREL, terms)


def ce_d(w: Multivector) -> Multivector:
    """Exterior derivative of a left-invariant form given in the Borel frame."""
    if w.frame.name != "borel":
        raise ValueError("ce_d works in the Borel frame")
    out = Multivector(BOREL)
    for key, coef in w.terms.items():
        for pos, k in enumerate(key):
            left = Multivector(BOREL, {key[:pos]: coef})
            right = Multivector(BOREL, {key[pos + 1:]: ONE})
            term = wedge(wedge(left, _d_covector(k)), right)
            out = out + (term if pos % 2 == 0 else -term)
    return out


def d_table() -> Dict[str, Multivector]:
    return {x: ce_d(covector(x)) for x in STD.borel_names}


def stated_d_table() -> Dict[str, Multivector]:
    """The six frame identities as printed (n3 line included verbatim)."""
    a, h, n0, n1, n2, n3 = (covector(x) for x in STD.borel_names)
    zero = Multivector(BOREL)
    return {
        "a": zero,
        "h": zero,
        "n0": -(h ^ n0) * 2,
        "n1": -(a ^ n1) * 2 - (h ^ n2) * 2 - (n0 ^ n3),
        "n2": -(a ^ n2) * 2 - (h ^ n1) * 2 - (n0 ^ n3),
        "n3": -(a ^ n3) * 2 - (n0 ^ (n1 + n2)),
    }


def stated_higher_identities() -> List[Tuple[str, Multivector, Multivector]]:
    """(label, form, printed derivative) for the 2-form and 3-form displays."""
    a, h, n0, n1, n2, n3 = (covector(x) for x in STD.borel_names)
    X = wedge_all(n0, n1 - n2, n3)
    return [
        ("d(n1*∧n2*)", n1 ^ n2, -wedge_all(a, n1, n2) * 4 - X),
        ("d(n0*∧(n1*−n2*)∧n3*)", X, -(a ^ X) * 4),
    ]


# ----------------------------------------------------------------------------
# coefficient functions and twisted forms


@dataclass(frozen=True)
class CoeffFn:
    """constant + Σ_s f^{P_s · s}: a constant plus operator-twisted base symbols."""

    constant: Scalar = ZERO
    twisted: Tuple[Tuple[str, Poly], ...] = ()

    @staticmethod
    def make(constant=ZERO, twisted: Optional[Mapping[str, object]] = None) -> "CoeffFn":
        t = {}
        for s, p in (twisted or {}).items():
            p = as_poly(p)
            if p:
                t[s] = p
        return CoeffFn(as_scalar(constant), tuple(sorted(t.items())))

    @staticmethod
    def f(symbol: str, op=1) -> "CoeffFn":
        return CoeffFn.make(ZERO, {symbol: op})

    def as_dict(self) -> Dict[str, Poly]:
        return dict(self.twisted)

    def __bool__(self):
        return bool(self.constant) or bool(self.twisted)

    def __add__(self, other: "CoeffFn") -> "CoeffFn":
        t = self.as_dict()
        for s, p in other.twisted:
            t[s] = t.get(s, Poly()) + p
        return CoeffFn.make(self.constant + other.constant, t)

    def __neg__(self):
        return CoeffFn.make(-self.constant, {s: -p for s, p in self.twisted})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> "CoeffFn":
        """Multiply by a scalar or by an operator polynomial (operators act on the symbols)."""
        if isinstance(c, Poly):
            if self.constant and not c.is_constant():
                raise ValueError("operators cannot act on a bare constant here")
            k = c.constant_value() if c.is_constant() else ZERO
            return CoeffFn.make(self.constant * k, {s: p * c for s, p in self.twisted})
        c = as_scalar(c)
        return CoeffFn.make(self.constant * c, {s: p * c for s, p in self.twisted})

    __rmul__ = __mul__

    def apply_op(self, op: Poly) -> "CoeffFn":
        """Apply an operator polynomial without constant term (constants are killed)."""
        op = as_poly(op)
        if op.constant_value():
            raise ValueError("apply_op expects a differential operator without constant term")
        return CoeffFn.make(ZERO, {s: p * op for s, p in self.twisted})

    def substitute(self, rules: Mapping[str, "CoeffFn"]) -> "CoeffFn":
        """Replace a base symbol s by a CoeffFn (its operators compose on the left)."""
        out = CoeffFn.make(self.constant)
        for s, p in self.twisted:
            if s in rules:
                r = rules[s]
                if r.constant and not p.is_constant():
                    raise ValueError("cannot differentiate a bare constant")
                out = out + CoeffFn.make(r.constant * p.constant_value() if r.constant else ZERO,
                                         {t: q * p for t, q in r.twisted})
            else:
                out = out + CoeffFn.make(ZERO, {s: p})
        return out

    def __str__(self):
        parts = []
        if self.constant:
            parts.append(str(self.constant))
        for s, p in self.twisted:
            parts.append(f"f^{{({p})·{s}}}")
        return " + ".join(parts) or "0"

    def to_json(self):
        return {"constant": self.constant.to_json(), "twisted": {s: p.to_json() for s, p in self.twisted}}


def df(F: CoeffFn) -> Dict[int, CoeffFn]:
    """d(F) as {covector index: coefficient}: the a* and h* components."""
    a_part = F.apply_op(TH2 * 2)
    h_part = F.apply_op(TH1 * 2 - TH2 * 2)
    out = {}
    if a_part:
        out[0] = a_part
    if h_part:
        out[1] = h_part
    return out


class TwistedForm:
    """Σ_K F_K · x^K with CoeffFn coefficients over the Borel frame."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[int, ...], CoeffFn]] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def from_pairs(pairs) -> "TwistedForm":
        """Build Σ F_i · ω_i from (CoeffFn, Multivector) pairs, collecting by monomial."""
        out: Dict[Tuple[int, ...], CoeffFn] = {}
        for F, w in pairs:
            if w.frame.name != "borel":
                raise ValueError("twisted forms live on the Borel frame")
            for k, c in w.terms.items():
                term = F * c
                out[k] = out[k] + term if k in out else term
        return TwistedForm(out)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return TwistedForm(out)

    def __neg__(self):
        return TwistedForm({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TwistedForm):
            return NotImplemented
        return not (self - other)

    __hash__ = None

    def substitute(self, rules: Mapping[str, CoeffFn]) -> "TwistedForm":
        return TwistedForm({k: v.substitute(rules) for k, v in self.terms.items()})

    def coefficient_of(self, w: Multivector) -> Optional[CoeffFn]:
        """CoeffFn F with self = F·w when w is a single monomial times a scalar pattern, else None."""
        keys = list(w.terms)
        if not keys:
            raise ValueError("zero pattern")
        k0 = keys[0]
        F = self.terms.get(k0, CoeffFn.make()) * w.terms[k0].inverse()
        cand = TwistedForm.from_pairs([(F, w)])
        return F if cand == self else None

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"[{v}]·" + "∧".join(STD.borel_names[i] + "*" for i in k) for k, v in sorted(self.terms.items())
        )

    def to_json(self):
        return [{"covectors": [STD.borel_names[i] for i in k], "coeff": v.to_json()} for k, v in sorted(self.terms.items())]


def twisted_d(W: TwistedForm) -> TwistedForm:
    """Leibniz: d(F ω) = dF ∧ ω + F · dω."""
    out = TwistedForm()
    for key, F in W.terms.items():
        mono = Multivector(BOREL, {key: ONE})
        pairs = []
        for idx, G in df(F).items():
            pairs.append((G, wedge(Multivector(BOREL, {(idx,): ONE}), mono)))
        pairs.append((F, ce_d(mono)))
        out = out + TwistedForm.from_pairs(pairs)
    return out


# ----------------------------------------------------------------------------
# the pseudo-Eisenstein seed forms


def eta_tau() -> TwistedForm:
    """η^{τ1,τ2} = f^{τ1} a*∧h*∧n1*∧n2* + f^{τ2} a*∧n0*∧(n1*−n2*)∧n3*."""
    F = named_forms()
    return TwistedForm.from_pairs([(CoeffFn.f("tau1"), F["eta^1"]), (CoeffFn.f("tau2"), F["eta^2"])])


def top_five_form() -> Multivector:
    a, h, n0, n1, n2, n3 = (covector(x) for x in STD.borel_names)
    return wedge_all(a, h, n0, n1 - n2, n3)


@dataclass
class ClosednessResult:
    obstruction: CoeffFn
    stated_obstruction: CoeffFn
    matches_stated: bool
    d_eta: TwistedForm

    def closed_under(self, rules: Mapping[str, CoeffFn]) -> bool:
        return not self.d_eta.substitute(rules)


def stated_obstruction() -> CoeffFn:
    """−τ1 + (2 − 2θ1 + 2θ2)τ2."""
    return CoeffFn.make(ZERO, {"tau1": -1, "tau2": 2 - TH1 * 2 + TH2 * 2})


def stated_relation() -> Dict[str, CoeffFn]:
    """τ1 = (2 − 2θ1 + 2θ2) τ2."""
    return {"tau1": CoeffFn.f("tau2", 2 - TH1 * 2 + TH2 * 2)}


def derived_relation() -> Dict[str, CoeffFn]:
    """τ1 = (2θ2 − 2θ1) τ2: the relation that actually kills d(η^{τ1,τ2})."""
    return {"tau1": CoeffFn.f("tau2", TH2 * 2 - TH1 * 2)}


def closedness_condition(W: Optional[TwistedForm] = None) -> ClosednessResult:
    if W is None:
        W = eta_tau()
    dW = twisted_d(W)
    top = top_five_form()
    if not dW:
        obs = CoeffFn.make()
    else:
        obs = dW.coefficient_of(top)
        if obs is None:
            raise ValueError(f"d(η) is not a multiple of a*∧h*∧n0*∧(n1*−n2*)∧n3*: {dW}")
    stated = stated_obstruction()
    return ClosednessResult(obs, stated, not (obs - stated), dW)


# ----------------------------------------------------------------------------
# seed form: η^{κ,ω} = κ(λ) ω ∧ η_o with formal ω


class GradedAlgebra:
    """Free graded-commutative algebra on named generators with Poly coefficients.

    Monomials are sorted tuples of generator names; odd generators anticommute
    and square to zero; even generators commute.
    """

    def __init__(self, degrees: Mapping[str, int]):
        self.degrees = dict(degrees)
        self.order = {g: i for i, g in enumerate(sorted(degrees))}

    def normal(self, word: Tuple[str, ...]) -> Tuple[int, Optional[Tuple[str, ...]]]:
        w = list(word)
        sign = 1
        for i in range(1, len(w)):
            j = i
            while j > 0 and self.order[w[j - 1]] > self.order[w[j]]:
                if self.degrees[w[j - 1]] % 2 and self.degrees[w[j]] % 2:
                    sign = -sign
                w[j - 1], w[j] = w[j], w[j - 1]
                j -= 1
        for x, y in zip(w, w[1:]):
            if x == y and self.degrees[x] % 2:
                return 0, None
        return sign, tuple(w)

    def elt(self, terms: Mapping[Tuple[str, ...], object]) -> Dict[Tuple[str, ...], Poly]:
        out: Dict[Tuple[str, ...], Poly] = {}
        for word, c in terms.items():
            s, w = self.normal(word)
            if not s:
                continue
            c = as_poly(c) * s
            out[w] = out.get(w, Poly()) + c
        return {k: v for k, v in out.items() if v}

    def mul(self, u, v):
        terms = {}
        out: Dict[Tuple[str, ...], Poly] = {}
        for w1, c1 in u.items():
            for w2, c2 in v.items():
                for k, c in self.elt({w1 + w2: c1 * c2}).items():
                    out[k] = out.get(k, Poly()) + c
        return {k: c for k, c in out.items() if c}

    def degree(self, word) -> int:
        return sum(self.degrees[g] for g in word)


def kappa_lambda_differential() -> Tuple[CoeffFn, Multivector, bool]:
    """d(κ∘λ) via the df-rule, given that θ1 and θ2 act identically on functions of λ = t1 t2.

    Returns (coefficient, 1-form, agrees): the coefficient is λκ'(λ), written as
    the Euler operator E applied to κ, and the 1-form is η_o = d(log λ) = 2a*.
    """
    E = Poly.var("E")
    F = CoeffFn.f("kappa")
    parts = df(F)
    # on functions of λ = t1 t2 both θ1 and θ2 act as E = λ d/dλ
    collapse = {"th1": E, "th2": E}
    comps = {}
    for idx, G in parts.items():
        ops = {s: p.partial_subs(collapse) for s, p in G.twisted}
        G2 = CoeffFn.make(G.constant, ops)
        if G2:
            comps[idx] = G2
    # η_o = d(log λ): θ1 log λ = θ2 log λ = 1
    eta_o_coeffs = {0: Scalar(2), 1: Scalar(0)}
    eta_o = Multivector(BOREL, {(i,): c for i, c in eta_o_coeffs.items() if c})
    # d(κ∘λ) should be (Eκ)·η_o
    expected = {0: CoeffFn.f("kappa", E) * 2}
    agrees = set(comps) == set(expected) and all(not (comps[i] - expected[i]) for i in comps)
    return CoeffFn.f("kappa", E), eta_o, agrees


@dataclass
class SeedRecord:
    d_eta: Dict[Tuple[str, ...], Poly]
    eta_o: Multivector
    eta_o_matches_2a: bool
    chain_rule_ok: bool
    remainder_with_domega: Dict[Tuple[str, ...], Poly]

    @property
    def closed(self) -> bool:
        return not self.d_eta and self.chain_rule_ok and self.eta_o_matches_2a


def eisenstein_seed_closed(omega_degree: int = 3, inject_domega: bool = False) -> SeedRecord:
    """Formal proof that d(κ(λ) ω∧η_o) = 0 for closed ω and η_o.

    The symbol K stands for κ∘λ and LK for λκ'(λ). With ``inject_domega`` the
    formal generator ω is given a non-zero differential ``dω`` and the
    remainder κ dω∧η_o is reported.
    """
    coef, eta_o, chain_ok = kappa_lambda_differential()
    a2 = covector("a") * 2
    eta_o_ok = eta_o == a2 and not ce_d(eta_o)
    degs = {"omega": omega_degree, "eta_o": 1, "domega": omega_degree + 1}
    A = GradedAlgebra(degs)
    K, LK = Poly.var("K"), Poly.var("LK")

    def d(word_terms):
        """Leibniz on the formal generators: dK = LK·η_o, dω = 0 or domega, dη_o = 0."""
        out = {}
        for word, c in word_terms.items():
            # coefficient part: c is linear in K
            dc = c.coefficients_in("K").get(1)
            if dc is not None:
                for k, v in A.mul({("eta_o",): dc * LK}, {word: Poly.const(1)}).items():
                    out[k] = out.get(k, Poly()) + v
            sign = 1
            for pos, g in enumerate(word):
                if g == "omega" and inject_domega:
                    new = word[:pos] + ("domega",) + word[pos + 1:]
                    for k, v in A.elt({new: c * sign}).items():
                        out[k] = out.get(k, Poly()) + v
                if degs[g] % 2:
                    sign = -sign
        return {k: v for k, v in out.items() if v}

    eta = A.elt({("omega", "eta_o"): K})
    deta = d(eta)
    if inject_domega:
        return SeedRecord({}, eta_o, eta_o_ok, chain_ok, deta)
    return SeedRecord(deta, eta_o, eta_o_ok, chain_ok, {})


def eta_o_squared() -> Multivector:
    e = named_forms()["eta_o"]
    return wedge(e, e)


# ----------------------------------------------------------------------------
# weights of the Levi-type forms


@dataclass
class Section6Weights:
    eta_upper: Dict[str, object]
    eta_lower: Dict[str, object]
    expected: Dict[str, object]
    u_star_table: List
    failures: List[str] = field(default_factory=list)


def weights_of_section6_forms() -> Section6Weights:
    from .forms import ch_weight, u_star_weight_table
    from .gsp4 import Weight

    F = named_forms()
    upper = {n: ch_weight(F[n]) for n in ("eta^+", "eta^-")}
    lower = {n: ch_weight(F[n]) for n in ("eta_+", "eta_-")}
    expected = {
        "eta^+": Weight.of(1, 0), "eta^-": Weight.of(-1, 0),
        "eta_+": Weight.of(1, 0), "eta_-": Weight.of(-1, 0),
    }
    fails = []
    for n, w in {**upper, **lower}.items():
        if w != expected[n]:
            fails.append(f"{n}: stated {expected[n]}, computed {w}")
    return Section6Weights(upper, lower, expected, u_star_weight_table(), fails)
