"""Universal enveloping algebra of g0 = sp4 with PBW normal ordering.

The ordered basis is

    H_α, H_β, E_{α+β}, E_{-α-β}, E_{α-β}, E_{-α+β}, E_β, E_{-β}, E_α, E_{-α}

so the subalgebra h = t ⊕ V_{±(α+β)} ⊕ V_{±(α-β)} comes first and any PBW
monomial that contains an h-letter lies in h·U. Positive root vectors are the
pinned ones from :mod:`gsp4cert.gsp4`; each E_{-γ} is rescaled so that the
trace form gives B(E_γ, E_{-γ}) = 2, which makes every E_γE_{-γ} appear in the
Casimir with coefficient exactly 1.

Normal ordering rewrites adjacent inversions ``x y → y x + [x, y]``. Two
strategies (leftmost or rightmost inversion first) are provided so that
confluence can be tested rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .exactnum import ONE, ZERO, Poly, Scalar, as_poly, as_scalar
from .gsp4 import STD, LieElt, Weight, bracket

STRATEGIES = ("left", "right")


class UnknownSymbol(KeyError):
    pass


# ----------------------------------------------------------------------------
# a generic enveloping algebra over a bracket table


class Enveloping:
    """U(g) for a Lie algebra given by an ordered basis and structure constants.

    ``table[i][j]`` is a dict {k: c} with [x_i, x_j] = Σ c x_k. Coefficients may
    be Scalars or Polys (the latter for symbolic structure constants).
    """

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[Mapping[int, object]]]):
        self.names = tuple(names)
        self.n = len(names)
        self.index = {nm: i for i, nm in enumerate(names)}
        self.table = [[dict(c) for c in row] for row in table]
        self._memo: Dict[str, Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]]] = {s: {} for s in STRATEGIES}

    # words are tuples of basis indices; normal words are non-decreasing
    def normalize_word(self, word: Tuple[int, ...], strategy: str = "left") -> Dict[Tuple[int, ...], object]:
        memo = self._memo[strategy]
        hit = memo.get(word)
        if hit is not None:
            return hit
        inv = [p for p in range(len(word) - 1) if word[p] > word[p + 1]]
        if not inv:
            res = {word: ONE}
        else:
            p = inv[0] if strategy == "left" else inv[-1]
            x, y = word[p], word[p + 1]
            res: Dict[Tuple[int, ...], object] = {}
            swapped = word[:p] + (y, x) + word[p + 2:]
            _accumulate(res, self.normalize_word(swapped, strategy), ONE)
            for k, c in self.table[x][y].items():
                shorter = word[:p] + (k,) + word[p + 2:]
                _accumulate(res, self.normalize_word(shorter, strategy), c)
        memo[word] = res
        return res

    def elt(self, terms: Mapping[Tuple[int, ...], object] | None = None) -> "UEAElt":
        return UEAElt(self, terms or {})

    def one(self) -> "UEAElt":
        return UEAElt(self, {(): ONE})

    def gen(self, name: str) -> "UEAElt":
        if name not in self.index:
            raise UnknownSymbol(name)
        return UEAElt(self, {(self.index[name],): ONE})

    def word(self, names: Sequence[str], strategy: str = "left") -> "UEAElt":
        """Normal form of the (possibly unordered) product of named generators."""
        try:
            w = tuple(self.index[nm] for nm in names)
        except KeyError as exc:
            raise UnknownSymbol(str(exc)) from None
        return UEAElt(self, self.normalize_word(w, strategy))

    def monomial(self, exps: Mapping[str, int]) -> "UEAElt":
        w = []
        for nm in self.names:
            w += [self.index[nm]] * exps.get(nm, 0)
        for nm in exps:
            if nm not in self.index:
                raise UnknownSymbol(nm)
        return UEAElt(self, {tuple(w): ONE})


def _accumulate(target: Dict, src: Mapping, c) -> None:
    for k, v in src.items():
        t = v * c
        if k in target:
            s = target[k] + t
            if s:
                target[k] = s
            else:
                del target[k]
        elif t:
            target[k] = t


class UEAElt:
    """Linear combination of normal-ordered words (stored as sorted index tuples)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Enveloping, terms: Mapping[Tuple[int, ...], object]):
        self.alg = alg
        clean = {}
        for k, v in terms.items():
            if any(k[i] > k[i + 1] for i in range(len(k) - 1)):
                raise ValueError("UEAElt terms must be normal-ordered words")
            if v:
                clean[k] = v
        self.terms = clean

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "UEAElt") -> "UEAElt":
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return UEAElt(self.alg, out)

    def __neg__(self):
        return UEAElt(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "UEAElt":
        if isinstance(c, (int, Fraction)):
            c = as_scalar(c)
        return UEAElt(self.alg, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, UEAElt):
            return pbw_product(self, other)
        return self.scale(other)

    def mul(self, other: "UEAElt", strategy: str = "left") -> "UEAElt":
        return pbw_product(self, other, strategy)

    def __eq__(self, other):
        if not isinstance(other, UEAElt):
            return NotImplemented
        return not (self - other)

    __hash__ = None

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=-1)

    def exponents(self, word: Tuple[int, ...]) -> Tuple[int, ...]:
        e = [0] * self.alg.n
        for i in word:
            e[i] += 1
        return tuple(e)

    def map_coeffs(self, fn) -> "UEAElt":
        return UEAElt(self.alg, {k: fn(v) for k, v in self.terms.items()})

    def word_str(self, word) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            nm = self.alg.names[word[i]]
            parts.append(nm if j - i == 1 else f"{nm}^{j - i}")
            i = j
        return "·".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v})·{self.word_str(k)}" for k, v in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))

    __repr__ = __str__

    def to_json(self):
        out = []
        for k, v in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            out.append({"monomial": self.word_str(k), "coeff": as_poly(v).to_json() if isinstance(v, Poly) else v.to_json()})
        return out


def pbw_product(u: UEAElt, v: UEAElt, strategy: str = "left") -> UEAElt:
    alg = u.alg
    out: Dict[Tuple[int, ...], object] = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            _accumulate(out, alg.normalize_word(w1 + w2, strategy), c1 * c2)
    return UEAElt(alg, out)


def commutator(u: UEAElt, v: UEAElt) -> UEAElt:
    return pbw_product(u, v) - pbw_product(v, u)


# ----------------------------------------------------------------------------
# g0 = sp4 with the chosen basis

PBW_NAMES = ("H_a", "H_b", "E_a+b", "E_-a-b", "E_a-b", "E_-a+b", "E_b", "E_-b", "E_a", "E_-a")
H_PART = frozenset(range(6))
POSITIVE = {"a": (1, 0), "b": (0, 1), "a+b": (1, 1), "a-b": (1, -1)}
NEGATIVE = {"a": "-a", "b": "-b", "a+b": "-a-b", "a-b": "-a+b"}


def trace_form(X: LieElt, Y: LieElt, basis: Sequence[LieElt]) -> Scalar:
    """Tr(ad X ∘ ad Y) on span(basis)."""
    vecs = [b.vector() for b in basis]
    L = linalg.left_inverse(vecs)
    total = ZERO
    for i, b in enumerate(basis):
        z = bracket(X, bracket(Y, b))
        total = total + linalg.matvec(L, z.vector())[i]
    return total


def _g0_basis_pinned() -> List[LieElt]:
    return STD.k.basis + STD.p.basis


def killing_form(X: LieElt, Y: LieElt) -> Scalar:
    """Killing form of sp4: Tr(ad X ad Y) on the 10-dimensional g0."""
    return trace_form(X, Y, _g0_basis_pinned())


@dataclass
class G0Basis:
    elements: Dict[str, LieElt]
    scale: Dict[str, Scalar]
    b_value: Scalar
    alpha_Ha: Scalar

    def ordered(self) -> List[LieElt]:
        return [self.elements[n] for n in PBW_NAMES]


@lru_cache(maxsize=None)
def g0_basis() -> G0Basis:
    els: Dict[str, LieElt] = {}
    scale: Dict[str, Scalar] = {}
    for nm, (p, q) in POSITIVE.items():
        Ep = STD.root(p, q)
        Em = STD.root(-p, -q)
        B = killing_form(Ep, Em)
        if not B:
            raise ValueError(f"degenerate pairing on ±{nm}")
        s = Scalar(2) / B
        els["E_" + nm] = Ep
        els["E_" + NEGATIVE[nm]] = Em * s
        scale["E_" + NEGATIVE[nm]] = s
    els["H_a"] = bracket(els["E_a"], els["E_-a"])
    els["H_b"] = bracket(els["E_b"], els["E_-b"])
    b = _eigen(els["H_b"], els["E_b"])
    a = _eigen(els["H_a"], els["E_a"])
    return G0Basis(els, scale, b, a)


def _eigen(T: LieElt, X: LieElt) -> Scalar:
    Y = bracket(T, X)
    c = linalg.proportional(Y.vector(), X.vector())
    if c is None:
        raise ValueError("not an eigenvector")
    return c


@lru_cache(maxsize=None)
def g0_algebra() -> Enveloping:
    gb = g0_basis()
    basis = gb.ordered()
    vecs = [b.vector() for b in basis]
    if linalg.rank(vecs) != 10:
        raise ValueError("PBW basis is not a basis of g0")
    L = linalg.left_inverse(vecs)
    table = []
    for X in basis:
        row = []
        for Y in basis:
            c = linalg.matvec(L, bracket(X, Y).vector())
            row.append({k: v for k, v in enumerate(c) if v})
        table.append(row)
    return Enveloping(PBW_NAMES, table)


def sl2_algebra(b: object = None) -> Enveloping:
    """U(sl2) on H_β, E_β, E_{-β} with β(H_β) = b (a symbol "b" by default)."""
    bb = Poly.var("b") if b is None else b
    names = ("H_b", "E_b", "E_-b")
    z = {}
    table = [
        [z, {1: bb}, {2: -bb}],
        [{1: -bb}, z, {0: ONE}],
        [{2: bb}, {0: -ONE}, z],
    ]
    return Enveloping(names, table)


# ----------------------------------------------------------------------------
# Casimir


@dataclass
class CasimirRecord:
    omega: UEAElt
    gram_det: Scalar
    pair_coefficients: Dict[str, object]
    shape_ok: bool
    central: Dict[str, bool]


@lru_cache(maxsize=None)
def casimir() -> CasimirRecord:
    A = g0_algebra()
    basis = g0_basis().ordered()
    n = len(basis)
    G = [[killing_form(x, y) for y in basis] for x in basis]
    det = _det(G)
    if not det:
        raise ValueError("Killing form is degenerate")
    Ginv = linalg.inverse(G)
    terms: Dict[Tuple[int, ...], object] = {}
    for i in range(n):
        for j in range(n):
            c = Ginv[j][i]
            if c:
                _accumulate(terms, A.normalize_word((i, j)), c)
    omega = UEAElt(A, terms)
    pairs = {}
    allowed = set()
    for nm in POSITIVE:
        w = (A.index["E_" + nm], A.index["E_" + NEGATIVE[nm]])
        allowed.add(w)
        pairs[nm] = omega.terms.get(w, ZERO)
    h_idx = {A.index["H_a"], A.index["H_b"]}
    shape_ok = all(set(w) <= h_idx or w in allowed for w in omega.terms)
    central = {nm: not commutator(omega, A.gen(nm)) for nm in A.names}
    return CasimirRecord(omega, det, pairs, shape_ok, central)


def _det(M):
    R, piv = linalg.rref(M)
    if len(piv) < len(M):
        return ZERO
    # recompute determinant by elimination with tracking
    A = [list(r) for r in M]
    n = len(A)
    det = ONE
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c])
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det = det * A[c][c]
        inv = A[c][c].inverse()
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


# ----------------------------------------------------------------------------
# commutation identity


@dataclass
class IdentityRecord:
    i: int
    lhs: UEAElt
    rhs: UEAElt
    holds: bool

    @property
    def difference(self) -> UEAElt:
        return self.lhs - self.rhs


def _beta_identity(A: Enveloping, i: int, b, strategy: str = "left") -> IdentityRecord:
    """E_β^i E_{-β}^i = E_βE_{-β}E_β^{i-1}E_{-β}^{i-1} + (i-1)H_βE_β^{i-1}E_{-β}^{i-1} - (i(i-1)b/2)E_β^{i-1}E_{-β}^{i-1}."""
    Eb, Emb, Hb = "E_b", "E_-b", "H_b"
    lhs = A.word([Eb] * i + [Emb] * i, strategy)
    base = [Eb] * (i - 1) + [Emb] * (i - 1)
    t1 = A.word([Eb, Emb] + base, strategy)
    t2 = A.word([Hb] + base, strategy).scale(Scalar(i - 1))
    coef = b * Fraction(i * (i - 1), 2)
    t3 = A.word(base, strategy).scale(-coef if not isinstance(coef, Fraction) else Scalar(-coef))
    rhs = t1 + t2 + t3
    return IdentityRecord(i, lhs, rhs, lhs == rhs)


def commutation_identity(i: int, symbolic: bool = False, strategy: str = "left") -> IdentityRecord:
    """The E_β-string identity, either in U(g0) with the computed β(H_β) or in U(sl2) with b symbolic."""
    if i < 1:
        raise ValueError("i must be positive")
    if symbolic:
        return _beta_identity(sl2_algebra(), i, Poly.var("b"), strategy)
    return _beta_identity(g0_algebra(), i, g0_basis().b_value, strategy)


def commutation_identity_substituted(i: int) -> bool:
    """Substituting b = β(H_β) into the symbolic identity gives the concrete one in U(sl2)."""
    b = g0_basis().b_value
    sym = commutation_identity(i, symbolic=True)
    concrete = _beta_identity(sl2_algebra(b), i, b)
    subst = sym.difference.map_coeffs(lambda c: as_poly(c).partial_subs({"b": b}))
    return not subst and concrete.holds


def e_beta_power_times_h(j: int) -> Tuple[UEAElt, UEAElt]:
    """(E_β^j H_β, (H_β − jβ(H_β)) E_β^j), both normal-ordered in U(g0)."""
    A = g0_algebra()
    b = g0_basis().b_value
    lhs = A.word(["E_b"] * j + ["H_b"])
    rhs = A.word(["H_b"] + ["E_b"] * j) - A.word(["E_b"] * j).scale(b * j)
    return lhs, rhs


# ----------------------------------------------------------------------------
# period reduction


@lru_cache(maxsize=None)
def spin2_mu() -> Tuple[Scalar, ...]:
    """μ_j: E_α^j E_{-α}^j v_0 = μ_j v_0 in the spin-2 k-type, j = 0..4."""
    from .ktypes import spin_module

    gb = g0_basis()
    mod = spin_module(Weight.of(2, 0), gb.elements["E_a"], gb.elements["E_-a"])
    v0 = [ZERO] * 5
    v0[2] = ONE  # basis is v_2, v_1, v_0, v_-1, v_-2
    out = []
    for j in range(5):
        v = tuple(v0)
        for _ in range(j):
            v = mod.act("E_-a", v)
        for _ in range(j):
            v = mod.act("E_a", v)
        if any(x for k, x in enumerate(v) if k != 2):
            raise ValueError("E_α^j E_{-α}^j v0 left the weight-zero line")
        out.append(v[2])
    return tuple(out)


LAMBDA = Poly.var("lambda")


class PeriodReducer:
    """Computes C with ℓ(R φ0) = C ℓ(φ0) using the annihilation rules.

    ℓ kills h·U (any PBW monomial containing an h-letter), kills vectors of
    non-zero weight, sees Ω as the scalar λ, and E_α^j E_{-α}^j φ0 = μ_j φ0.
    """

    def __init__(self, strategy: str = "A"):
        if strategy not in ("A", "B"):
            raise ValueError("strategy must be 'A' or 'B'")
        self.strategy = strategy
        self.order = "left" if strategy == "A" else "right"
        self.A = g0_algebra()
        self.mu = spin2_mu()
        self._C: Dict[int, Poly] = {0: Poly.const(1)}
        idx = self.A.index
        self.ib, self.imb, self.ia, self.ima = idx["E_b"], idx["E_-b"], idx["E_a"], idx["E_-a"]
        W = casimir().omega - self.A.word(["E_b", "E_-b"])
        self.W = W

    def normalize(self, R: UEAElt) -> UEAElt:
        out: Dict[Tuple[int, ...], object] = {}
        for w, c in R.terms.items():
            _accumulate(out, self.A.normalize_word(w, self.order), c)
        return UEAElt(self.A, out)

    def ell(self, R: UEAElt) -> Poly:
        total = Poly()
        for w, c in R.terms.items():
            v = self._ell_word(w)
            if v:
                total = total + v * c
        return total

    def _ell_word(self, w: Tuple[int, ...]) -> Poly:
        if any(i in H_PART for i in w):
            return Poly()
        a = w.count(self.ib)
        b = w.count(self.imb)
        c = w.count(self.ia)
        d = w.count(self.ima)
        if a != b or c != d:
            return Poly()
        if c >= len(self.mu):
            return Poly()
        mu = self.mu[c]
        if not mu:
            return Poly()
        return self.C(a) * mu

    def _estring(self, i: int) -> List[str]:
        return ["E_b"] * i + ["E_-b"] * i

    def C(self, i: int) -> Poly:
        if i in self._C:
            return self._C[i]
        A = self.A
        Y = A.word(self._estring(i - 1), self.order)
        if self.strategy == "A":
            # E_β^iE_{-β}^i = E_βE_{-β}·Y + (E_β^iE_{-β}^i − E_βE_{-β}Y); ℓ(E_βE_{-β}v) = λℓ(v) − ℓ(W v)
            EbEmb = A.word(["E_b", "E_-b"], self.order)
            rem = A.word(self._estring(i), self.order) - pbw_product(EbEmb, Y, self.order)
            val = LAMBDA * self.C(i - 1) - self.ell(pbw_product(self.W, Y, self.order)) + self.ell(rem)
        else:
            # E_β^iE_{-β}^i = Ω·E_β^{i-1}E_{-β}^{i-1} − E_β^{i-1} W E_{-β}^{i-1}
            left = A.word(["E_b"] * (i - 1), self.order)
            right = A.word(["E_-b"] * (i - 1), self.order)
            mid = pbw_product(pbw_product(left, self.W, self.order), right, self.order)
            val = LAMBDA * self.C(i - 1) - self.ell(mid)
        self._C[i] = val
        return val

    def reduce(self, R: UEAElt) -> Poly:
        return self.ell(self.normalize(R))

    def reduce_word(self, word: Sequence[int]) -> Poly:
        """ℓ(x_{w1}⋯x_{wn} φ0)/ℓ(φ0) for an arbitrary (unordered) word, rewritten in this strategy's order."""
        return self.ell(UEAElt(self.A, self.A.normalize_word(tuple(word), self.order)))


def period_reduce(R: UEAElt, strategy: str = "A") -> Poly:
    return PeriodReducer(strategy).reduce(R)


def stated_recursion_check(i: int, reducer: Optional[PeriodReducer] = None) -> Tuple[Poly, Poly]:
    """Both sides of ℓ(E_β^iE_{-β}^iφ0) = (λ − i(i−1)b/2)C_{i−1} − ℓ(E_αE_{-α}E_β^{i−1}E_{-β}^{i−1}φ0)."""
    R = reducer or PeriodReducer("A")
    A = R.A
    b = g0_basis().b_value
    lhs = R.C(i)
    word = A.word(["E_a", "E_-a"] + R._estring(i - 1))
    rhs = (LAMBDA - Poly.const(b * Fraction(i * (i - 1), 2))) * R.C(i - 1) - R.ell(word)
    return lhs, rhs


def uea_dump(max_i: int = 6) -> dict:
    """JSON-ready record of the basis normalization, Ω, the μ_j table and C_i."""
    gb = g0_basis()
    cas = casimir()
    R = PeriodReducer("A")
    return {
        "pbw_order": list(PBW_NAMES),
        "negative_root_scaling": {k: v.to_json() for k, v in sorted(gb.scale.items())},
        "beta_of_H_beta": gb.b_value.to_json(),
        "alpha_of_H_alpha": gb.alpha_Ha.to_json(),
        "casimir": cas.omega.to_json(),
        "casimir_pair_coefficients": {k: v.to_json() for k, v in sorted(cas.pair_coefficients.items())},
        "casimir_shape_ok": cas.shape_ok,
        "mu": [m.to_json() for m in spin2_mu()],
        "C": {str(i): R.C(i).to_json() for i in range(max_i + 1)},
    }
