"""Exterior algebra on b0* with the k~-action, group pullbacks and restrictions.

b0 is identified with g/k~ through the splitting g = b0 ⊕ k~, so every
element of k~ (and every group element normalising k~) acts on b0 by
"bracket (or conjugate), then project along k~". Covectors transform by the
dual action; multivectors by the induced action on wedge powers.

Two frames are supported: the Borel frame (a*, h*, n0*, n1*, n2*, n3*) and
the root frame (e*_{-α-β}, e*_{-β}, e*_{α-β}, e*_{-α+β}, e*_β, e*_{α+β}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .exactnum import I, ONE, ZERO, Poly, RatFun, Scalar, as_poly, as_scalar, ratfun_eq
from .gsp4 import STD, LieElt, Mat, Weight, bracket, weight_from_eigenvalues

class FrameError(ValueError):
    """Multivectors from different frames were combined."""


def _zero(c) -> bool:
    return not c


# ----------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class Frame:
    """An ordered basis of b0, given by coefficient rows over (a, h, n0, n1, n2, n3)."""

    name: str
    labels: Tuple[str, ...]
    rows: Tuple[Tuple[Scalar, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a covector of the {self.name} frame") from None

    def vector(self, i: int) -> LieElt:
        return STD.b0.combine(self.rows[i])

    def coords_from_borel(self, v: Sequence) -> List:
        """Frame coordinates of a vector given by Borel coordinates (entries may be symbolic)."""
        M = _frame_inverse(self.name)
        out = []
        for r in M:
            s = ZERO
            for c, x in zip(r, v):
                if c and x:
                    s = s + x * c
            out.append(s)
        return out


_I6 = tuple(tuple(ONE if i == j else ZERO for j in range(6)) for i in range(6))
BOREL = Frame("borel", STD.borel_names, _I6)
ROOT = Frame("root", STD.root_frame_names, tuple(STD.frame_change[n] for n in STD.root_frame_names))
FRAMES = {"borel": BOREL, "root": ROOT}

_INV_CACHE: Dict[str, list] = {}


def _frame_inverse(name: str):
    """Matrix taking Borel coordinates to frame coordinates."""
    if name not in _INV_CACHE:
        F = FRAMES[name]
        # column j of transpose(rows) is frame vector j in Borel coordinates
        _INV_CACHE[name] = linalg.inverse(linalg.transpose([list(r) for r in F.rows]))
    return _INV_CACHE[name]


# ----------------------------------------------------------------------------
# multivectors


def _sort_sign(idx: Sequence[int]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """Sign of the permutation sorting ``idx``; (0, None) if an index repeats."""
    lst = list(idx)
    if len(set(lst)) != len(lst):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(lst)


class Multivector:
    """Homogeneous or mixed element of ∧b0* in a fixed frame."""

    __slots__ = ("frame", "terms")

    def __init__(self, frame: Frame, terms: Mapping[Tuple[int, ...], object] | None = None):
        self.frame = frame
        clean: Dict[Tuple[int, ...], object] = {}
        if terms:
            for k, c in terms.items():
                sign, key = _sort_sign(k)
                if not sign or _zero(c):
                    continue
                c = c if sign > 0 else -c
                if key in clean:
                    s = clean[key] + c
                    if _zero(s):
                        del clean[key]
                    else:
                        clean[key] = s
                else:
                    clean[key] = c
        self.terms = clean

    @staticmethod
    def scalar(frame: Frame, c=1) -> "Multivector":
        return Multivector(frame, {(): as_scalar(c) if isinstance(c, (int, Fraction)) else c})

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("multivector is not homogeneous")
        return ds.pop() if ds else 0

    def _check(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            raise TypeError("expected a Multivector")
        if other.frame.name != self.frame.name:
            raise FrameError(f"frame mismatch: {self.frame.name} vs {other.frame.name}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        return not (self - other)

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return Multivector(self.frame, out)

    def __neg__(self):
        return Multivector(self.frame, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Multivector":
        if isinstance(c, (int, Fraction)):
            c = as_scalar(c)
        return Multivector(self.frame, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def map_coeffs(self, fn) -> "Multivector":
        return Multivector(self.frame, {k: fn(c) for k, c in self.terms.items()})

    def coefficient(self, *labels: str):
        sign, key = _sort_sign([self.frame.index(l) for l in labels])
        if not sign:
            return ZERO
        c = self.terms.get(key, ZERO)
        return c if sign > 0 else -c

    def proportional_to(self, other: "Multivector"):
        """Scalar c with self = c·other, or None (Scalar coefficients only)."""
        self._check(other)
        keys = sorted(set(self.terms) | set(other.terms))
        u = [self.terms.get(k, ZERO) for k in keys]
        v = [other.terms.get(k, ZERO) for k in keys]
        return linalg.proportional(u, v)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[k]
            basis = "∧".join(self.frame.labels[i] + "*" for i in k) or "1"
            parts.append(f"({c})·{basis}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        out = []
        for k in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[k]
            out.append({"covectors": [self.frame.labels[i] for i in k], "coeff": _coeff_json(c)})
        return {"frame": self.frame.name, "terms": out}


def _coeff_json(c):
    if isinstance(c, (Scalar, Poly, RatFun)):
        return c.to_json() if not isinstance(c, RatFun) else c.to_json()
    return str(c)


def covector(label: str, frame: Frame = BOREL) -> Multivector:
    return Multivector(frame, {(frame.index(label),): ONE})


def wedge(u: Multivector, v: Multivector) -> Multivector:
    u._check(v)
    out: Dict[Tuple[int, ...], object] = {}
    for k1, c1 in u.terms.items():
        for k2, c2 in v.terms.items():
            if set(k1) & set(k2):
                continue
            key = k1 + k2
            c = c1 * c2
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
    return Multivector(u.frame, out)


def wedge_all(*vs: Multivector) -> Multivector:
    out = vs[0]
    for v in vs[1:]:
        out = wedge(out, v)
    return out


@dataclass
class FrameMap:
    """Linear map on covectors: source covector i ↦ Σ_j matrix[i][j] · target covector j."""

    source: Frame
    target: Frame
    matrix: List[List[object]]

    def apply(self, w: Multivector) -> Multivector:
        if w.frame.name != self.source.name:
            raise FrameError("frame map applied to a multivector of another frame")
        images = [Multivector(self.target, {(j,): c for j, c in enumerate(row) if not _zero(c)}) for row in self.matrix]
        out = Multivector(self.target)
        for key, c in w.terms.items():
            term = Multivector.scalar(self.target, c)
            for i in key:
                term = wedge(term, images[i])
            out = out + term
        return out

    def compose(self, other: "FrameMap") -> "FrameMap":
        """``self`` followed by ``other`` (covector level)."""
        if self.target.name != other.source.name:
            raise FrameError("incompatible frame maps")
        n, m, p = len(self.matrix), len(other.matrix), len(other.matrix[0])
        M = []
        for i in range(n):
            row = []
            for k in range(p):
                s = ZERO
                for j in range(m):
                    a, b = self.matrix[i][j], other.matrix[j][k]
                    if not _zero(a) and not _zero(b):
                        s = s + a * b
                row.append(s)
            M.append(row)
        return FrameMap(self.source, other.target, M)


def _covector_change(src: Frame, dst: Frame) -> FrameMap:
    """Express src covectors in dst covectors.

    If frame vectors satisfy f_i = Σ_x F[i][x] x, the dual covectors satisfy
    f^i = Σ_x (F^{-T})[i][x] x*. Composing two such relations gives the map.
    """
    # src^i = Σ_x A[i][x] x*, with A = inverse(F_src)ᵀ ; x* = Σ_j F_dst[j][x] dst^j
    Fs = [list(r) for r in src.rows]
    Fd = [list(r) for r in dst.rows]
    A = linalg.transpose(linalg.inverse(Fs))
    M = linalg.matmul(A, linalg.transpose(Fd))
    return FrameMap(src, dst, M)


def change_frame(w: Multivector, target: Frame) -> Multivector:
    if w.frame.name == target.name:
        return w
    return _covector_change(w.frame, target).apply(w)


# ----------------------------------------------------------------------------
# the k~ action and group pullbacks


def _in_k_tilde(X: LieElt) -> bool:
    return STD.k_tilde.contains(X)


def vector_action_matrix(X: LieElt, frame: Frame = BOREL) -> List[List[Scalar]]:
    """Matrix A with A[j][i] = frame-coordinate j of proj_b0([X, f_i])."""
    cols = []
    for i in range(frame.dim):
        img = STD.proj_b0(bracket(X, frame.vector(i)))
        cols.append(frame.coords_from_borel(img))
    return linalg.transpose(cols)


_KACT_CACHE: Dict[Tuple[LieElt, str], List[List[Scalar]]] = {}


def k_action_matrix(X: LieElt, frame: Frame = BOREL) -> List[List[Scalar]]:
    """Matrix of the coadjoint action on covectors: X·f^j = Σ_i M[j][i] f^i."""
    key = (X, frame.name)
    if key not in _KACT_CACHE:
        if not _in_k_tilde(X):
            raise ValueError(f"{X} is not in k~")
        A = vector_action_matrix(X, frame)
        _KACT_CACHE[key] = [[-A[j][i] for i in range(frame.dim)] for j in range(frame.dim)]
    return _KACT_CACHE[key]


def k_action(X: LieElt, w: Multivector) -> Multivector:
    """Derivation extension of the coadjoint action of X ∈ k~."""
    M = k_action_matrix(X, w.frame)
    images = [Multivector(w.frame, {(i,): c for i, c in enumerate(row) if c}) for row in M]
    out = Multivector(w.frame)
    for key, c in w.terms.items():
        for pos, j in enumerate(key):
            left = Multivector(w.frame, {key[:pos]: c})
            right = Multivector(w.frame, {key[pos + 1:]: ONE})
            out = out + wedge(wedge(left, images[j]), right)
    return out


def quotient_ad(g: Mat, Y: LieElt, ginv: Optional[Mat] = None) -> List:
    """Borel coordinates of proj_b0(g Y g⁻¹)."""
    if ginv is None:
        ginv = g.inverse()
    Z = LieElt(g * Y.mat * ginv, check=False)
    return STD.proj_b0(Z)


def ad_table(g: Mat, ginv: Optional[Mat] = None) -> List[List]:
    """Rows: Borel coordinates of quotient_ad(g, x) for x = a, h, n0, n1, n2, n3."""
    if ginv is None:
        ginv = g.inverse()
    return [quotient_ad(g, getattr(STD, x), ginv) for x in STD.borel_names]


def pullback_map(g: Mat, ginv: Optional[Mat] = None) -> FrameMap:
    """Covector map φ ↦ φ ∘ Ad_g on b0 ≅ g/k~ (Borel frame)."""
    T = ad_table(g, ginv)
    # (g*x^j)(x_i) = x^j(Ad x_i) = T[i][j]; so g*x^j = Σ_i T[i][j] x^i
    M = [[T[i][j] for i in range(6)] for j in range(6)]
    return FrameMap(BOREL, BOREL, M)


def pullback(g: Mat, w: Multivector, ginv: Optional[Mat] = None) -> Multivector:
    frame = w.frame
    wb = change_frame(w, BOREL)
    out = pullback_map(g, ginv).apply(wb)
    return change_frame(out, frame) if frame.name != "borel" else out


P_H_FRAME = ("a", "h", "n1", "n2")

# the O(2) reflection diag(1, -1) embedded as diag(A, ᵗA⁻¹), and diag(I₂, −I₂) (similitude −1)
M0 = Mat.diag(1, -1, 1, -1)
DIAG_I_MINUS_I = Mat.diag(1, 1, -1, -1)


def restrict(w: Multivector, keep: Iterable[str]) -> Multivector:
    """Drop every term that involves a covector outside ``keep``."""
    idx = {w.frame.index(l) for l in keep}
    return Multivector(w.frame, {k: c for k, c in w.terms.items() if set(k) <= idx})


# ----------------------------------------------------------------------------
# named forms


def named_forms() -> Dict[str, Multivector]:
    """The explicit forms used in the computations, each in its natural frame."""
    a, h, n0, n1, n2, n3 = (covector(x) for x in STD.borel_names)
    e = {x: covector(x, ROOT) for x in STD.root_frame_names}
    half = Fraction(1, 2)
    out = {
        "eta_2": e["-a-b"] ^ e["-a+b"],
        "eta_1": (e["-a-b"] ^ e["b"]) + (e["-b"] ^ e["-a+b"]),
        "eta_0": (e["-a-b"] ^ e["a+b"]) + (e["-b"] ^ e["b"]) * 2 + (e["a-b"] ^ e["-a+b"]),
        "eta_-1": (e["a-b"] ^ e["b"]) + (e["-b"] ^ e["a+b"]),
        "eta_-2": e["a-b"] ^ e["a+b"],
        "omega0": (h ^ n2) + (n0 ^ n3) * half + (a ^ n1),
        "eta^+": h + n0 * Scalar(0, half),
        "eta^-": h - n0 * Scalar(0, half),
        "eta_+": (n1 ^ n3) + (n1 ^ n2) * I,
        "eta_-": (n1 ^ n3) - (n1 ^ n2) * I,
        "eta^1": wedge_all(a, h, n1, n2),
        "eta^2": wedge_all(a, n0, n1 - n2, n3),
        "eta^2_printed": wedge_all(h, n0, n1 - n2, n3),
        "eta_o": a * 2,
    }
    return out


# ----------------------------------------------------------------------------
# k(θ) and the pullback scalars


def k_theta_halfangle(u: str = "u") -> Mat:
    """k(θ) = diag(k_θ, k_θ) with cos θ, sin θ rational in u = tan(θ/2)."""
    U = Poly.var(u)
    den = 1 + U * U
    c = RatFun(1 - U * U, den)
    s = RatFun(U * 2, den)
    z = RatFun(0)
    return Mat([[c, s, z, z], [-s, c, z, z], [z, z, c, s], [z, z, -s, c]])


def k_theta_symbolic(C: str = "C", S: str = "S") -> Tuple[Mat, Mat]:
    """k(θ) with cos θ = C, sin θ = S as free symbols, and its transpose as inverse."""
    c, s, z = Poly.var(C), Poly.var(S), Poly()
    g = Mat([[c, s, z, z], [-s, c, z, z], [z, z, c, s], [z, z, -s, c]])
    return g, g.T()


def reduce_double_angle(p: Poly, C: str = "C", S: str = "S", c2: str = "c", s2: str = "s") -> Poly:
    """Rewrite a homogeneous quadratic in (C, S) through cos 2θ, sin 2θ.

    C² ↦ (1+c)/2, S² ↦ (1−c)/2, CS ↦ s/2; constants are left alone, which is
    legitimate because C² + S² = 1 (a constant k stands for k(C² + S²)).
    """
    from .exactnum import as_poly

    p = as_poly(p)
    half = Fraction(1, 2)
    cp, sp = Poly.var(c2), Poly.var(s2)
    out = Poly()
    for mono, coef in p.terms.items():
        d = dict(mono)
        ec, es = d.pop(C, 0), d.pop(S, 0)
        rest = Poly({tuple(sorted(d.items())): coef})
        if (ec, es) == (0, 0):
            out = out + rest
        elif (ec, es) == (2, 0):
            out = out + rest * (cp + 1) * half
        elif (ec, es) == (0, 2):
            out = out + rest * (1 - cp) * half
        elif (ec, es) == (1, 1):
            out = out + rest * sp * half
        else:
            raise ValueError(f"not a homogeneous quadratic in {C}, {S}: {p}")
    return out


def ad_k_theta_cs_table() -> List[List[Poly]]:
    """Ad_{k(θ)} on b0 ≅ g/k~ in the Borel frame, entries polynomial in c = cos 2θ, s = sin 2θ."""
    g, ginv = k_theta_symbolic()
    T = ad_table(g, ginv)
    return [[reduce_double_angle(x) for x in row] for row in T]


def stated_ad_table() -> Dict[str, List[Poly]]:
    """Ad_{k(θ)} on b0 as displayed: image of each Borel element in Borel coordinates."""
    c, s, z, o = Poly.var("c"), Poly.var("s"), Poly(), Poly.const(1)
    return {
        "a": [o, z, z, z, z, z],
        "h": [z, c, -s, z, z, z],
        "n0": [z, z, o, z, z, z],
        "n1": [z, z, z, o, z, z],
        "n2": [z, z, z, z, c, -s],
        "n3": [z, z, z, z, -s, c],
    }


def stated_dual_table() -> Dict[str, List[Poly]]:
    """Ad*_{k(θ)} on b0* as displayed: image of each covector in Borel covector coordinates."""
    c, s, z, o = Poly.var("c"), Poly.var("s"), Poly(), Poly.const(1)
    return {
        "a": [o, z, z, z, z, z],
        "h": [z, c, z, z, z, z],
        "n0": [z, -s, o, z, z, z],
        "n1": [z, z, z, o, z, z],
        "n2": [z, z, z, z, c, -s],
        "n3": [z, z, z, z, -s, c],
    }


def dual_table_cs(table: List[List[Poly]]) -> Dict[str, List[Poly]]:
    """Pullback x^j ↦ x^j ∘ Ad = Σ_i table[i][j] x^i, keyed by covector name."""
    return {x: [as_poly(table[i][j]) for i in range(6)] for j, x in enumerate(STD.borel_names)}


def K_NAMES_OMEGA() -> Dict[str, LieElt]:
    """The four k-basis elements H, J, K1, K2."""
    return {"H": STD.H, "J": STD.J, "K1": STD.K1, "K2": STD.K2}


def double_angle_bindings(t: object) -> Dict[str, RatFun]:
    """c = cos 2θ and s = sin 2θ as rational functions of t = tan θ."""
    T = RatFun(1) * t
    one = RatFun(1)
    return {"c": (one - T * T) / (one + T * T), "s": (T * 2) / (one + T * T)}


def tan_theta_stated() -> RatFun:
    """tan θ = −r1 / (r2 δ)."""
    r1, r2, d = Poly.var("r1"), Poly.var("r2"), Poly.var("delta")
    return RatFun(-r1, r2 * d)


def stated_pullback_scalars() -> Tuple[RatFun, RatFun]:
    r1, r2, d = Poly.var("r1"), Poly.var("r2"), Poly.var("delta")
    den = (r1 * r1 + r2 * r2 * d * d) ** 2
    return RatFun((r1 * r1 - r2 * r2 * d * d) ** 2, den), RatFun((r1 * r2 * d * 2) ** 2, den)


def _pullback_cs(w: Multivector, table: List[List[Poly]]) -> Multivector:
    M = [[table[i][j] for i in range(6)] for j in range(6)]
    return FrameMap(BOREL, BOREL, M).apply(w)


def pullback_scalars_cs() -> Tuple[Poly, Poly]:
    """Coefficients against η¹ of the restricted pullbacks, as polynomials in (c, s)."""
    F = named_forms()
    table = ad_k_theta_cs_table()
    eta1 = F["eta^1"]
    out = []
    for name in ("eta^1", "eta^2"):
        r = restrict(_pullback_cs(F[name], table), P_H_FRAME)
        coef = r.coefficient("a", "h", "n1", "n2")
        if r != eta1.scale(coef):
            raise ValueError(f"restricted pullback of {name} is not a multiple of η¹")
        out.append(coef)
    return out[0], out[1]


def pullback_scalars() -> Tuple[RatFun, RatFun]:
    """(f1, f2) as rational functions of r1, r2, δ."""
    f1, f2 = pullback_scalars_cs()
    b = double_angle_bindings(tan_theta_stated())
    return _subs_cs(f1, b), _subs_cs(f2, b)


def _subs_cs(p: Poly, b: Mapping[str, RatFun]) -> RatFun:
    from .exactnum import poly_substitute

    binds = {v: b[v] for v in p.variables}
    return poly_substitute(p, binds) if binds else RatFun(p)


def identity_branch_scalars() -> Tuple[Scalar, Scalar]:
    """γ = 1: no rotation, just restriction."""
    F = named_forms()
    out = []
    for name in ("eta^1", "eta^2"):
        r = restrict(F[name], P_H_FRAME)
        out.append(r.coefficient("a", "h", "n1", "n2"))
    return out[0], out[1]


# ----------------------------------------------------------------------------
# weights of forms


def form_weight(w: Multivector) -> Optional[Weight]:
    """Weight (p, q) of a multivector under the coadjoint H, J action, or None."""
    lam = []
    for T in (STD.H, STD.J):
        img = k_action(T, w)
        c = None
        for k, v in w.terms.items():
            c = img.terms.get(k, ZERO) / v
            break
        if c is None:
            raise ValueError("weight of zero form")
        if img != w.scale(c):
            return None
        lam.append(c)
    return weight_from_eigenvalues(*lam)


def ch_weight(w: Multivector) -> Optional[Weight]:
    """Weight under H alone (the direction t ∩ k~_M), reported as (p, 0)."""
    img = k_action(STD.H, w)
    c = None
    for k, v in w.terms.items():
        c = img.terms.get(k, ZERO) / v
        break
    if c is None:
        raise ValueError("weight of zero form")
    if img != w.scale(c):
        return None
    return weight_from_eigenvalues(c, ZERO)


def u_star_weight_table() -> List[Tuple[str, Optional[Weight]]]:
    """H-weights of a weight basis of ∧²u*, u = span(n1, n2, n3)."""
    n1, n2, n3 = covector("n1"), covector("n2"), covector("n3")
    basis = {"n1*∧n2*": n1 ^ n2, "n1*∧n3*": n1 ^ n3, "n2*∧n3*": n2 ^ n3}
    # diagonalise H on the 3-dim space ∧²u*
    keys = [(3, 4), (3, 5), (4, 5)]
    cols = []
    for w in basis.values():
        img = k_action(STD.H, w)
        extra = [k for k in img.terms if k not in keys]
        if extra:
            raise ValueError("∧²u* is not H-stable")
        cols.append([img.terms.get(k, ZERO) for k in keys])
    A = linalg.transpose(cols)
    table = []
    for k in range(-4, 5):
        lam = Scalar(0, -k)
        for v in linalg.eigenspace(A, lam):
            form = Multivector(BOREL, {key: c for key, c in zip(keys, v)})
            table.append((str(form), weight_from_eigenvalues(lam, ZERO)))
    for name, w in basis.items():
        table.append((name, ch_weight(w)))
    return table
