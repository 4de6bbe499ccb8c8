"""The Lie algebra gsp4 = sp4 ⊕ z realised by exact 4×4 matrices.

Named elements follow the conventions fixed throughout the package:

* ``J2`` is the symplectic form [[0, I], [-I, 0]]; membership in gsp4 means
  ``Xᵀ J2 + J2 X = c J2`` for some scalar c (c = 0 for sp4).
* ``H = diag(J1, J1)`` and ``J = J2`` span the compact Cartan subalgebra t.
* ``a, h, n0, n1, n2, n3`` span the real Borel subalgebra b0.
* Weights are written (p, q) meaning ``[H, X] = -2pi X`` and ``[J, X] = -2qi X``.

Root vectors not written out by hand (E_{±α} in k and the p-root vectors)
are computed as exact eigenvectors and pinned by scaling the first non-zero
matrix entry (row-major) to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .exactnum import I, ONE, ZERO, Poly, RatFun, Scalar, as_scalar

__all__ = [
    "Mat",
    "LieElt",
    "Weight",
    "Subspace",
    "MembershipError",
    "bracket",
    "cartan_theta",
    "weight_of",
    "root_decompose",
    "verify_frame_change",
    "subalgebra_closed",
    "structure_dump",
    "h_subalgebra",
    "STD",
]


class MembershipError(ValueError):
    """A matrix that is not in gsp4 was used where a Lie algebra element was required."""


# ----------------------------------------------------------------------------
# matrices


class Mat:
    """Square matrix whose entries may be Scalar, Poly or RatFun."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        rows = tuple(tuple(_entry(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self.n = n

    @staticmethod
    def zero(n=4) -> "Mat":
        return Mat([[ZERO] * n for _ in range(n)])

    @staticmethod
    def eye(n=4) -> "Mat":
        return Mat([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def unit(i: int, j: int, n=4) -> "Mat":
        """Matrix unit E_ij with 1-based indices."""
        return Mat([[ONE if (r, c) == (i - 1, j - 1) else ZERO for c in range(n)] for r in range(n)])

    @staticmethod
    def diag(*d) -> "Mat":
        n = len(d)
        return Mat([[d[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def blocks(A, B, C, D) -> "Mat":
        """[[A, B], [C, D]] from 2×2 blocks given as nested lists."""
        top = [list(A[i]) + list(B[i]) for i in range(2)]
        bot = [list(C[i]) + list(D[i]) for i in range(2)]
        return Mat(top + bot)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.n == other.n and all(
            _eq(a, b) for a, b in zip(self.flat(), other.flat())
        )

    def __hash__(self):
        return hash(self.flat())

    def __bool__(self):
        return any(bool(x) for x in self.flat())

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            n = self.n
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    s = ZERO
                    for a, b in zip(r, c):
                        if a and b:
                            s = a * b if s is ZERO else s + a * b
                    row.append(s)
                out.append(row)
            return Mat(out)
        c = _entry(other)
        return Mat([[c * a for a in r] for r in self.rows])

    def __rmul__(self, other):
        c = _entry(other)
        return Mat([[c * a for a in r] for r in self.rows])

    def T(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def trace(self):
        s = ZERO
        for i in range(self.n):
            s = s + self.rows[i][i]
        return s

    def det(self):
        return _det([list(r) for r in self.rows])

    def inverse(self) -> "Mat":
        """Inverse via the adjugate; works for any entry type."""
        d = self.det()
        if not d:
            raise ZeroDivisionError("singular matrix")
        n = self.n
        M = [list(r) for r in self.rows]
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
                cof = _det(minor)
                if (i + j) % 2:
                    cof = -cof
                adj[j][i] = cof
        if isinstance(d, Scalar):
            dinv = d.inverse()
            return Mat([[x * dinv for x in r] for r in adj])
        return Mat([[RatFun(1) * x / d for x in r] for r in adj])

    def is_scalar_entries(self) -> bool:
        return all(isinstance(x, Scalar) for x in self.flat())

    def map(self, fn) -> "Mat":
        return Mat([[fn(x) for x in r] for r in self.rows])

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"

    __repr__ = __str__


def _entry(x):
    if isinstance(x, (Scalar, Poly, RatFun)):
        return x
    return as_scalar(x)


def _eq(a, b) -> bool:
    if isinstance(a, RatFun) or isinstance(b, RatFun):
        return not (RatFun(1) * a - b)
    d = a - b
    return not d


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = ZERO
    for j in range(n):
        a = M[0][j]
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = a * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


J2 = Mat.blocks([[0, 0], [0, 0]], [[1, 0], [0, 1]], [[-1, 0], [0, -1]], [[0, 0], [0, 0]])


def similitude_factor(X: Mat):
    """The scalar c with Xᵀ J2 + J2 X = c J2, or None if no such c exists."""
    M = X.T() * J2 + J2 * X
    c = M[0, 2]
    if M == J2 * c:
        return c
    return None


class LieElt:
    """An element of gsp4 (entries Scalar, or Poly/RatFun for parametrised elements)."""

    __slots__ = ("mat",)

    def __init__(self, mat, check: bool = True):
        if not isinstance(mat, Mat):
            mat = Mat(mat)
        if mat.n != 4:
            raise MembershipError("gsp4 elements are 4×4")
        if check and similitude_factor(mat) is None:
            raise MembershipError(f"not in gsp4: {mat}")
        self.mat = mat

    def __eq__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __bool__(self):
        return bool(self.mat)

    def __add__(self, other):
        return LieElt(self.mat + other.mat, check=False)

    def __sub__(self, other):
        return LieElt(self.mat - other.mat, check=False)

    def __neg__(self):
        return LieElt(-self.mat, check=False)

    def __mul__(self, c):
        return LieElt(self.mat * c, check=False)

    __rmul__ = __mul__

    def vector(self) -> Tuple[Scalar, ...]:
        return self.mat.flat()

    @staticmethod
    def from_vector(v) -> "LieElt":
        v = list(v)
        return LieElt(Mat([v[4 * i: 4 * i + 4] for i in range(4)]))

    def in_sp4(self) -> bool:
        c = similitude_factor(self.mat)
        return c is not None and not c

    def __str__(self):
        return str(self.mat)

    __repr__ = __str__


def bracket(X: LieElt, Y: LieElt) -> LieElt:
    for Z in (X, Y):
        if not isinstance(Z, LieElt):
            raise MembershipError("bracket needs LieElt arguments")
    return LieElt(X.mat * Y.mat - Y.mat * X.mat, check=False)


def cartan_theta(X: LieElt) -> LieElt:
    return LieElt(-X.mat.T(), check=False)


# ----------------------------------------------------------------------------
# weights


@dataclass(frozen=True, order=True)
class Weight:
    """p·α + q·β, stored as doubled integers so that half-integers are exact."""

    p2: int
    q2: int

    @staticmethod
    def of(p, q) -> "Weight":
        p, q = Fraction(p), Fraction(q)
        if (2 * p).denominator != 1 or (2 * q).denominator != 1:
            raise ValueError(f"weight ({p}, {q}) is not half-integral")
        return Weight(int(2 * p), int(2 * q))

    @property
    def p(self) -> Fraction:
        return Fraction(self.p2, 2)

    @property
    def q(self) -> Fraction:
        return Fraction(self.q2, 2)

    def __add__(self, other):
        return Weight(self.p2 + other.p2, self.q2 + other.q2)

    def __sub__(self, other):
        return Weight(self.p2 - other.p2, self.q2 - other.q2)

    def __neg__(self):
        return Weight(-self.p2, -self.q2)

    def is_zero(self) -> bool:
        return self.p2 == 0 and self.q2 == 0

    def __str__(self):
        return f"({self.p},{self.q})"

    def label(self) -> str:
        """Human-readable combination of α and β."""
        parts = []
        for coef, name in ((self.p, "α"), (self.q, "β")):
            if not coef:
                continue
            c = "" if abs(coef) == 1 else str(abs(coef))
            sign = "-" if coef < 0 else "+"
            parts.append((sign, c + name))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, t in parts[1:]:
            s += sign + t
        return s


def weight_from_eigenvalues(lam_h: Scalar, lam_j: Scalar) -> Optional[Weight]:
    """Convert ad(H), ad(J) eigenvalues into a lattice weight (None if off-lattice)."""
    p = lam_h / Scalar(0, -2)
    q = lam_j / Scalar(0, -2)
    if p.im or q.im:
        return None
    try:
        return Weight.of(p.re, q.re)
    except ValueError:
        return None


def eigenvalue_of_weight(w: Weight) -> Tuple[Scalar, Scalar]:
    return Scalar(0, -w.p2), Scalar(0, -w.q2)


# ----------------------------------------------------------------------------
# subspaces


@dataclass
class Subspace:
    basis: List[LieElt]
    label: str = ""

    def __post_init__(self):
        if self.basis and linalg.rank([b.vector() for b in self.basis]) != len(self.basis):
            raise ValueError(f"basis of {self.label or 'subspace'} is linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self):
        return [b.vector() for b in self.basis]

    def contains(self, X: LieElt) -> bool:
        if not self.basis:
            return not X
        return linalg.coordinates(self.vectors(), X.vector()) is not None

    def coords(self, X: LieElt):
        c = linalg.coordinates(self.vectors(), X.vector())
        if c is None:
            raise ValueError(f"{X} is not in {self.label}")
        return c

    def combine(self, coeffs) -> LieElt:
        out = Mat.zero()
        for c, b in zip(coeffs, self.basis):
            if c:
                out = out + b.mat * c
        return LieElt(out, check=False)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.basis + other.basis, f"{self.label}+{other.label}")


# ----------------------------------------------------------------------------
# the standard elements


def _m(rows) -> LieElt:
    return LieElt(Mat(rows))


class _Standard:
    """Container for the named elements and subspaces, built once."""

    def __init__(self):
        half = Fraction(1, 2)
        E = Mat.unit
        self.I4 = LieElt(Mat.eye())
        self.H = _m([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        self.J = LieElt(J2)
        self.K1 = LieElt(Mat.blocks([[0, 0], [0, 0]], [[1, 0], [0, -1]], [[-1, 0], [0, 1]], [[0, 0], [0, 0]]))
        self.K2 = LieElt(Mat.blocks([[0, 0], [0, 0]], [[0, 1], [1, 0]], [[0, -1], [-1, 0]], [[0, 0], [0, 0]]))
        self.a = LieElt(Mat.diag(1, 1, -1, -1))
        self.h = LieElt(Mat.diag(1, -1, -1, 1))
        self.n0 = LieElt(E(1, 2) - E(4, 3))
        self.n1 = LieElt(E(1, 3) + E(2, 4))
        self.n2 = LieElt(E(1, 3) - E(2, 4))
        self.n3 = LieElt(E(1, 4) + E(2, 3))

        self.k = Subspace([self.H, self.J, self.K1, self.K2], "k")
        self.z = Subspace([self.I4], "z")
        self.k_tilde = Subspace([self.H, self.J, self.K1, self.K2, self.I4], "k~")
        self.t = Subspace([self.H, self.J], "t")
        self.borel_names = ("a", "h", "n0", "n1", "n2", "n3")
        self.b0 = Subspace([getattr(self, x) for x in self.borel_names], "b0")
        self.u = Subspace([self.n1, self.n2, self.n3], "u")
        # p = {[[S1, S2], [S2, -S1]]} with S1, S2 symmetric
        sym = [[[1, 0], [0, 0]], [[0, 1], [1, 0]], [[0, 0], [0, 1]]]
        zero = [[0, 0], [0, 0]]
        neg = lambda S: [[-x for x in r] for r in S]
        pb = [LieElt(Mat.blocks(S, zero, zero, neg(S))) for S in sym]
        pb += [LieElt(Mat.blocks(zero, S, S, zero)) for S in sym]
        self.p = Subspace(pb, "p")
        self.g0 = Subspace(self.k.basis + self.p.basis, "g0")
        self.g = Subspace(self.g0.basis + [self.I4], "g")

        # frame change in b0, as coefficient rows over (a, h, n0, n1, n2, n3)
        i = I
        self.root_frame_names = ("-a-b", "-b", "a-b", "-a+b", "b", "a+b")
        self.root_frame_weights = {
            "-a-b": Weight.of(-1, -1), "-b": Weight.of(0, -1), "a-b": Weight.of(1, -1),
            "-a+b": Weight.of(-1, 1), "b": Weight.of(0, 1), "a+b": Weight.of(1, 1),
        }
        # the six combinations exactly as printed in the source
        printed = {
            "-a-b": (0, half, i, 0, i, -1),
            "a+b": (0, half, -i, 0, -i, -1),
            "a-b": (0, half, -i, 0, i, 1),
            "-a+b": (0, half, i, 0, -i, -1),
            "b": (half, 0, 0, -i, 0, 0),
            "-b": (half, 0, 0, i, 0, 0),
        }
        self.frame_change_printed = {k: tuple(as_scalar(x) for x in v) for k, v in printed.items()}
        # the printed e_{-α+β} carries the wrong sign on n3; the genuine weight
        # vector is the complex conjugate of e_{α-β}. Everything downstream uses
        # the corrected frame.
        self.frame_change = dict(self.frame_change_printed)
        self.frame_change["-a+b"] = tuple(as_scalar(x) for x in (0, half, i, 0, -i, 1))
        self.e = {k: self.b0.combine(v) for k, v in self.frame_change.items()}

        # projection gsp4 = b0 ⊕ k~ : coordinate functionals on the 16 entries
        full = self.b0.vectors() + self.k_tilde.vectors()
        self._split = linalg.left_inverse(full)

        # root vectors: p root spaces and V_{±α} in k, pinned
        self.roots: Dict[Weight, LieElt] = {}
        for w, sp in root_decompose(self.p, self.t).items():
            self.roots[w] = _pin(sp.basis[0])
        for w, sp in root_decompose(self.k, self.t).items():
            if not w.is_zero():
                self.roots[w] = _pin(sp.basis[0])
        self.alpha = Weight.of(1, 0)
        self.beta = Weight.of(0, 1)

    def split_coords(self, X: LieElt):
        """Coordinates of X in (a,h,n0,n1,n2,n3 | H,J,K1,K2,I); entries may be RatFun."""
        v = X.mat.flat()
        out = []
        for row in self._split:
            s = ZERO
            for c, x in zip(row, v):
                if c and x:
                    s = s + x * c
            out.append(s)
        return out

    def proj_b0(self, X: LieElt):
        """Coordinates of X modulo k~ in the Borel frame."""
        return self.split_coords(X)[:6]

    def root(self, p, q) -> LieElt:
        return self.roots[Weight.of(p, q)]

    def distinguished_basis(self) -> List[Tuple[str, LieElt]]:
        """H, J, the eight root vectors and the centre: 11 elements of gsp4."""
        out = [("H", self.H), ("J", self.J)]
        for name, (p, q) in (
            ("E_a", (1, 0)), ("E_-a", (-1, 0)),
            ("E_a+b", (1, 1)), ("E_-a-b", (-1, -1)),
            ("E_a-b", (1, -1)), ("E_-a+b", (-1, 1)),
            ("E_b", (0, 1)), ("E_-b", (0, -1)),
        ):
            out.append((name, self.root(p, q)))
        out.append(("Z", self.I4))
        return out


def _pin(X: LieElt) -> LieElt:
    for x in X.mat.flat():
        if x:
            return X * x.inverse()
    raise ValueError("cannot pin the zero vector")


# ----------------------------------------------------------------------------
# weight computations


def _ad_matrix(X: LieElt, space: Subspace) -> List[List[Scalar]]:
    """Matrix of ad(X) restricted to ``space`` (columns are images of basis vectors)."""
    L = linalg.left_inverse(space.vectors())
    cols = []
    for b in space.basis:
        img = bracket(X, b).vector()
        c = linalg.matvec(L, img)
        if space.combine(c) != bracket(X, b):
            raise ValueError(f"{space.label} is not ad-stable: [{X}, {b}] leaves it")
        cols.append(c)
    return linalg.transpose(cols)


def weight_of(X: LieElt, cartan: Optional[Subspace] = None, modulo: Optional[Subspace] = None) -> Optional[Weight]:
    """Weight of X under ad(H), ad(J), optionally in the quotient by ``modulo``.

    Returns None when X is not a simultaneous eigenvector (or the eigenvalues
    fall off the half-integer lattice). Raises for X = 0 (or X ∈ modulo).
    """
    S = STD
    if cartan is not None:
        names = [b for b in cartan.basis]
        if len(names) != 2 or names[0] != S.H or names[1] != S.J:
            raise ValueError("weight_of expects the Cartan subalgebra spanned by (H, J)")
    mod_vecs = modulo.vectors() if modulo is not None else []
    if not X or (mod_vecs and linalg.coordinates(mod_vecs, X.vector()) is not None):
        raise ValueError("weight of the zero element is undefined")
    eig = []
    for T in (S.H, S.J):
        Y = bracket(T, X).vector()
        # solve Y = c X + sum m_i M_i
        cols = [X.vector()] + mod_vecs
        sol = linalg.solve(linalg.transpose(cols), Y)
        if sol is None:
            return None
        eig.append(sol[0])
    return weight_from_eigenvalues(*eig)


def _candidate_eigenvalues(A) -> List[Scalar]:
    """Eigenvalue candidates -2pi·k/2 for the half-integer lattice, bounded by row sums."""
    bound = Fraction(0)
    for row in A:
        s = sum((abs(x.re) + abs(x.im) for x in row), Fraction(0))
        bound = max(bound, s)
    m = int(bound) + 1
    return [Scalar(0, -k) for k in range(-m, m + 1)]


def root_decompose(space: Subspace, cartan: Optional[Subspace] = None) -> Dict[Weight, Subspace]:
    """Simultaneous ad(H), ad(J) eigenspaces of an ad(t)-stable subspace."""
    S = STD if "STD" in globals() else None
    if S is not None:
        H, J = S.H, S.J
    else:  # during construction of STD
        H = _m([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        J = LieElt(J2)
    if cartan is not None and (cartan.dim != 2 or cartan.basis[0] != H or cartan.basis[1] != J):
        raise ValueError("root_decompose expects the Cartan subalgebra spanned by (H, J)")
    AH = _ad_matrix(H, space)
    AJ = _ad_matrix(J, space)
    n = space.dim
    out: Dict[Weight, Subspace] = {}
    total = 0
    for lh in _candidate_eigenvalues(AH):
        VH = linalg.eigenspace(AH, lh)
        if not VH:
            continue
        for lj in _candidate_eigenvalues(AJ):
            VJ = linalg.eigenspace(AJ, lj)
            common = linalg.intersect(VH, VJ)
            if not common:
                continue
            w = weight_from_eigenvalues(lh, lj)
            out[w] = Subspace([space.combine(c) for c in common], f"{space.label}_{w.label()}")
            total += len(common)
    if total != n:
        raise ValueError(f"{space.label} is not a direct sum of lattice weight spaces ({total} of {n})")
    return dict(sorted(out.items()))


@dataclass
class FrameChangeReport:
    weights: Dict[str, Optional[Weight]]
    expected: Dict[str, Weight]
    rank: int
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.rank == 6


def verify_frame_change(printed: bool = True) -> FrameChangeReport:
    """Check each frame vector is an ad(t)-eigenvector mod k~ of its stated weight.

    With ``printed=True`` the combinations are taken verbatim from the source;
    otherwise the corrected frame used by the rest of the package is checked.
    """
    S = STD
    table = S.frame_change_printed if printed else S.frame_change
    got = {}
    fails = []
    for name in S.root_frame_names:
        w = weight_of(S.b0.combine(table[name]), S.t, modulo=S.k_tilde)
        got[name] = w
        if w != S.root_frame_weights[name]:
            fails.append(f"e_{name}: expected {S.root_frame_weights[name]}, got {w}")
    r = linalg.rank([table[n] for n in S.root_frame_names])
    return FrameChangeReport(got, dict(S.root_frame_weights), r, fails)


def subalgebra_closed(space: Subspace) -> bool:
    vecs = space.vectors()
    for i, X in enumerate(space.basis):
        for Y in space.basis[i + 1:]:
            Z = bracket(X, Y)
            if Z and linalg.coordinates(vecs, Z.vector()) is None:
                return False
    return True


def h_subalgebra() -> Subspace:
    """t ⊕ V_{±(α+β)} ⊕ V_{±(α−β)}."""
    S = STD
    extra = [S.root(1, 1), S.root(-1, -1), S.root(1, -1), S.root(-1, 1)]
    return Subspace([S.H, S.J] + extra, "h")


def structure_constants(basis: Sequence[Tuple[str, LieElt]]):
    """All pairwise brackets as coefficient vectors in ``basis``."""
    vecs = [b.vector() for _, b in basis]
    L = linalg.left_inverse(vecs)
    table = {}
    for i, (ni, X) in enumerate(basis):
        for j, (nj, Y) in enumerate(basis):
            c = linalg.matvec(L, bracket(X, Y).vector())
            table[(ni, nj)] = c
    return table


def structure_dump() -> dict:
    """JSON-ready dump of the distinguished basis, brackets and pinned E_{±α}."""
    S = STD
    basis = S.distinguished_basis()
    table = structure_constants(basis)
    names = [n for n, _ in basis]
    return {
        "basis": [{"name": n, "matrix": [[x.to_json() for x in r] for r in X.mat.rows]} for n, X in basis],
        "brackets": [
            {"left": a, "right": b, "coefficients": [x.to_json() for x in table[(a, b)]]}
            for a in names for b in names
        ],
        "pinned": {
            "E_a": [[x.to_json() for x in r] for r in S.root(1, 0).mat.rows],
            "E_-a": [[x.to_json() for x in r] for r in S.root(-1, 0).mat.rows],
            "rule": "first non-zero entry in row-major order scaled to 1",
        },
    }


STD = _Standard()
