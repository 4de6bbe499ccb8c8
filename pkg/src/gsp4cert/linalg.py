"""Exact linear algebra over Q(i).

Vectors are tuples of :class:`Scalar`; matrices are lists of rows. All
routines are plain Gaussian elimination, which is plenty for the sizes that
occur here (at most a few hundred columns).
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .exactnum import ONE, ZERO, Scalar, as_scalar

Vector = Tuple[Scalar, ...]
Matrix = List[List[Scalar]]


def vec(xs) -> Vector:
    return tuple(as_scalar(x) for x in xs)


def zeros(n: int) -> Vector:
    return tuple(ZERO for _ in range(n))


def vadd(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence[Scalar]) -> Vector:
    c = as_scalar(c)
    return tuple(c * a for a in u)


def is_zero_vec(u: Sequence[Scalar]) -> bool:
    return not any(u)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(p):
            s = ZERO
            for k in range(m):
                a = Ai[k]
                if a:
                    b = B[k][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> Vector:
    out = []
    for row in A:
        s = ZERO
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return tuple(out)


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in zip(*A)] if A else []


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def rref(rows: Sequence[Sequence[Scalar]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(rows)[1])


def nullspace(A: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> List[Vector]:
    """Basis of {x : A x = 0}, one vector per free column (free entry set to 1)."""
    if not A:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    n = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> Optional[Vector]:
    """One solution of A x = b, or None when inconsistent."""
    n = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [ZERO] * n
    for row, p in zip(R, piv):
        x[p] = row[n]
    return tuple(x)


def coordinates(basis: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Optional[Vector]:
    """Coordinates of ``v`` in the (independent) list ``basis``, or None if outside the span."""
    if not basis:
        return () if is_zero_vec(v) else None
    A = transpose(basis)
    return solve(A, v)


def inverse(A: Sequence[Sequence[Scalar]]) -> Matrix:
    n = len(A)
    aug = [list(r) + list(e) for r, e in zip(A, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def left_inverse(basis: Sequence[Sequence[Scalar]]) -> Matrix:
    """Matrix L with L · (sum c_i b_i) = c for vectors in the span of ``basis``.

    Rows of the result are linear functionals on the ambient space, obtained
    from the pivot coordinates of the basis.
    """
    A = transpose(basis)  # ambient x k
    k = len(basis)
    R, piv = rref([list(b) for b in basis])
    if len(piv) != k:
        raise ValueError("basis is linearly dependent")
    # the k x k submatrix of A on the pivot rows is invertible
    sub = [A[p] for p in piv]
    subinv = inverse(sub)
    n = len(A)
    out = []
    for i in range(k):
        row = [ZERO] * n
        for j, p in enumerate(piv):
            row[p] = subinv[i][j]
        out.append(row)
    return out


def proportional(u: Sequence[Scalar], v: Sequence[Scalar]) -> Optional[Scalar]:
    """Return c with u = c·v when v ≠ 0 and such c exists, else None."""
    c = None
    for a, b in zip(u, v):
        if b:
            c = a / b
            break
    if c is None:
        return None
    for a, b in zip(u, v):
        if a != c * b:
            return None
    return c


def eigenspace(A: Sequence[Sequence[Scalar]], lam: Scalar) -> List[Vector]:
    n = len(A)
    shifted = [[A[i][j] - (lam if i == j else ZERO) for j in range(n)] for i in range(n)]
    return nullspace(shifted, n)


def intersect(U: Sequence[Vector], V: Sequence[Vector]) -> List[Vector]:
    """Basis of span(U) ∩ span(V)."""
    if not U or not V:
        return []
    # solve sum a_i u_i - sum b_j v_j = 0
    cols = [list(u) for u in U] + [[-x for x in v] for v in V]
    sols = nullspace(transpose(cols), len(cols))
    out = []
    for s in sols:
        w = zeros(len(U[0]))
        for a, u in zip(s[: len(U)], U):
            if a:
                w = vadd(w, vscale(a, u))
        out.append(w)
    R, _ = rref(out) if out else ([], [])
    return [tuple(r) for r in R]
