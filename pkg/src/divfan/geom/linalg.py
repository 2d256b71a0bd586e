"""Exact linear algebra over Q, plus the integer lattice utilities the
downgrade machinery needs.

Vectors are tuples of Fraction, matrices are row-major tuples of vectors.
No floats anywhere; the only non-rational values the package ever touches
are the +-inf sentinels in polyhedron.eval_min, and those never enter
arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


class SpaceMismatchError(TypeError):
    """Raised when vectors tagged with the same character lattice are paired."""


def vec(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def zero(dim: int) -> Vec:
    return (Fraction(0),) * dim


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def smul(c, u: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def is_zero(u: Vec) -> bool:
    return all(a == 0 for a in u)


def primitive(u) -> Vec:
    """Positive rescale to a primitive integer vector. Direction-preserving,
    so safe for rays; use primitive_signed for lines and hyperplane normals."""
    u = vec(u)
    if is_zero(u):
        return u
    den = 1
    for a in u:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in u]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return tuple(Fraction(a // g) for a in ints)


def primitive_signed(u) -> Vec:
    """Primitive rescale with the first nonzero coordinate positive.
    Canonical representative of a line through the origin."""
    p = primitive(u)
    for a in p:
        if a != 0:
            return neg(p) if a < 0 else p
    return p


def rref(rows) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form over Q; zero rows dropped.

    Returns (reduced rows, pivot columns). The output is the canonical basis
    of the row space, which is what every canonicalization below leans on.
    """
    work = [list(vec(r)) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        work[r] = [a / pv for a in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows, dim: int) -> Mat:
    """Canonical basis of {x : rows @ x = 0} in Q^dim."""
    red, pivots = rref(rows)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * dim
        x[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return tuple(primitive_signed(b) for b in basis)


def solve(rows, b) -> Vec | None:
    """One exact solution of rows @ x = b, or None."""
    rows = mat(rows)
    b = vec(b)
    if not rows:
        return zero(0) if is_zero(b) else None
    dim = len(rows[0])
    aug = [list(r) + [bv] for r, bv in zip(rows, b)]
    red, pivots = rref(aug)
    x = [Fraction(0)] * dim
    for row, pc in zip(red, pivots):
        if pc == dim:
            return None
        x[pc] = row[dim]
    return tuple(x)


def matvec(rows: Mat, x) -> Vec:
    return tuple(dot(r, x) for r in rows)


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def reduce_mod_rows(v, red: Mat, pivots) -> Vec:
    """Subtract the row-space component determined by pivot coordinates.
    red must come from rref. Canonical coset representative."""
    x = list(vec(v))
    for row, pc in zip(red, pivots):
        if x[pc] != 0:
            f = x[pc]
            x = [a - f * b for a, b in zip(x, row)]
    return tuple(x)


# --- integer lattice layer ------------------------------------------------

def _as_int_matrix(a) -> list[list[int]]:
    out = []
    for row in a:
        r = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError("integer matrix expected")
            r.append(int(f))
        out.append(r)
    return out


def hermite_columns(a) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite form: returns (H, U) with A @ U = H, U unimodular,
    H lower column echelon with positive pivots. Deterministic."""
    A = _as_int_matrix(a)
    m = len(A)
    n = len(A[0]) if A else 0
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def colop_swap(j, k):
        for i in range(m):
            A[i][j], A[i][k] = A[i][k], A[i][j]
        for i in range(n):
            U[i][j], U[i][k] = U[i][k], U[i][j]

    def colop_addmul(j, k, q):
        # col_j += q * col_k
        for i in range(m):
            A[i][j] += q * A[i][k]
        for i in range(n):
            U[i][j] += q * U[i][k]

    def colop_negate(j):
        for i in range(m):
            A[i][j] = -A[i][j]
        for i in range(n):
            U[i][j] = -U[i][j]

    k = 0
    for i in range(m):
        if k >= n:
            break
        # euclid across columns k..n-1 on row i
        while True:
            nz = [j for j in range(k, n) if A[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(A[i][j]))
            if jmin != k:
                colop_swap(k, jmin)
            if A[i][k] < 0:
                colop_negate(k)
            done = True
            for j in range(k + 1, n):
                if A[i][j] != 0:
                    q = A[i][j] // A[i][k]
                    colop_addmul(j, k, -q)
                    if A[i][j] != 0:
                        done = False
            if done:
                break
        if A[i][k] != 0:
            # reduce earlier pivot columns against this one for determinism
            for j in range(k):
                q = A[i][j] // A[i][k]
                if q:
                    colop_addmul(j, k, -q)
            k += 1
    return A, U


def int_kernel_basis(a) -> Mat:
    """Basis of the integer kernel lattice {x in Z^n : A x = 0}, columns of U
    past the pivot block, sign-normalized (first nonzero positive)."""
    A = _as_int_matrix(a)
    n = len(A[0]) if A else 0
    H, U = hermite_columns(a)
    r = rank(mat(a)) if A else 0
    cols = []
    for j in range(r, n):
        col = tuple(Fraction(U[i][j]) for i in range(n))
        cols.append(primitive_signed(col))
    return tuple(cols)


def int_section(a) -> Mat | None:
    """Right inverse over Z: S with A @ S = I, or None when A is not a
    surjection of lattices. Hermite based, deterministic."""
    A = _as_int_matrix(a)
    m = len(A)
    H, U = hermite_columns(a)
    # need the pivot block to be unit lower triangular on the first m columns
    for i in range(m):
        if i >= len(H[0]) or H[i][i] == 0:
            return None
    det = 1
    for i in range(m):
        det *= H[i][i]
    if abs(det) != 1:
        return None
    # S = U[:, :m] @ H_block^{-1}
    n = len(U)
    Hb = tuple(tuple(Fraction(H[i][j]) for j in range(m)) for i in range(m))
    # invert lower triangular with unit +-1 diagonal by forward substitution
    inv_cols = []
    for e in range(m):
        x = [Fraction(0)] * m
        for i in range(m):
            s = Fraction(1 if i == e else 0)
            s -= sum((Hb[i][j] * x[j] for j in range(i)), Fraction(0))
            x[i] = s / Hb[i][i]
        inv_cols.append(tuple(x))
    Hinv = transpose(tuple(inv_cols))
    Ucols = tuple(tuple(Fraction(U[i][j]) for j in range(m)) for i in range(n))
    S = matmul(Ucols, Hinv)
    for row in S:
        for x in row:
            if x.denominator != 1:
                return None
    return S


def int_solve(a, b) -> Vec | None:
    """Integral solution of A x = b, or None.

    A U = H with U unimodular; the nonzero columns of H generate the image
    lattice, so b lies in it iff the triangular solve H y = b is integral,
    and then x = U y. Solutions of H y = b are unique off the zero columns,
    so rref's particular solution (free components zero) decides it.
    """
    A = mat(a)
    n = len(A[0]) if A else 0
    H, U = hermite_columns(a)
    y = solve(mat(H), b)
    if y is None:
        return None
    xi = tuple(
        sum((Fraction(U[i][j]) * y[j] for j in range(n)), Fraction(0))
        for i in range(n)
    )
    if all(c.denominator == 1 for c in xi):
        return xi
    return None
