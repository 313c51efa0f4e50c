"""Small dense complex linear algebra on mpmath matrices.

Everything here works on matrices of modest size (the chain complexes and
Fox-derivative blocks are at most 12x12), so plain LU determinants and a
full SVD for null spaces are entirely adequate.
"""

from mpmath import mp, mpf, mpc

from . import DEFAULT_PRECISION
from .numerics import working, to_mpc


class SingularBasisError(ValueError):
    """Candidate basis vectors do not span (basis-change determinant ~ 0)."""


def cmatrix(rows, prec: int = DEFAULT_PRECISION):
    """Build an mpmath matrix from nested lists of complex-like entries."""
    with working(prec):
        return mp.matrix([[to_mpc(e) for e in row] for row in rows])


def identity(n, prec: int = DEFAULT_PRECISION):
    with working(prec):
        return mp.eye(n)


def zeros(n, m, prec: int = DEFAULT_PRECISION):
    with working(prec):
        return mp.zeros(n, m)


def det(M, prec: int = DEFAULT_PRECISION):
    with working(prec):
        return mpc(mp.det(M))


def inv2(M):
    """Inverse of a unit-determinant 2x2 matrix: [[d,-b],[-c,a]]."""
    return mp.matrix([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])


def frobenius_norm(M, prec: int = DEFAULT_PRECISION):
    with working(prec):
        return mp.sqrt(mp.fsum(abs(M[i, j]) ** 2
                               for i in range(M.rows) for j in range(M.cols)))


def mat_residual(A, B, prec: int = DEFAULT_PRECISION):
    """Frobenius norm of A - B, subtracted at the stated precision.

    (mpmath matrix subtraction rounds entries at the ambient context first,
    so naive ``A - B`` at low ambient precision destroys tiny residuals.)
    """
    with working(prec):
        return frobenius_norm(A - B, prec)


def mat_max(M) -> mpf:
    return max(abs(M[i, j]) for i in range(M.rows) for j in range(M.cols))


def kernel_basis(M, tol, prec: int = DEFAULT_PRECISION):
    """Orthonormal basis of the numerical null space of ``M``.

    Singular directions with singular value <= tol * sigma_max count as
    kernel (every direction, if the matrix is zero).  Returns a list of
    column matrices; empty when M has full column rank.
    """
    with working(prec):
        A = M.copy()
        n = A.cols
        if A.rows < n:
            # pad with zero rows; mpmath's svd wants rows >= cols
            P = mp.zeros(n, n)
            for i in range(A.rows):
                for j in range(n):
                    P[i, j] = A[i, j]
            A = P
        U, S, V = mp.svd(A)
        smax = max(S[i] for i in range(S.rows)) if S.rows else mpf(0)
        kernel = []
        for i in range(n):
            if S[i] <= tol * smax or smax == 0:
                # rows of V are the (conjugated) right singular vectors
                vec = mp.matrix([mp.conj(V[i, j]) for j in range(n)])
                kernel.append(vec)
        return kernel


def basis_change_det(vectors, tol, prec: int = DEFAULT_PRECISION):
    """Determinant of the matrix whose columns are the given vectors.

    The vectors are expressed in the standard (reference) basis, so this is
    the basis-change determinant [vectors | standard].  Raises
    SingularBasisError when |det| <= tol, which signals a bad lift or a bad
    choice of complement vectors.
    """
    with working(prec):
        n = len(vectors)
        cols = []
        for v in vectors:
            col = [to_mpc(v[i]) for i in range(n)] if not isinstance(v, (list, tuple)) \
                else [to_mpc(e) for e in v]
            cols.append(col)
        M = mp.matrix(n)
        for j, col in enumerate(cols):
            if len(col) != n:
                raise ValueError("basis vectors must match the ambient dimension")
            for i in range(n):
                M[i, j] = col[i]
        d = mpc(mp.det(M))
        if abs(d) <= tol:
            raise SingularBasisError("basis change matrix is singular")
        return d


def columns(M):
    """Columns of a matrix as a list of column matrices."""
    return [M[:, j] for j in range(M.cols)]


def stack_columns(cols, prec: int = DEFAULT_PRECISION):
    """Matrix with the given column vectors (each indexable of equal length)."""
    with working(prec):
        n = len(cols[0])
        M = mp.zeros(n, len(cols))
        for j, c in enumerate(cols):
            for i in range(n):
                M[i, j] = to_mpc(c[i])
        return M
