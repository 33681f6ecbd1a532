"""Dense small-dimension linear algebra.

Matrices are ``(n, n)`` float arrays read column-wise: column ``j`` is the
``j``-th vector of whatever tuple the matrix packs.  Vectors are 1-d arrays.
All functions are pure and never mutate their arguments.
"""
import numpy as np

from .errors import DimensionMismatch

MIN_DIM = 2
MAX_DIM = 12

#: ``|det M| <= DEGENERACY_EPS * prod(column norms)`` counts as singular.  The
#: product is Hadamard's bound on ``|det M|``, so the test is scale-invariant
#: per column.
DEGENERACY_EPS = 1e-12
#: Relative tolerance for matrix/vector identity checks.
REL_TOL = 1e-9


def _check_dim(n):
    if not MIN_DIM <= n <= MAX_DIM:
        raise DimensionMismatch(
            f"dimension {n} outside supported range [{MIN_DIM}, {MAX_DIM}]")


def as_vector(x, n=None):
    v = np.array(x, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-d vector, got shape {v.shape}")
    if n is not None and v.size != n:
        raise DimensionMismatch(f"expected dimension {n}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise DimensionMismatch("vector has non-finite coordinates")
    return v


def as_matrix(m):
    """Validate and copy a square matrix with finite entries, 2 <= n <= 12."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    _check_dim(a.shape[0])
    if not np.all(np.isfinite(a)):
        raise DimensionMismatch("matrix has non-finite entries")
    return a


def column_matrix(vectors):
    """Pack ``n`` vectors of dimension ``n`` as the columns of a matrix."""
    cols = [as_vector(v) for v in vectors]
    if not cols or any(c.size != len(cols) for c in cols):
        raise DimensionMismatch(
            f"need n vectors of dimension n, got {[c.size for c in cols]}")
    return as_matrix(np.column_stack(cols))


def ones_plus_identity(n):
    """The matrix ``E + ones``: 2 on the diagonal, 1 elsewhere."""
    return np.eye(n) + np.ones((n, n))


def determinant(m):
    # LAPACK getrf: LU with partial pivoting.
    return float(np.linalg.det(as_matrix(m)))


def max_column_norm(m):
    m = np.asarray(m, dtype=float)
    return float(np.max(np.linalg.norm(m, axis=0))) if m.size else 0.0


def degeneracy_threshold(m):
    m = np.asarray(m, dtype=float)
    return DEGENERACY_EPS * float(np.prod(np.linalg.norm(m, axis=0)))


def is_singular(m, det=None):
    if det is None:
        det = determinant(m)
    return abs(det) <= degeneracy_threshold(m)


def _signed_minors(a, rows_out, cols_out):
    """Signed determinants of ``a`` with one row and one column removed."""
    nr, nc = a.shape
    stack = np.empty((len(rows_out), len(cols_out), nr - 1, nc - 1))
    for s, i in enumerate(rows_out):
        reduced = np.delete(a, i, axis=0)
        for t, j in enumerate(cols_out):
            stack[s, t] = np.delete(reduced, j, axis=1)
    signs = (-1.0) ** np.add.outer(np.asarray(rows_out), np.asarray(cols_out))
    return signs * np.linalg.det(stack)


def cofactor_matrix(m):
    """Matrix of signed ``(n-1)``-minors, normalised by ``c(M) M^T = det(M) E``.

    Entry ``(i, j)`` is ``(-1)**(i+j)`` times the minor obtained by deleting
    row ``i`` and column ``j``.  Computed entrywise, so singular inputs are
    handled without dividing by the determinant.
    """
    a = as_matrix(m)
    n = a.shape[0]
    idx = list(range(n))
    return _signed_minors(a, idx, idx)


def vector_product(ws):
    """Generalised cross product of ``n-1`` vectors in ``R^n``.

    Returns the unique ``r`` with ``dot(x, r) == det(x, w_1, ..., w_{n-1})``
    for every ``x``; for ``n = 3`` this is the usual cross product.
    """
    cols = [as_vector(w) for w in ws]
    if not cols:
        raise DimensionMismatch("vector product needs at least one vector")
    n = len(cols) + 1
    if any(c.size != n for c in cols):
        raise DimensionMismatch(
            f"{len(cols)} vectors must each have dimension {n}, "
            f"got {[c.size for c in cols]}")
    _check_dim(n)
    w = np.column_stack(cols)
    # Cofactor expansion of det(x, w_1, ..., w_{n-1}) along its first column.
    stack = np.stack([np.delete(w, i, axis=0) for i in range(n)])
    out = np.linalg.det(stack)
    out[1::2] *= -1.0
    return out


def max_abs(x):
    x = np.asarray(x, dtype=float)
    return float(np.max(np.abs(x))) if x.size else 0.0


def relative_error(actual, expected, scale=None):
    """``max|actual - expected|`` divided by ``scale`` (default: largest operand)."""
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    diff = max_abs(actual - expected)
    if scale is None:
        scale = max(max_abs(actual), max_abs(expected))
    if scale == 0.0:
        return diff
    return diff / scale
