"""Loops of ``n+1`` vectors in ``R^n`` summing to zero, and the maps between them.

A vertex loop holds the position vectors of a simplex whose barycentre is the
origin.  The edge map sends it to consecutive edge vectors, and the facet map
sends edge vectors to inward facet normals (scaled to parallelotope volume).
The *main part* of a loop is its last ``n`` vectors, packed as matrix columns.
"""
import enum
from dataclasses import InitVar, dataclass

import numpy as np

from . import linalg
from .errors import ClosureViolation, CrossCheckFailure, DimensionMismatch

#: Closure defect allowed relative to the largest vector norm.
CLOSURE_TOL = 1e-9


class Role(str, enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    FACET = "facet"


@dataclass(frozen=True, eq=False)
class Loop:
    """Validated loop; ``vectors`` has shape ``(n+1, n)``, one vector per row.

    The role is metadata only.  Maps accept any role, since a facet loop may
    be reinterpreted as the vertex loop of a new simplex.  ``scale`` overrides
    the magnitude closure is measured against (default: largest vector norm).
    """

    vectors: np.ndarray
    role: Role = Role.VERTEX
    scale: InitVar[float] = None

    def __post_init__(self, scale):
        vs = np.array(self.vectors, dtype=float)
        if vs.ndim != 2 or vs.shape[0] != vs.shape[1] + 1:
            raise DimensionMismatch(
                f"a loop needs n+1 vectors of dimension n, got shape {vs.shape}")
        linalg._check_dim(vs.shape[1])
        if not np.all(np.isfinite(vs)):
            raise DimensionMismatch("loop has non-finite coordinates")
        vs.flags.writeable = False
        object.__setattr__(self, "vectors", vs)
        object.__setattr__(self, "role", Role(self.role))
        defect = self.closure_defect()
        scale = max(self.max_norm(), scale or 0.0, np.finfo(float).tiny)
        if defect > CLOSURE_TOL * scale:
            raise ClosureViolation(
                f"vector sum has norm {defect:.3e} against scale {scale:.3e}")

    @property
    def n(self):
        return self.vectors.shape[1]

    @property
    def main(self):
        """Main part as an ``(n, n)`` matrix with columns ``v_1 .. v_n``."""
        return self.vectors[1:].T.copy()

    def __len__(self):
        return self.vectors.shape[0]

    def __getitem__(self, i):
        return self.vectors[i]

    def max_norm(self):
        return float(np.max(np.linalg.norm(self.vectors, axis=1)))

    def closure_defect(self):
        return float(np.linalg.norm(self.vectors.sum(axis=0)))

    def as_role(self, role):
        """Same vectors under another role tag; no revalidation."""
        other = object.__new__(Loop)
        object.__setattr__(other, "vectors", self.vectors)
        object.__setattr__(other, "role", Role(role))
        return other

    def tolist(self):
        return self.vectors.tolist()


@dataclass(frozen=True)
class LoopClass:
    det_main: float
    affine_independent: bool
    positive: bool


@dataclass(frozen=True)
class SimilarityReport:
    kappa: float
    residual: float


def make_loop(vs, role=Role.VERTEX):
    rows = [linalg.as_vector(v) for v in vs]
    dims = {r.size for r in rows}
    if len(dims) != 1:
        raise DimensionMismatch(f"ragged vector dimensions {sorted(dims)}")
    return Loop(np.vstack(rows), role)


def complete_from_main(main, role=Role.VERTEX):
    """Build the loop whose last ``n`` vectors are ``main`` (given as vectors)."""
    rows = [linalg.as_vector(v) for v in main]
    if not rows:
        raise DimensionMismatch("main part is empty")
    if any(r.size != len(rows) for r in rows):
        raise DimensionMismatch(
            f"main part needs n vectors of dimension n, got {[r.size for r in rows]}")
    body = np.vstack(rows)
    return Loop(np.vstack([-body.sum(axis=0), body]), role)


def edge_map(v):
    """``w_0 = v_0 - v_n`` and ``w_i = v_i - v_{i-1}``."""
    vs = v.vectors
    return Loop(vs - np.roll(vs, 1, axis=0), Role.EDGE)


def edge_map_inverse(w):
    """The unique barycentre-zero vertex loop whose edge loop is ``w``."""
    ws = w.vectors
    n = w.n
    weights = (n + 1 - np.arange(1, n + 1)) / (n + 1)
    v0 = -(weights[:, None] * ws[1:]).sum(axis=0)
    body = v0 + np.cumsum(ws[1:], axis=0)
    return Loop(np.vstack([v0, body]), Role.VERTEX)


def facet_map_by_definition(w):
    """Facet normals straight from generalised vector products of edges.

    ``z_p = -[w_0 .. w_n without w_p, w_{p+1}]`` for ``p < n`` and
    ``z_n = (-1)**(n+1) [w_1 .. w_{n-1}]``.  Returns an ``(n+1, n)`` array
    without checking closure.
    """
    ws = w.vectors
    n = w.n
    z = np.empty_like(ws)
    for p in range(n):
        rest = [ws[i] for i in range(n + 1) if i not in (p, p + 1)]
        z[p] = -linalg.vector_product(rest)
    z[n] = (-1) ** (n + 1) * linalg.vector_product(ws[1:n])
    return z


def _cumulative_main(w):
    return np.cumsum(w.vectors[1:], axis=0).T


def facet_map(w, crosscheck=__debug__):
    """Facet loop of an edge loop.

    The main part comes from the cofactor matrix of the cumulative edge sums
    ``(w_1, w_1+w_2, ..., w_1+...+w_n)``; ``z_0`` is taken from its own vector
    product so that closure of the result is a genuine check.
    """
    main = linalg.cofactor_matrix(_cumulative_main(w))
    z0 = -linalg.vector_product(w.vectors[2:])
    z = np.vstack([z0, main.T])
    operand_scale = w.max_norm() ** (w.n - 1)
    if crosscheck:
        _crosscheck(z, facet_map_by_definition(w), operand_scale, "facet map")
    return Loop(z, Role.FACET, operand_scale)


def _crosscheck(fast, slow, operand_scale, what):
    # Scaled by operand size: on degenerate input both outputs are rounding noise.
    scale = max(linalg.max_abs(fast), linalg.max_abs(slow), operand_scale,
                np.finfo(float).tiny)
    err = linalg.max_abs(fast - slow) / scale
    if err > linalg.REL_TOL:
        raise CrossCheckFailure(f"{what}: routes disagree by {err:.3e} relative")


def facet_normals(v, crosscheck=__debug__):
    """Inward facet normals of the simplex with vertex loop ``v``."""
    z = facet_map(edge_map(v), crosscheck=crosscheck)
    if crosscheck:
        shifted = v.main @ linalg.ones_plus_identity(v.n)
        _crosscheck(z.main, linalg.cofactor_matrix(shifted),
                    linalg.max_column_norm(shifted) ** (v.n - 1), "facet normals vs c(V A)")
    return z


def similarity_scale(n, det_main):
    return float((n + 1) ** (n - 1) * det_main ** (n - 2))


def similarity_iterate(v, crosscheck=__debug__):
    """Apply the facet-normal map twice, the facet loop read as a vertex loop.

    The result is the original simplex scaled about the origin by
    ``(n+1)**(n-1) * det(main)**(n-2)``; the report carries that factor and the
    measured deviation from it.
    """
    z = facet_normals(v, crosscheck=crosscheck).as_role(Role.VERTEX)
    zz = facet_normals(z, crosscheck=crosscheck).as_role(Role.VERTEX)
    kappa = similarity_scale(v.n, linalg.determinant(v.main))
    residual = linalg.max_abs(zz.main - kappa * v.main)
    return zz, SimilarityReport(kappa=kappa, residual=residual)


def classify(loop):
    main = loop.main
    det = linalg.determinant(main)
    independent = not linalg.is_singular(main, det)
    return LoopClass(det_main=det, affine_independent=independent,
                     positive=independent and det > 0.0)
