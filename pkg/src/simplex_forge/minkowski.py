"""Recover a simplex from its facet normals, and the lengths-to-simplex pipeline."""
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NotPositive, RoundTripFailure
from .loops import Role, complete_from_main, facet_normals, similarity_scale
from .realization import realize_facet_vectors

ROUND_TRIP_TOL = 1e-7


@dataclass(frozen=True)
class RealizationResult:
    vertices: object
    facet_loop: object
    det_vertex: float
    facet_lengths: tuple
    length_error: float
    closure_defect: float
    round_trip_error: float


@dataclass(frozen=True)
class VerificationReport:
    max_relative_error: float
    length_ratios: tuple
    closure_defect: float
    det_sign: int
    det_vertex: float


def invert_facet_map(z, verify=True):
    """The barycentre-zero vertex loop whose facet normals are ``z``.

    One more application of the facet-normal map to ``z`` (read as a vertex
    loop) gives the wanted simplex scaled by ``(n+1)**(n-1) * det(V)**(n-2)``,
    and ``det(V)`` is the positive ``(n-1)``-th root of ``det(Z)`` over ``n+1``.
    """
    n = z.n
    det_z = linalg.determinant(z.main)
    if not det_z > 0.0:
        raise NotPositive(f"facet loop main determinant {det_z:.3e} is not positive")
    a = linalg.ones_plus_identity(n)
    scaled = linalg.cofactor_matrix(z.main @ a)
    det_v = det_z ** (1.0 / (n - 1)) / (n + 1)
    main = scaled / similarity_scale(n, det_v)
    # Degeneracy is judged on the recovered simplex: the facet loop's own
    # det/Hadamard ratio is roughly the simplex's raised to the power n-1.
    if linalg.is_singular(main):
        raise NotPositive(f"facet loop with determinant {det_z:.3e} is numerically degenerate")
    v = complete_from_main(main.T, Role.VERTEX)
    if verify:
        err = linalg.relative_error(facet_normals(v).main, z.main)
        if err > ROUND_TRIP_TOL:
            raise RoundTripFailure(f"recomputed facet normals off by {err:.3e} relative")
    return v


def _round_trip_error(v, z):
    return linalg.relative_error(facet_normals(v).vectors, z.vectors)


def realize_simplex(spec, policy="midpoint", rng=None):
    """Build a positive simplex whose facet sizes are ``spec.lengths``."""
    z = realize_facet_vectors(spec, policy=policy, rng=rng)
    v = invert_facet_map(z)
    check = verify_realization(v, spec)
    return RealizationResult(
        vertices=v,
        facet_loop=z,
        det_vertex=check.det_vertex,
        facet_lengths=tuple(r * t for r, t in zip(check.length_ratios, spec.lengths)),
        length_error=check.max_relative_error,
        closure_defect=check.closure_defect,
        round_trip_error=_round_trip_error(v, z),
    )


def verify_realization(v, target):
    """Recompute facet normals of ``v`` and compare their sizes to ``target``.

    Sizes are compared in the target's unit.  ``length_ratios`` are measured
    over requested values.
    """
    z = facet_normals(v)
    measured = np.linalg.norm(z.vectors, axis=1) / target.unit_factor
    wanted = np.asarray(target.lengths)
    ratios = measured / wanted
    det_v = linalg.determinant(v.main)
    return VerificationReport(
        max_relative_error=float(np.max(np.abs(ratios - 1.0))),
        length_ratios=tuple(float(r) for r in ratios),
        closure_defect=z.closure_defect(),
        det_sign=int(math.copysign(1, det_v)) if det_v != 0.0 else 0,
        det_vertex=det_v,
    )
