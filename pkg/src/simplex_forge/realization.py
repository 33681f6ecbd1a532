"""Vectors of prescribed lengths that close up and span ``R^n``.

Given ``n+1`` positive numbers obeying the strict simplex inequalities, build
a chain of points ``P_0 .. P_n`` (``P_n`` at the origin) whose consecutive
gaps have those lengths.  Dimension is raised one step at a time: the last two
lengths are merged into an auxiliary length, the shorter chain is built in one
dimension less, and the final point is lifted off that hyperplane by a
prescribed dihedral angle.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (AngleDegenerate, ArityTooSmall, DimensionMismatch,
                     InfeasibleInput, NonPositiveLength)
from .loops import Role, Loop

FEASIBILITY_REL = 1e-12
FEASIBILITY_ABS = 1e-300
MIN_ABS_SINE = 1e-9
DEFAULT_ANGLE = math.pi / 2

UNITS = ("normal", "facet")
ORIENTATIONS = ("positive", "any")
POLICIES = ("midpoint", "random")


def _validate_lengths(lengths):
    z = [float(x) for x in lengths]
    if len(z) < 3:
        raise ArityTooSmall(f"need at least 3 lengths, got {len(z)}")
    for i, x in enumerate(z):
        if not (math.isfinite(x) and x > 0.0):
            raise NonPositiveLength(f"length {i} is {x!r}; lengths must be positive and finite")
    return z


def _validate_angles(angles, n):
    a = [float(x) for x in angles]
    if len(a) != n - 2:
        raise DimensionMismatch(f"dimension {n} takes {n - 2} angles, got {len(a)}")
    for k, x in enumerate(a, start=2):
        if not math.isfinite(x) or abs(math.sin(x)) <= MIN_ABS_SINE:
            raise AngleDegenerate(
                f"angle alpha_{k} = {x!r} has vanishing sine; the lifted point "
                "would stay in the hyperplane")
    return a


@dataclass(frozen=True)
class VolumeSpec:
    """Target facet sizes for an ``n``-simplex, ``n = len(lengths) - 1``.

    ``unit="normal"`` means lengths of facet normals (parallelotope volumes);
    ``unit="facet"`` means actual facet volumes, i.e. normal length divided by
    ``(n-1)!``.  ``angles`` are the ``n-2`` dihedral parameters, defaulting to
    right angles.
    """

    lengths: tuple
    angles: tuple = None
    unit: str = "normal"
    orientation: str = "positive"

    def __post_init__(self):
        z = _validate_lengths(self.lengths)
        n = len(z) - 1
        if n > linalg.MAX_DIM:
            raise DimensionMismatch(f"dimension {n} exceeds {linalg.MAX_DIM}")
        angles = [DEFAULT_ANGLE] * (n - 2) if self.angles is None else self.angles
        if self.unit not in UNITS:
            raise ValueError(f"unit must be one of {UNITS}, got {self.unit!r}")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {self.orientation!r}")
        object.__setattr__(self, "lengths", tuple(z))
        object.__setattr__(self, "angles", tuple(_validate_angles(angles, n)))

    @property
    def n(self):
        return len(self.lengths) - 1

    @property
    def unit_factor(self):
        """Multiplier taking lengths in ``unit`` to facet-normal lengths."""
        return float(math.factorial(self.n - 1)) if self.unit == "facet" else 1.0

    @property
    def normal_lengths(self):
        f = self.unit_factor
        return tuple(x * f for x in self.lengths)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    margin: float
    violating_index: int = None


@dataclass(frozen=True)
class PointChain:
    points: np.ndarray
    permutation: tuple = field(default=())


def check_inequalities(lengths):
    """Strict simplex inequalities ``2 * max < sum``; margin is ``sum - 2*max``."""
    z = _validate_lengths(lengths)
    total = math.fsum(z)
    k = max(range(len(z)), key=z.__getitem__)
    margin = total - 2.0 * z[k]
    feasible = margin > FEASIBILITY_REL * total + FEASIBILITY_ABS
    return FeasibilityReport(feasible=feasible, margin=margin,
                             violating_index=None if feasible else k)


def _require_sorted_feasible(z):
    if any(b < a for a, b in zip(z, z[1:])):
        raise ValueError("lengths must be sorted ascending")
    report = check_inequalities(z)
    if not report.feasible:
        raise InfeasibleInput(
            f"simplex inequality fails at index {report.violating_index} "
            f"(margin {report.margin:.17g})")


def choose_reduced_length(sorted_lengths, policy="midpoint", rng=None):
    """Auxiliary length replacing the last two entries one dimension down.

    With ``z`` sorted and ``n = len(z) - 1 >= 3``, the value lies strictly in
    ``(max(z[n-2], z[n] - z[n-1]), min(z[0] + ... + z[n-2], z[n]))``; when
    ``z[n-2] == z[n]`` the three largest agree and ``z[n]`` itself is used.
    ``policy="random"`` samples the interval with ``rng`` (a numpy Generator).
    """
    z = _validate_lengths(sorted_lengths)
    n = len(z) - 1
    if n < 3:
        raise ArityTooSmall(f"reduction needs n >= 3, got n = {n}")
    _require_sorted_feasible(z)
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}, got {policy!r}")
    if z[n - 2] == z[n]:
        return z[n]
    lo = max(z[n - 2], z[n] - z[n - 1])
    hi = min(math.fsum(z[:n - 1]), z[n])
    if not lo < hi:
        raise InfeasibleInput(f"empty interval ({lo!r}, {hi!r}) for the reduced length")
    if policy == "midpoint":
        return 0.5 * (lo + hi)
    if rng is None:
        raise ValueError("policy 'random' needs an rng")
    while True:
        x = float(rng.uniform(lo, hi))
        if lo < x < hi:
            return x


def _triangle_apex(base, to_far, to_origin):
    """Foot distance along the base and height of a triangle's apex.

    The base runs from the origin with length ``base``; the apex sits at
    ``to_origin`` from the origin and ``to_far`` from the far end.
    """
    foot = (to_origin ** 2 - to_far ** 2 + base ** 2) / (2.0 * base)
    height_sq = (to_origin - foot) * (to_origin + foot)
    return foot, math.sqrt(max(height_sq, 0.0))


def _chain(z, angles, policy, rng):
    n = len(z) - 1
    if n == 2:
        x, y = _triangle_apex(z[0], z[1], z[2])
        return [np.array([z[0], 0.0]), np.array([x, y])]
    reduced = z[:n - 1] + [choose_reduced_length(z, policy, rng)]
    points = [np.append(p, 0.0) for p in _chain(reduced, angles[:-1], policy, rng)]
    hinge = points[-1]          # P_{n-2}
    wing = points[-2]           # P_{n-3}
    span = float(np.linalg.norm(hinge))
    axis = hinge / span
    in_plane = wing - (wing @ axis) * axis
    in_plane /= np.linalg.norm(in_plane)
    fresh = np.zeros(n)
    fresh[-1] = 1.0
    foot, height = _triangle_apex(span, z[n - 1], z[n])
    alpha = angles[-1]
    points.append(foot * axis + height * (math.cos(alpha) * in_plane + math.sin(alpha) * fresh))
    return points


def construct_points(sorted_lengths, angles=None, policy="midpoint", rng=None):
    """Points ``P_0 .. P_n`` with ``|P_k - P_{k-1}| = z_k`` and ``P_n = P_{-1} = 0``.

    ``P_k`` has a nonzero coordinate ``k+1`` and zeros after it.
    """
    z = _validate_lengths(sorted_lengths)
    n = len(z) - 1
    a = _validate_angles([DEFAULT_ANGLE] * (n - 2) if angles is None else angles, n)
    _require_sorted_feasible(z)
    pts = _chain(z, a, policy, rng)
    pts = [np.pad(p, (0, n - p.size)) for p in pts]
    pts.append(np.zeros(n))
    return PointChain(points=np.vstack(pts), permutation=tuple(range(n + 1)))


def realize_facet_vectors(spec, policy="midpoint", rng=None):
    """A spanning facet loop whose vector lengths match ``spec``.

    Lengths are sorted for the construction and the result is returned in the
    caller's order.  With ``orientation="positive"`` the last coordinate is
    mirrored when needed so that the main determinant is positive.
    """
    target = list(spec.normal_lengths)
    report = check_inequalities(target)
    if not report.feasible:
        raise InfeasibleInput(
            f"simplex inequality fails at index {report.violating_index} "
            f"(margin {report.margin:.17g})")
    n = spec.n
    perm = np.argsort(target, kind="stable")
    chain = construct_points([target[i] for i in perm], spec.angles, policy, rng)
    pts = chain.points
    sorted_vectors = pts[:n] - np.vstack([pts[n], pts[:n - 1]])
    sorted_vectors = np.vstack([sorted_vectors, pts[n] - pts[n - 1]])
    z = np.empty_like(sorted_vectors)
    z[perm] = sorted_vectors
    det = linalg.determinant(z[1:].T)
    if spec.orientation == "positive" and det < 0.0:
        z[:, -1] *= -1.0
        det = -det
    if linalg.is_singular(z[1:].T, det):
        raise InfeasibleInput("lengths too close to the feasibility boundary; "
                              "realized vectors do not span")
    return Loop(z, Role.FACET)
