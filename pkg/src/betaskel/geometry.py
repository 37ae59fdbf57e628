"""Metric arithmetic, shortest-path sets, and cross (arm) predicates.

All geometric predicates work on plain coordinate tuples so hot paths can
avoid object overhead; ``Point``/``PointSet`` wrap coordinates with stable
ids at the API boundary.

Terminology used throughout the package:

* the *shortest-path set* ``S(v1, v2)`` is the union of all metric
  shortest paths between two points: a coordinate bounding box under L1,
  a polyhedron with diagonal edges under Linf;
* the *cross* ``T(v1, v2)`` is the set of points whose line in one of the
  metric's arm directions meets ``S``.  Linf has one direction per
  diagonal sign vector (2^(d-1) of them), L1 one per coordinate axis.
  Each direction splits into a ``+`` and a ``-`` arm on either side of
  ``S``.  Candidate lens centers for the equidistant regimes live on
  these arms.

Boundary points of arms count as members (closed arms).  All comparisons
of derived reals use the absolute tolerance ``EPS``; integer or dyadic
inputs keep every predicate exact in double precision.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence

from .errors import InputError

EPS = 1e-9

Coords = tuple[float, ...]


class Metric(str, Enum):
    L1 = "l1"
    LINF = "linf"


def dist(p: Sequence[float], q: Sequence[float], metric: Metric) -> float:
    """Metric distance between two coordinate vectors."""
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    if metric is Metric.L1:
        return sum(abs(a - b) for a, b in zip(p, q))
    return max(abs(a - b) for a, b in zip(p, q))


def sq_euclid(p: Sequence[float], q: Sequence[float]) -> float:
    """Squared Euclidean distance; the tie-break scalar for lens selection."""
    return sum((a - b) ** 2 for a, b in zip(p, q))


def midpoint(p: Sequence[float], q: Sequence[float]) -> Coords:
    return tuple((a + b) / 2 for a, b in zip(p, q))


def in_shortest_path_set(
    p: Sequence[float],
    v1: Sequence[float],
    v2: Sequence[float],
    metric: Metric,
    eps: float = EPS,
) -> bool:
    """True iff p lies on some metric shortest path from v1 to v2."""
    if tuple(v1) == tuple(v2):
        raise ValueError("degenerate pair: v1 == v2")
    return dist(v1, p, metric) + dist(p, v2, metric) <= dist(v1, v2, metric) + eps


@dataclass(frozen=True)
class Direction:
    """One arm direction of the cross T(v1, v2).

    Exactly one of ``signs`` (Linf: a sign vector with first component +1)
    and ``axis`` (L1: a 0-based coordinate index) is set.
    """

    signs: Optional[tuple[int, ...]] = None
    axis: Optional[int] = None

    def __post_init__(self) -> None:
        if (self.signs is None) == (self.axis is None):
            raise ValueError("exactly one of signs/axis must be set")
        if self.signs is not None and self.signs[0] != 1:
            raise ValueError("Linf sign vectors are normalized to start with +1")


@dataclass(frozen=True)
class Arm:
    """A direction together with the side of S it lies on.

    ``side`` is '+', '-' or None; None means the queried point is inside
    S itself (the cross core), where sides are undefined.
    """

    direction: Direction
    side: Optional[str]


CORE = "core"


def cross_directions(dim: int, metric: Metric) -> list[Direction]:
    """All arm directions for the given dimension: 2^(d-1) for Linf, d for L1."""
    if dim < 2:
        raise ValueError(f"dimension must be >= 2, got {dim}")
    if metric is Metric.L1:
        return [Direction(axis=k) for k in range(dim)]
    dirs = []
    for bits in range(1 << (dim - 1)):
        signs = (1,) + tuple(1 if not (bits >> (dim - 2 - i)) & 1 else -1 for i in range(dim - 1))
        dirs.append(Direction(signs=signs))
    return dirs


def cross_arms(
    p: Sequence[float],
    v1: Sequence[float],
    v2: Sequence[float],
    metric: Metric,
    eps: float = EPS,
) -> list[Arm]:
    """All arms of T(v1, v2) containing p (closed membership).

    Points inside S belong to every direction trivially and get
    ``side=None``.  Points outside T get an empty list.
    """
    if tuple(v1) == tuple(v2):
        raise ValueError("degenerate pair: v1 == v2")
    arms = []
    if metric is Metric.LINF:
        for direction in cross_directions(len(p), metric):
            signs = direction.signs
            assert signs is not None
            span = _linf_span(p, v1, v2, signs, eps)
            if span is None:
                continue
            t_lo, t_hi = span
            if t_hi < -eps:
                side: Optional[str] = "+"
            elif t_lo > eps:
                side = "-"
            else:
                side = None
            arms.append(Arm(direction, side))
        return arms
    lo = [min(a, b) for a, b in zip(v1, v2)]
    hi = [max(a, b) for a, b in zip(v1, v2)]
    for direction in cross_directions(len(p), metric):
        k = direction.axis
        assert k is not None
        if any(not (lo[j] - eps <= p[j] <= hi[j] + eps) for j in range(len(p)) if j != k):
            continue
        if p[k] > hi[k] + eps:
            side = "+"
        elif p[k] < lo[k] - eps:
            side = "-"
        else:
            side = None
        arms.append(Arm(direction, side))
    return arms


def _linf_span(
    p: Sequence[float],
    v1: Sequence[float],
    v2: Sequence[float],
    signs: Sequence[int],
    eps: float,
) -> Optional[tuple[float, float]]:
    """Parameter interval of S-membership along the line p + t*signs, or None.

    With b_i = s_i*(v1_i - p_i) and c_i = s_i*(v2_i - p_i), the point at
    parameter t is at Linf distance max|b_i - t| from v1 and max|c_i - t|
    from v2; the sum is <= d(v1,v2) exactly on the returned interval.  The
    membership inequalities are relaxed by eps (closed-arm convention).
    """
    d = dist(v1, v2, Metric.LINF)
    bs = [s * (a - x) for s, a, x in zip(signs, v1, p)]
    cs = [s * (a - x) for s, a, x in zip(signs, v2, p)]
    bmin, bmax = min(bs), max(bs)
    cmin, cmax = min(cs), max(cs)
    if cmax - bmin > d + eps or bmax - cmin > d + eps:
        return None
    return ((bmax + cmax - d) / 2, (bmin + cmin + d) / 2)


def in_cross(
    p: Sequence[float],
    v1: Sequence[float],
    v2: Sequence[float],
    metric: Metric,
    eps: float = EPS,
):
    """Locate p relative to the cross T(v1, v2).

    Returns the string ``"core"`` for points inside S(v1, v2), an ``Arm``
    (first containing arm in canonical direction order) for points on an
    arm proper, or None for points outside T entirely.
    """
    if in_shortest_path_set(p, v1, v2, metric, eps):
        return CORE
    for arm in cross_arms(p, v1, v2, metric, eps):
        if arm.side is not None:
            return arm
    return None


def sphere_union_decomposition_check(
    v1: Sequence[float],
    v2: Sequence[float],
    metric: Metric,
    samples: int,
    seed: int = 0,
    eps: float = EPS,
) -> bool:
    """Sampled check that S(v1,v2) is the union of C(v1,r) ∩ C(v2,d-r).

    Draws random probe points and radii and verifies, in both directions,
    that membership in some sphere-pair intersection coincides with the
    shortest-path-set predicate.  Returns True iff no counterexample is
    found.
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    rng = random.Random(seed)
    d = dist(v1, v2, metric)
    dim = len(v1)
    lo = [min(a, b) - d for a, b in zip(v1, v2)]
    hi = [max(a, b) + d for a, b in zip(v1, v2)]

    probes = [tuple(v1), tuple(v2), midpoint(v1, v2)]
    while len(probes) < samples:
        probes.append(tuple(rng.uniform(lo[i], hi[i]) for i in range(dim)))
    for p in probes:
        r = dist(v1, p, metric)
        # p sits on C(v1, r) by construction; it also sits on C(v2, d-r)
        # exactly when the distances to the endpoints sum to d.
        on_pair = r <= d + eps and abs(dist(p, v2, metric) - (d - r)) <= eps
        if on_pair != in_shortest_path_set(p, v1, v2, metric, eps):
            return False

    for _ in range(samples):
        r = rng.uniform(0.0, d)
        vec = [rng.uniform(-1.0, 1.0) for _ in range(dim)]
        norm = dist(vec, [0.0] * dim, metric)
        if norm < 1e-12:
            continue
        p = tuple(a + x * (r / norm) for a, x in zip(v1, vec))
        if abs(dist(p, v2, metric) - (d - r)) <= eps:
            if not in_shortest_path_set(p, v1, v2, metric, eps):
                return False
    return True


@dataclass(frozen=True)
class Point:
    """A point with a stable non-negative integer id."""

    id: int
    coords: Coords


class PointSet:
    """An immutable collection of points sharing one dimension.

    Rejects duplicate ids and duplicate coordinate vectors at
    construction: a duplicated point would make every lens of its twin
    nonempty and the edge definition ambiguous for ties.
    """

    def __init__(self, points: Sequence[Point]):
        if not points:
            raise InputError("point set is empty")
        dim = len(points[0].coords)
        if dim < 2:
            raise InputError(f"dimension must be >= 2, got {dim}")
        seen_ids: set[int] = set()
        seen_coords: set[Coords] = set()
        for pt in points:
            if not isinstance(pt.id, int) or pt.id < 0:
                raise InputError(f"point id must be a non-negative integer, got {pt.id!r}")
            if len(pt.coords) != dim:
                raise InputError(
                    f"point {pt.id}: expected {dim} coordinates, got {len(pt.coords)}"
                )
            if any(not math.isfinite(c) for c in pt.coords):
                raise InputError(f"point {pt.id}: non-finite coordinate")
            if pt.id in seen_ids:
                raise InputError(f"duplicate point id {pt.id}")
            if pt.coords in seen_coords:
                raise InputError(f"duplicate coordinates {pt.coords} (point {pt.id})")
            seen_ids.add(pt.id)
            seen_coords.add(pt.coords)
        self._points = tuple(points)
        self.dim = dim

    @classmethod
    def from_coords(
        cls, coords: Sequence[Sequence[float]], ids: Optional[Sequence[int]] = None
    ) -> "PointSet":
        if ids is None:
            ids = range(len(coords))
        return cls([Point(i, tuple(float(x) for x in c)) for i, c in zip(ids, coords)])

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def ids(self) -> list[int]:
        return [p.id for p in self._points]

    def coords(self) -> list[Coords]:
        return [p.coords for p in self._points]

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)
