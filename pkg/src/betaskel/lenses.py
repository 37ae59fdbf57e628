"""Per-pair minimal lens enumeration for every beta regime.

An edge (v1, v2) of a beta-skeleton exists iff at least one valid
neighborhood region ("lens") of the pair contains no other input point.
The valid regions form a continuum parametrized by the admissible disc
centers, but each (beta, metric, variant) case admits a constant-size
set of *minimal* lenses whose emptiness decides the edge.  This module
enumerates those minimal lenses exactly, for d in {2, 3}.

Regimes (dispatch on beta and variant):

* EquidistantSmall (beta < 1, both variants): discs of radius
  d/(2*beta) whose boundaries pass through both endpoints; centers are
  the equidistant locus outside S, meeting the cross T in opposite-arm
  pairs; minimal lenses come from the maximally separated pairs.
* Unit (beta = 1): both discs have radius d/2 and the admissible
  centers form a box/segment/point inside S; extreme corners pair with
  their central reflections.
* AsymmetricMid (1 < beta < 2, lens): each center is at distance
  beta*d/2 from one endpoint and (1-beta/2)*d from the other; the locus
  is a box (Linf) or a plane section of the bounding box (L1); farthest
  corners from the midpoint pair with their reflections.
* RNG (beta = 2, lens): the unique lens with centers at the endpoints.
* AsymmetricLarge (beta > 2, lens): the small sphere of radius
  (beta/2-1)*d around one endpoint is internally tangent to the big one;
  candidates are the far-face vertices of the small sphere, one lens per
  opposing-arm family (no separation filter).
* CircleLarge (beta > 1, circle variant): the region is the *union* of
  the two discs of radius beta*d/2 through both endpoints; minimal
  unions come from the closest opposite-arm center pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math
from typing import Optional, Sequence

from .errors import InternalError, UnsupportedError
from .geometry import EPS, Metric, cross_directions, dist, sq_euclid
from .pieces import (
    Coords,
    Piece,
    clip_piece,
    closest_pairs,
    dedupe_vertices,
    farthest_pairs,
)

CenterPair = tuple[Coords, Coords]


class Variant(str, Enum):
    LENS = "lens"
    CIRCLE = "circle"


class Mode(str, Enum):
    INTERSECTION = "intersection"
    UNION = "union"


class Regime(Enum):
    EQUIDISTANT_SMALL = "equidistant-small"
    UNIT = "unit"
    ASYMMETRIC_MID = "asymmetric-mid"
    RNG = "rng"
    ASYMMETRIC_LARGE = "asymmetric-large"
    CIRCLE_LARGE = "circle-large"


@dataclass(frozen=True)
class Lens:
    """One candidate neighborhood region of a point pair."""

    c1: Coords
    c2: Coords
    r1: float
    r2: float
    metric: Metric
    mode: Mode
    pair: tuple[Coords, Coords]
    beta: float


def regime_of(beta: float, variant: Variant) -> Regime:
    """Total dispatch from (beta, variant) to the lens-construction regime."""
    if not math.isfinite(beta) or beta <= 0:
        raise ValueError(f"beta must be positive and finite, got {beta}")
    if beta < 1:
        return Regime.EQUIDISTANT_SMALL
    if beta == 1:
        return Regime.UNIT
    if variant is Variant.CIRCLE:
        return Regime.CIRCLE_LARGE
    if beta < 2:
        return Regime.ASYMMETRIC_MID
    if beta == 2:
        return Regime.RNG
    return Regime.ASYMMETRIC_LARGE


def point_in_lens(p: Sequence[float], lens: Lens, eps: float = EPS) -> bool:
    """Closed-region membership; boundary points count as inside."""
    in1 = dist(p, lens.c1, lens.metric) <= lens.r1 + eps
    if lens.mode is Mode.UNION:
        return in1 or dist(p, lens.c2, lens.metric) <= lens.r2 + eps
    return in1 and dist(p, lens.c2, lens.metric) <= lens.r2 + eps


def point_blocks_lens(p: Sequence[float], lens: Lens, eps: float = EPS) -> bool:
    """Strict-interior membership: the test that disqualifies a lens.

    Edge decisions treat boundary contact as non-blocking.  With closed
    blocking, a third point exactly tangent to every valid region kills
    the edge at one beta while a strictly empty lens survives at a
    larger beta, breaking the monotone nesting of lens-based edge sets;
    integer inputs hit such ties routinely.  Strict blocking restores
    nesting, and the endpoints (always on both boundaries) never block.
    """
    in1 = dist(p, lens.c1, lens.metric) < lens.r1 - eps
    if lens.mode is Mode.UNION:
        return in1 or dist(p, lens.c2, lens.metric) < lens.r2 - eps
    return in1 and dist(p, lens.c2, lens.metric) < lens.r2 - eps


# ---------------------------------------------------------------------------
# equidistant center locus (beta < 1 and the circle-based beta > 1 family)


def _check_dim(dim: int) -> None:
    if dim < 2:
        raise ValueError(f"dimension must be >= 2, got {dim}")
    if dim > 3:
        raise UnsupportedError(
            f"exact lens enumeration supports d in {{2, 3}}, got d={dim}"
        )


def _gaps(v1: Coords, v2: Coords) -> tuple[list[float], list[int]]:
    gaps = [abs(a - b) for a, b in zip(v1, v2)]
    eta = [1 if b >= a else -1 for a, b in zip(v1, v2)]
    return gaps, eta


def _linf_arm_constraints(v1: Coords, v2: Coords, signs: Sequence[int]) -> list[tuple[Coords, float]]:
    """Half-spaces of the arm polyhedron T_sigma (both opposite arms plus core).

    p is in T_sigma iff for all coordinate pairs (i, j):
    s_i(v2_i - p_i) - s_j(v1_j - p_j) <= D and s_i(v1_i - p_i) - s_j(v2_j - p_j) <= D.
    Bounds carry a roundoff-sized slack: boundary pieces routinely touch the
    polyhedron faces exactly, and a non-dyadic radius (R = beta * D / 2) makes
    the touching coordinates inexact, so exact clipping would drop them.  The
    slack stays far below the dedupe quantum so admitted slivers collapse.
    """
    d = dist(v1, v2, Metric.LINF)
    dim = len(v1)
    slack = 1e-12 * max(1.0, d, max(abs(x) for x in v1), max(abs(x) for x in v2))
    cons: list[tuple[Coords, float]] = []
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            coef = [0.0] * dim
            coef[i] = -float(signs[i])
            coef[j] = float(signs[j])
            cons.append((tuple(coef), d - signs[i] * v2[i] + signs[j] * v1[j] + slack))
            cons.append((tuple(coef), d - signs[i] * v1[i] + signs[j] * v2[j] + slack))
    return cons


def _axis_piece(pin: dict[int, float], lo: list[float], hi: list[float]) -> Piece:
    """A point/segment/rectangle piece: pinned coords fixed, rest spanning [lo, hi]."""
    dim = len(lo)
    free = [f for f in range(dim) if f not in pin]
    if not free:
        return [tuple(pin[i] for i in range(dim))]
    if len(free) == 1:
        f = free[0]
        a = [pin.get(i, 0.0) for i in range(dim)]
        b = list(a)
        a[f], b[f] = lo[f], hi[f]
        return dedupe_vertices([tuple(a), tuple(b)])
    f1, f2 = free
    corners = []
    for x, y in ((lo[f1], lo[f2]), (hi[f1], lo[f2]), (hi[f1], hi[f2]), (lo[f1], hi[f2])):
        c = [pin.get(i, 0.0) for i in range(dim)]
        c[f1], c[f2] = x, y
        corners.append(tuple(c))
    return dedupe_vertices(corners)


ArmKey = tuple[object, str]  # (signs tuple | axis int, '+'/'-')


def _linf_locus_pieces(v1: Coords, v2: Coords, radius: float, eps: float) -> list[Piece]:
    """Raw pieces of the Linf equidistant locus E(radius), unclipped.

    E(radius) decomposes into mixed edges (one coordinate pinned at the
    v1-sphere, another at the v2-sphere) plus, for every zero-gap
    coordinate, two full faces of the bounding box of the sphere
    intersection; the band of the axis-parallel case arises from the
    latter.  Generic d=3 pairs yield a closed curve of 6 box edges.
    """
    dim = len(v1)
    gaps, eta = _gaps(v1, v2)
    lo = [max(a, b) - radius for a, b in zip(v1, v2)]
    hi = [min(a, b) + radius for a, b in zip(v1, v2)]
    nonzero = [i for i in range(dim) if gaps[i] > eps]
    zero = [i for i in range(dim) if gaps[i] <= eps]

    raw: list[Piece] = []
    for i in nonzero:
        for j in nonzero:
            if i == j:
                continue
            raw.append(_axis_piece({i: v1[i] + eta[i] * radius, j: v2[j] - eta[j] * radius}, lo, hi))
    for k in zero:
        for sgn in (1.0, -1.0):
            raw.append(_axis_piece({k: v1[k] + sgn * radius}, lo, hi))
    return raw


def _linf_equidistant_pieces(
    v1: Coords, v2: Coords, radius: float, eps: float
) -> dict[ArmKey, list[Piece]]:
    """Pieces of the Linf equidistant locus E(radius) on each cross arm."""
    dim = len(v1)
    d = dist(v1, v2, Metric.LINF)
    raw = _linf_locus_pieces(v1, v2, radius, eps)
    out: dict[ArmKey, list[Piece]] = {}
    for direction in cross_directions(dim, Metric.LINF):
        signs = direction.signs
        assert signs is not None
        cons = _linf_arm_constraints(v1, v2, signs)
        for piece in raw:
            clipped = clip_piece(piece, cons)
            if not clipped:
                continue
            rep = tuple(sum(c[i] for c in clipped) / len(clipped) for i in range(dim))
            side = _linf_side(rep, v1, v2, signs, d)
            if side is None:
                raise InternalError(
                    f"equidistant piece straddles S for pair {v1}, {v2} at R={radius}"
                )
            out.setdefault((signs, side), []).append(clipped)
    return out


def _linf_side(p: Coords, v1: Coords, v2: Coords, signs: Sequence[int], d: float) -> Optional[str]:
    bs = [s * (a - x) for s, a, x in zip(signs, v1, p)]
    cs = [s * (a - x) for s, a, x in zip(signs, v2, p)]
    t_lo = (max(bs) + max(cs) - d) / 2
    t_hi = (min(bs) + min(cs) + d) / 2
    if t_hi < 0:
        return "+"
    if t_lo > 0:
        return "-"
    return None


def _l1_equidistant_pieces(
    v1: Coords, v2: Coords, radius: float, eps: float
) -> dict[ArmKey, list[Piece]]:
    """Pieces of the L1 equidistant locus on each axis arm.

    On the arm of axis k beyond an endpoint's k-range, equidistance at
    `radius` fixes the overshoot e = radius - d1/2 and the total
    free-coordinate travel A away from v1; the feasible set is the
    simplex slice {a_j in [0, gap_j], sum a_j = A}: a point for d=2, a
    segment for d=3.  The arm exists iff 2*gap_k <= d1.
    """
    dim = len(v1)
    d1 = dist(v1, v2, Metric.L1)
    gaps, eta = _gaps(v1, v2)
    e = radius - d1 / 2
    out: dict[ArmKey, list[Piece]] = {}
    for k in range(dim):
        if 2 * gaps[k] > d1 + eps:
            continue
        rest = [j for j in range(dim) if j != k]
        total = sum(gaps[j] for j in rest)
        for side in ("+", "-"):
            if side == "+":
                boundary = max(v1[k], v2[k])
                near_is_v2 = v2[k] >= v1[k]
                pk = boundary + e
            else:
                boundary = min(v1[k], v2[k])
                near_is_v2 = v2[k] <= v1[k]
                pk = boundary - e
            travel = (total - gaps[k]) / 2 if near_is_v2 else (total + gaps[k]) / 2
            travel = min(max(travel, 0.0), total)
            piece = _l1_arm_piece(v1, eta, gaps, k, pk, rest, travel)
            if piece:
                out.setdefault((k, side), []).append(piece)
    return out


def _l1_arm_piece(
    v1: Coords,
    eta: list[int],
    gaps: list[float],
    k: int,
    pk: float,
    rest: list[int],
    travel: float,
) -> Piece:
    dim = len(v1)

    def build(assign: dict[int, float]) -> Coords:
        p = [v1[i] + eta[i] * assign.get(i, 0.0) for i in range(dim)]
        p[k] = pk
        return tuple(p)

    if len(rest) == 1:
        j = rest[0]
        return [build({j: travel})]
    j1, j2 = rest
    a_min = max(0.0, travel - gaps[j2])
    a_max = min(gaps[j1], travel)
    return dedupe_vertices([build({j1: a_min, j2: travel - a_min}), build({j1: a_max, j2: travel - a_max})])


def _equidistant_pieces(
    v1: Coords, v2: Coords, radius: float, metric: Metric, eps: float
) -> dict[ArmKey, list[Piece]]:
    if metric is Metric.LINF:
        return _linf_equidistant_pieces(v1, v2, radius, eps)
    return _l1_equidistant_pieces(v1, v2, radius, eps)


def equidistant_candidates(
    v1: Sequence[float],
    v2: Sequence[float],
    radius: float,
    metric: Metric,
    pairing: str = "far",
    eps: float = EPS,
) -> list[CenterPair]:
    """Antipodal center pairs on C(v1,R) ∩ C(v2,R) ∩ T(v1,v2).

    ``pairing="far"`` keeps maximal-separation pairs per direction (the
    intersection regimes), ``pairing="near"`` minimal-separation pairs
    (the circle-based union regime).  At radius exactly d/2 the locus
    collapses into S and is handled by its box/segment/point corners.
    """
    v1, v2 = tuple(map(float, v1)), tuple(map(float, v2))
    _check_dim(len(v1))
    if len(v1) != len(v2):
        raise ValueError("dimension mismatch")
    if v1 == v2:
        raise ValueError("degenerate pair: v1 == v2")
    d = dist(v1, v2, metric)
    if radius < d / 2 - eps:
        raise ValueError(f"radius {radius} below half the pair distance {d / 2}")
    if radius <= d / 2 + eps:
        half = d / 2
        verts = _tangency_vertices(v1, v2, half, half, metric, eps)
        pairs = _reflection_pairs(verts, v1, v2, select="far", eps=eps)
    else:
        pieces = _equidistant_pieces(v1, v2, radius, metric, eps)
        keys = {key for key, _ in pieces}
        pairs = []
        for key in sorted(keys, key=repr):
            plus = pieces.get((key, "+"), [])
            minus = pieces.get((key, "-"), [])
            if not plus or not minus:
                if plus or minus:
                    raise InternalError(
                        f"one-sided equidistant arm {key} for pair {v1}, {v2}"
                    )
                continue
            if pairing == "far":
                pairs.extend(farthest_pairs(plus, minus, eps))
            else:
                pairs.extend(closest_pairs(plus, minus, eps))
    pairs = _dedupe_pairs(pairs)
    _validate_equidistant(pairs, v1, v2, radius, metric)
    return pairs


def _validate_equidistant(
    pairs: list[CenterPair], v1: Coords, v2: Coords, radius: float, metric: Metric
) -> None:
    tol = 1e-6 * max(1.0, radius)
    for c1, c2 in pairs:
        for c in (c1, c2):
            if abs(dist(v1, c, metric) - radius) > tol or abs(dist(v2, c, metric) - radius) > tol:
                raise InternalError(
                    f"candidate center {c} violates equidistance R={radius} for {v1}, {v2}"
                )


# ---------------------------------------------------------------------------
# tangency loci (beta in [1, 2): big radius from one endpoint, small from the other)


def _tangency_vertices(
    v1: Coords, v2: Coords, r_big: float, r_small: float, metric: Metric, eps: float
) -> list[Coords]:
    """Vertices of C1 = {p : d(v1,p) = r_big, d(v2,p) = r_small}, r_big + r_small = d.

    Externally tangent spheres: the equality set is the full ball
    intersection (triangle equality forces both constraints tight) and
    lies inside S.  Linf: an axis box.  L1: the section of the bounding
    box by the plane where the oriented coordinate travel from v1 equals
    r_big; a point, segment, or hexagon.
    """
    dim = len(v1)
    if metric is Metric.LINF:
        lo = [max(a - r_big, b - r_small) for a, b in zip(v1, v2)]
        hi = [min(a + r_big, b + r_small) for a, b in zip(v1, v2)]
        verts = []
        for bits in range(1 << dim):
            verts.append(tuple(hi[i] if (bits >> i) & 1 else lo[i] for i in range(dim)))
        return dedupe_vertices(verts)
    gaps, eta = _gaps(v1, v2)
    nonzero = [i for i in range(dim) if gaps[i] > eps]

    def f(p: Coords) -> float:
        return sum(eta[i] * (p[i] - v1[i]) for i in nonzero)

    lo = [min(a, b) for a, b in zip(v1, v2)]
    hi = [max(a, b) for a, b in zip(v1, v2)]
    corners = []
    for bits in range(1 << len(nonzero)):
        c = list(v1)
        for pos, i in enumerate(nonzero):
            c[i] = hi[i] if (bits >> pos) & 1 else lo[i]
        corners.append(tuple(c))
    corners = dedupe_vertices(corners)
    verts = [c for c in corners if abs(f(c) - r_big) <= eps]
    for a in corners:
        for b in corners:
            if sum(1 for x, y in zip(a, b) if x != y) != 1:
                continue
            fa, fb = f(a), f(b)
            if (fa < r_big - eps and fb > r_big + eps) or (fb < r_big - eps and fa > r_big + eps):
                t = (r_big - fa) / (fb - fa)
                verts.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
    return dedupe_vertices(verts)


def _reflection_pairs(
    verts: list[Coords], v1: Coords, v2: Coords, select: str, eps: float
) -> list[CenterPair]:
    """Pair each (selected) vertex V with its central reflection 2m - V."""
    if not verts:
        return []
    m2 = tuple(a + b for a, b in zip(v1, v2))
    mid = tuple(x / 2 for x in m2)
    if select == "all":
        chosen = verts
    else:
        scores = [sq_euclid(v, mid) for v in verts]
        best = max(scores)
        tol = eps * max(1.0, best)
        chosen = [v for v, s in zip(verts, scores) if s >= best - tol]
    return [(v, tuple(t - x for t, x in zip(m2, v))) for v in chosen]


def _product_max_pairs(verts: list[Coords], v1: Coords, v2: Coords, eps: float) -> list[CenterPair]:
    """All maximal-separation pairs (c1, c2), c1 a tangency vertex, c2 a reflected one.

    The tangency polytope is centrally symmetric about the pair midpoint
    only when both radii agree, so the maximum must scan the full vertex
    product rather than reflections alone.
    """
    if not verts:
        return []
    m2 = tuple(a + b for a, b in zip(v1, v2))
    scored: list[tuple[float, CenterPair]] = []
    best = 0.0
    for a in verts:
        for b in verts:
            c2 = tuple(t - x for t, x in zip(m2, b))
            s = sq_euclid(a, c2)
            best = max(best, s)
            scored.append((s, (a, c2)))
    tol = eps * max(1.0, best)
    return [pair for s, pair in scored if s >= best - tol]


# ---------------------------------------------------------------------------
# internally tangent spheres (beta > 2, lens-based)


def _far_face_vertices(v1: Coords, v2: Coords, r_small: float, eps: float, metric: Metric) -> list[Coords]:
    """Vertices of C1 = C(v1, r_big) ∩ C(v2, r_small) with r_big - r_small = d.

    The small sphere around v2 touches the big one from inside; the
    contact set is the part of the small sphere facing away from v1.
    L1: the apexes of the small cross-polytope on away-facing axes (plus
    both apexes of zero-gap axes): exactly 3/4/5 vertices for d=3.
    Linf: the far faces of the small cube on maximal-gap coordinates;
    every face corner lies on some cross arm.
    """
    dim = len(v1)
    gaps, eta = _gaps(v1, v2)
    if metric is Metric.L1:
        verts = []
        for i in range(dim):
            if gaps[i] > eps:
                c = list(v2)
                c[i] += eta[i] * r_small
                verts.append(tuple(c))
            else:
                for sgn in (1.0, -1.0):
                    c = list(v2)
                    c[i] += sgn * r_small
                    verts.append(tuple(c))
        return dedupe_vertices(verts)
    d = max(gaps)
    verts = []
    for i in range(dim):
        if gaps[i] < d - eps:
            continue
        for bits in range(1 << dim):
            c = list(v2)
            c[i] += eta[i] * r_small
            for j in range(dim):
                if j != i:
                    c[j] = v2[j] + (r_small if (bits >> j) & 1 else -r_small)
            verts.append(tuple(c))
    return dedupe_vertices(verts)


def asymmetric_candidates(
    v1: Sequence[float],
    v2: Sequence[float],
    beta: float,
    metric: Metric,
    eps: float = EPS,
) -> list[CenterPair]:
    """Center pairs for the lens-based beta >= 1 regimes.

    beta = 2 is the unique pair (v2, v1); beta in [1, 2) scans the
    product of tangency-polytope vertices with their reflections and
    keeps all maximal-separation pairs; beta > 2 emits one pair per
    far-face vertex of the internally tangent small sphere (each vertex
    belongs to a distinct opposing-arm family).
    """
    v1, v2 = tuple(map(float, v1)), tuple(map(float, v2))
    _check_dim(len(v1))
    if len(v1) != len(v2):
        raise ValueError("dimension mismatch")
    if v1 == v2:
        raise ValueError("degenerate pair: v1 == v2")
    if beta < 1:
        raise ValueError(f"asymmetric regimes require beta >= 1, got {beta}")
    if beta == 2:
        return [(v2, v1)]
    d = dist(v1, v2, metric)
    if beta < 2:
        r_big = beta * d / 2
        r_small = (1 - beta / 2) * d
        verts = _tangency_vertices(v1, v2, r_big, r_small, metric, eps)
        pairs = _product_max_pairs(verts, v1, v2, eps)
    else:
        r_small = (beta / 2 - 1) * d
        verts = _far_face_vertices(v1, v2, r_small, eps, metric)
        pairs = _reflection_pairs(verts, v1, v2, select="all", eps=eps)
    return _dedupe_pairs(pairs)


# ---------------------------------------------------------------------------


def _quantum(pairs: list[CenterPair]) -> float:
    """Scale-relative rounding unit for dedupe keys.

    Clip slack and tie tolerances inject noise proportional to the
    coordinate magnitude, so fixed decimal rounding stops collapsing
    duplicates once coordinates grow large.
    """
    scale = 1.0
    for c1, c2 in pairs:
        for c in (c1, c2):
            for x in c:
                scale = max(scale, abs(x))
    return 1e-9 * scale


def _dedupe_pairs(pairs: list[CenterPair]) -> list[CenterPair]:
    q = _quantum(pairs)
    seen = set()
    out = []
    for c1, c2 in pairs:
        a = tuple(round(x / q) for x in c1)
        b = tuple(round(x / q) for x in c2)
        key = (a, b) if a <= b else (b, a)
        if key not in seen:
            seen.add(key)
            out.append((c1, c2) if a <= b else (c2, c1))
    out.sort(key=lambda pr: (pr[0], pr[1]))
    return out


def _region_key(
    c1: Coords, c2: Coords, r1: float, r2: float, metric: Metric, mode: Mode, q: float
) -> tuple:
    """Hashable key identifying the lens as a point set.

    Intersection lenses of a fixed normal fan (axis slabs for Linf, sign
    functionals for L1) coincide iff the tightened bound per normal
    matches; ties in the candidate search often produce distinct center
    pairs carving out the same region.  Union lenses key on the center
    multiset.  Conservative: distinct keys may still denote equal sets.
    """
    dim = len(c1)
    if mode is Mode.UNION:
        a = (tuple(round(x / q) for x in c1), round(r1 / q))
        b = (tuple(round(x / q) for x in c2), round(r2 / q))
        return ("union",) + tuple(sorted((a, b)))
    if metric is Metric.LINF:
        lo = tuple(round(max(a - r1, b - r2) / q) for a, b in zip(c1, c2))
        hi = tuple(round(min(a + r1, b + r2) / q) for a, b in zip(c1, c2))
        return ("box", lo, hi)
    bounds = []
    for bits in range(1 << dim):
        sigma = [1.0 if (bits >> i) & 1 else -1.0 for i in range(dim)]
        s1 = sum(s * x for s, x in zip(sigma, c1)) + r1
        s2 = sum(s * x for s, x in zip(sigma, c2)) + r2
        bounds.append(round(min(s1, s2) / q))
    return ("diamond", tuple(bounds))


def minimal_lenses(
    v1: Sequence[float],
    v2: Sequence[float],
    beta: float,
    metric: Metric,
    variant: Variant = Variant.LENS,
    eps: float = EPS,
) -> list[Lens]:
    """The constant-size set of minimal lenses deciding the edge (v1, v2)."""
    v1t, v2t = tuple(map(float, v1)), tuple(map(float, v2))
    regime = regime_of(beta, variant)
    d = dist(v1t, v2t, metric)
    if d == 0:
        raise ValueError("degenerate pair: v1 == v2")
    _check_dim(len(v1t))

    mode = Mode.INTERSECTION
    if regime is Regime.EQUIDISTANT_SMALL:
        radius = d / (2 * beta)
        pairs = equidistant_candidates(v1t, v2t, radius, metric, pairing="far", eps=eps)
        radii = (radius, radius)
    elif regime is Regime.UNIT:
        pairs = asymmetric_candidates(v1t, v2t, 1.0, metric, eps=eps)
        radii = (d / 2, d / 2)
    elif regime is Regime.ASYMMETRIC_MID:
        pairs = asymmetric_candidates(v1t, v2t, beta, metric, eps=eps)
        radii = (beta * d / 2, beta * d / 2)
    elif regime is Regime.RNG:
        pairs = [(v2t, v1t)]
        radii = (d, d)
    elif regime is Regime.ASYMMETRIC_LARGE:
        pairs = asymmetric_candidates(v1t, v2t, beta, metric, eps=eps)
        radii = (beta * d / 2, beta * d / 2)
    else:  # CIRCLE_LARGE
        radius = beta * d / 2
        pairs = equidistant_candidates(v1t, v2t, radius, metric, pairing="near", eps=eps)
        radii = (radius, radius)
        mode = Mode.UNION

    lenses = []
    seen_regions = set()
    q = 1e-9 * max(1.0, radii[0] + radii[1], *(abs(x) for x in v1t + v2t))
    for c1, c2 in pairs:
        key = _region_key(c1, c2, radii[0], radii[1], metric, mode, q)
        if key in seen_regions:
            continue
        seen_regions.add(key)
        lenses.append(Lens(c1, c2, radii[0], radii[1], metric, mode, (v1t, v2t), beta))
    if not lenses:
        raise InternalError(f"no lens candidates for pair {v1t}, {v2t} at beta={beta}")
    if len(lenses) > 8:
        raise InternalError(
            f"{len(lenses)} lenses for pair {v1t}, {v2t} at beta={beta}; expected <= 8"
        )
    for lens in lenses:
        for v in (v1t, v2t):
            # endpoints must sit in BOTH balls (even in union mode the
            # boxes each carry both endpoints; the count convention needs it)
            if (
                dist(v, lens.c1, metric) > lens.r1 + eps
                or dist(v, lens.c2, metric) > lens.r2 + eps
            ):
                raise InternalError(f"lens of {v1t}, {v2t} does not contain endpoint {v}")
    return lenses


@dataclass(frozen=True)
class CaseProfile:
    """Diagnostic summary of the geometric branch taken for one pair.

    points/segments/faces count the equidistant-locus pieces on the
    cross arms by dimension (equidistant regimes only), after merging
    overlapping collinear fragments that adjacent arms both report.
    locus_edges counts the raw (unclipped) Linf locus pieces: the box
    edges of the generic curve, or the faces of a band; zero for L1.
    region_vertices counts tangency-locus corners (beta in [1,2)) or
    far-face vertices (beta > 2).
    """

    regime: Regime
    branch: str
    points: int
    segments: int
    faces: int
    locus_edges: int
    region_vertices: int
    candidate_count: int
    lens_count: int


def _line_key_and_t(a: Coords, b: Coords) -> tuple[tuple, float, float]:
    """Canonical line identity plus the two endpoint parameters.

    Normalizes on the largest component: clip slack leaves ~1e-12 noise
    in nominally zero components, and a noise lead would blow the
    direction key apart and block collinear merges.
    """
    u = [y - x for x, y in zip(a, b)]
    lead = max(u, key=abs)
    u = [x / lead for x in u]
    u = [0.0 if abs(x) < 1e-9 else x for x in u]
    un2 = sum(x * x for x in u)
    t_a = sum(x * y for x, y in zip(a, u)) / un2
    anchor = tuple(round(x - t_a * y, 9) for x, y in zip(a, u))
    t_b = sum(x * y for x, y in zip(b, u)) / un2
    return (tuple(round(x, 9) for x in u), anchor), t_a, t_b


def _merged_piece_counts(groups: dict[ArmKey, list[Piece]]) -> tuple[int, int, int]:
    """Counts of maximal points/segments/faces in the union of arm pieces."""
    lines: dict[tuple, list[tuple[float, float]]] = {}
    raw_points: list[Coords] = []
    faces = 0
    for plist in groups.values():
        for piece in plist:
            if len(piece) == 1:
                raw_points.append(piece[0])
            elif len(piece) == 2:
                key, t_a, t_b = _line_key_and_t(piece[0], piece[1])
                lines.setdefault(key, []).append((min(t_a, t_b), max(t_a, t_b)))
            else:
                faces += 1
    segments = 0
    merged: list[tuple[tuple, float, float]] = []
    for key, ivals in lines.items():
        ivals.sort()
        cur_lo, cur_hi = ivals[0]
        for lo, hi in ivals[1:]:
            if lo <= cur_hi + 1e-9:
                cur_hi = max(cur_hi, hi)
            else:
                merged.append((key, cur_lo, cur_hi))
                cur_lo, cur_hi = lo, hi
        merged.append((key, cur_lo, cur_hi))
    segments = len(merged)

    def on_some_segment(p: Coords) -> bool:
        for (u, anchor), lo, hi in merged:
            un2 = sum(x * x for x in u)
            t = sum((x - a) * y for x, a, y in zip(p, anchor, u)) / un2
            if lo - 1e-9 <= t <= hi + 1e-9:
                q = tuple(a + t * y for a, y in zip(anchor, u))
                if max(abs(x - y) for x, y in zip(p, q)) <= 1e-9:
                    return True
        return False

    points = len(
        dedupe_vertices([p for p in raw_points if not on_some_segment(p)])
    )
    return points, segments, faces


def _equidistant_branch(v1: Coords, v2: Coords, metric: Metric, eps: float) -> str:
    dim = len(v1)
    gaps, _ = _gaps(v1, v2)
    nonzero = [g for g in gaps if g > eps]
    if metric is Metric.LINF:
        return "band" if len(nonzero) < dim else "edge-curve"
    d1 = sum(gaps)
    if len(nonzero) == 1:
        return "square-curve" if dim == 3 else "point-pair"
    if dim == 2:
        return "two-parallel-segments" if abs(gaps[0] - gaps[1]) <= eps else "point-pair"
    if len(nonzero) == dim:
        return "parallel-segment-pairs" if 2 * max(gaps) > d1 + eps else "arm-segments"
    return "points-and-segments"


_POLYGON_NAMES = {3: "triangle", 4: "quadrilateral", 5: "pentagon", 6: "hexagon"}


def _tangency_branch(verts: list[Coords], metric: Metric) -> str:
    n = len(verts)
    if n == 1:
        return "point"
    if n == 2:
        return "segment"
    if metric is Metric.LINF:
        return "rectangle"
    return _POLYGON_NAMES.get(n, f"{n}-gon")


def case_profile(
    v1: Sequence[float],
    v2: Sequence[float],
    beta: float,
    metric: Metric,
    variant: Variant = Variant.LENS,
    eps: float = EPS,
) -> CaseProfile:
    """Classify which geometric case the pair falls into at this beta."""
    v1t, v2t = tuple(map(float, v1)), tuple(map(float, v2))
    regime = regime_of(beta, variant)
    d = dist(v1t, v2t, metric)
    if d == 0:
        raise ValueError("degenerate pair: v1 == v2")
    _check_dim(len(v1t))

    points = segments = faces = locus_edges = region_vertices = 0
    if regime in (Regime.EQUIDISTANT_SMALL, Regime.CIRCLE_LARGE):
        radius = d / (2 * beta) if regime is Regime.EQUIDISTANT_SMALL else beta * d / 2
        branch = _equidistant_branch(v1t, v2t, metric, eps)
        pieces = _equidistant_pieces(v1t, v2t, radius, metric, eps)
        points, segments, faces = _merged_piece_counts(pieces)
        if metric is Metric.LINF:
            locus_edges = len(_linf_locus_pieces(v1t, v2t, radius, eps))
    elif regime in (Regime.UNIT, Regime.ASYMMETRIC_MID):
        r_big = beta * d / 2
        verts = _tangency_vertices(v1t, v2t, r_big, d - r_big, metric, eps)
        branch = _tangency_branch(verts, metric)
        region_vertices = len(verts)
    elif regime is Regime.RNG:
        branch = "unique-pair"
    else:
        verts = _far_face_vertices(v1t, v2t, (beta / 2 - 1) * d, eps, metric)
        branch = f"far-vertices-{len(verts)}"
        region_vertices = len(verts)

    lenses = minimal_lenses(v1t, v2t, beta, metric, variant, eps=eps)
    if regime is Regime.RNG:
        candidate_count = 1
    elif regime in (Regime.EQUIDISTANT_SMALL, Regime.CIRCLE_LARGE):
        radius = d / (2 * beta) if regime is Regime.EQUIDISTANT_SMALL else beta * d / 2
        pairing = "far" if regime is Regime.EQUIDISTANT_SMALL else "near"
        candidate_count = len(
            equidistant_candidates(v1t, v2t, radius, metric, pairing=pairing, eps=eps)
        )
    else:
        candidate_count = len(asymmetric_candidates(v1t, v2t, beta, metric, eps=eps))
    return CaseProfile(
        regime=regime,
        branch=branch,
        points=points,
        segments=segments,
        faces=faces,
        locus_edges=locus_edges,
        region_vertices=region_vertices,
        candidate_count=candidate_count,
        lens_count=len(lenses),
    )
