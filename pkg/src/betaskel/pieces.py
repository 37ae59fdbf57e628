"""Convex piece primitives for the lens enumerator.

A *piece* is a small convex set represented by its ordered vertex list:
one vertex is a point, two a segment, three or more a planar convex
polygon (all polygons here lie in an axis-aligned plane of R^3).  The
equidistant center loci decompose into such pieces; the enumerator clips
them against cross-arm half-spaces and then extracts extreme center
pairs (farthest for the intersection regimes, closest for the
circle-based union regime).
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .geometry import EPS, sq_euclid

Coords = tuple[float, ...]
Piece = list[Coords]
# A half-space {p : sum(coef_i * p_i) <= bound}
Constraint = tuple[Coords, float]


def dedupe_vertices(verts: Sequence[Coords], tol: float = 1e-9) -> list[Coords]:
    out: list[Coords] = []
    for v in verts:
        if all(max(abs(a - b) for a, b in zip(v, w)) > tol for w in out):
            out.append(v)
    return out


def clip_piece(piece: Piece, constraints: Sequence[Constraint]) -> Optional[Piece]:
    """Intersect a piece with half-spaces; None when the result is empty."""
    if len(piece) == 1:
        p = piece[0]
        for coef, bound in constraints:
            if sum(c * x for c, x in zip(coef, p)) > bound:
                return None
        return piece
    if len(piece) == 2:
        return _clip_segment(piece[0], piece[1], constraints)
    poly = piece
    for constraint in constraints:
        poly = _clip_polygon(poly, constraint)
        if not poly:
            return None
    return dedupe_vertices(poly) or None


def _clip_segment(a: Coords, b: Coords, constraints: Sequence[Constraint]) -> Optional[Piece]:
    t0, t1 = 0.0, 1.0
    for coef, bound in constraints:
        fa = sum(c * x for c, x in zip(coef, a))
        fb = sum(c * x for c, x in zip(coef, b))
        slope = fb - fa
        if abs(slope) < 1e-15:
            if fa > bound:
                return None
            continue
        t_cross = (bound - fa) / slope
        if slope > 0:
            t1 = min(t1, t_cross)
        else:
            t0 = max(t0, t_cross)
        if t0 > t1:
            return None
    p0 = tuple(x + t0 * (y - x) for x, y in zip(a, b))
    p1 = tuple(x + t1 * (y - x) for x, y in zip(a, b))
    return dedupe_vertices([p0, p1])


def _clip_polygon(poly: Piece, constraint: Constraint) -> Piece:
    """One Sutherland-Hodgman pass against a single half-space."""
    coef, bound = constraint
    vals = [sum(c * x for c, x in zip(coef, p)) for p in poly]
    out: Piece = []
    n = len(poly)
    for i in range(n):
        j = (i + 1) % n
        inside_i, inside_j = vals[i] <= bound, vals[j] <= bound
        if inside_i:
            out.append(poly[i])
        if inside_i != inside_j:
            t = (bound - vals[i]) / (vals[j] - vals[i])
            out.append(tuple(x + t * (y - x) for x, y in zip(poly[i], poly[j])))
    return out


def piece_vertices(pieces: Sequence[Piece]) -> list[Coords]:
    return dedupe_vertices([v for piece in pieces for v in piece])


def farthest_pairs(
    plus: Sequence[Piece], minus: Sequence[Piece], eps: float = EPS
) -> list[tuple[Coords, Coords]]:
    """All vertex pairs across the two piece families at maximal Euclidean
    separation (ties within a relative tolerance are all kept)."""
    vp, vm = piece_vertices(plus), piece_vertices(minus)
    best = -1.0
    for x in vp:
        for y in vm:
            best = max(best, sq_euclid(x, y))
    tol = eps * max(1.0, best)
    return [(x, y) for x in vp for y in vm if sq_euclid(x, y) >= best - tol]


def closest_pairs(
    plus: Sequence[Piece], minus: Sequence[Piece], eps: float = EPS
) -> list[tuple[Coords, Coords]]:
    """Representative argmin pairs of Euclidean distance between families.

    Continuum ties (parallel overlapping features) are reported through
    their extreme points, which is what the union-lens construction needs:
    any representative of a tied family defines the same edge decision.
    """
    best = float("inf")
    cands: list[tuple[float, Coords, Coords]] = []
    for a in plus:
        for b in minus:
            for d2, x, y in _feature_candidates(a, b):
                best = min(best, d2)
                cands.append((d2, x, y))
    tol = eps * max(1.0, best)
    return [(x, y) for d2, x, y in cands if d2 <= best + tol]


def _feature_candidates(a: Piece, b: Piece) -> list[tuple[float, Coords, Coords]]:
    out: list[tuple[float, Coords, Coords]] = []
    # vertex-vertex
    for x in a:
        for y in b:
            out.append((sq_euclid(x, y), x, y))
    # vertex against the other piece's segments
    for x in a:
        for s, t in _edges(b):
            q = _closest_on_segment(x, s, t)
            out.append((sq_euclid(x, q), x, q))
    for y in b:
        for s, t in _edges(a):
            q = _closest_on_segment(y, s, t)
            out.append((sq_euclid(y, q), q, y))
    # segment-segment
    for s1, t1 in _edges(a):
        for s2, t2 in _edges(b):
            for u, v in _segment_segment_candidates(s1, t1, s2, t2):
                out.append((sq_euclid(u, v), u, v))
    # interactions with polygon interiors
    if len(a) >= 3 or len(b) >= 3:
        out.extend(_planar_candidates(a, b))
    return out


def _edges(piece: Piece) -> list[tuple[Coords, Coords]]:
    if len(piece) < 2:
        return []
    if len(piece) == 2:
        return [(piece[0], piece[1])]
    return [(piece[i], piece[(i + 1) % len(piece)]) for i in range(len(piece))]


def _closest_on_segment(p: Coords, a: Coords, b: Coords) -> Coords:
    ab = tuple(y - x for x, y in zip(a, b))
    denom = sum(c * c for c in ab)
    if denom < 1e-18:
        return a
    t = sum((x - y) * c for x, y, c in zip(p, a, ab)) / denom
    t = min(1.0, max(0.0, t))
    return tuple(x + t * c for x, c in zip(a, ab))


def _segment_segment_candidates(
    a: Coords, b: Coords, c: Coords, d: Coords
) -> list[tuple[Coords, Coords]]:
    """Candidate closest pairs between segments ab and cd.

    Evaluates the unconstrained quadratic minimum (clamped) plus every
    boundary restriction; for parallel overlapping segments the boundary
    restrictions produce the extreme representatives of the tied set.
    """
    u = tuple(y - x for x, y in zip(a, b))
    v = tuple(y - x for x, y in zip(c, d))
    w = tuple(x - y for x, y in zip(a, c))
    uu = sum(x * x for x in u)
    vv = sum(x * x for x in v)
    uv = sum(x * y for x, y in zip(u, v))
    uw = sum(x * y for x, y in zip(u, w))
    vw = sum(x * y for x, y in zip(v, w))
    ts: list[tuple[float, float]] = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]

    def clamp(x: float) -> float:
        return min(1.0, max(0.0, x))

    denom = uu * vv - uv * uv
    if denom > 1e-15 * max(1.0, uu * vv):
        t = (uv * vw - vv * uw) / denom
        s = (uu * vw - uv * uw) / denom
        ts.append((clamp(t), clamp(s)))
    # minimize along each clamped edge of the (t, s) unit square
    if uu > 1e-18:
        ts.append((clamp(-uw / uu), 0.0))
        ts.append((clamp((uv - uw) / uu), 1.0))
    if vv > 1e-18:
        ts.append((0.0, clamp(vw / vv)))
        ts.append((1.0, clamp((vw + uv) / vv)))
    out = []
    for t, s in ts:
        p = tuple(x + t * du for x, du in zip(a, u))
        q = tuple(x + s * dv for x, dv in zip(c, v))
        out.append((p, q))
    return out


def _pinned_axis(piece: Piece) -> Optional[int]:
    """The single coordinate shared by all vertices of a planar polygon."""
    pins = [
        i
        for i in range(len(piece[0]))
        if max(p[i] for p in piece) - min(p[i] for p in piece) < 1e-12
    ]
    return pins[0] if len(pins) == 1 else None


def _planar_candidates(a: Piece, b: Piece) -> list[tuple[float, Coords, Coords]]:
    """Candidates involving a polygon's interior (projection-based).

    Returned triples keep the (point-of-a, point-of-b) order of the caller.
    """
    out: list[tuple[float, Coords, Coords]] = []
    sides = []
    if len(a) >= 3:
        sides.append((a, b, False))
    if len(b) >= 3:
        sides.append((b, a, True))
    for poly, other, swapped in sides:
        k = _pinned_axis(poly)
        if k is None:
            continue
        z = poly[0][k]
        free = [i for i in range(len(poly[0])) if i != k]
        poly2 = [(p[free[0]], p[free[1]]) for p in poly]

        def emit(on_poly: Coords, on_other: Coords) -> None:
            d2 = sq_euclid(on_poly, on_other)
            if swapped:
                out.append((d2, on_other, on_poly))
            else:
                out.append((d2, on_poly, on_other))

        # vertices of the other piece projected into the polygon's plane
        for q in other:
            proj2 = (q[free[0]], q[free[1]])
            if _point_in_convex(proj2, poly2):
                emit(_unproject(proj2, k, z, free), q)
        # other piece's edges parallel to the plane: clip their projection
        for s, t in _edges(other):
            if abs(s[k] - t[k]) > 1e-12:
                continue
            span = _clip_segment_2d((s[free[0]], s[free[1]]), (t[free[0]], t[free[1]]), poly2)
            if span is None:
                continue
            for u in span:
                emit(_unproject(u, k, z, free), _unproject(u, k, s[k], free))
        # parallel polygon-polygon overlap: intersect the 2-D shadows
        if len(other) >= 3 and _pinned_axis(other) == k:
            other2 = [(p[free[0]], p[free[1]]) for p in other]
            for u in _convex_intersection_2d(poly2, other2):
                emit(_unproject(u, k, z, free), _unproject(u, k, other[0][k], free))
    return out


def _unproject(u: tuple[float, float], k: int, z: float, free: list[int]) -> Coords:
    p = [0.0] * (len(free) + 1)
    p[k] = z
    p[free[0]], p[free[1]] = u
    return tuple(p)


def _poly_halfplanes_2d(poly: list[tuple[float, float]]) -> list[tuple[float, float, float]]:
    """Inward half-planes (a, b, c): a*x + b*y <= c, for an ordered convex polygon."""
    area2 = sum(
        poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
        for i in range(len(poly))
    )
    orient = 1.0 if area2 >= 0 else -1.0
    planes = []
    for i in range(len(poly)):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % len(poly)]
        if abs(x2 - x1) < 1e-15 and abs(y2 - y1) < 1e-15:
            continue
        # inward normal for CCW order is the left normal of the edge
        a, b = orient * (y1 - y2), orient * (x2 - x1)
        planes.append((a, b, a * x1 + b * y1 + 1e-12))
    return planes


def _point_in_convex(q: tuple[float, float], poly: list[tuple[float, float]]) -> bool:
    return all(a * q[0] + b * q[1] <= c for a, b, c in _poly_halfplanes_2d(poly))


def _clip_segment_2d(
    a: tuple[float, float], b: tuple[float, float], poly: list[tuple[float, float]]
) -> Optional[list[tuple[float, float]]]:
    t0, t1 = 0.0, 1.0
    for ca, cb, cc in _poly_halfplanes_2d(poly):
        fa = ca * a[0] + cb * a[1]
        fb = ca * b[0] + cb * b[1]
        slope = fb - fa
        if abs(slope) < 1e-15:
            if fa > cc:
                return None
            continue
        t_cross = (cc - fa) / slope
        if slope > 0:
            t1 = min(t1, t_cross)
        else:
            t0 = max(t0, t_cross)
        if t0 > t1:
            return None
    return [
        (a[0] + t0 * (b[0] - a[0]), a[1] + t0 * (b[1] - a[1])),
        (a[0] + t1 * (b[0] - a[0]), a[1] + t1 * (b[1] - a[1])),
    ]


def _convex_intersection_2d(
    p1: list[tuple[float, float]], p2: list[tuple[float, float]]
) -> list[tuple[float, float]]:
    poly = [(x, y) for x, y in p1]
    for a, b, c in _poly_halfplanes_2d(p2):
        nxt: list[tuple[float, float]] = []
        n = len(poly)
        if n == 0:
            break
        vals = [a * x + b * y for x, y in poly]
        for i in range(n):
            j = (i + 1) % n
            if vals[i] <= c:
                nxt.append(poly[i])
            if (vals[i] <= c) != (vals[j] <= c):
                t = (c - vals[i]) / (vals[j] - vals[i])
                nxt.append(
                    (
                        poly[i][0] + t * (poly[j][0] - poly[i][0]),
                        poly[i][1] + t * (poly[j][1] - poly[i][1]),
                    )
                )
        poly = nxt
    # drop near-duplicates
    out: list[tuple[float, float]] = []
    for v in poly:
        if all(abs(v[0] - w[0]) > 1e-9 or abs(v[1] - w[1]) > 1e-9 for w in out):
            out.append(v)
    return out


def all_sampled_points(piece: Piece, per_edge: int) -> list[Coords]:
    """Dense sample of a piece (vertices, edge subdivisions, interior grid).

    Test-support helper for the dense center-locus oracle; not used by the
    production enumeration path.
    """
    pts = list(piece)
    for a, b in _edges(piece):
        for i in range(1, per_edge):
            t = i / per_edge
            pts.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
    if len(piece) >= 3:
        for a, b in itertools.combinations(piece, 2):
            for i in range(1, per_edge):
                t = i / per_edge
                pts.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
    return dedupe_vertices(pts)
