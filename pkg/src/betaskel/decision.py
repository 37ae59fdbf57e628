"""Exact edge decisions over the full continuum of valid lens centers.

For beta below 2 (and the circle variant above 1) the valid center
families are continuum regions: equidistant-locus pieces on opposite
cross arms, or the tangency region paired with its central reflection.
The finite candidate set from :mod:`betaskel.lenses` certifies an edge
whenever one of its lenses is empty, but the converse fails: a blocked
candidate set does not prove every lens of the family blocked, because
free centers can hide strictly between candidates.  ``decide_edge``
closes the gap with an exact search over the family in rational
arithmetic that either returns a certified free center pair or proves
the family fully blocked.

Floats are binary rationals, so ``Fraction`` conversion is lossless and
every predicate below is exact.  Blocking is strict-interior, matching
``point_blocks_lens``: a blocker kills a center only when strictly
inside the open ball, so boundary tangencies never block.  The float
predicate deflates the radius by its tolerance while the exact one uses
the radius itself; distances produced by the supported inputs are
either exactly on the boundary or separated from it by far more than
the tolerance, so the two never disagree.  Returned witnesses avoid
every blocker's closed ball wherever possible, giving them float
round-trip headroom; exact-tangency witnesses survive because rounding
noise stays far below the deflation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InternalError
from .geometry import EPS, Metric, cross_directions, dist
from .lenses import Mode, Regime, Variant, minimal_lenses, point_blocks_lens, regime_of

FPoint = tuple[Fraction, ...]
Halfspace = tuple[tuple[Fraction, ...], Fraction]  # coef . p <= bound
Ball = tuple[Halfspace, ...]
Cell = tuple[int, tuple[FPoint, ...]]  # (affine rank, ordered vertices)
FloatPair = tuple[tuple[float, ...], tuple[float, ...]]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class EdgeDecision:
    """Outcome of one pair decision: verdict, certifying centers, path taken."""

    edge: bool
    witness: Optional[FloatPair]
    method: str


def decide_edge(
    v1: Sequence[float],
    v2: Sequence[float],
    others: Sequence[Sequence[float]],
    beta: float,
    metric: Metric,
    variant: Variant = Variant.LENS,
    eps: float = EPS,
) -> EdgeDecision:
    """Decide whether (v1, v2) is an edge given the other input points.

    An empty candidate lens settles the pair immediately.  Otherwise the
    finite regimes (beta >= 2, lens) are already complete and the answer
    is no; the continuum regimes fall through to the exact family search.
    """
    lenses = minimal_lenses(v1, v2, beta, metric, variant, eps)
    for lens in lenses:
        if not any(point_blocks_lens(q, lens, eps) for q in others):
            return EdgeDecision(True, (lens.c1, lens.c2), "candidate")
    regime = regime_of(beta, variant)
    finite = regime in (Regime.RNG, Regime.ASYMMETRIC_LARGE)
    # beta=1: when the frame functionals are independent (Linf axes, or the
    # two L1 diagonals in the plane) the candidate lens equals the pair's
    # frame bounding box and every family lens contains it with slack on
    # each side, so a strict blocker of the candidate strictly blocks the
    # whole family.  The four L1 diagonals in d=3 are linearly dependent,
    # no center attains all four extremes, and the candidate lens is a
    # proper subset of that box, so the continuum can still revive the
    # edge there.
    box_unit = regime is Regime.UNIT and not (metric is Metric.L1 and len(v1) == 3)
    if finite or box_unit:
        return EdgeDecision(False, None, "candidate")
    witness = continuum_witness(v1, v2, others, beta, metric, variant, eps)
    if witness is not None:
        return EdgeDecision(True, witness, "continuum")
    return EdgeDecision(False, None, "continuum")


def continuum_witness(
    v1: Sequence[float],
    v2: Sequence[float],
    others: Sequence[Sequence[float]],
    beta: float,
    metric: Metric,
    variant: Variant = Variant.LENS,
    eps: float = EPS,
) -> Optional[FloatPair]:
    """Free center pair from the continuum families, or None if all blocked."""
    regime = regime_of(beta, variant)
    families = _exact_families(tuple(map(float, v1)), tuple(map(float, v2)), beta, metric, regime)
    others_f = [tuple(map(float, q)) for q in others]
    for fam in families:
        relevant = _prefilter(fam, others_f, metric)
        if _universally_blocked(fam, relevant, metric):
            continue
        centers = [_fr_point(q) for q in relevant]
        balls = [_ball(q, fam.radius, metric) for q in centers]
        if fam.mode is Mode.UNION:
            if _family_rank(fam) <= 1:
                c1 = _sweep_point(fam.side1, balls)
                c2 = _sweep_point(fam.side2, balls) if c1 is not None else None
            else:
                boxes = [_ball_box(q, fam.radius) for q in centers]
                c1 = _region_point(fam.side1, centers, fam.radius, metric, balls, boxes)
                if c1 is not None:
                    c2 = _region_point(fam.side2, centers, fam.radius, metric, balls, boxes)
                else:
                    c2 = None
            pair = (c1, c2) if c1 is not None and c2 is not None else None
        elif _family_rank(fam) <= 1:
            pair = _sweep_pair(fam.side1, fam.side2, balls)
        else:
            boxes = [_ball_box(q, fam.radius) for q in centers]
            pair = _arrangement_pair(fam.side1, fam.side2, centers, fam.radius, metric, balls, boxes)
        if pair is None:
            continue
        all_fr = [_fr_point(q) for q in others_f]
        if not _pair_free(pair[0], pair[1], all_fr, fam.radius, metric, fam.mode):
            raise InternalError(
                f"continuum witness for {v1}, {v2} at beta={beta} failed exact re-check"
            )
        return (_to_float(pair[0]), _to_float(pair[1]))
    return None


# ---------------------------------------------------------------------------
# exact scalar and ball primitives


def _fr_point(p: Sequence[float]) -> FPoint:
    return tuple(Fraction(x) for x in p)


def _to_float(p: FPoint) -> tuple[float, ...]:
    return tuple(float(x) for x in p)


def _dist_fr(a: FPoint, b: FPoint, metric: Metric) -> Fraction:
    if metric is Metric.L1:
        return sum(abs(x - y) for x, y in zip(a, b))
    return max(abs(x - y) for x, y in zip(a, b))


def _ball(q: FPoint, radius: Fraction, metric: Metric) -> Ball:
    """The closed metric ball B(q, radius) as an intersection of half-spaces."""
    dim = len(q)
    out: list[Halfspace] = []
    if metric is Metric.LINF:
        for i in range(dim):
            plus = tuple(_ONE if j == i else _ZERO for j in range(dim))
            minus = tuple(-_ONE if j == i else _ZERO for j in range(dim))
            out.append((plus, q[i] + radius))
            out.append((minus, radius - q[i]))
    else:
        for bits in range(1 << dim):
            sigma = tuple(_ONE if (bits >> i) & 1 else -_ONE for i in range(dim))
            out.append((sigma, sum(s * x for s, x in zip(sigma, q)) + radius))
    return tuple(out)


def _inside_ball(p: FPoint, ball: Ball) -> bool:
    """Strictly inside the open ball (the blocking condition)."""
    return all(sum(c * x for c, x in zip(coef, p)) < bound for coef, bound in ball)


def _pair_free(
    c1: FPoint,
    c2: FPoint,
    blockers: list[FPoint],
    radius: Fraction,
    metric: Metric,
    mode: Mode,
) -> bool:
    for q in blockers:
        d1 = _dist_fr(q, c1, metric)
        d2 = _dist_fr(q, c2, metric)
        if mode is Mode.UNION:
            if d1 < radius or d2 < radius:
                return False
        elif d1 < radius and d2 < radius:
            return False
    return True


# ---------------------------------------------------------------------------
# exact cells: canonical (rank, ordered vertices) with clipping


def _dedupe_fr(verts: Sequence[FPoint]) -> list[FPoint]:
    seen = set()
    out = []
    for v in verts:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _cross3(u: Sequence[Fraction], w: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    a = list(u) + [_ZERO] * (3 - len(u))
    b = list(w) + [_ZERO] * (3 - len(w))
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _canon(verts: Sequence[FPoint]) -> Cell:
    """Canonical cell: dedupe, detect affine rank, order polygon boundaries."""
    vs = _dedupe_fr(verts)
    if len(vs) == 1:
        return 0, tuple(vs)
    base = vs[0]
    dirs = [tuple(x - y for x, y in zip(v, base)) for v in vs[1:]]
    first = next(d for d in dirs if any(d))
    normal = None
    for d2 in dirs:
        c = _cross3(first, d2)
        if any(c):
            normal = c
            break
    if normal is None:
        ts = [(sum(x * y for x, y in zip(v, first)), v) for v in vs]
        return 1, (min(ts)[1], max(ts)[1])
    if any(sum(n * x for n, x in zip(normal, d + (_ZERO,) * (3 - len(d)))) != 0 for d in dirs):
        raise InternalError("cell vertices span three dimensions; expected a flat cell")
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(min(3, len(base))) if i != drop]
    pts = sorted((tuple(v[i] for i in keep), v) for v in vs)
    hull = _hull2(pts)
    return 2, tuple(v for _, v in hull)


def _hull2(pts: list[tuple[tuple[Fraction, Fraction], FPoint]]) -> list[tuple[tuple[Fraction, Fraction], FPoint]]:
    """Monotone-chain hull of pre-sorted distinct projected points."""

    def turn(o, a, b):
        return (a[0][0] - o[0][0]) * (b[0][1] - o[0][1]) - (a[0][1] - o[0][1]) * (b[0][0] - o[0][0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _clip_one(verts: list[FPoint], rank: int, coef: tuple[Fraction, ...], bound: Fraction) -> list[FPoint]:
    vals = [sum(c * x for c, x in zip(coef, v)) - bound for v in verts]
    if all(val <= 0 for val in vals):
        return verts
    if all(val > 0 for val in vals):
        return []
    if rank == 1:
        (a, b), (fa, fb) = verts, vals
        t = fa / (fa - fb)
        cut = tuple(x + t * (y - x) for x, y in zip(a, b))
        return [a, cut] if fa <= 0 else [cut, b]
    out: list[FPoint] = []
    n = len(verts)
    for i in range(n):
        cur, nxt = verts[i], verts[(i + 1) % n]
        fc, fn = vals[i], vals[(i + 1) % n]
        if fc <= 0:
            out.append(cur)
        if (fc <= 0) != (fn <= 0):
            t = fc / (fc - fn)
            out.append(tuple(x + t * (y - x) for x, y in zip(cur, nxt)))
    return _dedupe_fr(out)


def _clip_cell(cell: Cell, halfspaces: Sequence[Halfspace]) -> Optional[Cell]:
    rank, verts = cell
    vs = list(verts)
    for coef, bound in halfspaces:
        if rank == 0:
            if sum(c * x for c, x in zip(coef, vs[0])) - bound > 0:
                return None
            continue
        vs = _clip_one(vs, rank, coef, bound)
        if not vs:
            return None
    return _canon(vs)


def _centroid(verts: Sequence[FPoint]) -> FPoint:
    n = len(verts)
    return tuple(sum(col) / n for col in zip(*verts))


# ---------------------------------------------------------------------------
# family model


@dataclass(frozen=True)
class _Family:
    """One independent family of valid center pairs sharing a blocking radius."""

    mode: Mode
    radius: Fraction
    side1: tuple[Cell, ...]
    side2: tuple[Cell, ...]


# ---------------------------------------------------------------------------
# segment sweeps: exact interval coverage for families whose cells are
# points or segments (every regime except the flat tangency polygons of
# d=3), decided with O(m^2) interval arithmetic


def _segment_ends(cell: Cell) -> tuple[FPoint, FPoint]:
    rank, verts = cell
    if rank == 0:
        return verts[0], verts[0]
    return verts[0], verts[1]


def _blocked_interval(a0: FPoint, a1: FPoint, ball: Ball) -> Optional[tuple[Fraction, Fraction]]:
    """Open t-interval where a0 + t(a1-a0) lies strictly inside the ball.

    Bounds clip outside [-1, 2], never at 0 or 1: clipping at the domain
    ends would misreport a strictly covered endpoint as free.
    """
    lo, hi = -_ONE, _ONE + _ONE
    for coef, bound in ball:
        fa = sum(c * x for c, x in zip(coef, a0)) - bound
        fb = sum(c * x for c, x in zip(coef, a1)) - bound
        den = fb - fa
        if den == 0:
            if fa >= 0:
                return None
        elif den > 0:
            hi = min(hi, -fa / den)
        else:
            lo = max(lo, -fa / den)
        if lo >= hi:
            return None
    return lo, hi


def _free_t(intervals: list[tuple[Fraction, Fraction]]) -> Optional[Fraction]:
    """Smallest t in [0,1] not strictly inside any open interval."""
    cursor = _ZERO
    for lo, hi in sorted(intervals):
        if lo >= cursor:
            return cursor
        if hi > cursor:
            cursor = hi
        if cursor > _ONE:
            return None
    return cursor if cursor <= _ONE else None


def _point_at(a0: FPoint, a1: FPoint, t: Fraction) -> FPoint:
    return tuple(x + t * (y - x) for x, y in zip(a0, a1))


def _sweep_point(cells: Sequence[Cell], balls: Sequence[Ball]) -> Optional[FPoint]:
    for cell in cells:
        a0, a1 = _segment_ends(cell)
        ivs = [iv for iv in (_blocked_interval(a0, a1, b) for b in balls) if iv is not None]
        t = _free_t(ivs)
        if t is not None:
            return _point_at(a0, a1, t)
    return None


def _sweep_pair(
    side1: Sequence[Cell], side2: Sequence[Cell], balls: Sequence[Ball]
) -> Optional[tuple[FPoint, FPoint]]:
    """Free (c1, c2) over segment cells by breakpoint enumeration.

    A ball blocks the pair only when both parameters fall in its open
    intervals, so it suffices to try t1 at interval endpoints (where the
    active set is locally minimal) plus 0 and 1.
    """
    ends1 = [_segment_ends(c) for c in side1]
    ends2 = [_segment_ends(c) for c in side2]
    ivs1 = [[_blocked_interval(a0, a1, b) for b in balls] for a0, a1 in ends1]
    ivs2 = [[_blocked_interval(b0, b1, b) for b in balls] for b0, b1 in ends2]
    for (a0, a1), i_ivs in zip(ends1, ivs1):
        cands = {_ZERO, _ONE}
        for iv in i_ivs:
            if iv is not None:
                cands.update(t for t in iv if _ZERO <= t <= _ONE)
        for t1 in sorted(cands):
            active = [k for k, iv in enumerate(i_ivs) if iv is not None and iv[0] < t1 < iv[1]]
            for (b0, b1), j_ivs in zip(ends2, ivs2):
                t2 = _free_t([j_ivs[k] for k in active if j_ivs[k] is not None])
                if t2 is not None:
                    return _point_at(a0, a1, t1), _point_at(b0, b1, t2)
    return None


def _family_rank(fam: _Family) -> int:
    return max(cell[0] for cell in fam.side1 + fam.side2)


# ---------------------------------------------------------------------------
# polygon arrangements: exact decisions for families with flat (rank-2)
# cells.  Any nonempty "cell minus open balls" region is compact, so it
# contains its lexicographic minimum, and that minimum lies on a cell
# vertex or on a crossing of two boundary lines (cell edges or in-plane
# ball facets); those points are therefore a complete candidate set, and
# a free center pair exists exactly when two candidates have disjoint
# strict-membership masks


Box = tuple[tuple[Fraction, Fraction], ...]  # closed per-axis bounds

_EPSF = 4.0e-16  # a few ulps of double arithmetic, for float prefilters


def _pt_key(p: FPoint) -> tuple[tuple[float, ...], FPoint]:
    # float primary key keeps sorting cheap; the exact tuple breaks ties
    return tuple(map(float, p)), p


def _ball_box(q: FPoint, radius: Fraction) -> Box:
    return tuple((x - radius, x + radius) for x in q)


def _strict_in_box(p: FPoint, box: Box) -> bool:
    return all(lo < x < hi for x, (lo, hi) in zip(p, box))


def _boxes_touch(a: Box, b: Box) -> bool:
    return all(alo <= bhi and blo <= ahi for (alo, ahi), (blo, bhi) in zip(a, b))


def _poly_normal(verts: Sequence[FPoint]) -> tuple[Fraction, Fraction, Fraction]:
    base = verts[0]
    d1 = tuple(x - y for x, y in zip(verts[1], base))
    for v in verts[2:]:
        n = _cross3(d1, tuple(x - y for x, y in zip(v, base)))
        if any(n):
            return n
    raise InternalError("flat cell with collinear vertices")


def _poly_candidates(cell: Cell, balls: Sequence[Ball], boxes: Sequence[Box]) -> list[FPoint]:
    """Candidate free points of one cell against the given balls."""
    rank, verts = cell
    if rank == 0:
        return [verts[0]]
    if rank == 1:
        a0, a1 = verts[0], verts[1]
        cands = {a0, a1}
        for ball in balls:
            iv = _blocked_interval(a0, a1, ball)
            if iv is not None:
                cands.update(_point_at(a0, a1, t) for t in iv if _ZERO < t < _ONE)
        return sorted(cands)
    dim = len(verts[0])
    if dim == 2:
        keep, drop = (0, 1), None
        nrm = off = None
    else:
        nrm = _poly_normal(verts)
        drop = max(range(3), key=lambda i: abs(nrm[i]))
        keep = tuple(i for i in range(3) if i != drop)
        off = sum(n * x for n, x in zip(nrm, verts[0]))
    pts2 = [(v[keep[0]], v[keep[1]]) for v in verts]
    area2 = sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(pts2, pts2[1:] + pts2[:1]))
    sgn = _ONE if area2 > 0 else -_ONE
    edges = []
    for p, q in zip(pts2, pts2[1:] + pts2[:1]):
        a, b = sgn * (q[1] - p[1]), sgn * (p[0] - q[0])
        edges.append((a, b, a * p[0] + b * p[1]))

    def restrict(coef: tuple[Fraction, ...], bound: Fraction) -> tuple[Fraction, Fraction, Fraction]:
        if drop is None:
            return coef[0], coef[1], bound
        if coef[drop] == 0:
            return coef[keep[0]], coef[keep[1]], bound
        f = coef[drop] / nrm[drop]
        return coef[keep[0]] - f * nrm[keep[0]], coef[keep[1]] - f * nrm[keep[1]], bound - f * off

    cell_box = tuple((min(v[i] for v in verts), max(v[i] for v in verts)) for i in range(dim))
    seen: set[tuple[Fraction, Fraction, Fraction]] = set()
    for a, b, c in edges:
        lead = a if a != 0 else b
        seen.add((a / lead, b / lead, c / lead))
    lines = list(edges)
    for ball, box in zip(balls, boxes):
        if not _boxes_touch(box, cell_box):
            continue
        for coef, bound in ball:
            a, b, c = restrict(coef, bound)
            if a == 0 and b == 0:
                continue
            lead = a if a != 0 else b
            key = (a / lead, b / lead, c / lead)
            if key in seen:
                continue
            seen.add(key)
            vals = [a * s + b * t - c for s, t in pts2]
            if min(vals) > 0 or max(vals) < 0:
                continue
            lines.append(key)

    def lift(s: Fraction, t: Fraction) -> FPoint:
        if drop is None:
            return s, t
        u = (off - nrm[keep[0]] * s - nrm[keep[1]] * t) / nrm[drop]
        p = [s, t]
        p.insert(drop, u)
        return tuple(p)

    def exact_cross(i: int, j: int) -> Optional[tuple[Fraction, Fraction]]:
        a1, b1, c1 = lines[i]
        a2, b2, c2 = lines[j]
        det = a1 * b2 - a2 * b1
        if det == 0:
            return None
        return (c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det

    # float prefilter: crossings that are certainly outside the polygon are
    # dropped without exact arithmetic, crossings certainly inside skip the
    # exact membership test; the error bounds below are conservative, so a
    # borderline verdict always falls back to the exact path
    n_e = len(edges)
    lf = [(float(a), float(b), float(c)) for a, b, c in lines]
    cands = set(verts)
    for i in range(len(lines)):
        a1, b1, c1 = lf[i]
        for j in range(max(i + 1, n_e), len(lines)):
            a2, b2, c2 = lf[j]
            p1, p2 = a1 * b2, a2 * b1
            df = p1 - p2
            if abs(df) <= 1e-9 * (abs(p1) + abs(p2)):
                st = exact_cross(i, j)
                if st is not None and all(a * st[0] + b * st[1] <= c for a, b, c in edges):
                    cands.add(lift(*st))
                continue
            q1, q2 = c1 * b2, c2 * b1
            r1, r2 = a1 * c2, a2 * c1
            sf = (q1 - q2) / df
            tf = (r1 - r2) / df
            es = 3.0 * _EPSF * (abs(q1) + abs(q2)) / abs(df) + 7e-7 * abs(sf)
            et = 3.0 * _EPSF * (abs(r1) + abs(r2)) / abs(df) + 7e-7 * abs(tf)
            inside = True
            borderline = False
            for ea, eb, ec in lf[:n_e]:
                v1f, v2f = ea * sf, eb * tf
                val = v1f + v2f - ec
                bound = abs(ea) * es + abs(eb) * et + 4.0 * _EPSF * (abs(v1f) + abs(v2f) + abs(ec))
                if val > bound:
                    inside = False
                    break
                if val > -bound:
                    borderline = True
            if not inside:
                continue
            st = exact_cross(i, j)
            if st is None:
                continue
            if borderline and not all(a * st[0] + b * st[1] <= c for a, b, c in edges):
                continue
            cands.add(lift(*st))
    return sorted(cands, key=_pt_key)


def _side_masks(
    cells: Sequence[Cell],
    qs: Sequence[FPoint],
    radius: Fraction,
    metric: Metric,
    balls: Sequence[Ball],
    boxes: Sequence[Box],
) -> tuple[list[FPoint], list[int]]:
    """Sorted side candidates with exact strict-membership masks.

    A float distance matrix splits the candidate-ball pairs into certain
    bits and a narrow uncertain band around the radius; only the band is
    re-tested exactly.  Conversion and metric errors stay below 1e-12 of
    the scale, so the 1e-9 band always contains the true boundary.
    """
    pts: set[FPoint] = set()
    for cell in cells:
        pts.update(_poly_candidates(cell, balls, boxes))
    out = sorted(pts, key=_pt_key)
    if not out or not qs:
        return out, [0] * len(out)
    pf = np.array([[float(x) for x in p] for p in out])
    qf = np.array([[float(x) for x in q] for q in qs])
    diff = np.abs(pf[:, None, :] - qf[None, :, :])
    dmat = diff.sum(axis=2) if metric is Metric.L1 else diff.max(axis=2)
    rf = float(radius)
    tol = 1e-9 * max(1.0, rf, float(np.abs(pf).max()), float(np.abs(qf).max()))
    sure = dmat < rf - tol
    unsure = np.abs(dmat - rf) <= tol
    masks = []
    for row in range(len(out)):
        m = 0
        for i in np.flatnonzero(sure[row]):
            m |= 1 << int(i)
        for i in np.flatnonzero(unsure[row]):
            if _inside_ball(out[row], balls[int(i)]):
                m |= 1 << int(i)
        masks.append(m)
    return out, masks


def _mask_reps(pts: list[FPoint], masks: list[int]) -> list[tuple[int, FPoint]]:
    reps: dict[int, FPoint] = {}
    for p, m in zip(pts, masks):
        if m not in reps:
            reps[m] = p
    return list(reps.items())


def _region_point(
    cells: Sequence[Cell],
    qs: Sequence[FPoint],
    radius: Fraction,
    metric: Metric,
    balls: Sequence[Ball],
    boxes: Sequence[Box],
) -> Optional[FPoint]:
    pts, masks = _side_masks(cells, qs, radius, metric, balls, boxes)
    for p, m in zip(pts, masks):
        if m == 0:
            return p
    return None


def _arrangement_pair(
    side1: Sequence[Cell],
    side2: Sequence[Cell],
    qs: Sequence[FPoint],
    radius: Fraction,
    metric: Metric,
    balls: Sequence[Ball],
    boxes: Sequence[Box],
) -> Optional[tuple[FPoint, FPoint]]:
    reps1 = _mask_reps(*_side_masks(side1, qs, radius, metric, balls, boxes))
    reps2 = _mask_reps(*_side_masks(side2, qs, radius, metric, balls, boxes))
    for m1, p1 in reps1:
        for m2, p2 in reps2:
            if m1 & m2 == 0:
                return p1, p2
    return None


# ---------------------------------------------------------------------------
# exact family geometry (rational mirrors of the candidate constructions)


def _gaps_fr(p1: FPoint, p2: FPoint) -> tuple[list[Fraction], list[int]]:
    gaps = [abs(a - b) for a, b in zip(p1, p2)]
    eta = [1 if b >= a else -1 for a, b in zip(p1, p2)]
    return gaps, eta


def _axis_corners(pin: dict[int, Fraction], lo: list[Fraction], hi: list[Fraction]) -> list[FPoint]:
    dim = len(lo)
    free = [i for i in range(dim) if i not in pin]
    ranges = [(pin[i], pin[i]) if i in pin else (lo[i], hi[i]) for i in range(dim)]
    corners = []
    for bits in range(1 << len(free)):
        c = [r[0] for r in ranges]
        for pos, i in enumerate(free):
            if (bits >> pos) & 1:
                c[i] = ranges[i][1]
        corners.append(tuple(c))
    return corners


def _linf_side_fr(p: FPoint, p1: FPoint, p2: FPoint, signs: Sequence[int], d: Fraction) -> Optional[str]:
    bs = [s * (a - x) for s, a, x in zip(signs, p1, p)]
    cs = [s * (a - x) for s, a, x in zip(signs, p2, p)]
    t_lo = (max(bs) + max(cs) - d) / 2
    t_hi = (min(bs) + min(cs) + d) / 2
    if t_hi < 0:
        return "+"
    if t_lo > 0:
        return "-"
    return None


def _linf_arm_halfspaces(p1: FPoint, p2: FPoint, signs: Sequence[int], d: Fraction) -> list[Halfspace]:
    dim = len(p1)
    cons: list[Halfspace] = []
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            coef = [_ZERO] * dim
            coef[i] = Fraction(-signs[i])
            coef[j] = Fraction(signs[j])
            cons.append((tuple(coef), d - signs[i] * p2[i] + signs[j] * p1[j]))
            cons.append((tuple(coef), d - signs[i] * p1[i] + signs[j] * p2[j]))
    return cons


def _linf_pieces_fr(p1: FPoint, p2: FPoint, radius: Fraction) -> dict[tuple, list[Cell]]:
    """Equidistant-locus cells per (direction signs, side) for Linf."""
    dim = len(p1)
    gaps, eta = _gaps_fr(p1, p2)
    d = max(gaps)
    lo = [max(a, b) - radius for a, b in zip(p1, p2)]
    hi = [min(a, b) + radius for a, b in zip(p1, p2)]
    nonzero = [i for i in range(dim) if gaps[i] != 0]
    zero = [i for i in range(dim) if gaps[i] == 0]

    raw: list[Cell] = []
    for i in nonzero:
        for j in nonzero:
            if i == j:
                continue
            pin = {i: p1[i] + eta[i] * radius, j: p2[j] - eta[j] * radius}
            raw.append(_canon(_axis_corners(pin, lo, hi)))
    for k in zero:
        for sgn in (1, -1):
            raw.append(_canon(_axis_corners({k: p1[k] + sgn * radius}, lo, hi)))

    out: dict[tuple, list[Cell]] = {}
    for direction in cross_directions(dim, Metric.LINF):
        signs = direction.signs
        assert signs is not None
        cons = _linf_arm_halfspaces(p1, p2, signs, d)
        for cell in raw:
            clipped = _clip_cell(cell, cons)
            if clipped is None:
                continue
            side = _linf_side_fr(_centroid(clipped[1]), p1, p2, signs, d)
            if side is None:
                raise InternalError(f"equidistant cell straddles S for {p1}, {p2}")
            out.setdefault((signs, side), []).append(clipped)
    return out


def _l1_pieces_fr(p1: FPoint, p2: FPoint, radius: Fraction) -> dict[tuple, list[Cell]]:
    """Equidistant-locus cells per (axis, side) for L1."""
    dim = len(p1)
    gaps, eta = _gaps_fr(p1, p2)
    d1 = sum(gaps)
    e = radius - d1 / 2
    out: dict[tuple, list[Cell]] = {}
    for k in range(dim):
        if 2 * gaps[k] > d1:
            continue
        rest = [j for j in range(dim) if j != k]
        total = sum(gaps[j] for j in rest)
        for side in ("+", "-"):
            if side == "+":
                boundary = max(p1[k], p2[k])
                near_is_v2 = p2[k] >= p1[k]
                pk = boundary + e
            else:
                boundary = min(p1[k], p2[k])
                near_is_v2 = p2[k] <= p1[k]
                pk = boundary - e
            travel = (total - gaps[k]) / 2 if near_is_v2 else (total + gaps[k]) / 2
            travel = min(max(travel, _ZERO), total)

            def build(assign: dict[int, Fraction]) -> FPoint:
                p = [p1[i] + eta[i] * assign.get(i, _ZERO) for i in range(dim)]
                p[k] = pk
                return tuple(p)

            if len(rest) == 1:
                verts = [build({rest[0]: travel})]
            else:
                j1, j2 = rest
                a_min = max(_ZERO, travel - gaps[j2])
                a_max = min(gaps[j1], travel)
                verts = [build({j1: a_min, j2: travel - a_min}), build({j1: a_max, j2: travel - a_max})]
            out.setdefault((k, side), []).append(_canon(verts))
    return out


def _tangency_cell_fr(p1: FPoint, p2: FPoint, r_big: Fraction, r_small: Fraction, metric: Metric) -> Cell:
    """C1 = {p : d(v1,p) = r_big, d(v2,p) = r_small} with r_big + r_small = d."""
    dim = len(p1)
    if metric is Metric.LINF:
        lo = [max(a - r_big, b - r_small) for a, b in zip(p1, p2)]
        hi = [min(a + r_big, b + r_small) for a, b in zip(p1, p2)]
        return _canon(_axis_corners({}, lo, hi))
    gaps, eta = _gaps_fr(p1, p2)
    nonzero = [i for i in range(dim) if gaps[i] != 0]

    def f(p: FPoint) -> Fraction:
        return sum(eta[i] * (p[i] - p1[i]) for i in nonzero)

    lo = [min(a, b) for a, b in zip(p1, p2)]
    hi = [max(a, b) for a, b in zip(p1, p2)]
    corners = _dedupe_fr(_axis_corners({i: p1[i] for i in range(dim) if i not in nonzero}, lo, hi))
    verts = [c for c in corners if f(c) == r_big]
    for a in corners:
        for b in corners:
            if sum(1 for x, y in zip(a, b) if x != y) != 1:
                continue
            fa, fb = f(a), f(b)
            if (fa < r_big < fb) or (fb < r_big < fa):
                t = (r_big - fa) / (fb - fa)
                verts.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
    if not verts:
        raise InternalError(f"empty tangency region for {p1}, {p2} at r={r_big}")
    return _canon(verts)


def _reflect_cell(cell: Cell, m2: FPoint) -> Cell:
    return _canon([tuple(t - x for t, x in zip(m2, v)) for v in cell[1]])


def _exact_families(
    v1: tuple[float, ...], v2: tuple[float, ...], beta: float, metric: Metric, regime: Regime
) -> list[_Family]:
    p1, p2 = _fr_point(v1), _fr_point(v2)
    b = Fraction(beta)
    d = _dist_fr(p1, p2, metric)
    m2 = tuple(a + c for a, c in zip(p1, p2))
    if regime in (Regime.EQUIDISTANT_SMALL, Regime.CIRCLE_LARGE):
        if regime is Regime.EQUIDISTANT_SMALL:
            radius, mode = d / (2 * b), Mode.INTERSECTION
        else:
            radius, mode = b * d / 2, Mode.UNION
        pieces = _linf_pieces_fr(p1, p2, radius) if metric is Metric.LINF else _l1_pieces_fr(p1, p2, radius)
        fams = []
        for key in sorted({k for k, _ in pieces}, key=repr):
            plus = pieces.get((key, "+"), [])
            minus = pieces.get((key, "-"), [])
            if not plus or not minus:
                if plus or minus:
                    raise InternalError(f"one-sided equidistant arm {key} for {p1}, {p2}")
                continue
            fams.append(_Family(mode, radius, tuple(plus), tuple(minus)))
        return fams
    if regime in (Regime.UNIT, Regime.ASYMMETRIC_MID):
        r_big = b * d / 2
        cell = _tangency_cell_fr(p1, p2, r_big, d - r_big, metric)
        return [_Family(Mode.INTERSECTION, r_big, (cell,), (_reflect_cell(cell, m2),))]
    raise InternalError(f"no continuum family for regime {regime}")


# ---------------------------------------------------------------------------
# float fast paths (sound shortcuts only; the exact search is authoritative)


def _family_float_verts(fam: _Family) -> tuple[list[tuple[float, ...]], list[tuple[float, ...]]]:
    s1 = [_to_float(v) for cell in fam.side1 for v in cell[1]]
    s2 = [_to_float(v) for cell in fam.side2 for v in cell[1]]
    return s1, s2


def _prefilter(fam: _Family, others: list[tuple[float, ...]], metric: Metric) -> list[tuple[float, ...]]:
    """Blockers close enough to touch any lens of the family (conservative)."""
    s1, s2 = _family_float_verts(fam)
    radius = float(fam.radius)
    scale = max(1.0, radius, *(abs(x) for v in s1 + s2 for x in v))
    reach = radius + 1e-6 * scale

    def near(q: tuple[float, ...], verts: list[tuple[float, ...]]) -> bool:
        lo = [min(v[i] for v in verts) - reach for i in range(len(q))]
        hi = [max(v[i] for v in verts) + reach for i in range(len(q))]
        return all(l <= x <= h for x, l, h in zip(q, lo, hi))

    if fam.mode is Mode.UNION:
        return [q for q in others if near(q, s1) or near(q, s2)]
    return [q for q in others if near(q, s1) and near(q, s2)]


def _universally_blocked(fam: _Family, others: list[tuple[float, ...]], metric: Metric) -> bool:
    """True if one blocker provably covers the whole family (float, margined).

    d(q, .) is convex and every family side is a union of convex cells,
    so the maximum over a side is attained at a cell vertex.  A blocker
    within the shrunk threshold of every vertex of a side covers that
    whole side; margin 1e-7 dwarfs the float error, keeping the shortcut
    sound.  Intersection families need one blocker covering both sides,
    union families die when either side is covered.
    """
    if not others:
        return False
    s1, s2 = _family_float_verts(fam)
    radius = float(fam.radius)
    threshold = radius - 1e-7 * max(1.0, radius)
    if threshold <= 0:
        return False
    for q in others:
        m1 = max(dist(q, v, metric) for v in s1)
        m2 = max(dist(q, v, metric) for v in s2)
        if fam.mode is Mode.UNION:
            if m1 <= threshold or m2 <= threshold:
                return True
        elif m1 <= threshold and m2 <= threshold:
            return True
    return False
