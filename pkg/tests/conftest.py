"""Shared fixtures and independent-oracle helpers for the test suite."""

from __future__ import annotations

import random

from betaskel.geometry import Metric, dist


def lattice_coords(rng: random.Random, n: int, dim: int, span: int = 50) -> list[tuple[float, ...]]:
    """n distinct integer-lattice points in [0, span]^dim."""
    seen: set[tuple[float, ...]] = set()
    out: list[tuple[float, ...]] = []
    while len(out) < n:
        p = tuple(float(rng.randint(0, span)) for _ in range(dim))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def random_pair(rng: random.Random, dim: int, span: int = 20) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """A distinct integer point pair; degenerate gaps appear often on purpose."""
    while True:
        v1 = tuple(float(rng.randint(-span, span)) for _ in range(dim))
        v2 = tuple(float(rng.randint(-span, span)) for _ in range(dim))
        if v1 != v2:
            return v1, v2


def line_min_pair_distance_sum(
    p: tuple[float, ...],
    v1: tuple[float, ...],
    v2: tuple[float, ...],
    vec: tuple[float, ...],
    metric: Metric,
) -> float:
    """Exact min over t of d(v1, p+t*vec) + d(p+t*vec, v2) for arm vectors.

    For the unit arm vectors used here (a +-1 sign vector under Linf, a
    coordinate axis under L1) the objective is convex piecewise linear in
    t with breakpoints where some coordinate difference changes sign, so
    evaluating at every breakpoint gives the exact minimum.  Independent
    of the package's span-interval formulas.
    """
    breaks: list[float] = []
    for i, s in enumerate(vec):
        if s != 0:
            breaks.append((v1[i] - p[i]) / s)
            breaks.append((v2[i] - p[i]) / s)
    # kinks of a max-of-V-shapes envelope sit at pairwise crossing points
    # (midpoints), not only at the V minima themselves
    candidates = list(breaks)
    for i in range(len(breaks)):
        for j in range(i + 1, len(breaks)):
            candidates.append((breaks[i] + breaks[j]) / 2)
    best = float("inf")
    for t in candidates:
        q = tuple(a + t * s for a, s in zip(p, vec))
        best = min(best, dist(v1, q, metric) + dist(q, v2, metric))
    return best


# ---------------------------------------------------------------------------
# independent center-locus samplers: the dense oracle for the lens module.
# Loci are rebuilt from the ball-boundary definitions (cube face pairs for
# Linf, sign-pattern facet pairs for L1) rather than the package's arm
# parametrization, so enumeration bugs cannot cancel out.

import itertools
import math

from betaskel.geometry import cross_arms
from betaskel.lenses import Mode, Regime, Variant, regime_of

LOCUS_TOL = 1e-7


def _grid(lo: float, hi: float, k: int) -> list[float]:
    if hi - lo <= 1e-12:
        return [lo]
    k = max(k, 2)
    return [lo + (hi - lo) * i / (k - 1) for i in range(k)]


def _round_dedupe(pts: list[tuple[float, ...]]) -> list[tuple[float, ...]]:
    seen: set[tuple[float, ...]] = set()
    out = []
    for p in pts:
        key = tuple(round(x, 9) for x in p)
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def _thin(pts: list[tuple[float, ...]], limit: int) -> list[tuple[float, ...]]:
    pts = sorted(_round_dedupe(pts))
    if len(pts) <= limit:
        return pts
    step = (len(pts) + limit - 1) // limit
    return pts[::step]


def _linf_equidistant_samples(v1, v2, radius, k):
    """Points on both cube boundaries, via all face-pair intersections."""
    dim = len(v1)
    lo = [max(a, b) - radius for a, b in zip(v1, v2)]
    hi = [min(a, b) + radius for a, b in zip(v1, v2)]
    if any(l > h + 1e-12 for l, h in zip(lo, hi)):
        return []
    pts = []
    for i in range(dim):
        for s1 in (1.0, -1.0):
            for j in range(dim):
                for s2 in (1.0, -1.0):
                    pin = {i: v1[i] + s1 * radius}
                    if i == j:
                        if abs(pin[i] - (v2[j] + s2 * radius)) > 1e-12:
                            continue
                    else:
                        pin[j] = v2[j] + s2 * radius
                    if any(not (lo[a] - 1e-12 <= w <= hi[a] + 1e-12) for a, w in pin.items()):
                        continue
                    free = [a for a in range(dim) if a not in pin]
                    for combo in itertools.product(*[_grid(lo[a], hi[a], k) for a in free]):
                        p = [0.0] * dim
                        for a, w in pin.items():
                            p[a] = w
                        for a, w in zip(free, combo):
                            p[a] = w
                        pts.append(tuple(p))
    return pts


def _l1_signs_ok(p, v, sigma, tol=1e-9):
    return all(s * (x - w) >= -tol for s, x, w in zip(sigma, p, v))


def _l1_facet_overlap_samples(v1, v2, sigma, radius, k):
    """Coincident-facet piece: travel t_m >= floor_m, sum t_m = radius."""
    dim = len(v1)
    floors = [max(0.0, s * (b - a)) for s, a, b in zip(sigma, v1, v2)]
    pts = []
    if dim == 2:
        for t0 in _grid(floors[0], radius - floors[1], k):
            t1 = radius - t0
            if t1 >= floors[1] - 1e-9 and t0 >= floors[0] - 1e-9:
                pts.append(tuple(a + s * w for a, s, w in zip(v1, sigma, (t0, t1))))
        return pts
    hi0 = radius - floors[1] - floors[2]
    if hi0 < floors[0] - 1e-12:
        return []
    for t0 in _grid(floors[0], hi0, k):
        hi1 = radius - t0 - floors[2]
        if hi1 < floors[1] - 1e-12:
            continue
        for t1 in _grid(floors[1], hi1, k):
            t2 = radius - t0 - t1
            if t2 >= floors[2] - 1e-9:
                pts.append(tuple(a + s * w for a, s, w in zip(v1, sigma, (t0, t1, t2))))
    return pts


def _l1_plane_pair_line_samples(v1, v2, s1, s2, b1, b2, k):
    """d=3: the clipped line where facet planes of the two balls cross."""
    u = (
        s1[1] * s2[2] - s1[2] * s2[1],
        s1[2] * s2[0] - s1[0] * s2[2],
        s1[0] * s2[1] - s1[1] * s2[0],
    )
    axis = max(range(3), key=lambda a: abs(u[a]))
    if abs(u[axis]) < 1e-12:
        return []
    a0, a1 = [a for a in range(3) if a != axis]
    det = s1[a0] * s2[a1] - s1[a1] * s2[a0]
    if abs(det) < 1e-12:
        return []
    p0 = [0.0, 0.0, 0.0]
    p0[a0] = (b1 * s2[a1] - b2 * s1[a1]) / det
    p0[a1] = (s1[a0] * b2 - s2[a0] * b1) / det
    t_lo, t_hi = -math.inf, math.inf
    for sigma, v in ((s1, v1), (s2, v2)):
        for m in range(3):
            coef = sigma[m] * u[m]
            const = sigma[m] * (p0[m] - v[m])
            if abs(coef) < 1e-12:
                if const < -1e-9:
                    return []
                continue
            bound = (-1e-9 - const) / coef
            if coef > 0:
                t_lo = max(t_lo, bound)
            else:
                t_hi = min(t_hi, bound)
    if t_lo > t_hi:
        return []
    return [tuple(p + t * w for p, w in zip(p0, u)) for t in _grid(t_lo, t_hi, k)]


def _l1_equidistant_samples(v1, v2, radius, k):
    dim = len(v1)
    pts = []
    sigmas = list(itertools.product((1.0, -1.0), repeat=dim))
    for s1 in sigmas:
        b1 = radius + sum(s * x for s, x in zip(s1, v1))
        for s2 in sigmas:
            b2 = radius + sum(s * x for s, x in zip(s2, v2))
            if s1 == s2:
                if abs(b1 - b2) <= 1e-12:
                    pts.extend(_l1_facet_overlap_samples(v1, v2, s1, radius, k))
                continue
            if all(a == -b for a, b in zip(s1, s2)):
                continue
            if dim == 2:
                det = s1[0] * s2[1] - s1[1] * s2[0]
                if abs(det) < 1e-12:
                    continue
                p = ((b1 * s2[1] - b2 * s1[1]) / det, (s1[0] * b2 - s2[0] * b1) / det)
                if _l1_signs_ok(p, v1, s1) and _l1_signs_ok(p, v2, s2):
                    pts.append(p)
            else:
                pts.extend(_l1_plane_pair_line_samples(v1, v2, s1, s2, b1, b2, k))
    return pts


def sample_equidistant_centers(v1, v2, radius, metric, k=4):
    """Dense samples of {p : d(p,v1) = d(p,v2) = radius}."""
    if metric is Metric.LINF:
        raw = _linf_equidistant_samples(v1, v2, radius, k)
    else:
        raw = _l1_equidistant_samples(v1, v2, radius, k)
    return _round_dedupe(
        [
            p
            for p in raw
            if abs(dist(p, v1, metric) - radius) <= LOCUS_TOL
            and abs(dist(p, v2, metric) - radius) <= LOCUS_TOL
        ]
    )


def sample_tangency_centers(v1, v2, r_big, r_small, metric, k=4):
    """Dense samples of {p : d(v1,p) = r_big, d(v2,p) = r_small}, r_big + r_small = d."""
    dim = len(v1)
    tol = 1e-9
    pts = []
    if metric is Metric.LINF:
        lo = [max(a - r_big, b - r_small) for a, b in zip(v1, v2)]
        hi = [min(a + r_big, b + r_small) for a, b in zip(v1, v2)]
        if any(l > h + tol for l, h in zip(lo, hi)):
            return []
        for combo in itertools.product(*[_grid(l, h, k) for l, h in zip(lo, hi)]):
            pts.append(tuple(combo))
    else:
        gaps = [abs(a - b) for a, b in zip(v1, v2)]
        eta = [1.0 if b >= a else -1.0 for a, b in zip(v1, v2)]
        nz = [i for i in range(dim) if gaps[i] > tol]
        if not nz:
            return []
        free, last = nz[:-1], nz[-1]
        combos = itertools.product(*[_grid(0.0, gaps[i], k) for i in free]) if free else [()]
        for combo in combos:
            t_last = r_big - sum(combo)
            if -tol <= t_last <= gaps[last] + tol:
                p = list(v1)
                for i, t in zip(free, combo):
                    p[i] = v1[i] + eta[i] * t
                p[last] = v1[last] + eta[last] * min(max(t_last, 0.0), gaps[last])
                pts.append(tuple(p))
    return _round_dedupe(
        [
            p
            for p in pts
            if abs(dist(p, v1, metric) - r_big) <= LOCUS_TOL
            and abs(dist(p, v2, metric) - r_small) <= LOCUS_TOL
        ]
    )


def sample_far_sphere_centers(v1, v2, r_small, metric, k=6):
    """Dense samples of {p : d(v2,p) = r_small, d(v1,p) = d + r_small}."""
    dim = len(v1)
    pts = []
    if metric is Metric.L1:
        for sigma in itertools.product((1.0, -1.0), repeat=dim):
            if dim == 2:
                for t0 in _grid(0.0, r_small, k):
                    q = (sigma[0] * t0, sigma[1] * (r_small - t0))
                    pts.append(tuple(a + b for a, b in zip(v2, q)))
            else:
                for t0 in _grid(0.0, r_small, k):
                    for t1 in _grid(0.0, r_small - t0, k):
                        q = (sigma[0] * t0, sigma[1] * t1, sigma[2] * (r_small - t0 - t1))
                        pts.append(tuple(a + b for a, b in zip(v2, q)))
    else:
        for i in range(dim):
            for s in (1.0, -1.0):
                grids = [
                    [v2[a] + s * r_small] if a == i else _grid(v2[a] - r_small, v2[a] + r_small, k)
                    for a in range(dim)
                ]
                for combo in itertools.product(*grids):
                    pts.append(tuple(combo))
    d = dist(v1, v2, metric)
    return _round_dedupe(
        [
            p
            for p in pts
            if abs(dist(p, v2, metric) - r_small) <= LOCUS_TOL
            and abs(dist(p, v1, metric) - (d + r_small)) <= LOCUS_TOL
        ]
    )


def opposite_arm_center_pairs(centers, v1, v2, metric):
    """All sampled pairs sitting on opposite arms of a shared direction."""
    by_arm: dict[tuple, list] = {}
    for c in centers:
        for arm in cross_arms(c, v1, v2, metric):
            if arm.side is None:
                continue
            key = (arm.direction.signs, arm.direction.axis)
            by_arm.setdefault((key, arm.side), []).append(c)
    pairs = []
    for (key, side), plus in sorted(by_arm.items(), key=repr):
        if side != "+":
            continue
        for a in plus:
            for b in by_arm.get((key, "-"), []):
                pairs.append((a, b))
    return pairs


def sampled_center_family(v1, v2, beta, metric, variant=Variant.LENS, k=4, limit=30):
    """Sampled valid (c1, c2, r1, r2, mode) tuples straight from the definitions."""
    regime = regime_of(beta, variant)
    d = dist(v1, v2, metric)
    m2 = tuple(a + b for a, b in zip(v1, v2))
    fam = []
    if regime in (Regime.EQUIDISTANT_SMALL, Regime.CIRCLE_LARGE):
        radius = d / (2 * beta) if regime is Regime.EQUIDISTANT_SMALL else beta * d / 2
        mode = Mode.INTERSECTION if regime is Regime.EQUIDISTANT_SMALL else Mode.UNION
        centers = _thin(sample_equidistant_centers(v1, v2, radius, metric, k), limit)
        for a, b in opposite_arm_center_pairs(centers, v1, v2, metric):
            fam.append((a, b, radius, radius, mode))
    elif regime in (Regime.UNIT, Regime.ASYMMETRIC_MID):
        r_big = beta * d / 2
        c1s = _thin(sample_tangency_centers(v1, v2, r_big, d - r_big, metric, k), limit)
        c2s = [tuple(t - x for t, x in zip(m2, c)) for c in c1s]
        for a in c1s:
            for b in c2s:
                fam.append((a, b, r_big, r_big, Mode.INTERSECTION))
    elif regime is Regime.RNG:
        fam.append((v2, v1, d, d, Mode.INTERSECTION))
    else:
        r_big = beta * d / 2
        r_small = (beta / 2 - 1) * d
        c1s = _thin(sample_far_sphere_centers(v1, v2, r_small, metric, k + 2), limit)
        c2s = [tuple(t - x for t, x in zip(m2, c)) for c in c1s]
        # Only center pairs on opposite arms of a shared direction admit no
        # shortest path dodging the between-set; interior face points fail.
        for a, b in opposite_arm_center_pairs(_round_dedupe(c1s + c2s), v1, v2, metric):
            if abs(dist(a, v2, metric) - r_small) > LOCUS_TOL:
                a, b = b, a
            if abs(dist(a, v2, metric) - r_small) > LOCUS_TOL:
                continue
            if abs(dist(b, v1, metric) - r_small) > LOCUS_TOL:
                continue
            fam.append((a, b, r_big, r_big, Mode.INTERSECTION))
    return fam


ORACLE_CUSHION = 1e-6


def family_edge_decision(coords, i1, i2, family, metric, eps=ORACLE_CUSHION):
    """True iff some family region contains no point besides the endpoints.

    Sampled centers sit within LOCUS_TOL of the true center locus, so a
    sample free by less than that error can approximate a locus point
    that a boundary-touching blocker actually covers (regions are
    closed).  The cushion exceeds the sampling error, making a True
    verdict certify a genuinely free region on the exact locus.
    """
    others = [c for t, c in enumerate(coords) if t != i1 and t != i2]
    for c1, c2, r1, r2, mode in family:
        empty = True
        for p in others:
            in1 = dist(p, c1, metric) <= r1 + eps
            in2 = dist(p, c2, metric) <= r2 + eps
            inside = (in1 or in2) if mode is Mode.UNION else (in1 and in2)
            if inside:
                empty = False
                break
        if empty:
            return True
    return False
