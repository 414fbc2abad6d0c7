"""Search and similarity tools for small-doubling sets of lattice points.

A set L of reals with few pairwise sums and least elements 0 and 1 lives,
after the substitution m + n*alpha -> (m, n), inside Z^2, and its sumset
size is preserved.  This module classifies such point sets up to
*similarity*: translation composed with a GL_2(Z) change of basis.

winners_search(k, M) enumerates, up to reflection, every P in Z_{>=0}^2
with |P| = k containing the seed triangle {(0,0), (1,0), (0,1)} such that

    |P + P| <= M   and   |P + P| = |P' + P'| + 3,  P' = P \\ {(0,0)}.

The second condition forces every element beyond the seed to be a sum of
two previously chosen nonzero elements, so the branch-and-prune search
draws candidates from the current pairwise-sum buckets, appending points
in nondecreasing l1-norm ("score") and discarding any branch whose sum
count exceeds M.  A global memo of visited sets (closed under reflection
across the diagonal) collapses the many append orders that reach the same
set.

Points are encoded as (m << 8) | n so that point addition is a single
integer addition; coordinates stay far below 128 for every feasible call.
"""

from __future__ import annotations

import random
from math import gcd
from typing import Iterable, Sequence

Point = tuple[int, int]

SEED: frozenset[Point] = frozenset({(0, 0), (1, 0), (0, 1)})

GRIDS: dict[str, tuple[Point, ...]] = {
    "G1_8x2": tuple((m, n) for m in range(8) for n in range(2)),
    "G2_4x3": tuple((m, n) for m in range(4) for n in range(3)),
}

__all__ = [
    "SEED",
    "GRIDS",
    "winners_search",
    "verify_winner",
    "canonical_form",
    "similar_oracle",
    "contains_grid_embedding",
    "similarity_class_report",
]


def _enc(p: Point) -> int:
    return (p[0] << 8) | p[1]

def _dec(c: int) -> Point:
    return (c >> 8, c & 255)

def _reflect_code(c: int) -> int:
    return ((c & 255) << 8) | (c >> 8)


def _memo_key(codes: Sequence[int]) -> tuple[int, ...]:
    fwd = tuple(sorted(codes))
    rev = tuple(sorted(_reflect_code(c) for c in codes))
    return fwd if fwd <= rev else rev


def winners_search(k: int, M: int, debug: bool = False) -> list[frozenset[Point]]:
    """All seed-anchored k-point sets with at most M sums and minimal growth.

    Returns one representative per reflection pair, as frozensets of (m, n)
    pairs, sorted for determinism.  Requires k >= 3; the seed itself is the
    unique answer for k = 3 (it has exactly 6 pairwise sums).

    With debug=True, about 1% of search nodes (seeded, reproducible) get
    their incremental sum count re-verified against a from-scratch sumset.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    if k == 3:
        return [SEED] if M >= 6 else []

    rng = random.Random(0x5eed) if debug else None
    winners: list[tuple[int, ...]] = []
    used: set[tuple[int, ...]] = set()

    seed_codes = [0, 1, 256]                      # (0,0), (0,1), (1,0)
    sums = {0, 1, 256, 2, 257, 512}               # seed pairwise sums
    buckets: dict[int, set[int]] = {0: {0}, 1: {1, 256}, 2: {2, 257, 512}}
    used.add(_memo_key(seed_codes))

    def search(codes: list[int], member: set[int], t: int) -> None:
        # snapshot the candidate pool: mutations below only affect deeper levels
        snapshot = [
            (j, x)
            for j in sorted(buckets)
            if j >= t
            for x in sorted(buckets[j])
            if x not in member
        ]
        size_next = len(codes) + 1
        for j, x in snapshot:
            codes.append(x)
            key = _memo_key(codes)
            if key in used:
                codes.pop()
                continue
            used.add(key)
            added = []
            for y in codes:
                z = x + y
                if z not in sums:
                    sums.add(z)
                    added.append(z)
            if rng is not None and rng.random() < 0.01:
                if len(sums) != _sumset_size(_dec(c) for c in codes):
                    raise AssertionError(
                        "incremental sum bookkeeping diverged from scratch recount"
                    )
            if len(sums) <= M:
                if size_next == k:
                    winners.append(tuple(sorted(codes)))
                else:
                    for z in added:
                        q = (z >> 8) + (z & 255)
                        buckets.setdefault(q, set()).add(z)
                    member.add(x)
                    search(codes, member, j)
                    member.discard(x)
                    for z in added:
                        q = (z >> 8) + (z & 255)
                        buckets[q].discard(z)
            for z in added:
                sums.discard(z)
            codes.pop()

    search(seed_codes, set(seed_codes), 0)
    out = [frozenset(_dec(c) for c in w) for w in winners]
    return sorted(out, key=lambda P: tuple(sorted(P)))


def _sumset_size(points: Iterable[Point]) -> int:
    pts = list(points)
    out = set()
    for i, (a0, a1) in enumerate(pts):
        for b0, b1 in pts[i:]:
            out.add((a0 + b0, a1 + b1))
    return len(out)


def verify_winner(P: Iterable[Point], k: int, M: int) -> bool:
    """Post-hoc check of the three defining conditions, from scratch."""
    pts = set(map(tuple, P))
    if len(pts) != k or not SEED <= pts:
        return False
    if any(m < 0 or n < 0 for m, n in pts):
        return False
    full = _sumset_size(pts)
    return full <= M and full == _sumset_size(pts - {(0, 0)}) + 3


# ----------------------------------------------------------------------
# similarity
# ----------------------------------------------------------------------

def _as_points(P: Iterable[Point]) -> list[Point]:
    pts = sorted({(int(m), int(n)) for m, n in P})
    if not pts:
        raise ValueError("point set must be nonempty")
    return pts


def _collinear(pts: Sequence[Point]) -> bool:
    if len(pts) < 3:
        return True
    (x0, y0) = pts[0]
    (x1, y1) = pts[1]
    return all((x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) == 0 for x, y in pts[2:])


def _line_values(pts: Sequence[Point], divide_gcd: bool) -> tuple[int, ...]:
    """Positions of collinear points along their line, translated to start 0.

    In units of the primitive direction; optionally divided by the common
    gcd (the coarse normalization that only remembers "contained in an
    arithmetic progression").  Orientation is fixed by taking the lex-least
    of the two traversal directions.
    """
    if len(pts) == 1:
        return (0,)
    x0, y0 = pts[0]
    dx, dy = pts[-1][0] - x0, pts[-1][1] - y0
    g = gcd(abs(dx), abs(dy))
    ux, uy = dx // g, dy // g
    vals = [(x - x0) * ux + (y - y0) * uy for x, y in pts]  # u is primitive:
    # dot with u recovers t * (ux^2 + uy^2); divide it out exactly
    n2 = ux * ux + uy * uy
    vals = [v // n2 for v in vals]
    if divide_gcd:
        g2 = 0
        for v in vals:
            g2 = gcd(g2, abs(v))
        if g2 > 1:
            vals = [v // g2 for v in vals]
    top = vals[-1]
    rev = sorted(top - v for v in vals)
    fwd = tuple(vals)
    return min(fwd, tuple(rev))


def canonical_form(P: Iterable[Point]) -> tuple[Point, ...]:
    """Canonical representative of the similarity class of P.

    Two-dimensional sets: enumerate every ordered triple of points whose
    difference pair is a unimodular basis (determinant +-1), map that basis
    to the standard one, translate the image so its coordinate minima are
    0, and keep the lexicographically least sorted image.  The result is
    invariant under translation and GL_2(Z), and equal canonical forms are
    equivalent to similarity for such sets.

    Collinear sets are normalized more coarsely, onto the x-axis with
    positions divided by their gcd: this identifies every set contained in
    an arithmetic progression of a given combinatorial type, which is
    deliberately coarser than strict similarity (see similar_oracle).

    Raises ValueError for two-dimensional sets without any unimodular
    frame (their differences span a proper sublattice); no set arising
    from the searches here does, as they all contain the seed triangle.
    """
    pts = _as_points(P)
    if _collinear(pts):
        return tuple((v, 0) for v in _line_values(pts, divide_gcd=True))
    best: tuple[Point, ...] | None = None
    n = len(pts)
    for i in range(n):
        xi, yi = pts[i]
        for j in range(n):
            if j == i:
                continue
            d1x, d1y = pts[j][0] - xi, pts[j][1] - yi
            for l in range(n):
                if l == i or l == j:
                    continue
                d2x, d2y = pts[l][0] - xi, pts[l][1] - yi
                det = d1x * d2y - d1y * d2x
                if det != 1 and det != -1:
                    continue
                # inverse of the basis (d1 d2), integral because det = +-1
                a, b = d2y * det, -d2x * det
                c, d = -d1y * det, d1x * det
                img = [(a * (x - xi) + b * (y - yi), c * (x - xi) + d * (y - yi))
                       for x, y in pts]
                mx = min(p[0] for p in img)
                my = min(p[1] for p in img)
                cand = tuple(sorted((x - mx, y - my) for x, y in img))
                if best is None or cand < best:
                    best = cand
    if best is None:
        raise ValueError("no unimodular frame: differences span a proper sublattice")
    return best


def similar_oracle(P: Iterable[Point], Q: Iterable[Point]) -> bool:
    """Decide exactly whether Q = M(P) + t for some M in GL_2(Z), t in Z^2.

    For two-dimensional P: fix one non-collinear triple of P and try every
    ordered triple of Q as its image; the candidate matrix is integral with
    determinant +-1 iff the triple correspondence extends, and the full
    image is then compared to Q.  Collinear sets are compared by their
    exact positions in primitive-direction units up to translation and
    orientation; no gcd division, so {0,2,4} is not similar to {0,1,2}.
    """
    ps, qs = _as_points(P), _as_points(Q)
    if len(ps) != len(qs):
        return False
    pc, qc = _collinear(ps), _collinear(qs)
    if pc != qc:
        return False
    if pc:
        return _line_values(ps, divide_gcd=False) == _line_values(qs, divide_gcd=False)

    # fixed non-collinear anchor triple in P
    p0, p1 = ps[0], ps[1]
    p2 = next(
        p for p in ps[2:]
        if (p1[0] - p0[0]) * (p[1] - p0[1]) - (p1[1] - p0[1]) * (p[0] - p0[0]) != 0
    )
    b1 = (p1[0] - p0[0], p1[1] - p0[1])
    b2 = (p2[0] - p0[0], p2[1] - p0[1])
    detp = b1[0] * b2[1] - b1[1] * b2[0]
    qset = set(qs)
    n = len(qs)
    for i in range(n):
        q0 = qs[i]
        for j in range(n):
            if j == i:
                continue
            c1 = (qs[j][0] - q0[0], qs[j][1] - q0[1])
            for l in range(n):
                if l == i or l == j:
                    continue
                c2 = (qs[l][0] - q0[0], qs[l][1] - q0[1])
                detq = c1[0] * c2[1] - c1[1] * c2[0]
                if detq != detp and detq != -detp:
                    continue
                # M = (c1 c2) * (b1 b2)^{-1}; integrality check entrywise
                m00 = c1[0] * b2[1] - c2[0] * b1[1]
                m01 = c2[0] * b1[0] - c1[0] * b2[0]
                m10 = c1[1] * b2[1] - c2[1] * b1[1]
                m11 = c2[1] * b1[0] - c1[1] * b2[0]
                if any(v % detp for v in (m00, m01, m10, m11)):
                    continue
                m00, m01, m10, m11 = (v // detp for v in (m00, m01, m10, m11))
                tx = q0[0] - (m00 * p0[0] + m01 * p0[1])
                ty = q0[1] - (m10 * p0[0] + m11 * p0[1])
                if all((m00 * x + m01 * y + tx, m10 * x + m11 * y + ty) in qset
                       for x, y in ps):
                    return True
    return False


def _primitive(dx: int, dy: int) -> tuple[int, int, int]:
    g = gcd(abs(dx), abs(dy))
    return dx // g, dy // g, g


def contains_grid_embedding(P: Iterable[Point], grid: str, threshold: int) -> bool:
    """True iff some similarity image of P has >= threshold points in the grid.

    Witness maps are reconstructed from anchor correspondences: a
    non-collinear triple of P against every grid triple with matching
    determinant, plus line maps from point pairs for witnesses whose
    in-grid part is collinear.  Together these are exhaustive: any map
    placing >= threshold points inside the grid places a triple (or, in
    the collinear case, a pair) whose images are their actual positions.
    """
    if grid not in GRIDS:
        raise ValueError(f"unknown grid {grid!r}; expected one of {sorted(GRIDS)}")
    pts = _as_points(P)
    G = GRIDS[grid]
    gset = set(G)
    if threshold <= 1:
        return threshold <= 0 or len(pts) >= 1

    # line witnesses: map an ordered pair of P onto an ordered pair of grid
    # points with a compatible primitive step, then count along the line
    for ia in range(len(pts)):
        ax, ay = pts[ia]
        for ib in range(len(pts)):
            if ib == ia:
                continue
            ux, uy, t = _primitive(pts[ib][0] - ax, pts[ib][1] - ay)
            on_line = [
                (p, ((p[0] - ax) * ux + (p[1] - ay) * uy) // (ux * ux + uy * uy))
                for p in pts
                if (p[0] - ax) * uy - (p[1] - ay) * ux == 0
            ]
            if len(on_line) < threshold:
                continue
            for ga in G:
                for gb in G:
                    if gb == ga:
                        continue
                    wx, wy = gb[0] - ga[0], gb[1] - ga[1]
                    if wx % t or wy % t:
                        continue
                    wx, wy = wx // t, wy // t
                    if gcd(abs(wx), abs(wy)) != 1:
                        continue
                    cnt = sum(
                        (ga[0] + v * wx, ga[1] + v * wy) in gset for _, v in on_line
                    )
                    if cnt >= threshold:
                        return True

    # planar witnesses: triple against grid triples, bucketed by determinant
    gtriples: dict[int, list[tuple[Point, Point, Point]]] = {}
    for g0 in G:
        for g1 in G:
            if g1 == g0:
                continue
            e1 = (g1[0] - g0[0], g1[1] - g0[1])
            for g2 in G:
                if g2 == g0 or g2 == g1:
                    continue
                e2 = (g2[0] - g0[0], g2[1] - g0[1])
                det = e1[0] * e2[1] - e1[1] * e2[0]
                if det:
                    gtriples.setdefault(det, []).append((g0, g1, g2))

    n = len(pts)
    for i in range(n):
        p0 = pts[i]
        for j in range(n):
            if j == i:
                continue
            b1 = (pts[j][0] - p0[0], pts[j][1] - p0[1])
            for l in range(n):
                if l == i or l == j:
                    continue
                b2 = (pts[l][0] - p0[0], pts[l][1] - p0[1])
                detp = b1[0] * b2[1] - b1[1] * b2[0]
                if detp == 0:
                    continue
                candidates = gtriples.get(detp, ())
                if -detp != detp:
                    candidates = list(candidates) + gtriples.get(-detp, [])
                for g0, g1, g2 in candidates:
                    c1 = (g1[0] - g0[0], g1[1] - g0[1])
                    c2 = (g2[0] - g0[0], g2[1] - g0[1])
                    m00 = c1[0] * b2[1] - c2[0] * b1[1]
                    m01 = c2[0] * b1[0] - c1[0] * b2[0]
                    m10 = c1[1] * b2[1] - c2[1] * b1[1]
                    m11 = c2[1] * b1[0] - c1[1] * b2[0]
                    if any(v % detp for v in (m00, m01, m10, m11)):
                        continue
                    a, b, c, d = (v // detp for v in (m00, m01, m10, m11))
                    tx = g0[0] - (a * p0[0] + b * p0[1])
                    ty = g0[1] - (c * p0[0] + d * p0[1])
                    cnt = sum(
                        (a * x + b * y + tx, c * x + d * y + ty) in gset
                        for x, y in pts
                    )
                    if cnt >= threshold:
                        return True
    return False


def similarity_class_report(sets: Iterable[Iterable[Point]]) -> list[dict]:
    """Group sets by canonical form: [{representative, count}, ...], sorted."""
    classes: dict[tuple[Point, ...], int] = {}
    for P in sets:
        key = canonical_form(P)
        classes[key] = classes.get(key, 0) + 1
    return [
        {"representative": [list(p) for p in rep], "count": classes[rep]}
        for rep in sorted(classes)
    ]
