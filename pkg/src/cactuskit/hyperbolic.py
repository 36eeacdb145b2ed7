"""Poincaré-disk embedding of the degree-3 affine ball as the {4,6} tiling.

The Cayley graph of the degree-3 affine group is 6-regular, every relation
pair spans a 4-cycle, and six squares surround every vertex.  That is the
combinatorics of the tessellation of the hyperbolic plane by regular
quadrilaterals with interior angle π/3 (six around each vertex, since
6 · π/3 = 2π).  This module realizes the correspondence numerically:

* ``tiling_edge_length`` solves for the side length of the π/3-angled
  regular quadrilateral, the one metric constant of the tiling;
* ``embed_ball`` walks a ball breadth-first and assigns every vertex a disk
  coordinate.  Each vertex carries a *frame*: a base direction plus an
  orientation sign telling in which rotational sense the six edge labels
  fan out at π/3 increments.  The label order around a vertex is the cyclic
  sequence in which consecutive labels form a relation pair, so that each
  gap between neighbouring edges is one square.  Chirality follows the
  orientation character of the group's action on the plane: a full-circle
  generator is a half-turn about its edge midpoint (it swaps the two
  squares flanking that edge), so crossing such an edge keeps the
  rotational sense, while a two-element arc acts as a reflection (each
  flanking square maps to itself) and reverses it.

No step of the construction is fitted: once the identity's frame is fixed,
every other placement is forced.  A vertex reachable along several paths is
therefore placed several times, and ``embed_ball`` demands the placements
agree to 1e-6 — a strong numerical certificate that the graph really is the
1-skeleton of the tiling out to the built radius.

Distances use the standard disk metric.  ``qi_fit`` and ``four_point_delta``
quantify, over a finite ball, how close the graph metric is to the plane's
metric and how thin its triangles are; both freeze their output as
regression values in the test suite rather than claiming proofs.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate, combinations
from random import Random
from typing import NamedTuple

from .cayley import CayleyBall, VertexKey
from .core import (
    ClosureViolation,
    Family,
    NotAJ3,
    TooSmall,
    presentation,
)

#: Edge labels in cyclic order around a vertex: consecutive entries (mod 6)
#: are exactly the relation pairs, one spanned square per gap.
_DIRECTIONS: tuple[tuple[int, int], ...] = (
    (1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2),
)

_CLOSURE_TOL = 1e-6


@dataclass(frozen=True)
class HPoint:
    """A point of the open unit disk, carrying the hyperbolic metric."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if self.x * self.x + self.y * self.y >= 1.0:
            raise ValueError(f"({self.x}, {self.y}) is not inside the unit disk")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


def _hp(z: complex) -> HPoint:
    return HPoint(z.real, z.imag)


def hyperbolic_distance(p1: HPoint, p2: HPoint) -> float:
    z1, z2 = p1.z, p2.z
    num = abs(z1 - z2)
    den = abs(1.0 - z1.conjugate() * z2)
    return 2.0 * math.atanh(num / den)


def _translate(c: complex, z: complex) -> complex:
    """Disk isometry sending 0 to c with no rotation at the origin."""
    return (z + c) / (1.0 + c.conjugate() * z)


def _to_origin(c: complex, z: complex) -> complex:
    """Disk isometry sending c to 0; angle-preserving at c."""
    return (z - c) / (1.0 - c.conjugate() * z)


def tiling_edge_length() -> float:
    """Side length of the regular quadrilateral with vertex angle π/3.

    The fundamental right triangle of the tiling joins a face center, an
    edge midpoint and a vertex; its angles are π/4 at the center (a quarter
    of the square), π/6 at the vertex (half the vertex angle) and a right
    angle at the midpoint, and the leg facing the center angle is half an
    edge.  The hyperbolic right-triangle relation cos(center angle) =
    cosh(opposite leg)·sin(vertex angle) pins the side:
    cosh(a/2)·sin(π/6) = cos(π/4), i.e. cosh(a/2) = √2 and cosh(a) = 3.
    Solved by bisection; the closed form 2·arccosh(cos(π/4)/sin(π/6)) and a
    construct-one-square-and-measure-it cross-check live in the tests.
    """
    target = math.cos(math.pi / 4) / math.sin(math.pi / 6)

    def f(a: float) -> float:
        return math.cosh(a / 2) - target

    lo, hi = 1.0, 2.5
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-15:
            break
    return (lo + hi) / 2


@dataclass(frozen=True, eq=False)
class Embedding:
    """A ball's vertices placed in the disk, identity at the origin."""

    ball: CayleyBall
    placement: dict[VertexKey, HPoint]
    edge_length: float

    def point(self, key: VertexKey) -> HPoint:
        return self.placement[key]


def embed_ball(b: CayleyBall) -> Embedding:
    """Deterministic {4,6} placement of a degree-3 affine ball.

    The identity sits at the origin with its six edges at angles k·π/3 in
    the fixed label order; every further vertex is forced by frame
    propagation.  Raises ClosureViolation if two paths disagree about any
    position by more than 1e-6 (hyperbolic), which would mean the graph is
    not locally the tiling.
    """
    if b.spec.family is not Family.AFFINE or b.spec.degree != 3:
        raise NotAJ3(f"embedding is defined for the degree-3 affine group, got {b.spec}")
    pres = presentation(b.spec)
    dir_of_gid = {pres.gid[pq]: k for k, pq in enumerate(_DIRECTIONS)}
    # Orientation character of each generator's isometry: full-circle arcs
    # are half-turns (+1), two-element arcs are reflections (-1).
    eps = [1 if pres.card[g] == 3 else -1 for g in range(len(pres.gens))]

    a = tiling_edge_length()
    step_r = math.tanh(a / 2.0)  # euclidean radius of one edge from the origin
    third = math.pi / 3.0

    n = len(b)
    pos: list[complex | None] = [None] * n
    base: list[float] = [0.0] * n
    orient: list[int] = [0] * n
    pos[0] = 0.0 + 0.0j
    base[0] = 0.0
    orient[0] = 1

    for vid in range(n):
        z_v = pos[vid]
        if z_v is None:  # pragma: no cover - BFS order guarantees placement
            raise ClosureViolation(f"vertex {vid} reached before any parent placed it")
        for nb, gid in b.adj_entries(vid):
            k = dir_of_gid[gid]
            phi = base[vid] + orient[vid] * k * third
            z_nb = _translate(z_v, step_r * complex(math.cos(phi), math.sin(phi)))
            if pos[nb] is None:
                pos[nb] = z_nb
                orient[nb] = orient[vid] * eps[gid]
                back = _to_origin(z_nb, z_v)
                base[nb] = math.atan2(back.imag, back.real) - orient[nb] * k * third
            else:
                gap = 2.0 * math.atanh(
                    abs(z_nb - pos[nb]) / abs(1.0 - z_nb.conjugate() * pos[nb])
                )
                if gap > _CLOSURE_TOL:
                    raise ClosureViolation(
                        f"vertex {b.word(b.key(nb)).text()!r} placed {gap:.3e} apart "
                        f"along different paths (tolerance {_CLOSURE_TOL:.0e})"
                    )

    placement = {b.key(vid): _hp(pos[vid]) for vid in range(n)}
    return Embedding(ball=b, placement=placement, edge_length=a)


class QIFit(NamedTuple):
    lam: float
    c: float
    pair_count: int
    max_violation: float


def qi_fit(e: Embedding) -> QIFit:
    """Best multiplicative constant relating graph and disk distances.

    Sweeps every vertex pair whose in-ball graph distance is trusted (depth
    sum within the radius) and returns the least lambda with
    d_G/lambda ≤ d_H ≤ lambda·d_G, additive constant 0.  max_violation is 0
    by construction — the constants are fitted, not asserted.
    """
    b = e.ball
    if b.radius < 3:
        raise TooSmall(f"radius {b.radius} ball cannot support a distance fit; need >= 3")
    n = len(b)
    half = b.radius // 2
    core = [v for v in range(n) if b.depth_at(v) <= half]
    table = {v: b.distances_from(v) for v in core}

    points = [e.placement[b.key(v)].z for v in range(n)]
    lam = 1.0
    pairs = 0
    radius = b.radius
    for u in range(n):
        du = b.depth_at(u)
        zu = points[u]
        for v in range(u + 1, n):
            if du + b.depth_at(v) > radius:
                continue
            row = table.get(u)
            d_g = row[v] if row is not None else table[v][u]
            zv = points[v]
            d_h = 2.0 * math.atanh(abs(zu - zv) / abs(1.0 - zu.conjugate() * zv))
            ratio = d_h / d_g if d_h > d_g else d_g / d_h
            if ratio > lam:
                lam = ratio
            pairs += 1
    return QIFit(lam=lam, c=0.0, pair_count=pairs, max_violation=0.0)


class FourPointDelta(NamedTuple):
    delta: float
    quadruples: int
    sampled: bool


def four_point_delta(b: CayleyBall, budget: int = 10**7, seed: int = 0) -> FourPointDelta:
    """Gromov-product defect over trusted vertex quadruples.

    For a basepoint w and points x, y, z with products (x·y)_w =
    (d(x,w)+d(y,w)−d(x,y))/2, the defect is (middle − smallest) of the three
    products; delta is the maximum defect over all quadruples all of whose
    six pairwise distances are trusted.  Exhaustive when the quadruple count
    fits the budget, otherwise uniformly sampled with the fixed seed.
    """
    if b.radius < 3:
        raise TooSmall(f"radius {b.radius} ball cannot support a delta sweep; need >= 3")
    n = len(b)
    radius = b.radius
    half = radius // 2
    core = [v for v in range(n) if b.depth_at(v) <= half]
    deep = [v for v in range(n) if b.depth_at(v) > half]
    table = {v: b.distances_from(v) for v in core}

    # A quadruple is trusted iff its two largest depths sum to <= radius.
    # Vertices of depth > radius/2 ("deep") therefore appear at most once
    # per quadruple, so every needed distance has a core endpoint.
    def dist(u: int, v: int) -> int:
        row = table.get(u)
        return row[v] if row is not None else table[v][u]

    core_count = len(core)
    exhaustive_total = math.comb(core_count, 4)
    deep_by_depth: dict[int, int] = {}
    for v in deep:
        deep_by_depth[b.depth_at(v)] = deep_by_depth.get(b.depth_at(v), 0) + 1
    core_depths = [b.depth_at(v) for v in core]
    for d, cnt in sorted(deep_by_depth.items()):
        cap = radius - d
        eligible = sum(1 for cd in core_depths if cd <= cap)
        exhaustive_total += math.comb(eligible, 3) * cnt

    def defect2(w: int, x: int, y: int, z: int) -> int:
        dwx, dwy, dwz = dist(w, x), dist(w, y), dist(w, z)
        a2 = dwx + dwy - dist(x, y)
        b2 = dwx + dwz - dist(x, z)
        c2 = dwy + dwz - dist(y, z)
        lo = min(a2, b2, c2)
        return a2 + b2 + c2 - lo - max(a2, b2, c2) - lo

    def quad_defect2(q: tuple[int, int, int, int]) -> int:
        w, x, y, z = q
        return max(
            defect2(w, x, y, z),
            defect2(x, w, y, z),
            defect2(y, w, x, z),
            defect2(z, w, x, y),
        )

    best2 = 0
    if exhaustive_total <= budget:
        count = 0
        for q in combinations(core, 4):
            d2 = quad_defect2(q)
            if d2 > best2:
                best2 = d2
            count += 1
        for v in deep:
            cap = radius - b.depth_at(v)
            pool = [u for u in core if b.depth_at(u) <= cap]
            for trio in combinations(pool, 3):
                d2 = quad_defect2(trio + (v,))
                if d2 > best2:
                    best2 = d2
                count += 1
        return FourPointDelta(delta=best2 / 2.0, quadruples=count, sampled=False)

    # Sampled sweep: draw uniformly from the trusted space via its exact
    # stratification (pure-core 4-subsets, or core trio + one deep vertex).
    rng = Random(seed)
    weights = [math.comb(core_count, 4)]
    pools: list[list[int]] = [core]
    members: list[list[int]] = [[]]
    for d in sorted(deep_by_depth):
        pool = [u for u in core if b.depth_at(u) <= radius - d]
        stratum = [v for v in deep if b.depth_at(v) == d]
        w = math.comb(len(pool), 3) * len(stratum)
        if w > 0:
            weights.append(w)
            pools.append(pool)
            members.append(stratum)
    cum = list(accumulate(weights))
    total = cum[-1]
    for _ in range(budget):
        i = bisect_right(cum, rng.randrange(total))
        if i == 0:
            q = tuple(rng.sample(core, 4))
        else:
            v = members[i][rng.randrange(len(members[i]))]
            q = (*rng.sample(pools[i], 3), v)
        d2 = quad_defect2(q)
        if d2 > best2:
            best2 = d2
    return FourPointDelta(delta=best2 / 2.0, quadruples=budget, sampled=True)


# --- rendering ---------------------------------------------------------------

_CANVAS = 1000.0
_SCALE = 500.0


def _canvas_xy(z: complex) -> tuple[float, float]:
    return (_SCALE + _SCALE * z.real, _SCALE - _SCALE * z.imag)


def _fmt(v: float) -> str:
    out = f"{v:.3f}"
    return "0.000" if out == "-0.000" else out


def _arc_path(z1: complex, z2: complex) -> str:
    """SVG path for the disk geodesic from z1 to z2 (canvas coordinates)."""
    x1, y1 = _canvas_xy(z1)
    x2, y2 = _canvas_xy(z2)
    cross = (z1.conjugate() * z2).imag
    if abs(cross) < 1e-9:  # through the origin: the geodesic is a diameter
        return f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"
    # Center c of the circle through z1, z2 orthogonal to the unit circle:
    # 2·(c·z) = 1 + |z|² for both points, a linear system in (cx, cy).
    r1 = 1.0 + abs(z1) ** 2
    r2 = 1.0 + abs(z2) ** 2
    det = 2.0 * (z1.real * z2.imag - z2.real * z1.imag)
    cx = (r1 * z2.imag - r2 * z1.imag) / det
    cy = (r2 * z1.real - r1 * z2.real) / det
    rad = math.sqrt(cx * cx + cy * cy - 1.0) * _SCALE
    # Sweep: canvas y points down, so the rotational sense flips.
    ccw = ((z1.real - cx) * (z2.imag - cy) - (z1.imag - cy) * (z2.real - cx)) > 0
    sweep = 0 if ccw else 1
    return (
        f"M {_fmt(x1)} {_fmt(y1)} "
        f"A {_fmt(rad)} {_fmt(rad)} 0 0 {sweep} {_fmt(x2)} {_fmt(y2)}"
    )


def render_svg(
    e: Embedding,
    highlight: tuple[VertexKey, VertexKey] | None = None,
) -> bytes:
    """Deterministic SVG: boundary circle plus one geodesic arc per edge.

    With ``highlight=(u, v)`` two additional paths are drawn: the graph
    geodesic from u to v as a polyline through the embedded vertices, and
    the single hyperbolic geodesic between the endpoints, so the two can be
    compared visually.
    """
    b = e.ball
    pts = {vid: e.placement[b.key(vid)].z for vid in range(len(b))}
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="1000" height="1000" '
        'viewBox="0 0 1000 1000">',
        f'<circle cx="{_fmt(_SCALE)}" cy="{_fmt(_SCALE)}" r="{_fmt(_SCALE)}" '
        'fill="none" stroke="#888888" stroke-width="1"/>',
    ]
    edges = []
    for vid in range(len(b)):
        for nb, _gid in b.adj_entries(vid):
            if nb > vid:
                edges.append((vid, nb))
    edges.sort()
    for vid, nb in edges:
        lines.append(
            f'<path d="{_arc_path(pts[vid], pts[nb])}" fill="none" '
            'stroke="#1a1a1a" stroke-width="1.5"/>'
        )
    if highlight is not None:
        u, v = highlight
        path_vids = _graph_geodesic(b, b.vid(u), b.vid(v))
        poly = " ".join(
            f"{_fmt(x)},{_fmt(y)}" for x, y in (_canvas_xy(pts[p]) for p in path_vids)
        )
        lines.append(
            f'<polyline points="{poly}" fill="none" stroke="#d62728" stroke-width="3"/>'
        )
        lines.append(
            f'<path d="{_arc_path(pts[path_vids[0]], pts[path_vids[-1]])}" fill="none" '
            'stroke="#1f77b4" stroke-width="3" stroke-dasharray="8 4"/>'
        )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("ascii")


def _graph_geodesic(b: CayleyBall, src: int, dst: int) -> list[int]:
    """One shortest in-ball path, deterministic (smallest-vid predecessor)."""
    dist = b.distances_from(src)
    if dist[dst] < 0:
        raise ValueError("endpoints are disconnected inside the ball")
    path = [dst]
    cur = dst
    while cur != src:
        best = -1
        for nb, _gid in b.adj_entries(cur):
            if dist[nb] == dist[cur] - 1 and (best < 0 or nb < best):
                best = nb
        cur = best
        path.append(cur)
    path.reverse()
    return path
