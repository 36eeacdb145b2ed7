"""Disk embedding of the degree-3 affine ball and its metric diagnostics.

The square tiling underlying these tests has six squares around every
vertex, so the numbers are rigid: edge length 2*arccosh(sqrt(2)), corner
angle pi/3, diagonal arccosh(5).  Corner angles and distances are recomputed
here from raw Moebius arithmetic, independent of the module's own frame
propagation.
"""

import cmath
import math

import pytest

from cactuskit import (
    FourPointDelta,
    HPoint,
    NotAJ3,
    QIFit,
    TooSmall,
    affine,
    ball,
    cactus,
    embed_ball,
    four_point_delta,
    hyperbolic_distance,
    qi_fit,
    render_svg,
    squares,
    tiling_edge_length,
)

EDGE = 1.7627471740390868  # frozen output of tiling_edge_length()


def angle_at(e, corner, nb1, nb2):
    """Hyperbolic angle at `corner` between the geodesics toward nb1 and nb2."""
    c = e.point(corner).z
    w1 = (e.point(nb1).z - c) / (1 - c.conjugate() * e.point(nb1).z)
    w2 = (e.point(nb2).z - c) / (1 - c.conjugate() * e.point(nb2).z)
    a = abs(cmath.phase(w1 / w2))
    return min(a, 2 * math.pi - a)


def edge_set(b):
    return [(u, nb) for u in range(len(b)) for nb, _ in b.adj_entries(u) if u < nb]


# ---------------------------------------------------------------------------
# points and the metric
# ---------------------------------------------------------------------------


def test_hpoint_validation():
    p = HPoint(0.3, -0.4)
    assert p.z == complex(0.3, -0.4)
    with pytest.raises(ValueError):
        HPoint(1.0, 0.0)
    with pytest.raises(ValueError):
        HPoint(0.8, 0.7)


def test_distance_axioms():
    o = HPoint(0.0, 0.0)
    p = HPoint(0.5, 0.1)
    q = HPoint(-0.2, 0.6)
    assert hyperbolic_distance(p, p) == 0.0
    assert hyperbolic_distance(p, q) == hyperbolic_distance(q, p)
    assert hyperbolic_distance(p, q) <= hyperbolic_distance(p, o) + hyperbolic_distance(o, q)


def test_distance_along_a_diameter():
    # the point at Euclidean radius tanh(t/2) lies at hyperbolic distance t
    for t in (0.5, 1.0, 2.0):
        p = HPoint(math.tanh(t / 2), 0.0)
        assert abs(hyperbolic_distance(HPoint(0.0, 0.0), p) - t) < 1e-12


# ---------------------------------------------------------------------------
# the edge length of the tiling
# ---------------------------------------------------------------------------


def test_edge_length_frozen_value():
    assert tiling_edge_length() == EDGE


def test_edge_length_closed_form():
    # half the edge subtends cosh = sqrt(2) in the face's right triangle,
    # so the full edge satisfies cosh = 3 and equals 2*arccosh(sqrt(2))
    a = tiling_edge_length()
    assert abs(a - 2 * math.acosh(math.sqrt(2.0))) < 1e-12
    assert abs(math.cosh(a) - 3.0) < 1e-12
    assert abs(math.cosh(a / 2) * math.sin(math.pi / 6) - math.cos(math.pi / 4)) < 1e-12


# ---------------------------------------------------------------------------
# embedding
# ---------------------------------------------------------------------------


def test_embedding_rejects_other_groups():
    with pytest.raises(NotAJ3):
        embed_ball(ball(affine(4), 1))
    with pytest.raises(NotAJ3):
        embed_ball(ball(cactus(3), 1))


def test_first_ring_geometry():
    e = embed_ball(ball(affine(3), 1))
    assert len(e.placement) == 7
    assert e.edge_length == tiling_edge_length()
    assert e.point(()).z == 0
    ring_radius = math.tanh(e.edge_length / 2)
    order = ((1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2))
    for k, pq in enumerate(order):
        z = e.point((pq,)).z
        assert abs(abs(z) - ring_radius) < 1e-12
        want = cmath.rect(ring_radius, k * math.pi / 3)
        assert abs(z - want) < 1e-12


def test_embedding_is_deterministic(aj3_r3):
    e1 = embed_ball(aj3_r3)
    e2 = embed_ball(aj3_r3)
    assert e1.placement == e2.placement


def test_all_edges_have_tiling_length(disk_r3):
    e = disk_r3
    b = e.ball
    for u, v in edge_set(b):
        d = hyperbolic_distance(e.point(b.key(u)), e.point(b.key(v)))
        assert abs(d - e.edge_length) < 1e-9


def test_square_corner_angles(disk_r3):
    e = disk_r3
    sqs = squares(e.ball)
    assert len(sqs) == 30
    for s in sqs:
        c = s.cycle
        for k in range(4):
            a = angle_at(e, c[k], c[(k - 1) % 4], c[(k + 1) % 4])
            assert abs(a - math.pi / 3) < 1e-9


def test_square_diagonals(disk_r3):
    # law of cosines with sides cosh = 3 and the pi/3 corner: cosh(diag) = 5
    e = disk_r3
    want = math.acosh(5.0)
    for s in squares(e.ball):
        c = s.cycle
        for i in (0, 1):
            d = hyperbolic_distance(e.point(c[i]), e.point(c[i + 2]))
            assert abs(d - want) < 1e-9


def test_six_squares_close_around_interior_vertices(disk_r3):
    e = disk_r3
    b = e.ball
    at_vertex = {}
    for s in squares(b):
        for k in range(4):
            at_vertex.setdefault(s.cycle[k], []).append(
                (s.cycle[(k - 1) % 4], s.cycle[(k + 1) % 4])
            )
    surrounded = [key for key, wedges in at_vertex.items() if len(wedges) == 6]
    assert () in surrounded
    for key in surrounded:
        total = sum(angle_at(e, key, n1, n2) for n1, n2 in at_vertex[key])
        assert abs(total - 2 * math.pi) < 1e-8


def test_embedding_is_injective(disk_r3):
    e = disk_r3
    pts = list(e.placement.values())
    min_d = min(
        hyperbolic_distance(pts[i], pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
    )
    # distinct group elements keep at least a full edge apart here
    assert abs(min_d - e.edge_length) < 1e-9
    assert min_d > e.edge_length / 2


# ---------------------------------------------------------------------------
# metric comparison constants
# ---------------------------------------------------------------------------


def test_qi_fit_frozen_values(disk_r3, disk_r4):
    f = qi_fit(disk_r3)
    assert isinstance(f, QIFit)
    assert f == (1.762747174039093, 0.0, 279, 0.0)
    f4 = qi_fit(disk_r4)
    assert f4.lam == 1.7627471740391119
    assert f4.pair_count == 1431
    assert f4.c == 0.0 and f4.max_violation == 0.0


def test_qi_fit_needs_room():
    with pytest.raises(TooSmall):
        qi_fit(embed_ball(ball(affine(3), 2)))


def test_four_point_delta_exhaustive(aj3_r3):
    d = four_point_delta(aj3_r3)
    assert isinstance(d, FourPointDelta)
    assert d == (1.0, 875, False)


def test_four_point_delta_sampled(aj3_r3):
    s1 = four_point_delta(aj3_r3, budget=500, seed=1)
    assert s1.sampled
    assert s1.quadruples == 500
    assert s1.delta <= 1.0
    assert four_point_delta(aj3_r3, budget=500, seed=1) == s1
    s2 = four_point_delta(aj3_r3, budget=500, seed=2)
    assert s2.quadruples == 500


def test_four_point_delta_needs_room():
    with pytest.raises(TooSmall):
        four_point_delta(ball(affine(3), 2))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def test_svg_structure(disk_r3):
    svg = render_svg(disk_r3)
    assert isinstance(svg, bytes)
    svg.decode("ascii")
    assert svg.startswith(b"<svg")
    assert svg.rstrip().endswith(b"</svg>")
    assert svg.count(b"<circle") == 1
    assert svg.count(b"<path") == 150  # one geodesic arc per edge
    assert render_svg(disk_r3) == svg


def test_svg_highlight(disk_r3):
    plain = render_svg(disk_r3)
    marked = render_svg(disk_r3, highlight=((), ((1, 3), (2, 3))))
    assert marked.count(b"<path") == plain.count(b"<path") + 1
    assert marked.count(b"<polyline") == 1
    assert marked != plain
