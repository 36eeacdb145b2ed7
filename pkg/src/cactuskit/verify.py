"""Mechanical checks of the local geometry of the Cayley complex.

The square-complex of either group family is believed CAT(0) because the
underlying graph is a median graph; the machine-checkable shadow of that
statement, at finite scale, consists of:

* every 4-cycle in the ball is embedded (four distinct corners);
* two distinct squares never share two consecutive edges;
* every cycle of three squares around a vertex spans the 2-skeleton of a
  3-cube (the eighth corner and all 12 edges exist);
* every vertex triple has a unique median.

All checks treat the ball as a labeled graph, navigating purely along stored
edges, so they work unchanged on imported (possibly deliberately broken)
graphs without normal-form assumptions smoothing over the defects.

Alongside these sit the index-shift correspondences between the affine and
plain presentations: the maps phi (cyclic to plain, conjugating by a rotation
that puts the shift index first) and psi (its inverse), plus exhaustive
verification that they carry interval configurations back and forth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .core import (
    Family,
    Generator,
    GroupSpec,
    IndexOutOfRange,
    PreconditionViolated,
    WrongFamily,
    _REL_DISJOINT,
    _REL_FIRST,
    _REL_SECOND,
    _wrap,
    affine,
    cactus,
    conjugate_nested,
    generators,
    presentation,
)
from .cayley import CayleyBall, squares
from .rewriting import Word, normalize

WITNESS_CAP = 100


@dataclass
class VerificationReport:
    """Outcome of one mechanical check.

    `failures` keeps at most WITNESS_CAP witness records; `failure_count` is
    always the exact total.  `vacuous` marks a pass with nothing to check
    (e.g. no cube configurations exist in the group) -- technically a pass,
    but deliberately distinguishable from a verified one.
    """

    check_name: str
    spec: GroupSpec | None
    params: dict
    items_checked: int
    failure_count: int
    failures: list = field(default_factory=list)
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def note_failure(self, witness: dict) -> None:
        self.failure_count += 1
        if len(self.failures) < WITNESS_CAP:
            self.failures.append(witness)

    def to_dict(self) -> dict:
        d = {
            "check": self.check_name,
            "params": dict(self.params),
            "items_checked": self.items_checked,
            "failure_count": self.failure_count,
            "failures": list(self.failures),
            "vacuous": self.vacuous,
            "passed": self.passed,
        }
        if self.spec is not None:
            d["spec"] = {"family": self.spec.family.value, "n": self.spec.degree}
        return d


def _word_text(b: CayleyBall, vid: int) -> str:
    return ";".join(f"{p},{q}" for p, q in b.key(vid)) or "e"


# ---------------------------------------------------------------------------
# Squares: conditions on the 2-skeleton
# ---------------------------------------------------------------------------


def check_squares_embedded(b: CayleyBall) -> VerificationReport:
    """Every 4-cycle in the ball has four pairwise distinct corners."""
    sqs = squares(b)
    rep = VerificationReport(
        "squares-embedded", b.spec, {"radius": b.radius}, len(sqs), 0,
        vacuous=not sqs,
    )
    for s in sqs:
        if len(set(s.cycle)) != 4:
            rep.note_failure({"cycle": [";".join(f"{p},{q}" for p, q in k) or "e" for k in s.cycle],
                              "distinct_corners": len(set(s.cycle))})
    return rep


def check_no_shared_consecutive_edges(b: CayleyBall) -> VerificationReport:
    """No two distinct squares share a length-2 path (two consecutive edges).

    Item space: every (corner, unordered pair of incident square-edges) that
    occurs in some square; each must belong to exactly one square.
    """
    sqs = squares(b)
    seen: dict[tuple, list[int]] = {}
    for idx, s in enumerate(sqs):
        c = s.cycle
        for k in range(4):
            corner = c[k]
            wedge = frozenset((c[(k - 1) % 4], c[(k + 1) % 4]))
            seen.setdefault((corner, wedge), []).append(idx)
    rep = VerificationReport(
        "no-shared-consecutive-edges", b.spec, {"radius": b.radius},
        len(seen), 0, vacuous=not sqs,
    )
    for (corner, wedge), members in seen.items():
        if len(members) > 1:
            rep.note_failure({
                "corner": ";".join(f"{p},{q}" for p, q in corner) or "e",
                "squares": [
                    [";".join(f"{p},{q}" for p, q in k) or "e" for k in sqs[m].cycle]
                    for m in members
                ],
            })
    return rep


def _related_triples(spec: GroupSpec) -> list[tuple[int, int, int]]:
    """Unordered generator-id triples whose intervals are pairwise related."""
    pres = presentation(spec)
    G, rel = pres.G, pres.rel
    related = [
        (a, b) for a in range(G) for b in range(a + 1, G) if rel[a * G + b]
    ]
    nbrs: dict[int, set[int]] = {}
    for a, b in related:
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)
    triples = []
    for a, b in related:
        for c in sorted(nbrs.get(a, ()) & nbrs.get(b, ())):
            if c > b:
                triples.append((a, b, c))
    return triples


def check_cube_spans(b: CayleyBall) -> VerificationReport:
    """Every cycle of three squares at a vertex closes into a 3-cube skeleton.

    For each vertex v deep enough that the whole cube fits in the ball, and
    each triple of pairwise related edge labels, the check walks the cube:
    the three corners past v, the three face-closing corners (each reached by
    two routes that must agree), and the eighth corner -- expected at
    v * (the triple in ascending interval size), confirmed independently as
    the unique common graph-neighbor of the three face corners.
    """
    pres = presentation(b.spec)
    G, rel, conj, card = pres.G, pres.rel, pres.conj, pres.card
    triples = _related_triples(b.spec)
    eligible = [v for v in range(len(b)) if b.depth_at(v) <= b.radius - 3]
    rep = VerificationReport(
        "cube-spans", b.spec, {"radius": b.radius},
        len(triples) * len(eligible), 0,
        vacuous=not triples or not eligible,
    )

    def two_step(v: int, a: int, c: int) -> int:
        w = b.step(v, a)
        return -1 if w < 0 else b.step(w, c)

    def far_corner(v: int, a: int, c: int) -> tuple[int, int]:
        """The corner opposite v on the face with labels {a, c}, both routes."""
        k = rel[a * G + c]
        if k == _REL_FIRST:  # a contains c
            return two_step(v, c, a), two_step(v, a, conj[a * G + c])
        if k == _REL_SECOND:
            return two_step(v, a, c), two_step(v, c, conj[c * G + a])
        return two_step(v, a, c), two_step(v, c, a)

    gens = pres.gens
    for v in eligible:
        for x, y, z in triples:
            labels = [gens[g].text() for g in (x, y, z)]

            def fail(reason: str, **extra) -> None:
                w = {"vertex": _word_text(b, v), "labels": labels, "reason": reason}
                w.update(extra)
                rep.note_failure(w)

            corners = [b.step(v, g) for g in (x, y, z)]
            if any(c < 0 for c in corners):
                fail("adjacent corner missing")
                continue
            fars = []
            bad = False
            for a, c in ((x, y), (x, z), (y, z)):
                r1, r2 = far_corner(v, a, c)
                if r1 < 0 or r1 != r2:
                    fail("face does not close", pair=[gens[a].text(), gens[c].text()])
                    bad = True
                    break
                fars.append(r1)
            if bad:
                continue
            asc = sorted((x, y, z), key=lambda g: (card[g], g))
            h = v
            for g in asc:
                h = b.step(h, g)
                if h < 0:
                    break
            if h < 0:
                fail("eighth corner missing")
                continue
            # independent route: the eighth corner is the unique common
            # neighbor of the three face corners
            n0 = {nb for nb, _ in b.adj_entries(fars[0])}
            n1 = {nb for nb, _ in b.adj_entries(fars[1])}
            n2 = {nb for nb, _ in b.adj_entries(fars[2])}
            common = n0 & n1 & n2
            if common != {h}:
                fail(
                    "graph search disagrees with the expected eighth corner",
                    expected=_word_text(b, h),
                    found=sorted(_word_text(b, w) for w in common),
                )
                continue
            cube = [v, *corners, *fars, h]
            if len(set(cube)) != 8:
                fail("cube corners not distinct",
                     corners=[_word_text(b, w) for w in cube])
    return rep


# ---------------------------------------------------------------------------
# Median property
# ---------------------------------------------------------------------------


def check_median(b: CayleyBall, test_depth: int) -> VerificationReport:
    """Unique-median check over all triples of vertices of depth <= test_depth.

    Requires 3 * test_depth <= radius.  Under that precondition every
    distance and every candidate median the check touches is certified: for
    sources at depth <= t, pairwise distances are at most 2t, true geodesics
    between them stay within depth 3t, and any true median lies on such
    geodesics -- all inside the ball, so in-ball BFS sees the true metric.
    """
    t = test_depth
    if t < 0 or 3 * t > b.radius:
        raise PreconditionViolated(
            f"need 3*test_depth <= radius, got test_depth={t}, radius={b.radius}"
        )
    sources = [v for v in range(len(b)) if b.depth_at(v) <= t]
    cutoff = 2 * t

    # truncated BFS per source: distance map and level sets out to 2t
    dist_of: dict[int, dict[int, int]] = {}
    levels_of: dict[int, list[set[int]]] = {}
    for s in sources:
        dist = {s: 0}
        levels = [set() for _ in range(cutoff + 1)]
        levels[0].add(s)
        frontier = [s]
        d = 0
        while frontier and d < cutoff:
            d += 1
            nxt = []
            for u in frontier:
                for nb, _ in b.adj_entries(u):
                    if nb not in dist:
                        dist[nb] = d
                        levels[d].add(nb)
                        nxt.append(nb)
            frontier = nxt
        dist_of[s] = dist
        levels_of[s] = levels

    def interval(s1: int, s2: int) -> set[int]:
        d12 = dist_of[s1].get(s2)
        if d12 is None:
            return set()
        l1, l2 = levels_of[s1], levels_of[s2]
        out: set[int] = set()
        for a in range(d12 + 1):
            out |= l1[a] & l2[d12 - a]
        return out

    rep = VerificationReport(
        "median", b.spec, {"radius": b.radius, "test_depth": t},
        0, 0, vacuous=not sources,
    )
    for s1, s2, s3 in combinations_with_replacement(sources, 3):
        rep.items_checked += 1
        medians = interval(s1, s2) & interval(s1, s3) & interval(s2, s3)
        if len(medians) != 1:
            rep.note_failure({
                "triple": [_word_text(b, s) for s in (s1, s2, s3)],
                "median_count": len(medians),
                "medians": sorted(_word_text(b, m) for m in list(medians)[:5]),
            })
    return rep


# ---------------------------------------------------------------------------
# Index-shift correspondence between the two presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BarMap:
    """Reduction of arbitrary integers into the window [1, n] modulo n."""

    n: int

    def __call__(self, z: int) -> int:
        return _wrap(z, self.n)


def phi_pair(i: int, pair: tuple[int, int], n: int) -> tuple[int, int]:
    """Index arithmetic of the cyclic-to-plain shift: both entries move by 1-i."""
    bar = BarMap(n)
    return bar(pair[0] - i + 1), bar(pair[1] - i + 1)


def psi_pair(i: int, pair: tuple[int, int], n: int) -> tuple[int, int]:
    """Inverse shift; psi_pair(i, phi_pair(i, pq)) == pq for all inputs."""
    bar = BarMap(n)
    return bar(pair[0] + i - 1), bar(pair[1] + i - 1)


def phi_map(i: int, g: Generator) -> Generator:
    """Shift an affine generator so index i lands at 1, as a plain generator.

    Total on index pairs (see phi_pair) but partial as a map into the plain
    cactus group: when the shifted pair comes out decreasing it names no
    generator and InvalidPair propagates.  On the nested/disjoint
    configurations this map is used for, the image is always valid.
    """
    if g.spec.family is not Family.AFFINE:
        raise WrongFamily("phi_map shifts affine generators")
    n = g.spec.degree
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"shift index {i} outside 1..{n}")
    p, q = phi_pair(i, (g.p, g.q), n)
    return Generator(p, q, cactus(n))


def psi_map(i: int, g: Generator) -> Generator:
    """Shift a plain generator back into the affine group (always valid)."""
    if g.spec.family is not Family.CACTUS:
        raise WrongFamily("psi_map lifts plain cactus generators")
    n = g.spec.degree
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"shift index {i} outside 1..{n}")
    p, q = psi_pair(i, (g.p, g.q), n)
    return Generator(p, q, affine(n))


def verify_phi_psi_roundtrip(n: int) -> VerificationReport:
    """psi after phi is the identity: on all index pairs, and on every affine
    generator whose phi image is a valid plain generator."""
    rep = VerificationReport(
        "phi-psi-roundtrip", affine(n), {"n": n}, 0, 0
    )
    for i in range(1, n + 1):
        for g in generators(affine(n)):
            rep.items_checked += 1
            back = psi_pair(i, phi_pair(i, (g.p, g.q), n), n)
            if back != (g.p, g.q):
                rep.note_failure({"i": i, "pair": [g.p, g.q], "round_trip": list(back)})
                continue
            p1, q1 = phi_pair(i, (g.p, g.q), n)
            if p1 < q1:
                img = psi_map(i, phi_map(i, g))
                if img != g:
                    rep.note_failure({"i": i, "pair": [g.p, g.q],
                                      "generator_round_trip": img.text()})
    return rep


# The four interval configurations a cube corner can realize, as predicates
# over the relation codes of the ordered label triple (first is the one whose
# start index drives the shift).
_CONFIGS = (
    ("chain", lambda r12, r13, r23: r12 == _REL_FIRST and r23 == _REL_FIRST),
    ("nested-plus-disjoint",
     lambda r12, r13, r23: r12 == _REL_FIRST and r13 == _REL_DISJOINT),
    ("common-outer",
     lambda r12, r13, r23: r12 == _REL_FIRST and r13 == _REL_FIRST
     and r23 == _REL_DISJOINT),
    ("pairwise-disjoint",
     lambda r12, r13, r23: r12 == _REL_DISJOINT and r13 == _REL_DISJOINT
     and r23 == _REL_DISJOINT),
)


def _plain_contains(outer: tuple[int, int], inner: tuple[int, int]) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1]


def _plain_disjoint(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[1] < b[0] or b[1] < a[0]


def _configured_triples(n: int):
    """Ordered distinct generator triples of AJ_n realizing each configuration."""
    pres = presentation(affine(n))
    G, rel = pres.G, pres.rel
    pairs = pres.pairs
    for a in range(G):
        for bb in range(G):
            if bb == a:
                continue
            r12 = rel[a * G + bb]
            if r12 not in (_REL_FIRST, _REL_DISJOINT):
                continue
            for c in range(G):
                if c == a or c == bb:
                    continue
                r13 = rel[a * G + c]
                r23 = rel[bb * G + c]
                for name, pred in _CONFIGS:
                    if pred(r12, r13, r23):
                        yield name, pairs[a], pairs[bb], pairs[c]


def verify_claim_phi(n: int) -> VerificationReport:
    """The shift by the leading start index turns cyclic configurations into
    plain (non-wrapping) ones.

    Exhaustive over all ordered triples of distinct generators realizing each
    of the four configurations; for each, asserts that the shifted index
    pairs are valid plain intervals in the stated relations.
    """
    if n < 3:
        raise PreconditionViolated("configurations need n >= 3")
    rep = VerificationReport("claim-phi", affine(n), {"n": n}, 0, 0)
    for name, pq1, pq2, pq3 in _configured_triples(n):
        rep.items_checked += 1
        i = pq1[0]
        t1 = phi_pair(i, pq1, n)
        t2 = phi_pair(i, pq2, n)
        t3 = phi_pair(i, pq3, n)

        def expect(cond: bool, what: str) -> None:
            if not cond:
                rep.note_failure({
                    "configuration": name,
                    "tuple": [list(pq1), list(pq2), list(pq3)],
                    "shift": i,
                    "images": [list(t1), list(t2), list(t3)],
                    "violated": what,
                })

        expect(t1[0] == 1, "shifted outer interval starts at 1")
        if name == "chain":
            expect(t1[0] < t1[1] and t2[0] < t2[1] and t3[0] < t3[1],
                   "images are increasing pairs")
            expect(_plain_contains(t1, t2) and _plain_contains(t2, t3),
                   "containment chain transfers")
        elif name == "nested-plus-disjoint":
            expect(t1[0] < t1[1] and t2[0] < t2[1] and t3[0] < t3[1],
                   "images are increasing pairs")
            expect(_plain_contains(t1, t2), "containment transfers")
            expect(_plain_disjoint(t1, t3), "disjointness transfers")
        elif name == "common-outer":
            expect(t1[0] < t1[1] and t2[0] < t2[1] and t3[0] < t3[1],
                   "images are increasing pairs")
            expect(_plain_contains(t1, t2) and _plain_contains(t1, t3),
                   "both containments transfer")
            expect(_plain_disjoint(t2, t3), "inner disjointness transfers")
        else:  # pairwise-disjoint
            expect(t1[0] < t1[1] and t2[0] < t2[1] and t3[0] < t3[1],
                   "images are increasing pairs")
            expect(_plain_disjoint(t1, t2) and _plain_disjoint(t1, t3)
                   and _plain_disjoint(t2, t3), "pairwise disjointness transfers")
    return rep


def verify_claim_psi(n: int) -> VerificationReport:
    """The inverse shift carries the plain configurations back to the cyclic
    originals.

    For every image tuple produced as in verify_claim_phi, asserts that
    shifting back recovers the original index pairs exactly (hence the
    original cyclic configuration).  The doubly-wrapped ordering k < l < j < i
    is additionally checked against its closed-form shift values; the count
    of those instances is reported in params.
    """
    if n < 3:
        raise PreconditionViolated("configurations need n >= 3")
    rep = VerificationReport(
        "claim-psi", affine(n), {"n": n, "wrapped_ordering_instances": 0}, 0, 0
    )
    for name, pq1, pq2, pq3 in _configured_triples(n):
        rep.items_checked += 1
        i = pq1[0]
        images = [phi_pair(i, pq, n) for pq in (pq1, pq2, pq3)]
        back = [psi_pair(i, t, n) for t in images]
        if back != [pq1, pq2, pq3]:
            rep.note_failure({
                "configuration": name,
                "tuple": [list(pq1), list(pq2), list(pq3)],
                "shift": i,
                "returned": [list(t) for t in back],
            })
            continue
        # the ordering where both arcs wrap: k < l < j < i with
        # [i,j] containing [k,l]; every shifted index gains n before reduction
        j = pq1[1]
        k, l = pq2
        if name in ("chain", "nested-plus-disjoint", "common-outer") and k < l < j < i:
            rep.params["wrapped_ordering_instances"] += 1
            ip, jp = images[0]
            kp, lp = images[1]
            ok = (
                ip == 1
                and jp == j - i + n + 1
                and kp == k - i + n + 1
                and lp == l - i + n + 1
                and kp < lp
                and _wrap(ip + i - 1, n) == i
                and _wrap(jp + i - 1, n) == j
                and _wrap(kp + i - 1, n) == k
                and _wrap(lp + i - 1, n) == l
            )
            if not ok:
                rep.note_failure({
                    "configuration": name,
                    "tuple": [list(pq1), list(pq2), list(pq3)],
                    "shift": i,
                    "violated": "closed-form values of the doubly-wrapped ordering",
                })
    return rep


# ---------------------------------------------------------------------------
# Normal forms of the squares at the identity
# ---------------------------------------------------------------------------


def check_square_normal_forms(b: CayleyBall) -> VerificationReport:
    """The far corner of each square at the identity has the expected word.

    For a nested pair the normal form leads with the outer generator (in both
    multiplication orders); for a disjoint pair it leads with the
    higher-priority generator -- longer interval first, then smaller start
    index (for equal lengths this is exactly smaller-start-first).
    """
    spec = b.spec
    rep = VerificationReport(
        "square-normal-forms", spec, {"radius": b.radius}, 0, 0,
        vacuous=b.radius < 2,
    )
    if b.radius < 2:
        return rep
    pres = presentation(spec)
    G, rel = pres.G, pres.rel
    gens = pres.gens
    for a in range(G):
        for c in range(a + 1, G):
            k = rel[a * G + c]
            if not k:
                continue
            rep.items_checked += 1
            ga, gc = gens[a], gens[c]
            nf1 = normalize(Word(spec, (ga, gc)))
            nf2 = normalize(Word(spec, (gc, ga)))
            if k == _REL_DISJOINT:
                first = ga if pres.kappa[a] < pres.kappa[c] else gc
                second = gc if first is ga else ga
                want1 = want2 = (first, second)
            else:
                outer, inner = (ga, gc) if k == _REL_FIRST else (gc, ga)
                want_oi = (outer, inner)
                want_io = (outer, conjugate_nested(outer, inner))
                want1 = want_oi if ga is outer else want_io
                want2 = want_oi if gc is outer else want_io
            bad = []
            if nf1.letters != want1:
                bad.append([ga.text(), gc.text(), nf1.text()])
            if nf2.letters != want2:
                bad.append([gc.text(), ga.text(), nf2.text()])
            for order in bad:
                rep.note_failure({"product": order[:2], "normal_form": order[2]})
            # the far corner itself must sit in the ball at depth 2
            far = tuple((g.p, g.q) for g in nf1.letters)
            if far not in b:
                rep.note_failure({
                    "product": [ga.text(), gc.text()],
                    "reason": "far corner missing from the ball",
                })
    return rep
