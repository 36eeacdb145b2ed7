"""Finite balls of the Cayley graph, with distances, squares, and export.

Vertices are group elements keyed by their normal forms, so the ball
construction is only as correct as normal-form uniqueness; the rewriting
oracle validates that independently.  Edges join g to g*sigma for every
generator sigma (involutions, so the graph is undirected and simple).

Internally a ball is flat arrays: vertex keys are byte-encoded generator-id
sequences, adjacency is one packed integer (neighbor_vid << 16 | gid) per
directed edge, grouped per vertex.  The public API speaks in tuples of index
pairs, e.g. ((1, 4), (1, 2), (3, 4)).
"""

from __future__ import annotations

import json
from array import array
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .core import (
    BudgetExceeded,
    Family,
    Generator,
    GroupSpec,
    InvalidPair,
    PreconditionViolated,
    VertexNotInBall,
    presentation,
)
from .core import parse_generator
from .rewriting import NormalForm, Word, _normalize_ids, parse_word

VertexKey = tuple[tuple[int, int], ...]


class BallDistance(NamedTuple):
    """In-ball distance plus whether it is certified equal to the group metric.

    The flag is True when depth(u) + depth(v) <= radius: any true geodesic
    then stays inside the ball, so truncation cannot inflate the length.
    Untrusted distances are still exact distances *within the ball*.
    """

    length: int
    trusted: bool


class CayleyBall:
    """A radius-R ball of Cay(G, S) around the identity."""

    def __init__(
        self,
        spec: GroupSpec,
        radius: int,
        keys: list[bytes],
        index: dict[bytes, int],
        depth: array,
        adj: array,
        off: array,
        wide: bool,
    ) -> None:
        self.spec = spec
        self.radius = radius
        self._pres = presentation(spec)
        self._keys = keys
        self._index = index
        self._depth = depth
        self._adj = adj
        self._off = off
        self._wide = wide

    # -- key plumbing --------------------------------------------------------

    def _encode(self, ids) -> bytes:
        if self._wide:
            return array("H", ids).tobytes()
        return bytes(ids)

    def _decode(self, blob: bytes) -> tuple[int, ...]:
        if self._wide:
            return tuple(array("H", blob))
        return tuple(blob)

    def _to_ids(self, key) -> list[int]:
        if isinstance(key, Word):
            return self._pres.ids(key.letters)
        gid = self._pres.gid
        try:
            return [gid[pq] for pq in key]
        except (KeyError, TypeError) as exc:
            raise InvalidPair(f"bad vertex key {key!r}") from exc

    def vid(self, key) -> int:
        blob = self._encode(self._to_ids(key))
        got = self._index.get(blob)
        if got is None:
            raise VertexNotInBall(f"{key!r} not in this radius-{self.radius} ball")
        return got

    def key(self, vid: int) -> VertexKey:
        pairs = self._pres.pairs
        return tuple(pairs[i] for i in self._decode(self._keys[vid]))

    def word(self, key) -> NormalForm:
        return NormalForm(self.spec, self._pres.letters(self._to_ids(key)))

    # -- graph views ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self._keys)

    def __contains__(self, key) -> bool:
        try:
            return self._encode(self._to_ids(key)) in self._index
        except InvalidPair:
            return False

    def vertices(self) -> Iterator[VertexKey]:
        """Vertex keys in BFS discovery order (depth-monotone, deterministic)."""
        for vid in range(len(self._keys)):
            yield self.key(vid)

    def depth(self, key) -> int:
        return self._depth[self.vid(key)]

    def depth_at(self, vid: int) -> int:
        return self._depth[vid]

    def adj_entries(self, vid: int):
        """(neighbor_vid, gid) pairs for one vertex."""
        adj = self._adj
        for k in range(self._off[vid], self._off[vid + 1]):
            e = adj[k]
            yield e >> 16, e & 0xFFFF

    def step(self, vid: int, gid: int) -> int:
        """Follow the edge labeled gid out of vid; -1 if absent in the ball."""
        adj = self._adj
        for k in range(self._off[vid], self._off[vid + 1]):
            e = adj[k]
            if e & 0xFFFF == gid:
                return e >> 16
        return -1

    def neighbors(self, key) -> tuple[tuple[Generator, VertexKey], ...]:
        vid = self.vid(key)
        gens = self._pres.gens
        return tuple((gens[g], self.key(nb)) for nb, g in self.adj_entries(vid))

    def sphere_sizes(self) -> list[int]:
        counts = [0] * (self.radius + 1)
        for d in self._depth:
            counts[d] += 1
        return counts

    # -- metric --------------------------------------------------------------

    def distances_from(self, vid: int) -> array:
        """BFS distances (within the ball) from one vertex; -1 = unreachable."""
        dist = array("i", [-1] * len(self._keys))
        dist[vid] = 0
        frontier = [vid]
        adj, off = self._adj, self._off
        while frontier:
            nxt = []
            for u in frontier:
                du1 = dist[u] + 1
                for k in range(off[u], off[u + 1]):
                    nb = adj[k] >> 16
                    if dist[nb] < 0:
                        dist[nb] = du1
                        nxt.append(nb)
            frontier = nxt
        return dist

    def distance(self, u, v) -> BallDistance:
        """Shortest-path length inside the ball, flagged per the trust rule."""
        uv, vv = self.vid(u), self.vid(v)
        trusted = self._depth[uv] + self._depth[vv] <= self.radius
        if uv == vv:
            return BallDistance(0, trusted)
        dist = self.distances_from(uv)
        d = dist[vv]
        if d < 0:
            raise VertexNotInBall(f"{v!r} unreachable from {u!r} inside the ball")
        return BallDistance(d, trusted)


def ball(spec: GroupSpec, radius: int, max_vertices: int = 10**6) -> CayleyBall:
    """BFS ball of the given radius around the identity.

    Vertices are hashed by their rewriting normal form, so this is the exact
    Cayley ball wherever the rewriting system is confluent (certified for
    degree 3 affine; see rewriting module docstring).  For larger degrees a
    group element whose words normalize apart appears as multiple vertices;
    every structure check in the verify module operates on the stored graph
    as built, and normalization_sinks() pinpoints the affected words.

    Boundary vertices are still expanded so that edges between two
    depth-`radius` vertices are present; only vertices beyond the radius are
    dropped.  Raises BudgetExceeded past `max_vertices`.
    """
    if radius < 0:
        raise PreconditionViolated(f"radius must be >= 0, got {radius}")
    pres = presentation(spec)
    G = pres.G
    wide = G > 255
    enc = (lambda ids: array("H", ids).tobytes()) if wide else bytes
    dec = (lambda blob: list(array("H", blob))) if wide else list

    keys: list[bytes] = [enc([])]
    index: dict[bytes, int] = {keys[0]: 0}
    depth = array("i", [0])
    adj = array("q")
    off = array("q", [0])

    u = 0
    while u < len(keys):
        du = depth[u]
        boundary = du == radius
        base = dec(keys[u])
        pos = len(base) - 1 if base else 0
        for g in range(G):
            w = base + [g]
            _normalize_ids(w, pres, pos)
            blob = enc(w)
            vid = index.get(blob)
            if vid is None:
                if boundary:
                    continue
                vid = len(keys)
                if vid >= max_vertices:
                    raise BudgetExceeded(
                        f"ball({spec}, {radius}) exceeded {max_vertices} vertices"
                    )
                index[blob] = vid
                keys.append(blob)
                depth.append(du + 1)
            adj.append(vid << 16 | g)
        off.append(len(adj))
        u += 1
    return CayleyBall(spec, radius, keys, index, depth, adj, off, wide)


@dataclass(frozen=True)
class Square:
    """An embedded-or-not 4-cycle, stored as its canonical corner cycle.

    Canonical form: rotated so the lexicographically smallest corner key is
    first, then oriented toward its smaller cycle-neighbor.
    """

    cycle: tuple[VertexKey, VertexKey, VertexKey, VertexKey]


def _canonical_cycle(cyc: tuple) -> tuple:
    best = None
    for seq in (cyc, cyc[::-1]):
        for r in range(4):
            cand = seq[r:] + seq[:r]
            if best is None or cand < best:
                best = cand
    return best


def squares(b: CayleyBall) -> tuple[Square, ...]:
    """All 4-cycles (closed non-backtracking 4-walks) inside the ball.

    Enumerated from every corner via midpoint pairs over opposite corners and
    deduplicated on the canonical cycle, so each square appears exactly once.
    Degenerate cycles (repeated corners) are *kept* when the underlying graph
    has them -- that is what check_squares_embedded looks for; honest Cayley
    balls never produce any.
    """
    found: set[tuple] = set()
    V = len(b)
    for u in range(V):
        # two-step non-backtracking walks u -> x -> z, grouped by endpoint z
        paths: dict[int, list[tuple[tuple[int, int], tuple[int, int]]]] = {}
        for x, l1 in b.adj_entries(u):
            for z, l2 in b.adj_entries(x):
                if z == u and l2 == l1:
                    continue
                paths.setdefault(z, []).append(((x, l1), (z, l2)))
        for z, plist in paths.items():
            m = len(plist)
            if m < 2:
                continue
            for i in range(m - 1):
                (x1, e1), (_, e2) = plist[i]
                for j in range(i + 1, m):
                    (x2, e3), (_, e4) = plist[j]
                    # the two walks must not share either of their edges
                    if x1 == x2 and (e1 == e3 or e2 == e4):
                        continue
                    found.add(
                        _canonical_cycle((b.key(u), b.key(x1), b.key(z), b.key(x2)))
                    )
    return tuple(Square(c) for c in sorted(found))


# -- serialization -----------------------------------------------------------


def _vertex_sort_key(b: CayleyBall, vid: int):
    return (b._depth[vid], b.word(b.key(vid)).text())


def export_obj(b: CayleyBall) -> dict:
    """The JSON-ready view: vertices sorted by (depth, word), edges once each."""
    texts = {}
    for vid in range(len(b)):
        texts[vid] = ";".join(f"{p},{q}" for p, q in b.key(vid)) or "e"
    vrecs = sorted(
        ({"word": texts[v], "depth": b.depth_at(v)} for v in range(len(b))),
        key=lambda r: (r["depth"], r["word"]),
    )
    gens = presentation(b.spec).gens
    erecs = []
    for u in range(len(b)):
        for nb, gid in b.adj_entries(u):
            if (b.depth_at(u), texts[u], u) < (b.depth_at(nb), texts[nb], nb):
                erecs.append(
                    {"from": texts[u], "to": texts[nb], "generator": gens[gid].text()}
                )
    erecs.sort(key=lambda r: (r["from"], r["to"], r["generator"]))
    return {
        "spec": {"family": b.spec.family.value, "n": b.spec.degree},
        "radius": b.radius,
        "vertices": vrecs,
        "edges": erecs,
    }


def export(b: CayleyBall, format: str = "json") -> bytes:
    """Deterministic serialization; identical balls give identical bytes."""
    fmt = format.lower()
    if fmt == "json":
        return (
            json.dumps(export_obj(b), indent=1, sort_keys=True, ensure_ascii=True)
            + "\n"
        ).encode()
    if fmt == "dot":
        obj = export_obj(b)
        lines = [f'graph "{b.spec.family.value}_{b.spec.degree}_r{b.radius}" {{']
        for rec in obj["vertices"]:
            lines.append(f'  "{rec["word"]}" [depth={rec["depth"]}];')
        for rec in obj["edges"]:
            lines.append(
                f'  "{rec["from"]}" -- "{rec["to"]}" [label="{rec["generator"]}"];'
            )
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise InvalidPair(f"unknown export format {format!r}")


def import_ball(obj: dict) -> CayleyBall:
    """Rebuild a CayleyBall from the export schema.

    The file's graph is taken at face value -- vertices are not re-normalized
    and adjacency is not recomputed.  That is deliberate: verification checks
    run on imported graphs must be able to see defects (this is how the
    synthetic negative-control graphs come in).
    """
    fam = Family(obj["spec"]["family"])
    spec = GroupSpec(fam, int(obj["spec"]["n"]))
    pres = presentation(spec)
    wide = pres.G > 255
    enc = (lambda ids: array("H", ids).tobytes()) if wide else bytes

    def blob_of(text: str) -> bytes:
        return enc(pres.ids(parse_word(spec, text).letters))

    keys: list[bytes] = []
    index: dict[bytes, int] = {}
    depth = array("i")
    for rec in obj["vertices"]:
        blob = blob_of(rec["word"])
        if blob in index:
            raise InvalidPair(f"duplicate vertex {rec['word']!r}")
        index[blob] = len(keys)
        keys.append(blob)
        depth.append(int(rec["depth"]))
    lists: list[list[int]] = [[] for _ in keys]
    for rec in obj["edges"]:
        try:
            u = index[blob_of(rec["from"])]
            v = index[blob_of(rec["to"])]
        except KeyError as exc:
            raise VertexNotInBall(f"edge endpoint missing: {rec!r}") from exc
        gid = pres.id_of(parse_generator(spec, rec["generator"]))
        lists[u].append(v << 16 | gid)
        lists[v].append(u << 16 | gid)
    adj = array("q")
    off = array("q", [0])
    for entries in lists:
        adj.extend(entries)
        off.append(len(adj))
    return CayleyBall(spec, int(obj["radius"]), keys, index, depth, adj, off, wide)
