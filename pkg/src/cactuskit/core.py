"""Presentations of the cactus group J_n and the affine cactus group AJ_n.

Both groups are generated by involutions attached to intervals of indices.

* J_n has one generator s_{p,q} for every integer interval [p, q] with
  1 <= p < q <= n.
* AJ_n has one generator sigma_{p,q} for every ordered pair p != q; the
  attached interval [p, q]_c is *cyclic*: it runs forward from p to q around
  Z/n, wrapping past n when q < p.  E.g. for n = 5, [2, 1]_c traverses
  (2, 3, 4, 5, 1).

The defining relations (beyond each generator squaring to the identity) come
in two shapes, decided entirely by how the two intervals sit relative to each
other:

* disjoint intervals commute;
* if one interval contains the other, the big generator conjugates the small
  one to its mirror image under the reflection of the big interval.

Containment of cyclic intervals is containment *as arcs*: the inner interval's
members must all lie in the outer one and the inner arc must run forward
inside the outer arc without crossing the outer arc's endpoint.  The
distinction matters only when the outer interval covers every residue: for
n = 3 the intervals [1,3]_c, [2,1]_c and [3,2]_c all have member set {1,2,3}
but none of them contains another, and sigma_{3,1} is *not* nested in
[1,3]_c because the arc (3,1) crosses the seam of (1,2,3).  Reading
containment as plain set inclusion would generate relations the groups do not
have.

The reflection of [p, q]_c sends the arc to itself reversed; on members it is
r |-> p + q - r reduced into [1, n] modulo n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache


class CactusError(Exception):
    """Base class for errors raised by this package."""


class IndexOutOfRange(CactusError, ValueError):
    """A strand index fell outside 1..n."""


class InvalidPair(CactusError, ValueError):
    """An index pair does not name a generator of the requested family."""


class SpecMismatch(CactusError, ValueError):
    """Two objects belonging to different group specs were combined."""


class OutOfInterval(CactusError, ValueError):
    """Reflection was evaluated at a point outside the interval."""


class NotNested(CactusError, ValueError):
    """Conjugation requested for a pair that is not strictly nested."""


class WrongFamily(CactusError, ValueError):
    """An operation restricted to one family got the other one."""


class NotAJ3(WrongFamily):
    """The hyperbolic embedding is defined for the affine group on 3 strands."""


class BudgetExceeded(CactusError, RuntimeError):
    """An enumeration grew past its word or vertex budget."""


class VertexNotInBall(CactusError, KeyError):
    """A vertex key is not present in the ball."""


class PreconditionViolated(CactusError, ValueError):
    """A check was invoked outside its stated precondition."""


class ClosureViolation(CactusError, RuntimeError):
    """Developing the tessellation around a cycle failed to close up."""


class TooSmall(CactusError, ValueError):
    """The ball is too small for the requested measurement."""


class Family(enum.Enum):
    CACTUS = "cactus"
    AFFINE = "affine"


@dataclass(frozen=True)
class GroupSpec:
    """Which group we are working in: a family plus the number of strands."""

    family: Family
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 2:
            raise IndexOutOfRange(f"degree must be at least 2, got {self.degree}")

    @property
    def n(self) -> int:
        return self.degree


def cactus(n: int) -> GroupSpec:
    return GroupSpec(Family.CACTUS, n)


def affine(n: int) -> GroupSpec:
    return GroupSpec(Family.AFFINE, n)


def _wrap(z: int, n: int) -> int:
    """Reduce z into the window [1, n] modulo n."""
    return (z - 1) % n + 1


@dataclass(frozen=True)
class Generator:
    """One involutive generator, identified by its ordered index pair.

    For the cactus family p < q is required; for the affine family any
    ordered pair with p != q is a generator (sigma_{p,q} and sigma_{q,p}
    are different generators with different cyclic intervals).
    """

    p: int
    q: int
    spec: GroupSpec

    def __post_init__(self) -> None:
        n = self.spec.degree
        if not (1 <= self.p <= n and 1 <= self.q <= n):
            raise IndexOutOfRange(f"indices ({self.p},{self.q}) outside 1..{n}")
        if self.p == self.q:
            raise InvalidPair("generator indices must differ")
        if self.spec.family is Family.CACTUS and self.p > self.q:
            raise InvalidPair(
                f"cactus generators need p < q, got ({self.p},{self.q})"
            )

    def text(self) -> str:
        return f"{self.p},{self.q}"

    def __repr__(self) -> str:  # compact; the spec is clear from context
        return f"g({self.p},{self.q})"


def make_generator(spec: GroupSpec, p: int, q: int) -> Generator:
    return Generator(p, q, spec)


def parse_generator(spec: GroupSpec, text: str) -> Generator:
    """Parse the "p,q" generator syntax."""
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidPair(f"expected 'p,q', got {text!r}")
    try:
        p, q = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InvalidPair(f"expected integers in {text!r}") from exc
    return Generator(p, q, spec)


def generators(spec: GroupSpec) -> tuple[Generator, ...]:
    """All generators of the spec in lexicographic (p, q) order.

    J_n has n(n-1)/2 of them, AJ_n has n(n-1).
    """
    n = spec.degree
    if spec.family is Family.CACTUS:
        pairs = [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]
    else:
        pairs = [(p, q) for p in range(1, n + 1) for q in range(1, n + 1) if p != q]
    return tuple(Generator(p, q, spec) for p, q in pairs)


@dataclass(frozen=True)
class CyclicInterval:
    """The (possibly wrapping) arc of strand indices attached to a generator.

    `members` lists the indices in traversal order from p to q; the member
    *set* alone does not determine the arc once it covers all residues, so
    order is kept.
    """

    p: int
    q: int
    degree: int
    members: tuple[int, ...]

    @staticmethod
    def of(p: int, q: int, n: int) -> "CyclicInterval":
        if not (1 <= p <= n and 1 <= q <= n) or p == q:
            raise InvalidPair(f"no interval for ({p},{q}) with n={n}")
        if p < q:
            members = tuple(range(p, q + 1))
        else:
            members = tuple(range(p, n + 1)) + tuple(range(1, q + 1))
        return CyclicInterval(p, q, n, members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, r: int) -> bool:
        if self.p <= self.q:
            return self.p <= r <= self.q
        return r >= self.p or r <= self.q


def interval_of(g: Generator) -> CyclicInterval:
    return CyclicInterval.of(g.p, g.q, g.spec.degree)


class RelationKind(enum.Enum):
    """How two distinct generators' intervals sit relative to each other."""

    NONE = "none"
    DISJOINT = "disjoint"
    FIRST_CONTAINS_SECOND = "first_contains_second"
    SECOND_CONTAINS_FIRST = "second_contains_first"


def _arc_contains(op: int, oq: int, ip_: int, iq: int, n: int) -> bool:
    # Position of x inside the outer arc (p, p+1, ..., q) is (x - p) mod n.
    # The inner arc is contained iff both endpoints lie in the outer arc and
    # the inner arc runs forward there (start position <= end position).
    lo = (oq - op) % n  # position of the outer endpoint
    pi = (ip_ - op) % n
    qi = (iq - op) % n
    return pi <= lo and qi <= lo and pi <= qi


def classify(g1: Generator, g2: Generator) -> RelationKind:
    """Decide which defining relation (if any) binds an ordered pair.

    Exactly one of the four kinds holds for distinct generators of a common
    spec.  NONE means the intervals overlap without nesting, in which case
    the pair satisfies no relation at all.
    """
    if g1.spec != g2.spec:
        raise SpecMismatch(f"{g1!r} and {g2!r} live in different groups")
    if g1 == g2:
        raise InvalidPair("classify needs two distinct generators")
    n = g1.spec.degree
    i1, i2 = interval_of(g1), interval_of(g2)
    if frozenset(i1.members).isdisjoint(i2.members):
        return RelationKind.DISJOINT
    if len(i1) > len(i2) and _arc_contains(g1.p, g1.q, g2.p, g2.q, n):
        return RelationKind.FIRST_CONTAINS_SECOND
    if len(i2) > len(i1) and _arc_contains(g2.p, g2.q, g1.p, g1.q, n):
        return RelationKind.SECOND_CONTAINS_FIRST
    return RelationKind.NONE


def s_reflect(p: int, q: int, r: int, n: int) -> int:
    """Reflect the point r across the interval [p, q]_c.

    The reflection reverses the arc, sending its k-th member to its k-th
    member from the end; on indices that is r |-> p + q - r reduced into
    [1, n] mod n.  Only defined for r inside the interval.
    """
    if not (1 <= r <= n):
        raise IndexOutOfRange(f"r={r} outside 1..{n}")
    if r not in CyclicInterval.of(p, q, n):
        raise OutOfInterval(f"{r} not in the interval [{p},{q}]_c")
    return _wrap(p + q - r, n)


def conjugate_nested(outer: Generator, inner: Generator) -> Generator:
    """The image of `inner` when conjugated by a strictly containing `outer`.

    outer * inner = conjugate_nested(outer, inner) * outer holds in the
    group.  The image interval is the mirror of the inner one inside the
    outer arc, traversed in the opposite direction, hence the index swap.
    """
    if classify(outer, inner) is not RelationKind.FIRST_CONTAINS_SECOND:
        raise NotNested(f"{inner!r} is not strictly nested in {outer!r}")
    n = outer.spec.degree
    return Generator(
        s_reflect(outer.p, outer.q, inner.q, n),
        s_reflect(outer.p, outer.q, inner.p, n),
        outer.spec,
    )


def cactus_conjugate_nested(outer: Generator, inner: Generator) -> Generator:
    """conjugate_nested restricted to J_n, where it is s_{p+q-r, p+q-m}."""
    if outer.spec.family is not Family.CACTUS:
        raise WrongFamily("cactus_conjugate_nested needs cactus generators")
    return conjugate_nested(outer, inner)


# --------------------------------------------------------------------------
# Precomputed relation tables.
#
# Everything downstream (normalization, ball construction, verification)
# reduces to pair lookups, so we flatten the generator set to integer ids and
# tabulate the relation kind, the conjugation, and the one priority-raising
# rewrite per ordered pair.
#
# Priority rank of a generator: kappa(g) = (-|interval|, p, q) -- longer
# intervals first, then smaller start, then smaller end.  Ranking by length
# before start is load-bearing: conjugating through a *wrapped* outer arc can
# hand the image a numerically tiny start index, and sorting disjoint letters
# by bare start index then lets the two sides of a nested flip disagree about
# the final order (e.g. in degree 5, s(3,4)s(5,2)s(5,1) and
# s(1,2)s(3,4)s(5,2) are the same element but both are fixpoints under
# start-first ordering).  Interval length is conjugation-invariant, so
# ranking it first removes that ambiguity; the rewriting oracle then checks
# confluence of what remains.
#
# Move codes in `mtype`:
#
#   0  stable pair (no priority-raising move)
#   1  free cancellation (equal letters)
#   2  rewrite (a, b) -> (mres1[a*G+b], mres2[a*G+b])
#      either a commuting swap bringing the kappa-smaller generator left, or
#      a nested flip bringing the longer interval left.
# --------------------------------------------------------------------------

_REL_NONE, _REL_DISJOINT, _REL_FIRST, _REL_SECOND = 0, 1, 2, 3


class Presentation:
    """Integer-indexed relation tables for one group spec."""

    def __init__(self, spec: GroupSpec) -> None:
        self.spec = spec
        gens = generators(spec)
        self.gens = gens
        G = len(gens)
        self.G = G
        self.pairs = tuple((g.p, g.q) for g in gens)
        self.gid = {pq: i for i, pq in enumerate(self.pairs)}
        self.start = [g.p for g in gens]
        self.card = [len(interval_of(g)) for g in gens]
        self.kappa = [(-self.card[i], g.p, g.q) for i, g in enumerate(gens)]

        kind_of = {
            RelationKind.NONE: _REL_NONE,
            RelationKind.DISJOINT: _REL_DISJOINT,
            RelationKind.FIRST_CONTAINS_SECOND: _REL_FIRST,
            RelationKind.SECOND_CONTAINS_FIRST: _REL_SECOND,
        }
        rel = [0] * (G * G)
        conj = [-1] * (G * G)
        for a, ga in enumerate(gens):
            for b, gb in enumerate(gens):
                if a == b:
                    continue
                k = classify(ga, gb)
                rel[a * G + b] = kind_of[k]
                if k is RelationKind.FIRST_CONTAINS_SECOND:
                    img = conjugate_nested(ga, gb)
                    conj[a * G + b] = self.gid[(img.p, img.q)]
        self.rel = rel
        self.conj = conj

        kappa = self.kappa
        mtype = [0] * (G * G)
        mres1 = [0] * (G * G)
        mres2 = [0] * (G * G)
        for a in range(G):
            for b in range(G):
                ab = a * G + b
                if a == b:
                    mtype[ab] = 1
                elif rel[ab] == _REL_DISJOINT and kappa[b] < kappa[a]:
                    mtype[ab] = 2
                    mres1[ab], mres2[ab] = b, a
                elif rel[ab] == _REL_SECOND:
                    mtype[ab] = 2
                    mres1[ab], mres2[ab] = b, conj[b * G + a]
        self.mtype = mtype
        self.mres1 = mres1
        self.mres2 = mres2

    # -- encoding ----------------------------------------------------------

    def id_of(self, g: Generator) -> int:
        if g.spec != self.spec:
            raise SpecMismatch(f"{g!r} does not belong to {self.spec}")
        return self.gid[(g.p, g.q)]

    def ids(self, letters) -> list[int]:
        return [self.id_of(g) for g in letters]

    def letters(self, ids) -> tuple[Generator, ...]:
        return tuple(self.gens[i] for i in ids)


@lru_cache(maxsize=None)
def presentation(spec: GroupSpec) -> Presentation:
    return Presentation(spec)
