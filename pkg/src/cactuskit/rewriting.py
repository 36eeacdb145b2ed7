"""Words in the generators and the priority rewriting system.

A word is a finite sequence of generators.  Because every generator is an
involution, inverses never need to be written; the free reduction step just
deletes adjacent equal letters.

Generators are ranked by kappa(g) = (-interval length, start, end): longer
intervals first, then smaller start index.  A word dominates another word of
the same element when its sequence of kappa ranks is lexicographically
smaller.  A word is in *normal form* when it is freely reduced and no
adjacent pair admits a priority-raising move, where the raising moves are:

* commuting swap: adjacent generators with disjoint intervals may be
  interchanged; doing so raises priority iff it brings the kappa-smaller
  letter to the left (for equal interval lengths this is the smaller start
  index; a longer interval moves left regardless of start indices);
* nested flip: if the right letter's interval strictly contains the left
  one's, the pair (x, B) rewrites to (B, B x B), bringing the longer interval
  to the left.  The conjugated letter is again a generator
  (core.conjugate_nested), with the same interval length as x.

Both raising moves strictly decrease (length, kappa-sequence) in
lexicographic order, so normalize() -- leftmost raising move to a fixpoint --
terminates.  Uniqueness of the fixpoint (confluence) is a different matter.
The oracle (oracle_closure / normalization_sinks) certifies it exhaustively
for degree 3 affine words through length 5; from degree 4 on, BOTH families
contain length-3 words whose raising moves run into two distinct fixpoints,
e.g. ``3,4;1,2;1,3``: the middle letter may escape left past the disjoint
``3,4``, or be reflected under ``1,3`` by a nested flip, and the flanking
letters overlap without any relation, so neither result can reach the other.
Swapping the ranks of ``1,2`` and ``3,4`` un-sticks this word but sticks its
mirror ``1,2;3,4;2,4`` -- no static ranking is confluent, and completion
(new move shapes) is out of scope here.  Consequences:

* normalize() is sound on every input: the output always represents the
  same group element, and never lengthens.
* equal() is sound (identical normal forms imply equal elements) and is
  complete on the certified scope; beyond it, a pair of equal elements can
  normalize apart.  normalization_sinks() detects exactly these cases.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .core import (
    BudgetExceeded,
    Generator,
    GroupSpec,
    Presentation,
    SpecMismatch,
    _REL_DISJOINT,
    _REL_FIRST,
    _REL_SECOND,
    generators,
    parse_generator,
    presentation,
)


@dataclass(frozen=True, eq=False)
class Word:
    """A sequence of generators of one group.

    Equality and hashing are by value (spec plus letter sequence) across all
    Word subclasses, so a certified NormalForm compares equal to the plain
    Word with the same letters.
    """

    spec: GroupSpec
    letters: tuple[Generator, ...]

    def __post_init__(self) -> None:
        for g in self.letters:
            if g.spec != self.spec:
                raise SpecMismatch(f"letter {g!r} does not belong to {self.spec}")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Word):
            return self.spec == other.spec and self.letters == other.letters
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.letters))

    @staticmethod
    def from_pairs(spec: GroupSpec, pairs) -> "Word":
        return Word(spec, tuple(Generator(p, q, spec) for p, q in pairs))

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((g.p, g.q) for g in self.letters)

    def text(self) -> str:
        return ";".join(g.text() for g in self.letters) if self.letters else "e"

    def __len__(self) -> int:
        return len(self.letters)

    def __repr__(self) -> str:
        return f"word[{self.text()}]" if self.letters else "word[e]"


class NormalForm(Word):
    """A word certified by normalize() to be a rewriting fixpoint."""


def identity(spec: GroupSpec) -> Word:
    return Word(spec, ())


def parse_word(spec: GroupSpec, text: str) -> Word:
    """Parse the semicolon-separated word syntax, e.g. "1,2;2,3;3,1".

    The empty string denotes the empty word (the identity).
    """
    text = text.strip()
    if not text or text == "e":
        return Word(spec, ())
    return Word(spec, tuple(parse_generator(spec, part) for part in text.split(";")))


class MoveKind(enum.Enum):
    FREE_CANCEL = "free_cancel"
    COMMUTE_SWAP = "commute_swap"
    NESTED_FLIP_LEFT = "nested_flip_left"    # longer interval moves left
    NESTED_FLIP_RIGHT = "nested_flip_right"  # longer interval moves right


@dataclass(frozen=True)
class RewriteMove:
    """One applicable rewrite at a position, with the resulting word."""

    kind: MoveKind
    position: int
    result: Word
    raises_priority: bool


def free_reduce(word: Word) -> Word:
    """Delete adjacent equal letters until none remain (leftmost first)."""
    out: list[Generator] = []
    for g in word.letters:
        if out and out[-1] == g:
            out.pop()
        else:
            out.append(g)
    return Word(word.spec, tuple(out))


def applicable_moves(word: Word) -> tuple[RewriteMove, ...]:
    """All moves at all positions, in both directions.

    For each adjacent pair this lists the free cancellation, the commuting
    swap (its own inverse), or the nested flip in whichever direction
    applies; flips come in inverse pairs across the two orientations of the
    same relation, so the full move set generates the whole length-capped
    equivalence class.
    """
    pres = presentation(word.spec)
    ids = pres.ids(word.letters)
    G = pres.G
    rel, conj, kappa = pres.rel, pres.conj, pres.kappa
    moves: list[RewriteMove] = []
    for i in range(len(ids) - 1):
        a, b = ids[i], ids[i + 1]
        if a == b:
            res = ids[:i] + ids[i + 2 :]
            moves.append(
                RewriteMove(MoveKind.FREE_CANCEL, i, Word(word.spec, pres.letters(res)), True)
            )
            continue
        r = rel[a * G + b]
        if r == _REL_DISJOINT:
            res = ids[:i] + [b, a] + ids[i + 2 :]
            moves.append(
                RewriteMove(
                    MoveKind.COMMUTE_SWAP,
                    i,
                    Word(word.spec, pres.letters(res)),
                    kappa[b] < kappa[a],
                )
            )
        elif r == _REL_FIRST:
            res = ids[:i] + [conj[a * G + b], a] + ids[i + 2 :]
            moves.append(
                RewriteMove(
                    MoveKind.NESTED_FLIP_RIGHT, i, Word(word.spec, pres.letters(res)), False
                )
            )
        elif r == _REL_SECOND:
            res = ids[:i] + [b, conj[b * G + a]] + ids[i + 2 :]
            moves.append(
                RewriteMove(
                    MoveKind.NESTED_FLIP_LEFT, i, Word(word.spec, pres.letters(res)), True
                )
            )
    return tuple(moves)


def _normalize_ids(w: list[int], pres: Presentation, start_at: int = 0) -> list[int]:
    """Run the greedy leftmost strategy on a mutable id list, in place.

    After a move at position i only the pairs i-1..i+1 can change state, so
    the scan resumes at i-1; this makes the loop near-linear in the number of
    moves actually applied.  `start_at` lets callers that append to an
    already-normal prefix skip the known-stable left part.
    """
    G = pres.G
    mtype, mres1, mres2 = pres.mtype, pres.mres1, pres.mres2
    fuel = 10_000 + 100 * len(w) * len(w)
    i = start_at if start_at > 0 else 0
    while i + 1 < len(w):
        idx = w[i] * G + w[i + 1]
        t = mtype[idx]
        if t == 0:
            i += 1
            continue
        fuel -= 1
        if fuel <= 0:
            raise BudgetExceeded("rewriting move budget exhausted; see oracle tests")
        if t == 1:
            del w[i : i + 2]
        else:
            w[i] = mres1[idx]
            w[i + 1] = mres2[idx]
        i = i - 1 if i > 0 else 0
    return w


def normalize(word: Word) -> NormalForm:
    """The leftmost-greedy rewriting fixpoint of the word.

    Deterministic, length-non-increasing and sound: the output represents
    the same group element as the input.  It is a canonical form exactly on
    the scope where the rewriting system is confluent (see the module
    docstring); elsewhere distinct fixpoints of one element exist and
    normalization_sinks() will report them.
    """
    pres = presentation(word.spec)
    ids = _normalize_ids(pres.ids(word.letters), pres)
    return NormalForm(word.spec, pres.letters(ids))


def is_normal(word: Word) -> bool:
    pres = presentation(word.spec)
    ids = pres.ids(word.letters)
    G = pres.G
    return all(pres.mtype[ids[i] * G + ids[i + 1]] == 0 for i in range(len(ids) - 1))


def equal(w1: Word, w2: Word) -> bool:
    """Word problem by normal-form comparison.

    True implies the words represent the same group element.  False is
    definitive on the certified confluent scope; outside it, equal elements
    can have distinct fixpoints (module docstring), so False there means
    "not provably equal by this system".
    """
    if w1.spec != w2.spec:
        raise SpecMismatch("cannot compare words from different groups")
    return normalize(w1).letters == normalize(w2).letters


def _successors_all(ids: tuple[int, ...], pres: Presentation):
    """Closure moves: cancellations plus relation rewrites in both directions."""
    G, rel, conj = pres.G, pres.rel, pres.conj
    for i in range(len(ids) - 1):
        a, b = ids[i], ids[i + 1]
        if a == b:
            yield ids[:i] + ids[i + 2 :]
            continue
        r = rel[a * G + b]
        if r == _REL_DISJOINT:
            yield ids[:i] + (b, a) + ids[i + 2 :]
        elif r == _REL_FIRST:
            yield ids[:i] + (conj[a * G + b], a) + ids[i + 2 :]
        elif r == _REL_SECOND:
            yield ids[:i] + (b, conj[b * G + a]) + ids[i + 2 :]


def oracle_closure(word: Word, budget: int = 10**6) -> frozenset[Word]:
    """Every word reachable by relation moves without growing the length.

    Relation moves preserve length and free cancellation shrinks it, so this
    set is finite: it is the equivalence class of `word` cut off at length
    len(word).  Exceeding `budget` distinct words raises BudgetExceeded
    rather than returning a truncated set.
    """
    pres = presentation(word.spec)
    root = tuple(pres.ids(word.letters))
    seen = {root}
    frontier = [root]
    while frontier:
        nxt: list[tuple[int, ...]] = []
        for w in frontier:
            for s in _successors_all(w, pres):
                if s not in seen:
                    seen.add(s)
                    if len(seen) > budget:
                        raise BudgetExceeded(
                            f"closure of {word!r} exceeded {budget} words"
                        )
                    nxt.append(s)
        frontier = nxt
    return frozenset(Word(word.spec, pres.letters(ids)) for ids in seen)


_SINKS_CACHE: dict[GroupSpec, dict[tuple[int, ...], frozenset[tuple[int, ...]]]] = {}


def _sinks_ids(
    ids: tuple[int, ...],
    pres: Presentation,
    memo: dict[tuple[int, ...], frozenset[tuple[int, ...]]],
    on_stack: set[tuple[int, ...]],
) -> frozenset[tuple[int, ...]]:
    got = memo.get(ids)
    if got is not None:
        return got
    if ids in on_stack:
        raise BudgetExceeded(f"priority rewriting cycles through {ids!r}")
    on_stack.add(ids)
    G, mtype, mres1, mres2 = pres.G, pres.mtype, pres.mres1, pres.mres2
    succ: list[tuple[int, ...]] = []
    for i in range(len(ids) - 1):
        idx = ids[i] * G + ids[i + 1]
        t = mtype[idx]
        if t == 1:
            succ.append(ids[:i] + ids[i + 2 :])
        elif t == 2:
            succ.append(ids[:i] + (mres1[idx], mres2[idx]) + ids[i + 2 :])
    if not succ:
        result = frozenset((ids,))
    else:
        acc: set[tuple[int, ...]] = set()
        for s in succ:
            acc |= _sinks_ids(s, pres, memo, on_stack)
        result = frozenset(acc)
    on_stack.discard(ids)
    memo[ids] = result
    return result


def normalization_sinks(word: Word) -> frozenset[Word]:
    """Fixpoints reachable by *every* maximal priority-raising strategy.

    Confluence of the rewriting system on this word is exactly the statement
    that the returned set is a singleton equal to {normalize(word)}.  Raises
    BudgetExceeded if some strategy can loop forever (never observed; the
    acceptance sweep would catch it).
    """
    pres = presentation(word.spec)
    memo = _SINKS_CACHE.setdefault(word.spec, {})
    sinks = _sinks_ids(tuple(pres.ids(word.letters)), pres, memo, set())
    return frozenset(Word(word.spec, pres.letters(ids)) for ids in sinks)


def random_word(spec: GroupSpec, length: int, seed: int) -> Word:
    """A reproducible uniform random word: same (spec, length, seed), same word."""
    rng = random.Random(seed)
    gens = generators(spec)
    return Word(spec, tuple(gens[rng.randrange(len(gens))] for _ in range(length)))
