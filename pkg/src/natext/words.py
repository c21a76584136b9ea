"""Words, signed words, and finitely presented semigroups.

A Word is a tuple of generator indices; the empty tuple is the monoid
identity (the empty word is admitted everywhere).  A SignedWord is a tuple
of (generator index, sign) pairs with sign in {+1, -1}; reading it left to
right as a product gives the group element it names.

Bounded word-problem search is tri-state: Equal and NotEqualProven are
proofs, Unknown is an honest budget exhaustion.  Every consumer must handle
all three.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from . import snf

Word = tuple  # tuple[int, ...]
SignedWord = tuple  # tuple[tuple[int, int], ...]


class TriState(Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqualProven"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered finite set of distinct generator names."""

    names: tuple

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        for name in self.names:
            if not name or any(ch.isspace() for ch in name):
                raise ValueError("generator names must be non-empty and whitespace-free")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def split_token(self, token: str) -> list:
        """Split a token into generator indices, longest name first.

        A token that is itself a generator name is one letter; otherwise it
        is read greedily as a concatenation of names (so "ab" over
        generators a, b is the word a b).
        """
        if token in self.names:
            return [self.index(token)]
        out = []
        pos = 0
        by_len = sorted(self.names, key=len, reverse=True)
        while pos < len(token):
            for name in by_len:
                if token.startswith(name, pos):
                    out.append(self.index(name))
                    pos += len(name)
                    break
            else:
                raise ValueError(f"cannot parse token {token!r} over generators {self.names}")
        return out

    def parse_word(self, text: str) -> Word:
        """Parse whitespace-separated generator tokens into a Word."""
        out = []
        for token in text.split():
            out.extend(self.split_token(token))
        return tuple(out)

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        return " ".join(self.names[i] for i in word)

    def format_signed(self, sw: SignedWord) -> str:
        if not sw:
            return "1"
        return " ".join(
            self.names[i] if s == 1 else self.names[i] + "^-1" for i, s in sw
        )


@dataclass(frozen=True)
class SemigroupPresentation:
    """Finitely presented semigroup <B | R>+ with the monoid convention.

    Relations are pairs of non-empty positive words; the congruence they
    generate allows subword replacement in either direction.
    """

    gens: GeneratorSet
    relations: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for lhs, rhs in self.relations:
            if not lhs or not rhs:
                raise ValueError("relation sides must be non-empty words")
            for w in (lhs, rhs):
                for i in w:
                    if not 0 <= i < len(self.gens):
                        raise ValueError("relation uses unknown generator index")

    @property
    def n_gens(self) -> int:
        return len(self.gens)

    def format(self) -> str:
        head = "gens: " + " ".join(self.gens.names) + ";"
        if not self.relations:
            return head
        rels = " ".join(
            f"{self.gens.format_word(l)} = {self.gens.format_word(r)};"
            for l, r in self.relations
        )
        return head + " rels: " + rels


def parse_presentation(text: str) -> SemigroupPresentation:
    """Parse the textual format ``gens: a b; rels: ab = b b a;``.

    Case-sensitive.  Segments are separated by ';'; the first must start
    with 'gens:', the optional second with 'rels:', and every further
    segment is one more relation.  Tokens are whitespace-separated; a token
    may concatenate single generator names (see GeneratorSet.split_token).
    """
    segments = [seg.strip() for seg in text.split(";")]
    segments = [seg for seg in segments if seg]
    if not segments or not segments[0].startswith("gens:"):
        raise ValueError("presentation must start with 'gens:'")
    gens = GeneratorSet(tuple(segments[0][len("gens:"):].split()))
    relations = []
    rest = segments[1:]
    if rest:
        if not rest[0].startswith("rels:"):
            raise ValueError("second segment must start with 'rels:'")
        rest[0] = rest[0][len("rels:"):].strip()
    for seg in rest:
        if not seg:
            continue
        if "=" not in seg:
            raise ValueError(f"relation segment {seg!r} lacks '='")
        lhs_text, rhs_text = seg.split("=", 1)
        relations.append((gens.parse_word(lhs_text), gens.parse_word(rhs_text)))
    return SemigroupPresentation(gens, tuple(relations))


def free_reduce(sw: SignedWord) -> SignedWord:
    """Cancel adjacent inverse pairs until none remain (single stack scan)."""
    stack = []
    for gen, sign in sw:
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


def signed_invert(sw: SignedWord) -> SignedWord:
    return tuple((gen, -sign) for gen, sign in reversed(sw))


def word_to_signed(word: Word) -> SignedWord:
    return tuple((gen, 1) for gen in word)


def letter_counts(word: Word, n_gens: int) -> list:
    out = [0] * n_gens
    for gen in word:
        out[gen] += 1
    return out


def signed_counts(sw: SignedWord, n_gens: int) -> list:
    out = [0] * n_gens
    for gen, sign in sw:
        out[gen] += sign
    return out


def relation_lattice(p: SemigroupPresentation) -> list:
    """Rows spanning the abelianized relation lattice in Z^n_gens."""
    rows = []
    for lhs, rhs in p.relations:
        lv = letter_counts(lhs, p.n_gens)
        rv = letter_counts(rhs, p.n_gens)
        rows.append([a - b for a, b in zip(lv, rv)])
    return rows


def abelian_separated(p: SemigroupPresentation, u: Word, v: Word) -> bool:
    """True when u and v differ in the abelianized quotient (a proof of
    inequality in the semigroup)."""
    diff = [a - b for a, b in zip(letter_counts(u, p.n_gens), letter_counts(v, p.n_gens))]
    return not snf.lattice_contains(relation_lattice(p), diff)


def _rewrites(p: SemigroupPresentation, word: Word, cap: int):
    """All single subword replacements of word by a relation side.

    Yields (new_word, capped) pairs; capped marks results suppressed for
    exceeding the length cap (reported via the second stream below).
    """
    for lhs, rhs in p.relations:
        for src, dst in ((lhs, rhs), (rhs, lhs)):
            ls = len(src)
            new_len = len(word) - ls + len(dst)
            for i in range(len(word) - ls + 1):
                if word[i:i + ls] == src:
                    if new_len > cap:
                        yield None, True
                    else:
                        yield word[:i] + dst + word[i + ls:], False


def words_equal_bounded(
    p: SemigroupPresentation,
    u: Word,
    v: Word,
    budget: int = 2000,
    slack: int = 4,
    realization=None,
) -> TriState:
    """Bounded decision of u ~ v in the presented semigroup.

    Order of attack: literal equality; an attached faithful realization
    (images equal iff the words are equal); abelianization against the
    relation lattice (difference outside the lattice proves inequality);
    bidirectional breadth-first search over subword rewrites with length
    cap max(|u|, |v|) + slack and a node budget.  If one side's rewrite
    closure completes without any cap suppression and misses the other
    side, the classes are distinct.  Otherwise Unknown.

    realization, when given, is an object with eval(word) returning a
    canonically-compared value, and must be faithful on the semigroup.
    """
    u = tuple(u)
    v = tuple(v)
    if u == v:
        return TriState.EQUAL
    if realization is not None:
        return TriState.EQUAL if realization.eval(u) == realization.eval(v) else TriState.NOT_EQUAL
    if abelian_separated(p, u, v):
        return TriState.NOT_EQUAL
    if not p.relations:
        return TriState.NOT_EQUAL  # congruence is equality on the free monoid

    cap = max(len(u), len(v)) + slack
    seen_u = {u}
    seen_v = {v}
    frontier_u = deque([u])
    frontier_v = deque([v])
    suppressed = {id(seen_u): False, id(seen_v): False}
    spent = 0
    while spent < budget and (frontier_u or frontier_v):
        # expand the smaller live frontier first
        if frontier_u and (not frontier_v or len(frontier_u) <= len(frontier_v)):
            frontier, seen, other = frontier_u, seen_u, seen_v
        else:
            frontier, seen, other = frontier_v, seen_v, seen_u
        word = frontier.popleft()
        spent += 1
        for new, capped in _rewrites(p, word, cap):
            if capped:
                suppressed[id(seen)] = True
                continue
            if new in other:
                return TriState.EQUAL
            if new not in seen:
                seen.add(new)
                frontier.append(new)
    if not frontier_u and not suppressed[id(seen_u)] and v not in seen_u:
        return TriState.NOT_EQUAL
    if not frontier_v and not suppressed[id(seen_v)] and u not in seen_v:
        return TriState.NOT_EQUAL
    return TriState.UNKNOWN
