"""Reduced bead words: the localized cobar path category.

A bead is an int tuple. An increasing tuple of length >= 2 is a simplex; a
decreasing pair ``(b, a)`` is the formal inverse of the edge ``[a, b]``. With
this encoding a bead's degree is ``len - 2`` and its weight ``len - 1`` in
both cases, and ``bead[0]``/``bead[-1]`` are its source/target.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import NamedTuple

from .exactalg import FormalSum, ZZ

Bead = tuple[int, ...]


class WordError(ValueError):
    pass


class Word(NamedTuple):
    """A reduced composable bead sequence; ``beads == ()`` is the identity at source."""

    source: int
    beads: tuple

    @property
    def target(self) -> int:
        return self.beads[-1][-1] if self.beads else self.source

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.beads) - 2 * len(self.beads)

    @property
    def weight(self) -> int:
        return sum(len(b) for b in self.beads) - len(self.beads)

    def __str__(self):
        return fmt_word(self)


def identity(a: int) -> Word:
    return Word(a, ())


def is_inverse(b: Bead) -> bool:
    return len(b) == 2 and b[0] > b[1]


def is_cancelling(x: Bead, y: Bead) -> bool:
    return len(x) == 2 and len(y) == 2 and x[0] == y[1] and x[1] == y[0]


def fmt_bead(b: Bead) -> str:
    return "[" + ",".join(map(str, b)) + "]"


def fmt_word(w: Word) -> str:
    if not w.beads:
        return f"(id_{w.source})"
    return "(" + "|".join(fmt_bead(b) for b in w.beads) + ")"


def word_key(w: Word):
    return fmt_word(w)


def path_sum(terms, ring=ZZ) -> FormalSum:
    return FormalSum(terms, ring, key=word_key)


def _free_reduce(beads) -> tuple:
    stack: list = []
    for b in beads:
        if stack and is_cancelling(stack[-1], b):
            stack.pop()
        else:
            stack.append(b)
    return tuple(stack)


def reduce_word(beads, source: int | None = None) -> Word:
    """Normal form of a composable raw bead sequence.

    Adjacent edge/inverse pairs are deleted until none remain; an empty
    result is the identity at the source vertex.
    """
    beads = tuple(tuple(b) for b in beads)
    if not beads:
        if source is None:
            raise WordError("empty word needs a source vertex")
        return Word(source, ())
    for b in beads:
        if len(b) < 2 or (len(b) > 2 and any(x >= y for x, y in zip(b, b[1:]))):
            raise WordError(f"not a bead: {b}")
    for x, y in zip(beads, beads[1:]):
        if x[-1] != y[0]:
            raise WordError(f"beads {fmt_bead(x)} and {fmt_bead(y)} are not composable")
    if source is not None and beads[0][0] != source:
        raise WordError("source does not match first bead")
    return Word(beads[0][0], _free_reduce(beads))


def word(*beads, source: int | None = None) -> Word:
    return reduce_word(beads, source)


def concat(u: Word, v: Word) -> Word:
    """The product mu(u, v); requires target(u) == source(v)."""
    if u.target != v.source:
        raise WordError(f"cannot compose {fmt_word(u)} with {fmt_word(v)}")
    if not u.beads:
        return v
    if not v.beads:
        return u
    stack = list(u.beads)
    i = 0
    vb = v.beads
    while i < len(vb) and stack and is_cancelling(stack[-1], vb[i]):
        stack.pop()
        i += 1
    return Word(u.source, tuple(stack) + vb[i:])


concat_mu = concat


def concat_many(words) -> Word:
    it = iter(words)
    out = next(it)
    for w in it:
        out = concat(out, w)
    return out


def splice(source: int, beads) -> Word:
    """Build a word from an already composable sequence, reducing it."""
    return Word(source, _free_reduce(beads))


# ---------------------------------------------------------------------------
# sums of words as plain dicts


def mul_sums(a: dict, b: dict) -> dict:
    """Product of two linear combinations of words (skipping non-composable pairs)."""
    out: dict = defaultdict(int)
    for u, x in a.items():
        for v, y in b.items():
            if u.target == v.source:
                out[concat(u, v)] += x * y
    return {w: c for w, c in out.items() if c}


# ---------------------------------------------------------------------------
# differential


@lru_cache(maxsize=None)
def bead_differential(b: Bead) -> tuple:
    """The shifted reduced boundary plus shifted reduced coproduct of a bead.

    Returned as ((replacement_beads, coefficient), ...). Edges and inverse
    edges have zero differential.
    """
    k = len(b) - 1
    if k < 2:
        return ()
    out = []
    for j in range(1, k):
        # shifted reduced boundary picks up an extra minus sign
        out.append(((b[:j] + b[j + 1:],), -((-1) ** j)))
    for j in range(1, k):
        out.append(((b[:j + 1], b[j:]), (-1) ** j))
    return tuple(out)


def word_differential_raw(w: Word) -> dict:
    out: dict = defaultdict(int)
    beads = w.beads
    prefix_deg = 0
    for r, b in enumerate(beads):
        rep = bead_differential(b)
        if rep:
            sign = -1 if prefix_deg % 2 else 1
            pre, post = beads[:r], beads[r + 1:]
            for repl, c in rep:
                out[splice(w.source, pre + repl + post)] += sign * c
        prefix_deg += len(b) - 2
    return {v: c for v, c in out.items() if c}


def word_differential(w: Word, ring=ZZ) -> FormalSum:
    """d(w): Leibniz extension of the bead differential with Koszul signs."""
    return FormalSum(word_differential_raw(w), ring, key=word_key)


def d_sum(a: dict) -> dict:
    out: dict = defaultdict(int)
    for w, c in a.items():
        for v, x in word_differential_raw(w).items():
            out[v] += c * x
    return {v: c for v, c in out.items() if c}
