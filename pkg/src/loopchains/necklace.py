"""Necklaces, the differential D, weight truncation, and the adjoint complexes.

A necklace ``(σ₁|⋯|σ_p)σ_{p+1}`` is stored as ``Necklace(word, marked)``
where ``word`` runs from the last vertex of the marked simplex back to its
first vertex. The word is reduced as an element of the path category; the
marked bead is never cancelled against it.
"""
from __future__ import annotations

from collections import defaultdict
from typing import NamedTuple

from .exactalg import FormalSum, ZZ
from .pathcat import Word, concat, fmt_word, word_differential_raw
from .simplicial import Complex, Simplex, fmt_simplex
from .hopf import nabla0_bead, antipode


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


class NecklaceError(ValueError):
    pass


class Necklace(NamedTuple):
    word: Word
    marked: Simplex

    @property
    def degree(self) -> int:
        return self.word.degree + len(self.marked) - 1

    @property
    def weight(self) -> int:
        return self.word.weight + len(self.marked) - 1

    def __str__(self):
        return fmt_word(self.word) + fmt_simplex(self.marked)


def necklace(beads, marked) -> Necklace:
    """Build and validate a necklace from a bead list and a marked simplex."""
    from .pathcat import WordError, reduce_word
    marked = tuple(marked)
    try:
        w = reduce_word(beads, source=marked[-1]) if beads else Word(marked[-1], ())
    except WordError as e:
        raise NecklaceError(str(e))
    if tuple(beads) and len(w.beads) != len(beads):
        raise NecklaceError("word is not reduced")
    if w.target != marked[0]:
        raise NecklaceError("endpoints do not match cyclically")
    return Necklace(w, marked)


def necklace_key(n: Necklace) -> str:
    return str(n)


def necklace_sum(terms, ring=ZZ) -> FormalSum:
    return FormalSum(terms, ring, key=necklace_key)


def D_raw(n: Necklace) -> dict:
    w, c = n
    out: dict = defaultdict(int)
    a = w.degree
    sa = _sgn(a)
    for v, x in word_differential_raw(w).items():
        out[Necklace(v, c)] += x
    k = len(c) - 1
    for j in range(1, k):
        out[Necklace(w, c[:j] + c[j + 1:])] += sa * _sgn(j)
    # front piece of the marked simplex joins the end of the word
    for j in range(1, k + 1):
        out[Necklace(concat(w, Word(c[0], (c[:j + 1],))), c[j:])] += sa
    # back piece rotates to the front of the word
    for j in range(k):
        s = sa * _sgn(j + 1 + (k - j - 1) * (a + j))
        out[Necklace(concat(Word(c[j], (c[j:],)), w), c[:j + 1])] += s
    return {m: x for m, x in out.items() if x}


def D_sum(a: dict) -> dict:
    out: dict = defaultdict(int)
    for n, c in a.items():
        for m, x in D_raw(n).items():
            out[m] += c * x
    return {m: x for m, x in out.items() if x}


def necklace_D(n: Necklace | FormalSum, ring=ZZ) -> FormalSum:
    """The differential D on a necklace or a necklace sum."""
    if isinstance(n, FormalSum):
        return FormalSum(D_sum(n.raw()), n.ring, key=necklace_key)
    return FormalSum(D_raw(n), ring, key=necklace_key)


# ---------------------------------------------------------------------------
# weight truncation


def _words(X: Complex, start: int, end: int, degree: int, weight: int, inverse_caps: dict | None = None):
    """All reduced words start -> end of exact degree and weight <= bound.

    ``inverse_caps`` optionally bounds how often each inverse edge (b, a) may
    occur; inverse edges missing from the dict are then not used at all.
    """
    starting = X.starting_at
    into = X.edges_into
    out = []
    used: dict = defaultdict(int)

    def rec(v, beads, deg, wt):
        if v == end and deg == degree:
            out.append(Word(start, tuple(beads)))
        last = beads[-1] if beads else None
        for s in starting.get(v, ()):
            d, w_ = len(s) - 2, len(s) - 1
            if deg + d > degree or wt + w_ > weight:
                continue
            if last is not None and len(s) == 2 and len(last) == 2 and last == (s[1], s[0]):
                continue
            beads.append(s)
            rec(s[-1], beads, deg + d, wt + w_)
            beads.pop()
        if wt + 1 <= weight:
            for e in into.get(v, ()):
                inv = (e[1], e[0])
                if last is not None and last == e:
                    continue
                if inverse_caps is not None and used[inv] >= inverse_caps.get(inv, 0):
                    continue
                used[inv] += 1
                beads.append(inv)
                rec(e[0], beads, deg, wt + 1)
                beads.pop()
                used[inv] -= 1

    rec(start, [], 0, 0)
    return out


def weight_basis(X: Complex, degree: int, weight: int, inverse_caps: dict | None = None) -> list[Necklace]:
    """Reduced necklaces of the given degree and weight <= bound, canonically ordered.

    ``inverse_caps`` restricts the number of occurrences of each inverse edge
    in the word, as in ``_words``.
    """
    out = []
    for dm in range(0, min(degree, weight, X.dim) + 1):
        for m in X.of_dim(dm):
            for w in _words(X, m[-1], m[0], degree - dm, weight - dm, inverse_caps):
                out.append(Necklace(w, m))
    out.sort(key=necklace_key)
    return out


# ---------------------------------------------------------------------------
# adjoint complexes: generators head ⊗ tail with t(head) = s(tail) = t(tail)


class AdElement(NamedTuple):
    head: Simplex
    tail: Word
    op: bool = False

    @property
    def degree(self) -> int:
        return len(self.head) - 1 + self.tail.degree

    def __str__(self):
        return fmt_simplex(self.head) + "⊗" + fmt_word(self.tail)


def ad_key(e: AdElement) -> str:
    return ("op:" if e.op else "") + str(e)


def ad_element(head, tail: Word, op: bool = False) -> AdElement:
    head = tuple(head)
    if not (head[-1] == tail.source == tail.target):
        raise NecklaceError("need t(head) = s(tail) = t(tail)")
    return AdElement(head, tail, op)


def _delta_R(e: AdElement, sign_fix: int) -> dict:
    sigma, alpha, op = e
    out: dict = defaultdict(int)
    k = len(sigma) - 1
    da = alpha.degree
    for j in range(k):
        front, back = sigma[:j + 1], sigma[j:]
        for (l, r), c in nabla0_bead(back).items():
            if op:
                first, last = r, l
                s = _sgn(j + l.degree * da + r.degree * l.degree + sign_fix)
            else:
                first, last = l, r
                s = _sgn(j + r.degree * da + sign_fix)
            head_word = concat(first, alpha)
            for sw, x in antipode(last).items():
                out[AdElement(front, concat(head_word, sw), op)] += s * c * x
    return out


DELTA_R_SIGN = 1


def D_ad_raw(e: AdElement) -> dict:
    sigma, alpha, op = e
    out: dict = defaultdict(int)
    k = len(sigma) - 1
    for j in range(1, k):
        out[AdElement(sigma[:j] + sigma[j + 1:], alpha, op)] += _sgn(j)
    s = _sgn(k)
    for v, x in word_differential_raw(alpha).items():
        out[AdElement(sigma, v, op)] += s * x
    for m, x in _delta_R(e, DELTA_R_SIGN).items():
        out[m] += x
    if k >= 1:
        out[AdElement(sigma[1:], alpha, op)] += 1
    return {m: x for m, x in out.items() if x}


def D_ad(e: AdElement, ring=ZZ) -> FormalSum:
    """D^ad (or D^ad-op when ``e.op``) on a generator."""
    return FormalSum(D_ad_raw(e), ring, key=ad_key)


def D_ad_op(e: AdElement, ring=ZZ) -> FormalSum:
    return D_ad(e._replace(op=True), ring)


def D_ad_sum(a: dict) -> dict:
    out: dict = defaultdict(int)
    for n, c in a.items():
        for m, x in D_ad_raw(n).items():
            out[m] += c * x
    return {m: x for m, x in out.items() if x}
