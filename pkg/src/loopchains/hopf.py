"""Coproduct, counit, antipode and cocommutativity homotopy on bead words.

Tensor sums are dicts ``{(left_word, right_word): coeff}``; both words in a
pair share source and target. Signs follow the Koszul rule for the degrees
of words (sum of ``dim - 1`` over beads).
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import combinations

from .exactalg import FormalSum, ZZ
from .pathcat import Word, Bead, concat, identity, mul_sums, word_key, d_sum


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def tensor_key(pair):
    return (word_key(pair[0]), word_key(pair[1]))


def tensor_sum(terms, ring=ZZ) -> FormalSum:
    return FormalSum(terms, ring, key=tensor_key)


def _single(b: Bead) -> Word:
    return Word(b[0], (b,))


def _chop(b: Bead, cuts) -> Word:
    """Word of contiguous pieces of b between the positions in ``cuts``."""
    return Word(b[0], tuple(b[x:y + 1] for x, y in zip(cuts, cuts[1:])))


# ---------------------------------------------------------------------------
# tensor algebra helpers


def tensor_mul(A: dict, B: dict) -> dict:
    """(a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd, skipping non-composable pairs."""
    out: dict = defaultdict(int)
    for (a, b), x in A.items():
        db = b.degree
        for (c, d), y in B.items():
            if a.target != c.source or b.target != d.source:
                continue
            s = _sgn(db * c.degree)
            out[(concat(a, c), concat(b, d))] += s * x * y
    return {k: v for k, v in out.items() if v}


def tau(A: dict) -> dict:
    """Koszul-signed swap."""
    return {(b, a): _sgn(a.degree * b.degree) * c for (a, b), c in A.items()}


def apply_left(f, A: dict) -> dict:
    """(f ⊗ id) for a degree-changing linear map f on words (sign-free: f applied first)."""
    out: dict = defaultdict(int)
    for (a, b), c in A.items():
        for a2, x in f(a).items():
            out[(a2, b)] += c * x
    return {k: v for k, v in out.items() if v}


def apply_right(f, A: dict, f_degree: int = 0) -> dict:
    """(id ⊗ f) with Koszul sign (-1)^{|f||a|}."""
    out: dict = defaultdict(int)
    for (a, b), c in A.items():
        s = _sgn(f_degree * a.degree)
        for b2, x in f(b).items():
            out[(a, b2)] += s * c * x
    return {k: v for k, v in out.items() if v}


def tensor_d(A: dict) -> dict:
    """(d ⊗ id + id ⊗ d) on a tensor sum."""
    out: dict = defaultdict(int)
    for k, v in apply_left(lambda w: d_sum({w: 1}), A).items():
        out[k] += v
    for k, v in apply_right(lambda w: d_sum({w: 1}), A, -1).items():
        out[k] += v
    return {k: v for k, v in out.items() if v}


def mu_tensor(A: dict) -> dict:
    """Multiply the two factors of every pair: mu : P ⊗ P -> P."""
    out: dict = defaultdict(int)
    for (a, b), c in A.items():
        if a.target == b.source:
            out[concat(a, b)] += c
    return {k: v for k, v in out.items() if v}


def linear(f, a: dict) -> dict:
    out: dict = defaultdict(int)
    for w, c in a.items():
        for v, x in f(w).items():
            out[v] += c * x
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# coproduct and counit


@lru_cache(maxsize=None)
def _nabla0_bead(b: Bead) -> tuple:
    if len(b) == 2:
        w = _single(b)
        return (((w, w), 1),)
    k = len(b) - 1
    out = []
    for l in range(k):
        for I in combinations(range(1, k), l):
            cuts = (0,) + I + (k,)
            # interior vertices kept in the left factor, each counted once per
            # cut vertex before it
            eps = sum((j - 1) * (cuts[j] - cuts[j - 1] - 1) for j in range(1, len(cuts)))
            left = _chop(b, cuts)
            right = _single(tuple(b[x] for x in cuts))
            out.append(((left, right), _sgn(eps)))
    return tuple(out)


def nabla0_bead(b: Bead) -> dict:
    return dict(_nabla0_bead(b))


@lru_cache(maxsize=4096)
def _nabla0_word(w: Word) -> tuple:
    acc = {(identity(w.source), identity(w.source)): 1}
    for b in w.beads:
        acc = tensor_mul(acc, nabla0_bead(b))
    return tuple(acc.items())


def nabla0(w: Word) -> dict:
    """The coproduct ∇₀, a monoid map, grouplike on edges and inverse edges."""
    return dict(_nabla0_word(w))


def nabla0_op(w: Word) -> dict:
    return tau(nabla0(w))


def counit(w: Word) -> int:
    return int(all(len(b) == 2 for b in w.beads))


# ---------------------------------------------------------------------------
# antipode


@lru_cache(maxsize=None)
def _antipode_bead(b: Bead) -> tuple:
    if len(b) == 2:
        return ((_single((b[1], b[0])), 1),)
    k = len(b) - 1
    # mu(id ⊗ S)∇₀(b) = 0 solved for S(b): the all-cuts term is
    # c·(edges)·S(b), every other term is already known by induction
    back = Word(b[-1], tuple((b[i + 1], b[i]) for i in reversed(range(k))))
    acc: dict = defaultdict(int)
    pre = 0
    for (left, right), c in _nabla0_bead(b):
        if len(left.beads) == k:
            pre = -c
            continue
        for s, x in antipode(right).items():
            acc[concat(left, s)] += c * x
    out: dict = defaultdict(int)
    for w, c in acc.items():
        if c:
            out[concat(back, w)] += pre * c
    return tuple((w, c) for w, c in out.items() if c)


def antipode_bead(b: Bead) -> dict:
    return dict(_antipode_bead(b))


@lru_cache(maxsize=4096)
def _antipode_word(w: Word) -> tuple:
    degs = [len(b) - 2 for b in w.beads]
    # Koszul sign of reversing the whole word
    sign = 0
    total = 0
    for d in degs:
        sign += d * total
        total += d
    acc = {identity(w.target): _sgn(sign)}
    for b in reversed(w.beads):
        acc = mul_sums(acc, antipode_bead(b))
    return tuple(acc.items())


def antipode(w: Word) -> dict:
    """S(w): reverse the word, apply S to each bead, Koszul sign of the reversal."""
    return dict(_antipode_word(w))


# ---------------------------------------------------------------------------
# cocommutativity homotopy


@lru_cache(maxsize=None)
def _nabla1_bead(b: Bead) -> tuple:
    k = len(b) - 1
    if k < 2:
        return ()
    out: dict = defaultdict(int)
    for l in range(1, k):
        for m in range(l):
            for I in combinations(range(1, l), m):
                for n in range(k - l):
                    for J in combinations(range(l + 1, k), n):
                        i_full = (0,) + I + (l,)
                        j_full = (l,) + J + (k,)
                        # shuffle signs as for the coproduct, plus the block swap
                        eps = sum((r - 1) * (i_full[r] - i_full[r - 1] - 1) for r in range(1, m + 2))
                        eps += sum((s - 1) * (j_full[s] - j_full[s - 1] - 1) for s in range(1, n + 2))
                        eps += (m + l) * (n + k)
                        # the run l..j_1 sits in the first left bead, the run
                        # i_m..l in the last right bead
                        first = (0,) + I + tuple(range(l, j_full[1] + 1))
                        last = tuple(range(i_full[m], l + 1)) + J + (k,)
                        left_pos = [first] + [tuple(range(x, y + 1)) for x, y in zip(j_full[1:], j_full[2:])]
                        right_pos = [tuple(range(x, y + 1)) for x, y in zip(i_full[:m], i_full[1:m + 1])] + [last]
                        left = Word(b[0], tuple(tuple(b[p] for p in bead) for bead in left_pos))
                        right = Word(b[0], tuple(tuple(b[p] for p in bead) for bead in right_pos))
                        out[(left, right)] += _sgn(eps)
    return tuple((k_, v) for k_, v in out.items() if v)


def nabla1_bead(b: Bead) -> dict:
    return dict(_nabla1_bead(b))


@lru_cache(maxsize=4096)
def _nabla1_word(w: Word) -> tuple:
    beads = w.beads
    out: dict = defaultdict(int)
    prefix_deg = 0
    for r, b in enumerate(beads):
        h = nabla1_bead(b)
        if h:
            acc = {(identity(w.source), identity(w.source)): _sgn(prefix_deg)}
            for x in beads[:r]:
                acc = tensor_mul(acc, tau(nabla0_bead(x)))
            acc = tensor_mul(acc, h)
            for x in beads[r + 1:]:
                acc = tensor_mul(acc, nabla0_bead(x))
            for key, v in acc.items():
                out[key] += v
        prefix_deg += len(b) - 2
    return tuple((k, v) for k, v in out.items() if v)


def nabla1(w: Word) -> dict:
    """∇₁(w): degree +1 homotopy between ∇₀ and its opposite."""
    return dict(_nabla1_word(w))
