"""Homology of weight truncations and the reduction to the coHochschild complex.

For a simply connected X and a collapse A containing every vertex and edge,
the quotient Y = X/A has one vertex and no edges. theta_pi sends a necklace
to a coHochschild generator by deleting edge and inverse-edge beads and
projecting every other bead, and the marked simplex, to Y.
"""
from __future__ import annotations

import json
from collections import defaultdict
from typing import NamedTuple

from .exactalg import FormalSum, ZZ, QQ, Ring, SparseIntMatrix, Zmod, homology_step, format_coefficient, rank
from .necklace import Necklace, D_raw, weight_basis
from .simplicial import BASEPOINT, Complex, QuotientData, boundary, fmt_simplex


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


# ---------------------------------------------------------------------------
# truncated homology


def _necklace_matrix(X: Complex, degree: int, weight: int) -> tuple[SparseIntMatrix, list, list]:
    """Matrix of D from degree to degree-1 on the weight <= w truncation."""
    dom = weight_basis(X, degree, weight) if degree >= 0 else []
    cod = weight_basis(X, degree - 1, weight) if degree >= 1 else []
    index = {b: i for i, b in enumerate(cod)}
    entries = {}
    for j, b in enumerate(dom):
        for n, c in D_raw(b).items():
            entries[(index[n], j)] = c
    return SparseIntMatrix(len(cod), len(dom), entries), dom, cod


def truncated_homology(X: Complex, degree: int, weight: int, ring: Ring = ZZ) -> tuple[int, list[int]]:
    """(betti, torsion) of the weight <= w subcomplex of the necklace complex in one degree."""
    d_n, _, _ = _necklace_matrix(X, degree, weight)
    d_next, _, _ = _necklace_matrix(X, degree + 1, weight)
    return homology_step(d_n, d_next, ring)


def persistent_betti(X: Complex, degree: int, weight: int, later_weight: int, ring: Ring = QQ) -> int:
    """Rank of the map H_n(F_w) -> H_n(F_w') induced by inclusion, w <= w'.

    A class of F_w often becomes a boundary only in a larger truncation (for
    instance, moving the marked point across an inverse edge costs two extra
    units of weight), so this rank settles long before the homology of the
    individual truncations does. Computed over a field: Q, or Z/p for prime p.
    Uses dim(Z_w ∩ B_w') = rank D_w' - rank(D_w' restricted to rows of weight > w).
    """
    if later_weight < weight:
        raise ValueError("later_weight must be at least weight")
    modulus = ring.m if isinstance(ring, Zmod) else None
    if modulus is not None and any(modulus % q == 0 for q in range(2, int(modulus ** 0.5) + 1)):
        raise ValueError("modular homology needs a prime modulus")
    d_n, dom, _ = _necklace_matrix(X, degree, weight)
    cycles = len(dom) - rank(d_n, modulus)
    up = weight_basis(X, degree + 1, later_weight)
    rows: dict = {}
    high: dict = {}
    ent, ent_high = {}, {}
    for j, b in enumerate(up):
        for n, c in D_raw(b).items():
            ent[(rows.setdefault(n, len(rows)), j)] = c
            if n.weight > weight:
                ent_high[(high.setdefault(n, len(high)), j)] = c
    r_all = rank(SparseIntMatrix(len(rows), len(up), ent), modulus)
    r_high = rank(SparseIntMatrix(len(high), len(up), ent_high), modulus)
    return cycles - (r_all - r_high)


class ScanRow(NamedTuple):
    degree: int
    weight: int
    betti: int
    torsion: list

    def to_json(self) -> dict:
        return {"degree": self.degree, "weight": self.weight, "betti": self.betti, "torsion": list(self.torsion)}


def stabilization_scan(X: Complex, degree: int, w_start: int, w_end: int, ring: Ring = ZZ) -> list[ScanRow]:
    """truncated_homology for each weight in [w_start, w_end]."""
    return [ScanRow(degree, w, *truncated_homology(X, degree, w, ring)) for w in range(w_start, w_end + 1)]


def stable_suffix(rows: list[ScanRow], window: int = 3) -> int | None:
    """First weight from which betti and torsion stay equal to the end of the scan.

    Returns None unless at least ``window`` consecutive weights agree; this is
    an observation about the scanned range, not a proof of stability.
    """
    if len(rows) < window:
        return None
    last = (rows[-1].betti, rows[-1].torsion)
    start = len(rows) - 1
    while start > 0 and (rows[start - 1].betti, rows[start - 1].torsion) == last:
        start -= 1
    if len(rows) - start < window:
        return None
    return rows[start].weight


def format_scan(rows: list[ScanRow], fmt: str = "text") -> str:
    if fmt == "json":
        stable = stable_suffix(rows)
        return json.dumps({"rows": [r.to_json() for r in rows], "observed_stable_from": stable}, indent=2)
    lines = ["degree  weight  betti  torsion"]
    for r in rows:
        tors = ",".join(map(str, r.torsion)) or "-"
        lines.append(f"{r.degree:>6}  {r.weight:>6}  {r.betti:>5}  {tors}")
    stable = stable_suffix(rows)
    if stable is not None:
        lines.append(f"observed stable from weight {stable}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# coHochschild complex of a one-vertex quotient


class CoHochschildElement(NamedTuple):
    """(y_1|...|y_p) y_{p+1} with each y_i a class of dimension >= 2."""

    beads: tuple
    marked: tuple

    @property
    def degree(self) -> int:
        return sum(len(b) - 2 for b in self.beads) + _cls_dim(self.marked)

    def __str__(self):
        word = "(" + "|".join(_fmt_cls(b) for b in self.beads) + ")" if self.beads else "(id)"
        return word + _fmt_cls(self.marked)


def _cls_dim(c) -> int:
    return 0 if c == BASEPOINT else len(c) - 1


def _fmt_cls(c) -> str:
    return "[*]" if c == BASEPOINT else fmt_simplex(c)


def coch_key(e: CoHochschildElement) -> str:
    return str(e)


def theta_pi_raw(n: Necklace, q: QuotientData) -> dict:
    beads = []
    for b in n.word.beads:
        if len(b) == 2:
            continue
        p = q.project(b)
        if p is None:
            return {}
        beads.append(p)
    m = q.project(n.marked)
    if m is None:
        return {}
    return {CoHochschildElement(tuple(beads), m): 1}


def theta_pi(a: FormalSum | dict, q: QuotientData) -> FormalSum:
    """theta_pi on a necklace sum; requires a one-vertex, edge-free quotient."""
    if not q.is_reduced:
        raise ValueError("the collapse must contain every vertex and edge")
    raw = a.raw() if isinstance(a, FormalSum) else a
    ring = a.ring if isinstance(a, FormalSum) else ZZ
    acc: dict = defaultdict(int)
    for n, c in raw.items():
        for e, x in theta_pi_raw(n, q).items():
            acc[e] += c * x
    return FormalSum.from_accumulator(acc, ring, coch_key)


def _bead_d(y, q: QuotientData) -> list:
    """Cobar differential of one bead class: list of (replacement beads, coeff)."""
    out = []
    for f, c in boundary(y).items():
        p = q.project(f)
        if p is not None and p != BASEPOINT and len(p) >= 3:
            out.append(((p,), -c))
    k = len(y) - 1
    for j in range(2, k - 1):
        a, b = q.project(y[:j + 1]), q.project(y[j:])
        if a is not None and b is not None:
            out.append(((a, b), _sgn(j)))
    return out


def coch_D_raw(e: CoHochschildElement, q: QuotientData) -> dict:
    out: dict = defaultdict(int)
    beads, c = e
    a = 0
    for r, y in enumerate(beads):
        for repl, x in _bead_d(y, q):
            out[CoHochschildElement(beads[:r] + repl + beads[r + 1:], c)] += _sgn(a) * x
        a += len(y) - 2
    if c == BASEPOINT:
        return {m: x for m, x in out.items() if x}
    k = len(c) - 1
    sa = _sgn(a)
    for f, x in boundary(c).items():
        p = q.project(f)
        if p is not None:
            out[CoHochschildElement(beads, p)] += sa * x
    # front piece joins the end of the word
    for j in range(2, k + 1):
        piece, rest = q.project(c[:j + 1]), q.project(c[j:])
        if piece is not None and rest is not None:
            out[CoHochschildElement(beads + (piece,), rest)] += sa
    # back piece rotates to the front of the word
    for j in range(k - 1):
        piece, rest = q.project(c[j:]), q.project(c[:j + 1])
        if piece is not None and rest is not None:
            out[CoHochschildElement((piece,) + beads, rest)] += sa * _sgn(j + 1 + (k - j - 1) * (a + j))
    return {m: x for m, x in out.items() if x}


def coch_D(a: FormalSum, q: QuotientData) -> FormalSum:
    acc: dict = defaultdict(int)
    for e, c in a.raw().items():
        for m, x in coch_D_raw(e, q).items():
            acc[m] += c * x
    return FormalSum.from_accumulator(acc, a.ring, coch_key)


def coch_basis(q: QuotientData, degree: int) -> list[CoHochschildElement]:
    """All coHochschild generators of the given degree, canonically ordered."""
    classes = [s for k, ss in sorted(q.basis.items()) for s in ss]
    bead_classes = [s for s in classes if s != BASEPOINT and len(s) >= 3]
    out = []

    def words(budget, prefix):
        yield tuple(prefix)
        for b in bead_classes:
            if len(b) - 2 <= budget:
                prefix.append(b)
                yield from words(budget - (len(b) - 2), prefix)
                prefix.pop()

    for m in classes:
        rest = degree - _cls_dim(m)
        if rest < 0:
            continue
        for w in words(rest, []):
            e = CoHochschildElement(w, m)
            if e.degree == degree:
                out.append(e)
    out.sort(key=coch_key)
    return out


def coch_homology(q: QuotientData, degree: int, ring: Ring = ZZ) -> tuple[int, list[int]]:
    def mat(n):
        dom = coch_basis(q, n) if n >= 0 else []
        cod = coch_basis(q, n - 1) if n >= 1 else []
        index = {b: i for i, b in enumerate(cod)}
        ent = {}
        for j, b in enumerate(dom):
            for m, c in coch_D_raw(b, q).items():
                ent[(index[m], j)] = c
        return SparseIntMatrix(len(cod), len(dom), ent)
    return homology_step(mat(degree), mat(degree + 1), ring)


def format_coch(a: FormalSum) -> str:
    return "\n".join(f"{format_coefficient(c)}·{e}" for e, c in a.items())


# ---------------------------------------------------------------------------
# simplicial homology


def simplicial_homology(X: Complex, ring: Ring = ZZ) -> list[tuple[int, list[int]]]:
    """(betti, torsion) of C(X) in every degree 0..dim X."""
    def mat(n):
        dom = X.of_dim(n) if n >= 0 else []
        cod = X.of_dim(n - 1) if n >= 1 else []
        index = {b: i for i, b in enumerate(cod)}
        ent = {}
        for j, s in enumerate(dom):
            for f, c in boundary(s).items():
                ent[(index[f], j)] = c
        return SparseIntMatrix(len(cod), len(dom), ent)
    return [homology_step(mat(n), mat(n + 1), ring) for n in range(X.dim + 1)]


def simplicial_cycles(X: Complex, n: int) -> list[FormalSum]:
    """An integer basis of the n-cycles of C(X), each primitive, canonically signed."""
    from math import gcd
    from sympy import Matrix, lcm
    dom = X.of_dim(n)
    if not dom:
        return []
    cod = X.of_dim(n - 1) if n >= 1 else []
    index = {b: i for i, b in enumerate(cod)}
    M = Matrix.zeros(len(cod), len(dom)) if cod else Matrix.zeros(1, len(dom))
    for j, s in enumerate(dom):
        if n >= 1:
            for f, c in boundary(s).items():
                M[index[f], j] = c
    out = []
    for v in M.nullspace():
        den = lcm([x.q for x in v])
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        ints = [x // g for x in ints]
        first = next(x for x in ints if x)
        if first < 0:
            ints = [-x for x in ints]
        out.append(FormalSum({s: x for s, x in zip(dom, ints) if x}, ZZ, key=_simplex_sort_key))
    return out


def _simplex_sort_key(s):
    return (len(s), s)
