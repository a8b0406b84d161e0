"""Exact coefficient rings, formal sums, sparse integer matrices, Smith normal form.

Everything here is exact: coefficients are Python ints, ``Fraction`` or
canonical residues, so nothing ever overflows or rounds.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import Callable, Hashable, Iterable, Iterator, Mapping


class RingMismatch(ValueError):
    pass


class Ring:
    """A coefficient ring: ``ZZ``, ``QQ`` or ``Zmod(m)``."""

    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Ring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class _Integers(Ring):
    name = "Z"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)


class _Rationals(Ring):
    name = "Q"

    def __call__(self, x):
        return Fraction(x)


class Zmod(Ring):
    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.m = m
        self.name = f"Zmod:{m}"

    def __call__(self, x):
        if isinstance(x, Fraction):
            # a/b mod m, b must be a unit
            return x.numerator * pow(x.denominator, -1, self.m) % self.m
        return int(x) % self.m


ZZ = _Integers()
QQ = _Rationals()


def parse_ring(text: str) -> Ring:
    """Parse ``Z``, ``Q`` or ``Zmod:m``."""
    if text == "Z":
        return ZZ
    if text == "Q":
        return QQ
    if text.startswith("Zmod:"):
        return Zmod(int(text[5:]))
    raise ValueError(f"unknown ring {text!r}")


def format_coefficient(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator:+d}/{c.denominator}"
    return f"{int(c):+d}"


class FormalSum:
    """Finite linear combination of hashable basis elements.

    Zero coefficients are never stored. Iteration follows ``key`` (by default
    the string form of the basis element), so output is deterministic.
    """

    __slots__ = ("_terms", "ring", "key")

    def __init__(self, terms: Mapping | Iterable = (), ring: Ring = ZZ,
                 key: Callable[[Hashable], object] = str):
        self.ring = ring
        self.key = key
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            c = acc.get(b, 0) + ring(c)
            acc[b] = ring(c)
        self._terms = {b: c for b, c in acc.items() if c != 0}

    @classmethod
    def _clean(cls, terms: dict, ring: Ring, key) -> "FormalSum":
        # terms already normalized and zero-free
        out = cls.__new__(cls)
        out._terms = terms
        out.ring = ring
        out.key = key
        return out

    @classmethod
    def from_accumulator(cls, acc: Mapping, ring: Ring = ZZ, key=str) -> "FormalSum":
        return cls._clean({b: ring(c) for b, c in acc.items() if ring(c) != 0}, ring, key)

    # -- container protocol
    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.basis())

    def __contains__(self, b):
        return b in self._terms

    def __getitem__(self, b):
        return self._terms.get(b, 0)

    def basis(self) -> list:
        return sorted(self._terms, key=self.key)

    def items(self) -> list:
        return [(b, self._terms[b]) for b in self.basis()]

    def raw(self) -> dict:
        """The underlying dict (unordered); do not mutate."""
        return self._terms

    # -- module structure
    def _check(self, other: "FormalSum"):
        if self.ring != other.ring:
            raise RingMismatch(f"cannot combine sums over {self.ring} and {other.ring}")

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        R = self.ring
        for b, c in other._terms.items():
            v = R(out.get(b, 0) + c)
            if v:
                out[b] = v
            else:
                out.pop(b, None)
        return FormalSum._clean(out, R, self.key)

    def __neg__(self) -> "FormalSum":
        R = self.ring
        return FormalSum._clean({b: R(-c) for b, c in self._terms.items()}, R, self.key)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def scale(self, a) -> "FormalSum":
        R = self.ring
        a = R(a)
        out = {}
        for b, c in self._terms.items():
            v = R(a * c)
            if v:
                out[b] = v
        return FormalSum._clean(out, R, self.key)

    def __rmul__(self, a) -> "FormalSum":
        return self.scale(a)

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def change_ring(self, ring: Ring) -> "FormalSum":
        return FormalSum(self._terms, ring, self.key)

    def map_linear(self, f: Callable[[Hashable], Mapping], key=None) -> "FormalSum":
        """Extend ``f`` (basis element -> mapping of coefficients) linearly."""
        R = self.ring
        acc: dict = defaultdict(int)
        for b, c in self._terms.items():
            for b2, c2 in f(b).items():
                acc[b2] += c * c2
        return FormalSum.from_accumulator(acc, R, key or self.key)

    def __repr__(self):
        return f"FormalSum({self.to_text(str)!r})"

    def to_text(self, fmt: Callable[[Hashable], str] = str, sep: str = " ") -> str:
        if not self._terms:
            return "0"
        return sep.join(f"{format_coefficient(c)}·{fmt(b)}" for b, c in self.items())


def zero(ring: Ring = ZZ, key=str) -> FormalSum:
    return FormalSum._clean({}, ring, key)


def add(a: FormalSum, b: FormalSum) -> FormalSum:
    return a + b


def accumulate(acc: dict, terms: Mapping, coeff=1) -> None:
    """``acc += coeff * terms`` on plain dicts, pruning zeros lazily."""
    for b, c in terms.items():
        acc[b] = acc.get(b, 0) + coeff * c


def prune(acc: Mapping) -> dict:
    return {b: c for b, c in acc.items() if c}


# ---------------------------------------------------------------------------
# sparse integer matrices


class SparseIntMatrix:
    """Fixed-shape integer matrix storing only nonzero entries."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], int] = ()):
        self.nrows = nrows
        self.ncols = ncols
        ent = {}
        for (i, j), v in dict(entries).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError((i, j))
            if v:
                ent[(i, j)] = int(v)
        self.entries = ent

    @classmethod
    def from_dense(cls, rows: list[list[int]]) -> "SparseIntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row = defaultdict(list)
        for (k, j), v in other.entries.items():
            by_row[k].append((j, v))
        acc: dict = defaultdict(int)
        for (i, k), u in self.entries.items():
            for j, v in by_row.get(k, ()):
                acc[(i, j)] += u * v
        return SparseIntMatrix(self.nrows, other.ncols, acc)

    def __eq__(self, other):
        return (isinstance(other, SparseIntMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.entries == other.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def columns(self) -> dict[int, dict[int, int]]:
        cols: dict = defaultdict(dict)
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def rows(self) -> dict[int, dict[int, int]]:
        rows: dict = defaultdict(dict)
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def __repr__(self):
        return f"SparseIntMatrix({self.nrows}x{self.ncols}, nnz={len(self.entries)})"


def matrix_of(images: Mapping | Callable, domain_basis: list, codomain_basis: list) -> SparseIntMatrix:
    """Matrix whose column j holds the coordinates of the image of domain_basis[j].

    ``images`` is either a mapping from domain element to a coefficient mapping
    (or FormalSum) or a callable producing one.
    """
    index = {b: i for i, b in enumerate(codomain_basis)}
    entries = {}
    for j, b in enumerate(domain_basis):
        img = images(b) if callable(images) else images[b]
        terms = img.raw() if isinstance(img, FormalSum) else img
        for t, c in terms.items():
            if not c:
                continue
            if t not in index:
                raise KeyError(f"image of {b} contains {t}, outside the codomain basis")
            entries[(index[t], j)] = int(c)
    return SparseIntMatrix(len(codomain_basis), len(domain_basis), entries)


# ---------------------------------------------------------------------------
# Smith normal form (dense, with transforms)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def smith_normal_form(M: SparseIntMatrix):
    """Return ``(diagonal, U, V)`` with ``U @ M @ V`` diagonal.

    The diagonal lists the nonzero invariant factors d1 | d2 | ... (all
    positive); U and V are unimodular SparseIntMatrix objects.
    """
    m, n = M.nrows, M.ncols
    A = M.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for r in A:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                best = min(((abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]), default=None)
                best2 = min(((abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]), default=None)
                cand = min(x for x in (best, best2) if x is not None)
                swap_rows(t, cand[1])
                swap_cols(t, cand[2])
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    diag = [A[i][i] for i in range(t)]
    return diag, SparseIntMatrix.from_dense(U) if m else SparseIntMatrix(0, 0), \
        SparseIntMatrix.from_dense(V) if n else SparseIntMatrix(0, 0)


def invariant_factors(diagonal: Iterable[int]) -> list[int]:
    """Normalize any list of nonzero diagonal entries into a divisibility chain."""
    vals = sorted(abs(d) for d in diagonal if d)
    ones = sum(1 for v in vals if v == 1)
    rest = [v for v in vals if v != 1]
    # pairwise (gcd, lcm) until sorted chain
    changed = True
    while changed:
        changed = False
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                a, b = rest[i], rest[j]
                if b % a:
                    g = gcd(a, b)
                    rest[i], rest[j] = g, a * b // g
                    changed = True
        rest.sort()
    return [1] * (ones + rest.count(1)) + [v for v in rest if v != 1]


# ---------------------------------------------------------------------------
# sparse diagonalization: rank, invariant factors, integer solving


def _sparse_diagonalize(cols: Mapping[int, Mapping[int, int]], rhs: list[dict] | None = None,
                        track_v: bool = False, modulus: int | None = None):
    """Diagonalize a sparse matrix given as column dicts by unimodular operations.

    Returns ``(pivots, rhs, colops)`` where pivots is a list of (row, col, value).
    Row operations are applied to every vector in ``rhs`` (dict row -> value).
    With ``track_v`` the column operations are returned as a list of
    ``(dst, src, q)`` meaning ``col dst += q * col src``; see ``_apply_colops``.
    With ``modulus`` the arithmetic is over Z/p (p prime).
    """
    rows: dict = defaultdict(dict)
    colsets: dict = defaultdict(set)
    for j, col in cols.items():
        for i, v in col.items():
            if modulus:
                v %= modulus
            if v:
                rows[i][j] = v
                colsets[j].add(i)
    rhs = [dict(b) for b in (rhs or [])]
    colops: list | None = [] if track_v else None
    pivots = []
    empties: set = set()

    def row_add(dst, src, q):
        # row dst += q * row src
        rd, rs = rows[dst], rows[src]
        for j, v in rs.items():
            nv = rd.get(j, 0) + q * v
            if modulus:
                nv %= modulus
            if nv:
                if j not in rd:
                    colsets[j].add(dst)
                rd[j] = nv
            elif j in rd:
                del rd[j]
                colsets[j].discard(dst)
        if not rd:
            empties.add(dst)
        for b in rhs:
            if src in b:
                nv = b.get(dst, 0) + q * b[src]
                if modulus:
                    nv %= modulus
                if nv:
                    b[dst] = nv
                else:
                    b.pop(dst, None)

    def col_add(dst, src, q):
        # col dst += q * col src
        for i in list(colsets[src]):
            r = rows[i]
            nv = r.get(dst, 0) + q * r[src]
            if modulus:
                nv %= modulus
            if nv:
                if dst not in r:
                    colsets[dst].add(i)
                r[dst] = nv
            elif dst in r:
                del r[dst]
                colsets[dst].discard(i)
                if not r:
                    empties.add(i)
        if colops is not None:
            colops.append((dst, src, q))

    def remove(r, c):
        for j in rows[r]:
            colsets[j].discard(r)
        del rows[r]
        colsets.pop(c, None)

    def is_unit(v):
        return bool(modulus) or abs(v) == 1

    def exact_choice():
        best = None
        for r, row in rows.items():
            lr = len(row)
            for c, v in row.items():
                a = 1 if modulus else abs(v)
                cost = (a, (lr - 1) * (len(colsets[c]) - 1))
                if best is None or cost < best[0]:
                    best = (cost, r, c)
        return best[1], best[2]

    queue: list = []
    while True:
        for r in empties:
            if r in rows and not rows[r]:
                del rows[r]
        empties.clear()
        if not rows:
            break
        # cheap pivot choice: rows by (stale) length, first unit entry with
        # the sparsest column; fall back to an exact search
        choice = None
        while choice is None:
            if not queue:
                queue = sorted(rows, key=lambda i: len(rows[i]), reverse=True)
                fresh = True
            else:
                fresh = False
            while queue:
                r = queue.pop()
                row = rows.get(r)
                if not row:
                    continue
                units = [c for c, v in row.items() if is_unit(v)]
                if units:
                    choice = (r, min(units, key=lambda c: len(colsets[c])))
                    break
            if choice is None and fresh:
                choice = exact_choice()
        r, c = choice
        while True:
            p = rows[r][c]
            if is_unit(p):
                inv = pow(p, -1, modulus) if modulus else p
                for i in list(colsets[c]):
                    if i != r:
                        a = rows[i][c]
                        row_add(i, r, -(a * inv) % modulus if modulus else -a * inv)
                if colops is not None:
                    for j, a in rows[r].items():
                        if j != c:
                            colops.append((j, c, -(a * inv) % modulus if modulus else -a * inv))
                break
            moved = False
            for i in list(colsets[c]):
                if i == r:
                    continue
                row_add(i, r, -(rows[i][c] // p))
                if c in rows[i]:
                    moved = True
            for j in list(rows[r]):
                if j == c:
                    continue
                col_add(j, c, -(rows[r][j] // p))
                if j in rows[r]:
                    moved = True
            if not moved:
                break
            # a remainder smaller than |p| appeared: use it as the new pivot
            cands = [(abs(rows[i][c]), i, c) for i in colsets[c] if i != r]
            cands += [(abs(v), r, j) for j, v in rows[r].items() if j != c]
            _, r, c = min(cands)
        pivots.append((r, c, rows[r][c]))
        remove(r, c)
    return pivots, rhs, colops


def _apply_colops(colops: list, y: dict) -> dict:
    """x = V y where V is the product of the recorded column operations."""
    x = defaultdict(int, y)
    for dst, src, q in reversed(colops):
        if x.get(dst):
            x[src] += q * x[dst]
    return {k: v for k, v in x.items() if v}


def rank(M: SparseIntMatrix, modulus: int | None = None) -> int:
    pivots, _, _ = _sparse_diagonalize(M.columns(), modulus=modulus)
    return len(pivots)


def elementary_divisors(M: SparseIntMatrix) -> list[int]:
    """Invariant factors of M (the nonzero SNF diagonal) via sparse elimination."""
    pivots, _, _ = _sparse_diagonalize(M.columns())
    return invariant_factors(v for _, _, v in pivots)


class NotSolvable(ValueError):
    pass


def solve_integer(M: SparseIntMatrix, b: Mapping[int, int]) -> dict[int, int]:
    """An integer solution x of ``M x = b`` (sparse dicts), or NotSolvable."""
    pivots, (bb,), colops = _sparse_diagonalize(M.columns(), rhs=[dict(b)], track_v=True)
    pivot_rows = {r for r, _, _ in pivots}
    leftover = [i for i, v in bb.items() if v and i not in pivot_rows]
    if leftover:
        raise NotSolvable(f"right-hand side has a component outside the image (row {leftover[0]})")
    y: dict = {}
    for r, c, p in pivots:
        val = bb.get(r, 0)
        if val % p:
            raise NotSolvable(f"no integer solution: {val} not divisible by {p}")
        if val:
            y[c] = val // p
    return _apply_colops(colops, y)


class CompositionError(ValueError):
    """Raised when d_n ∘ d_{n+1} ≠ 0; names the first failing generator."""


def homology_step(d_n: SparseIntMatrix, d_next: SparseIntMatrix, ring: Ring = ZZ):
    """Betti number and torsion of ker(d_n) / im(d_next).

    d_n maps C_n -> C_{n-1}; d_next maps C_{n+1} -> C_n. Over QQ and Zmod(p)
    the torsion list is empty.
    """
    if d_n.ncols != d_next.nrows:
        raise ValueError("d_n and d_next are not composable")
    comp = d_n @ d_next
    if not comp.is_zero():
        (i, j), v = min(comp.entries.items())
        raise CompositionError(f"d_n ∘ d_next ≠ 0: generator {j} maps to {v}·(basis element {i})")
    n = d_n.ncols
    if isinstance(ring, Zmod):
        p = ring.m
        if any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError("modular homology needs a prime modulus")
        return n - rank(d_n, p) - rank(d_next, p), []
    r_n = rank(d_n)
    divs = elementary_divisors(d_next)
    betti = n - r_n - len(divs)
    if ring == QQ:
        return betti, []
    return betti, [d for d in divs if d > 1]
