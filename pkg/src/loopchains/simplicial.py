"""Ordered simplicial complexes and their chain coalgebra.

Simplices are strictly increasing tuples of integer vertices. Chains are
FormalSums over simplices; tensor chains are FormalSums over endpoint-matched
pairs ``(front, back)`` with ``front[-1] == back[0]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

from .exactalg import FormalSum, ZZ

Simplex = tuple[int, ...]


def simplex_key(s: Simplex):
    return (len(s), s)


def fmt_simplex(s: Simplex) -> str:
    return "[" + ",".join(map(str, s)) + "]"


def chain(terms, ring=ZZ) -> FormalSum:
    return FormalSum(terms, ring, key=simplex_key)


def _tensor_key(pair):
    return (simplex_key(pair[0]), simplex_key(pair[1]))


def tensor_chain(terms, ring=ZZ) -> FormalSum:
    return FormalSum(terms, ring, key=_tensor_key)


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Complex:
    """A finite ordered simplicial complex, stored face-closed."""

    simplices: frozenset
    name: str = ""
    maximal: tuple = ()

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    @cached_property
    def by_dim(self) -> dict[int, list[Simplex]]:
        out: dict[int, list[Simplex]] = {}
        for s in sorted(self.simplices, key=simplex_key):
            out.setdefault(len(s) - 1, []).append(s)
        return out

    @property
    def dim(self) -> int:
        return max(self.by_dim, default=-1)

    def of_dim(self, k: int) -> list[Simplex]:
        return self.by_dim.get(k, [])

    @cached_property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.of_dim(0)]

    @cached_property
    def starting_at(self) -> dict[int, list[Simplex]]:
        """Simplices of dim >= 1 grouped by first vertex."""
        out: dict[int, list[Simplex]] = {v: [] for v in self.vertices}
        for s in sorted(self.simplices, key=simplex_key):
            if len(s) > 1:
                out[s[0]].append(s)
        return out

    @cached_property
    def edges_into(self) -> dict[int, list[Simplex]]:
        """Edges [a, v] grouped by last vertex v (their inverses start at v)."""
        out: dict[int, list[Simplex]] = {v: [] for v in self.vertices}
        for e in self.of_dim(1):
            out[e[1]].append(e)
        return out

    def __len__(self):
        return len(self.simplices)


def build_complex(maximals, name: str = "") -> Complex:
    """Face closure of a list of maximal simplices (vertex lists)."""
    faces = set()
    tops = []
    for m in maximals:
        m = list(m)
        if not m:
            raise ComplexError("empty simplex")
        if len(set(m)) != len(m):
            raise ComplexError(f"duplicate vertices in {m}")
        s = tuple(sorted(int(v) for v in m))
        tops.append(s)
        for r in range(1, len(s) + 1):
            faces.update(combinations(s, r))
    return Complex(frozenset(faces), name, tuple(tops))


def standard_simplex(k: int) -> Complex:
    return build_complex([list(range(k + 1))], name=f"Delta^{k}")


def boundary_of_simplex(k: int) -> Complex:
    """The boundary sphere of the k-simplex on vertices 0..k."""
    full = tuple(range(k + 1))
    return build_complex([list(f) for f in combinations(full, k)], name=f"boundary Delta^{k}")


def faces(s: Simplex) -> list[Simplex]:
    return [s[:j] + s[j + 1:] for j in range(len(s))]


def boundary(s: Simplex) -> dict:
    """Alternating sum of codimension-one faces; zero for vertices."""
    if len(s) == 1:
        return {}
    return {f: (-1) ** j for j, f in enumerate(faces(s))}


def reduced_boundary(s: Simplex) -> dict:
    """Boundary with the first and last faces dropped."""
    k = len(s) - 1
    return {s[:j] + s[j + 1:]: (-1) ** j for j in range(1, k)}


def aw_coproduct(s: Simplex) -> dict:
    return {(s[:j + 1], s[j:]): 1 for j in range(len(s))}


def reduced_aw(s: Simplex) -> dict:
    """Interior Alexander-Whitney cuts; zero on edges and inverse edges."""
    if len(s) == 2:
        return {}
    return {(s[:j + 1], s[j:]): 1 for j in range(1, len(s) - 1)}


def linear(f, c: FormalSum, tensor=False) -> FormalSum:
    return c.map_linear(f, key=_tensor_key if tensor else simplex_key)


def chain_boundary(c: FormalSum) -> FormalSum:
    return linear(boundary, c)


def relabel(s: tuple, vmap) -> tuple:
    return tuple(vmap[v] for v in s)


# ---------------------------------------------------------------------------
# quotients X/A

BASEPOINT: Simplex = ("*",)


@dataclass(frozen=True)
class QuotientData:
    """Chains of the semi-simplicial quotient X/A.

    A class is either a simplex of X outside A, or BASEPOINT for the collapsed
    subcomplex. Simplices of A of positive dimension project to zero
    (they become degenerate).
    """

    source: Complex
    collapsed: frozenset
    basis: dict = field(default_factory=dict)

    def project(self, s: Simplex):
        """The class of s: a simplex, BASEPOINT, or None for zero."""
        if s in self.collapsed:
            return BASEPOINT if len(s) == 1 else None
        return s

    def dim(self, cls) -> int:
        return 0 if cls == BASEPOINT else len(cls) - 1

    def boundary(self, cls) -> dict:
        if cls == BASEPOINT:
            return {}
        out: dict = {}
        for f, c in boundary(cls).items():
            p = self.project(f)
            if p is not None:
                out[p] = out.get(p, 0) + c
        return {b: c for b, c in out.items() if c}

    def coproduct(self, cls) -> dict:
        if cls == BASEPOINT:
            return {(BASEPOINT, BASEPOINT): 1}
        out: dict = {}
        for (a, b), c in aw_coproduct(cls).items():
            pa, pb = self.project(a), self.project(b)
            if pa is not None and pb is not None:
                out[(pa, pb)] = out.get((pa, pb), 0) + c
        return out

    @property
    def is_reduced(self) -> bool:
        """True when the quotient has one vertex and no edges."""
        X = self.source
        return all(v in self.collapsed for v in X.of_dim(0)) and \
            all(e in self.collapsed for e in X.of_dim(1))


def quotient_chains(X: Complex, A, require_reduced: bool = False) -> QuotientData:
    """Collapse the subcomplex A (a Complex or an iterable of simplices)."""
    simplices = A.simplices if isinstance(A, Complex) else frozenset(tuple(s) for s in A)
    for s in simplices:
        if s not in X:
            raise ComplexError(f"{fmt_simplex(s)} is not a simplex of {X.name or 'X'}")
        for f in faces(s):
            if len(s) > 1 and f not in simplices:
                raise ComplexError(f"collapse set is not face-closed: missing {fmt_simplex(f)}")
    basis: dict[int, list] = {0: [BASEPOINT]} if simplices else {}
    for k, ss in X.by_dim.items():
        for s in ss:
            if s not in simplices:
                basis.setdefault(k, []).append(s)
    q = QuotientData(X, frozenset(simplices), basis)
    if require_reduced and not q.is_reduced:
        missing = next(s for s in X.of_dim(0) + X.of_dim(1) if s not in simplices)
        raise ComplexError(f"collapse set must contain every vertex and edge; missing {fmt_simplex(missing)}")
    return q


# ---------------------------------------------------------------------------
# file input


def load_complex(path) -> tuple[Complex, list | None]:
    """Read ``{"name", "maximal_simplices", "collapse"?}``; returns (X, collapse maximals)."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or "maximal_simplices" not in data:
        raise ComplexError("input must be an object with 'maximal_simplices'")
    X = build_complex(data["maximal_simplices"], name=str(data.get("name", "")))
    collapse = data.get("collapse")
    return X, collapse


def collapse_subcomplex(X: Complex, maximals) -> frozenset:
    A = build_complex(maximals)
    for s in A.simplices:
        if s not in X:
            raise ComplexError(f"collapse simplex {fmt_simplex(s)} is not in the complex")
    return A.simplices
