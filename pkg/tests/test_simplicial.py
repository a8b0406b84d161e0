import json
from collections import defaultdict

import pytest

from loopchains.simplicial import (BASEPOINT, ComplexError, aw_coproduct, boundary, boundary_of_simplex,
                                   build_complex, load_complex, quotient_chains, reduced_aw,
                                   reduced_boundary, standard_simplex, collapse_subcomplex)
from loopchains.homology import simplicial_homology


def _apply(f, a: dict) -> dict:
    out = defaultdict(int)
    for s, c in a.items():
        for t, x in f(s).items():
            out[t] += c * x
    return {k: v for k, v in out.items() if v}


def test_build_complex_counts():
    assert len(build_complex([[0, 1, 2]])) == 7
    assert len(build_complex([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])) == 14
    assert len(build_complex([[0]])) == 1
    with pytest.raises(ComplexError):
        build_complex([[0, 0, 1]])


def test_boundary_examples():
    assert boundary((0, 1)) == {(1,): 1, (0,): -1}
    assert boundary((0, 1, 2)) == {(1, 2): 1, (0, 2): -1, (0, 1): 1}
    assert boundary((0,)) == {}
    assert _apply(boundary, boundary((0, 1, 2, 3))) == {}


def test_reduced_boundary_examples():
    assert reduced_boundary((0, 1, 2)) == {(0, 2): -1}
    assert reduced_boundary((0, 1)) == {}
    assert reduced_boundary((0, 1, 2, 3)) == {(0, 2, 3): -1, (0, 1, 3): 1}


def test_aw_examples():
    assert aw_coproduct((0,)) == {((0,), (0,)): 1}
    assert aw_coproduct((0, 1, 2)) == {((0,), (0, 1, 2)): 1, ((0, 1), (1, 2)): 1, ((0, 1, 2), (2,)): 1}
    assert reduced_aw((0, 1)) == {}
    assert reduced_aw((0, 1, 2)) == {((0, 1), (1, 2)): 1}
    assert reduced_aw((0, 1, 2, 3)) == {((0, 1), (1, 2, 3)): 1, ((0, 1, 2), (2, 3)): 1}


@pytest.mark.parametrize("k", range(1, 7))
def test_boundaries_square_to_zero(k):
    X = standard_simplex(k)
    for s in X.simplices:
        assert _apply(boundary, boundary(s)) == {}
        assert _apply(reduced_boundary, reduced_boundary(s)) == {}


@pytest.mark.parametrize("k", range(2, 7))
def test_reduced_coproduct_is_coderivation(k):
    s = tuple(range(k + 1))
    lhs = defaultdict(int)
    for (a, b), c in reduced_aw(s).items():
        for a2, x in reduced_boundary(a).items():
            lhs[(a2, b)] += c * x
        sign = -1 if (len(a) - 1) % 2 else 1
        for b2, x in reduced_boundary(b).items():
            lhs[(a, b2)] += sign * c * x
    rhs = defaultdict(int)
    for t, c in reduced_boundary(s).items():
        for pair, x in reduced_aw(t).items():
            rhs[pair] += c * x
    assert {p: v for p, v in lhs.items() if v} == {p: v for p, v in rhs.items() if v}


@pytest.mark.parametrize("k", range(0, 7))
def test_aw_coassociative(k):
    s = tuple(range(k + 1))
    left, right = defaultdict(int), defaultdict(int)
    for (a, b), c in aw_coproduct(s).items():
        for (a1, a2), x in aw_coproduct(a).items():
            left[(a1, a2, b)] += c * x
        for (b1, b2), x in aw_coproduct(b).items():
            right[(a, b1, b2)] += c * x
    assert dict(left) == dict(right)


def test_quotient_two_sphere():
    X = boundary_of_simplex(3)
    A = collapse_subcomplex(X, [[0, 1, 3], [0, 2, 3], [1, 2, 3]])
    q = quotient_chains(X, A, require_reduced=True)
    assert q.basis == {0: [BASEPOINT], 2: [(0, 1, 2)]}
    assert q.coproduct((0, 1, 2)) == {(BASEPOINT, (0, 1, 2)): 1, ((0, 1, 2), BASEPOINT): 1}
    assert q.boundary((0, 1, 2)) == {}
    full = quotient_chains(X, X.simplices)
    assert full.basis == {0: [BASEPOINT]}


def test_quotient_errors():
    X = boundary_of_simplex(3)
    with pytest.raises(ComplexError):
        quotient_chains(X, [(0, 1, 2)])
    with pytest.raises(ComplexError):
        quotient_chains(X, collapse_subcomplex(X, [[0, 1, 3]]), require_reduced=True)


def test_simplicial_homology_of_sphere_and_disk():
    assert simplicial_homology(boundary_of_simplex(3)) == [(1, []), (0, []), (1, [])]
    assert simplicial_homology(standard_simplex(2)) == [(1, []), (0, []), (0, [])]


def test_load_complex(tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"name": "disk", "maximal_simplices": [[2, 0, 1]], "collapse": [[0, 1]]}))
    X, collapse = load_complex(p)
    assert X.name == "disk" and (0, 1, 2) in X and collapse == [[0, 1]]
    p.write_text(json.dumps({"name": "bad"}))
    with pytest.raises(ComplexError):
        load_complex(p)
