import random

import pytest

from loopchains.necklace import (AdElement, D_ad_sum, D_raw, D_sum, Necklace, NecklaceError, necklace,
                                 necklace_D, weight_basis)
from loopchains.pathcat import Word, identity, word
from loopchains.simplicial import boundary_of_simplex, build_complex, standard_simplex
from loopchains.verify import VerifyConfig, run_suite


def test_necklace_validation():
    n = necklace([(1, 0)], (0, 1))
    assert str(n) == "([1,0])[0,1]"
    assert n.degree == 1 and n.weight == 2
    with pytest.raises(NecklaceError):
        necklace([(0, 1)], (0, 1))
    with pytest.raises(NecklaceError):
        necklace([(1, 0), (0, 1)], (1,))


def test_marked_bead_never_cancels_with_word():
    n = necklace([(1, 0)], (0, 1))
    assert n.word.beads == ((1, 0),)


def test_weight_basis_examples():
    circle = boundary_of_simplex(2)
    w0 = weight_basis(circle, 0, 0)
    assert [str(n) for n in w0] == ["(id_0)[0]", "(id_1)[1]", "(id_2)[2]"]
    d1 = weight_basis(standard_simplex(1), 1, 2)
    assert any(str(n) == "([1,0])[0,1]" for n in d1)
    for n in weight_basis(circle, 0, 3):
        assert n.degree == 0 and n.weight <= 3


def test_weight_basis_is_duplicate_free_and_exhaustive():
    X = standard_simplex(2)
    basis = weight_basis(X, 1, 4)
    assert len(set(basis)) == len(basis)
    # every necklace reachable from the basis by D lies in the lower basis
    lower = set(weight_basis(X, 0, 4))
    for b in basis:
        for n in D_raw(b):
            assert n in lower


def test_D_example_on_edge_necklace():
    n = necklace([(1, 0)], (0, 1))
    assert {str(k): v for k, v in D_raw(n).items()} == {"(id_1)[1]": 1, "(id_0)[0]": -1}


@pytest.mark.parametrize("X", [boundary_of_simplex(3), standard_simplex(4)], ids=["sphere", "simplex4"])
def test_D_squared_and_weight_monotone(X):
    for n in range(1, 7):
        for b in weight_basis(X, n, 6 if X.dim == 2 else 5):
            out = D_raw(b)
            assert D_sum(out) == {}, str(b)
            assert all(m.weight <= b.weight and m.degree == b.degree - 1 for m in out)


def test_ad_complexes_square_to_zero():
    result = run_suite("D2", standard_simplex(4), VerifyConfig(max_dim=4, weight=3))
    assert result.passed, result.to_text()


def test_ad_element_examples():
    e = AdElement((0, 1, 2), identity(2))
    assert D_ad_sum(D_ad_sum({e: 1})) == {}
    assert D_ad_sum(D_ad_sum({e._replace(op=True): 1})) == {}


def test_formal_sum_wrapper_is_canonical():
    n = necklace([(2, 0), (0, 1, 2), (2, 1)], (1, 2))
    s = necklace_D(n)
    assert s.to_text() == necklace_D(n).to_text()
    assert str(n) == "([2,0]|[0,1,2]|[2,1])[1,2]"


def test_weight_basis_inverse_caps():
    X = standard_simplex(2)
    full = weight_basis(X, 1, 5)
    none = weight_basis(X, 1, 5, {})
    assert none == [n for n in full if not any(b[0] > b[1] for b in n.word.beads)]
    capped = weight_basis(X, 1, 5, {(1, 0): 1, (2, 1): 1, (2, 0): 1})
    assert capped == [n for n in full
                      if all(n.word.beads.count(e) <= 1 for e in [(1, 0), (2, 1), (2, 0)])]
