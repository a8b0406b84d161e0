import pytest

from loopchains.hopf import antipode, counit, nabla0, nabla1
from loopchains.pathcat import Word, identity, word
from loopchains.simplicial import boundary_of_simplex, standard_simplex
from loopchains.verify import VerifyConfig, run_suite


def test_nabla0_examples():
    e = word((0, 1))
    assert nabla0(e) == {(e, e): 1}
    b = word((0, 1, 2))
    # the interior cut keeps vertex 1 in the left factor only; no sign arises
    assert nabla0(b) == {(b, word((0, 2))): 1, (word((0, 1), (1, 2)), b): 1}


def test_nabla0_inverse_edge_is_grouplike():
    e = word((1, 0))
    assert nabla0(e) == {(e, e): 1}


def test_counit_examples():
    assert counit(word((0, 1), (1, 2))) == 1
    assert counit(word((0, 1, 2))) == 0
    assert counit(identity(0)) == 1


def test_antipode_examples():
    assert antipode(word((0, 1))) == {word((1, 0)): 1}
    # the closing term of the inductive formula, with the overall sign this
    # implementation derives from the antipode equation itself
    assert antipode(word((0, 1, 2))) == {word((2, 1), (1, 0), (0, 1, 2), (2, 0)): -1}


def test_nabla1_examples():
    assert nabla1(word((0, 1))) == {}
    b = word((0, 1, 2))
    assert nabla1(b) == {(b, b): 1}
    assert nabla1(word((1, 0))) == {}


def test_nabla1_raises_degree():
    b = word((0, 1, 2, 3, 4))
    for (l, r), _ in nabla1(b).items():
        assert l.degree + r.degree == b.degree + 1


@pytest.mark.parametrize("suite", ["hopf", "antipode"])
@pytest.mark.parametrize("X", [standard_simplex(4), boundary_of_simplex(3)], ids=["simplex4", "sphere"])
def test_structure_suites(suite, X):
    result = run_suite(suite, X, VerifyConfig(max_dim=4, pairs=80, seed=7))
    assert result.passed, result.to_text()


def test_suite_reports_a_broken_identity(monkeypatch):
    import loopchains.verify as verify
    real = verify.nabla1

    def broken(w):
        return {k: 2 * v for k, v in real(w).items()}
    monkeypatch.setattr(verify, "nabla1", broken)
    result = run_suite("hopf", standard_simplex(3), VerifyConfig(max_dim=3))
    assert not result.passed
    assert "∇₁" in result.generator and result.lhs != result.rhs
