import numpy as np
import pytest

from src.homology.complexes import ChainComplex
from src.modules.module import direct_sum
from src.utils.config import AnalysisConfig
from src.utils.errors import ValidationError
from src.validation.suites import SUITES, run_suites


def unsigned_cone(phi):
    """Cone with d = [[d_X, 0], [f, d_Y]]; d*d = 2 f d_X fails to vanish when p is odd."""
    X, Y = phi.source, phi.target
    p = X.algebra.field.p
    lo, hi = min(X.lo - 1, Y.lo), max(X.hi - 1, Y.hi)
    modules = [direct_sum([X.term(n + 1), Y.term(n)])[0] for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo, hi):
        dx, dy, fn = X.d(n + 1), Y.d(n), phi.component(n + 1)
        top = np.hstack([dx, np.zeros((dx.shape[0], dy.shape[1]), dtype=np.int64)])
        diffs.append(np.vstack([top, np.hstack([fn, dy])]) % p)
    return ChainComplex(X.algebra, lo, modules, diffs)


@pytest.fixture
def config():
    return AnalysisConfig(oracle_samples=4)


def test_core_suites_pass(config):
    """Test the suites that exercise the lower layers."""
    results = run_suites(config, names=["field", "algebra", "module", "resolution", "cone", "schur"])
    assert [r.name for r in results] == ["field", "algebra", "module", "resolution", "cone", "schur"]
    for result in results:
        assert result.passed, result.failures


def test_unknown_suite(config):
    """Test that an unknown suite name is refused."""
    with pytest.raises(ValidationError):
        run_suites(config, names=["field", "nope"])


def test_unsigned_cone_is_caught(config):
    """Test that the cone suite rejects a cone without the sign on d_X."""
    result = run_suites(config, names=["cone"], cone_fn=unsigned_cone)[0]
    assert not result.passed
    assert any("not a complex" in failure for failure in result.failures)
    assert result.to_dict()["verdict"] == "fails"


@pytest.mark.slow
def test_all_suites_pass(config):
    """Test the full self-test run."""
    results = run_suites(config)
    assert [r.name for r in results] == list(SUITES)
    assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]


def test_core_suites_in_characteristic_two():
    """Test that the shipped algebras keep their dimensions and resolutions over F_2."""
    results = run_suites(AnalysisConfig(p=2), names=["field", "algebra", "resolution"])
    assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]
