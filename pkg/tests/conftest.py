import importlib.util
import shutil
import tempfile
from pathlib import Path

import pytest

from src.linalg.field import PrimeField
from src.triangular.trimat import split_trimat
from src.validation.corpus import a2, dual_numbers, cmfree_corner, two_corner

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def test_data_dir():
    """Create a temporary directory for test data."""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir)


@pytest.fixture(scope="session")
def examples_dir():
    return ROOT / "data" / "examples"


@pytest.fixture(scope="session")
def field():
    return PrimeField(101)


@pytest.fixture(scope="session")
def alg_a2(field):
    return a2(field)


@pytest.fixture(scope="session")
def alg_dual(field):
    return dual_numbers(field)


@pytest.fixture(scope="session")
def alg_cmfree(field):
    return cmfree_corner(field)


@pytest.fixture(scope="session")
def alg_hered(field):
    return two_corner(field, self_injective_corner=False)


@pytest.fixture(scope="session")
def alg_selfinj(field):
    return two_corner(field, self_injective_corner=True)


@pytest.fixture(scope="session")
def split_cmfree(alg_cmfree):
    return split_trimat(alg_cmfree, ["2", "3", "4"])


@pytest.fixture(scope="session")
def split_hered(alg_hered):
    return split_trimat(alg_hered, ["1", "2"])


@pytest.fixture(scope="session")
def split_selfinj(alg_selfinj):
    return split_trimat(alg_selfinj, ["1", "2"])


@pytest.fixture(scope="session")
def cli():
    """The analyze_algebra script loaded as a module."""
    spec = importlib.util.spec_from_file_location("analyze_algebra", ROOT / "scripts" / "analyze_algebra.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module
