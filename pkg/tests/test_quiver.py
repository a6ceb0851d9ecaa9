import numpy as np
import pytest

from src.algebra.fdalgebra import corner
from src.algebra.quiver import Quiver, build_algebra
from src.utils.errors import CapExceededError, NotAdmissibleError, ValidationError
from src.validation.corpus import EXPECTED_DIMS


def test_corpus_dimensions(alg_a2, alg_dual, alg_cmfree, alg_hered, alg_selfinj):
    """Test the dimensions of the bound quiver algebras."""
    dims = {R.name: R.dim for R in (alg_a2, alg_dual, alg_cmfree, alg_hered, alg_selfinj)}
    assert dims == EXPECTED_DIMS


def test_path_basis(alg_cmfree):
    """Test that the standard basis of cmfree_corner avoids the relations."""
    labels = set(alg_cmfree.labels)
    assert {"e1", "alpha", "beta*alpha", "beta", "gamma", "delta"} <= labels
    assert "gamma*beta" not in labels
    assert "delta*beta" not in labels


def test_multiplication_composes_paths(alg_cmfree):
    """Test that beta times alpha is the path beta*alpha."""
    i, j, k = (alg_cmfree.labels.index(x) for x in ("beta", "alpha", "beta*alpha"))
    product = alg_cmfree.multiply(alg_cmfree.basis_vector(i), alg_cmfree.basis_vector(j))
    assert np.array_equal(product, alg_cmfree.basis_vector(k))
    assert not alg_cmfree.multiply(alg_cmfree.basis_vector(j), alg_cmfree.basis_vector(i)).any()


def test_commutativity_relation(alg_hered):
    """Test that alpha*gamma and delta*beta coincide."""
    R = alg_hered
    ag = R.multiply(R.basis_vector(R.labels.index("alpha")), R.basis_vector(R.labels.index("gamma")))
    db = R.multiply(R.basis_vector(R.labels.index("delta")), R.basis_vector(R.labels.index("beta")))
    assert ag.any()
    assert np.array_equal(ag, db)


def test_short_relation_rejected(field):
    """Test that relations of length one are not admissible."""
    q = Quiver(["1", "2"])
    q.add_arrow("a", "1", "2")
    with pytest.raises(NotAdmissibleError):
        q.relation([(1, ["a"])], field.p)


def test_non_composable_path(field):
    """Test that arrows that do not compose are refused."""
    q = Quiver(["1", "2", "3"])
    q.add_arrow("a", "1", "2")
    q.add_arrow("b", "2", "3")
    with pytest.raises(ValidationError):
        q.path(["a", "b"])


def test_loop_without_relation_exceeds_cap(field):
    """Test that a free loop is reported as infinite dimensional."""
    q = Quiver(["1"])
    q.add_arrow("x", "1", "1")
    with pytest.raises(CapExceededError):
        build_algebra(q, [], 6, field)


def test_duplicate_names(field):
    """Test duplicate vertex and arrow names."""
    with pytest.raises(ValidationError):
        Quiver(["1", "1"])
    q = Quiver(["1", "2"])
    q.add_arrow("a", "1", "2")
    with pytest.raises(ValidationError):
        q.add_arrow("a", "2", "1")


def test_radical_and_connectivity(alg_cmfree, alg_selfinj):
    """Test radical layers, radical square zero and connectivity."""
    C = corner(alg_cmfree, ["2", "3", "4"])
    assert C.dim == 6
    assert C.radical_square_zero()
    assert C.is_connected()
    assert not alg_cmfree.radical_square_zero()
    layers = alg_selfinj.radical_layers()
    assert layers[0] == alg_selfinj.dim and layers[1] == alg_selfinj.dim - 5 and layers[-1] == 0


def test_opposite_is_involution(alg_hered):
    """Test that taking the opposite twice returns the algebra."""
    assert alg_hered.opposite().opposite() is alg_hered
    alg_hered.opposite().validate()
