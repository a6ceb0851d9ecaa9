import numpy as np
import pytest

from src.homology.complexes import (ChainComplex, ChainMap, cone, homology, homology_degrees, identity_map, in_fgp,
                                    length, resolve_complex, stalk, truncate_geq)
from src.modules.functors import hom_space, projective, simple, simples
from src.utils.errors import InvariantViolation, ValidationError


@pytest.fixture
def two_term(alg_a2):
    """P(2) -> P(1) in degrees 0 and 1."""
    P1, P2 = projective(alg_a2, "1"), projective(alg_a2, "2")
    h = hom_space(P2, P1)[0]
    return ChainComplex(alg_a2, 0, [P2, P1], [h.matrix])


def test_homology_of_two_term(two_term):
    """Test that the complex P(2) -> P(1) resolves S(1) in degree 1."""
    two_term.validate()
    assert homology(two_term, 0).dim == 0
    assert homology(two_term, 1).dim == 1
    assert homology_degrees(two_term) == [1]
    assert length(two_term) == 1


def test_cone_of_identity_is_acyclic(two_term):
    """Test that the cone of the identity has no homology."""
    C = cone(identity_map(two_term))
    C.validate()
    assert homology_degrees(C) == []


def test_cone_of_stalk_map(alg_a2):
    """Test that the cone of a stalk map has ker and coker as homology."""
    S1 = simple(alg_a2, "1")
    P1 = projective(alg_a2, "1")
    h = hom_space(P1, S1)[0]
    C = cone(ChainMap(stalk(P1), stalk(S1), {0: h.matrix}))
    assert homology(C, -1).dim == 1
    assert homology(C, 0).dim == 0


def test_shift_changes_sign(two_term):
    """Test that shifting moves degrees down and negates the differential."""
    shifted = two_term.shift(1)
    assert shifted.lo == -1
    assert np.array_equal((shifted.d(-1) + two_term.d(0)) % 101, np.zeros_like(two_term.d(0)))


def test_truncation(two_term):
    """Test brutal truncation."""
    assert truncate_geq(two_term, 1).lo == 1
    assert truncate_geq(two_term, 1).hi == 1
    assert truncate_geq(two_term, 5).term(5).dim == 0
    assert truncate_geq(two_term, -3) is two_term


def test_chain_map_validation(two_term):
    """Test that a non-commuting chain map is refused."""
    bad = ChainMap(two_term, two_term, {0: np.eye(1, dtype=np.int64)})
    with pytest.raises(InvariantViolation):
        bad.validate()


def test_differential_count(alg_a2):
    """Test that a complex needs one differential between consecutive terms."""
    with pytest.raises(ValidationError):
        ChainComplex(alg_a2, 0, [projective(alg_a2, "1"), projective(alg_a2, "2")], [])


def test_projective_replacement(alg_cmfree):
    """Test that resolving a stalk complex keeps its homology."""
    S1 = simple(alg_cmfree, "1")
    P, phi = resolve_complex(stalk(S1), depth=2)
    phi.validate()
    assert homology(P, 0).dim == 1
    assert homology(P, -1).dim == 0


def test_fgp_of_stalks(alg_dual, alg_cmfree):
    """Test fgp membership of stalk complexes."""
    assert in_fgp(stalk(simples(alg_dual)[0])).status == "yes"
    verdict = in_fgp(stalk(simple(alg_cmfree, "1")))
    assert verdict.status == "yes"
    assert verdict.degree == -1


def test_fgp_of_acyclic(two_term):
    """Test that the cone of an identity lies in fgp."""
    assert in_fgp(cone(identity_map(two_term))).status == "yes"


def test_fgp_rejects_infinite_gpd(split_selfinj):
    """Test that a stalk of infinite Gpd is not in fgp."""
    B = split_selfinj.B
    assert in_fgp(stalk(simple(B, "3"))).status == "no"


def test_direct_sum_of_complexes(two_term, alg_a2):
    """Test that homology of a sum is the sum of homologies."""
    other = stalk(simple(alg_a2, "2"), degree=0)
    summed = two_term.direct_sum(other)
    summed.validate()
    assert (summed.lo, summed.hi) == (0, 1)
    assert homology(summed, 0).dim == 1
    assert homology(summed, 1).dim == 1


def test_fgp_of_gorenstein_projective_terms(alg_dual):
    """Test that S -> R over the dual numbers, with S Gproj but not projective, lies in fgp."""
    S = simples(alg_dual)[0]
    R = projective(alg_dual, "1")
    h = hom_space(S, R)[0]
    X = ChainComplex(alg_dual, 0, [S, R], [h.matrix])
    X.validate()
    assert homology_degrees(X) == [1]
    verdict = in_fgp(X)
    assert verdict.status == "yes"
    assert verdict.degree == 0
