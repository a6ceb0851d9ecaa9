import pytest

from src.algebra.quiver import Quiver, build_algebra
from src.idempotents.schur import (Idempotent, conjunction, dim_status, quotient_inflation, schur_L, schur_L_unit,
                                   schur_report, schur_S, schur_T, schur_T_counit, tor_condition)
from src.homology.resolution import DimValue, tor
from src.modules.functors import hom_dim, is_isomorphic, projective, simple, simples
from src.utils.errors import ValidationError


def test_corner_and_quotient_dims(alg_cmfree):
    """Test eRe and R/ReR for e = e2 + e3 + e4."""
    e = Idempotent(alg_cmfree, ["2", "3", "4"])
    assert e.corner.dim == 6
    assert quotient_inflation(e).algebra.dim == 1


def test_whole_idempotent_gives_zero_quotient(alg_a2):
    """Test that e = 1 has the zero algebra as quotient."""
    e = Idempotent(alg_a2, ["1", "2"])
    assert quotient_inflation(e).algebra.dim == 0


def test_empty_idempotent(alg_a2):
    """Test that an idempotent needs a vertex."""
    with pytest.raises(ValidationError):
        Idempotent(alg_a2, [])


def test_schur_functor_dimensions(alg_cmfree):
    """Test S(M) = eM on simples and projectives."""
    e = Idempotent(alg_cmfree, ["2", "3", "4"])
    assert schur_S(e, simple(alg_cmfree, "1")).dim == 0
    assert schur_S(e, projective(alg_cmfree, "1")).dim == 2
    assert schur_S(e, simple(alg_cmfree, "3")).dim == 1


def test_adjoints_recover_corner_modules(alg_selfinj):
    """Test that S T G and S L G are isomorphic to G."""
    e = Idempotent(alg_selfinj, ["3", "4", "5"])
    for G in simples(e.corner):
        assert is_isomorphic(schur_S(e, schur_T(e, G)), G).yes
        assert is_isomorphic(schur_S(e, schur_L(e, G)), G).yes
        assert schur_T_counit(e, G).is_isomorphism()
        assert schur_L_unit(e, G).is_isomorphism()


def test_adjunction_hom_dims(alg_cmfree):
    """Test Hom(T G, M) = Hom(G, e M) and Hom(e M, G) = Hom(M, L G)."""
    e = Idempotent(alg_cmfree, ["2", "3", "4"])
    for G in simples(e.corner):
        for M in simples(alg_cmfree):
            assert hom_dim(schur_T(e, G), M) == hom_dim(G, schur_S(e, M))
            assert hom_dim(schur_S(e, M), G) == hom_dim(M, schur_L(e, G))


def test_inflation_is_killed(alg_cmfree):
    """Test that S annihilates modules inflated from R/ReR."""
    e = Idempotent(alg_cmfree, ["2", "3", "4"])
    quotient = quotient_inflation(e)
    for N in simples(quotient.algebra):
        inflated = quotient.inflate(N)
        inflated.validate()
        assert schur_S(e, inflated).dim == 0


def test_tor_condition(alg_cmfree):
    """Test Tor vanishing when the corner has only projective Gorenstein projectives."""
    verdict = tor_condition(Idempotent(alg_cmfree, ["2", "3", "4"]))
    assert verdict.status == "holds"
    assert len(verdict.details) == 3
    assert all(item["tail"] == "zero" for item in verdict.details)


@pytest.fixture
def loop_with_tail(field):
    """A loop x at 1 with x*x = 0 and an arrow a: 1 -> 2 with a*x = 0."""
    quiver = Quiver(["1", "2"])
    quiver.add_arrow("x", "1", "1")
    quiver.add_arrow("a", "1", "2")
    relations = [quiver.relation([(1, ["x", "x"])], field.p), quiver.relation([(1, ["a", "x"])], field.p)]
    return build_algebra(quiver, relations, 12, field, name="loop_with_tail")


def test_tor_condition_fails_on_nonprojective_re(loop_with_tail):
    """Test that Re = eRe + S over the dual numbers gives nonzero Tor in every large degree."""
    e = Idempotent(loop_with_tail, ["1"])
    right = e.right_part.as_right_module()
    S = simples(e.corner)[0]
    assert [tor(right, S, k) for k in range(1, 6)] == [1, 1, 1, 1, 1]
    verdict = tor_condition(e)
    assert verdict.status == "fails"
    failing = [item for item in verdict.details if item["tail"] == "nonzero"]
    assert failing and failing[0]["period"] == 1
    report = schur_report(e)
    assert report.defect_equivalence == "inconclusive"


def test_verdict_helpers():
    """Test the combination of condition statuses."""
    assert conjunction(["holds", "holds"]) == "holds"
    assert conjunction(["holds", "inconclusive"]) == "inconclusive"
    assert conjunction(["inconclusive", "fails"]) == "fails"
    assert conjunction([]) == "holds"
    assert dim_status(DimValue.finite(2)) == "holds"
    assert dim_status(DimValue.infinite()) == "fails"
    assert dim_status(DimValue.unknown(3)) == "inconclusive"


def test_cmfree_corner_full_diagram(alg_cmfree):
    """Test that e = e2 + e3 + e4 gives the full diagram."""
    report = schur_report(Idempotent(alg_cmfree, ["2", "3", "4"]))
    assert report.full_diagram == "holds"
    assert report.defect_equivalence == "holds"
    data = report.to_dict()
    assert data["corner_dim"] == 6
    assert data["conditions"]["singularly_complete"]["verdict"] == "holds"


def test_selfinjective_corner_defect_only(alg_selfinj):
    """Test that e = e3 + e4 + e5 gives the defect equivalence but not the full diagram."""
    report = schur_report(Idempotent(alg_selfinj, ["3", "4", "5"]))
    assert report.tor.status == "holds"
    assert report.defect_equivalence == "holds"
    assert report.singular_complete.status == "fails"
    assert report.full_diagram == "fails"
