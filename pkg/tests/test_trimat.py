import numpy as np
import pytest

from src.algebra.fdalgebra import algebra_isomorphism
from src.modules.functors import is_isomorphic, projective, simple, simples, tensor
from src.modules.module import Bimodule, Module
from src.triangular.trimat import (TripleModule, build_trimat, check_corner_a_reduction, check_corner_b_reduction,
                                   compatibility_check, corner_module_identities, module_to_triple,
                                   projective_triples, ses_check, split_trimat, standard_ses, triple_gpd_transfer,
                                   triple_gproj_criterion, triple_to_module)
from src.utils.errors import HypothesisUnmetError, NotTriangularError


def test_split_dimensions(split_cmfree, split_hered, split_selfinj):
    """Test dim T = dim A + dim M + dim B for the three splits."""
    assert (split_cmfree.A.dim, split_cmfree.M.dim, split_cmfree.B.dim, split_cmfree.T.dim) == (6, 2, 1, 9)
    assert (split_hered.A.dim, split_hered.M.dim, split_hered.B.dim, split_hered.T.dim) == (3, 4, 6, 13)
    assert (split_selfinj.A.dim, split_selfinj.M.dim, split_selfinj.B.dim, split_selfinj.T.dim) == (4, 4, 6, 14)


def test_split_recovers_algebra(alg_cmfree, split_cmfree):
    """Test that the assembled algebra is isomorphic to the input."""
    R, basis_map = split_cmfree.T.ambient
    assert R is alg_cmfree
    assert algebra_isomorphism(split_cmfree.T, alg_cmfree, basis_map)


def test_bimodule_labels(split_cmfree):
    """Test that M is spanned by the paths out of vertex 1."""
    assert sorted(split_cmfree.M.labels) == ["alpha", "beta*alpha"]


def test_split_refuses_paths_backwards(alg_cmfree, alg_hered):
    """Test that a split with paths from A to B is refused."""
    with pytest.raises(NotTriangularError):
        split_trimat(alg_cmfree, ["1"])
    with pytest.raises(NotTriangularError):
        split_trimat(alg_hered, ["1", "2", "3", "4", "5"])


def test_build_from_point_bimodule(field, alg_a2):
    """Test that k as a k-k-bimodule gives the path algebra of 1 -> 2."""
    point = split_trimat(alg_a2, ["2"]).A
    M = Bimodule(point, point, np.ones((1, 1, 1)), np.ones((1, 1, 1)))
    tm = build_trimat(point, point, M)
    assert tm.T.dim == 3
    assert tm.vertices_a == ["A2"] and tm.vertices_b == ["B2"]
    assert sorted(projective(tm.T, v).dim for v in tm.T.vertices) == [1, 2]


def test_corner_identities(split_hered):
    """Test the one-sided corner modules of T."""
    items = corner_module_identities(split_hered)
    assert [item["dim"] for item in items] == [3, 10, 7, 6]
    assert all(item["holds"] for item in items)


def test_projective_triples(split_selfinj):
    """Test that (P, 0, 0) and (M (x) Q, Q, id) are the projectives T e_v."""
    for item in projective_triples(split_selfinj):
        assert item["projective"]
        assert item["isomorphic"] == "yes"


def test_triple_round_trip(split_selfinj):
    """Test that decomposing and reassembling recovers a T-module."""
    for v in split_selfinj.T.vertices:
        N = projective(split_selfinj.T, v)
        triple, iso = module_to_triple(split_selfinj, N)
        triple.validate()
        assert iso.is_isomorphism()
        assert is_isomorphic(triple_to_module(triple), N).yes


def test_standard_sequence(split_cmfree):
    """Test exactness of 0 -> (MZ, 0) -> (MZ, Z) -> (0, Z) -> 0."""
    Z = simples(split_cmfree.B)[0]
    triples, first, second = standard_ses(split_cmfree, Z)
    verdict = ses_check(triples, first, second)
    assert verdict.module_level and verdict.componentwise
    broken = ses_check(triples, first, (second[0], np.zeros_like(second[1])))
    assert not broken.module_level
    assert broken.agree


def test_compatibility_holds(split_cmfree, split_hered, split_selfinj):
    """Test compatibility of M in the three examples."""
    for tm in (split_cmfree, split_hered, split_selfinj):
        assert compatibility_check(tm).status == "holds"
    details = compatibility_check(split_selfinj).details
    assert details and all(item["side"] == "A" for item in details)


def test_gproj_criterion_on_simple_triple(split_selfinj):
    """Test the triple criterion against the direct check on (S, 0, 0)."""
    S1 = simple(split_selfinj.A, "1")
    zero_b = Module.zero(split_selfinj.B)
    triple = TripleModule(split_selfinj, S1, zero_b, np.zeros((1, 0), dtype=np.int64), name="(S1,0)")
    verdict = triple_gproj_criterion(triple)
    assert verdict.criterion == "yes"
    assert verdict.direct.status == "yes"
    assert verdict.agree


def test_gproj_criterion_refutes_bad_phi(split_selfinj):
    """Test that a non-injective phi is refuted by both sides."""
    Q = projective(split_selfinj.B, "3")
    product = tensor(split_selfinj.M, Q)
    zero_a = Module.zero(split_selfinj.A)
    triple = TripleModule(split_selfinj, zero_a, Q, np.zeros((0, product.dim), dtype=np.int64))
    verdict = triple_gproj_criterion(triple)
    assert verdict.components["phi_injective"] == "False"
    assert verdict.criterion == "no"
    assert verdict.agree


def test_gpd_transfer(split_selfinj):
    """Test Gpd_T(X, 0) = Gpd_A X and the finiteness transfer for (0, Y)."""
    for X in simples(split_selfinj.A):
        report = triple_gpd_transfer(split_selfinj, X, simple(split_selfinj.B, "5"))
        assert report.x_agrees
        assert report.gpd_a_x.verdict == "finite:0"
        assert report.pd_a_x.is_infinite


def test_reduction_to_a_cmfree_corner(split_cmfree):
    """Test that the reduction of cmfree_corner to A gives the full diagram and the CM-free transfer."""
    report = check_corner_a_reduction(split_cmfree)
    assert report.full_diagram == "holds"
    assert report.defect_equivalence == "holds"
    assert report.transfers["cm_free"]["A"] == "yes"
    assert report.to_dict()["conclusions"]["grants"]


def test_reduction_to_b_hereditary_corner(split_hered):
    """Test that the hereditary corner A gives the full diagram over B."""
    report = check_corner_b_reduction(split_hered)
    assert report.defect_equivalence == "holds"
    assert report.full_diagram == "holds"
    assert "cm_free" in report.transfers


def test_reduction_to_b_selfinjective_corner(split_selfinj):
    """Test that the self-injective corner A gives only the defect equivalence."""
    report = check_corner_b_reduction(split_selfinj)
    assert report.defect_equivalence == "holds"
    assert report.full_diagram == "fails"
    assert "gorenstein" in report.transfers
    assert "cm_free" not in report.transfers


def test_incompatible_bimodule_raises(split_selfinj, mocker):
    """Test that the criteria refuse an incompatible bimodule."""
    from src.triangular import trimat

    mocker.patch.object(trimat, "compatibility_check", return_value=trimat.CompatibilityVerdict("fails"))
    with pytest.raises(HypothesisUnmetError):
        check_corner_b_reduction(split_selfinj)


def test_undecided_compatibility_is_unknown(split_selfinj, mocker):
    """Test that resolutions without a certificate give an unknown compatibility and inconclusive reductions."""
    import dataclasses

    from src.triangular import trimat

    real = trimat.min_resolution
    mocker.patch.object(trimat, "min_resolution",
                        side_effect=lambda M, bound: dataclasses.replace(real(M, bound), certificate=None))
    verdict = compatibility_check(split_selfinj)
    assert verdict.status == "unknown"
    assert all(item["status"] == "unknown" for item in verdict.details)
    report = check_corner_b_reduction(split_selfinj, compatibility=verdict)
    assert report.defect_equivalence == "inconclusive"
    assert report.full_diagram == "fails"
