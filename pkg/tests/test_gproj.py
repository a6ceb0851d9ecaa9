from src.gorenstein.gproj import (audit_periodic_complex, cm_free_check, gorenstein_by_gpd, gpd, gproj_check,
                                  gproj_test_set)
from src.homology.resolution import min_resolution
from src.modules.functors import is_projective, projective, simple, simples
from src.modules.module import Module


def test_dual_numbers_simple_is_gproj(alg_dual):
    """Test that the simple over k[x]/(x^2) is Gorenstein projective with a period 1 certificate."""
    S = simples(alg_dual)[0]
    verdict = gproj_check(S)
    assert verdict.yes
    assert verdict.certificate.period == 1
    assert all(dim == 0 for _, dim in verdict.ext_window)
    assert gpd(S).verdict == "finite:0"


def test_projective_is_gproj(alg_cmfree):
    """Test that projectives are Gorenstein projective."""
    verdict = gproj_check(projective(alg_cmfree, "1"))
    assert verdict.yes
    assert verdict.reason == "projective"
    assert gproj_check(Module.zero(alg_cmfree)).yes


def test_ext_witness_refutes(alg_a2):
    """Test that a non-projective simple over a hereditary algebra is refuted by Ext."""
    verdict = gproj_check(simple(alg_a2, "1"))
    assert verdict.no
    assert verdict.ext_witness == (1, 1)
    assert verdict.to_dict()["ext_witness"] == {"degree": 1, "dim": 1}


def test_cm_free_corner_rejects_simple(split_selfinj):
    """Test that S(3) over the CM-free corner B is not Gproj and has infinite Gpd."""
    S3 = simple(split_selfinj.B, "3")
    assert gproj_check(S3).no
    assert gpd(S3).is_infinite


def test_gpd_finite_pd(alg_cmfree):
    """Test that finite projective dimension gives the same Gpd."""
    assert gpd(simple(alg_cmfree, "1")).verdict == "finite:1"
    assert gpd(simple(alg_cmfree, "4")).verdict == "finite:0"


def test_audit_of_certificate(alg_dual):
    """Test the exactness audit of the periodic complex."""
    res = min_resolution(simples(alg_dual)[0])
    audit = audit_periodic_complex(res)
    assert audit.exact and audit.dual_exact
    assert len(audit.ranks) == 1


def test_test_set(alg_dual, alg_cmfree):
    """Test the Gorenstein projective test sets."""
    members = gproj_test_set(alg_dual)
    assert any(not is_projective(m) for m in members)
    assert all(is_projective(m) for m in gproj_test_set(alg_cmfree))


def test_cm_free(alg_dual, split_cmfree, split_hered):
    """Test CM-freeness verdicts."""
    assert cm_free_check(alg_dual).verdict == "no"
    assert cm_free_check(split_cmfree.A).status == "certified"
    assert cm_free_check(split_hered.B).verdict == "yes"
    assert cm_free_check(split_hered.A).verdict in ("yes", "holds")


def test_gorenstein_by_gpd(alg_dual, alg_a2, split_selfinj):
    """Test Gorensteinness from the Gpd of simples."""
    assert gorenstein_by_gpd(alg_dual)[0] == "yes"
    assert gorenstein_by_gpd(alg_a2)[0] == "yes"
    assert gorenstein_by_gpd(split_selfinj.B)[0] == "no"
