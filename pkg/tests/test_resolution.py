from src.homology.resolution import (DimValue, combine_max, ext, global_dim, gorenstein_check, injective_dim,
                                     min_resolution, pd, tor)
from src.modules.functors import dual, projective, simple, simples
from src.modules.module import Module


def test_ext_in_a2(alg_a2):
    """Test Ext^1(S1, S2) = k for the arrow 1 -> 2."""
    S1, S2 = simple(alg_a2, "1"), simple(alg_a2, "2")
    assert ext(S1, S2, 1) == 1
    assert ext(S2, S1, 1) == 0
    assert ext(S1, S2, 2) == 0


def test_global_dimensions(alg_a2, alg_dual, alg_cmfree):
    """Test global dimensions of the small algebras."""
    assert global_dim(alg_a2).verdict == "finite:1"
    assert global_dim(alg_dual).verdict == "infinite"
    assert pd(simple(alg_cmfree, "1")).verdict == "finite:1"


def test_projective_dimension_zero(alg_cmfree):
    """Test that projectives have pd 0."""
    for v in alg_cmfree.vertices:
        assert pd(projective(alg_cmfree, v)).verdict == "finite:0"
    assert pd(Module.zero(alg_cmfree)).verdict == "finite:0"


def test_periodic_resolution(alg_dual):
    """Test the period 1 certificate of the simple over the dual numbers."""
    res = min_resolution(simples(alg_dual)[0], 10)
    assert res.periodic
    assert res.certificate.period == 1
    assert res.certificate.verify()
    res.validate()
    value = pd(simples(alg_dual)[0], 10)
    assert value.is_infinite
    assert value.to_dict()["certificate"]["period"] == 1


def test_ext_beyond_window(alg_dual):
    """Test that periodicity reduces high degrees into the computed window."""
    S = simples(alg_dual)[0]
    assert ext(S, S, 7, 10) == 1
    assert ext(S, Module.regular(alg_dual), 7, 10) == 0


def test_unknown_at_bound(alg_cmfree):
    """Test that a resolution cut off by the bound gives an unknown dimension."""
    value = pd(simple(alg_cmfree, "1"), bound=1)
    assert value.verdict == "unknown"
    assert value.to_dict()["bound"] == 1


def test_tor_with_regular(alg_hered):
    """Test Tor_k(R, M) = 0 for k >= 1."""
    reg_op = Module.regular(alg_hered.opposite())
    for S in simples(alg_hered):
        assert tor(reg_op, S, 0) == 1
        assert tor(reg_op, S, 1) == 0


def test_gorenstein_verdicts(alg_dual, alg_a2):
    """Test Gorenstein checks on self-injective and hereditary algebras."""
    assert gorenstein_check(alg_dual).status == "yes"
    assert gorenstein_check(alg_a2).status == "yes"
    assert injective_dim(Module.regular(alg_a2)).verdict == "finite:1"


def test_combine_max():
    """Test the supremum of dimension values."""
    assert combine_max([DimValue.finite(1), DimValue.finite(3)]).verdict == "finite:3"
    assert combine_max([DimValue.unknown(5), DimValue.finite(3)]).verdict == "unknown"
    assert combine_max([DimValue.unknown(5), DimValue.infinite()]).verdict == "infinite"
    assert combine_max([]).verdict == "finite:0"


def test_ext_matches_dual_over_opposite(alg_a2, alg_dual, alg_cmfree):
    """Test Ext^k_R(M, N) = Ext^k_{R^op}(DN, DM) on simples and projectives."""
    for R in (alg_a2, alg_dual, alg_cmfree):
        mods = simples(R) + [projective(R, v) for v in R.vertices]
        duals = [dual(M) for M in mods]
        for i, M in enumerate(mods):
            for j, N in enumerate(mods):
                for k in (1, 2):
                    assert ext(M, N, k) == ext(duals[j], duals[i], k)
