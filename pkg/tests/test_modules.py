import numpy as np
import pytest

from src.modules.functors import (cokernel, dual, hom_dim, hom_space, is_isomorphic, is_projective, is_reflexive,
                                  kernel, projective, projective_cover, radical_of, simple, simples, tensor, top)
from src.modules.module import Module, Morphism, direct_sum
from src.utils.errors import AlgebraMismatchError, ValidationError


def test_projectives_of_cmfree_corner(alg_cmfree):
    """Test the dimensions of the indecomposable projectives."""
    dims = {v: projective(alg_cmfree, v).dim for v in alg_cmfree.vertices}
    assert dims == {"1": 3, "2": 2, "3": 3, "4": 1}
    assert sum(dims.values()) == alg_cmfree.dim


def test_simples_are_one_dimensional(alg_selfinj):
    """Test simple modules and their dimension vectors."""
    for v, S in zip(alg_selfinj.vertices, simples(alg_selfinj)):
        vector = S.dimension_vector()
        assert S.dim == 1
        assert vector[v] == 1
        assert S.name == f"S({v})"


def test_hom_in_a2(alg_a2):
    """Test Hom spaces between the modules of 1 -> 2."""
    P1, P2 = projective(alg_a2, "1"), projective(alg_a2, "2")
    S1, S2 = simple(alg_a2, "1"), simple(alg_a2, "2")
    assert hom_dim(P1, S2) == 0
    assert hom_dim(P1, S1) == 1
    assert hom_dim(P2, P1) == 1
    assert hom_dim(P1, P2) == 0
    for h in hom_space(P2, P1):
        assert h.is_homomorphism()


def test_hom_matches_dimension_vector(alg_hered):
    """Test Hom(P(v), M) = e_v M."""
    for M in simples(alg_hered) + [projective(alg_hered, v) for v in alg_hered.vertices]:
        vector = M.dimension_vector()
        for v in alg_hered.vertices:
            assert hom_dim(projective(alg_hered, v), M) == vector[v]


def test_kernel_and_cokernel(alg_a2):
    """Test the kernel and cokernel of the cover of a simple."""
    S1 = simple(alg_a2, "1")
    cover = projective_cover(S1)
    assert cover.source.dim == 2
    K, incl = kernel(cover)
    assert K.dim == 1
    assert not cover.compose(incl).matrix.any()
    assert is_isomorphic(K, simple(alg_a2, "2")).yes
    C, _ = cokernel(incl)
    assert is_isomorphic(C, S1).yes


def test_radical_and_top(alg_cmfree):
    """Test radical and top of P(1)."""
    P1 = projective(alg_cmfree, "1")
    rad, _ = radical_of(P1)
    head, _ = top(P1)
    assert rad.dim == 2
    assert head.dim == 1
    assert head.dimension_vector()["1"] == 1


def test_projectivity(alg_dual, alg_cmfree):
    """Test the projectivity check."""
    assert is_projective(Module.regular(alg_dual))
    assert not is_projective(simples(alg_dual)[0])
    assert is_projective(projective(alg_cmfree, "3"))
    assert not is_projective(simple(alg_cmfree, "1"))


def test_self_injective_dual(alg_dual, alg_cmfree):
    """Test that D R is projective exactly for the self-injective example."""
    assert is_projective(dual(Module.regular(alg_dual)))
    assert not is_projective(dual(Module.regular(alg_cmfree)))


def test_reflexive(alg_dual):
    """Test that every module over the dual numbers is reflexive."""
    assert is_reflexive(simples(alg_dual)[0])
    assert is_reflexive(Module.regular(alg_dual))


def test_isomorphism_witness(alg_hered):
    """Test that isomorphism witnesses are invertible homomorphisms."""
    P = projective(alg_hered, "3")
    Q, inj, _ = direct_sum([P])
    verdict = is_isomorphic(P, Q)
    assert verdict.yes
    assert verdict.witness.is_isomorphism() and verdict.witness.is_homomorphism()
    assert is_isomorphic(P, projective(alg_hered, "4")).no


def test_tensor_with_regular(alg_cmfree):
    """Test R^op (x)_R M has the dimension of M."""
    reg_op = Module.regular(alg_cmfree.opposite())
    for v in alg_cmfree.vertices:
        P = projective(alg_cmfree, v)
        assert tensor(reg_op, P).dim == P.dim


def test_invalid_action(alg_a2):
    """Test that a non-multiplicative action is refused."""
    action = np.zeros((alg_a2.dim, 1, 1), dtype=np.int64)
    with pytest.raises(ValidationError):
        Module(alg_a2, action).validate()


def test_algebra_mismatch(alg_a2, alg_dual):
    """Test that Hom between different algebras raises."""
    with pytest.raises(AlgebraMismatchError):
        hom_space(simples(alg_a2)[0], simples(alg_dual)[0])


def test_morphism_validation(alg_a2):
    """Test that a non-equivariant matrix is refused."""
    P1 = projective(alg_a2, "1")
    bad = Morphism(P1, P1, np.array([[0, 1], [1, 0]]))
    with pytest.raises(ValidationError):
        bad.validate()
