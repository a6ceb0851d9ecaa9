"""Constructions on modules: Hom, kernels, covers, duality, tensor products."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from src.algebra.fdalgebra import FDAlgebra
from src.modules.module import Bimodule, Module, Morphism, direct_sum
from src.utils.config import DEFAULT_SAMPLES, DEFAULT_SEED
from src.utils.errors import AlgebraMismatchError, InvariantViolation

logger = logging.getLogger(__name__)


# standard modules

def projective(R: FDAlgebra, vertex: str) -> Module:
    """The indecomposable projective P(v) = R e_v."""
    key = ("projective", vertex)
    if key not in R.cache:
        f = R.field
        basis = f.column_basis(R.right_matrix(R.idempotents[vertex]))
        linv = f.left_inverse(basis)
        action = np.einsum("ab,ibc,cd->iad", linv, R.left_mats, basis) % f.p
        module = Module(R, action, name=f"P({vertex})", ambient=basis)
        module.cache["summands"] = [vertex]
        R.cache[key] = module
    return R.cache[key]


def simples(R: FDAlgebra) -> List[Module]:
    """The simple modules S(v) = P(v)/rad P(v), in vertex order."""
    if "simples" not in R.cache:
        out = []
        for v in R.vertices:
            top_module, _ = top(projective(R, v))
            top_module.name = f"S({v})"
            out.append(top_module)
        R.cache["simples"] = out
    return R.cache["simples"]


def simple(R: FDAlgebra, vertex: str) -> Module:
    return simples(R)[R.vertices.index(vertex)]


# Hom

def hom_space(M: Module, N: Module) -> List[Morphism]:
    """A basis of Hom_R(M, N).

    A homomorphism is written X = sum_v B_v^N Y_v C_v^M with Y_v : e_v M -> e_v N;
    each vertex-homogeneous generator g : s -> t contributes the equations
    Y_t G^M = G^N Y_s.
    """
    R = M.algebra
    R.require_same(N.algebra, "Hom arguments")
    f = M.field
    if M.dim == 0 or N.dim == 0:
        return []
    fm, fn = M.vertex_frames, N.vertex_frames
    offsets: Dict[str, Tuple[int, int, int]] = {}
    total = 0
    for v in R.vertices:
        n_v, m_v = fn[v][0].shape[1], fm[v][0].shape[1]
        offsets[v] = (total, n_v, m_v)
        total += n_v * m_v
    if total == 0:
        return []
    blocks = []
    for t, s, g in R.arrow_generators():
        off_t, n_t, m_t = offsets[t]
        off_s, n_s, m_s = offsets[s]
        if n_t * m_s == 0:
            continue
        gm = f.chain(fm[t][1], M.act(g), fm[s][0])
        gn = f.chain(fn[t][1], N.act(g), fn[s][0])
        eq = np.zeros((n_t * m_s, total), dtype=np.int64)
        eq[:, off_t:off_t + n_t * m_t] += np.kron(np.eye(n_t, dtype=np.int64), gm.T)
        eq[:, off_s:off_s + n_s * m_s] -= np.kron(gn, np.eye(m_s, dtype=np.int64))
        blocks.append(eq % f.p)
    if blocks:
        solutions, _ = f.nullspace(np.vstack(blocks))
    else:
        solutions = f.identity(total)
    basis = []
    for k in range(solutions.shape[1]):
        x = np.zeros((N.dim, M.dim), dtype=np.int64)
        for v, (off, n_v, m_v) in offsets.items():
            if n_v * m_v == 0:
                continue
            y = solutions[off:off + n_v * m_v, k].reshape(n_v, m_v)
            x = x + f.chain(fn[v][0], y, fm[v][1])
        basis.append(Morphism(M, N, x))
    return basis


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_space(M, N))


def precompose_rank(g: Morphism, N: Module) -> int:
    """Rank of Hom(g, N) : Hom(target, N) -> Hom(source, N)."""
    f = N.field
    homs = hom_space(g.target, N)
    if not homs or g.source.dim == 0:
        return 0
    images = np.column_stack([f.matmul(h.matrix, g.matrix).ravel() for h in homs])
    return f.rank(images)


# kernels and friends

def kernel(phi: Morphism) -> Tuple[Module, Morphism]:
    f = phi.source.field
    basis, _ = f.nullspace(phi.matrix)
    name = f"ker({phi.source.name})" if phi.source.name else ""
    return phi.source.submodule(basis, name=name)


def image(phi: Morphism) -> Tuple[Module, Morphism]:
    return phi.target.submodule(phi.source.field.column_basis(phi.matrix))


def cokernel(phi: Morphism) -> Tuple[Module, Morphism]:
    return phi.target.quotient(phi.matrix)


def radical_of(M: Module) -> Tuple[Module, Morphism]:
    """rad M = (rad R) M with its inclusion."""
    R = M.algebra
    f = M.field
    rad = R.radical_power(1)
    if M.dim == 0 or rad.shape[1] == 0:
        return M.submodule(np.zeros((M.dim, 0), dtype=np.int64))
    images = np.einsum("ir,iab->arb", rad, M.action).reshape(M.dim, -1) % f.p
    return M.submodule(f.column_basis(images), name=f"rad({M.name})" if M.name else "")


def top(M: Module) -> Tuple[Module, Morphism]:
    _, incl = radical_of(M)
    return M.quotient(incl.matrix, name=f"top({M.name})" if M.name else "")


def is_projective(M: Module) -> bool:
    return projective_cover(M).source.dim == M.dim


def is_semisimple_module(M: Module) -> bool:
    return radical_of(M)[0].dim == 0


def projective_cover(M: Module) -> Morphism:
    """Minimal projective cover P -> M, one summand P(v) per top generator in e_v M."""
    if "cover" in M.cache:
        return M.cache["cover"]
    R = M.algebra
    f = M.field
    if M.dim == 0:
        cover = Morphism(Module.zero(R), M, np.zeros((0, 0), dtype=np.int64))
        cover.source.cache["summands"] = []
        M.cache["cover"] = cover
        return cover
    _, rad_incl = radical_of(M)
    proj, _ = f.complement(rad_incl.matrix)
    gens: List[Tuple[str, np.ndarray]] = []
    for v in R.vertices:
        ev = M.act(R.idempotents[v])
        _, pivots = f.rref(f.matmul(proj, ev))
        for c in pivots:
            gens.append((v, ev[:, c]))
    summands = [projective(R, v) for v, _ in gens]
    P, _, _ = direct_sum(summands, name="+".join(s.name for s in summands))
    P.cache["summands"] = [v for v, _ in gens]
    cols = []
    for (v, m), Pv in zip(gens, summands):
        images = np.einsum("ix,iab,b->ax", Pv.ambient, M.action, m) % f.p
        cols.append(images)
    cover = Morphism(P, M, np.hstack(cols))
    if not cover.is_surjective():
        raise InvariantViolation(f"Projective cover of {M!r} is not surjective")
    M.cache["cover"] = cover
    return cover


# duality

def dual(M: Module) -> Module:
    """D M = Hom_k(M, k) as a module over the opposite algebra."""
    return Module(M.algebra.opposite(), M.action.transpose(0, 2, 1),
                  name=f"D({M.name})" if M.name else "")


def hom_dual(M: Module) -> Tuple[Module, List[Morphism]]:
    """M^+ = Hom_R(M, R) as a left module over R^op, with its basis of homomorphisms.

    f . b acts as m -> f(m) b.
    """
    if "hom_dual" in M.cache:
        return M.cache["hom_dual"]
    R = M.algebra
    f = M.field
    reg = Module.regular(R)
    basis = hom_space(M, reg)
    t = len(basis)
    action = np.zeros((R.dim, t, t), dtype=np.int64)
    if t:
        stacked = np.column_stack([h.matrix.ravel() for h in basis])
        for b in range(R.dim):
            images = np.column_stack([f.matmul(R.right_mats[b], h.matrix).ravel() for h in basis])
            coords = f.solve_matrix(stacked, images)
            if coords is None:
                raise InvariantViolation("Right multiplication left the Hom space")
            action[b] = coords
    result = (Module(R.opposite(), action, name=f"{M.name}^+" if M.name else ""), basis)
    M.cache["hom_dual"] = result
    return result


def evaluation_map(M: Module) -> Morphism:
    """The evaluation M -> M^++ , m -> (f -> f(m))."""
    f = M.field
    dual_module, dual_basis = hom_dual(M)
    double, double_basis = hom_dual(dual_module)
    if double.dim == 0 or M.dim == 0:
        return Morphism(M, double, np.zeros((double.dim, M.dim), dtype=np.int64))
    stacked = np.column_stack([g.matrix.ravel() for g in double_basis])
    targets = []
    for c in range(M.dim):
        ev = np.column_stack([h.matrix[:, c] for h in dual_basis])
        targets.append(ev.ravel())
    coords = f.solve_matrix(stacked, np.column_stack(targets))
    if coords is None:
        raise InvariantViolation(f"Evaluation of {M!r} is not a homomorphism of the double dual")
    return Morphism(M, double, coords)


def is_reflexive(M: Module) -> bool:
    ev = evaluation_map(M)
    return ev.target.dim == M.dim and ev.is_injective()


# tensor products

@dataclass(eq=False)
class TensorProduct:
    """W (x)_B G as the quotient of W (x)_k G; vector index is w * dim G + g."""
    dim: int
    projection: np.ndarray
    section: np.ndarray
    right_dim: int
    left_dim: int
    p: int
    module: Optional[Module] = None


RightFactor = Union[Module, Bimodule]


def tensor(right: RightFactor, left: Module) -> TensorProduct:
    """The tensor product over the algebra acting on ``left``.

    ``right`` is a right module given as a left module over the opposite
    algebra, or a bimodule whose left action then acts on the result.
    """
    B = left.algebra
    f = left.field
    right_module = right.as_right_module() if isinstance(right, Bimodule) else right
    if not right_module.algebra.same_as(B.opposite()):
        raise AlgebraMismatchError("Right factor is not a module over the algebra acting on the left factor")
    dr, dg = right_module.dim, left.dim
    size = dr * dg
    eye_r = np.eye(dr, dtype=np.int64)
    eye_g = np.eye(dg, dtype=np.int64)
    if size:
        relations = np.hstack([np.kron(right_module.action[c], eye_g) - np.kron(eye_r, left.action[c])
                               for c in range(B.dim)]) % f.p
        projection, section = f.complement(relations)
    else:
        projection = np.zeros((0, 0), dtype=np.int64)
        section = np.zeros((0, 0), dtype=np.int64)
    q = projection.shape[0]
    module = None
    if isinstance(right, Bimodule):
        A = right.left_algebra
        action = np.zeros((A.dim, q, q), dtype=np.int64)
        if q:
            for i in range(A.dim):
                action[i] = f.chain(projection, np.kron(right.left_action[i], eye_g), section)
        module = Module(A, action, name=f"{right.name}(x){left.name}" if left.name else right.name)
    return TensorProduct(q, projection, section, dr, dg, f.p, module)


def tensor_morphism(source: TensorProduct, target: TensorProduct, left_map: np.ndarray) -> np.ndarray:
    """Matrix of W (x) g : W (x) G -> W (x) G' for g : G -> G'."""
    big = np.kron(np.eye(source.right_dim, dtype=np.int64), np.asarray(left_map, dtype=np.int64))
    return (target.projection @ (big @ source.section % source.p)) % source.p


# isomorphism

@dataclass
class IsoVerdict:
    status: str
    witness: Optional[Morphism] = None
    reason: str = ""

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    @property
    def no(self) -> bool:
        return self.status == "no"


def _top_vector(M: Module) -> Dict[str, int]:
    return top(M)[0].dimension_vector()


def is_isomorphic(M: Module, N: Module, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> IsoVerdict:
    """Decide M ~ N: "no" only from certified obstructions, "yes" only with a witness."""
    M.algebra.require_same(N.algebra, "Isomorphism arguments")
    f = M.field
    if M.dim != N.dim:
        return IsoVerdict("no", reason="dimension")
    if M.dim == 0:
        return IsoVerdict("yes", Morphism(M, N, np.zeros((0, 0), dtype=np.int64)), "zero")
    if M.dimension_vector() != N.dimension_vector():
        return IsoVerdict("no", reason="dimension vector")
    if _top_vector(M) != _top_vector(N):
        return IsoVerdict("no", reason="top")
    homs = hom_space(M, N)
    if not homs:
        return IsoVerdict("no", reason="Hom(M, N) = 0")
    if not hom_space(N, M):
        return IsoVerdict("no", reason="Hom(N, M) = 0")
    for h in homs:
        if h.is_isomorphism():
            return IsoVerdict("yes", h, "basis morphism")
    rng = np.random.default_rng(seed)
    stack = np.stack([h.matrix for h in homs])
    for _ in range(samples):
        coeffs = rng.integers(0, f.p, size=len(homs), dtype=np.int64)
        candidate = Morphism(M, N, np.tensordot(coeffs, stack, axes=1) % f.p)
        if candidate.is_isomorphism():
            return IsoVerdict("yes", candidate, "random combination")
    return IsoVerdict("undetermined", reason=f"no isomorphism among {len(homs)} basis maps and {samples} samples")
