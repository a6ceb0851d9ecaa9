"""Triangular matrix algebras T = [[A, M], [0, B]] and their modules as triples (X, Y, phi).

A T-module is a triple with X an A-module, Y a B-module and
phi : M (x)_B Y -> X an A-homomorphism; as a column vector (x; y) it is
acted on by (a m; 0 b) as (a x + phi(m (x) y); b y).
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.fdalgebra import FDAlgebra, algebra_isomorphism, corner
from src.gorenstein.gproj import (GprojVerdict, audit_periodic_complex, cm_free_check, gpd, gproj_check,
                                  gproj_test_set, periodic_maps)
from src.homology.resolution import DimValue, global_dim, gorenstein_check, min_resolution, pd, tor
from src.idempotents.schur import ConditionVerdict, conjunction, dim_status
from src.modules.functors import (TensorProduct, cokernel, is_isomorphic, is_projective, projective, tensor,
                                  tensor_morphism)
from src.modules.module import Bimodule, Module, Morphism, direct_sum
from src.utils.config import DEFAULT_BOUND
from src.utils.errors import (HypothesisUnmetError, InvariantViolation, NotTriangularError, ValidationError)

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class TriMatAlgebra:
    """T = [[A, M], [0, B]] with basis A, then M, then B."""
    A: FDAlgebra
    B: FDAlgebra
    M: Bimodule
    T: FDAlgebra
    vertices_a: List[str]
    vertices_b: List[str]

    @property
    def offsets(self) -> Tuple[slice, slice, slice]:
        na, d = self.A.dim, self.M.dim
        return slice(0, na), slice(na, na + d), slice(na + d, na + d + self.B.dim)

    @property
    def e_a(self) -> np.ndarray:
        return self.T.idempotent_sum(self.vertices_a)

    @property
    def e_b(self) -> np.ndarray:
        return self.T.idempotent_sum(self.vertices_b)

    @cached_property
    def m_left(self) -> Module:
        return self.M.as_left_module()

    @cached_property
    def m_right(self) -> Module:
        return self.M.as_right_module()


def build_trimat(A: FDAlgebra, B: FDAlgebra, M: Bimodule, name: str = "T") -> TriMatAlgebra:
    """Assemble the triangular matrix algebra of an A-B-bimodule."""
    if not (M.left_algebra.same_as(A) and M.right_algebra.same_as(B)):
        raise ValidationError("Bimodule is not over the given algebras")
    if A.field != B.field:
        raise ValidationError("A and B live over different fields")
    M.validate()
    f = A.field
    na, nb, d = A.dim, B.dim, M.dim
    n = na + d + nb
    sa, sm, sb = slice(0, na), slice(na, na + d), slice(na + d, n)
    mult = np.zeros((n, n, n), dtype=np.int64)
    mult[sa, sa, sa] = A.mult
    mult[sb, sb, sb] = B.mult
    mult[sa, sm, sm] = M.left_action.transpose(0, 2, 1)
    mult[sm, sb, sm] = M.right_action.transpose(2, 0, 1)
    unit = np.concatenate([A.unit, np.zeros(d, dtype=np.int64), B.unit])

    clash = set(A.vertices) & set(B.vertices)
    name_a = {v: (f"A{v}" if clash else v) for v in A.vertices}
    name_b = {v: (f"B{v}" if clash else v) for v in B.vertices}
    idempotents = {}
    for v in A.vertices:
        idempotents[name_a[v]] = np.concatenate([A.idempotents[v], np.zeros(d + nb, dtype=np.int64)])
    for v in B.vertices:
        idempotents[name_b[v]] = np.concatenate([np.zeros(na + d, dtype=np.int64), B.idempotents[v]])
    ra, rb = A.radical.shape[1], B.radical.shape[1]
    radical = np.zeros((n, ra + d + rb), dtype=np.int64)
    radical[sa, :ra] = A.radical
    radical[sm, ra:ra + d] = np.eye(d, dtype=np.int64)
    radical[sb, ra + d:] = B.radical
    labels = list(A.labels) + list(M.labels) + list(B.labels)
    T = FDAlgebra(field=f, labels=labels, mult=mult, unit=unit, idempotents=idempotents, radical=radical, name=name)
    T.validate()
    logger.debug(f"Triangular algebra {T!r}: dim A {na}, dim M {d}, dim B {nb}")
    return TriMatAlgebra(A, B, M, T, [name_a[v] for v in A.vertices], [name_b[v] for v in B.vertices])


def split_trimat(R: FDAlgebra, vertices_a: Sequence[str]) -> TriMatAlgebra:
    """Present R as [[eRe, eRe'], [0, e'Re']] for e the idempotent of vertices_a.

    Requires e' R e = 0, i.e. no nonzero paths from the A part to the B part.
    """
    vertices_a = list(dict.fromkeys(vertices_a))
    unknown = [v for v in vertices_a if v not in R.vertices]
    if unknown:
        raise ValidationError(f"Unknown vertices {unknown}")
    vertices_b = [v for v in R.vertices if v not in vertices_a]
    if not vertices_a or not vertices_b:
        raise NotTriangularError("Both parts of the split need at least one vertex")
    f = R.field
    e_a, e_b = R.idempotent_sum(vertices_a), R.idempotent_sum(vertices_b)
    if f.chain(R.left_matrix(e_b), R.right_matrix(e_a)).any():
        raise NotTriangularError("There are nonzero paths from the A part to the B part")
    A = corner(R, vertices_a)
    B = corner(R, vertices_b)
    emb_a, emb_b = A.ambient[1], B.ambient[1]
    m_basis = f.column_basis(f.chain(R.left_matrix(e_a), R.right_matrix(e_b)))
    linv = f.left_inverse(m_basis) if m_basis.shape[1] else np.zeros((0, R.dim), dtype=np.int64)
    left = np.einsum("ia,ixy->axy", emb_a, R.left_mats) % f.p
    right = np.einsum("ia,ixy->axy", emb_b, R.right_mats) % f.p
    left = np.einsum("ux,axy,yv->auv", linv, left, m_basis) % f.p
    right = np.einsum("ux,axy,yv->auv", linv, right, m_basis) % f.p
    labels = []
    for c in range(m_basis.shape[1]):
        nz = np.flatnonzero(m_basis[:, c])
        labels.append(R.labels[int(nz[0])] if nz.size == 1 else f"m{c}")
    M = Bimodule(A, B, left, right, name="M", labels=labels, ambient=m_basis)
    trimat = build_trimat(A, B, M, name=f"{R.name or 'R'}")
    basis_map = np.hstack([emb_a, m_basis, emb_b])
    if not algebra_isomorphism(trimat.T, R, basis_map):
        raise InvariantViolation("Assembled triangular algebra is not isomorphic to the input algebra")
    trimat.T.ambient = (R, basis_map)
    return trimat


# triples

@dataclass(eq=False)
class TripleModule:
    """A T-module as (X, Y, phi) with phi : M (x)_B Y -> X."""
    trimat: TriMatAlgebra
    X: Module
    Y: Module
    phi: np.ndarray
    name: str = ""

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=np.int64).reshape(self.X.dim, self.product.dim) % self.X.field.p

    @cached_property
    def product(self) -> TensorProduct:
        return tensor(self.trimat.M, self.Y)

    def phi_morphism(self) -> Morphism:
        return Morphism(self.product.module, self.X, self.phi)

    def validate(self) -> None:
        self.trimat.A.require_same(self.X.algebra, "X")
        self.trimat.B.require_same(self.Y.algebra, "Y")
        self.X.validate()
        self.Y.validate()
        if not self.phi_morphism().is_homomorphism():
            raise ValidationError("phi is not a homomorphism of A-modules")


def triple_to_module(t: TripleModule) -> Module:
    """The T-module on X + Y."""
    tm = t.trimat
    f = t.X.field
    dx, dy = t.X.dim, t.Y.dim
    d = dx + dy
    sa, sm, sb = tm.offsets
    action = np.zeros((tm.T.dim, d, d), dtype=np.int64)
    action[sa, :dx, :dx] = t.X.action
    action[sb, dx:, dx:] = t.Y.action
    if dx and dy:
        mixed = f.matmul(t.phi, t.product.projection)
        for j in range(tm.M.dim):
            action[sm.start + j, :dx, dx:] = mixed[:, j * dy:(j + 1) * dy]
    return Module(tm.T, action, name=t.name)


def module_to_triple(tm: TriMatAlgebra, N: Module) -> Tuple[TripleModule, Morphism]:
    """Decompose a T-module into (e_A N, e_B N, phi) with the isomorphism back onto N."""
    tm.T.require_same(N.algebra, "Triple decomposition")
    f = N.field
    sa, sm, sb = tm.offsets
    bx = f.column_basis(N.act(tm.e_a))
    by = f.column_basis(N.act(tm.e_b))
    lx = f.left_inverse(bx) if bx.shape[1] else np.zeros((0, N.dim), dtype=np.int64)
    ly = f.left_inverse(by) if by.shape[1] else np.zeros((0, N.dim), dtype=np.int64)
    X = Module(tm.A, np.einsum("ux,axy,yv->auv", lx, N.action[sa], bx) % f.p, name=f"X({N.name})")
    Y = Module(tm.B, np.einsum("ux,axy,yv->auv", ly, N.action[sb], by) % f.p, name=f"Y({N.name})")
    dy = Y.dim
    big = np.zeros((X.dim, tm.M.dim * dy), dtype=np.int64)
    for j in range(tm.M.dim):
        big[:, j * dy:(j + 1) * dy] = f.chain(lx, N.action[sm.start + j], by)
    product = tensor(tm.M, Y)
    triple = TripleModule(tm, X, Y, f.matmul(big, product.section), name=N.name)
    iso = Morphism(triple_to_module(triple), N, np.hstack([bx, by]))
    if not (iso.is_isomorphism() and iso.is_homomorphism()):
        raise InvariantViolation(f"Triple decomposition of {N!r} does not recompose")
    return triple, iso


def triple_morphism(source: TripleModule, target: TripleModule, fx: np.ndarray, fy: np.ndarray) -> Morphism:
    """The T-homomorphism (fx, fy) between the assembled modules; validated."""
    dx, dy = source.X.dim, source.Y.dim
    tx, ty = target.X.dim, target.Y.dim
    matrix = np.zeros((tx + ty, dx + dy), dtype=np.int64)
    matrix[:tx, :dx] = fx
    matrix[tx:, dx:] = fy
    hom = Morphism(triple_to_module(source), triple_to_module(target), matrix)
    hom.validate()
    return hom


def _short_exact(first: np.ndarray, second: np.ndarray, dims: Tuple[int, int, int], f) -> bool:
    n1, n2, n3 = dims
    if n2 != n1 + n3:
        return False
    if f.matmul(second, first).any():
        return False
    return f.rank(first) == n1 and f.rank(second) == n3


@dataclass
class SesVerdict:
    module_level: bool
    componentwise: bool

    @property
    def agree(self) -> bool:
        return self.module_level == self.componentwise


def ses_check(triples: Sequence[TripleModule], first: Tuple[np.ndarray, np.ndarray],
              second: Tuple[np.ndarray, np.ndarray]) -> SesVerdict:
    """Exactness of 0 -> t1 -> t2 -> t3 -> 0 as T-modules and componentwise."""
    t1, t2, t3 = triples
    f = t1.X.field
    m1 = triple_morphism(t1, t2, *first)
    m2 = triple_morphism(t2, t3, *second)
    dims = (m1.source.dim, m1.target.dim, m2.target.dim)
    module_level = _short_exact(m1.matrix, m2.matrix, dims, f)
    x_exact = _short_exact(first[0], second[0], (t1.X.dim, t2.X.dim, t3.X.dim), f)
    y_exact = _short_exact(first[1], second[1], (t1.Y.dim, t2.Y.dim, t3.Y.dim), f)
    return SesVerdict(module_level, x_exact and y_exact)


def standard_ses(tm: TriMatAlgebra, Z: Module) -> Tuple[List[TripleModule], Tuple, Tuple]:
    """0 -> (M(x)Z, 0) -> (M(x)Z, Z, id) -> (0, Z, 0) -> 0."""
    f = Z.field
    zero_b = Module.zero(tm.B)
    zero_a = Module.zero(tm.A)
    product = tensor(tm.M, Z)
    mz = product.module
    left = TripleModule(tm, mz, zero_b, np.zeros((mz.dim, 0), dtype=np.int64), name="(MZ,0)")
    middle = TripleModule(tm, mz, Z, f.identity(mz.dim), name="(MZ,Z)")
    right = TripleModule(tm, zero_a, Z, np.zeros((0, mz.dim), dtype=np.int64), name="(0,Z)")
    first = (f.identity(mz.dim), np.zeros((Z.dim, 0), dtype=np.int64))
    second = (np.zeros((0, mz.dim), dtype=np.int64), f.identity(Z.dim))
    return [left, middle, right], first, second


# hypotheses and criteria

@dataclass
class CompatibilityVerdict:
    status: str
    details: List[Dict] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"verdict": self.status, "details": self.details, "scope": "Gorenstein projective test sets"}


def _tensor_exact(tm: TriMatAlgebra, res) -> bool:
    """Exactness of M (x)_B over one period of the complete resolution of a certificate."""
    f = tm.A.field
    terms, outgoing, incoming = periodic_maps(res)
    products = {k: tensor(tm.M, P) for k, P in terms.items()}
    for k in terms:
        out_map, in_map = outgoing[k], incoming[k]
        out_k = tensor_morphism(products[k], products[_index_of(terms, out_map.target)], out_map.matrix)
        in_k = tensor_morphism(products[_index_of(terms, in_map.source)], products[k], in_map.matrix)
        if f.matmul(out_k, in_k).any() or f.rank(out_k) + f.rank(in_k) != products[k].dim:
            return False
    return True


def _index_of(terms: Dict[int, Module], module: Module) -> int:
    for k, term in terms.items():
        if term is module:
            return k
    raise KeyError("Term not found in the periodic window")


def compatibility_check(tm: TriMatAlgebra, bound: int = DEFAULT_BOUND) -> CompatibilityVerdict:
    """Test-set approximation of compatibility of the bimodule M.

    (i) M (x)_B - keeps the complete resolutions of Gorenstein projective
        B-modules exact, and Tor^B_k(M, G) = 0 for k >= 1;
    (ii) Hom_A(-, M) keeps the complete resolutions of Gorenstein projective
        A-modules exact, so Ext^k_A(G, M) = 0 for k >= 1.
    """
    details, statuses = [], []
    for G in gproj_test_set(tm.B, bound):
        if is_projective(G):
            continue
        res = min_resolution(G, bound)
        tor_values = [tor(tm.m_right, G, k, bound) for k in range(1, len(res.syzygies) + 1)]
        if not res.periodic or any(v is None for v in tor_values):
            status = "unknown"
        elif all(v == 0 for v in tor_values) and _tensor_exact(tm, res):
            status = "holds"
        else:
            status = "fails"
        details.append({"side": "B", "module": G.name, "tor": tor_values, "status": status})
        statuses.append(status)
    for G in gproj_test_set(tm.A, bound):
        if is_projective(G):
            continue
        res = min_resolution(G, bound)
        if not res.periodic:
            status = "unknown"
        else:
            status = "holds" if audit_periodic_complex(res, tm.m_left).dual_exact else "fails"
        details.append({"side": "A", "module": G.name, "status": status})
        statuses.append(status)
    if "fails" in statuses:
        return CompatibilityVerdict("fails", details)
    return CompatibilityVerdict("unknown" if "unknown" in statuses else "holds", details)


def _require_compatible(tm: TriMatAlgebra, bound: int,
                        compatibility: Optional[CompatibilityVerdict]) -> CompatibilityVerdict:
    verdict = compatibility or compatibility_check(tm, bound)
    if verdict.status == "fails":
        raise HypothesisUnmetError("The bimodule M is not compatible on the test sets")
    if verdict.status == "unknown":
        logger.warning("Compatibility of M is undecided within the bound; conclusions are inconclusive")
    return verdict


def _compat_status(verdict: CompatibilityVerdict) -> str:
    return "holds" if verdict.status == "holds" else "inconclusive"


@dataclass
class TripleCriterionVerdict:
    """Gorenstein projectivity of a triple by the component criterion and directly over T."""
    criterion: str
    direct: GprojVerdict
    components: Dict[str, str]

    @property
    def agree(self) -> bool:
        certain = {"yes", "no"}
        if self.criterion in certain and self.direct.status in certain:
            return self.criterion == self.direct.status
        return True

    def to_dict(self) -> Dict:
        return {"criterion": self.criterion, "direct": self.direct.status, "components": self.components,
                "agree": self.agree}


def triple_gproj_criterion(t: TripleModule, bound: int = DEFAULT_BOUND,
                           compatibility: Optional[CompatibilityVerdict] = None) -> TripleCriterionVerdict:
    """(X, Y, phi) is Gorenstein projective iff Y is, phi is injective and coker phi is.

    Raises:
        HypothesisUnmetError: when M is not compatible
    """
    compat = _require_compatible(t.trimat, bound, compatibility)
    f = t.X.field
    y_verdict = gproj_check(t.Y, bound)
    injective = f.rank(t.phi) == t.product.dim
    if injective:
        coker, _ = cokernel(t.phi_morphism())
        c_status = gproj_check(coker, bound).status
    else:
        c_status = "unknown"
    if y_verdict.no or not injective or c_status == "no":
        criterion = "no"
    elif y_verdict.yes and c_status == "yes":
        criterion = "yes"
    else:
        criterion = "unknown"
    if compat.status != "holds":
        criterion = "unknown"
    direct = gproj_check(triple_to_module(t), bound)
    verdict = TripleCriterionVerdict(criterion, direct, {"Y": y_verdict.status, "phi_injective": str(injective),
                                                         "coker": c_status})
    if not verdict.agree:
        logger.error(f"Triple criterion and direct check disagree on {t.name or 'triple'}: "
                     f"{criterion} vs {direct.status}")
    return verdict


@dataclass
class TransferReport:
    """Gorenstein dimensions of (X, 0) and (0, Y) against those of X and Y."""
    gpd_t_x: DimValue
    gpd_a_x: DimValue
    pd_t_x: DimValue
    pd_a_x: DimValue
    hypothesis: str
    gpd_t_y: DimValue
    gpd_b_y: DimValue

    @property
    def x_agrees(self) -> bool:
        return self.gpd_t_x.verdict == self.gpd_a_x.verdict and self.pd_t_x.verdict == self.pd_a_x.verdict

    @property
    def y_agrees(self) -> Optional[bool]:
        if self.hypothesis != "holds" or self.gpd_t_y.is_unknown or self.gpd_b_y.is_unknown:
            return None
        return self.gpd_t_y.is_finite == self.gpd_b_y.is_finite

    def to_dict(self) -> Dict:
        return {
            "x_part": {"gpd_T": self.gpd_t_x.verdict, "gpd_A": self.gpd_a_x.verdict,
                       "pd_T": self.pd_t_x.verdict, "pd_A": self.pd_a_x.verdict, "agree": self.x_agrees},
            "y_part": {"hypothesis": self.hypothesis, "gpd_T": self.gpd_t_y.verdict,
                       "gpd_B": self.gpd_b_y.verdict, "agree": self.y_agrees},
        }


def _tensor_gpd_condition(tm: TriMatAlgebra, bound: int) -> ConditionVerdict:
    """Gpd_A(M (x)_B G) < infinity for G in the Gorenstein projective test set of B."""
    details, statuses = [], []
    for G in gproj_test_set(tm.B, bound):
        value = gpd(tensor(tm.M, G).module, bound)
        details.append({"module": G.name, "gpd_A": value.verdict})
        statuses.append(dim_status(value))
    return ConditionVerdict(conjunction(statuses), details, note=f"test set of size {len(details)}")


def triple_gpd_transfer(tm: TriMatAlgebra, X: Module, Y: Module, bound: int = DEFAULT_BOUND,
                        compatibility: Optional[CompatibilityVerdict] = None) -> TransferReport:
    """Compare Gpd_T(X, 0) with Gpd_A X, and finiteness of Gpd_T(0, Y) with that of Gpd_B Y.

    Raises:
        HypothesisUnmetError: when M is not compatible
    """
    compat = _require_compatible(tm, bound, compatibility)
    zero_a, zero_b = Module.zero(tm.A), Module.zero(tm.B)
    x_triple = TripleModule(tm, X, zero_b, np.zeros((X.dim, 0), dtype=np.int64), name=f"({X.name},0)")
    y_triple = TripleModule(tm, zero_a, Y, np.zeros((0, tensor(tm.M, Y).dim), dtype=np.int64),
                            name=f"(0,{Y.name})")
    x_module, y_module = triple_to_module(x_triple), triple_to_module(y_triple)
    hypothesis = conjunction([_compat_status(compat), _tensor_gpd_condition(tm, bound).status])
    report = TransferReport(gpd(x_module, bound), gpd(X, bound), pd(x_module, bound), pd(X, bound), hypothesis,
                            gpd(y_module, bound), gpd(Y, bound))
    if not report.x_agrees:
        logger.error(f"Gpd of ({X.name}, 0) over T differs from Gpd of {X.name} over A")
    return report


# corner reductions

def _gorenstein_status(R: FDAlgebra, bound: int) -> ConditionVerdict:
    verdict = gorenstein_check(R, bound)
    status = {"yes": "holds", "no": "fails"}.get(verdict.status, "inconclusive")
    return ConditionVerdict(status, [verdict.to_dict()])


def _dim_condition(value: DimValue, label: str) -> ConditionVerdict:
    return ConditionVerdict(dim_status(value), [{label: value.verdict}])


@dataclass
class ReductionReport:
    """Hypotheses of the reduction of T to one of its diagonal corners, and what they grant."""
    corner: str
    compatibility: CompatibilityVerdict
    defect_conditions: Dict[str, ConditionVerdict]
    full_conditions: Dict[str, ConditionVerdict]
    defect_equivalence: str
    full_diagram: str
    transfers: Dict[str, Dict] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        grants = []
        if self.defect_equivalence == "holds":
            grants.append(f"the Gorenstein defect categories of T and {self.corner} are triangle-equivalent")
        if self.full_diagram == "holds":
            grants.append(f"singularity, Gorenstein projective stable and defect categories of T and "
                          f"{self.corner} are compatibly equivalent")
        return {
            "corner": self.corner,
            "compatibility": self.compatibility.to_dict(),
            "conditions": {
                "defect": {k: v.to_dict() for k, v in self.defect_conditions.items()},
                "full": {k: v.to_dict() for k, v in self.full_conditions.items()},
            },
            "conclusions": {
                "defect_equivalence": self.defect_equivalence,
                "full_diagram": self.full_diagram,
                "grants": grants,
                "scope": "hypotheses evaluated on finite test sets",
            },
            "transfers": self.transfers,
        }


def _transfers(R: FDAlgebra, label: str, defect: str, full: str, bound: int) -> Dict[str, Dict]:
    out: Dict[str, Dict] = {}
    if defect == "holds":
        status = gorenstein_check(R, bound).status
        out["gorenstein"] = {"statement": f"T is Gorenstein iff {label} is", label: status, "T": status}
    if full == "holds":
        status = cm_free_check(R, bound).verdict
        out["cm_free"] = {"statement": f"T is CM-free iff {label} is", label: status, "T": status}
    return out


def check_corner_a_reduction(tm: TriMatAlgebra, bound: int = DEFAULT_BOUND,
                             compatibility: Optional[CompatibilityVerdict] = None) -> ReductionReport:
    """Reduction of T to A.

    Defect equivalence needs B Gorenstein and Gpd_A(M (x)_B G) finite on Gproj B;
    the full diagram needs gldim B and pd_A M finite and the same Gpd condition.

    Raises:
        HypothesisUnmetError: when M is not compatible
    """
    compat = _require_compatible(tm, bound, compatibility)
    tensor_gpd = _tensor_gpd_condition(tm, bound)
    defect_conditions = {"b_gorenstein": _gorenstein_status(tm.B, bound), "tensor_gpd": tensor_gpd}
    full_conditions = {
        "b_global_dim": _dim_condition(global_dim(tm.B, bound), "gldim_B"),
        "pd_a_m": _dim_condition(pd(tm.m_left, bound), "pd_A"),
        "tensor_gpd": tensor_gpd,
    }
    defect = conjunction([_compat_status(compat)] + [c.status for c in defect_conditions.values()])
    full = conjunction([_compat_status(compat)] + [c.status for c in full_conditions.values()])
    logger.info(f"Reduction to A: defect equivalence {defect}, full diagram {full}")
    return ReductionReport("A", compat, defect_conditions, full_conditions, defect, full,
                           _transfers(tm.A, "A", defect, full, bound))


def check_corner_b_reduction(tm: TriMatAlgebra, bound: int = DEFAULT_BOUND,
                             compatibility: Optional[CompatibilityVerdict] = None) -> ReductionReport:
    """Reduction of T to B: defect equivalence iff A is Gorenstein, full diagram iff gldim A < infinity.

    Raises:
        HypothesisUnmetError: when M is not compatible
    """
    compat = _require_compatible(tm, bound, compatibility)
    defect_conditions = {"a_gorenstein": _gorenstein_status(tm.A, bound)}
    full_conditions = {"a_global_dim": _dim_condition(global_dim(tm.A, bound), "gldim_A")}
    defect = conjunction([_compat_status(compat), defect_conditions["a_gorenstein"].status])
    full = conjunction([_compat_status(compat), full_conditions["a_global_dim"].status])
    logger.info(f"Reduction to B: defect equivalence {defect}, full diagram {full}")
    return ReductionReport("B", compat, defect_conditions, full_conditions, defect, full,
                           _transfers(tm.B, "B", defect, full, bound))


# corner modules and projectives

def _coordinate_module(algebra: FDAlgebra, mats: np.ndarray, start: int, coords: np.ndarray) -> Module:
    action = mats[start:start + algebra.dim][:, coords[:, None], coords[None, :]]
    return Module(algebra, action)


def corner_module_identities(tm: TriMatAlgebra) -> List[Dict]:
    """T e_A = A, T e_B = M + B, e_A T = A + M and e_B T = B as one-sided corner modules.

    Each identification is the identity on the block coordinates of T and is
    checked to be an isomorphism of modules.
    """
    T = tm.T
    sa, sm, sb = tm.offsets
    a_idx = np.arange(sa.start, sa.stop)
    m_idx = np.arange(sm.start, sm.stop)
    b_idx = np.arange(sb.start, sb.stop)
    A_op, B_op = tm.A.opposite(), tm.B.opposite()
    cases = [
        ("T e_A = A as right A-modules", _coordinate_module(A_op, T.right_mats, sa.start, a_idx),
         Module.regular(A_op)),
        ("T e_B = M + B as right B-modules",
         _coordinate_module(B_op, T.right_mats, sb.start, np.concatenate([m_idx, b_idx])),
         direct_sum([tm.m_right, Module.regular(B_op)])[0]),
        ("e_A T = A + M as left A-modules",
         _coordinate_module(tm.A, T.left_mats, sa.start, np.concatenate([a_idx, m_idx])),
         direct_sum([Module.regular(tm.A), tm.m_left])[0]),
        ("e_B T = B as left B-modules", _coordinate_module(tm.B, T.left_mats, sb.start, b_idx),
         Module.regular(tm.B)),
    ]
    results = []
    for label, restricted, expected in cases:
        iso = Morphism(restricted, expected, restricted.field.identity(restricted.dim))
        holds = restricted.dim == expected.dim and iso.is_homomorphism()
        results.append({"identity": label, "dim": restricted.dim, "holds": bool(holds)})
        if not holds:
            logger.error(f"Corner identity failed: {label}")
    return results


def projective_triples(tm: TriMatAlgebra) -> List[Dict]:
    """The projective T-modules (P, 0, 0) and (M (x) Q, Q, id), matched against T e_v."""
    f = tm.T.field
    zero_a, zero_b = Module.zero(tm.A), Module.zero(tm.B)
    results = []
    for v, name in zip(tm.A.vertices, tm.vertices_a):
        P = projective(tm.A, v)
        triple = TripleModule(tm, P, zero_b, np.zeros((P.dim, 0), dtype=np.int64), name=f"({P.name},0)")
        results.append(_match_projective(tm, triple, name))
    for w, name in zip(tm.B.vertices, tm.vertices_b):
        Q = projective(tm.B, w)
        product = tensor(tm.M, Q)
        triple = TripleModule(tm, product.module, Q, f.identity(product.dim), name=f"(M(x){Q.name},{Q.name})")
        results.append(_match_projective(tm, triple, name))
    return results


def _match_projective(tm: TriMatAlgebra, triple: TripleModule, vertex: str) -> Dict:
    module = triple_to_module(triple)
    module.validate()
    verdict = is_isomorphic(module, projective(tm.T, vertex))
    return {"triple": triple.name, "vertex": vertex, "projective": is_projective(module), "isomorphic": verdict.status}
