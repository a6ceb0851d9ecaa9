"""Idempotent recollement data: Schur functors, the quotient R/ReR and the defect conditions.

For an idempotent e of R with corner algebra C = eRe:
    S = e(-) : R-mod -> C-mod
    T = Re (x)_C - : C-mod -> R-mod (left adjoint of S)
    L = Hom_C(eR, -) : C-mod -> R-mod (right adjoint of S)
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.fdalgebra import FDAlgebra, corner, zero_algebra
from src.gorenstein.gproj import gpd, gproj_test_set
from src.homology.resolution import DimValue, min_resolution, pd, tor
from src.modules.functors import TensorProduct, hom_space, simples, tensor
from src.modules.module import Bimodule, Module, Morphism
from src.utils.config import DEFAULT_BOUND
from src.utils.errors import InvariantViolation, ValidationError

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class Idempotent:
    """The idempotent e = sum of the vertex idempotents of ``vertices``."""
    algebra: FDAlgebra
    vertices: Sequence[str]

    def __post_init__(self):
        self.vertices = tuple(dict.fromkeys(self.vertices))
        if not self.vertices:
            raise ValidationError("An idempotent needs at least one vertex")
        self.vector = self.algebra.idempotent_sum(self.vertices)
        if not np.array_equal(self.algebra.multiply(self.vector, self.vector), self.vector):
            raise ValidationError(f"e = {'+'.join(self.vertices)} is not idempotent")

    @cached_property
    def corner(self) -> FDAlgebra:
        return corner(self.algebra, self.vertices)

    @property
    def embedding(self) -> np.ndarray:
        return self.corner.ambient[1]

    @cached_property
    def left_part(self) -> Bimodule:
        """eR as a C-R-bimodule."""
        R, f = self.algebra, self.algebra.field
        basis = f.column_basis(R.left_matrix(self.vector))
        linv = f.left_inverse(basis)
        emb_left = np.einsum("ia,ixy->axy", self.embedding, R.left_mats) % f.p
        left = np.einsum("ux,axy,yv->auv", linv, emb_left, basis) % f.p
        right = np.einsum("ux,bxy,yv->buv", linv, R.right_mats, basis) % f.p
        return Bimodule(self.corner, R, left, right, name="eR", ambient=basis)

    @cached_property
    def right_part(self) -> Bimodule:
        """Re as an R-C-bimodule."""
        R, f = self.algebra, self.algebra.field
        basis = f.column_basis(R.right_matrix(self.vector))
        linv = f.left_inverse(basis)
        emb_right = np.einsum("ia,ixy->axy", self.embedding, R.right_mats) % f.p
        left = np.einsum("ux,bxy,yv->buv", linv, R.left_mats, basis) % f.p
        right = np.einsum("ux,axy,yv->auv", linv, emb_right, basis) % f.p
        return Bimodule(R, self.corner, left, right, name="Re", ambient=basis)


def _restrict_to_corner(e: Idempotent, M: Module) -> Module:
    f = M.field
    basis = f.column_basis(M.act(e.vector))
    if basis.shape[1] == 0:
        return Module.zero(e.corner)
    linv = f.left_inverse(basis)
    embedded = np.einsum("ia,ixy->axy", e.embedding, M.action) % f.p
    action = np.einsum("ux,axy,yv->auv", linv, embedded, basis) % f.p
    return Module(e.corner, action, name=f"e{M.name}" if M.name else "", ambient=basis)


def schur_S(e: Idempotent, M: Module) -> Module:
    """eM as a module over eRe; ``ambient`` holds the basis of eM inside M."""
    e.algebra.require_same(M.algebra, "Schur restriction")
    return _restrict_to_corner(e, M)


def schur_S_morphism(e: Idempotent, phi: Morphism) -> Morphism:
    f = phi.source.field
    src, tgt = schur_S(e, phi.source), schur_S(e, phi.target)
    if tgt.dim == 0 or src.dim == 0:
        return Morphism.zero(src, tgt)
    return Morphism(src, tgt, f.chain(f.left_inverse(tgt.ambient), phi.matrix, src.ambient))


def schur_T_product(e: Idempotent, G: Module) -> TensorProduct:
    e.corner.require_same(G.algebra, "Schur induction")
    return tensor(e.right_part, G)


def schur_T(e: Idempotent, G: Module) -> Module:
    """Re (x)_C G as an R-module; the counit eT(G) ~ G is verified."""
    product = schur_T_product(e, G)
    counit = schur_T_counit(e, G, product)
    if not counit.is_isomorphism():
        raise InvariantViolation(f"G -> e(Re (x) G) is not an isomorphism for {G!r}")
    return product.module


def schur_T_counit(e: Idempotent, G: Module, product: Optional[TensorProduct] = None) -> Morphism:
    """The map G -> e(Re (x)_C G), g -> e (x) g."""
    f = G.field
    product = product or schur_T_product(e, G)
    TG = product.module
    eTG = schur_S(e, TG)
    re_coords = f.solve(e.right_part.ambient, e.vector)
    big = np.kron(re_coords.reshape(-1, 1), np.eye(G.dim, dtype=np.int64))
    into_t = f.matmul(product.projection, big)
    if eTG.dim == 0:
        return Morphism(G, eTG, np.zeros((0, G.dim), dtype=np.int64))
    witness = Morphism(G, eTG, f.matmul(f.left_inverse(eTG.ambient), into_t))
    witness.validate()
    return witness


def _hom_module(e: Idempotent, G: Module) -> Tuple[Module, List[Morphism]]:
    f = G.field
    R = e.algebra
    eR = e.left_part.as_left_module()
    basis = hom_space(eR, G)
    t = len(basis)
    action = np.zeros((R.dim, t, t), dtype=np.int64)
    if t:
        stacked = np.column_stack([h.matrix.ravel() for h in basis])
        for b in range(R.dim):
            images = np.column_stack([f.matmul(h.matrix, e.left_part.right_action[b]).ravel() for h in basis])
            coords = f.solve_matrix(stacked, images)
            if coords is None:
                raise InvariantViolation("Hom_C(eR, G) is not closed under the R-action")
            action[b] = coords
    module = Module(R, action, name=f"L({G.name})" if G.name else "")
    return module, basis


def schur_L(e: Idempotent, G: Module) -> Module:
    """Hom_C(eR, G) with (b f)(x) = f(x b); the unit eL(G) ~ G is verified."""
    e.corner.require_same(G.algebra, "Schur coinduction")
    hom = _hom_module(e, G)
    unit = schur_L_unit(e, G, hom)
    module = hom[0]
    if not unit.is_isomorphism():
        raise InvariantViolation(f"e Hom_C(eR, G) -> G is not an isomorphism for {G!r}")
    return module


def schur_L_unit(e: Idempotent, G: Module, hom: Optional[Tuple[Module, List[Morphism]]] = None) -> Morphism:
    """The map e L(G) -> G, f -> f(e)."""
    f = G.field
    module, basis = hom or _hom_module(e, G)
    eLG = schur_S(e, module)
    if eLG.dim == 0:
        return Morphism(eLG, G, np.zeros((G.dim, 0), dtype=np.int64))
    e_coords = f.solve(e.left_part.ambient, e.vector)
    evaluations = np.column_stack([f.matmul(h.matrix, e_coords) for h in basis])
    witness = Morphism(eLG, G, f.matmul(evaluations, eLG.ambient))
    witness.validate()
    return witness


@dataclass(eq=False)
class QuotientAlgebra:
    """R/ReR with the projection R -> R/ReR and a linear section."""
    algebra: FDAlgebra
    parent: FDAlgebra
    projection: np.ndarray
    section: np.ndarray

    def inflate(self, N: Module) -> Module:
        """N viewed as an R-module annihilated by ReR."""
        self.algebra.require_same(N.algebra, "Inflation")
        action = np.einsum("ai,axy->ixy", self.projection, N.action) % self.parent.field.p
        return Module(self.parent, action.reshape(self.parent.dim, N.dim, N.dim), name=N.name)


def quotient_inflation(e: Idempotent) -> QuotientAlgebra:
    """The quotient algebra R/ReR; e = 1 gives the zero algebra."""
    R, f = e.algebra, e.algebra.field
    n = R.dim
    e_left = R.left_matrix(e.vector)
    spans = np.einsum("ixy,yz->xiz", R.left_mats, e_left).reshape(n, -1) % f.p
    ideal = f.column_basis(spans)
    rest = [v for v in R.vertices if v not in e.vertices]
    name = f"{R.name or 'R'}/<{','.join(e.vertices)}>"
    if ideal.shape[1] == n:
        return QuotientAlgebra(zero_algebra(f, name), R, np.zeros((0, n), dtype=np.int64),
                               np.zeros((n, 0), dtype=np.int64))
    projection, section = f.complement(ideal)
    mult = np.einsum("ia,jb,ijk,ck->abc", section, section, R.mult, projection) % f.p
    labels = []
    for a in range(section.shape[1]):
        nz = np.flatnonzero(section[:, a])
        labels.append(R.labels[int(nz[0])] if nz.size == 1 else f"q{a}")
    quotient = FDAlgebra(field=f, labels=labels, mult=mult, unit=f.matmul(projection, R.unit),
                         idempotents={v: f.matmul(projection, R.idempotents[v]) for v in rest},
                         radical=f.column_basis(f.matmul(projection, R.radical)), name=name)
    return QuotientAlgebra(quotient, R, projection, section)


# defect conditions

@dataclass
class ConditionVerdict:
    """A condition evaluated over a finite test set: holds, fails or inconclusive."""
    status: str
    details: List[Dict] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> Dict:
        out: Dict = {"verdict": self.status, "details": self.details}
        if self.note:
            out["note"] = self.note
        return out


def conjunction(statuses: Sequence[str]) -> str:
    if any(s == "fails" for s in statuses):
        return "fails"
    if any(s == "inconclusive" for s in statuses):
        return "inconclusive"
    return "holds"


def dim_status(value: DimValue) -> str:
    return {"finite": "holds", "infinite": "fails"}.get(value.kind, "inconclusive")


def _finite_over(modules: Sequence[Module], measure, label: str) -> ConditionVerdict:
    details, statuses = [], []
    for module in modules:
        value = measure(module)
        details.append({"module": module.name, label: value.verdict})
        statuses.append(dim_status(value))
    return ConditionVerdict(conjunction(statuses), details, note=f"test set of size {len(modules)}")


def _tor_tail(right: Module, G: Module, bound: int) -> Tuple[str, Dict]:
    """Whether Tor_k^C(Re, G) vanishes for all large k.

    A terminated resolution gives zero above pd G. A periodic one repeats
    Tor_k for k > start with the period, so the degrees start+1 .. end
    decide every large k.
    """
    res = min_resolution(G, bound)
    detail: Dict = {"module": G.name}
    if res.terminated:
        detail.update(tail="zero", from_degree=max(len(res.syzygies) - 1, 1))
        return "holds", detail
    if not res.periodic:
        detail.update(tail="unknown", bound=bound)
        return "inconclusive", detail
    cert = res.certificate
    window = {k: tor(right, G, k, bound) for k in range(cert.start + 1, cert.end + 1)}
    detail["window"] = [{"degree": k, "dim": dim} for k, dim in window.items()]
    nonzero = [k for k, dim in window.items() if dim]
    if nonzero:
        detail.update(tail="nonzero", degree=nonzero[0], period=cert.period)
        return "fails", detail
    detail.update(tail="zero", from_degree=cert.start + 1)
    return "holds", detail


def tor_condition(e: Idempotent, bound: int = DEFAULT_BOUND) -> ConditionVerdict:
    """Tor_k^C(Re, G) = 0 for k large, for every G in the Gorenstein projective test set of C = eRe."""
    right = e.right_part.as_right_module()
    members = gproj_test_set(e.corner, bound)
    statuses, details = [], []
    for G in members:
        status, detail = _tor_tail(right, G, bound)
        statuses.append(status)
        details.append(detail)
    return ConditionVerdict(conjunction(statuses), details, note=f"test set of size {len(members)}")


def check_gpd_restriction(e: Idempotent, bound: int = DEFAULT_BOUND) -> ConditionVerdict:
    """Gpd_C(eF) < infinity for F in the Gorenstein projective test set of R."""
    return _finite_over(gproj_test_set(e.algebra, bound), lambda F: gpd(schur_S(e, F), bound), "gpd_eRe")


def check_gpd_induction(e: Idempotent, bound: int = DEFAULT_BOUND) -> ConditionVerdict:
    """Gpd_R(Re (x) G) < infinity for G in the Gorenstein projective test set of eRe."""
    return _finite_over(gproj_test_set(e.corner, bound), lambda G: gpd(schur_T(e, G), bound), "gpd_R")


def check_gorenstein_singularly_complete(e: Idempotent, bound: int = DEFAULT_BOUND) -> ConditionVerdict:
    """Every simple R/ReR-module has finite Gpd over R."""
    quotient = quotient_inflation(e)
    inflated = [quotient.inflate(S) for S in simples(quotient.algebra)]
    return _finite_over(inflated, lambda S: gpd(S, bound), "gpd_R")


def check_singularly_complete(e: Idempotent, bound: int = DEFAULT_BOUND) -> ConditionVerdict:
    """Every simple R/ReR-module has finite pd over R, and eR has finite pd over eRe."""
    quotient = quotient_inflation(e)
    inflated = [quotient.inflate(S) for S in simples(quotient.algebra)]
    simples_part = _finite_over(inflated, lambda S: pd(S, bound), "pd_R")
    e_r = e.left_part.as_left_module()
    value = pd(e_r, bound)
    details = simples_part.details + [{"module": "eR", "pd_eRe": value.verdict}]
    return ConditionVerdict(conjunction([simples_part.status, dim_status(value)]), details,
                            note=simples_part.note)


@dataclass
class SchurReport:
    vertices: List[str]
    corner_dim: int
    quotient_dim: int
    tor: ConditionVerdict
    restriction: ConditionVerdict
    induction: ConditionVerdict
    gorenstein_complete: ConditionVerdict
    singular_complete: ConditionVerdict
    defect_equivalence: str
    full_diagram: str

    def to_dict(self) -> Dict:
        return {
            "idempotent": list(self.vertices),
            "corner_dim": self.corner_dim,
            "quotient_dim": self.quotient_dim,
            "conditions": {
                "tor_vanishing": self.tor.to_dict(),
                "gpd_restriction": self.restriction.to_dict(),
                "gpd_induction": self.induction.to_dict(),
                "gorenstein_singularly_complete": self.gorenstein_complete.to_dict(),
                "singularly_complete": self.singular_complete.to_dict(),
            },
            "conclusions": {
                "defect_equivalence": self.defect_equivalence,
                "full_diagram": self.full_diagram,
                "scope": "conditions evaluated on finite test sets",
            },
        }


def _under_tor(tor_status: str, statuses: Sequence[str]) -> str:
    if tor_status != "holds":
        return "inconclusive"
    return conjunction(statuses)


def schur_report(e: Idempotent, bound: int = DEFAULT_BOUND) -> SchurReport:
    """Evaluate every condition and derive the two conclusions.

    The singularity categories of R and eRe are equivalent exactly when the
    Tor condition and the restriction, induction and Gorenstein-complete
    conditions hold; the full diagram of equivalences needs the strict
    singular-completeness condition instead of the Gorenstein one.
    """
    quotient = quotient_inflation(e)
    tor_verdict = tor_condition(e, bound)
    restriction = check_gpd_restriction(e, bound)
    induction = check_gpd_induction(e, bound)
    gorenstein_complete = check_gorenstein_singularly_complete(e, bound)
    singular_complete = check_singularly_complete(e, bound)
    defect = _under_tor(tor_verdict.status, [restriction.status, induction.status, gorenstein_complete.status])
    full = _under_tor(tor_verdict.status, [restriction.status, induction.status, singular_complete.status])
    logger.info(f"Idempotent {'+'.join(e.vertices)}: defect equivalence {defect}, full diagram {full}")
    return SchurReport(list(e.vertices), e.corner.dim, quotient.algebra.dim, tor_verdict, restriction, induction,
                       gorenstein_complete, singular_complete, defect, full)
