"""Gorenstein projective modules: certified membership, dimensions and test sets.

A verdict of "yes" always carries a periodicity certificate whose periodic
complex passed the exactness audit; "no" always carries a nonzero Ext group
or a failed reflexivity check.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.algebra.fdalgebra import FDAlgebra
from src.homology.resolution import (DimValue, PeriodicityCertificate, Resolution, ext_from_resolution,
                                     min_resolution, pd)
from src.modules.functors import (dual, hom_dim, is_isomorphic, is_projective, is_reflexive, precompose_rank,
                                  projective, simples)
from src.modules.module import Module, Morphism
from src.utils.config import DEFAULT_BOUND
from src.utils.errors import InvariantViolation

logger = logging.getLogger(__name__)


@dataclass
class GprojVerdict:
    """Outcome of a Gorenstein projectivity check."""
    status: str
    reason: str = ""
    bound: Optional[int] = None
    certificate: Optional[PeriodicityCertificate] = None
    ext_witness: Optional[Tuple[int, int]] = None
    ext_window: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    @property
    def no(self) -> bool:
        return self.status == "no"

    def to_dict(self) -> Dict:
        out: Dict = {"verdict": self.status, "reason": self.reason}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.ext_witness is not None:
            out["ext_witness"] = {"degree": self.ext_witness[0], "dim": self.ext_witness[1]}
        if self.ext_window:
            out["ext_window"] = [list(item) for item in self.ext_window]
        return out


@dataclass
class AuditResult:
    exact: bool
    dual_exact: bool
    ranks: List[Dict[str, int]] = field(default_factory=list)


PeriodicMaps = Tuple[Dict[int, Module], Dict[int, Morphism], Dict[int, Morphism]]


def periodic_maps(res: Resolution) -> PeriodicMaps:
    """Terms and the outgoing and incoming differential at each term of one period.

    Over one period the complex is P_{j-1} <- ... <- P_i with the wrap map
    P_i -> P_{j-1} obtained from the witness Omega^i -> Omega^j.
    """
    cert = res.certificate
    if cert is None:
        raise ValueError("Resolution carries no periodicity certificate")
    f = res.target.field
    i, j = cert.start, cert.end
    terms = {k: res.covers[k].source for k in range(i, j)}
    wrap = Morphism(terms[i], terms[j - 1],
                    f.chain(res.inclusions[j].matrix, cert.witness.matrix, res.covers[i].matrix))
    outgoing = {i: wrap}
    incoming = {j - 1: wrap}
    for k in range(i + 1, j):
        d_k = Morphism(terms[k], terms[k - 1], res.differential(k))
        outgoing[k] = d_k
        incoming[k - 1] = d_k
    return terms, outgoing, incoming


def audit_periodic_complex(res: Resolution, N: Optional[Module] = None) -> AuditResult:
    """Exactness of the periodic complex of a certificate and of its Hom(-, N); N defaults to R."""
    f = res.target.field
    N = N if N is not None else Module.regular(res.target.algebra)
    terms, outgoing, incoming = periodic_maps(res)
    exact = dual_exact = True
    ranks = []
    for k in sorted(terms):
        out_map, in_map = outgoing[k], incoming[k]
        if f.matmul(out_map.matrix, in_map.matrix).any():
            exact = False
        r_out, r_in = out_map.rank, in_map.rank
        if r_out + r_in != terms[k].dim:
            exact = False
        h_out, h_in = precompose_rank(out_map, N), precompose_rank(in_map, N)
        if h_out + h_in != hom_dim(terms[k], N):
            dual_exact = False
        ranks.append({"degree": k, "rank_out": r_out, "rank_in": r_in, "hom_rank_out": h_out, "hom_rank_in": h_in})
    return AuditResult(exact, dual_exact, ranks)


def gproj_check(M: Module, bound: int = DEFAULT_BOUND, resolution: Optional[Resolution] = None) -> GprojVerdict:
    """Decide whether M is Gorenstein projective.

    Args:
        M: Module to check
        bound: Syzygy bound of the resolution
        resolution: A resolution of M to reuse

    Returns:
        "yes" with a periodicity certificate, "no" with an Ext or reflexivity
        witness, or "unknown" at the bound
    """
    if M.dim == 0:
        return GprojVerdict("yes", reason="zero module", bound=bound)
    res = resolution if resolution is not None else min_resolution(M, bound)
    if res.terminated and len(res.syzygies) <= 2:
        return GprojVerdict("yes", reason="projective", bound=bound)
    reg = Module.regular(M.algebra)
    window: List[Tuple[int, int]] = []
    for k in range(1, bound + 1):
        value = ext_from_resolution(res, reg, k)
        if value is None:
            break
        window.append((k, value))
        if value:
            return GprojVerdict("no", reason=f"Ext^{k}(M, R) != 0", bound=bound, ext_witness=(k, value),
                                ext_window=window)
    if not is_reflexive(M):
        return GprojVerdict("no", reason="evaluation M -> M^++ is not bijective", bound=bound, ext_window=window)
    if res.certificate is not None:
        audit = audit_periodic_complex(res)
        if not (audit.exact and audit.dual_exact):
            raise InvariantViolation(f"Periodic complex of {M!r} failed the exactness audit with vanishing Ext")
        return GprojVerdict("yes", reason="periodic resolution with vanishing Ext", bound=bound,
                            certificate=res.certificate, ext_window=window)
    return GprojVerdict("unknown", reason="no periodicity within bound", bound=bound, ext_window=window)


def gpd(M: Module, bound: int = DEFAULT_BOUND) -> DimValue:
    """Gorenstein projective dimension.

    Finite values are the largest k with Ext^k(M, R) != 0, certified by a
    Gorenstein projective syzygy. Infinite is certified by a periodic tail
    whose cycle modules are not Gorenstein projective.
    """
    if M.dim == 0:
        return DimValue.finite(0)
    res = min_resolution(M, bound)
    if res.terminated:
        value = pd(M, bound)
        return DimValue.finite(value.value, note="finite projective dimension")
    cert = res.certificate
    if cert is None:
        return DimValue.unknown(bound)
    reg = Module.regular(M.algebra)
    i, j = cert.start, cert.end
    exts = {k: ext_from_resolution(res, reg, k) for k in range(1, j + 1)}
    tail = [k for k in range(i + 1, j + 1) if exts[k]]
    if tail:
        return DimValue.infinite(cert, note=f"Ext^{tail[0]}(M, R) != 0 inside the periodic tail")
    n = max([k for k in range(1, i + 1) if exts[k]], default=0)
    verdict = gproj_check(res.syzygies[n], bound, resolution=res.tail(n))
    if verdict.yes:
        return DimValue.finite(n, note=f"Omega^{n} is Gorenstein projective")
    if verdict.no:
        return DimValue.infinite(cert, note=f"Omega^{i} is not Gorenstein projective: {verdict.reason}")
    return DimValue.unknown(bound)


def gproj_test_set(R: FDAlgebra, bound: int = DEFAULT_BOUND) -> List[Module]:
    """Indecomposable projectives plus the distinct certified Gorenstein projective syzygies of simples."""
    key = ("gproj_test_set", bound)
    if key in R.cache:
        return R.cache[key]
    members: List[Module] = [projective(R, v) for v in R.vertices]
    reg = Module.regular(R)
    for S in simples(R):
        res = min_resolution(S, bound)
        cert = res.certificate
        if cert is None:
            continue
        i, j = cert.start, cert.end
        exts = {k: ext_from_resolution(res, reg, k) for k in range(1, j + 1)}
        if any(exts[k] for k in range(i + 1, j + 1)):
            continue
        first = max([k for k in range(1, i + 1) if exts[k]], default=0)
        for n in range(first, j):
            omega = res.syzygies[n]
            if omega.dim == 0 or is_projective(omega):
                continue
            if any(is_isomorphic(omega, other).yes for other in members):
                continue
            verdict = gproj_check(omega, bound, resolution=res.tail(n))
            if verdict.yes:
                omega.name = omega.name or f"Omega^{n}({S.name})"
                members.append(omega)
    logger.debug(f"Test set of {R!r}: {[m.name for m in members]}")
    R.cache[key] = members
    return members


@dataclass
class CmFreeVerdict:
    status: str
    reason: str
    test_set_size: int = 0
    witness: str = ""

    @property
    def verdict(self) -> str:
        return {"certified": "yes", "refuted": "no", "evidence": "holds"}[self.status]

    def to_dict(self) -> Dict:
        out: Dict = {"verdict": self.verdict, "status": self.status, "reason": self.reason}
        if self.status == "evidence":
            out["scope"] = f"test set of size {self.test_set_size}"
        if self.witness:
            out["witness"] = self.witness
        return out


def cm_free_check(R: FDAlgebra, bound: int = DEFAULT_BOUND) -> CmFreeVerdict:
    """Is every Gorenstein projective module projective?"""
    if R.is_semisimple():
        return CmFreeVerdict("certified", "semisimple")
    if R.radical_square_zero() and R.is_connected() and not is_projective(dual(Module.regular(R))):
        return CmFreeVerdict("certified", "connected, radical square zero and not self-injective")
    members = gproj_test_set(R, bound)
    for member in members:
        if not is_projective(member):
            return CmFreeVerdict("refuted", "non-projective Gorenstein projective module", len(members), member.name)
    return CmFreeVerdict("evidence", "every test-set member is projective", len(members))


def gorenstein_by_gpd(R: FDAlgebra, bound: int = DEFAULT_BOUND) -> Tuple[str, Dict[str, DimValue]]:
    """R is Gorenstein iff every simple module has finite Gorenstein projective dimension."""
    values = {S.name: gpd(S, bound) for S in simples(R)}
    if any(v.is_infinite for v in values.values()):
        return "no", values
    if all(v.is_finite for v in values.values()):
        return "yes", values
    return "unknown", values
