"""Minimal projective resolutions and the dimensions computed from them.

Ext and Tor are obtained by dimension shifting along the syzygies of a
minimal resolution. When two syzygies are isomorphic the resolution is
periodic from there on, which both certifies infinite projective dimension
and lets every degree be reduced into the computed window.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from src.algebra.fdalgebra import FDAlgebra
from src.modules.functors import (dual, hom_space, is_isomorphic, kernel, projective_cover, simples, tensor,
                                  tensor_morphism)
from src.modules.module import Module, Morphism
from src.utils.config import DEFAULT_BOUND, DEFAULT_SAMPLES, DEFAULT_SEED
from src.utils.errors import InvariantViolation

logger = logging.getLogger(__name__)


@dataclass
class PeriodicityCertificate:
    """An isomorphism witness from the start-th to the end-th syzygy."""
    start: int
    end: int
    witness: Morphism

    @property
    def period(self) -> int:
        return self.end - self.start

    def verify(self) -> bool:
        return self.witness.is_isomorphism() and self.witness.is_homomorphism()

    def shifted(self, n: int) -> "PeriodicityCertificate":
        return PeriodicityCertificate(self.start - n, self.end - n, self.witness)

    def to_dict(self) -> Dict:
        return {"start": self.start, "end": self.end, "period": self.period,
                "witness": self.witness.matrix.tolist()}


@dataclass(eq=False)
class Resolution:
    """A minimal projective resolution, truncated at termination, periodicity or the bound.

    ``syzygies[k]`` is the k-th syzygy (``syzygies[0]`` is the resolved module),
    ``covers[k]`` the projective cover P_k -> syzygies[k] and
    ``inclusions[k]`` the inclusion syzygies[k] -> P_{k-1} (None for k = 0).
    """
    target: Module
    bound: int
    syzygies: List[Module]
    covers: List[Morphism]
    inclusions: List[Optional[Morphism]]
    certificate: Optional[PeriodicityCertificate] = None
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def terms(self) -> List[Module]:
        return [c.source for c in self.covers]

    @property
    def terminated(self) -> bool:
        return self.syzygies[-1].dim == 0

    @property
    def periodic(self) -> bool:
        return self.certificate is not None

    def differential(self, k: int) -> np.ndarray:
        """d_k : P_k -> P_{k-1} for k >= 1."""
        f = self.target.field
        return f.matmul(self.inclusions[k].matrix, self.covers[k].matrix)

    def reduce_index(self, k: int) -> Optional[int]:
        """A computed degree carrying the same syzygy as degree k, or None.

        Degrees beyond a terminated resolution are returned unchanged; their
        syzygies are zero.
        """
        if k < len(self.syzygies) or self.terminated:
            return k
        if self.certificate is None:
            return None
        i, j = self.certificate.start, self.certificate.end
        d = j - i
        while k > j:
            k -= d
        return k

    def syzygy(self, k: int) -> Optional[Module]:
        idx = self.reduce_index(k)
        if idx is None:
            return None
        if idx >= len(self.syzygies):
            return Module.zero(self.target.algebra)
        return self.syzygies[idx]

    def tail(self, n: int) -> "Resolution":
        """The resolution of the n-th syzygy obtained by dropping the first n steps."""
        if n == 0:
            return self
        idx = self.reduce_index(n)
        if idx is None:
            raise ValueError(f"Degree {n} lies beyond the computed resolution")
        if idx >= len(self.syzygies):
            zero = Module.zero(self.target.algebra)
            return Resolution(zero, self.bound, [zero], [], [None])
        if self.certificate is not None and idx > self.certificate.start:
            return min_resolution(self.syzygies[idx], self.bound)
        cert = self.certificate.shifted(idx) if self.certificate is not None else None
        return Resolution(self.syzygies[idx], self.bound, self.syzygies[idx:], self.covers[idx:],
                          [None] + self.inclusions[idx + 1:], cert)

    def validate(self) -> None:
        f = self.target.field
        for k, cover in enumerate(self.covers):
            cover.validate()
            if not cover.is_surjective():
                raise InvariantViolation(f"Cover {k} is not surjective")
            incl = self.inclusions[k + 1]
            if incl is None:
                continue
            incl.validate()
            if f.matmul(cover.matrix, incl.matrix).any():
                raise InvariantViolation(f"Syzygy {k + 1} is not inside the kernel of cover {k}")
            if incl.source.dim + self.syzygies[k].dim != cover.source.dim:
                raise InvariantViolation(f"Syzygy {k + 1} is not the whole kernel of cover {k}")
        if self.certificate is not None and not self.certificate.verify():
            raise InvariantViolation("Periodicity witness is not an isomorphism")


def _find_period(syzygies: List[Module], samples: int, seed: int) -> Optional[PeriodicityCertificate]:
    """Compare the newest syzygy with every earlier one of the same dimension vector."""
    j = len(syzygies) - 1
    newest = syzygies[j]
    vector = newest.dimension_vector()
    for i in range(j):
        if syzygies[i].dim != newest.dim or syzygies[i].dimension_vector() != vector:
            continue
        verdict = is_isomorphic(syzygies[i], newest, samples=samples, seed=seed)
        if verdict.yes:
            return PeriodicityCertificate(i, j, verdict.witness)
    return None


def min_resolution(M: Module, bound: int = DEFAULT_BOUND, samples: int = DEFAULT_SAMPLES,
                   seed: int = DEFAULT_SEED) -> Resolution:
    """Minimal projective resolution of M with at most ``bound`` syzygy steps.

    Stops when a syzygy vanishes, when the newest syzygy is isomorphic to an
    earlier one, or after ``bound`` steps. Results are cached on the module.

    Args:
        M: Module to resolve
        bound: Maximum number of syzygies computed
        samples: Random combinations tried per isomorphism test
        seed: Seed of the isomorphism search

    Returns:
        The (possibly truncated) resolution
    """
    key = ("resolution", bound, samples, seed)
    if key in M.cache:
        return M.cache[key]
    syzygies = [M]
    covers: List[Morphism] = []
    inclusions: List[Optional[Morphism]] = [None]
    certificate = None
    for n in range(bound):
        current = syzygies[n]
        if current.dim == 0:
            break
        cover = projective_cover(current)
        omega, incl = kernel(cover)
        omega.name = f"Omega^{n + 1}({M.name})" if M.name else ""
        covers.append(cover)
        syzygies.append(omega)
        inclusions.append(incl)
        if omega.dim == 0:
            break
        certificate = _find_period(syzygies, samples, seed)
        if certificate is not None:
            logger.debug(f"Resolution of {M!r} is periodic: Omega^{certificate.start} ~ Omega^{certificate.end}")
            break
    resolution = Resolution(M, bound, syzygies, covers, inclusions, certificate)
    M.cache[key] = resolution
    return resolution


@dataclass
class DimValue:
    """A homological dimension: finite with a value, infinite with a certificate, or unknown."""
    kind: str
    value: Optional[int] = None
    certificate: Optional[PeriodicityCertificate] = None
    bound: Optional[int] = None
    note: str = ""

    @classmethod
    def finite(cls, value: int, note: str = "") -> "DimValue":
        return cls("finite", value=value, note=note)

    @classmethod
    def infinite(cls, certificate: Optional[PeriodicityCertificate] = None, note: str = "") -> "DimValue":
        return cls("infinite", certificate=certificate, note=note)

    @classmethod
    def unknown(cls, bound: int, note: str = "") -> "DimValue":
        return cls("unknown", bound=bound, note=note)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    @property
    def verdict(self) -> str:
        return f"finite:{self.value}" if self.is_finite else self.kind

    def to_dict(self) -> Dict:
        out: Dict = {"verdict": self.verdict}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.bound is not None:
            out["bound"] = self.bound
        if self.note:
            out["note"] = self.note
        return out


def combine_max(values: List[DimValue]) -> DimValue:
    """Supremum of dimensions: infinite wins, then unknown, else the largest finite value."""
    for v in values:
        if v.is_infinite:
            return v
    for v in values:
        if v.is_unknown:
            return v
    return DimValue.finite(max((v.value for v in values), default=0))


def pd(M: Module, bound: int = DEFAULT_BOUND) -> DimValue:
    """Projective dimension; the zero module gets finite:0."""
    res = min_resolution(M, bound)
    if res.terminated:
        return DimValue.finite(max(len(res.syzygies) - 2, 0))
    if res.certificate is not None:
        return DimValue.infinite(res.certificate)
    return DimValue.unknown(bound)


def ext_from_resolution(res: Resolution, N: Module, k: int) -> Optional[int]:
    """dim Ext^k(M, N) from a resolution of M, or None beyond the computed window."""
    idx = res.reduce_index(k)
    if idx is None:
        return None
    if idx >= len(res.syzygies):
        return 0
    key = ("ext", id(N), idx)
    if key in res.cache:
        return res.cache[key][1]
    if idx == 0:
        value = len(hom_space(res.target, N))
    else:
        omega = res.syzygies[idx]
        if omega.dim == 0:
            value = 0
        else:
            f = N.field
            incl = res.inclusions[idx]
            homs_p = hom_space(incl.target, N)
            n_omega = len(hom_space(omega, N))
            if homs_p:
                restricted = np.column_stack([f.matmul(h.matrix, incl.matrix).ravel() for h in homs_p])
                value = n_omega - f.rank(restricted)
            else:
                value = n_omega
    res.cache[key] = (N, value)
    return value


def ext(M: Module, N: Module, k: int, bound: int = DEFAULT_BOUND) -> Optional[int]:
    """dim Ext^k_R(M, N), or None when degree k cannot be reached within the bound."""
    M.algebra.require_same(N.algebra, "Ext arguments")
    return ext_from_resolution(min_resolution(M, bound), N, k)


def ext_profile(res: Resolution, N: Module, upto: int, start: int = 1) -> List[Optional[int]]:
    return [ext_from_resolution(res, N, k) for k in range(start, upto + 1)]


def tor(W: Module, N: Module, k: int, bound: int = DEFAULT_BOUND) -> Optional[int]:
    """dim Tor_k(W, N) for W a right module (a module over the opposite algebra)."""
    res = min_resolution(N, bound)
    idx = res.reduce_index(k)
    if idx is None:
        return None
    if idx >= len(res.syzygies):
        return 0
    if idx == 0:
        return tensor(W, N).dim
    omega = res.syzygies[idx]
    if omega.dim == 0:
        return 0
    incl = res.inclusions[idx]
    source = tensor(W, omega)
    target = tensor(W, incl.target)
    return source.dim - N.field.rank(tensor_morphism(source, target, incl.matrix))


def injective_dim(M: Module, bound: int = DEFAULT_BOUND) -> DimValue:
    """id M = pd of the dual over the opposite algebra."""
    return pd(dual(M), bound)


def global_dim(R: FDAlgebra, bound: int = DEFAULT_BOUND) -> DimValue:
    return combine_max([pd(S, bound) for S in simples(R)])


@dataclass
class GorensteinVerdict:
    status: str
    left: DimValue
    right: DimValue

    def to_dict(self) -> Dict:
        return {"verdict": self.status, "injective_dim_left": self.left.to_dict(),
                "injective_dim_right": self.right.to_dict()}


def gorenstein_check(R: FDAlgebra, bound: int = DEFAULT_BOUND) -> GorensteinVerdict:
    """R is Gorenstein iff R has finite injective dimension on both sides."""
    left = injective_dim(Module.regular(R), bound)
    right = injective_dim(Module.regular(R.opposite()), bound)
    if left.is_infinite or right.is_infinite:
        status = "no"
    elif left.is_finite and right.is_finite:
        status = "yes"
    else:
        status = "unknown"
    return GorensteinVerdict(status, left, right)
