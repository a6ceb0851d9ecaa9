"""Bounded cochain complexes of modules, cones and projective replacements."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.algebra.fdalgebra import FDAlgebra
from src.gorenstein.gproj import gpd
from src.homology.resolution import DimValue
from src.modules.functors import projective_cover
from src.modules.module import Module, direct_sum
from src.utils.config import DEFAULT_BOUND
from src.utils.errors import InvariantViolation, ValidationError

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class ChainComplex:
    """A bounded cochain complex X^lo -> ... -> X^hi.

    ``differentials[k]`` is d^{lo+k} : X^{lo+k} -> X^{lo+k+1}; terms outside
    the stored range are zero.
    """
    algebra: FDAlgebra
    lo: int
    modules: List[Module]
    differentials: List[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        if len(self.differentials) != max(len(self.modules) - 1, 0):
            raise ValidationError(f"{len(self.modules)} terms need {len(self.modules) - 1} differentials, "
                                  f"got {len(self.differentials)}")
        p = self.algebra.field.p
        self.differentials = [np.asarray(d, dtype=np.int64).reshape(self.modules[k + 1].dim, self.modules[k].dim) % p
                              for k, d in enumerate(self.differentials)]

    @property
    def hi(self) -> int:
        return self.lo + len(self.modules) - 1

    def term(self, n: int) -> Module:
        if self.lo <= n <= self.hi:
            return self.modules[n - self.lo]
        return Module.zero(self.algebra)

    def d(self, n: int) -> np.ndarray:
        """d^n : X^n -> X^{n+1}."""
        if self.lo <= n < self.hi:
            return self.differentials[n - self.lo]
        return np.zeros((self.term(n + 1).dim, self.term(n).dim), dtype=np.int64)

    def validate(self) -> None:
        f = self.algebra.field
        for n in range(self.lo, self.hi):
            dn = self.d(n)
            src, tgt = self.term(n), self.term(n + 1)
            lhs = np.einsum("ab,ibc->iac", dn, src.action) % f.p
            rhs = np.einsum("iab,bc->iac", tgt.action, dn) % f.p
            if not np.array_equal(lhs, rhs):
                raise InvariantViolation(f"d^{n} is not a module homomorphism")
            if n + 1 < self.hi and f.matmul(self.d(n + 1), dn).any():
                raise InvariantViolation(f"d^{n + 1} d^{n} != 0")

    def shift(self, k: int = 1) -> "ChainComplex":
        """X[k]: (X[k])^n = X^{n+k} with differential (-1)^k d."""
        sign = -1 if k % 2 else 1
        return ChainComplex(self.algebra, self.lo - k, list(self.modules),
                            [sign * d for d in self.differentials])

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        """Termwise sum with block diagonal differentials."""
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        modules = [direct_sum([self.term(n), other.term(n)])[0] for n in range(lo, hi + 1)]
        diffs = []
        for n in range(lo, hi):
            a, b = self.d(n), other.d(n)
            block = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
            block[:a.shape[0], :a.shape[1]] = a
            block[a.shape[0]:, a.shape[1]:] = b
            diffs.append(block)
        return ChainComplex(self.algebra, lo, modules, diffs)


def stalk(M: Module, degree: int = 0) -> ChainComplex:
    return ChainComplex(M.algebra, degree, [M], [])


@dataclass(eq=False)
class ChainMap:
    """Components f^n : X^n -> Y^n; missing degrees are zero."""
    source: ChainComplex
    target: ChainComplex
    components: Dict[int, np.ndarray]

    def component(self, n: int) -> np.ndarray:
        if n in self.components:
            return self.components[n]
        return np.zeros((self.target.term(n).dim, self.source.term(n).dim), dtype=np.int64)

    def validate(self) -> None:
        f = self.source.algebra.field
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for n in range(lo, hi + 1):
            lhs = f.matmul(self.target.d(n), self.component(n))
            rhs = f.matmul(self.component(n + 1), self.source.d(n))
            if not np.array_equal(lhs, rhs):
                raise InvariantViolation(f"Chain map does not commute with the differentials in degree {n}")


def identity_map(X: ChainComplex) -> ChainMap:
    return ChainMap(X, X, {n: np.eye(X.term(n).dim, dtype=np.int64) for n in range(X.lo, X.hi + 1)})


def cone(phi: ChainMap) -> ChainComplex:
    """Mapping cone: Cone^n = X^{n+1} + Y^n with d = [[-d_X, 0], [f, d_Y]]."""
    X, Y = phi.source, phi.target
    p = X.algebra.field.p
    lo = min(X.lo - 1, Y.lo)
    hi = max(X.hi - 1, Y.hi)
    modules = []
    for n in range(lo, hi + 1):
        summed, _, _ = direct_sum([X.term(n + 1), Y.term(n)])
        modules.append(summed)
    diffs = []
    for n in range(lo, hi):
        dx, dy, fn = X.d(n + 1), Y.d(n), phi.component(n + 1)
        top = np.hstack([-dx, np.zeros((dx.shape[0], dy.shape[1]), dtype=np.int64)])
        bottom = np.hstack([fn, dy])
        diffs.append(np.vstack([top, bottom]) % p)
    return ChainComplex(X.algebra, lo, modules, diffs)


def homology(X: ChainComplex, n: int) -> Module:
    """H^n(X) = ker d^n / im d^{n-1}."""
    f = X.algebra.field
    term = X.term(n)
    ker_basis, _ = f.nullspace(X.d(n))
    kernel_module, _ = term.submodule(ker_basis)
    if kernel_module.dim == 0:
        return kernel_module
    image = f.column_basis(X.d(n - 1))
    coords = f.solve_matrix(ker_basis, image)
    if coords is None:
        raise InvariantViolation(f"Image of d^{n - 1} is not inside ker d^{n}")
    quotient, _ = kernel_module.quotient(coords, name=f"H^{n}")
    return quotient


def homology_degrees(X: ChainComplex) -> List[int]:
    return [n for n in range(X.lo, X.hi + 1) if homology(X, n).dim > 0]


def truncate_geq(X: ChainComplex, n: int) -> ChainComplex:
    """Brutal truncation keeping the terms in degrees >= n."""
    if n <= X.lo:
        return X
    if n > X.hi:
        return ChainComplex(X.algebra, n, [Module.zero(X.algebra)], [])
    k = n - X.lo
    return ChainComplex(X.algebra, n, X.modules[k:], X.differentials[k:])


def length(X: ChainComplex) -> int:
    """hi - lo over the nonzero terms; -1 for the zero complex."""
    nonzero = [n for n in range(X.lo, X.hi + 1) if X.term(n).dim > 0]
    if not nonzero:
        return -1
    return nonzero[-1] - nonzero[0]


def resolve_complex(X: ChainComplex, depth: int) -> Tuple[ChainComplex, ChainMap]:
    """Minimal projective complex P with a quasi-isomorphism onto X in degrees >= lo(X) - depth + 1.

    Built from the top degree down: P^n is the projective cover of the
    kernel E_n of (p, x) -> (phi^{n+1} p - d_X^n x, d_P^{n+1} p) on P^{n+1} + X^n.
    """
    R = X.algebra
    f = R.field
    zero = Module.zero(R)
    P: Dict[int, Module] = {X.hi + 1: zero, X.hi + 2: zero}
    d_p: Dict[int, np.ndarray] = {X.hi + 1: np.zeros((0, 0), dtype=np.int64)}
    comp: Dict[int, np.ndarray] = {X.hi + 1: np.zeros((X.term(X.hi + 1).dim, 0), dtype=np.int64)}
    bottom = X.lo - depth
    for n in range(X.hi, bottom - 1, -1):
        p_next, x_n = P[n + 1], X.term(n)
        summed, _, _ = direct_sum([p_next, x_n])
        upper = np.hstack([comp[n + 1], -X.d(n)])
        lower = np.hstack([d_p[n + 1], np.zeros((P[n + 2].dim, x_n.dim), dtype=np.int64)])
        condition = np.vstack([upper, lower]) % f.p
        ker_basis, _ = f.nullspace(condition)
        e_n, e_incl = summed.submodule(ker_basis)
        cover = projective_cover(e_n)
        to_sum = f.matmul(e_incl.matrix, cover.matrix)
        P[n] = cover.source
        d_p[n] = to_sum[:p_next.dim, :]
        comp[n] = to_sum[p_next.dim:, :]
    degrees = list(range(bottom, X.hi + 1))
    complex_p = ChainComplex(R, bottom, [P[n] for n in degrees], [d_p[n] for n in degrees[:-1]])
    phi = ChainMap(complex_p, X, {n: comp[n] for n in degrees})
    return complex_p, phi


@dataclass
class FgpVerdict:
    """Membership of a complex in the category generated by bounded complexes of Gproj modules."""
    status: str
    degree: Optional[int] = None
    gpd: Optional[DimValue] = None
    note: str = ""

    def to_dict(self) -> Dict:
        out: Dict = {"verdict": self.status}
        if self.degree is not None:
            out["cycle_degree"] = self.degree
        if self.gpd is not None:
            out["gpd"] = self.gpd.to_dict()
        if self.note:
            out["note"] = self.note
        return out


def in_fgp(X: ChainComplex, bound: int = DEFAULT_BOUND) -> FgpVerdict:
    """Decide whether X lies in the subcategory of complexes of finite Gorenstein projective dimension.

    With t one below the lowest nonzero homology, the answer is whether the
    cycle module Z^t of a projective replacement has finite Gpd.
    """
    degrees = homology_degrees(X)
    if not degrees:
        return FgpVerdict("yes", note="acyclic")
    t = degrees[0] - 1
    P, _ = resolve_complex(X, depth=2)
    f = X.algebra.field
    ker_basis, _ = f.nullspace(P.d(t))
    cycles, _ = P.term(t).submodule(ker_basis, name=f"Z^{t}")
    value = gpd(cycles, bound)
    status = {"finite": "yes", "infinite": "no"}.get(value.kind, "unknown")
    logger.debug(f"Cycle module Z^{t} of dimension {cycles.dim} has Gpd {value.verdict}")
    return FgpVerdict(status, degree=t, gpd=value)
