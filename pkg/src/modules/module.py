"""Left modules, module homomorphisms and bimodules as explicit action matrices."""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.fdalgebra import FDAlgebra
from src.linalg.field import PrimeField
from src.utils.errors import BimoduleError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class Module:
    """A finite-dimensional left module; ``action[i]`` is the matrix of b_i.

    Args:
        algebra: The acting algebra
        action: Array of shape (algebra.dim, d, d)
        name: Display name
        ambient: Optional matrix whose columns express the basis in a parent space
    """
    algebra: FDAlgebra
    action: np.ndarray
    name: str = ""
    ambient: Optional[np.ndarray] = None
    cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = self.algebra.dim
        self.action = np.asarray(self.action, dtype=np.int64) % self.field.p
        if self.action.ndim != 3 or self.action.shape[0] != n or self.action.shape[1] != self.action.shape[2]:
            raise ValidationError(f"Action of shape {self.action.shape} does not fit an algebra of dimension {n}")

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def __repr__(self) -> str:
        return f"Module({self.name or 'unnamed'}, dim={self.dim}, over {self.algebra.name or 'R'})"

    def act(self, x: np.ndarray) -> np.ndarray:
        """Matrix of the element x of the algebra."""
        return np.tensordot(x, self.action, axes=1) % self.field.p

    def validate(self) -> None:
        f = self.field
        d = self.dim
        if self.algebra.dim == 0:
            if d:
                raise ValidationError("The zero algebra only has the zero module")
            return
        if not np.array_equal(self.act(self.algebra.unit), f.identity(d)):
            raise ValidationError(f"Unit does not act as the identity on {self!r}")
        lhs = np.einsum("iab,jbc->ijac", self.action, self.action) % f.p
        rhs = np.einsum("ijk,kac->ijac", self.algebra.mult, self.action) % f.p
        if not np.array_equal(lhs, rhs):
            raise ValidationError(f"Action on {self!r} is not multiplicative")

    @classmethod
    def regular(cls, algebra: FDAlgebra) -> "Module":
        if "regular" not in algebra.cache:
            algebra.cache["regular"] = cls(algebra, algebra.left_mats.copy(), name=f"{algebra.name or 'R'}",
                                           ambient=algebra.field.identity(algebra.dim))
        return algebra.cache["regular"]

    @classmethod
    def zero(cls, algebra: FDAlgebra) -> "Module":
        return cls(algebra, np.zeros((algebra.dim, 0, 0), dtype=np.int64), name="0")

    @cached_property
    def vertex_frames(self) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
        """For each vertex v, (B_v, C_v): a basis of e_v M and the coordinate map M -> e_v M."""
        f = self.field
        frames = {}
        for v, e in self.algebra.idempotents.items():
            ev = self.act(e)
            basis = f.column_basis(ev)
            coords = f.matmul(f.left_inverse(basis), ev) if basis.shape[1] else np.zeros((0, self.dim), dtype=np.int64)
            frames[v] = (basis, coords)
        return frames

    def dimension_vector(self) -> Dict[str, int]:
        return {v: frame[0].shape[1] for v, frame in self.vertex_frames.items()}

    def restrict_action(self, basis: np.ndarray, coords: np.ndarray) -> np.ndarray:
        """Action on an invariant subspace or quotient: coords @ A(b_i) @ basis."""
        return np.einsum("ab,ibc,cd->iad", coords, self.action, basis) % self.field.p

    def span_closure(self, vectors: np.ndarray) -> np.ndarray:
        """Basis of the submodule generated by the given columns."""
        vectors = np.asarray(vectors, dtype=np.int64).reshape(self.dim, -1)
        if vectors.shape[1] == 0 or self.algebra.dim == 0:
            return np.zeros((self.dim, 0), dtype=np.int64)
        images = np.einsum("iab,bk->aik", self.action, vectors).reshape(self.dim, -1) % self.field.p
        return self.field.column_basis(images)

    def submodule(self, vectors: np.ndarray, name: str = "") -> Tuple["Module", "Morphism"]:
        """Submodule with basis the given independent columns (assumed invariant)."""
        f = self.field
        basis = np.asarray(vectors, dtype=np.int64).reshape(self.dim, -1) % f.p
        if basis.shape[1] == 0:
            sub = Module.zero(self.algebra)
        else:
            linv = f.left_inverse(basis)
            sub = Module(self.algebra, self.restrict_action(basis, linv), name=name)
        return sub, Morphism(sub, self, basis)

    def quotient(self, vectors: np.ndarray, name: str = "") -> Tuple["Module", "Morphism"]:
        """Quotient by the submodule spanned by the given columns, with its projection."""
        f = self.field
        projection, section = f.complement(np.asarray(vectors, dtype=np.int64).reshape(self.dim, -1))
        quot = Module(self.algebra, self.restrict_action(section, projection), name=name)
        return quot, Morphism(self, quot, projection)


@dataclass(eq=False)
class Morphism:
    """A module homomorphism given by a (target.dim x source.dim) matrix."""
    source: Module
    target: Module
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.dim, self.source.dim) % self.source.field.p

    @classmethod
    def identity(cls, module: Module) -> "Morphism":
        return cls(module, module, module.field.identity(module.dim))

    @classmethod
    def zero(cls, source: Module, target: Module) -> "Morphism":
        return cls(source, target, np.zeros((target.dim, source.dim), dtype=np.int64))

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other."""
        return Morphism(other.source, self.target, self.source.field.matmul(self.matrix, other.matrix))

    @property
    def rank(self) -> int:
        return self.source.field.rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def is_homomorphism(self) -> bool:
        f = self.source.field
        lhs = np.einsum("ab,ibc->iac", self.matrix, self.source.action) % f.p
        rhs = np.einsum("iab,bc->iac", self.target.action, self.matrix) % f.p
        return np.array_equal(lhs, rhs)

    def validate(self) -> None:
        self.source.algebra.require_same(self.target.algebra, "Morphism ends")
        if not self.is_homomorphism():
            raise ValidationError(f"Matrix is not a homomorphism {self.source!r} -> {self.target!r}")


def direct_sum(modules: Sequence[Module], name: str = "") -> Tuple[Module, List[np.ndarray], List[np.ndarray]]:
    """Direct sum with its injection and projection matrices."""
    if not modules:
        raise ValidationError("Direct sum of no modules needs an explicit algebra")
    algebra = modules[0].algebra
    for m in modules[1:]:
        algebra.require_same(m.algebra, "Summands")
    dims = [m.dim for m in modules]
    total = sum(dims)
    action = np.zeros((algebra.dim, total, total), dtype=np.int64)
    injections, projections = [], []
    offset = 0
    for m, d in zip(modules, dims):
        action[:, offset:offset + d, offset:offset + d] = m.action
        inj = np.zeros((total, d), dtype=np.int64)
        inj[offset:offset + d] = np.eye(d, dtype=np.int64)
        injections.append(inj)
        projections.append(inj.T.copy())
        offset += d
    label = name or "+".join(m.name or "?" for m in modules)
    return Module(algebra, action, name=label), injections, projections


@dataclass(eq=False)
class Bimodule:
    """An A-B-bimodule: left_action over A and right_action over B.

    ``right_action[j]`` is the matrix of m -> m b_j, so products compose as
    R(b b') = R(b') R(b).
    """
    left_algebra: FDAlgebra
    right_algebra: FDAlgebra
    left_action: np.ndarray
    right_action: np.ndarray
    name: str = "M"
    labels: Optional[List[str]] = None
    ambient: Optional[np.ndarray] = None

    def __post_init__(self):
        p = self.left_algebra.field.p
        self.left_action = np.asarray(self.left_action, dtype=np.int64) % p
        self.right_action = np.asarray(self.right_action, dtype=np.int64) % p
        if self.left_action.shape[1:] != self.right_action.shape[1:]:
            raise BimoduleError("Left and right actions act on spaces of different dimension")
        if self.labels is None:
            self.labels = [f"m{i}" for i in range(self.dim)]

    @property
    def dim(self) -> int:
        return self.left_action.shape[1]

    def as_left_module(self) -> Module:
        return Module(self.left_algebra, self.left_action, name=self.name)

    def as_right_module(self) -> Module:
        """The right B-module as a left module over B^op."""
        return Module(self.right_algebra.opposite(), self.right_action, name=f"{self.name}_B")

    def validate(self) -> None:
        p = self.left_algebra.field.p
        try:
            self.as_left_module().validate()
            self.as_right_module().validate()
        except ValidationError as e:
            raise BimoduleError(f"Bimodule {self.name}: {str(e)}") from e
        lhs = np.einsum("iab,jbc->ijac", self.left_action, self.right_action) % p
        rhs = np.einsum("jab,ibc->ijac", self.right_action, self.left_action) % p
        if not np.array_equal(lhs, rhs):
            raise BimoduleError(f"Left and right actions of {self.name} do not commute")
