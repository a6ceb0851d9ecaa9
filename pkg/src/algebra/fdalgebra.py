"""Finite-dimensional basic algebras given by structure constants."""
import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.linalg.field import PrimeField
from src.utils.errors import AlgebraMismatchError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class FDAlgebra:
    """A basic finite-dimensional algebra over F_p.

    ``mult[i, j]`` holds the coordinates of ``b_i * b_j``. The idempotents form
    a complete set of primitive orthogonal idempotents indexed by vertex name,
    and the columns of ``radical`` span the Jacobson radical.

    Args:
        field: Coefficient field
        labels: Name of every basis element
        mult: Structure constants, shape (n, n, n)
        unit: Coordinates of 1
        idempotents: Vertex name -> coordinates of e_v, in vertex order
        radical: Columns spanning the radical, shape (n, r)
        name: Display name
        ambient: (parent algebra, embedding) when built as a corner
    """
    field: PrimeField
    labels: List[str]
    mult: np.ndarray
    unit: np.ndarray
    idempotents: Dict[str, np.ndarray]
    radical: np.ndarray
    name: str = ""
    ambient: Optional[Tuple["FDAlgebra", np.ndarray]] = None
    cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        p = self.field.p
        self.mult = np.asarray(self.mult, dtype=np.int64) % p
        self.unit = np.asarray(self.unit, dtype=np.int64) % p
        n = self.mult.shape[0]
        self.radical = np.asarray(self.radical, dtype=np.int64).reshape(n, -1) % p
        self.idempotents = {v: np.asarray(e, dtype=np.int64) % p for v, e in self.idempotents.items()}
        if self.mult.shape != (n, n, n) or self.unit.shape != (n,) or len(self.labels) != n:
            raise ValidationError(f"Inconsistent algebra tables: mult {self.mult.shape}, "
                                  f"unit {self.unit.shape}, {len(self.labels)} labels")
        # left_mats[i] is x -> b_i x, right_mats[j] is x -> x b_j
        self.left_mats = np.ascontiguousarray(self.mult.transpose(0, 2, 1))
        self.right_mats = np.ascontiguousarray(self.mult.transpose(1, 2, 0))
        self._opposite: Optional[FDAlgebra] = None

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def vertices(self) -> List[str]:
        return list(self.idempotents)

    def __repr__(self) -> str:
        return f"FDAlgebra({self.name or 'unnamed'}, dim={self.dim}, p={self.field.p})"

    # elements

    def element(self, coords: Sequence[int]) -> np.ndarray:
        return self.field.array(coords).reshape(self.dim)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.field.p

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        return np.tensordot(x, self.left_mats, axes=1) % self.field.p

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        return np.tensordot(x, self.right_mats, axes=1) % self.field.p

    def idempotent_sum(self, vertices: Sequence[str]) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        for v in vertices:
            if v not in self.idempotents:
                raise ValidationError(f"Unknown vertex '{v}' of {self.name or 'algebra'}")
            e = e + self.idempotents[v]
        return e % self.field.p

    def block(self, target: str, source: str) -> np.ndarray:
        """Columns spanning e_target R e_source."""
        m = self.field.chain(self.left_matrix(self.idempotents[target]),
                             self.right_matrix(self.idempotents[source]))
        return self.field.column_basis(m)

    # structure

    def same_as(self, other: "FDAlgebra") -> bool:
        if self is other:
            return True
        return (self.field == other.field and self.dim == other.dim
                and np.array_equal(self.mult, other.mult)
                and np.array_equal(self.unit, other.unit)
                and self.vertices == other.vertices
                and all(np.array_equal(self.idempotents[v], other.idempotents[v]) for v in self.vertices))

    def require_same(self, other: "FDAlgebra", what: str = "operands") -> None:
        if not self.same_as(other):
            raise AlgebraMismatchError(f"{what} live over different algebras: {self!r} vs {other!r}")

    def opposite(self) -> "FDAlgebra":
        """The opposite algebra; ``R.opposite().opposite() is R``."""
        if self._opposite is None:
            op = FDAlgebra(
                field=self.field,
                labels=list(self.labels),
                mult=self.mult.transpose(1, 0, 2),
                unit=self.unit,
                idempotents=dict(self.idempotents),
                radical=self.radical,
                name=f"{self.name}^op" if self.name else "op",
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def radical_power(self, k: int) -> np.ndarray:
        """Columns spanning rad^k (rad^0 is the whole algebra)."""
        key = ("radical_power", k)
        if key not in self.cache:
            if k == 0:
                span = self.field.identity(self.dim)
            elif k == 1:
                span = self.field.column_basis(self.radical)
            else:
                prev = self.radical_power(k - 1)
                rad = self.radical_power(1)
                if prev.shape[1] == 0 or rad.shape[1] == 0:
                    span = np.zeros((self.dim, 0), dtype=np.int64)
                else:
                    prods = np.einsum("ia,jb,ijk->kab", prev, rad, self.mult).reshape(self.dim, -1)
                    span = self.field.column_basis(prods % self.field.p)
            self.cache[key] = span
        return self.cache[key]

    def radical_layers(self) -> List[int]:
        """Dimensions of rad^0, rad^1, ... down to the first zero power."""
        dims = []
        k = 0
        while True:
            d = self.radical_power(k).shape[1]
            dims.append(d)
            if d == 0 or k > self.dim:
                break
            k += 1
        return dims

    def radical_square_zero(self) -> bool:
        return self.radical_power(2).shape[1] == 0

    def is_semisimple(self) -> bool:
        return self.radical_power(1).shape[1] == 0

    def vertex_graph(self) -> nx.Graph:
        """Undirected graph on vertices with an edge when e_u R e_v != 0."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for u in self.vertices:
            for v in self.vertices:
                if u != v and self.block(u, v).shape[1] > 0:
                    graph.add_edge(u, v)
        return graph

    def is_connected(self) -> bool:
        graph = self.vertex_graph()
        return graph.number_of_nodes() > 0 and nx.is_connected(graph)

    def arrow_generators(self) -> List[Tuple[str, str, np.ndarray]]:
        """Vertex-homogeneous lifts (target, source, element) of a basis of rad/rad^2.

        Together with the idempotents these generate the algebra.
        """
        if "arrow_generators" in self.cache:
            return self.cache["arrow_generators"]
        f = self.field
        rad = self.radical_power(1)
        rad2 = self.radical_power(2)
        gens: List[Tuple[str, str, np.ndarray]] = []
        for t in self.vertices:
            left = self.left_matrix(self.idempotents[t])
            for s in self.vertices:
                right = self.right_matrix(self.idempotents[s])
                candidates = f.chain(left, right, rad) if rad.shape[1] else rad
                current = rad2
                current_rank = f.rank(current)
                for c in range(candidates.shape[1]):
                    vec = candidates[:, c]
                    if not vec.any():
                        continue
                    trial = np.column_stack([current, vec])
                    trial_rank = f.rank(trial)
                    if trial_rank > current_rank:
                        gens.append((t, s, vec))
                        current, current_rank = trial, trial_rank
        self.cache["arrow_generators"] = gens
        return gens

    def validate(self) -> None:
        """Check associativity, unit, idempotents and the radical."""
        p = self.field.p
        f = self.field
        n = self.dim
        lhs = np.einsum("ijm,mkl->ijkl", self.mult, self.mult) % p
        rhs = np.einsum("jkm,iml->ijkl", self.mult, self.mult) % p
        if not np.array_equal(lhs, rhs):
            raise ValidationError("Multiplication is not associative")
        eye = f.identity(n)
        if not (np.array_equal(self.left_matrix(self.unit), eye)
                and np.array_equal(self.right_matrix(self.unit), eye)):
            raise ValidationError("Unit vector is not a two-sided unit")
        total = np.zeros(n, dtype=np.int64)
        for u, eu in self.idempotents.items():
            total = (total + eu) % p
            for v, ev in self.idempotents.items():
                prod = self.multiply(eu, ev)
                expected = eu if u == v else np.zeros(n, dtype=np.int64)
                if not np.array_equal(prod, expected):
                    raise ValidationError(f"Idempotents e_{u}, e_{v} are not orthogonal idempotents")
        if n and not np.array_equal(total, self.unit):
            raise ValidationError("Idempotents do not sum to the unit")
        rad = f.column_basis(self.radical)
        if rad.shape[1]:
            products = np.concatenate([
                np.einsum("ia,ijk->kja", rad, self.mult).reshape(n, -1),
                np.einsum("ja,ijk->kia", rad, self.mult).reshape(n, -1),
            ], axis=1)
            if not f.in_span(rad, products % p):
                raise ValidationError("Radical is not a two-sided ideal")
        power = rad
        for _ in range(n + 1):
            if power.shape[1] == 0:
                break
            prods = np.einsum("ia,jb,ijk->kab", power, rad, self.mult).reshape(n, -1) % p
            power = f.column_basis(prods)
        else:
            raise ValidationError("Radical is not nilpotent")
        if n - rad.shape[1] != len(self.idempotents):
            raise ValidationError("Algebra is not basic: R/rad R does not match the vertex count")


def zero_algebra(field: PrimeField, name: str = "0") -> FDAlgebra:
    return FDAlgebra(field=field, labels=[], mult=np.zeros((0, 0, 0), dtype=np.int64),
                     unit=np.zeros(0, dtype=np.int64), idempotents={},
                     radical=np.zeros((0, 0), dtype=np.int64), name=name)


def restrict_tables(parent: FDAlgebra, embedding: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Structure constants of the subalgebra spanned by the columns of embedding."""
    f = parent.field
    linv = f.left_inverse(embedding)
    prods = np.einsum("ia,jb,ijk->abk", embedding, embedding, parent.mult) % f.p
    mult = np.einsum("abk,ck->abc", prods, linv) % f.p
    return mult, linv


def _column_label(parent: FDAlgebra, column: np.ndarray, index: int) -> str:
    nz = np.flatnonzero(column)
    if nz.size == 1 and column[nz[0]] == 1:
        return parent.labels[int(nz[0])]
    return f"c{index}"


def corner(R: FDAlgebra, vertices: Sequence[str]) -> FDAlgebra:
    """The corner algebra eRe for e the sum of the given vertex idempotents.

    The result keeps ``ambient = (R, E)`` where the columns of E are the
    coordinates in R of its basis.
    """
    vertices = list(dict.fromkeys(vertices))
    if not vertices:
        raise ValidationError("A corner needs at least one vertex")
    f = R.field
    e = R.idempotent_sum(vertices)
    embedding = f.column_basis(f.chain(R.left_matrix(e), R.right_matrix(e)))
    mult, linv = restrict_tables(R, embedding)
    unit = f.matmul(linv, e)
    idempotents = {v: f.matmul(linv, R.idempotents[v]) for v in vertices}
    rad_vectors = f.chain(R.left_matrix(e), R.right_matrix(e), R.radical) if R.radical.shape[1] else R.radical
    radical = f.column_basis(f.matmul(linv, rad_vectors))
    labels = [_column_label(R, embedding[:, a], a) for a in range(embedding.shape[1])]
    name = f"{R.name or 'R'}[{','.join(vertices)}]"
    algebra = FDAlgebra(field=f, labels=labels, mult=mult, unit=unit, idempotents=idempotents,
                        radical=radical, name=name, ambient=(R, embedding))
    logger.debug(f"Corner {name}: dim {algebra.dim} inside {R!r}")
    return algebra


def algebra_isomorphism(R: FDAlgebra, S: FDAlgebra, basis_map: np.ndarray) -> bool:
    """True when basis_map (columns: images of R's basis in S) is an algebra isomorphism."""
    f = R.field
    if R.dim != S.dim or f.inverse(basis_map) is None:
        return False
    lhs = np.einsum("ijk,ak->ija", R.mult, basis_map) % f.p
    rhs = np.einsum("ai,bj,abk->ijk", basis_map, basis_map, S.mult) % f.p
    return np.array_equal(lhs, rhs) and np.array_equal(f.matmul(basis_map, R.unit), S.unit)
