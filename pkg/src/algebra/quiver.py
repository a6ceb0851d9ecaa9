"""Quivers, relations and the bound quiver algebra kQ/I."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.algebra.fdalgebra import FDAlgebra
from src.linalg.field import PrimeField
from src.utils.errors import CapExceededError, NotAdmissibleError, ValidationError

logger = logging.getLogger(__name__)

MAX_PATHS = 50000


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path; ``arrows`` is in written order, so ``("a", "b")`` is b followed by a."""
    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"


@dataclass
class Relation:
    """A linear combination of parallel paths of length at least two."""
    terms: List[Tuple[int, Path]]
    text: str = ""

    @property
    def source(self) -> str:
        return self.terms[0][1].source

    @property
    def target(self) -> str:
        return self.terms[0][1].target


@dataclass
class Quiver:
    vertices: List[str]
    arrows: List[Arrow] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("Duplicate vertex names")
        self._arrows: Dict[str, Arrow] = {}
        for a in self.arrows:
            self._check_arrow(a)
            self._arrows[a.label] = a

    def _check_arrow(self, a: Arrow) -> None:
        if a.label in self._arrows or a.label in self.vertices:
            raise ValidationError(f"Duplicate label '{a.label}'")
        for v in (a.source, a.target):
            if v not in self.vertices:
                raise ValidationError(f"Arrow '{a.label}' uses unknown vertex '{v}'")

    def add_arrow(self, label: str, source: str, target: str) -> Arrow:
        arrow = Arrow(label, source, target)
        self._check_arrow(arrow)
        self.arrows.append(arrow)
        self._arrows[label] = arrow
        return arrow

    def arrow(self, label: str) -> Arrow:
        if label not in self._arrows:
            raise ValidationError(f"Unknown arrow '{label}'")
        return self._arrows[label]

    def path(self, arrows: Sequence[str]) -> Path:
        """The path a_1*...*a_k, checking that consecutive arrows compose."""
        arrows = tuple(arrows)
        if not arrows:
            raise ValidationError("Empty path")
        for left, right in zip(arrows, arrows[1:]):
            if self.arrow(left).source != self.arrow(right).target:
                raise ValidationError(f"Arrows '{left}' and '{right}' do not compose in '{'*'.join(arrows)}'")
        return Path(self.arrow(arrows[-1]).source, self.arrow(arrows[0]).target, arrows)

    def trivial(self, vertex: str) -> Path:
        return Path(vertex, vertex)

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for a in self.arrows:
            g.add_edge(a.source, a.target, key=a.label)
        return g

    def is_connected(self) -> bool:
        return bool(self.vertices) and nx.is_weakly_connected(self.graph())

    def relation(self, terms: Sequence[Tuple[int, Sequence[str]]], p: int, text: str = "") -> Relation:
        """Build a relation, merging repeated paths and checking admissibility."""
        merged: Dict[Path, int] = {}
        for coef, arrows in terms:
            path = self.path(arrows)
            if path.length < 2:
                raise NotAdmissibleError(f"Relation term '{path.label()}' has length {path.length} < 2")
            merged[path] = (merged.get(path, 0) + int(coef)) % p
        cleaned = [(c, path) for path, c in merged.items() if c]
        if not cleaned:
            raise ValidationError(f"Relation '{text}' is zero")
        ends = {(path.source, path.target) for _, path in cleaned}
        if len(ends) != 1:
            raise ValidationError(f"Relation '{text}' mixes non-parallel paths")
        return Relation(cleaned, text=text)


def compose(u: Path, v: Path) -> Optional[Path]:
    """u*v (v first), or None when v does not end where u starts."""
    if u.source != v.target:
        return None
    return Path(v.source, u.target, u.arrows + v.arrows)


def enumerate_paths(quiver: Quiver, max_length: int) -> List[Path]:
    """All paths of length at most max_length, shortest first."""
    paths = [quiver.trivial(v) for v in quiver.vertices]
    frontier = list(paths)
    outgoing: Dict[str, List[Arrow]] = {v: [] for v in quiver.vertices}
    for a in quiver.arrows:
        outgoing[a.source].append(a)
    for _ in range(max_length):
        nxt = []
        for q in frontier:
            for a in outgoing[q.target]:
                nxt.append(Path(q.source, a.target, (a.label,) + q.arrows))
        paths.extend(nxt)
        frontier = nxt
        if len(paths) > MAX_PATHS:
            raise CapExceededError(f"More than {MAX_PATHS} paths of length <= {max_length}; "
                                   "lower the length cap or add relations")
    return paths


def build_algebra(quiver: Quiver, relations: Sequence[Relation], length_cap: int,
                  field: PrimeField, name: str = "") -> FDAlgebra:
    """The algebra kQ/I with a basis of standard paths.

    The ideal is closed under left and right multiplication inside paths of
    length at most ``length_cap``; every path of exactly that length must lie
    in the closure, otherwise CapExceededError is raised.

    Args:
        quiver: The quiver
        relations: Generators of the ideal
        length_cap: Certification length
        field: Coefficient field
        name: Display name of the algebra

    Returns:
        The bound quiver algebra, validated
    """
    if length_cap < 2:
        raise ValidationError(f"length_cap must be at least 2, got {length_cap}")
    p = field.p
    arrow_rank = {a.label: i for i, a in enumerate(quiver.arrows)}
    vertex_rank = {v: i for i, v in enumerate(quiver.vertices)}

    def basis_key(path: Path):
        if not path.arrows:
            return (0, (vertex_rank[path.source],))
        return (path.length, tuple(arrow_rank[a] for a in path.arrows))

    paths = sorted(enumerate_paths(quiver, length_cap), key=basis_key)
    # longest paths first so that pivots, i.e. leading terms, are long paths
    order = sorted(range(len(paths)), key=lambda i: basis_key(paths[i]), reverse=True)
    column = {paths[i]: c for c, i in enumerate(order)}
    ordered = [paths[i] for i in order]
    n_paths = len(ordered)

    by_source: Dict[str, List[Path]] = {v: [] for v in quiver.vertices}
    by_target: Dict[str, List[Path]] = {v: [] for v in quiver.vertices}
    for path in paths:
        by_source[path.source].append(path)
        by_target[path.target].append(path)

    exact_rows, truncated_rows = [], []
    for rel in relations:
        lengths = [path.length for _, path in rel.terms]
        for u in by_source[rel.target]:
            for w in by_target[rel.source]:
                pad = u.length + w.length
                if pad + min(lengths) > length_cap:
                    continue
                row = np.zeros(n_paths, dtype=np.int64)
                for coef, term in rel.terms:
                    if pad + term.length <= length_cap:
                        full = compose(compose(u, term), w)
                        row[column[full]] = (row[column[full]] + coef) % p
                if not row.any():
                    continue
                if pad + max(lengths) <= length_cap:
                    exact_rows.append(row)
                else:
                    truncated_rows.append(row)

    cap_rows = []
    for path in ordered:
        if path.length == length_cap:
            row = np.zeros(n_paths, dtype=np.int64)
            row[column[path]] = 1
            cap_rows.append(row)

    exact = np.array(exact_rows, dtype=np.int64).reshape(-1, n_paths)
    if cap_rows:
        caps = np.array(cap_rows, dtype=np.int64)
        if field.rank(np.vstack([exact, caps])) != field.rank(exact):
            raise CapExceededError(f"Some path of length {length_cap} does not vanish modulo the "
                                   "relations; the ideal is not admissible within this cap")

    generators = np.vstack([exact, np.array(truncated_rows, dtype=np.int64).reshape(-1, n_paths),
                            np.array(cap_rows, dtype=np.int64).reshape(-1, n_paths)])
    reduced, pivots = field.rref(generators)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n_paths) if c not in pivot_set]
    basis_paths = sorted((ordered[c] for c in free_cols), key=basis_key)
    basis_index = {path: i for i, path in enumerate(basis_paths)}
    n = len(basis_paths)

    # reduce[:, c] = coordinates of path column c in the standard basis
    reduce = np.zeros((n, n_paths), dtype=np.int64)
    for c in free_cols:
        reduce[basis_index[ordered[c]], c] = 1
    free_basis_rows = [basis_index[ordered[c]] for c in free_cols]
    for i, pc in enumerate(pivots):
        reduce[free_basis_rows, pc] = (-reduced[i, free_cols]) % p

    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, bi in enumerate(basis_paths):
        for j, bj in enumerate(basis_paths):
            prod = compose(bi, bj)
            if prod is None or prod.length > length_cap:
                continue
            mult[i, j] = reduce[:, column[prod]]

    idempotents = {}
    for v in quiver.vertices:
        e = np.zeros(n, dtype=np.int64)
        e[basis_index[quiver.trivial(v)]] = 1
        idempotents[v] = e
    unit = sum(idempotents.values(), np.zeros(n, dtype=np.int64))
    rad_cols = [i for i, path in enumerate(basis_paths) if path.length > 0]
    radical = np.eye(n, dtype=np.int64)[:, rad_cols]

    algebra = FDAlgebra(field=field, labels=[path.label() for path in basis_paths], mult=mult,
                        unit=unit, idempotents=idempotents, radical=radical, name=name)
    algebra.cache["paths"] = basis_paths
    algebra.validate()
    logger.debug(f"Built {algebra!r} from {len(quiver.arrows)} arrows and {len(relations)} relations "
                 f"({n_paths} paths up to length {length_cap})")
    return algebra


def path_action(quiver: Quiver, algebra: FDAlgebra, vertex_mats: Dict[str, np.ndarray],
                arrow_mats: Dict[str, np.ndarray], opposite: bool = False) -> np.ndarray:
    """Action tensor of the basis paths from matrices of the vertices and arrows.

    The path a*b acts as A(a) A(b) on the left; with ``opposite`` it acts on
    the right, x -> x a b, whose matrix is A(b) A(a).
    """
    if "paths" not in algebra.cache:
        raise ValidationError(f"{algebra!r} was not built from a quiver")
    f = algebra.field
    basis_paths: List[Path] = algebra.cache["paths"]
    d = next(iter(vertex_mats.values())).shape[0] if vertex_mats else 0
    action = np.zeros((algebra.dim, d, d), dtype=np.int64)
    for i, path in enumerate(basis_paths):
        if not path.arrows:
            action[i] = vertex_mats[path.source]
            continue
        mats = [arrow_mats[a] for a in path.arrows]
        if opposite:
            mats = mats[::-1]
        action[i] = f.chain(*mats)
    return action


def representation_action(quiver: Quiver, algebra: FDAlgebra, dims: Dict[str, int],
                          arrow_blocks: Dict[str, np.ndarray]) -> np.ndarray:
    """Action tensor of the representation with spaces k^dims[v] and a (d_t x d_s) block per arrow."""
    offsets, total = {}, 0
    for v in quiver.vertices:
        offsets[v] = total
        total += dims.get(v, 0)
    vertex_mats, arrow_mats = {}, {}
    for v in quiver.vertices:
        e = np.zeros((total, total), dtype=np.int64)
        o, d = offsets[v], dims.get(v, 0)
        e[o:o + d, o:o + d] = np.eye(d, dtype=np.int64)
        vertex_mats[v] = e
    for a in quiver.arrows:
        ds, dt = dims.get(a.source, 0), dims.get(a.target, 0)
        block = arrow_blocks.get(a.label)
        block = np.zeros((dt, ds), dtype=np.int64) if block is None else np.asarray(block, dtype=np.int64)
        if block.shape != (dt, ds):
            raise ValidationError(f"Matrix of '{a.label}' has shape {block.shape}, expected {(dt, ds)}")
        m = np.zeros((total, total), dtype=np.int64)
        m[offsets[a.target]:offsets[a.target] + dt, offsets[a.source]:offsets[a.source] + ds] = block
        arrow_mats[a.label] = m
    return path_action(quiver, algebra, vertex_mats, arrow_mats)
