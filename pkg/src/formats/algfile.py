"""Reader for the sectioned ``.alg`` text format and the companion bimodule files.

An algebra file looks like::

    [field]
    p = 101

    [quiver]
    vertices = 1 2 3
    arrow alpha: 1 -> 2
    arrow beta: 2 -> 3

    [relations]
    beta*alpha

    [idempotents]
    e = 2 3

    [module S1]
    kind = simple 1

    [module N]
    dims = 1:1 2:1
    alpha = 1

    [options]
    length_cap = 12
    bound = 20

Paths are written right to left: ``beta*alpha`` is alpha followed by beta.
Matrices list rows separated by ``;``. A bimodule file has a ``[bimodule]``
section with ``dim`` and ``[left]``/``[right]`` sections giving a matrix for
every vertex and arrow of the left and right algebra (missing ones are zero).
"""
import hashlib
import logging
import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.fdalgebra import FDAlgebra
from src.algebra.quiver import Quiver, Relation, build_algebra, path_action, representation_action
from src.linalg.field import PrimeField
from src.modules.functors import projective, simple
from src.modules.module import Bimodule, Module
from src.utils.config import AnalysisConfig
from src.utils.errors import NotAdmissibleError, ParseError, ValidationError

LABEL = r"[A-Za-z][A-Za-z0-9_']*"
VERTEX = r"[A-Za-z0-9_']+"
SECTION_RE = re.compile(rf"^\[\s*([a-z]+)(?:\s+({LABEL}))?\s*\]$")
KEY_RE = re.compile(rf"^({VERTEX})\s*=\s*(.*)$")
ARROW_RE = re.compile(rf"^arrow\s+({LABEL})\s*:\s*({VERTEX})\s*->\s*({VERTEX})$")
TERM_RE = re.compile(rf"\s*([+-])?\s*(?:(\d+)\s*\*\s*)?({LABEL}(?:\s*\*\s*{LABEL})*)\s*")
OPTION_KEYS = {"length_cap", "bound", "seed", "samples", "oracle_samples", "oracle_max_dim", "workers"}
ALGEBRA_SECTIONS = {"field", "quiver", "relations", "idempotents", "module", "options"}


@dataclass
class ModuleSpec:
    name: str
    line: int
    kind: str = "representation"
    vertex: str = ""
    dims: Dict[str, int] = dc_field(default_factory=dict)
    matrices: Dict[str, Tuple[List[List[int]], int]] = dc_field(default_factory=dict)


@dataclass
class AlgebraSpec:
    """Parsed contents of an algebra file, before any algebra is built."""
    p: Optional[int] = None
    vertices: List[str] = dc_field(default_factory=list)
    arrows: List[Tuple[str, str, str, int]] = dc_field(default_factory=list)
    relations: List[Tuple[str, List[Tuple[int, List[str]]], int]] = dc_field(default_factory=list)
    idempotents: Dict[str, List[str]] = dc_field(default_factory=dict)
    modules: Dict[str, ModuleSpec] = dc_field(default_factory=dict)
    options: Dict[str, int] = dc_field(default_factory=dict)
    digest: str = ""
    source: str = ""


@dataclass
class BimoduleSpec:
    dim: int = 0
    left: Dict[str, Tuple[List[List[int]], int]] = dc_field(default_factory=dict)
    right: Dict[str, Tuple[List[List[int]], int]] = dc_field(default_factory=dict)
    digest: str = ""
    source: str = ""


def _content(raw: str) -> Tuple[str, int]:
    """Line without its comment, and the 1-based column of its first character."""
    text = raw.split("#", 1)[0].rstrip()
    stripped = text.lstrip()
    return stripped, len(text) - len(stripped) + 1


def _parse_int(text: str, line: int, column: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"Expected an integer, got '{text}'", line, column) from None


def _parse_matrix(text: str, line: int, column: int) -> List[List[int]]:
    if not text.strip():
        return []
    rows = []
    for chunk in text.split(";"):
        rows.append([_parse_int(token, line, column) for token in chunk.split()])
    if len({len(r) for r in rows}) != 1:
        raise ParseError("Matrix rows have different lengths", line, column)
    return rows


def parse_path_expression(text: str, line: int = 0, column: int = 1) -> List[Tuple[int, List[str]]]:
    """Split ``3*a*b - c*d`` into [(3, ['a', 'b']), (-1, ['c', 'd'])]."""
    terms = []
    pos = 0
    while pos < len(text):
        match = TERM_RE.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"Cannot read a path term at '{text[pos:]}'", line, column + pos)
        sign, coef, path = match.groups()
        if terms and sign is None:
            raise ParseError("Missing '+' or '-' between terms", line, column + pos)
        value = int(coef) if coef else 1
        if sign == "-":
            value = -value
        terms.append((value, [a.strip() for a in path.split("*")]))
        pos = match.end()
    if not terms:
        raise ParseError("Empty path expression", line, column)
    return terms


class AlgebraFileParser:
    """Parser for algebra and bimodule files.

    Args:
        logger: Optional logger instance
    """

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    def parse_file(self, path) -> AlgebraSpec:
        path = Path(path)
        if not path.exists():
            raise ValidationError(f"Input file not found: {path}")
        spec = self.parse_text(path.read_text(), source=str(path))
        self.logger.debug(f"Parsed {path}: {len(spec.vertices)} vertices, {len(spec.arrows)} arrows, "
                          f"{len(spec.relations)} relations, {len(spec.modules)} modules")
        return spec

    def parse_text(self, text: str, source: str = "<string>") -> AlgebraSpec:
        spec = AlgebraSpec(digest=hashlib.sha256(text.encode()).hexdigest(), source=source)
        section: Optional[str] = None
        current: Optional[ModuleSpec] = None
        seen = set()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            content, col = _content(raw)
            if not content:
                continue
            header = SECTION_RE.match(content)
            if content.startswith("["):
                if header is None:
                    raise ParseError(f"Malformed section header '{content}'", lineno, col)
                section, arg = header.groups()
                if section not in ALGEBRA_SECTIONS:
                    raise ParseError(f"Unknown section '{section}'", lineno, col)
                if (section == "module") != (arg is not None):
                    raise ParseError(f"Section '{section}' {'needs' if section == 'module' else 'takes no'} name",
                                     lineno, col)
                key = (section, arg)
                if key in seen:
                    raise ParseError(f"Duplicate section '{content}'", lineno, col)
                seen.add(key)
                if section == "module":
                    current = ModuleSpec(arg, lineno)
                    spec.modules[arg] = current
                continue
            if section is None:
                raise ParseError("Content outside of any section", lineno, col)
            handler = getattr(self, f"_line_{section}")
            handler(spec, current, content, lineno, col)
        if spec.p is None and "field" in {s for s, _ in seen}:
            raise ParseError("Section [field] needs 'p'")
        if not spec.vertices:
            raise ParseError("Section [quiver] with at least one vertex is required")
        return spec

    @staticmethod
    def _key_value(content: str, lineno: int, col: int) -> Tuple[str, str, int]:
        match = KEY_RE.match(content)
        if match is None:
            raise ParseError(f"Expected 'key = value', got '{content}'", lineno, col)
        return match.group(1), match.group(2).strip(), col + match.start(2)

    def _line_field(self, spec, current, content, lineno, col):
        key, value, vcol = self._key_value(content, lineno, col)
        if key != "p":
            raise ParseError(f"Unknown key '{key}' in [field]", lineno, col)
        spec.p = _parse_int(value, lineno, vcol)

    def _line_quiver(self, spec, current, content, lineno, col):
        arrow = ARROW_RE.match(content)
        if arrow:
            label, source, target = arrow.groups()
            spec.arrows.append((label, source, target, lineno))
            return
        key, value, vcol = self._key_value(content, lineno, col)
        if key != "vertices":
            raise ParseError(f"Unknown key '{key}' in [quiver]", lineno, col)
        names = value.split()
        for name in names:
            if not re.fullmatch(VERTEX, name):
                raise ParseError(f"Invalid vertex name '{name}'", lineno, vcol)
        spec.vertices.extend(names)

    def _line_relations(self, spec, current, content, lineno, col):
        offset = 0
        for chunk in content.split(","):
            if chunk.strip():
                spec.relations.append((chunk.strip(), parse_path_expression(chunk, lineno, col + offset), lineno))
            offset += len(chunk) + 1

    def _line_idempotents(self, spec, current, content, lineno, col):
        key, value, vcol = self._key_value(content, lineno, col)
        if not value.split():
            raise ParseError(f"Idempotent '{key}' has no vertices", lineno, vcol)
        spec.idempotents[key] = value.split()

    def _line_module(self, spec, current: ModuleSpec, content, lineno, col):
        key, value, vcol = self._key_value(content, lineno, col)
        if key == "kind":
            parts = value.split()
            if len(parts) != 2 or parts[0] not in ("simple", "projective"):
                raise ParseError("Expected 'kind = simple V' or 'kind = projective V'", lineno, vcol)
            current.kind, current.vertex = parts
        elif key == "dims":
            for token in value.split():
                vertex, _, count = token.partition(":")
                if not count:
                    raise ParseError(f"Expected 'vertex:dim', got '{token}'", lineno, vcol)
                current.dims[vertex] = _parse_int(count, lineno, vcol)
        else:
            current.matrices[key] = (_parse_matrix(value, lineno, vcol), lineno)

    def _line_options(self, spec, current, content, lineno, col):
        key, value, vcol = self._key_value(content, lineno, col)
        if key not in OPTION_KEYS:
            raise ParseError(f"Unknown option '{key}'", lineno, col)
        spec.options[key] = _parse_int(value, lineno, vcol)

    # bimodule files

    def parse_bimodule_file(self, path) -> BimoduleSpec:
        path = Path(path)
        if not path.exists():
            raise ValidationError(f"Input file not found: {path}")
        return self.parse_bimodule_text(path.read_text(), source=str(path))

    def parse_bimodule_text(self, text: str, source: str = "<string>") -> BimoduleSpec:
        spec = BimoduleSpec(digest=hashlib.sha256(text.encode()).hexdigest(), source=source)
        section = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            content, col = _content(raw)
            if not content:
                continue
            if content.startswith("["):
                header = SECTION_RE.match(content)
                if header is None or header.group(1) not in ("bimodule", "left", "right") or header.group(2):
                    raise ParseError(f"Unknown section '{content}'", lineno, col)
                section = header.group(1)
                continue
            if section is None:
                raise ParseError("Content outside of any section", lineno, col)
            key, value, vcol = self._key_value(content, lineno, col)
            if section == "bimodule":
                if key != "dim":
                    raise ParseError(f"Unknown key '{key}' in [bimodule]", lineno, col)
                spec.dim = _parse_int(value, lineno, vcol)
            else:
                getattr(spec, section)[key] = (_parse_matrix(value, lineno, vcol), lineno)
        return spec


@dataclass
class LoadedAlgebra:
    """An algebra built from a file together with its quiver, field and run configuration."""
    spec: AlgebraSpec
    config: AnalysisConfig
    field: PrimeField
    quiver: Quiver
    algebra: FDAlgebra
    _modules: Dict[str, Module] = dc_field(default_factory=dict, repr=False)

    def module(self, name: str) -> Module:
        if name not in self.spec.modules:
            raise ValidationError(f"Unknown module '{name}'; known: {sorted(self.spec.modules)}")
        if name not in self._modules:
            self._modules[name] = self._build_module(self.spec.modules[name])
        return self._modules[name]

    def module_names(self) -> List[str]:
        return list(self.spec.modules)

    def idempotent(self, name: str) -> List[str]:
        if name in self.spec.idempotents:
            return self.spec.idempotents[name]
        raise ValidationError(f"Unknown idempotent '{name}'")

    def _build_module(self, mspec: ModuleSpec) -> Module:
        R = self.algebra
        if mspec.kind in ("simple", "projective"):
            if mspec.vertex not in R.vertices:
                raise ParseError(f"Unknown vertex '{mspec.vertex}'", mspec.line)
            base = simple(R, mspec.vertex) if mspec.kind == "simple" else projective(R, mspec.vertex)
            return Module(R, base.action, name=mspec.name)
        for v in mspec.dims:
            if v not in R.vertices:
                raise ParseError(f"Unknown vertex '{v}' in module {mspec.name}", mspec.line)
        blocks = {}
        for label, (rows, line) in mspec.matrices.items():
            try:
                arrow = self.quiver.arrow(label)
            except ValidationError as e:
                raise ParseError(str(e), line) from e
            shape = (mspec.dims.get(arrow.target, 0), mspec.dims.get(arrow.source, 0))
            block = np.array(rows, dtype=np.int64) if rows else np.zeros(shape, dtype=np.int64)
            if block.shape != shape:
                raise ParseError(f"Matrix of '{label}' has shape {block.shape}, expected {shape}", line)
            blocks[label] = block
        module = Module(R, representation_action(self.quiver, R, mspec.dims, blocks), name=mspec.name)
        try:
            module.validate()
        except ValidationError as e:
            raise ParseError(f"Module {mspec.name} does not satisfy the relations: {str(e)}", mspec.line) from e
        return module


def build_from_spec(spec: AlgebraSpec, overrides: Optional[Dict[str, Optional[int]]] = None,
                    name: str = "") -> LoadedAlgebra:
    """Build the algebra of a parsed file; command-line overrides beat file options."""
    file_options = dict(spec.options)
    if spec.p is not None:
        file_options["p"] = spec.p
    try:
        config = AnalysisConfig().merged(file_options, overrides)
    except (KeyError, ValueError) as e:
        raise ValidationError(f"Invalid options: {str(e)}") from e
    f = PrimeField(config.p)
    try:
        quiver = Quiver(list(spec.vertices))
    except ValidationError as e:
        raise ParseError(str(e)) from e
    for label, source, target, line in spec.arrows:
        try:
            quiver.add_arrow(label, source, target)
        except ValidationError as e:
            raise ParseError(str(e), line) from e
    relations: List[Relation] = []
    for text, terms, line in spec.relations:
        try:
            relations.append(quiver.relation(terms, f.p, text=text))
        except NotAdmissibleError:
            raise
        except ValidationError as e:
            raise ParseError(str(e), line) from e
    for key, vertices in spec.idempotents.items():
        unknown = [v for v in vertices if v not in quiver.vertices]
        if unknown:
            raise ParseError(f"Idempotent '{key}' uses unknown vertices {unknown}")
    label = name or Path(spec.source).stem or "R"
    algebra = build_algebra(quiver, relations, config.length_cap, f, name=label)
    return LoadedAlgebra(spec, config, f, quiver, algebra)


def load_algebra(path, overrides: Optional[Dict[str, Optional[int]]] = None,
                 logger: Optional[logging.Logger] = None) -> LoadedAlgebra:
    spec = AlgebraFileParser(logger).parse_file(path)
    return build_from_spec(spec, overrides)


def _action_from(entries: Dict[str, Tuple[List[List[int]], int]], loaded: LoadedAlgebra, dim: int,
                 opposite: bool) -> np.ndarray:
    known = set(loaded.quiver.vertices) | {a.label for a in loaded.quiver.arrows}
    mats = {}
    for key, (rows, line) in entries.items():
        if key not in known:
            raise ParseError(f"'{key}' is neither a vertex nor an arrow of {loaded.algebra.name}", line)
        m = np.array(rows, dtype=np.int64) if rows else np.zeros((dim, dim), dtype=np.int64)
        if m.shape != (dim, dim):
            raise ParseError(f"Matrix of '{key}' has shape {m.shape}, expected {(dim, dim)}", line)
        mats[key] = m
    zero = np.zeros((dim, dim), dtype=np.int64)
    vertex_mats = {v: mats.get(v, zero) for v in loaded.quiver.vertices}
    arrow_mats = {a.label: mats.get(a.label, zero) for a in loaded.quiver.arrows}
    return path_action(loaded.quiver, loaded.algebra, vertex_mats, arrow_mats, opposite=opposite)


def load_bimodule(path, left: LoadedAlgebra, right: LoadedAlgebra,
                  logger: Optional[logging.Logger] = None) -> Bimodule:
    """An A-B-bimodule from a bimodule file over two loaded algebras; validated."""
    spec = AlgebraFileParser(logger).parse_bimodule_file(path)
    if left.field != right.field:
        raise ValidationError("The two algebras live over different fields")
    left_action = _action_from(spec.left, left, spec.dim, opposite=False)
    right_action = _action_from(spec.right, right, spec.dim, opposite=True)
    bimodule = Bimodule(left.algebra, right.algebra, left_action, right_action, name="M")
    bimodule.validate()
    return bimodule


def combined_digest(specs: Sequence) -> str:
    h = hashlib.sha256()
    for spec in specs:
        h.update(spec.digest.encode())
    return h.hexdigest()
