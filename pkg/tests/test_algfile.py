import pytest

from src.formats.algfile import AlgebraFileParser, build_from_spec, load_algebra, load_bimodule, parse_path_expression
from src.modules.functors import is_isomorphic, projective
from src.modules.module import Module
from src.triangular.trimat import build_trimat
from src.utils.errors import NotAdmissibleError, ParseError, ValidationError
from src.validation.corpus import EXPECTED_DIMS

HEADER = "[field]\np = 101\n\n[quiver]\nvertices = 1 2\narrow a: 1 -> 2\n"


def parse(text):
    return AlgebraFileParser().parse_text(text)


def test_parse_path_expression():
    """Test splitting a relation into signed path terms."""
    assert parse_path_expression("3*a*b - c*d") == [(3, ["a", "b"]), (-1, ["c", "d"])]
    assert parse_path_expression("beta'*beta") == [(1, ["beta'", "beta"])]
    with pytest.raises(ParseError):
        parse_path_expression("a*b c*d")


def test_example_files_load(examples_dir):
    """Test that every bundled example builds with the expected dimension."""
    for name, dim in EXPECTED_DIMS.items():
        loaded = load_algebra(examples_dir / f"{name}.alg")
        assert loaded.algebra.dim == dim
        assert loaded.algebra.name == name
    assert load_algebra(examples_dir / "point.alg").algebra.dim == 1


def test_modules_from_file(examples_dir):
    """Test representation and named modules of the example files."""
    a2 = load_algebra(examples_dir / "a2.alg")
    assert a2.module_names() == ["S1", "S2", "P1", "N"]
    assert is_isomorphic(a2.module("N"), projective(a2.algebra, "1")).yes
    assert a2.idempotent("top") == ["1"]
    dual = load_algebra(examples_dir / "dual_numbers.alg")
    assert is_isomorphic(dual.module("R"), Module.regular(dual.algebra)).yes
    with pytest.raises(ValidationError):
        a2.module("missing")


def test_parse_errors_carry_positions():
    """Test the parse errors of malformed files."""
    with pytest.raises(ParseError) as excinfo:
        parse(HEADER + "[foo]\n")
    assert excinfo.value.line == 7
    with pytest.raises(ParseError) as excinfo:
        parse("[quiver]\nvertices 1 2\n")
    assert excinfo.value.line == 2
    with pytest.raises(ParseError):
        parse("[quiver]\nvertices = 1 2\narrow a 1 -> 2\n")
    with pytest.raises(ParseError):
        parse(HEADER + "[quiver]\nvertices = 3\n")
    with pytest.raises(ParseError):
        parse("vertices = 1\n")
    with pytest.raises(ParseError):
        parse("[field]\np = 101\n")


def test_short_relation_is_refused():
    """Test that a relation of length one is not admissible."""
    spec = parse(HEADER + "[relations]\na\n")
    with pytest.raises(NotAdmissibleError):
        build_from_spec(spec)


def test_bad_matrix_shape():
    """Test that a representation matrix of the wrong shape is refused."""
    loaded = build_from_spec(parse(HEADER + "[module N]\ndims = 1:1 2:1\na = 1 1\n"))
    with pytest.raises(ParseError):
        loaded.module("N")


def test_unknown_option():
    """Test that options outside the known keys are refused."""
    with pytest.raises(ParseError):
        parse(HEADER + "[options]\ncolor = 3\n")


def test_overrides_beat_file_options(examples_dir):
    """Test that command-line values win over [options] and [field]."""
    path = examples_dir / "cmfree_corner.alg"
    assert load_algebra(path).config.bound == 20
    loaded = load_algebra(path, {"bound": 5, "p": 7, "seed": None})
    assert loaded.config.bound == 5
    assert loaded.field.p == 7
    assert loaded.algebra.dim == 9


def test_digest_is_stable():
    """Test that the input hash depends only on the text."""
    assert parse(HEADER).digest == parse(HEADER).digest
    assert parse(HEADER).digest != parse(HEADER + "\n# comment\n").digest


def test_point_bimodule(examples_dir):
    """Test that the point bimodule builds the path algebra of 1 -> 2."""
    point = load_algebra(examples_dir / "point.alg")
    M = load_bimodule(examples_dir / "point_bimodule.bim", point, point)
    assert M.dim == 1
    tm = build_trimat(point.algebra, point.algebra, M)
    assert tm.T.dim == 3
    assert tm.vertices_a == ["Ao"] and tm.vertices_b == ["Bo"]
