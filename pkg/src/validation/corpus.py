"""Small bound quiver algebras used by the self-test suites."""
from typing import Dict, List, Sequence, Tuple

from src.algebra.fdalgebra import FDAlgebra
from src.algebra.quiver import Quiver, build_algebra
from src.linalg.field import PrimeField
from src.utils.config import DEFAULT_LENGTH_CAP

ArrowList = Sequence[Tuple[str, str, str]]
RelationList = Sequence[Sequence[Tuple[int, Sequence[str]]]]


def _algebra(name: str, vertices: List[str], arrows: ArrowList, relations: RelationList,
             field: PrimeField, length_cap: int) -> FDAlgebra:
    quiver = Quiver(vertices)
    for label, source, target in arrows:
        quiver.add_arrow(label, source, target)
    rels = [quiver.relation(terms, field.p) for terms in relations]
    return build_algebra(quiver, rels, length_cap, field, name=name)


def a2(field: PrimeField, length_cap: int = DEFAULT_LENGTH_CAP) -> FDAlgebra:
    return _algebra("a2", ["1", "2"], [("a", "1", "2")], [], field, length_cap)


def dual_numbers(field: PrimeField, length_cap: int = DEFAULT_LENGTH_CAP) -> FDAlgebra:
    return _algebra("dual_numbers", ["1"], [("x", "1", "1")], [[(1, ["x", "x"])]], field, length_cap)


def cmfree_corner(field: PrimeField, length_cap: int = DEFAULT_LENGTH_CAP) -> FDAlgebra:
    arrows = [("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "3", "2"), ("delta", "3", "4")]
    relations = [[(1, ["beta", "gamma"])], [(1, ["gamma", "beta"])], [(1, ["delta", "beta"])]]
    return _algebra("cmfree_corner", ["1", "2", "3", "4"], arrows, relations, field, length_cap)


def two_corner(field: PrimeField, self_injective_corner: bool = False,
               length_cap: int = DEFAULT_LENGTH_CAP) -> FDAlgebra:
    """Both quivers on vertices 1..5; the second adds alpha' : 2 -> 1 so that the corner on 1, 2 is self-injective."""
    arrows = [("alpha", "1", "2"), ("gamma", "3", "1"), ("delta", "4", "2"), ("beta", "3", "4"),
              ("beta'", "4", "3"), ("theta", "4", "5")]
    relations = [[(1, ["beta'", "beta"])], [(1, ["beta", "beta'"])], [(1, ["theta", "beta"])],
                 [(1, ["alpha", "gamma"]), (-1, ["delta", "beta"])]]
    name = "hereditary_corner"
    if self_injective_corner:
        arrows.append(("alpha'", "2", "1"))
        relations += [[(1, ["alpha'", "alpha"])], [(1, ["alpha", "alpha'"])],
                      [(1, ["alpha'", "delta"]), (-1, ["gamma", "beta'"])]]
        name = "selfinjective_corner"
    return _algebra(name, ["1", "2", "3", "4", "5"], arrows, relations, field, length_cap)


def corpus(field: PrimeField, length_cap: int = DEFAULT_LENGTH_CAP) -> Dict[str, FDAlgebra]:
    return {
        "a2": a2(field, length_cap),
        "dual_numbers": dual_numbers(field, length_cap),
        "cmfree_corner": cmfree_corner(field, length_cap),
        "hereditary_corner": two_corner(field, False, length_cap),
        "selfinjective_corner": two_corner(field, True, length_cap),
    }


EXPECTED_DIMS = {"a2": 3, "dual_numbers": 2, "cmfree_corner": 9, "hereditary_corner": 13, "selfinjective_corner": 14}
