"""Invariant suites run by ``analyze_algebra.py selftest``.

Every suite returns a list of failure messages; an empty list is a pass.
"""
import logging
import time
import traceback
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from src.algebra.fdalgebra import FDAlgebra, corner
from src.gorenstein.gproj import gpd
from src.homology.complexes import ChainComplex, ChainMap, cone, homology, identity_map, in_fgp, stalk
from src.homology.resolution import min_resolution, pd
from src.idempotents.schur import Idempotent, quotient_inflation, schur_L, schur_S, schur_T
from src.linalg.field import PrimeField
from src.modules.functors import (cokernel, hom_dim, hom_space, is_isomorphic, kernel, projective,
                                  projective_cover, simples)
from src.modules.module import Module, direct_sum
from src.triangular.oracle import run_gproj_oracle
from src.triangular.trimat import (TriMatAlgebra, corner_module_identities, module_to_triple, projective_triples,
                                   ses_check, split_trimat, standard_ses, triple_gpd_transfer, triple_to_module)
from src.utils.config import AnalysisConfig
from src.utils.errors import ValidationError
from src.validation.corpus import EXPECTED_DIMS, corpus

logger = logging.getLogger(__name__)

ConeFn = Callable[[ChainMap], ChainComplex]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_dict(self) -> Dict:
        return {"suite": self.name, "verdict": "holds" if self.passed else "fails", "failures": self.failures}


class SuiteContext:
    """Shared state of one self-test run.

    Args:
        config: Run configuration (field, bound, seed, oracle size)
        cone_fn: Mapping cone construction under test
    """

    def __init__(self, config: AnalysisConfig, cone_fn: ConeFn = cone):
        self.config = config
        self.cone_fn = cone_fn
        self.field = PrimeField(config.p)

    @cached_property
    def algebras(self) -> Dict[str, FDAlgebra]:
        return corpus(self.field, self.config.length_cap)

    @cached_property
    def splits(self) -> Dict[str, TriMatAlgebra]:
        return {
            "cmfree_corner": split_trimat(self.algebras["cmfree_corner"], ["2", "3", "4"]),
            "hereditary_corner": split_trimat(self.algebras["hereditary_corner"], ["1", "2"]),
            "selfinjective_corner": split_trimat(self.algebras["selfinjective_corner"], ["1", "2"]),
        }


def field_suite(ctx: SuiteContext) -> List[str]:
    f = ctx.field
    rng = np.random.default_rng(ctx.config.seed)
    failures = []
    for trial in range(20):
        rows, cols = (int(x) for x in rng.integers(1, 7, size=2))
        m = f.random_matrix(rng, rows, cols)
        if trial % 3 == 0 and rows > 1:
            m[-1] = f.matmul(rng.integers(0, f.p, size=(1, rows - 1)), m[:-1])[0]
        basis, _ = f.nullspace(m)
        r = f.rank(m)
        if r + basis.shape[1] != cols:
            failures.append(f"rank-nullity fails for a {rows}x{cols} matrix")
        if f.matmul(m, basis).any():
            failures.append("nullspace vectors are not annihilated")
        x = f.random_matrix(rng, cols, 1)
        solution = f.solve(m, f.matmul(m, x))
        if solution is None or not np.array_equal(f.matmul(m, solution.reshape(-1, 1)), f.matmul(m, x)):
            failures.append("consistent system reported unsolvable")
    return failures


def algebra_suite(ctx: SuiteContext) -> List[str]:
    failures = []
    for name, R in ctx.algebras.items():
        if R.dim != EXPECTED_DIMS[name]:
            failures.append(f"{name}: dim {R.dim}, expected {EXPECTED_DIMS[name]}")
        R.validate()
        if R.opposite().opposite() is not R:
            failures.append(f"{name}: opposite is not an involution")
        if sum(projective(R, v).dim for v in R.vertices) != R.dim:
            failures.append(f"{name}: projectives do not add up to R")
    dims = {tuple(v): corner(ctx.algebras["cmfree_corner"], v).dim for v in (["2", "3", "4"], ["1"])}
    if dims != {("2", "3", "4"): 6, ("1",): 1}:
        failures.append(f"cmfree_corner corners have dims {dims}")
    return failures


def module_suite(ctx: SuiteContext) -> List[str]:
    failures = []
    for name, R in ctx.algebras.items():
        mods = simples(R) + [projective(R, v) for v in R.vertices]
        for M in mods:
            frames = M.dimension_vector()
            for v in R.vertices:
                if hom_dim(projective(R, v), M) != frames[v]:
                    failures.append(f"{name}: Hom(P{v}, {M.name}) != dim e_v {M.name}")
            cover = projective_cover(M)
            if not cover.is_surjective():
                failures.append(f"{name}: projective cover of {M.name} is not onto")
            K, incl = kernel(cover)
            if K.dim + M.dim != cover.source.dim or cover.compose(incl).matrix.any():
                failures.append(f"{name}: kernel of the cover of {M.name} is wrong")
        for M in simples(R):
            for N in simples(R):
                for h in hom_space(M, N):
                    C, _ = cokernel(h)
                    if C.dim != N.dim - h.rank:
                        failures.append(f"{name}: cokernel dimension mismatch")
    return failures


def resolution_suite(ctx: SuiteContext) -> List[str]:
    bound = ctx.config.bound
    failures = []
    D = ctx.algebras["dual_numbers"]
    res = min_resolution(simples(D)[0], bound)
    if res.certificate is None or res.certificate.period != 1:
        failures.append("dual numbers: simple is not periodic of period 1")
    R_cm = ctx.algebras["cmfree_corner"]
    projective_dims = {"1": 3, "2": 2, "3": 3, "4": 1}
    for v, dim in projective_dims.items():
        P = projective(R_cm, v)
        if P.dim != dim or pd(P, bound).verdict != "finite:0":
            failures.append(f"cmfree_corner: P{v} has dim {P.dim} and pd {pd(P, bound).verdict}")
    if pd(simples(R_cm)[0], bound).verdict != "finite:1":
        failures.append("cmfree_corner: pd S1 != 1")
    for name, R in ctx.algebras.items():
        for S in simples(R):
            min_resolution(S, bound).validate()
    return failures


def _two_term_complex(R: FDAlgebra) -> ChainComplex:
    """P_v -> P_w in degrees 0, 1 from the first nonzero non-invertible map between indecomposable projectives."""
    for v in R.vertices:
        for w in R.vertices:
            homs = hom_space(projective(R, v), projective(R, w))
            nonzero = [h for h in homs if h.matrix.any() and not h.is_isomorphism()]
            if nonzero:
                return ChainComplex(R, 0, [projective(R, v), projective(R, w)], [nonzero[0].matrix])
    raise ValueError(f"{R!r} has no nonzero radical map between projectives")


def _socle_complex(R: FDAlgebra) -> ChainComplex:
    """S -> R in degrees 0, 1 along a nonzero map from the first simple into the regular module."""
    S = simples(R)[0]
    regular = Module.regular(R)
    h = hom_space(S, regular)[0]
    return ChainComplex(R, 0, [S, regular], [h.matrix])


def cone_suite(ctx: SuiteContext) -> List[str]:
    failures = []
    for name in ("a2", "cmfree_corner"):
        R = ctx.algebras[name]
        X = _two_term_complex(R)
        C = ctx.cone_fn(identity_map(X))
        try:
            C.validate()
        except Exception as e:
            failures.append(f"{name}: cone of the identity is not a complex: {str(e)}")
            continue
        if any(homology(C, n).dim for n in range(C.lo, C.hi + 1)):
            failures.append(f"{name}: cone of the identity is not acyclic")
        for M in simples(R):
            for N in [projective(R, v) for v in R.vertices]:
                for h in hom_space(M, N)[:1] + hom_space(N, M)[:1]:
                    phi = ChainMap(stalk(h.source), stalk(h.target), {0: h.matrix})
                    C = ctx.cone_fn(phi)
                    if homology(C, -1).dim != h.source.dim - h.rank or homology(C, 0).dim != h.target.dim - h.rank:
                        failures.append(f"{name}: cone homology of a stalk map is not ker and coker")
    return failures


def fgp_suite(ctx: SuiteContext) -> List[str]:
    bound = ctx.config.bound
    failures = []
    for name in ("a2", "dual_numbers", "cmfree_corner", "selfinjective_corner"):
        R = ctx.algebras[name]
        for M in simples(R):
            value = gpd(M, bound)
            verdict = in_fgp(stalk(M), bound)
            expected = {"finite": "yes", "infinite": "no"}.get(value.kind, "unknown")
            if verdict.status != expected:
                failures.append(f"{name}: stalk {M.name} has fgp {verdict.status} but Gpd {value.verdict}")
        X = _two_term_complex(R) if R.dim > 1 and name != "dual_numbers" else None
        if X is not None and in_fgp(X, bound).status != "yes":
            failures.append(f"{name}: complex of projectives is not in fgp")
    X = _socle_complex(ctx.algebras["dual_numbers"])
    if in_fgp(X, bound).status != "yes":
        failures.append("dual_numbers: complex of Gorenstein projective simples is not in fgp")
    R = ctx.algebras["selfinjective_corner"]
    S = simples(R)
    for i in range(len(S) - 1):
        pair, _, _ = direct_sum([S[i], S[i + 1]])
        whole = in_fgp(stalk(pair), bound).status
        parts = [in_fgp(stalk(S[i]), bound).status, in_fgp(stalk(S[i + 1]), bound).status]
        expected = "no" if "no" in parts else ("yes" if parts == ["yes", "yes"] else "unknown")
        if whole != expected:
            failures.append(f"selfinjective_corner: fgp of {pair.name} is {whole}, summands give {expected}")
    return failures


def schur_suite(ctx: SuiteContext) -> List[str]:
    failures = []
    cases = (("cmfree_corner", ["2", "3", "4"]), ("selfinjective_corner", ["3", "4", "5"]), ("a2", ["2"]))
    for name, vertices in cases:
        R = ctx.algebras[name]
        e = Idempotent(R, vertices)
        C = e.corner
        small = simples(C) + [projective(C, v) for v in C.vertices]
        for G in small:
            if not is_isomorphic(schur_S(e, schur_T(e, G)), G).yes:
                failures.append(f"{name}: S T {G.name} is not isomorphic to {G.name}")
            if not is_isomorphic(schur_S(e, schur_L(e, G)), G).yes:
                failures.append(f"{name}: S L {G.name} is not isomorphic to {G.name}")
        big = simples(R) + [projective(R, v) for v in R.vertices]
        for G in simples(C):
            for M in big:
                if hom_dim(schur_T(e, G), M) != hom_dim(G, schur_S(e, M)):
                    failures.append(f"{name}: T is not left adjoint on ({G.name}, {M.name})")
                if hom_dim(schur_S(e, M), G) != hom_dim(M, schur_L(e, G)):
                    failures.append(f"{name}: L is not right adjoint on ({M.name}, {G.name})")
        quotient = quotient_inflation(e)
        for N in simples(quotient.algebra):
            if schur_S(e, quotient.inflate(N)).dim:
                failures.append(f"{name}: S does not annihilate the inflation of {N.name}")
    return failures


def trimat_suite(ctx: SuiteContext) -> List[str]:
    bound = ctx.config.bound
    failures = []
    for name, tm in ctx.splits.items():
        if tm.T.dim != tm.A.dim + tm.M.dim + tm.B.dim:
            failures.append(f"{name}: dim T != dim A + dim M + dim B")
        for item in corner_module_identities(tm):
            if not item["holds"]:
                failures.append(f"{name}: {item['identity']}")
        for item in projective_triples(tm):
            if not item["projective"] or item["isomorphic"] != "yes":
                failures.append(f"{name}: projective triple {item['triple']} does not match T e_{item['vertex']}")
        for v in tm.T.vertices:
            N = projective(tm.T, v)
            triple, _ = module_to_triple(tm, N)
            if not is_isomorphic(triple_to_module(triple), N).yes:
                failures.append(f"{name}: round trip of P{v} fails")
        for Z in simples(tm.B):
            triples, first, second = standard_ses(tm, Z)
            verdict = ses_check(triples, first, second)
            if not (verdict.module_level and verdict.agree):
                failures.append(f"{name}: standard sequence of {Z.name} is not exact")
            broken = ses_check(triples, first, (second[0], np.zeros_like(second[1])))
            if broken.module_level or not broken.agree:
                failures.append(f"{name}: negative control sequence of {Z.name} reported exact")
    tm = ctx.splits["selfinjective_corner"]
    for X in simples(tm.A) + [projective(tm.A, v) for v in tm.A.vertices]:
        report = triple_gpd_transfer(tm, X, simples(tm.B)[0], bound)
        if not report.x_agrees:
            failures.append(f"selfinjective_corner: Gpd_T({X.name}, 0) differs from Gpd_A {X.name}")
    return failures


def oracle_suite(ctx: SuiteContext) -> List[str]:
    tm = ctx.splits["selfinjective_corner"]
    report = run_gproj_oracle(tm, samples=ctx.config.oracle_samples, seed=ctx.config.seed, bound=ctx.config.bound,
                              max_dim=ctx.config.oracle_max_dim, workers=ctx.config.workers)
    failures = [f"triple {d['index']}: criterion {d['criterion']} vs direct {d['direct']}"
                for d in report.disagreements]
    failures += [f"triple {d['index']}: {d['error']}" for d in report.failures]
    return failures


SUITES: Dict[str, Callable[[SuiteContext], List[str]]] = {
    "field": field_suite,
    "algebra": algebra_suite,
    "module": module_suite,
    "resolution": resolution_suite,
    "cone": cone_suite,
    "fgp": fgp_suite,
    "schur": schur_suite,
    "trimat": trimat_suite,
    "oracle": oracle_suite,
}


def run_suites(config: Optional[AnalysisConfig] = None, names: Optional[Sequence[str]] = None,
               cone_fn: ConeFn = cone) -> List[SuiteResult]:
    """Run the named suites (all by default) in a fixed order."""
    config = config or AnalysisConfig()
    ctx = SuiteContext(config, cone_fn)
    selected = list(names) if names else list(SUITES)
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise ValidationError(f"Unknown suites {unknown}; available: {list(SUITES)}")
    results = []
    for name in selected:
        start = time.perf_counter()
        try:
            failures = SUITES[name](ctx)
        except Exception as e:
            logger.error(f"Suite {name} raised: {str(e)}")
            logger.debug(traceback.format_exc())
            failures = [f"raised {type(e).__name__}: {str(e)}"]
        result = SuiteResult(name, not failures, failures, time.perf_counter() - start)
        logger.info(f"Suite {name}: {'pass' if result.passed else 'FAIL'} ({result.seconds:.1f}s)")
        results.append(result)
    return results
