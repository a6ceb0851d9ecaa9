"""Seeded random triples for cross-checking the triple criterion against direct Gproj checks over T."""
import logging
import multiprocessing as mp
import traceback
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.algebra.fdalgebra import FDAlgebra
from src.modules.functors import hom_space, projective, radical_of, tensor
from src.modules.module import Module, direct_sum
from src.triangular.trimat import (CompatibilityVerdict, TriMatAlgebra, TripleModule, compatibility_check,
                                   triple_gproj_criterion)
from src.utils.config import DEFAULT_BOUND

logger = logging.getLogger(__name__)


def random_module(R: FDAlgebra, rng: np.random.Generator, max_dim: int = 4, name: str = "") -> Module:
    """A random quotient of one or two indecomposable projectives of dimension at most max_dim."""
    f = R.field
    count = int(rng.integers(1, min(2, max_dim) + 1))
    vertices = [R.vertices[int(i)] for i in rng.integers(0, len(R.vertices), size=count)]
    M, _, _ = direct_sum([projective(R, v) for v in vertices])
    while True:
        rad, incl = radical_of(M)
        if rad.dim == 0 or (M.dim <= max_dim and rng.random() < 0.5):
            break
        coeffs = rng.integers(0, f.p, size=rad.dim)
        vector = f.matmul(incl.matrix, coeffs.reshape(-1, 1))
        if not vector.any():
            continue
        M, _ = M.quotient(M.span_closure(vector))
    M.name = name or f"rand{M.dim}"
    return M


def random_triple(tm: TriMatAlgebra, rng: np.random.Generator, max_dim: int = 4, name: str = "") -> TripleModule:
    """(X, Y, phi) with phi a random A-map; about half the samples get an injective phi."""
    f = tm.A.field
    Y = random_module(tm.B, rng, max_dim, name="Y")
    product = tensor(tm.M, Y)
    X0 = random_module(tm.A, rng, max_dim, name="X")
    homs = hom_space(product.module, X0)
    random_map = np.zeros((X0.dim, product.dim), dtype=np.int64)
    for h in homs:
        random_map = (random_map + int(rng.integers(0, f.p)) * h.matrix) % f.p
    if product.dim and product.dim + X0.dim <= max_dim and rng.random() < 0.5:
        X, injections, _ = direct_sum([product.module, X0], name="X")
        phi = (injections[0] + f.matmul(injections[1], random_map)) % f.p
    else:
        X, phi = X0, random_map
    return TripleModule(tm, X, Y, phi, name=name)


@dataclass
class OracleReport:
    samples: int
    seed: int
    certified: int = 0
    agreements: int = 0
    unknown: int = 0
    disagreements: List[Dict] = field(default_factory=list)
    failures: List[Dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.disagreements and not self.failures

    def to_dict(self) -> Dict:
        return {"samples": self.samples, "seed": self.seed, "certified": self.certified,
                "agreements": self.agreements, "unknown": self.unknown, "disagreements": self.disagreements,
                "failures": self.failures, "verdict": "holds" if self.passed else "fails"}


def _evaluate(args: Tuple[int, TripleModule, int, CompatibilityVerdict]) -> Dict:
    index, triple, bound, compatibility = args
    try:
        verdict = triple_gproj_criterion(triple, bound, compatibility=compatibility)
        out = verdict.to_dict()
        out["index"] = index
        out["dims"] = [triple.X.dim, triple.Y.dim]
        return out
    except Exception as e:
        logger.error(f"Oracle sample {index} failed: {str(e)}")
        logger.debug(traceback.format_exc())
        return {"index": index, "error": str(e)}


def run_gproj_oracle(tm: TriMatAlgebra, samples: int = 50, seed: int = 0, bound: int = DEFAULT_BOUND,
                     max_dim: int = 4, workers: int = 1,
                     compatibility: Optional[CompatibilityVerdict] = None) -> OracleReport:
    """Compare the triple criterion with the direct check over T on seeded random triples.

    Triples are generated in the parent process from one generator per sample,
    so the report only depends on the seed.
    """
    compatibility = compatibility or compatibility_check(tm, bound)
    triples = [random_triple(tm, np.random.default_rng([seed, i]), max_dim, name=f"triple{i}")
               for i in range(samples)]
    jobs = [(i, t, bound, compatibility) for i, t in enumerate(triples)]
    if workers > 1:
        logger.info(f"Evaluating {samples} triples on {workers} workers")
        with mp.Pool(workers) as pool:
            results = pool.map(_evaluate, jobs)
    else:
        results = [_evaluate(job) for job in jobs]

    report = OracleReport(samples, seed)
    for result in results:
        if "error" in result:
            report.failures.append(result)
            continue
        certain = {"yes", "no"}
        if result["criterion"] in certain and result["direct"] in certain:
            report.certified += 1
            if result["agree"]:
                report.agreements += 1
            else:
                report.disagreements.append(result)
        else:
            report.unknown += 1
    logger.info(f"Oracle: {report.agreements}/{report.certified} certified samples agree, {report.unknown} unknown")
    return report
