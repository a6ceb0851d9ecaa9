#!/usr/bin/env python
"""Analyze bound quiver algebras: Gorenstein projectives, idempotent reductions and triangular splits.

Exit codes: 0 success, 1 parse or validation error, 2 invariant violation or failed self-test.
"""
import argparse
import multiprocessing as mp
import sys
import traceback
from pathlib import Path
from typing import Dict, List, Optional

from src.algebra.fdalgebra import corner
from src.formats.algfile import (AlgebraFileParser, LoadedAlgebra, build_from_spec, combined_digest, load_algebra,
                                 load_bimodule)
from src.formats.report import build_report, read_report, write_report
from src.gorenstein.gproj import cm_free_check, gorenstein_by_gpd, gpd, gproj_check
from src.homology.resolution import ext, global_dim, gorenstein_check, min_resolution, pd
from src.idempotents.schur import Idempotent, schur_report, schur_S
from src.modules.functors import dual, is_isomorphic, is_projective, projective, simples
from src.modules.module import Module
from src.triangular.oracle import run_gproj_oracle
from src.triangular.trimat import (TriMatAlgebra, build_trimat, check_corner_a_reduction, check_corner_b_reduction,
                                   compatibility_check, corner_module_identities, projective_triples, split_trimat)
from src.utils.config import AnalysisConfig
from src.utils.errors import HypothesisUnmetError, InvariantViolation, ValidationError
from src.utils.logging import setup_logger
from src.validation.suites import run_suites

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


def validate_args(args, logger) -> bool:
    """Check that every input file exists and the output directory can be created."""
    inputs = [getattr(args, key, None) for key in ("file", "source", "algebra_a", "algebra_b", "bimodule", "report")]
    for path in inputs:
        if path and not Path(path).exists():
            logger.error(f"Input file not found: {path}")
            return False
    if args.command == "trimat":
        three = [args.algebra_a, args.algebra_b, args.bimodule]
        if args.source and any(three):
            logger.error("Use either --from/--split or --algebra-a/--algebra-b/--bimodule")
            return False
        if args.source and not args.split:
            logger.error("--from needs --split")
            return False
        if not args.source and not all(three):
            logger.error("Give --from FILE --split LIST or all of --algebra-a, --algebra-b and --bimodule")
            return False
    out = getattr(args, "out", None)
    if out and Path(out).exists() and Path(out).is_dir():
        logger.error(f"Output path is a directory: {out}")
        return False
    return True


def check_system_resources(logger) -> bool:
    """Warn about a busy machine before a long run."""
    try:
        import psutil

        memory = psutil.virtual_memory()
        if memory.percent > 90:
            logger.warning(f"High memory usage: {memory.percent}%")
        logger.debug(f"Available CPUs: {mp.cpu_count()}")
        return True
    except Exception as e:
        logger.error(f"Error checking system resources: {str(e)}")
        logger.debug(traceback.format_exc())
        return False


def overrides_from(args) -> Dict[str, Optional[int]]:
    keys = ("p", "length_cap", "bound", "seed", "samples", "oracle_samples", "oracle_max_dim", "workers")
    return {key: getattr(args, key, None) for key in keys}


def vertex_list(text: str, loaded: Optional[LoadedAlgebra] = None) -> List[str]:
    """A named idempotent of the file, or vertices separated by commas or spaces."""
    if loaded is not None and text in loaded.spec.idempotents:
        return loaded.idempotent(text)
    return [v for v in text.replace(",", " ").split() if v]


# subcommands

def cmd_info(args, logger) -> Dict:
    loaded = load_algebra(args.file, overrides_from(args), logger)
    R, bound = loaded.algebra, loaded.config.bound
    gorenstein_status, gpd_values = gorenstein_by_gpd(R, bound)
    results = {
        "algebra": {
            "dim": R.dim,
            "basis": list(R.labels),
            "vertices": R.vertices,
            "radical_layers": R.radical_layers(),
            "radical_square_zero": R.radical_square_zero(),
            "connected": R.is_connected(),
            "self_injective": is_projective(dual(Module.regular(R))),
        },
        "simples": {S.name: S.dim for S in simples(R)},
        "projectives": {v: projective(R, v).dim for v in R.vertices},
        "global_dim": global_dim(R, bound).to_dict(),
        "gorenstein": gorenstein_check(R, bound).to_dict(),
        "gorenstein_by_gpd": {"verdict": gorenstein_status, "gpd_simples": {k: v.verdict for k, v in gpd_values.items()}},
        "cm_free": cm_free_check(R, bound).to_dict(),
        "corners": {},
    }
    for name, vertices in loaded.spec.idempotents.items():
        C = corner(R, vertices)
        results["corners"][name] = {
            "vertices": vertices,
            "dim": C.dim,
            "radical_square_zero": C.radical_square_zero(),
            "self_injective": is_projective(dual(Module.regular(C))),
            "global_dim": global_dim(C, bound).verdict,
            "gorenstein": gorenstein_check(C, bound).status,
            "cm_free": cm_free_check(C, bound).to_dict(),
        }
    logger.info(f"{R!r}: gldim {results['global_dim']['verdict']}, Gorenstein {results['gorenstein']['verdict']}")
    return build_report("info", loaded.spec.digest, loaded.config, results)


def _target_module(loaded: LoadedAlgebra, args) -> Module:
    M = loaded.module(args.module)
    if args.corner:
        e = Idempotent(loaded.algebra, vertex_list(args.corner, loaded))
        M = schur_S(e, M)
        M.name = f"e{args.module}"
    return M


def cmd_gproj(args, logger) -> Dict:
    loaded = load_algebra(args.file, overrides_from(args), logger)
    bound = loaded.config.bound
    M = _target_module(loaded, args)
    verdict = gproj_check(M, bound)
    results = {
        "module": args.module,
        "corner": vertex_list(args.corner, loaded) if args.corner else None,
        "dim": M.dim,
        "gproj": verdict.to_dict(),
        "gpd": gpd(M, bound).to_dict(),
        "pd": pd(M, bound).to_dict(),
    }
    logger.info(f"{M.name}: Gorenstein projective {verdict.status}, Gpd {results['gpd']['verdict']}")
    return build_report("gproj", loaded.spec.digest, loaded.config, results)


def cmd_schur(args, logger) -> Dict:
    loaded = load_algebra(args.file, overrides_from(args), logger)
    vertices = vertex_list(args.idempotent, loaded)
    if not vertices:
        raise ValidationError("The idempotent is empty")
    report = schur_report(Idempotent(loaded.algebra, vertices), loaded.config.bound)
    return build_report("schur", loaded.spec.digest, loaded.config, report.to_dict())


def _trimat_from_args(args, logger):
    if args.source:
        loaded = load_algebra(args.source, overrides_from(args), logger)
        tm = split_trimat(loaded.algebra, vertex_list(args.split, loaded))
        return tm, loaded.config, loaded.spec.digest
    parser = AlgebraFileParser(logger)
    spec_a, spec_b = parser.parse_file(args.algebra_a), parser.parse_file(args.algebra_b)
    left = build_from_spec(spec_a, overrides_from(args))
    right = build_from_spec(spec_b, overrides_from(args))
    bimodule = load_bimodule(args.bimodule, left, right, logger)
    bimodule_spec = parser.parse_bimodule_file(args.bimodule)
    tm = build_trimat(left.algebra, right.algebra, bimodule)
    return tm, left.config, combined_digest([spec_a, spec_b, bimodule_spec])


def trimat_results(tm: TriMatAlgebra, config: AnalysisConfig, logger) -> Dict:
    bound = config.bound
    compatibility = compatibility_check(tm, bound)
    results: Dict = {
        "dims": {"T": tm.T.dim, "A": tm.A.dim, "M": tm.M.dim, "B": tm.B.dim},
        "vertices": {"A": tm.vertices_a, "B": tm.vertices_b},
        "bimodule": {"left_projective": is_projective(tm.m_left), "right_projective": is_projective(tm.m_right),
                     "pd_left": pd(tm.m_left, bound).verdict},
        "corner_identities": corner_module_identities(tm),
        "projective_triples": projective_triples(tm),
        "compatibility": compatibility.to_dict(),
    }
    try:
        results["reduction_to_a"] = check_corner_a_reduction(tm, bound, compatibility).to_dict()
        results["reduction_to_b"] = check_corner_b_reduction(tm, bound, compatibility).to_dict()
        results["oracle"] = run_gproj_oracle(tm, samples=config.oracle_samples, seed=config.seed, bound=bound,
                                             max_dim=config.oracle_max_dim, workers=config.workers,
                                             compatibility=compatibility).to_dict()
    except HypothesisUnmetError as e:
        logger.warning(f"Skipping the reductions: {str(e)}")
        results["reduction_to_a"] = results["reduction_to_b"] = {"verdict": "hypothesis unmet"}
    return results


def cmd_trimat(args, logger) -> Dict:
    tm, config, digest = _trimat_from_args(args, logger)
    results = trimat_results(tm, config, logger)
    oracle = results.get("oracle")
    if oracle and oracle["disagreements"]:
        raise InvariantViolation("Triple criterion disagrees with the direct check")
    return build_report("trimat", digest, config, results)


def cmd_selftest(args, logger) -> Dict:
    config = AnalysisConfig().merged(overrides_from(args))
    results = run_suites(config, args.suite)
    report = build_report("selftest", "", config, {"suites": [r.to_dict() for r in results]})
    report["results"]["passed"] = all(r.passed for r in results)
    return report


def cmd_verify(args, logger) -> Dict:
    """Replay the witnesses of a gproj report against its input file."""
    stored = read_report(args.report)
    if stored.get("command") != "gproj":
        raise ValidationError("Only gproj reports can be verified")
    loaded = load_algebra(args.file, stored["config"], logger)
    if loaded.spec.digest != stored["input_sha256"]:
        raise ValidationError("Input file does not match the report's hash")
    data = stored["results"]
    args.module, args.corner = data["module"], ",".join(data["corner"]) if data["corner"] else None
    M = _target_module(loaded, args)
    checks = []
    gproj = data["gproj"]
    if "certificate" in gproj:
        cert = gproj["certificate"]
        res = min_resolution(M, loaded.config.bound)
        start, end = cert["start"], cert["end"]
        ok = end < len(res.syzygies) and is_isomorphic(res.syzygies[start], res.syzygies[end]).yes
        checks.append({"witness": f"Omega^{start} ~ Omega^{end}", "holds": bool(ok)})
    if "ext_witness" in gproj:
        degree, dim = gproj["ext_witness"]["degree"], gproj["ext_witness"]["dim"]
        value = ext(M, Module.regular(M.algebra), degree, loaded.config.bound)
        checks.append({"witness": f"dim Ext^{degree}(M, R) = {dim}", "holds": value == dim})
    results = {"report": str(args.report), "checks": checks, "verified": all(c["holds"] for c in checks)}
    return build_report("verify", loaded.spec.digest, loaded.config, results)


COMMANDS = {"info": cmd_info, "gproj": cmd_gproj, "schur": cmd_schur, "trimat": cmd_trimat,
            "selftest": cmd_selftest, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact homological checks for bound quiver algebras")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="Field characteristic (overrides the file)")
    common.add_argument("--length-cap", type=int, help="Path length at which every path must vanish")
    common.add_argument("--bound", type=int, help="Maximum number of syzygy steps")
    common.add_argument("--seed", type=int, help="Seed of the randomized checks")
    common.add_argument("--out", type=str, help="Write the JSON report here instead of stdout")
    common.add_argument("--log-dir", type=str, default="logs", help="Directory for log files")
    sub = parser.add_subparsers(dest="command", required=True)

    info = sub.add_parser("info", parents=[common], help="Dimensions, radical, global and Gorenstein data")
    info.add_argument("file", type=str, help="Algebra file")

    gproj = sub.add_parser("gproj", parents=[common], help="Gorenstein projectivity of a named module")
    gproj.add_argument("file", type=str, help="Algebra file")
    gproj.add_argument("--module", type=str, required=True, help="Module section name")
    gproj.add_argument("--corner", type=str, help="Restrict to the corner algebra of these vertices")

    schur = sub.add_parser("schur", parents=[common], help="Conditions of the idempotent reduction")
    schur.add_argument("file", type=str, help="Algebra file")
    schur.add_argument("--idempotent", type=str, required=True, help="Idempotent name or vertex list")

    trimat = sub.add_parser("trimat", parents=[common], help="Triangular matrix algebra checks")
    trimat.add_argument("--from", dest="source", type=str, help="Algebra file to split")
    trimat.add_argument("--split", type=str, help="Vertices of the upper-left corner A")
    trimat.add_argument("--algebra-a", type=str, help="Algebra file of A")
    trimat.add_argument("--algebra-b", type=str, help="Algebra file of B")
    trimat.add_argument("--bimodule", type=str, help="Bimodule file of M")
    trimat.add_argument("--oracle-samples", type=int, help="Random triples checked by the oracle")
    trimat.add_argument("--oracle-max-dim", type=int, help="Maximum dimension of random oracle modules")
    trimat.add_argument("--workers", type=int, help="Worker processes for the oracle")

    selftest = sub.add_parser("selftest", parents=[common], help="Run the invariant suites")
    selftest.add_argument("--suite", action="append", help="Suite to run (repeatable; default all)")
    selftest.add_argument("--oracle-samples", type=int, help="Random triples checked by the oracle suite")

    verify = sub.add_parser("verify", parents=[common], help="Replay the witnesses of a gproj report")
    verify.add_argument("report", type=str, help="Report produced by gproj")
    verify.add_argument("file", type=str, help="Algebra file the report was made from")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger = setup_logger("analyze_algebra", log_dir=args.log_dir)
    try:
        logger.info(f"Running {args.command}")
        if not validate_args(args, logger):
            return EXIT_INPUT
        if not check_system_resources(logger):
            return EXIT_INTERNAL
        report = COMMANDS[args.command](args, logger)
        write_report(report, args.out)
        results = report["results"]
        if args.command == "selftest" and not results["passed"]:
            logger.error("Self-test failed")
            return EXIT_INTERNAL
        if args.command == "verify" and not results["verified"]:
            logger.error("Witness replay failed")
            return EXIT_INTERNAL
        return EXIT_OK
    except ValidationError as e:
        logger.error(f"Invalid input: {str(e)}")
        logger.debug(traceback.format_exc())
        return EXIT_INPUT
    except InvariantViolation as e:
        logger.error(f"Invariant violation: {str(e)}")
        logger.debug(traceback.format_exc())
        return EXIT_INTERNAL
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}")
        logger.debug(traceback.format_exc())
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
