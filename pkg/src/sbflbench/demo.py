"""Deep-nesting demo: a generated suite against two handwritten ones.

The generated suite (seed 42) is compared with a shallow handwritten suite on
branch coverage and with a deep-targeting handwritten suite on the SBFL score
restricted to mutants at nesting depth >= 4.
"""
import math

from . import interp, pipeline, suitegen
from .experiment import bundled_corpus_dir
from .minilang import parse_file
from .mutation import generate_all_mutants
from .suitefile import load_suite

DEEP_DEPTH = 4


def _deep_score(result, min_depth=DEEP_DEPTH):
    vals = [r.rscore for r in result.scored if r.fault_depth >= min_depth]
    return (math.fsum(vals) / len(vals) if vals else None), len(vals)


def directional_demo(seed=42, budget=300, step_limit=20_000, corpus=None) -> dict:
    corpus = corpus or bundled_corpus_dir()
    program = parse_file(corpus / "deep.mini")
    cfg = suitegen.GenConfig(seed=seed, budget=budget, step_limit=step_limit)
    suites = {
        "generated": suitegen.generate_suite(program, cfg, name="deep_generated"),
        "shallow": load_suite(corpus / "deep_shallow.suite"),
        "deep_manual": load_suite(corpus / "deep_manual.suite"),
    }
    mutants = generate_all_mutants(program)
    out = {"program": "deep.mini", "seed": seed, "budget": budget, "step_limit": step_limit,
           "mutants": len(mutants), "suites": {}}
    for key, suite in suites.items():
        spec = interp.run_suite(program, suite, step_limit)
        res = pipeline.sbfl_score(program, suite, step_limit, mutants=mutants)
        deep, n_deep = _deep_score(res)
        out["suites"][key] = {
            "name": suite.name,
            "cases": len(suite.cases),
            "statement_coverage": interp.statement_coverage(spec),
            "branch_coverage": interp.branch_coverage(spec),
            "killed": res.mutants_killed,
            "sbfl_score": res.sbfl_score,
            "sbfl_score_deep": deep,
            "scored_deep": n_deep,
        }
    s = out["suites"]
    out["branch_coverage_holds"] = s["generated"]["branch_coverage"] >= s["shallow"]["branch_coverage"]
    out["deep_score_holds"] = (
        s["generated"]["sbfl_score_deep"] is not None
        and s["deep_manual"]["sbfl_score_deep"] is not None
        and s["generated"]["sbfl_score_deep"] < s["deep_manual"]["sbfl_score_deep"]
    )
    return out
