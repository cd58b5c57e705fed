"""Run the bundled manual-vs-generated experiment and the deep-nesting demo.

    python3 scripts/run_demo.py --out results/ --jobs 2
"""
import argparse
import json

from sbflbench.demo import directional_demo
from sbflbench.experiment import bundled_manifest, default_jobs, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--jobs", type=int, default=default_jobs())
    args = ap.parse_args()

    report = run_experiment(bundled_manifest(), args.out, args.jobs)
    print(f"{len(report.rows)} programs, {len(report.excluded)} excluded -> {args.out}/")
    print(f"{'program':<10} {'stmt A':>7} {'stmt B':>7} {'br A':>7} {'br B':>7} {'sbfl A':>7} {'sbfl B':>7}")
    for r in report.rows:
        print(f"{r.program_id:<10} {r.statement_coverage_a:7.3f} {r.statement_coverage_b:7.3f} "
              f"{r.branch_coverage_a:7.3f} {r.branch_coverage_b:7.3f} "
              f"{r.sbfl_score_a or 0:7.3f} {r.sbfl_score_b or 0:7.3f}")
    for metric, res in report.wilcoxon.items():
        two = res["two-sided"]
        print(f"wilcoxon {metric}: n={two['n_effective']} p={two['p_value']:.4f} r={two['effect_size_r']:+.3f}")

    demo = directional_demo()
    print("\ndeep-nesting demo:")
    print(json.dumps(demo, indent=2))


if __name__ == "__main__":
    main()
