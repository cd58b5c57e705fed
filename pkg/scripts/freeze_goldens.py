"""Regenerate the frozen fixtures under tests/golden/.

Run once, audit the diff by hand, then commit. Tests compare against these
files byte for byte, so rerunning this script is only legitimate after an
intentional behaviour change.
"""
import argparse
import json
import shutil
import tempfile
from pathlib import Path

from sbflbench import interp
from sbflbench.demo import directional_demo
from sbflbench.experiment import REPORT_FILES, bundled_corpus_dir, bundled_manifest, run_experiment
from sbflbench.minilang import parse_file
from sbflbench.suitefile import load_suite

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def triangle_verdicts():
    corpus = bundled_corpus_dir()
    spec = interp.run_suite(parse_file(corpus / "triangle.mini"),
                            load_suite(corpus / "triangle_manual.suite"))
    return {e.case_name: e.verdict.value for e in spec.executions}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=GOLDEN)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    (args.out / "triangle_manual_verdicts.json").write_text(
        json.dumps(triangle_verdicts(), indent=2) + "\n")
    (args.out / "directional_demo.json").write_text(
        json.dumps(directional_demo(), indent=2) + "\n")

    corpus_out = args.out / "corpus"
    with tempfile.TemporaryDirectory() as tmp:
        run_experiment(bundled_manifest(), tmp, jobs=1)
        corpus_out.mkdir(exist_ok=True)
        for name in REPORT_FILES:
            shutil.copyfile(Path(tmp) / name, corpus_out / name)
    print(f"wrote goldens to {args.out}")


if __name__ == "__main__":
    main()
