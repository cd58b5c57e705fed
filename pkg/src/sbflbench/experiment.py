"""Corpus manifests, the manual-vs-generated experiment, and report files.

Manifest (JSON, ``"version": 1``)::

    {"version": 1,
     "step_limit": 20000,
     "programs": [
       {"id": "triangle", "program": "triangle.mini",
        "suites": [
          {"origin": "manual", "path": "triangle_manual.suite"},
          {"origin": "generated", "generate": {"seed": 42, "budget": 300, "minimize": false}}
        ]}]}

Paths are relative to the manifest. A generated suite is either a ``path``
or a ``generate`` block run through the random generator. Suite A is always
the manual suite and suite B the generated one.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import pipeline, suitegen
from .interp import DEFAULT_STEP_LIMIT, SuiteConfigError
from .minilang import MiniLangError, parse
from .stats import (
    ALTERNATIVES, TWO_SIDED, PairedSample, summarize, wilcoxon_signed_rank,
)
from .suitefile import dumps_suite, load_suite

MANIFEST_VERSION = 1
METRICS = ("statement_coverage", "branch_coverage", "sbfl_score")


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteRef:
    origin: str
    path: Optional[Path] = None
    generate: Optional[dict] = None


@dataclass(frozen=True)
class ManifestEntry:
    program_id: str
    program_path: Path
    suites: tuple


@dataclass(frozen=True)
class CorpusManifest:
    entries: tuple
    version: int = MANIFEST_VERSION
    step_limit: int = DEFAULT_STEP_LIMIT
    root: Path = Path(".")


def load_manifest(path) -> CorpusManifest:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    if raw.get("version") != MANIFEST_VERSION:
        raise ManifestError(f"unsupported manifest version {raw.get('version')!r}")
    root = path.parent
    entries, seen = [], set()
    for i, prog in enumerate(raw.get("programs", [])):
        pid = prog.get("id") or Path(prog["program"]).stem
        if pid in seen:
            raise ManifestError(f"duplicate program id {pid!r}")
        seen.add(pid)
        ppath = root / prog["program"]
        if not ppath.is_file():
            raise ManifestError(f"program file not found: {ppath}")
        refs = []
        for s in prog.get("suites", []):
            origin = s.get("origin")
            if "path" in s:
                spath = root / s["path"]
                if not spath.is_file():
                    raise ManifestError(f"suite file not found: {spath}")
                refs.append(SuiteRef(origin, spath))
            elif "generate" in s and origin == "generated":
                refs.append(SuiteRef(origin, generate=dict(s["generate"])))
            else:
                raise ManifestError(f"program {pid!r}: suite needs 'path' or 'generate'")
        origins = sorted(r.origin for r in refs)
        if origins != ["generated", "manual"]:
            raise ManifestError(
                f"program {pid!r} needs exactly one manual and one generated suite")
        entries.append(ManifestEntry(pid, ppath, tuple(refs)))
    return CorpusManifest(tuple(entries), MANIFEST_VERSION,
                          int(raw.get("step_limit", DEFAULT_STEP_LIMIT)), root)


# -- report model --------------------------------------------------------------

@dataclass(frozen=True)
class ProgramRow:
    program_id: str
    suite_a: str
    suite_b: str
    statement_coverage_a: float
    statement_coverage_b: float
    branch_coverage_a: float
    branch_coverage_b: float
    sbfl_score_a: Optional[float]
    sbfl_score_b: Optional[float]
    mutants_total: int
    killed_a: int
    killed_b: int
    paired: int
    killed_only_a: int
    killed_only_b: int


@dataclass
class ComparisonReport:
    rows: list
    comparisons: list  # pipeline.SuiteComparison, parallel to rows
    aggregate: dict = field(default_factory=dict)
    wilcoxon: dict = field(default_factory=dict)
    by_depth: list = field(default_factory=list)
    by_operator: list = field(default_factory=list)
    excluded: list = field(default_factory=list)  # (program_id, path, reason)
    step_limit: int = DEFAULT_STEP_LIMIT


def row_from_comparison(c) -> ProgramRow:
    return ProgramRow(
        c.program_id, c.suite_a, c.suite_b,
        c.statement_coverage_a, c.statement_coverage_b,
        c.branch_coverage_a, c.branch_coverage_b,
        c.score_a.sbfl_score, c.score_b.sbfl_score,
        c.score_a.mutants_total, c.score_a.mutants_killed, c.score_b.mutants_killed,
        len(c.paired), c.killed_only_a, c.killed_only_b,
    )


def _mean(values):
    return math.fsum(values) / len(values) if values else None


def _wilcoxon_all(a, b):
    if not a:
        return None
    sample = PairedSample.of(a, b)
    return {alt: dataclasses.asdict(wilcoxon_signed_rank(sample, alt)) for alt in ALTERNATIVES}


def _stratum(key_name, key, pairs, scored_a, scored_b):
    entry = {key_name: key}
    entry["summary_a"] = dataclasses.asdict(summarize(scored_a)) if scored_a else None
    entry["summary_b"] = dataclasses.asdict(summarize(scored_b)) if scored_b else None
    entry["paired"] = len(pairs)
    if pairs:
        w = wilcoxon_signed_rank(PairedSample.of([p[0] for p in pairs], [p[1] for p in pairs]),
                                 TWO_SIDED)
        entry["wilcoxon"] = dataclasses.asdict(w)
        entry["r"] = w.effect_size_r
    else:
        entry["wilcoxon"] = None
        entry["r"] = None
    return entry


def build_report(comparisons, excluded=(), step_limit=DEFAULT_STEP_LIMIT) -> ComparisonReport:
    rows = [row_from_comparison(c) for c in comparisons]
    report = ComparisonReport(rows, list(comparisons), excluded=list(excluded),
                              step_limit=step_limit)
    for metric in METRICS:
        a_vals = [getattr(r, f"{metric}_a") for r in rows]
        b_vals = [getattr(r, f"{metric}_b") for r in rows]
        both = [(x, y) for x, y in zip(a_vals, b_vals) if x is not None and y is not None]
        report.aggregate[f"{metric}_a"] = _mean([x for x in a_vals if x is not None])
        report.aggregate[f"{metric}_b"] = _mean([y for y in b_vals if y is not None])
        report.wilcoxon[metric] = _wilcoxon_all([p[0] for p in both], [p[1] for p in both])

    for attr, key_name, sink in (("fault_depth", "depth", report.by_depth),
                                 ("operator", "operator", report.by_operator)):
        keys = sorted({getattr(m, attr) for c in comparisons for m in c.score_a.mutant_results})
        for k in keys:
            pairs, sa, sb = [], [], []
            for c in comparisons:
                for ma, mb in zip(c.score_a.mutant_results, c.score_b.mutant_results):
                    if getattr(ma, attr) != k:
                        continue
                    if ma.rscore is not None:
                        sa.append(ma.rscore)
                    if mb.rscore is not None:
                        sb.append(mb.rscore)
                    if ma.killed and mb.killed:
                        pairs.append((ma.rscore, mb.rscore))
            sink.append(_stratum(key_name, k, pairs, sa, sb))
    return report


# -- running -------------------------------------------------------------------

def _resolve_suite(ref, program, pid, step_limit):
    if ref.path is not None:
        return load_suite(ref.path)
    g = dict(ref.generate)
    cfg = suitegen.GenConfig(
        seed=int(g.get("seed", 42)), budget=int(g.get("budget", 200)),
        per_function=bool(g.get("per_function", False)),
        int_range=tuple(g.get("int_range", (-100, 100))),
        float_range=tuple(g.get("float_range", (-100.0, 100.0))),
        step_limit=int(g.get("step_limit", step_limit)),
    )
    suite = suitegen.generate_suite(program, cfg, name=f"{pid}_generated")
    if g.get("minimize"):
        suite = suitegen.minimize_suite(program, suite, cfg.step_limit)
    return suite


def run_manifest(manifest, jobs=1):
    """Returns (report, generated suites by program id)."""
    comparisons, excluded, generated = [], [], {}
    for entry in manifest.entries:
        try:
            source = entry.program_path.read_text(encoding="utf-8")
            program = parse(source, source_name=entry.program_id)
            refs = {r.origin: r for r in entry.suites}
            manual = _resolve_suite(refs["manual"], program, entry.program_id, manifest.step_limit)
            gen = _resolve_suite(refs["generated"], program, entry.program_id, manifest.step_limit)
            if refs["generated"].path is None:
                generated[entry.program_id] = gen
            comparisons.append(pipeline.compare_suites(
                program, manual, gen, manifest.step_limit, jobs, entry.program_id))
        except (MiniLangError, SuiteConfigError, suitegen.GenerationError, ValueError,
                UnicodeDecodeError, json.JSONDecodeError) as exc:
            excluded.append((entry.program_id, str(entry.program_path.relative_to(manifest.root)),
                             f"{type(exc).__name__}: {exc}"))
    return build_report(comparisons, excluded, manifest.step_limit), generated


# -- serialisation ---------------------------------------------------------------

def fmt(x):
    """CSV cell: 6 significant digits for floats, blanks for missing values."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".6g")
    return str(x)


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


MUTANT_HEADER = ("program_id", "mutant_id", "operator", "statement", "depth",
                 "killed_a", "rank_a", "universe_a", "rscore_a",
                 "killed_b", "rank_b", "universe_b", "rscore_b")


def mutant_rows(comparison):
    for ma, mb in zip(comparison.score_a.mutant_results, comparison.score_b.mutant_results):
        yield (comparison.program_id, ma.mutant_id, ma.operator, ma.fault_statement,
               ma.fault_depth, ma.killed, ma.rank, ma.universe_size, ma.rscore,
               mb.killed, mb.rank, mb.universe_size, mb.rscore)


def comparison_to_json(c):
    return {
        "program_id": c.program_id,
        "suite_a": c.suite_a, "suite_b": c.suite_b,
        "statement_coverage_a": c.statement_coverage_a,
        "statement_coverage_b": c.statement_coverage_b,
        "branch_coverage_a": c.branch_coverage_a,
        "branch_coverage_b": c.branch_coverage_b,
        "score_a": score_to_json(c.score_a),
        "score_b": score_to_json(c.score_b),
        "paired": [dict(zip(("mutant_id", "depth", "operator", "rscore_a", "rscore_b"), p))
                   for p in c.paired],
        "killed_only_a": c.killed_only_a, "killed_only_b": c.killed_only_b,
    }


def score_to_json(r):
    d = dataclasses.asdict(r)
    d["by_depth"] = {str(k): v for k, v in d["by_depth"].items()}
    return d


def report_to_json(report):
    return {
        "version": MANIFEST_VERSION,
        "step_limit": report.step_limit,
        "suite_a_origin": "manual",
        "suite_b_origin": "generated",
        "programs": [dataclasses.asdict(r) for r in report.rows],
        "aggregate": report.aggregate,
        "wilcoxon": report.wilcoxon,
        "by_depth": report.by_depth,
        "by_operator": report.by_operator,
        "excluded": [dict(zip(("program_id", "path", "reason"), e)) for e in report.excluded],
        "comparisons": [comparison_to_json(c) for c in report.comparisons],
    }


def _boxplot_rows(strata, key_name):
    for s in strata:
        for label, key in (("a", "summary_a"), ("b", "summary_b")):
            summ = s[key]
            if summ is None:
                continue
            yield (s[key_name], label, summ["count"], summ["mean"], summ["min"],
                   summ["q1"], summ["median"], summ["q3"], summ["max"], s["r"])


REPORT_FILES = ("report.json", "report.csv", "mutants.csv",
                "boxplot_depth.csv", "boxplot_operator.csv", "excluded.csv")


def report_files(report) -> dict:
    """File name -> text for every report artifact."""
    box_header = ("count", "mean", "min", "q1", "median", "q3", "max", "r")
    return {
        "report.json": json.dumps(report_to_json(report), indent=2) + "\n",
        "report.csv": write_csv(
            [f.name for f in dataclasses.fields(ProgramRow)],
            [dataclasses.astuple(r) for r in report.rows]),
        "mutants.csv": write_csv(
            MUTANT_HEADER, [row for c in report.comparisons for row in mutant_rows(c)]),
        "boxplot_depth.csv": write_csv(
            ("depth", "suite") + box_header, _boxplot_rows(report.by_depth, "depth")),
        "boxplot_operator.csv": write_csv(
            ("operator", "suite") + box_header, _boxplot_rows(report.by_operator, "operator")),
        "excluded.csv": write_csv(("program_id", "path", "reason"), report.excluded),
    }


def write_report(report, out_dir, generated=None):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in report_files(report).items():
        (out / name).write_text(text, encoding="utf-8")
    if generated:
        gdir = out / "generated"
        gdir.mkdir(exist_ok=True)
        for pid, suite in sorted(generated.items()):
            (gdir / f"{pid}_generated.suite").write_text(dumps_suite(suite), encoding="utf-8")
    return out


def run_experiment(manifest_path, out_dir, jobs=1) -> ComparisonReport:
    manifest = load_manifest(manifest_path)
    report, generated = run_manifest(manifest, jobs)
    write_report(report, out_dir, generated)
    return report


def bundled_corpus_dir() -> Path:
    return Path(__file__).with_name("corpus")


def bundled_manifest() -> Path:
    return bundled_corpus_dir() / "manifest.json"


def default_jobs():
    try:
        return max(1, int(os.environ.get("SBFLBENCH_JOBS", "1")))
    except ValueError:
        return 1
