"""Command-line front end: ``sbflbench <subcommand> ...``."""
import argparse
import csv
import dataclasses
import json
import sys
from pathlib import Path

from . import experiment, interp, pipeline, sbfl, stats, suitegen
from .experiment import write_csv
from .interp import DEFAULT_STEP_LIMIT
from .minilang import (
    MiniLangError, enumerate_branches, enumerate_statements, parse_file, pretty_print,
)
from .mutation import MutationError, generate_all_mutants
from .suitefile import dumps_suite, load_suite


class CliError(Exception):
    pass


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _program(path):
    return parse_file(path)


def _suite(path):
    return load_suite(path)


# -- subcommands -----------------------------------------------------------------

def cmd_parse(args):
    p = _program(args.program)
    if args.pretty:
        return pretty_print(p)
    stmts = enumerate_statements(p)
    if args.format == "csv":
        return write_csv(("statement", "line", "column", "kind", "depth", "function"),
                         [(s.id, s.line, s.column, s.kind, s.nesting_depth,
                           s.enclosing_function) for s in stmts])
    return _json({
        "functions": list(p.function_names),
        "statements": [dataclasses.asdict(s) for s in stmts],
        "branches": [dataclasses.asdict(b) for b in enumerate_branches(p)],
    })


def cmd_coverage(args):
    p = _program(args.program)
    spec = interp.run_suite(p, _suite(args.suite), args.step_limit)
    result = {
        "statement": interp.statement_coverage(spec),
        "branch": interp.branch_coverage(spec),
        "verdicts": {e.case_name: e.verdict.value for e in spec.executions},
    }
    if args.format == "csv":
        return write_csv(("metric", "value"),
                         [("statement", result["statement"]), ("branch", result["branch"])])
    return _json(result)


def _mutant_rows(p):
    for m in generate_all_mutants(p):
        s = next(x for x in enumerate_statements(p) if x.id == m.fault_statement)
        yield {"mutant_id": m.id, "operator": m.operator.value, "statement": m.fault_statement,
               "line": s.line, "column": s.column, "description": m.site.description,
               "depth": m.fault_depth}


def cmd_mutants(args):
    rows = list(_mutant_rows(_program(args.program)))
    if args.format == "csv":
        header = ("mutant_id", "operator", "statement", "line", "column", "description", "depth")
        return write_csv(header, [tuple(r[h] for h in header) for r in rows])
    return _json(rows)


def cmd_sbfl(args):
    p = _program(args.program)
    suite = _suite(args.suite)
    fault = None
    target = p
    if args.mutant is not None:
        mutants = generate_all_mutants(p)
        if not 0 <= args.mutant < len(mutants):
            raise CliError(f"mutant id {args.mutant} out of range (0..{len(mutants) - 1})")
        target = mutants[args.mutant].mutated_program
        fault = mutants[args.mutant].fault_statement
    spec = interp.run_suite(target, suite, args.step_limit)
    table = sbfl.build_table(spec)
    ranks = sbfl.rank_statements(table) if table.executed_statements else None
    lines = {s.id: s.line for s in enumerate_statements(target)}
    rows = []
    for sid in spec.statement_universe:
        c = table.entries[sid]
        rank = ranks.ranks.get(sid) if ranks else None
        score = sbfl.rscore(rank, ranks.universe_size) if rank is not None else None
        rows.append((sid, lines[sid], c.fail_count, c.pass_count, c.susp, rank, score,
                     sid == fault))
    rows.sort(key=lambda r: (r[5] is None, r[5] or 0, r[0]))
    header = ("statement", "line", "fail", "pass", "susp", "rank", "rscore", "fault")
    if args.format == "json":
        return _json({"total_fail": table.total_fail,
                      "universe_size": ranks.universe_size if ranks else 0,
                      "rows": [dict(zip(header, r)) for r in rows]})
    return write_csv(header, rows)


def cmd_score(args):
    p = _program(args.program)
    result = pipeline.sbfl_score(p, _suite(args.suite), args.step_limit, args.jobs,
                                 program_id=Path(args.program).stem)
    if args.format == "csv":
        header = ("mutant_id", "operator", "statement", "depth", "killed", "rank",
                  "universe", "rscore")
        return write_csv(header, [
            (r.mutant_id, r.operator, r.fault_statement, r.fault_depth, r.killed, r.rank,
             r.universe_size, r.rscore) for r in result.mutant_results])
    return _json(experiment.score_to_json(result))


def cmd_gen(args):
    p = _program(args.program)
    cfg = suitegen.GenConfig(
        seed=args.seed, budget=args.budget, per_function=args.per_function,
        int_range=tuple(args.int_range), float_range=tuple(args.float_range),
        step_limit=args.step_limit,
    )
    try:
        suite = suitegen.generate_suite(p, cfg, name=args.name)
    except suitegen.GenerationError as exc:
        raise CliError(f"{exc} (statement coverage {exc.statement_coverage:.3f}, "
                       f"branch coverage {exc.branch_coverage:.3f})") from exc
    if args.minimize:
        suite = suitegen.minimize_suite(p, suite, args.step_limit)
    return dumps_suite(suite)


def read_pairs(path):
    labels, a, b = [], [], []
    with open(path, newline="", encoding="utf-8") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) not in (2, 3):
                raise CliError(f"{path}:{i + 1}: expected 2 columns (a, b) or 3 (label, a, b)")
            label, x, y = (row if len(row) == 3 else [str(i), *row])
            try:
                a.append(float(x))
                b.append(float(y))
            except ValueError:
                if i == 0:
                    continue  # header row
                raise CliError(f"{path}:{i + 1}: non-numeric value") from None
            labels.append(label)
    return stats.PairedSample.of(a, b, labels)


def cmd_stats(args):
    sample = read_pairs(args.csv)
    alts = [args.alternative] if args.alternative else list(stats.ALTERNATIVES)
    results = {alt: dataclasses.asdict(stats.wilcoxon_signed_rank(sample, alt)) for alt in alts}
    out = {"n": len(sample.a_values),
           "summary_a": dataclasses.asdict(stats.summarize(sample.a_values)),
           "summary_b": dataclasses.asdict(stats.summarize(sample.b_values)),
           "wilcoxon": results}
    if args.format == "csv":
        header = ("alternative", "n_effective", "w_statistic", "p_value", "method", "z",
                  "effect_size_r")
        return write_csv(header, [tuple(r[h] if h != "alternative" else alt for h in header)
                                  for alt, r in results.items()])
    return _json(out)


def cmd_compare(args):
    p = _program(args.program)
    c = pipeline.compare_suites(p, _suite(args.suite_a), _suite(args.suite_b),
                                args.step_limit, args.jobs, program_id=Path(args.program).stem)
    if args.format == "csv":
        return write_csv(experiment.MUTANT_HEADER, experiment.mutant_rows(c))
    return _json(experiment.comparison_to_json(c))


def cmd_run(args):
    manifest = args.manifest or experiment.bundled_manifest()
    report = experiment.run_experiment(manifest, args.out, args.jobs)
    summary = {
        "out": str(args.out),
        "programs": len(report.rows),
        "excluded": len(report.excluded),
        "aggregate": report.aggregate,
    }
    return _json(summary)


# -- argument parsing --------------------------------------------------------------

def _fmt_arg(p, default="json"):
    p.add_argument("--format", choices=("json", "csv"), default=default)
    p.add_argument("--out", help="write output to this path instead of stdout")


def _step_arg(p):
    p.add_argument("--step-limit", type=int, default=DEFAULT_STEP_LIMIT)


def _jobs_arg(p):
    p.add_argument("--jobs", type=int, default=experiment.default_jobs(),
                   help="worker processes (default: $SBFLBENCH_JOBS or 1)")


def build_parser():
    ap = argparse.ArgumentParser(prog="sbflbench", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a .mini file; list statements and branches")
    p.add_argument("program")
    p.add_argument("--pretty", action="store_true", help="print canonical source instead")
    _fmt_arg(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("coverage", help="statement and branch coverage of a suite")
    p.add_argument("program")
    p.add_argument("suite")
    _step_arg(p)
    _fmt_arg(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("mutants", help="mutant manifest for a program")
    p.add_argument("program")
    _fmt_arg(p)
    p.set_defaults(func=cmd_mutants)

    p = sub.add_parser("sbfl", help="ranked Ochiai suspiciousness for a program or mutant")
    p.add_argument("program")
    p.add_argument("suite")
    p.add_argument("--mutant", type=int, help="rank statements of this mutant instead")
    _step_arg(p)
    _fmt_arg(p, default="csv")
    p.set_defaults(func=cmd_sbfl)

    p = sub.add_parser("score", help="SBFL score of a suite over all mutants")
    p.add_argument("program")
    p.add_argument("suite")
    _step_arg(p)
    _jobs_arg(p)
    _fmt_arg(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("gen", help="generate a regression suite by random search")
    p.add_argument("program")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--int-range", type=int, nargs=2, default=(-100, 100), metavar=("LO", "HI"))
    p.add_argument("--float-range", type=float, nargs=2, default=(-100.0, 100.0),
                   metavar=("LO", "HI"))
    p.add_argument("--per-function", action="store_true")
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--name")
    p.add_argument("--out")
    _step_arg(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="Wilcoxon signed-rank test on a two-column CSV")
    p.add_argument("csv")
    p.add_argument("--alternative", choices=stats.ALTERNATIVES)
    _fmt_arg(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("compare", help="compare two suites on one program")
    p.add_argument("program")
    p.add_argument("suite_a")
    p.add_argument("suite_b")
    _step_arg(p)
    _jobs_arg(p)
    _fmt_arg(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", help="run the manual-vs-generated experiment on a corpus")
    p.add_argument("manifest", nargs="?", help="manifest JSON (default: bundled demo corpus)")
    p.add_argument("--out", required=True, help="output directory")
    _jobs_arg(p)
    p.set_defaults(func=cmd_run)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be at least 1")
    try:
        text = args.func(args)
    except (CliError, MiniLangError, MutationError, interp.SuiteConfigError,
            interp.CoverageError, experiment.ManifestError, ValueError, OSError) as exc:
        print(f"sbflbench: error: {exc}", file=sys.stderr)
        return 1
    if args.command == "run":
        sys.stdout.write(text)
    else:
        _emit(text, getattr(args, "out", None))
    return 0


if __name__ == "__main__":
    sys.exit(main())
