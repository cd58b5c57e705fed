"""Reading and writing ``.suite`` JSON files.

Layout::

    {"name": "...", "origin": "manual" | "generated",
     "cases": [{"name": "...",
                "call": {"function": "f", "args": [{"int": 3}, {"float": 1.5}]},
                "expect": {"returns": {"bool": true}} | "runs"}]}
"""
import json

from .interp import RUNS, Returns, SuiteConfigError, TestCase, TestSuite, value_type

_TYPES = {"int": int, "float": float, "bool": bool}


def literal_from_json(obj):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SuiteConfigError(f"bad typed literal {obj!r}")
    (tname, raw), = obj.items()
    if tname not in _TYPES:
        raise SuiteConfigError(f"unknown literal type {tname!r}")
    if tname == "bool":
        if not isinstance(raw, bool):
            raise SuiteConfigError(f"bad bool literal {raw!r}")
        return raw
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise SuiteConfigError(f"bad {tname} literal {raw!r}")
    if tname == "int" and isinstance(raw, float):
        if not raw.is_integer():
            raise SuiteConfigError(f"bad int literal {raw!r}")
    return _TYPES[tname](raw)


def literal_to_json(value):
    return {value_type(value): value}


def case_from_json(obj):
    call = obj["call"]
    args = tuple(literal_from_json(a) for a in call.get("args", []))
    expect = obj.get("expect", "runs")
    if expect == "runs":
        expectation = RUNS
    elif isinstance(expect, dict) and "returns" in expect:
        expectation = Returns(literal_from_json(expect["returns"]))
    else:
        raise SuiteConfigError(f"bad expectation {expect!r}")
    return TestCase(obj["name"], call["function"], args, expectation)


def case_to_json(case):
    exp = case.expectation
    return {
        "name": case.name,
        "call": {"function": case.target_function,
                 "args": [literal_to_json(a) for a in case.args]},
        "expect": {"returns": literal_to_json(exp.value)} if isinstance(exp, Returns) else "runs",
    }


def suite_from_json(obj):
    try:
        return TestSuite(
            obj["name"], obj.get("origin", "other"),
            tuple(case_from_json(c) for c in obj["cases"]),
        )
    except (KeyError, TypeError) as exc:
        raise SuiteConfigError(f"malformed suite: {exc}") from exc


def suite_to_json(suite):
    return {"name": suite.name, "origin": suite.origin,
            "cases": [case_to_json(c) for c in suite.cases]}


def dumps_suite(suite) -> str:
    return json.dumps(suite_to_json(suite), indent=2) + "\n"


def load_suite(path) -> TestSuite:
    with open(path, encoding="utf-8") as fh:
        return suite_from_json(json.load(fh))


def save_suite(suite, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_suite(suite))
