import os
from pathlib import Path

import hypothesis
import pytest

from sbflbench.experiment import bundled_corpus_dir
from sbflbench.minilang import parse_file
from sbflbench.suitefile import load_suite

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TESTS = Path(__file__).resolve().parent
GOLDEN = TESTS / "golden"
FIXTURES = TESTS / "fixtures"
CORPUS = bundled_corpus_dir()
CORPUS_PROGRAMS = ("triangle", "deep", "loops", "logger", "straight", "tokenizer")


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


def load_program(name):
    return parse_file(CORPUS / f"{name}.mini")


def load_manual(name):
    return load_suite(CORPUS / f"{name}_manual.suite")


# Acceptance criteria append (label, passed, detail) here; printed after the run.
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0][1:].split()[0])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
