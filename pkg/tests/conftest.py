"""Shared fixtures: the monotone-quality synthetic set and result reporting."""

from __future__ import annotations

import pytest

from maclip import write_embeddings, write_mos, write_prompts
from monotone import MonotoneFixture, build_monotone_fixture


@pytest.fixture(scope="session")
def monotone_fixture() -> MonotoneFixture:
    return build_monotone_fixture()


@pytest.fixture(scope="session")
def monotone_files(tmp_path_factory, monotone_fixture) -> dict:
    """The same fixture written to disk for CLI-level tests."""
    root = tmp_path_factory.mktemp("monotone")
    paths = {
        "embeddings": str(root / "embeddings.mae1"),
        "prompts": str(root / "prompts.mae1"),
        "mos": str(root / "mos.csv"),
        "dir": str(root),
    }
    write_embeddings(monotone_fixture.matrix, paths["embeddings"])
    write_prompts(monotone_fixture.prompts, paths["prompts"])
    write_mos(monotone_fixture.mos, paths["mos"])
    return paths


ACCEPTANCE_LABELS = {
    1: "formula goldens",
    2: "property suites (>= 1000 seeded cases each)",
    3: "synthetic end-to-end: fused SRCC and lambda sweep",
    4: "byte-identical scores across --jobs settings",
    5: "logistic fit self-consistency",
}

_acceptance_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[1]
    number = int(name.split("_")[2])
    if report.when == "call":
        _acceptance_outcomes[number] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _acceptance_outcomes[number] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_outcomes:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for number in sorted(ACCEPTANCE_LABELS):
        outcome = _acceptance_outcomes.get(number)
        if outcome is None:
            continue
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(
            f"  criterion {number}: {status} - {ACCEPTANCE_LABELS[number]}"
        )
