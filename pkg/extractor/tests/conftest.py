import pytest

from imagegen import write_png


@pytest.fixture
def image_dir(tmp_path):
    """Six decodable PNGs plus one nested, ids are relative POSIX paths."""
    root = tmp_path / "images"
    root.mkdir()
    for i in range(6):
        write_png(root / f"shot{i:02d}.png", seed=100 + i)
    nested = root / "extra"
    nested.mkdir()
    write_png(nested / "bonus.png", seed=999)
    return root


ACCEPTANCE_LABELS = {
    6: "directional gain over sim-only scoring on a real dataset subset",
    8: "cross-component cosine consistency (framework vs scoring package)",
}

_acceptance_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if "test_cross_component.py::test_criterion_" not in report.nodeid:
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
    status_word = {"passed": "PASS", "skipped": "SKIP"}
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria (extractor):")
    for number in sorted(ACCEPTANCE_LABELS):
        outcome = _acceptance_outcomes.get(number)
        if outcome is None:
            continue
        status = status_word.get(outcome, "FAIL")
        terminalreporter.write_line(
            f"  criterion {number}: {status} - {ACCEPTANCE_LABELS[number]}"
        )
