"""Shared test plumbing: one-line acceptance verdicts in the terminal summary."""

_ACCEPTANCE_LINES: list[tuple[int, str]] = []


def record_criterion(number: int, description: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    line = f"criterion {number} ({description}): {status}"
    if detail:
        line += f" -- {detail}"
    _ACCEPTANCE_LINES.append((number, line))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
