"""Shared test plumbing: the acceptance-criterion result banner."""

import functools

ACCEPTANCE_LINES: list[str] = []


def record_criterion(num: int, name: str):
    """Decorator: log one PASS/FAIL line per acceptance criterion.

    The wrapped test returns a detail string; any exception records a FAIL
    line and re-raises so pytest still reports the failure normally.
    """

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                ACCEPTANCE_LINES.append(
                    f"CRITERION {num} FAIL: {name} — {type(exc).__name__}: {exc}"
                )
                raise
            suffix = f" — {detail}" if detail else ""
            ACCEPTANCE_LINES.append(f"CRITERION {num} PASS: {name}{suffix}")

        return wrapper

    return deco


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
