import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the acceptance gate verdict lines after the test summary."""
    module = sys.modules.get("test_acceptance") or sys.modules.get(
        "tests.test_acceptance"
    )
    lines = getattr(module, "GATE_LINES", ()) if module else ()
    if lines:
        terminalreporter.section("acceptance gate")
        for line in lines:
            terminalreporter.write_line(line)
