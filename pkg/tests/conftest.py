import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one [PASS]/[FAIL] line per acceptance check after the run."""
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    results = getattr(mod, "RESULTS", [])
    if not results:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance verdicts", sep="-")
    for status, message in results:
        terminalreporter.write_line(f"[{status}] {message}")
