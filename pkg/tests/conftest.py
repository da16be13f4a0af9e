import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when == "call":
                name = nodeid.split("::")[-1]
                lines.append((name, "PASS" if outcome == "passed" else "FAIL", rep.duration))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, secs in sorted(lines, key=lambda x: int(x[0].split("_")[2])):
        terminalreporter.write_line(f"{status}  {name}  ({secs:.2f}s)")
