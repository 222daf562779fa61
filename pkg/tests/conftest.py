"""Shared test infrastructure: acceptance-criterion reporting."""

from collections import OrderedDict

_RESULTS = OrderedDict()


def record_criterion(number: int, name: str, passed: bool, detail: str = "") -> None:
    """Log one acceptance-criterion outcome (printed live and in the summary)."""
    status = "PASS" if passed else "FAIL"
    print(f"[ACCEPTANCE] {number:02d} {name}: {status}" + (f" ({detail})" if detail else ""))
    entry = _RESULTS.setdefault(number, {"name": name, "passed": True, "details": []})
    entry["passed"] &= passed
    if detail:
        entry["details"].append(f"{status}: {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        status = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"{number:02d} {entry['name']:32s} {status}")
        if not entry["passed"]:
            for line in entry["details"]:
                if line.startswith("FAIL"):
                    terminalreporter.write_line(f"     {line}")
