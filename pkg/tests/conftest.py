import re

_CRITERION = re.compile(r"::test_criterion_(\d+)_([a-z0-9_]+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one pass/fail line per acceptance criterion after the run."""
    results = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m:
                num = int(m.group(1))
                label = m.group(2).replace("_", " ")
                ok = status == "passed" and results.get(num, (None, True))[1]
                results[num] = (label, status == "passed")
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(results):
        label, ok = results[num]
        terminalreporter.write_line(
            f"criterion {num:02d}  {label:<44s} {'PASS' if ok else 'FAIL'}"
        )
