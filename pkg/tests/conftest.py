import pytest

# criterion number -> (title, detail) filled in by the acceptance tests
ACCEPTANCE: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    number = getattr(item.function, "criterion", None)
    if number is None or report.when != "call":
        return
    entry = ACCEPTANCE.setdefault(number, {"detail": ""})
    entry["title"] = item.function.title
    entry["passed"] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        e = ACCEPTANCE[number]
        status = "PASS" if e.get("passed") else "FAIL"
        line = f"criterion {number:>2} {status}: {e['title']}"
        if e["detail"]:
            line += f" ({e['detail']})"
        terminalreporter.write_line(line)
