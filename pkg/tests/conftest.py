from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


# one pass/fail line per acceptance criterion, printed after the run
_criteria: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    n = props["criterion"]
    ok = report.outcome == "passed" and not hasattr(report, "wasxfail")
    prev = _criteria.get(n, (True, []))
    notes = prev[1] + ([props["note"]] if not ok and "note" in props else [])
    _criteria[n] = (prev[0] and ok, notes)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, notes = _criteria[n]
        line = f"criterion {n}: {'pass' if ok else 'FAIL'}"
        if notes:
            line += "  (" + "; ".join(notes) + ")"
        terminalreporter.write_line(line)
