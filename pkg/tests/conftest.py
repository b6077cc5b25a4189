def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for check in CRITERIA:
        if check.__name__ in RESULTS:
            ok, detail = RESULTS[check.__name__]
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {check.__name__}: {detail}")
