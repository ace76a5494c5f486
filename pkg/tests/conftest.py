def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS, format_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k in RESULTS:
            terminalreporter.write_line(format_line(k, *RESULTS[k]))
        else:
            terminalreporter.write_line(f"criterion {k} [FAIL] {CRITERIA[k][0]}: did not complete")
