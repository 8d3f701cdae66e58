from hypothesis import strategies as st

CRITERIA_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
