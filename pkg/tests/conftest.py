from support import ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
