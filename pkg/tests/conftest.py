import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE, key=lambda l: int(l.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
