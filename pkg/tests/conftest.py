import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from hypothesis import settings

import _acceptance_log

# Groebner runs have high variance; wall-clock deadlines would flake.
settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_log.lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_log.lines:
            terminalreporter.write_line(line)
