import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import support


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not support.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in support.VERDICTS:
        terminalreporter.write_line(
            "%s — %s" % ("PASS" if ok else "FAIL", name))
