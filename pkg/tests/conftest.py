from __future__ import annotations

import pytest

from pcsp_adjoint.search import available_kernels, use_kernel


@pytest.fixture(params=available_kernels())
def kernel(request):
    with use_kernel(request.param):
        yield request.param


# criterion number -> (passed, line); filled by test_acceptance and echoed
# in the terminal summary so the lines show even with output capture on
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number][1])
