import importlib

import pytest

ACCEPTANCE = {}


def kernel_modules():
    mods = [importlib.import_module("crhom._kernels_py")]
    try:
        mods.append(importlib.import_module("crhom._kernels_c"))
    except ImportError:
        pass
    return mods


@pytest.fixture(scope="module", params=kernel_modules(), ids=lambda m: m.BACKEND)
def kern(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
