import pytest

from kirwan.rootdata import build_pair

FAMILIES = [
    ("sp", {"n": 1}), ("sp", {"n": 2}), ("sp", {"n": 3}),
    ("su", {"p": 2, "q": 1}), ("su", {"p": 3, "q": 1}), ("su", {"p": 2, "q": 2}),
    ("su", {"p": 3, "q": 2}),
    ("so_star", {"n": 3}), ("so_star", {"n": 4}),
    ("so", {"p": 3, "q": 2}), ("so", {"p": 4, "q": 2}), ("so", {"p": 5, "q": 2}),
]

# filled in by test_acceptance.py; printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(params=FAMILIES, ids=lambda f: f"{f[0]}:" + ",".join(f"{k}={v}" for k, v in f[1].items()))
def any_pair(request):
    fam, kw = request.param
    return build_pair(fam, **kw)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
