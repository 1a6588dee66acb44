import pytest

from fuscat import kernels

CRITERIA = {
    "AC1": "group-to-category exact sequences",
    "AC2": "normality dichotomy",
    "AC3": "index-2 structure",
    "AC4": "FP index identity",
    "AC5": "monad agreement",
    "AC6": "pointed classification",
    "AC7": "equivariantization dimensions",
    "AC8": "character-table integrity",
    "AC9": "property suites",
}

_outcomes: dict[str, list[tuple[str, bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(code): test backs an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(marker.args[0], []).append((item.nodeid, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for code, title in CRITERIA.items():
        results = _outcomes.get(code)
        if not results:
            terminalreporter.write_line(f"{code} NOT RUN  {title}")
            continue
        failed = [nid for nid, ok in results if not ok]
        status = "PASS" if not failed else "FAIL"
        terminalreporter.write_line(f"{code} {status}  {title} ({len(results) - len(failed)}/{len(results)} checks)")
        for nid in failed:
            terminalreporter.write_line(f"    failed: {nid}")


@pytest.fixture(params=kernels.available_backends())
def backend(request, monkeypatch):
    """Route the kernel entry points through one backend for the test."""
    impl = kernels.get_backend(request.param)
    for name in ("cocycle_defect", "coboundary2", "smith_diagonal_mod", "solve_mod"):
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param
