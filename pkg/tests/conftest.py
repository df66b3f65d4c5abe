import numpy as np
import pytest

from holdermd import BallRule, GroupModel, MetricSpec

GROUPS = [GroupModel.lattice(1), GroupModel.lattice(2), GroupModel.free(2)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=GROUPS, ids=lambda g: g.name)
def model(request):
    return request.param


def make_spec(model, r, tau=1e-9):
    return MetricSpec(BallRule(model), r=r, tau=tau)


_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""
    name = request.node.name
    holder = {"detail": ""}
    yield holder
    failed = getattr(request.node, "rep_call", None) is not None and request.node.rep_call.failed
    status = "FAIL" if failed else "PASS"
    _ACCEPTANCE.append(f"[{status}] {name}: {holder['detail']}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
