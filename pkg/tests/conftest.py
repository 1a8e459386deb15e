import pytest

from hermcodes import HermitianCurve, make_tower

# criterion name -> (ok, detail); filled by test_acceptance, printed at the end
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def t2():
    """GF(2) < GF(4): the q = 2 tower."""
    return make_tower(2, 1, 1)


@pytest.fixture(scope="session")
def t3():
    return make_tower(3, 1, 1)


@pytest.fixture(scope="session")
def t4():
    return make_tower(2, 1, 2)


@pytest.fixture(scope="session")
def t44():
    return make_tower(2, 2, 1)


@pytest.fixture(scope="session")
def t8():
    return make_tower(2, 1, 3)


@pytest.fixture(scope="session")
def t9():
    return make_tower(3, 1, 2)


@pytest.fixture(scope="session")
def curve4(t4):
    return HermitianCurve(t4)


@pytest.fixture(scope="session")
def curve8(t8):
    return HermitianCurve(t8)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(ACCEPTANCE.items(), key=lambda kv: int(kv[0].split()[0])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
