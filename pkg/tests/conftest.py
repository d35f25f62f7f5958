import pytest

from srak import cherednik as CH
from srak import groups as G
from srak import sra as S


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)

S2_SPEC = {"builtin": {"type": "symmetric", "n": 2, "rep": "reflection"}, "gen_names": ["s"]}
S3_SPEC = {"builtin": {"type": "symmetric", "n": 3, "rep": "reflection"}, "gen_names": ["s1", "s2"]}
WEYL_SPEC = {"dim_h": 1, "generators_on_h": []}


@pytest.fixture(scope="session")
def g2():
    return G.group_from_spec(S2_SPEC)


@pytest.fixture(scope="session")
def g3():
    return G.group_from_spec(S3_SPEC)


@pytest.fixture(scope="session")
def rd2(g2):
    return G.symplectic_reflections(g2)


@pytest.fixture(scope="session")
def rd3(g3):
    return G.symplectic_reflections(g3)


@pytest.fixture(scope="session")
def ch2():
    return CH.build_cherednik(S2_SPEC)


@pytest.fixture(scope="session")
def ch3():
    return CH.build_cherednik(S3_SPEC)


@pytest.fixture(scope="session")
def omega_alg2(g2, rd2):
    return S.SRAlgebra.omega_form(g2, rd2)


@pytest.fixture(scope="session")
def omega_alg3(g3, rd3):
    return S.SRAlgebra.omega_form(g3, rd3)
