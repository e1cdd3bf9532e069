import numpy as np
import pytest

from honeywalk.coin import CoinPair, coin_from_name
from honeywalk.limitmap import compute_F, compute_F_line, compute_F_pair_4

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    print(line)
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def grover_pair():
    return CoinPair.uniform(coin_from_name("grover3"))


@pytest.fixture(scope="session")
def grover4_pair():
    return CoinPair.uniform(coin_from_name("grover4"))


@pytest.fixture(scope="session")
def dft_pair():
    return CoinPair(coin_from_name("dft3"), coin_from_name("dft3-dagger"))


@pytest.fixture(scope="session")
def F_grover(grover_pair):
    return compute_F(grover_pair, 1024)


@pytest.fixture(scope="session")
def F_dft(dft_pair):
    return compute_F(dft_pair, 1024)


@pytest.fixture(scope="session")
def maps4():
    return compute_F_pair_4(512)


@pytest.fixture(scope="session")
def F_line():
    return compute_F_line(4096)


@pytest.fixture
def rng():
    return np.random.default_rng(20151026)


# origin propagators up to t = 400, shared by the oracle-equivalence checks
ORACLE_T = 400


@pytest.fixture(scope="session")
def prop_grover(grover_pair):
    from oracles import origin_propagator
    return origin_propagator(grover_pair, ORACLE_T)


@pytest.fixture(scope="session")
def prop_dft(dft_pair):
    from oracles import origin_propagator
    return origin_propagator(dft_pair, ORACLE_T)


@pytest.fixture(scope="session")
def prop_grover4(grover4_pair):
    from oracles import origin_propagator
    return origin_propagator(grover4_pair, ORACLE_T)


@pytest.fixture(scope="session")
def prop_line():
    from oracles import line_origin_propagator
    return line_origin_propagator(ORACLE_T)
