import warnings

import pytest

from suturekit.diagram import parse_pd, wirtinger
from suturekit.fibered import table_sweep
from suturekit.repvar import SolverConfig, solve_repvar
from suturekit.table import builtin_table

TREFOIL_PD = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"
FIGURE8_PD = "X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]"


@pytest.fixture(scope="session")
def table():
    return {e.id: e for e in builtin_table()}


@pytest.fixture(scope="session")
def trefoil():
    return parse_pd(TREFOIL_PD)


@pytest.fixture(scope="session")
def figure8():
    return parse_pd(FIGURE8_PD)


@pytest.fixture(scope="session")
def sweep():
    return table_sweep(builtin_table(), SolverConfig())


@pytest.fixture(scope="session")
def enumerations(table):
    out = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for kid, e in table.items():
            out[kid] = solve_repvar(wirtinger(e.diagram()), SolverConfig())
    return out


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)
