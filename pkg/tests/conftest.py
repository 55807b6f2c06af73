import numpy as np
import pytest

from bbqaoa import brute_force_cmax, build_diagonal, bundled_instance

import _report


@pytest.fixture(scope="session")
def clauses10():
    instance = bundled_instance("clauses10")
    return instance, build_diagonal(instance), brute_force_cmax(instance)


@pytest.fixture(scope="session")
def clauses20():
    instance = bundled_instance("clauses20")
    return instance, build_diagonal(instance), brute_force_cmax(instance)


@pytest.fixture(scope="session")
def clauses30():
    instance = bundled_instance("clauses30")
    return instance, build_diagonal(instance), brute_force_cmax(instance)


@pytest.fixture()
def rng():
    return np.random.default_rng(42)


def pytest_terminal_summary(terminalreporter):
    lines = _report.summary_lines()
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
