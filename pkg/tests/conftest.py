"""Shared fixtures: expensive solves are done once per session."""

import numpy as np
import pytest

from vmeson.channels import CHANNELS
from vmeson.observables import uncertainty_scan
from vmeson.solver import converge, solve_channel

HEAVY_LIGHT = ("D*_u", "D*_d", "D*_s", "B*_u", "B*_d", "B*_s", "B*_c")

# one "CRITERION n: PASS|FAIL" line per acceptance criterion, echoed
# after the run so they are visible whether or not the tests pass
ACCEPTANCE_VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_VERDICTS):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def dsu_small():
    """Cheap three-state D*_u solve used by structural tests."""
    return solve_channel(CHANNELS["D*_u"], n_states=3, grid_n=48, q_max=30.0)


@pytest.fixture(scope="session")
def ccbar_tower():
    return solve_channel(CHANNELS["ccbar"], n_states=8, grid_n=128, q_max=40.0)


@pytest.fixture(scope="session")
def bbbar_tower():
    return solve_channel(CHANNELS["bbbar"], n_states=8, grid_n=128, q_max=40.0)


@pytest.fixture(scope="session")
def heavy_light_converged():
    """Grid-converged two-state solves for all heavy-light channels."""
    out = {}
    for label in HEAVY_LIGHT:
        out[label] = converge(CHANNELS[label], n_states=2, tol=0.001)
    return out


@pytest.fixture(scope="session")
def heavy_light_scans():
    """Corner scans (two states) for all heavy-light channels."""
    out = {}
    for label in HEAVY_LIGHT:
        out[label] = uncertainty_scan(
            CHANNELS[label], n_states=2, grid_n=48, q_max=30.0
        )
    return out
