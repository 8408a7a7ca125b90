from __future__ import annotations

import time

import pytest

from crescent.classify import classify_pipeline
from crescent.refdata import reference_rows
from crescent.solver import SolverConfig, realizable_census

PINNED = SolverConfig(starts=200, rng_seed=42)


@pytest.fixture(scope="session")
def report_n4():
    return classify_pipeline(4)


@pytest.fixture(scope="session")
def report_n5():
    return classify_pipeline(5)


@pytest.fixture(scope="session")
def census_n4(report_n4):
    return realizable_census(4, PINNED, report=report_n4)


@pytest.fixture(scope="session")
def census_n5_timed(report_n5):
    t0 = time.monotonic()
    census = realizable_census(5, PINNED, report=report_n5)
    return census, time.monotonic() - t0


@pytest.fixture(scope="session")
def census_n5(census_n5_timed):
    return census_n5_timed[0]


@pytest.fixture(scope="session")
def ref_rows():
    return reference_rows()
