"""Shared fixtures: the bundled reference configuration is expensive to
build (512x512 complex grids plus an SVD), so it is constructed once per
session."""

import pytest

from homsim import sources
from homsim.sources import build_filtered_jsa
from homsim.spectral import heralded_state, schmidt_decompose


@pytest.fixture(scope="session")
def reference_source():
    return sources.reference_source()


@pytest.fixture(scope="session")
def reference_jsa(reference_source):
    return build_filtered_jsa(reference_source)


@pytest.fixture(scope="session")
def reference_state(reference_jsa, reference_source):
    return heralded_state(reference_jsa, reference_source.interfering_arm)


@pytest.fixture(scope="session")
def reference_purity(reference_jsa):
    return schmidt_decompose(reference_jsa).purity
