import pytest

from sigarea import (
    Panel,
    gen_four_species,
    gen_two_species_bidir,
    gen_two_species_sync,
    gen_white_noise,
    scale_unit_range,
)
from sigarea.rng import derive_seed


@pytest.fixture(scope="session")
def sync_panel() -> Panel:
    return gen_two_species_sync(1000)


@pytest.fixture(scope="session")
def four_panel() -> Panel:
    return gen_four_species(1000)


@pytest.fixture(scope="session")
def bidir_panel_tau0() -> Panel:
    return gen_two_species_bidir(3000, 0)


@pytest.fixture(scope="session")
def sync_scaled(sync_panel):
    return tuple(scale_unit_range(s) for s in sync_panel.series)


@pytest.fixture(scope="session")
def noise_pair():
    # Independent channels; any detected relation is a false positive.
    a = scale_unit_range(gen_white_noise(1000, derive_seed(7, "dir", 0)))
    b = scale_unit_range(gen_white_noise(1000, derive_seed(7, "dir", 1)))
    return a, b
