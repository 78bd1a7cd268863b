import numpy as np
import pytest

from noonspec import FrequencyGrid, SumFrequencySpectrum, TimeGrid


def single_bin_spectrum(nu0: float, step: float = 0.015625, count: int = 9):
    """All mass in one bin: an ideal monochromatic line at nu0.

    The step is a binary-exact float so step * (1/step) == 1 exactly and
    the resulting trace is a pure cosine to machine precision.
    """
    at = count // 2
    grid = FrequencyGrid(nu0 - at * step, step, count)
    weights = np.zeros(count)
    weights[at] = 1.0 / step
    return SumFrequencySpectrum(grid, weights, normalized=True)


def centered_time_grid(step: float, count: int) -> TimeGrid:
    return TimeGrid(-(count // 2) * step, step, count)


@pytest.fixture
def rng():
    return np.random.default_rng(20250808)
