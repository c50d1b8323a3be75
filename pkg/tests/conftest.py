import numpy as np
import pytest

from fracnls.spectral import ComplexField, Grid1D, TimeGrid


@pytest.fixture
def grid():
    return Grid1D(20.0, 1024)


@pytest.fixture
def small_grid():
    return Grid1D(10.0, 128)


@pytest.fixture
def tgrid():
    return TimeGrid(1.0, 256)


@pytest.fixture
def gaussian(grid):
    return ComplexField.from_function(grid, lambda x: np.exp(-(x**2)))


def random_field(grid, seed=0, decay=2.0):
    """Random smooth-ish field with a prescribed spectral envelope.

    The unpaired Nyquist mode is left empty so the field is invariant under
    the multiplier operations (which zero it by design)."""
    rng = np.random.default_rng(seed)
    xi = grid.frequencies
    env = (1.0 + xi**2) ** (-decay / 2.0)
    env[0] = 0.0  # sorted slot 0 is the -N/2 mode
    phases = rng.uniform(0, 2 * np.pi, len(xi))
    spec = env * np.exp(1j * phases)
    from fracnls.spectral import dft_inverse

    return dft_inverse(spec, grid)
