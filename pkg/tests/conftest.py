import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240)


def random_single_qubit_density(rng):
    """Random full-rank single-qubit density matrix (for product-state fixtures)."""
    ginibre = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    mat = ginibre @ ginibre.conj().T
    return mat / np.trace(mat)
