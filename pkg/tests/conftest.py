import math

import numpy as np
import pytest

from squeezestats.state import SqueezeParams


def align_phase(ref: np.ndarray, other: np.ndarray) -> np.ndarray:
    """Rotate ``other`` by the single global phase that best matches ``ref``."""
    overlap = np.vdot(other, ref)
    return other * (overlap / abs(overlap))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def generic_params():
    return [
        SqueezeParams(0.7, -0.3, 0.4, 1.1),
        SqueezeParams(1.2, 0.9, 2.5, 0.2),
        SqueezeParams(-1.0, 1.1, math.pi / 3, 2.9),
        SqueezeParams(0.25, 0.0, 1.3, 0.6),
    ]
