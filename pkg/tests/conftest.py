import numpy as np
import pytest

from wavelab import BumpSpec, InitialData


@pytest.fixture
def unit_bump():
    return BumpSpec(center=(0.0, 0.0), radius=1.0, amplitude=1.0)


@pytest.fixture
def radial_data():
    """Centered two-component data, asymmetric between components."""
    return InitialData(
        f1=(BumpSpec((0.0, 0.0), 1.0, 1.0),),
        g1=(BumpSpec((0.0, 0.0), 0.7, -0.5),),
        f2=(BumpSpec((0.0, 0.0), 0.8, 0.3),),
        g2=(BumpSpec((0.0, 0.0), 1.0, 1.0),),
        epsilon=0.3,
    )


@pytest.fixture
def offset_data():
    """Non-radial data exercising genuinely 2D code paths."""
    return InitialData(
        f1=(BumpSpec((0.3, 0.15), 0.9, 1.0),),
        g1=(BumpSpec((-0.1, 0.2), 0.8, -0.6),),
        epsilon=1.0,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
