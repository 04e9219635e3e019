import numpy as np
import pytest

from infoload import (
    ExpGrowthCost,
    ExpSaturating,
    Hyperbolic,
    PowerCost,
    Trader,
    ZeroCost,
)


def random_trader(rng, cost_family=None):
    """Random valid trader spanning both success families and all cost families."""
    gain = rng.uniform(0.5, 5.0)
    loss = rng.uniform(0.5, 5.0)
    if rng.random() < 0.5:
        success = ExpSaturating(rng.uniform(0.3, 3.0))
    else:
        success = Hyperbolic(rng.uniform(0.3, 3.0))
    family = cost_family or rng.choice(["power", "exp_growth", "zero"], p=[0.5, 0.35, 0.15])
    if family == "power":
        cost = PowerCost(rng.uniform(0.01, 5.0), rng.uniform(1.5, 3.0))
    elif family == "exp_growth":
        cost = ExpGrowthCost(rng.uniform(0.01, 2.0), rng.uniform(0.3, 2.0))
    else:
        cost = ZeroCost()
    return Trader(gain, loss, success, cost)


@pytest.fixture
def reference_trader():
    """Interior-optimum trader with known i_u near 1.74553."""
    return Trader(1.0, 1.0, ExpSaturating(1.0), PowerCost(0.1, 2.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)
