import math

import numpy as np
import pytest

from xyness import ModelParams

# the acceptance parameter grid: (gamma, lambda, beta_l, beta_r)
ACCEPTANCE_SETS = (
    ModelParams(0.5, 0.3, 2.0, 1.0),
    ModelParams(0.5, 0.3, 1.0, 3.0),
    ModelParams(-0.4, 1.7, 2.0, 2.0),
    ModelParams(0.9, 0.0, 4.0, 1.0),
)
CRITICAL_SET = ModelParams(0.0, 0.5, 1.0, 3.0)


def midpoint_grid(points: int) -> np.ndarray:
    """Uniform grid shifted by half a step, avoiding the zeros of kappa.

    At those isolated points the sign(0) = 0 convention collapses both
    singular values of the symbol to phi_beta, so the closed-form pair holds
    only almost everywhere; the offset grid tests it in general position.
    """
    return (np.arange(points) + 0.5) * (2.0 * math.pi / points)


@pytest.fixture(scope="session")
def base_params():
    """A generic non-critical, out-of-equilibrium parameter set."""
    return ModelParams(0.5, 0.3, 1.0, 2.0)


@pytest.fixture(scope="session")
def base_seq(base_params):
    from xyness import build_block_sequence

    return build_block_sequence(33, base_params, tol=1e-12)
