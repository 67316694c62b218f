"""Central finite-difference gradients for verifying analytic backprop."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import NumericError


def finite_difference_grad(
    loss: Callable[[np.ndarray], float], theta: np.ndarray, h: float
) -> np.ndarray:
    """Component i: (loss(theta + h*e_i) - loss(theta - h*e_i)) / (2h)."""
    if h <= 0:
        raise NumericError(f"step h must be > 0, got {h}")
    theta = np.asarray(theta, dtype=np.float64)
    grad = np.empty_like(theta)
    for i in range(theta.size):
        bumped = theta.copy()
        bumped.flat[i] = theta.flat[i] + h
        up = float(loss(bumped))
        bumped.flat[i] = theta.flat[i] - h
        down = float(loss(bumped))
        if not (math.isfinite(up) and math.isfinite(down)):
            raise NumericError(f"non-finite loss at component {i}")
        grad.flat[i] = (up - down) / (2.0 * h)
    return grad
