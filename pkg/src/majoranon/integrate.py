"""Fixed-step classical Runge-Kutta integration."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from majoranon.errors import InvalidParameterError


def step_count(span: float, max_step: float) -> int:
    """Smallest number of equal steps covering ``span`` with step <= ``max_step``."""
    if not max_step > 0:
        raise InvalidParameterError(f"step must be positive, got {max_step!r}")
    if span < 0:
        raise InvalidParameterError(f"integration span must be >= 0, got {span!r}")
    # guard against 2.0 / 1e-3 evaluating to 2000.0000000000002
    return max(0, math.ceil(span / max_step - 1e-9))


def rk4(
    rhs: Callable[[np.ndarray], np.ndarray],
    y0: np.ndarray,
    span: float,
    max_step: float,
    checkpoints: list[float] | None = None,
) -> np.ndarray | list[np.ndarray]:
    """Integrate the autonomous system ``dy/dt = rhs(y)`` over ``[0, span]``.

    With ``checkpoints`` the state is recorded at each listed time (sorted, within
    the span); every inter-checkpoint interval is split into equal steps no longer
    than ``max_step``, so each checkpoint is hit exactly.
    """
    targets = [span] if checkpoints is None else sorted(checkpoints)
    if targets and targets[-1] > span + 1e-12:
        raise InvalidParameterError("checkpoint beyond the integration span")
    y = np.array(y0, copy=True)
    t = 0.0
    out = []
    for target in targets:
        n = step_count(target - t, max_step)
        if n:
            h = (target - t) / n
            for _ in range(n):
                k1 = rhs(y)
                k2 = rhs(y + 0.5 * h * k1)
                k3 = rhs(y + 0.5 * h * k2)
                k4 = rhs(y + h * k3)
                y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = target
        out.append(y.copy())
    return out[0] if checkpoints is None else out
