from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class GNResult:
    x: np.ndarray
    residual: float
    iterations: int


def fd_jacobian(fun, x, h=1e-7):
    """Central-difference Jacobian of a vector function."""
    cols = []
    for k in range(x.size):
        d = np.zeros_like(x)
        d[k] = h
        cols.append((fun(x + d) - fun(x - d)) / (2 * h))
    return np.stack(cols, axis=1)


def gauss_newton(fun, x0, *, fd_step=1e-7, step_tol=1e-12, max_iter=100, ftol=1e-14):
    """Damped Gauss-Newton on ``|fun(x)|^2``.

    The step length starts at 1, is halved whenever the trial residual does
    not decrease and is doubled back (capped at 1) after an accepted step.
    Stops when the accepted step is shorter than ``step_tol``, the residual
    norm drops under ``ftol``, or no halving gives descent.
    """
    x = np.array(x0, dtype=float)
    r = fun(x)
    cost = float(r @ r)
    alpha = 1.0
    it = 0
    for it in range(1, max_iter + 1):
        if np.sqrt(cost) <= ftol:
            break
        J = fd_jacobian(fun, x, fd_step)
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        while True:
            trial = x + alpha * step
            r_trial = fun(trial)
            cost_trial = float(r_trial @ r_trial)
            if cost_trial < cost or alpha < 1e-10:
                break
            alpha /= 2
        if cost_trial >= cost:
            break
        moved = alpha * np.linalg.norm(step)
        x, r, cost = trial, r_trial, cost_trial
        alpha = min(1.0, 2 * alpha)
        if moved <= step_tol:
            break
    return GNResult(x, float(np.sqrt(cost)), it)
