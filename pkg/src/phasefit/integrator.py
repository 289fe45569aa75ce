"""Propagation of linear second-order problems y'' = W(x) y.

Because the right-hand side is linear in y, the off-grid stage of the
hybrid family can be eliminated algebraically and each step reduces to a
scalar linear solve; no nonlinear iteration is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SingularStep
from .methods import CoefficientSet, MethodId, coefficients

__all__ = ["Trajectory", "step", "integrate", "FieldFn", "FrequencyFn"]

# W(x): coefficient of y in y'' = W(x) y (inverse length squared).
FieldFn = Callable[[float], float]
# v(x): non-negative fitting frequency (inverse length); H = v(x) * h.
FrequencyFn = Callable[[float], float]

_SINGULAR_FLOOR = 1e-12


@dataclass(frozen=True)
class Trajectory:
    """Equally spaced samples of one integration run.

    ``n_evals`` counts right-hand-side (W) evaluations; every node is
    evaluated exactly once and reused by neighbouring steps, so it equals
    ``len(xs)`` (= number of steps + 2).
    """

    xs: np.ndarray
    ys: np.ndarray
    h: float
    n_evals: int

    @property
    def n_steps(self) -> int:
        return len(self.xs) - 2


def _advance(co: CoefficientSet, w_prev: float, w_curr: float, w_next: float,
             y_prev: float, y_curr: float, h: float) -> float:
    """One linear-solve step of the family; raises SingularStep when the
    implicit bracket degenerates."""
    a0, b0, b1, c1 = co.as_tuple()
    h2 = h * h
    h4 = h2 * h2
    lead = 1.0 - h2 * b0 * w_next + a0 * h4 * b1 * w_curr * w_next
    scale = 1.0 + abs(h2 * b0 * w_next) + abs(a0 * h4 * b1 * w_curr * w_next)
    if abs(lead) < _SINGULAR_FLOOR * scale:
        raise SingularStep("implicit bracket vanished (step too large for this field)")
    rhs = ((-c1 + h2 * b1 * w_curr + 2.0 * a0 * h4 * b1 * w_curr**2) * y_curr
           + (-1.0 + h2 * b0 * w_prev - a0 * h4 * b1 * w_curr * w_prev) * y_prev)
    return rhs / lead


def step(method: MethodId, w_prev: float, w_curr: float, w_next: float,
         y_prev: float, y_curr: float, h: float, H: float) -> float:
    """Advance one step given field samples at the three nodes.

    Solves the scheme for y_{n+1}:

        [1 - h^2 b0 W_next + a0 h^4 b1 W_curr W_next] y_next
            = [-c1 + h^2 b1 W_curr + 2 a0 h^4 b1 W_curr^2] y_curr
            + [-1 + h^2 b0 W_prev - a0 h^4 b1 W_curr W_prev] y_prev

    with the coefficients of ``method`` evaluated at ``H``.
    """
    return _advance(coefficients(method, H), w_prev, w_curr, w_next,
                    y_prev, y_curr, h)


def _sample(fn: Callable, xs: np.ndarray) -> np.ndarray:
    """Evaluate a scalar map on a grid, vectorized when the callable allows."""
    try:
        vals = np.asarray(fn(xs), dtype=float)
        if vals.shape == xs.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([float(fn(float(x))) for x in xs], dtype=float)


def integrate(method: MethodId, field: FieldFn, freq: FrequencyFn,
              x0: float, x_end: float, h: float,
              y0: float, y1: float) -> Trajectory:
    """Drive ``step`` over [x0, x_end] with fixed step h.

    Coefficients are re-evaluated at every step at H = v(x_n) * h, with
    v taken at the central node of the three-node stencil.  Starting
    values y0 = y(x0) and y1 = y(x0 + h) are supplied by the caller.
    """
    if h <= 0.0:
        raise ValueError(f"step must be positive, got {h!r}")
    if x_end <= x0 + 2.0 * h:
        raise ValueError(f"domain too short: need x_end > x0 + 2h, "
                         f"got [{x0!r}, {x_end!r}] with h={h!r}")
    n_intervals = int(np.floor((x_end - x0) / h + 1e-9))
    xs = x0 + h * np.arange(n_intervals + 1)
    ws = _sample(field, xs)
    vs = _sample(freq, xs)
    if not np.all(np.isfinite(ws)):
        bad = xs[~np.isfinite(ws)][0]
        raise ValueError(f"field is not finite at x={bad!r}")

    ys = np.empty_like(xs)
    ys[0] = y0
    ys[1] = y1
    cache: dict[float, CoefficientSet] = {}
    for n in range(1, n_intervals):
        H = vs[n] * h
        co = cache.get(H)
        if co is None:
            co = coefficients(method, H)
            cache[H] = co
        try:
            ys[n + 1] = _advance(co, ws[n - 1], ws[n], ws[n + 1],
                                 ys[n - 1], ys[n], h)
        except SingularStep as exc:
            raise SingularStep(f"{exc} at x={xs[n]!r}", x=float(xs[n])) from None
    return Trajectory(xs=xs, ys=ys, h=h, n_evals=len(xs))
