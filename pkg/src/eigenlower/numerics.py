"""Shared numerical kernels: adaptive quadrature, IVP integration, root finding.

Thin deterministic wrappers around scipy's QUADPACK, Runge-Kutta and Brent
routines, with explicit error types and result records so callers never have
to interpret scipy's status conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from .errors import (
    NoSignChange,
    NonConvergence,
    NonFiniteSample,
    NonFiniteState,
    StepUnderflow,
)

DEFAULT_ABS_TOL = 1e-10
DEFAULT_ODE_TOL = 1e-9


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a 1-D integral with an absolute error estimate."""

    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be nonnegative")
        if self.evaluations < 1:
            raise ValueError("evaluations must be at least 1")


@dataclass(frozen=True)
class OdeTrajectory:
    """Solution nodes (t_i, state_i) of an initial value problem."""

    t: np.ndarray
    states: np.ndarray  # shape (len(t), dim)

    def __post_init__(self):
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("trajectory times must be strictly increasing")
        if self.states.ndim != 2 or self.states.shape[0] != self.t.shape[0]:
            raise ValueError("states must have one row per time node")

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def integrate(f: Callable[[float], float], lo: float, hi: float,
              abs_tol: float = DEFAULT_ABS_TOL, max_subdivisions: int = 100) -> QuadratureResult:
    """Adaptive Gauss-Kronrod quadrature of f over [lo, hi].

    Raises NonFiniteSample if f produces NaN/inf, NonConvergence if the
    requested absolute tolerance cannot be certified.
    """
    if not abs_tol > 0:
        raise ValueError("abs_tol must be positive")
    if lo > hi:
        raise ValueError("integration bounds must satisfy lo <= hi")
    if lo == hi:
        _checked_eval(f, lo)
        return QuadratureResult(0.0, 0.0, 1)

    calls = [0]

    def wrapped(t: float) -> float:
        calls[0] += 1
        return _checked_eval(f, t)

    out = quad(wrapped, lo, hi, epsabs=abs_tol, epsrel=0.0,
               limit=max_subdivisions, full_output=1)
    value, abserr, info = out[0], out[1], out[2]
    if len(out) > 3 or abserr > abs_tol:
        raise NonConvergence(
            f"quadrature error estimate {abserr:.3e} exceeds abs_tol {abs_tol:.3e} "
            f"after {info['last']} subdivisions")
    return QuadratureResult(float(value), float(abserr), int(info["neval"]))


def _checked_eval(f: Callable[[float], float], t: float) -> float:
    y = f(t)
    if not math.isfinite(y):
        raise NonFiniteSample(f"integrand returned {y!r} at t={t!r}")
    return float(y)


def integrate_ivp(rhs: Callable[[float, np.ndarray], Sequence[float]],
                  t0: float, s0: Sequence[float], t1: float,
                  step_tol: float = DEFAULT_ODE_TOL,
                  t_eval: Sequence[float] | None = None) -> OdeTrajectory:
    """Integrate s' = rhs(t, s) from t0 to t1 with adaptive RK45.

    step_tol controls both the relative and absolute per-step error.
    Optional t_eval requests the trajectory on specific nodes.
    """
    if not t0 < t1:
        raise ValueError("integration requires t0 < t1")

    def wrapped(t, y):
        dy = np.asarray(rhs(t, y), dtype=float)
        if not np.all(np.isfinite(dy)):
            raise NonFiniteState(f"rhs returned non-finite value at t={t!r}")
        return dy

    sol = solve_ivp(wrapped, (t0, t1), np.asarray(s0, dtype=float), method="RK45",
                    rtol=max(step_tol, 1e-13), atol=step_tol, t_eval=t_eval,
                    dense_output=False)
    if not sol.success:
        if sol.status == -1:
            raise StepUnderflow(sol.message)
        raise NonConvergence(sol.message)
    if not np.all(np.isfinite(sol.y)):
        raise NonFiniteState("solution contains non-finite states")
    return OdeTrajectory(sol.t.copy(), sol.y.T.copy())


def find_root(f: Callable[[float], float], lo: float, hi: float,
              tol: float = 1e-12) -> float:
    """Bracketed scalar root via Brent's method.

    Requires f(lo) * f(hi) <= 0; returns the endpoint itself when it is an
    exact zero.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if flo * fhi > 0:
        raise NoSignChange(f"f({lo})={flo:.3e} and f({hi})={fhi:.3e} have the same sign")
    return float(brentq(f, lo, hi, xtol=tol, rtol=8.9e-16))
