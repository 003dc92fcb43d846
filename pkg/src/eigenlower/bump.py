"""Smooth transition functions used to build compactly supported test functions.

The building block is the classic exponential bump g(t) = f(t)/(f(t)+f(1-t))
with f(t) = exp(-1/t) for t > 0.  The cut-off psi_{a,b} equals 1 on [-a, a],
0 outside (-b, b), and transitions through g evaluated on (t^2-a^2)/(b^2-a^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import numerics

# exp(w) overflows binary64 beyond ~709.78; past that g is 0 or 1 exactly.
_EXP_CAP = 709.0


def f_raw(t: float) -> float:
    """exp(-1/t) for t > 0, zero otherwise; underflows to 0 silently."""
    if t <= 0.0:
        return 0.0
    x = -1.0 / t
    if x < -_EXP_CAP:
        return 0.0
    return math.exp(x)


def g_bump(t: float) -> float:
    """Monotone smooth step: 0 for t <= 0, 1 for t >= 1.

    Computed as 1/(1 + exp(1/t - 1/(1-t))) on (0, 1), which stays accurate
    where the naive quotient f/(f + f~) would be 0/0.
    """
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    w = 1.0 / t - 1.0 / (1.0 - t)
    if w > _EXP_CAP:
        return 0.0
    if w < -_EXP_CAP:
        return 1.0
    return 1.0 / (1.0 + math.exp(w))


def g_bump_deriv(t: float) -> float:
    """Closed-form derivative of g_bump; zero outside (0, 1).

    Differentiating the stable form gives g'(t) = (1/t^2 + 1/(1-t)^2) g (1-g),
    maximal at t = 1/2 where it equals 2.
    """
    if t <= 0.0 or t >= 1.0:
        return 0.0
    g = g_bump(t)
    return (1.0 / t ** 2 + 1.0 / (1.0 - t) ** 2) * g * (1.0 - g)


@dataclass(frozen=True)
class TransitionProfile:
    """Parameters 0 <= a < b of the cut-off psi_{a,b}."""

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a < self.b):
            raise ValueError("transition profile requires 0 <= a < b")

    @classmethod
    def from_rho_c(cls, rho: float, c: float, t_sigma: float) -> "TransitionProfile":
        """Profile with b = rho * t_sigma and a = b / c (0 < rho < 1, c > 1)."""
        if not (0.0 < rho < 1.0 and c > 1.0 and t_sigma > 0.0):
            raise ValueError("require 0 < rho < 1, c > 1, t_sigma > 0")
        b = rho * t_sigma
        return cls(b / c, b)


def psi(profile: TransitionProfile, t: float) -> float:
    """Even cut-off: 1 for |t| <= a, 0 for |t| >= b."""
    a, b = profile.a, profile.b
    return 1.0 - g_bump((t * t - a * a) / (b * b - a * a))


def psi_deriv(profile: TransitionProfile, t: float) -> float:
    """Chain-rule derivative of psi; |psi'| <= 4t/(b^2-a^2) on [a, b]."""
    a, b = profile.a, profile.b
    scale = b * b - a * a
    return -g_bump_deriv((t * t - a * a) / scale) * 2.0 * t / scale


def deriv_energy(profile: TransitionProfile, abs_tol: float = 1e-11) -> float:
    """Quadrature of the transition energy  int_a^b psi'(t)^2 dt."""
    res = numerics.integrate(lambda t: psi_deriv(profile, t) ** 2,
                             profile.a, profile.b, abs_tol=abs_tol)
    return res.value


def deriv_energy_majorant(profile: TransitionProfile) -> float:
    """Analytic upper bound 16 (b^3-a^3) / (3 (b^2-a^2)^2) for the energy."""
    a, b = profile.a, profile.b
    return 16.0 * (b ** 3 - a ** 3) / (3.0 * (b * b - a * a) ** 2)


def transition_energy_majorant(rho: float, c: float, t_sigma: float) -> float:
    """Energy bound 16/(3 rho T) * c(c^3-1)/(c^2-1)^2 in (rho, c) form.

    Equals deriv_energy_majorant of the profile built from (rho, c, t_sigma).
    """
    if not (0.0 < rho < 1.0 and c > 1.0 and t_sigma > 0.0):
        raise ValueError("require 0 < rho < 1, c > 1, t_sigma > 0")
    return 16.0 / (3.0 * rho * t_sigma) * c * (c ** 3 - 1.0) / (c * c - 1.0) ** 2
