"""Parallel-surface calculus on canonical surfaces.

All quantities live on the tube side fixed by the curvature catalog: the
normal distance t runs from 0 at the surface to the focal distance, and each
principal curvature family contributes a factor cos t - k_i sin t to the
Jacobian of the normal exponential map.  On homogeneous catalog surfaces the
factors are independent of the base point, so every tube integral reduces to
surface area times a 1-D quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import numerics
from .errors import HypothesisViolated, OutOfTubeRange
from .surfaces import CurvatureData


@dataclass(frozen=True)
class ParallelState:
    """Snapshot of the parallel surface at normal distance t."""

    t: float
    factors: tuple[float, ...]
    jacobian: float
    mean_curvature: float


@dataclass(frozen=True)
class SpruckWindow:
    """Window [0, T_eps] with T_eps = arctan(eps / Lambda^2)."""

    epsilon: float
    t_epsilon: float


@dataclass(frozen=True)
class SpruckReport:
    window: SpruckWindow
    max_mean_curvature: float
    bound: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_mean_curvature <= self.bound


@dataclass(frozen=True)
class DerivativeCheck:
    """Central difference of the parallel-area integral vs. its closed form."""

    t: float
    finite_difference: float
    formula_value: float

    @property
    def abs_error(self) -> float:
        return abs(self.finite_difference - self.formula_value)


def _require_in_tube(curv: CurvatureData, t: float, upper: float | None = None) -> None:
    hi = curv.focal_distance if upper is None else upper
    if not (0.0 <= t < hi):
        raise OutOfTubeRange(f"t={t!r} outside [0, {hi!r})")


def curvature_factors(curv: CurvatureData, t: float) -> tuple[float, ...]:
    """Factors cos t - k_i sin t, one per curvature family."""
    _require_in_tube(curv, t)
    c, s = math.cos(t), math.sin(t)
    return tuple(c - f.value * s for f in curv.principal_curvatures)


def jacobian_theta(curv: CurvatureData, t: float) -> float:
    """Tube Jacobian theta(t) = prod_i (cos t - k_i sin t)^mult_i."""
    factors = curvature_factors(curv, t)
    out = 1.0
    for f, fam in zip(factors, curv.principal_curvatures):
        out *= f ** fam.multiplicity
    return out


def curvature_factor_bound(curv: CurvatureData, t: float) -> tuple[float, float]:
    """Smallest curvature factor and its positive lower bound.

    For 0 <= t < T_Sigma every factor is at least sin(T_Sigma - t)/sin(T_Sigma);
    equality holds for the family realizing k_max when that value is positive.
    """
    _require_in_tube(curv, t, curv.t_sigma)
    min_factor = min(curvature_factors(curv, t))
    floor = math.sin(curv.t_sigma - t) / math.sin(curv.t_sigma)
    return min_factor, floor


def gradient_amplification(t_sigma: float, t: float) -> float:
    """Worst-case tangential gradient growth sin^2(T)/sin^2(T - t)."""
    if not (0.0 <= t < t_sigma):
        raise OutOfTubeRange(f"t={t!r} outside [0, {t_sigma!r})")
    return (math.sin(t_sigma) / math.sin(t_sigma - t)) ** 2


def exact_transported_gradient(curv: CurvatureData, grad_components: Sequence[float],
                               t: float) -> float:
    """Exact |grad^T|^2 of a normally extended function at distance t.

    grad_components are the gradient components along the principal
    directions, ordered like curv.principal_curvatures; each is divided by
    the corresponding curvature factor before squaring.
    """
    if len(grad_components) != len(curv.principal_curvatures):
        raise ValueError("one gradient component per curvature family expected")
    factors = curvature_factors(curv, t)
    return sum((g / f) ** 2 for g, f in zip(grad_components, factors))


def parallel_mean_curvature(curv: CurvatureData, t: float) -> float:
    """Mean curvature of the parallel surface: -(d/dt) log theta(t)."""
    factors = curvature_factors(curv, t)
    c, s = math.cos(t), math.sin(t)
    return sum(fam.multiplicity * (s + fam.value * c) / f
               for f, fam in zip(factors, curv.principal_curvatures))


def parallel_state(curv: CurvatureData, t: float) -> ParallelState:
    return ParallelState(t, curvature_factors(curv, t), jacobian_theta(curv, t),
                         parallel_mean_curvature(curv, t))


def spruck_window(curv: CurvatureData, epsilon: float) -> SpruckWindow:
    lam = curv.big_lambda
    if not 0.0 < epsilon <= lam / 2.0:
        raise HypothesisViolated(f"epsilon={epsilon!r} outside (0, Lambda/2]")
    m = sum(f.multiplicity for f in curv.principal_curvatures)
    if lam ** 2 < m - 1e-12:
        raise HypothesisViolated("mean curvature window requires Lambda >= sqrt(m)")
    return SpruckWindow(epsilon, math.atan(epsilon / lam ** 2))


def spruck_check(curv: CurvatureData, epsilon: float, samples: int = 1000) -> SpruckReport:
    """Evaluate H on a uniform grid of [0, T_eps] against the 2*Lambda cap."""
    window = spruck_window(curv, epsilon)
    n = max(2, samples)
    h_max = max(parallel_mean_curvature(curv, window.t_epsilon * i / (n - 1))
                for i in range(n))
    return SpruckReport(window, h_max, 2.0 * curv.big_lambda, n)


def tube_integral(curv: CurvatureData, radial: Callable[[float], float],
                  t_hi: float, area: float = 1.0, abs_tol: float = 1e-11) -> float:
    """Volume integral of a radial function over the tube of width t_hi.

    Homogeneity reduces it to  area * int_0^t_hi radial(t) theta(t) dt.
    The upper limit may equal the focal distance (integrable endpoint).
    """
    if not 0.0 < t_hi <= curv.focal_distance:
        raise OutOfTubeRange(f"t_hi={t_hi!r} outside (0, {curv.focal_distance!r}]")
    c, s = math.cos(t_hi), math.sin(t_hi)

    def integrand(t: float) -> float:
        cc, ss = math.cos(t), math.sin(t)
        theta = 1.0
        for fam in curv.principal_curvatures:
            theta *= (cc - fam.value * ss) ** fam.multiplicity
        return radial(t) * theta

    return area * numerics.integrate(integrand, 0.0, t_hi, abs_tol=abs_tol).value


def surface_integral_derivative_check(curv: CurvatureData, radial: Callable[[float], float],
                                      t: float, area: float = 1.0,
                                      step: float = 1e-5) -> DerivativeCheck:
    """Check d/dt of the parallel-surface integral of a radial function.

    Compares the central difference of t -> area * radial(t) * theta(t)
    against  area * theta(t) * (radial'(t) - radial(t) * H(t)),  with
    radial' also taken by central difference.
    """
    _require_in_tube(curv, t + step)
    if t - step < 0.0:
        raise OutOfTubeRange("need t - step >= 0 for the central stencil")

    def area_integral(tt: float) -> float:
        return area * radial(tt) * jacobian_theta(curv, tt)

    fd = (area_integral(t + step) - area_integral(t - step)) / (2.0 * step)
    radial_prime = (radial(t + step) - radial(t - step)) / (2.0 * step)
    formula = area * jacobian_theta(curv, t) * (
        radial_prime - radial(t) * parallel_mean_curvature(curv, t))
    return DerivativeCheck(t, fd, formula)
