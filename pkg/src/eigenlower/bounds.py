"""Closed-form lower bounds for the first eigenvalue and their comparison.

Implemented bounds for a closed embedded minimal hypersurface of S^{m+1}
with curvature norm Lambda = max |A|:

  * Choi-Wang floor m/2,
  * the main bound m/2 + m(m+1)/(32 (12 Lambda + m + 11)^2 + 8), rigid value m
    for Lambda <= sqrt(m),
  * the genus corollary 1 + 3/(16 (12 C + 13)^2 + 4) for surfaces in S^3,
  * the Duncan-Sire-Spruck bound m/2 + a(m)/(Lambda^6 + b(m)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import HypothesisViolated, InvalidDimension, InvariantViolation, QTooSmall


@dataclass(frozen=True)
class MainBound:
    value: float
    rigid: bool


@dataclass(frozen=True)
class BoundReport:
    """All bounds for one (m, Lambda), None where a hypothesis fails."""

    m: int
    big_lambda: float
    choi_wang: float
    main_bound: float
    main_is_rigid: bool
    dss_bound: float | None
    dss_a: float
    dss_b: float
    genus_bound: float | None


@dataclass(frozen=True)
class GapReport:
    """Strictness of the x/8 gap inequality at x = (m+1)/Q."""

    x: float
    gap_lhs: float
    gap_rhs: float
    lambda_exact: float
    lambda_gap_bound: float

    @property
    def passed(self) -> bool:
        return self.gap_lhs < self.gap_rhs and self.lambda_exact > self.lambda_gap_bound


def choi_wang(m: int) -> float:
    return m / 2.0


def main_bound(m: int, big_lambda: float) -> MainBound:
    """Main eigenvalue bound; returns (m, rigid) on the Lambda <= sqrt(m) branch."""
    if m < 2:
        raise InvalidDimension("bounds require m >= 2")
    if big_lambda < 0:
        raise ValueError("big_lambda must be nonnegative")
    if big_lambda <= math.sqrt(m):
        return MainBound(float(m), True)
    denom = 32.0 * (12.0 * big_lambda + m + 11.0) ** 2 + 8.0
    return MainBound(m / 2.0 + m * (m + 1.0) / denom, False)


def dss_coefficients(m: int) -> tuple[float, float]:
    """Coefficients a(m), b(m) of the Duncan-Sire-Spruck bound."""
    if m < 2:
        raise InvalidDimension("bounds require m >= 2")
    core = (m * math.atan(1.0 / (3.0 * math.sqrt(m)))) ** 3
    a = 3.0 * math.sqrt(m) * (m - 1.0) / 3200.0 * core
    b = 5.0 * (m - 1.0) / (8.0 * math.sqrt(m)) * core
    return a, b


def dss_bound(m: int, big_lambda: float) -> float:
    """Duncan-Sire-Spruck bound m/2 + a(m)/(Lambda^6 + b(m)); needs Lambda >= sqrt(m)."""
    if big_lambda < math.sqrt(m) - 1e-12:
        raise HypothesisViolated(
            f"dss bound requires Lambda >= sqrt(m); got {big_lambda!r} < sqrt({m})")
    a, b = dss_coefficients(m)
    return m / 2.0 + a / (big_lambda ** 6 + b)


def genus_bound(c_chi: float) -> float:
    """Genus corollary for surfaces in S^3 with Choi-Schoen constant C(chi)."""
    if c_chi <= 0:
        raise ValueError("c_chi must be positive")
    return 1.0 + 3.0 / (16.0 * (12.0 * c_chi + 13.0) ** 2 + 4.0)


def compare(m: int, big_lambda: float, c_chi: float | None = None) -> BoundReport:
    """Evaluate every applicable bound; the main bound must dominate DSS."""
    mb = main_bound(m, big_lambda)
    a, b = dss_coefficients(m)
    dss = None
    if big_lambda >= math.sqrt(m) - 1e-12:
        dss = dss_bound(m, big_lambda)
        if mb.value < dss:
            raise InvariantViolation(
                f"main bound {mb.value!r} below DSS {dss!r} at m={m}, Lambda={big_lambda!r}")
    genus = genus_bound(c_chi) if (c_chi is not None and m == 2) else None
    return BoundReport(m=m, big_lambda=big_lambda, choi_wang=choi_wang(m),
                       main_bound=mb.value, main_is_rigid=mb.rigid,
                       dss_bound=dss, dss_a=a, dss_b=b, genus_bound=genus)


def derivation_gap_check(m: int, q_value: float) -> GapReport:
    """Strict gap x/8 < 1/(1+sqrt(1-x)) - 1/2 at x = (m+1)/Q, and its
    consequence m/(1+sqrt(1-x)) > m/2 + m(m+1)/(8Q)."""
    if q_value < m + 1:
        raise QTooSmall(f"Q={q_value!r} below m+1={m + 1}")
    x = (m + 1.0) / q_value
    root = math.sqrt(max(0.0, 1.0 - x))
    return GapReport(x=x, gap_lhs=x / 8.0, gap_rhs=1.0 / (1.0 + root) - 0.5,
                     lambda_exact=m / (1.0 + root),
                     lambda_gap_bound=m / 2.0 + m * (m + 1.0) / (8.0 * q_value))
