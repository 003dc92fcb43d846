"""Harmonic extension of the first eigenfunction on Clifford tube domains.

Take the torus S^p(sqrt(p/m)) x S^q(sqrt(q/m)) and the first eigenfunction
phi = degree-1 spherical harmonic on the p-sphere factor (eigenvalue m,
normalized to unit L^2 mass on the surface).  Among the two components of the
complement, the curvature form is nonnegative on grad(phi) exactly on the
component in which the p-factor collapses, so the harmonic extension u of phi
is taken there.  Separation of variables u = h(t) phi~ reduces the Laplace
equation to the radial ODE

    h'' + (theta'/theta) h' - mu(t) h = 0,      0 < t < t_f,

where theta is the tube Jacobian, mu(t) = p / rho_p(t)^2 is the eigenvalue of
phi~ on the parallel surface at distance t (rho_p = p-factor radius), and
t_f = arctan(sqrt(p/q)) is the focal distance at which the p-factor radius
vanishes.  The focal end is a regular singular point with indicial roots
1 and -p; the bounded branch behaves like h ~ tau near tau = t_f - t = 0 and
is integrated outward from a quartic series start, then rescaled to h(0) = 1.

With int_Sigma phi^2 dS = 1 the Rayleigh data of u reduce to 1-D integrals:

    l2_mass          = int_0^{t_f} h^2 theta dt,
    dirichlet_energy = int_0^{t_f} (h'^2 + mu h^2) theta dt,

and the energy equals the boundary flux -h'(0), which serves as an
independent consistency check on the quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, simpson

from . import numerics, tube
from .bump import TransitionProfile, psi, psi_deriv
from .errors import (
    HypothesisViolated,
    InvalidCurvature,
    InvariantViolation,
    NonConvergence,
    NonFiniteState,
    OdeSingularity,
    QTooSmall,
    StepUnderflow,
)
from .surfaces import (
    CLIFFORD,
    CanonicalSurface,
    CurvatureData,
    clifford,
    surface_area,
)

#: Clifford tori exercised by the default verification pipeline.
DEFAULT_TORI = ((1, 1), (1, 2), (2, 2))

_FOCAL_OFFSET = 1e-6


@dataclass(frozen=True)
class HarmonicExtensionProfile:
    """Radial factor of the separated harmonic extension on a tube domain.

    Arrays are sampled on a uniform grid in [0, t_f - offset]; h is scaled so
    h(0) = 1, which together with the unit-mass eigenfunction normalization
    makes all reported integrals the true Rayleigh data of u.
    """

    surface: CanonicalSurface
    curv: CurvatureData
    grid: np.ndarray
    h: np.ndarray
    h_prime: np.ndarray
    mu: np.ndarray
    theta: np.ndarray
    lambda1: float
    kappa_sq: float          # squared eigenfunction amplitude (p+1)/|Sigma|
    sign_integral: float     # int <A grad phi, grad phi> dS, closed form
    q_history: tuple[float, ...]

    @property
    def t_f(self) -> float:
        return self.curv.focal_distance


@dataclass(frozen=True)
class RayleighReport:
    """Rayleigh quotient of the harmonic extension and derived constants."""

    m: int
    q_value: float
    dirichlet_energy: float
    l2_mass: float
    lambda_lower: float
    c1: float
    c2: float
    boundary_flux: float     # -h'(0); equals dirichlet_energy for harmonic u
    q_history: tuple[float, ...]


@dataclass(frozen=True)
class PolReport:
    """Nonnegativity of the Reilly quadratic in terms of its discriminant."""

    discriminant: float
    q_threshold: float
    passed: bool


@dataclass(frozen=True)
class EtaReport:
    """Checks on the sub-tube mass eta(t) of the normalized extension."""

    eta0: float
    eta_prime0_stencil: float
    edo1_max_lhs: float
    edo1_bound: float
    grid_points: int

    @property
    def edo1_margin(self) -> float:
        return self.edo1_bound - self.edo1_max_lhs

    @property
    def passed(self) -> bool:
        return abs(self.eta_prime0_stencil + 1.0) <= 1e-4 and self.edo1_margin >= -1e-6


def _frobenius_coefficients(p: int, q: int) -> tuple[float, float]:
    # Series h = tau (1 + a2 tau^2 + a4 tau^4 + ...) of the bounded branch
    # at the focal end; derived from the ODE in tau = t_f - t.
    a2 = (2.0 * p / 3.0 + q) / (2.0 * (p + 3.0))
    a4 = (a2 * (4.0 * p / 3.0 + 3.0 * q) + 4.0 * p / 45.0 + q / 3.0) / (4.0 * (p + 5.0))
    return a2, a4


def _theta_mu(p: int, q: int, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m = p + q
    factor_p = np.cos(t) - math.sqrt(q / p) * np.sin(t)
    factor_q = np.cos(t) + math.sqrt(p / q) * np.sin(t)
    theta = factor_p ** p * factor_q ** q
    mu = m / factor_p ** 2  # p / rho_p^2 with rho_p = sqrt(p/m) * factor_p
    return theta, mu


def solve_harmonic_profile(surface: CanonicalSurface, tol: float = 1e-9,
                           initial_nodes: int = 801, max_refinements: int = 6,
                           ode_tol: float = 1e-11) -> HarmonicExtensionProfile:
    """Solve the radial ODE and refine the grid until Q is Cauchy within tol.

    The ODE is integrated in tau = t_f - t away from the singular focal end,
    starting from the quartic series of the bounded branch at tau = 1e-6.
    """
    if surface.kind != CLIFFORD:
        raise HypothesisViolated("harmonic profiles are built on Clifford tori only")
    p, q, m = surface.p, surface.q, surface.m
    _, curv = clifford(p, q)
    t_f = curv.focal_distance
    a2, a4 = _frobenius_coefficients(p, q)
    tau0 = _FOCAL_OFFSET
    h0 = tau0 * (1.0 + a2 * tau0 ** 2 + a4 * tau0 ** 4)
    dh0 = 1.0 + 3.0 * a2 * tau0 ** 2 + 5.0 * a4 * tau0 ** 4

    def rhs(tau, y):
        h, dh = y
        cot = 1.0 / math.tan(tau)
        return [dh, -(p * cot - q * math.tan(tau)) * dh + (p / math.sin(tau) ** 2) * h]

    q_prev = None
    q_history: list[float] = []
    n = initial_nodes
    profile = None
    for _ in range(max_refinements + 1):
        taus = np.linspace(tau0, t_f, n)
        try:
            traj = numerics.integrate_ivp(rhs, tau0, [h0, dh0], t_f,
                                          step_tol=ode_tol, t_eval=taus)
        except (StepUnderflow, NonFiniteState) as exc:
            raise OdeSingularity(str(exc)) from exc
        big_h = traj.states[:, 0]
        big_dh = traj.states[:, 1]
        scale = big_h[-1]          # value at tau = t_f, i.e. at the surface
        grid = t_f - taus[::-1]
        h = big_h[::-1] / scale
        h_prime = -big_dh[::-1] / scale
        theta, mu = _theta_mu(p, q, grid)
        mass = float(simpson(h ** 2 * theta, x=grid))
        energy = float(simpson((h_prime ** 2 + mu * h ** 2) * theta, x=grid))
        q_value = energy / mass
        q_history.append(q_value)
        profile = HarmonicExtensionProfile(
            surface=surface, curv=curv, grid=grid, h=h, h_prime=h_prime,
            mu=mu, theta=theta, lambda1=float(m),
            kappa_sq=(p + 1) / surface_area(surface),
            sign_integral=math.sqrt(q / p) * m,
            q_history=tuple(q_history))
        if q_prev is not None and abs(q_value - q_prev) < tol * max(1.0, abs(q_value)):
            return profile
        q_prev = q_value
        n = 2 * n - 1
    raise NonConvergence(f"Q not Cauchy within {tol} after {max_refinements} refinements: "
                         f"{q_history}")


def profile_residual(profile: HarmonicExtensionProfile) -> float:
    """Max stencil residual of h'' + (theta'/theta) h' - mu h at interior nodes."""
    t, h = profile.grid, profile.h
    dt = t[1] - t[0]
    h2 = (h[2:] - 2.0 * h[1:-1] + h[:-2]) / dt ** 2
    h1 = (h[2:] - h[:-2]) / (2.0 * dt)
    log_theta_prime = np.array(
        [-tube.parallel_mean_curvature(profile.curv, tt) for tt in t[1:-1]])
    res = h2 + log_theta_prime * h1 - profile.mu[1:-1] * h[1:-1]
    return float(np.max(np.abs(res)))


def compute_rayleigh(profile: HarmonicExtensionProfile) -> RayleighReport:
    """Rayleigh data of the profile, with the constants C1 and C2 attached."""
    t = profile.grid
    mass = float(simpson(profile.h ** 2 * profile.theta, x=t))
    energy = float(simpson((profile.h_prime ** 2 + profile.mu * profile.h ** 2)
                           * profile.theta, x=t))
    m = profile.surface.m
    q_value = energy / mass
    c1 = c1_constant(profile.curv.k_max, profile.lambda1)
    c2 = c2_constant(m, profile.curv.big_lambda, c1)
    return RayleighReport(
        m=m, q_value=q_value, dirichlet_energy=energy, l2_mass=mass,
        lambda_lower=lambda_from_q(m, q_value), c1=c1, c2=c2,
        boundary_flux=-float(profile.h_prime[0]), q_history=profile.q_history)


def lambda_from_q(m: int, q_value: float) -> float:
    """Eigenvalue lower bound m / (1 + sqrt(1 - (m+1)/Q)) from the quotient Q."""
    if q_value < m + 1:
        raise QTooSmall(f"Q={q_value!r} below m+1={m + 1}")
    return m / (1.0 + math.sqrt(max(0.0, 1.0 - (m + 1.0) / q_value)))


def beta_optimizer(m: int, q_value: float) -> tuple[float, float]:
    """Maximizer t0 of beta(t) = 1 - 1/(Qt+1) - 1/((m+1)(Qt^2+t)) and its value.

    beta(t0) equals 2 / (1 + sqrt(1 - (m+1)/Q)), so (m/2) beta(t0) reproduces
    lambda_from_q.
    """
    if q_value < m + 1:
        raise QTooSmall(f"Q={q_value!r} below m+1={m + 1}")
    root = math.sqrt(max(0.0, 1.0 - (m + 1.0) / q_value))
    t0 = (-1.0 - root) / (m + 1.0)
    beta = 1.0 - 1.0 / (q_value * t0 + 1.0) \
        - 1.0 / ((m + 1.0) * (q_value * t0 ** 2 + t0))
    return t0, beta


def verify_pol(m: int, lambda1: float, q_value: float) -> PolReport:
    """Check the quadratic (2 lam - m) Q t^2 + 2 lam t + m/(m+1) >= 0 for all t.

    Nonnegativity is equivalent to Q >= Q* = (m+1) lam^2 / (m (2 lam - m)).
    """
    if not lambda1 > m / 2.0:
        raise ValueError("verify_pol requires lambda1 > m/2")
    disc = 4.0 * lambda1 ** 2 - 4.0 * (2.0 * lambda1 - m) * q_value * m / (m + 1.0)
    q_star = (m + 1.0) * lambda1 ** 2 / (m * (2.0 * lambda1 - m))
    return PolReport(discriminant=disc, q_threshold=q_star,
                     passed=disc <= 1e-12 * max(1.0, 4.0 * lambda1 ** 2))


def c1_constant(k_max: float, lambda1: float) -> float:
    """Dirichlet energy bound 32/(3 arctan(1/k_max)) + lambda1/sqrt(1+k_max^2)."""
    if k_max <= 0.0:
        raise InvalidCurvature("c1_constant requires k_max > 0")
    return 32.0 / (3.0 * math.atan(1.0 / k_max)) + lambda1 / math.sqrt(1.0 + k_max ** 2)


def c2_constant(m: int, big_lambda: float, c1: float) -> float:
    """Inverse Poincare constant arctan(1/(2(Lambda + C1))) / (2 C1)."""
    value = math.atan(1.0 / (2.0 * (big_lambda + c1))) / (2.0 * c1)
    if c1 < 11.0 * big_lambda + m + 11.0:
        floor = 1.0 / (4.0 * (12.0 * big_lambda + m + 11.0) ** 2 + 1.0)
        if not value > floor:
            raise InvariantViolation(
                f"C2={value!r} failed its guaranteed floor {floor!r}")
    return value


def eta_verification(profile: HarmonicExtensionProfile, c1: float,
                     epsilon: float | None = None) -> EtaReport:
    """Verify eta'(0) = -1 and the damped differential inequality for eta.

    eta(t) is the squared mass of the extension beyond distance t.  Its
    derivatives are evaluated analytically (eta' = -h^2 theta), except for the
    one-sided stencil cross-check of eta'(0); the inequality
    eta'' + 2 Lambda eta' <= 2 C1 is checked on a uniform grid of [0, T_eps].
    """
    t, h, hp = profile.grid, profile.h, profile.h_prime
    theta = profile.theta
    lam = profile.curv.big_lambda
    if epsilon is None:
        epsilon = lam / 2.0
    window = tube.spruck_window(profile.curv, epsilon)

    w = h ** 2 * theta
    cum = cumulative_trapezoid(w, t, initial=0.0)
    eta = cum[-1] - cum
    dt = t[1] - t[0]
    # second-order one-sided stencil for eta'(0)
    eta_prime0 = (-3.0 * eta[0] + 4.0 * eta[1] - eta[2]) / (2.0 * dt)

    mask = t <= window.t_epsilon
    h_curv = np.array([tube.parallel_mean_curvature(profile.curv, tt)
                       for tt in t[mask]])
    eta_prime = -w[mask]
    eta_second = theta[mask] * (h[mask] ** 2 * h_curv - 2.0 * h[mask] * hp[mask])
    lhs = eta_second + 2.0 * lam * eta_prime
    return EtaReport(eta0=float(eta[0]), eta_prime0_stencil=float(eta_prime0),
                     edo1_max_lhs=float(np.max(lhs)), edo1_bound=2.0 * c1,
                     grid_points=int(mask.sum()))


def testfn_energy(surface: CanonicalSurface, rho: float, c: float,
                  abs_tol: float = 1e-11) -> float:
    """Dirichlet energy of the cut-off test function v = psi_{rho,c}(t) phi~.

    Computed with the exact parallel eigenvalue mu(t); by harmonic energy
    minimality it dominates the Dirichlet energy of the harmonic extension.
    """
    if surface.kind != CLIFFORD:
        raise HypothesisViolated("test functions are built on Clifford tori only")
    p, q = surface.p, surface.q
    _, curv = clifford(p, q)
    prof = TransitionProfile.from_rho_c(rho, c, curv.t_sigma)

    def integrand(t: float) -> float:
        theta, mu = _theta_mu(p, q, np.array([t]))
        return (psi_deriv(prof, t) ** 2 + psi(prof, t) ** 2 * float(mu[0])) \
            * float(theta[0])

    return numerics.integrate(integrand, 0.0, prof.b, abs_tol=abs_tol).value


def testfn_energy_majorant(surface: CanonicalSurface, rho: float, c: float,
                           lambda1: float | None = None) -> float:
    """Closed-form energy majorant from the transition bound and the
    worst-case gradient amplification:

        16/(3 rho T) c(c^3-1)/(c^2-1)^2
            + lambda1 sin(T) sin(rho T) / sin((1-rho) T),   T = T_Sigma.

    Its limit for rho = 1/2, c -> infinity is the constant C1.
    """
    if surface.kind != CLIFFORD:
        raise HypothesisViolated("test functions are built on Clifford tori only")
    _, curv = clifford(surface.p, surface.q)
    if lambda1 is None:
        lambda1 = float(surface.m)
    t_sig = curv.t_sigma
    cut = 16.0 / (3.0 * rho * t_sig) * c * (c ** 3 - 1.0) / (c * c - 1.0) ** 2
    angular = lambda1 * math.sin(t_sig) * math.sin(rho * t_sig) \
        / math.sin((1.0 - rho) * t_sig)
    return cut + angular
