"""Catalog of canonical minimal hypersurfaces of the round (m+1)-sphere.

Two families carry exact curvature and spectral data: great equatorial
m-spheres, and the generalized Clifford tori

    S^p(sqrt(p/m)) x S^q(sqrt(q/m)),   p + q = m,

which are minimal and satisfy |A|^2 = m everywhere.  Principal curvatures are
stored with respect to the unit normal pointing into the component of the
complement in which the p-sphere factor collapses; that component is the one
every tube and harmonic-extension computation in this package works on,
because it is the side on which the curvature form is nonnegative on the
gradient of the first-factor eigenfunction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidDimension

GREAT_SPHERE = "great_sphere"
CLIFFORD = "clifford"


@dataclass(frozen=True)
class CanonicalSurface:
    """A catalog surface: great sphere S^m or Clifford torus S^p x S^q."""

    kind: str
    m: int
    p: int = 0
    q: int = 0

    def label(self) -> str:
        if self.kind == GREAT_SPHERE:
            return f"S^{self.m}"
        return f"S^{self.p}xS^{self.q}"


@dataclass(frozen=True)
class CurvatureFamily:
    """One principal curvature value with its multiplicity."""

    value: float
    multiplicity: int


@dataclass(frozen=True)
class CurvatureData:
    """Exact curvature and focal data of a canonical surface.

    principal_curvatures -- families (k_i, mult_i) with respect to the tube
        normal described in the module docstring.
    theta_angles -- angles with cot(theta_i) = k_i, one per family, in (0, pi).
    k_max -- max |k_i|.
    big_lambda -- |A| = sqrt(sum k_i^2 mult_i)  (constant on the catalog).
    t_sigma -- arctan(1/k_max); pi/2 when k_max = 0.
    focal_distance -- first normal distance at which a curvature factor
        cos t - k_i sin t vanishes on the tube side; pi/2 for great spheres.
    mean_curvature -- sum k_i mult_i (zero up to rounding: minimality).
    """

    principal_curvatures: tuple[CurvatureFamily, ...]
    theta_angles: tuple[float, ...]
    k_max: float
    big_lambda: float
    t_sigma: float
    focal_distance: float
    mean_curvature: float


def _curvature_data(families: list[tuple[float, int]]) -> CurvatureData:
    fams = tuple(CurvatureFamily(float(k), int(mult)) for k, mult in families)
    k_max = max(abs(f.value) for f in fams)
    lam2 = sum(f.value ** 2 * f.multiplicity for f in fams)
    mean = sum(f.value * f.multiplicity for f in fams)
    t_sigma = math.atan2(1.0, k_max)
    k_pos = max(f.value for f in fams)
    focal = math.atan2(1.0, k_pos) if k_pos > 0 else math.pi / 2
    thetas = tuple(math.atan2(1.0, f.value) for f in fams)
    return CurvatureData(fams, thetas, k_max, math.sqrt(lam2), t_sigma, focal, mean)


def clifford(p: int, q: int) -> tuple[CanonicalSurface, CurvatureData]:
    """Clifford torus S^p(sqrt(p/m)) x S^q(sqrt(q/m)) in S^{m+1}, m = p + q.

    Principal curvature sqrt(q/p) on the p-sphere directions and -sqrt(p/q)
    on the q-sphere directions; |A| = sqrt(m).  The p-family factor
    cos t - sqrt(q/p) sin t vanishes at the focal distance arctan(sqrt(p/q)).
    """
    if p < 1 or q < 1:
        raise InvalidDimension("Clifford torus requires p >= 1 and q >= 1")
    surface = CanonicalSurface(CLIFFORD, p + q, p, q)
    data = _curvature_data([(math.sqrt(q / p), p), (-math.sqrt(p / q), q)])
    return surface, data


def great_sphere(m: int) -> tuple[CanonicalSurface, CurvatureData]:
    """Totally geodesic equatorial S^m in S^{m+1}: all curvatures vanish."""
    if m < 2:
        raise InvalidDimension("great sphere catalog requires m >= 2")
    surface = CanonicalSurface(GREAT_SPHERE, m)
    return surface, _curvature_data([(0.0, m)])


def analytic_lambda1(s: CanonicalSurface, index_cap: int = 5) -> float:
    """First nonzero Laplace eigenvalue, by product-spectrum enumeration.

    For the torus the eigenvalues are k(k+p-1) m/p + l(l+q-1) m/q over
    integer indices; for the great sphere they are k(k+m-1).  The least
    nonzero value is returned without shortcutting to the known answer m.
    """
    values = set()
    if s.kind == GREAT_SPHERE:
        for k in range(index_cap + 1):
            values.add(k * (k + s.m - 1))
    else:
        p, q, m = s.p, s.q, s.m
        for k in range(index_cap + 1):
            for l in range(index_cap + 1):
                values.add(k * (k + p - 1) * m / p + l * (l + q - 1) * m / q)
    return float(min(v for v in values if v > 1e-12))


def sphere_area(n: int, radius: float = 1.0) -> float:
    """Surface measure of the round n-sphere of the given radius."""
    return 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0) * radius ** n


def surface_area(s: CanonicalSurface) -> float:
    """Exact area: product of sphere areas for tori, |S^m| for great spheres."""
    if s.kind == GREAT_SPHERE:
        return sphere_area(s.m)
    m = s.m
    return sphere_area(s.p, math.sqrt(s.p / m)) * sphere_area(s.q, math.sqrt(s.q / m))


def catalog(max_m: int = 4) -> list[tuple[CanonicalSurface, CurvatureData]]:
    """Ground-truth surfaces the verification suites sweep over."""
    out = [great_sphere(m) for m in range(2, max_m + 1)]
    for p in range(1, max_m):
        for q in range(1, max_m):
            if 2 <= p + q <= max_m:
                out.append(clifford(p, q))
    return out
