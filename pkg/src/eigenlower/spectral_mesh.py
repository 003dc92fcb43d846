"""Discrete cross-validation of the first eigenvalue for surfaces in S^3.

Triangulated closed surfaces embedded in the unit 3-sphere (vertices in R^4)
are equipped with the cotangent stiffness matrix built from chordal edge
lengths and a lumped (1/3 barycentric) mass matrix; the smallest nonzero
generalized eigenvalue is computed by inverse power iteration with deflation
of the constant vector.

Structured ground-truth meshes: the square Clifford torus grid (quads split
into two triangles with checkerboard-alternating diagonals) and an icosphere
of a great 2-sphere embedded equatorially.  The alternating split matters:
with a fixed diagonal the chordal edge lengths cancel the stencil dispersion
for the lowest Fourier mode and the discrete eigenvalue is exactly 2 at any
resolution, leaving no convergence order to measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (
    DegenerateTriangle,
    InvalidResolution,
    NotClosed,
    NotUnitSphere,
    ParseError,
    SingularShift,
    SolverStagnation,
)

_AREA_FLOOR = 1e-14


@dataclass(frozen=True)
class SpectrumResult:
    lambda1: float
    residual: float
    iterations: int


@dataclass
class TriangleMesh:
    """Closed oriented triangle mesh with vertices on S^3 in R^4."""

    vertices: np.ndarray  # (n, 4) float
    faces: np.ndarray     # (f, 3) int

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float)
        self.faces = np.asarray(self.faces, dtype=np.int64)
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 4:
            raise ValueError("vertices must be an (n, 4) array")
        if self.faces.ndim != 2 or self.faces.shape[1] != 3:
            raise ValueError("faces must be an (f, 3) array")
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ValueError("face index out of range")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def euler_characteristic(self) -> int:
        edges = set()
        for a, b, c in self.faces:
            for i, j in ((a, b), (b, c), (c, a)):
                edges.add((min(i, j), max(i, j)))
        return self.n_vertices - len(edges) + self.n_faces

    def total_area(self) -> float:
        tri = self.vertices[self.faces]
        e1 = tri[:, 1] - tri[:, 0]
        e2 = tri[:, 2] - tri[:, 0]
        g11 = np.einsum("ij,ij->i", e1, e1)
        g22 = np.einsum("ij,ij->i", e2, e2)
        g12 = np.einsum("ij,ij->i", e1, e2)
        return float(0.5 * np.sum(np.sqrt(np.maximum(g11 * g22 - g12 ** 2, 0.0))))

    def validate(self, norm_tol: float = 1e-9) -> None:
        """Check unit vertex norms, closedness and consistent orientation."""
        norms = np.linalg.norm(self.vertices, axis=1)
        worst = float(np.max(np.abs(norms - 1.0)))
        if worst > norm_tol:
            raise NotUnitSphere(f"vertex norm deviates from 1 by {worst:.3e}")
        directed = set()
        for a, b, c in self.faces:
            for e in ((a, b), (b, c), (c, a)):
                if e in directed:
                    raise NotClosed(f"directed edge {e} repeated: inconsistent orientation")
                directed.add((int(e[0]), int(e[1])))
        for i, j in directed:
            if (j, i) not in directed:
                raise NotClosed(f"edge ({i}, {j}) lacks its opposite: boundary or hole")


def clifford_mesh(n_u: int, n_v: int) -> TriangleMesh:
    """Structured grid on the Clifford torus (cos u, sin u, cos v, sin v)/sqrt(2).

    Each grid quad is split into two triangles; the split diagonal alternates
    in a checkerboard pattern (see module docstring for why).
    """
    if n_u < 8 or n_v < 8:
        raise InvalidResolution("clifford_mesh requires n_u, n_v >= 8")
    u = 2.0 * np.pi * np.arange(n_u) / n_u
    v = 2.0 * np.pi * np.arange(n_v) / n_v
    uu, vv = np.meshgrid(u, v, indexing="ij")
    verts = np.stack([np.cos(uu), np.sin(uu), np.cos(vv), np.sin(vv)],
                     axis=-1).reshape(-1, 4) / math.sqrt(2.0)

    def idx(i: int, j: int) -> int:
        return (i % n_u) * n_v + (j % n_v)

    faces = []
    for i in range(n_u):
        for j in range(n_v):
            a, b, c, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
            if (i + j) % 2:
                faces.append((a, b, d))
                faces.append((b, c, d))
            else:
                faces.append((a, b, c))
                faces.append((a, c, d))
    return TriangleMesh(verts, np.array(faces, dtype=np.int64))


_ICO_FACES = (
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
)


def icosphere_mesh(subdivisions: int = 3) -> TriangleMesh:
    """Icosphere of the great 2-sphere {w = 0} embedded equatorially in S^3."""
    if subdivisions < 0:
        raise InvalidResolution("subdivisions must be nonnegative")
    t = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [(-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
             (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
             (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1)]
    verts = [np.array(p, dtype=float) / np.linalg.norm(p) for p in verts]
    faces = [tuple(f) for f in _ICO_FACES]
    for _ in range(subdivisions):
        cache: dict[tuple[int, int], int] = {}

        def midpoint(i: int, j: int) -> int:
            key = (min(i, j), max(i, j))
            if key not in cache:
                mid = verts[i] + verts[j]
                verts.append(mid / np.linalg.norm(mid))
                cache[key] = len(verts) - 1
            return cache[key]

        refined = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            refined += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
        faces = refined
    v3 = np.array(verts)
    v4 = np.hstack([v3, np.zeros((len(v3), 1))])
    return TriangleMesh(v4, np.array(faces, dtype=np.int64))


def save_off(mesh: TriangleMesh, path: str) -> None:
    """Write the 4-component ASCII OFF variant."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("OFF\n")
        fh.write(f"{mesh.n_vertices} {mesh.n_faces} 0\n")
        for v in mesh.vertices:
            fh.write(" ".join(f"{x:.17g}" for x in v) + "\n")
        for f in mesh.faces:
            fh.write(f"3 {f[0]} {f[1]} {f[2]}\n")


def load_off(path: str, renormalize: bool = False) -> TriangleMesh:
    """Read the 4-component OFF variant; validates closedness and unit norms.

    Vertex norms off by more than 1e-6 raise NotUnitSphere unless renormalize
    is set, in which case vertices are projected back to the sphere.
    """
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        raw = fh.readlines()
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(raw)]
    lines = [(n, ln) for n, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty OFF file")
    pos = 0
    lineno, header = lines[pos]
    if header != "OFF":
        raise ParseError(f"expected 'OFF' header, got {header!r}", line=lineno)
    pos += 1
    if pos >= len(lines):
        raise ParseError("missing count line", line=lineno)
    lineno, counts = lines[pos]
    parts = counts.split()
    if len(parts) != 3:
        raise ParseError("count line must be 'nV nF nE'", line=lineno)
    try:
        n_v, n_f = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"bad counts: {exc}", line=lineno) from exc
    pos += 1

    verts = np.empty((n_v, 4), dtype=float)
    for k in range(n_v):
        if pos >= len(lines):
            raise ParseError(f"truncated file: expected {n_v} vertices, got {k}",
                             line=lines[-1][0])
        lineno, ln = lines[pos]
        parts = ln.split()
        if len(parts) != 4:
            raise ParseError(f"vertex line needs 4 floats, got {len(parts)}",
                             line=lineno, column=len(parts))
        try:
            verts[k] = [float(x) for x in parts]
        except ValueError as exc:
            raise ParseError(f"bad vertex value: {exc}", line=lineno) from exc
        pos += 1

    faces = np.empty((n_f, 3), dtype=np.int64)
    for k in range(n_f):
        if pos >= len(lines):
            raise ParseError(f"truncated file: expected {n_f} faces, got {k}",
                             line=lines[-1][0])
        lineno, ln = lines[pos]
        parts = ln.split()
        if len(parts) != 4 or parts[0] != "3":
            raise ParseError("face line must be '3 i j k'", line=lineno)
        try:
            faces[k] = [int(x) for x in parts[1:]]
        except ValueError as exc:
            raise ParseError(f"bad face index: {exc}", line=lineno) from exc
        pos += 1

    norms = np.linalg.norm(verts, axis=1)
    worst = float(np.max(np.abs(norms - 1.0))) if n_v else 0.0
    if worst > 1e-6:
        if not renormalize:
            raise NotUnitSphere(
                f"vertex norm deviates from 1 by {worst:.3e}; pass renormalize to project")
        verts = verts / norms[:, None]
    mesh = TriangleMesh(verts, faces)
    mesh.validate(norm_tol=1e-6 if not renormalize else 1e-12)
    return mesh


def assemble_cotan(vertices: np.ndarray, faces: np.ndarray) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Cotangent stiffness and lumped mass from raw arrays (no validation).

    Edge weights are (cot alpha + cot beta)/2 over the two corners opposite
    each edge, computed from chordal lengths in the ambient R^4; vertex masses
    are one third of the adjacent triangle areas.
    """
    vertices = np.asarray(vertices, dtype=float)
    faces = np.asarray(faces, dtype=np.int64)
    n = len(vertices)
    tri = vertices[faces]
    e1 = tri[:, 1] - tri[:, 0]
    e2 = tri[:, 2] - tri[:, 0]
    g11 = np.einsum("ij,ij->i", e1, e1)
    g22 = np.einsum("ij,ij->i", e2, e2)
    g12 = np.einsum("ij,ij->i", e1, e2)
    doubled = np.sqrt(np.maximum(g11 * g22 - g12 ** 2, 0.0))
    areas = 0.5 * doubled
    if np.any(areas <= _AREA_FLOOR):
        k = int(np.argmin(areas))
        raise DegenerateTriangle(f"face {k} has area {areas[k]:.3e}")

    rows, cols, vals = [], [], []
    for corner, (b, c) in enumerate(((1, 2), (2, 0), (0, 1))):
        u = tri[:, b] - tri[:, corner]
        w = tri[:, c] - tri[:, corner]
        dot = np.einsum("ij,ij->i", u, w)
        cross = np.sqrt(np.maximum(
            np.einsum("ij,ij->i", u, u) * np.einsum("ij,ij->i", w, w) - dot ** 2,
            _AREA_FLOOR ** 2))
        half_cot = 0.5 * dot / cross
        i_idx, j_idx = faces[:, b], faces[:, c]
        rows += [i_idx, j_idx, i_idx, j_idx]
        cols += [j_idx, i_idx, i_idx, j_idx]
        vals += [-half_cot, -half_cot, half_cot, half_cot]
    stiffness = sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n))

    lumped = np.zeros(n)
    for corner in range(3):
        np.add.at(lumped, faces[:, corner], areas / 3.0)
    mass = sp.diags(lumped).tocsr()
    return stiffness, mass


def cotan_operators(mesh: TriangleMesh) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Validated stiffness/mass pair for a closed mesh on S^3."""
    mesh.validate()
    return assemble_cotan(mesh.vertices, mesh.faces)


def first_nonzero_eigenvalue(stiffness: sp.spmatrix, mass: sp.spmatrix,
                             tol: float = 1e-8, shift: float = 1e-2,
                             max_iterations: int = 500,
                             start: np.ndarray | None = None) -> SpectrumResult:
    """Smallest nonzero generalized eigenvalue of (L, M).

    Inverse power iteration on L + shift*M with M-orthogonal deflation of the
    constant vector; the Rayleigh quotient of the iterate estimates lambda1
    and the scaled residual ||L x - lambda M x|| / ||M x|| drives the stop.
    """
    n = stiffness.shape[0]
    mdiag = np.asarray(mass.diagonal(), dtype=float)
    if np.any(mdiag <= 0.0):
        raise ValueError("mass matrix must have positive diagonal")
    total_mass = mdiag.sum()
    try:
        lu = spla.splu((stiffness + shift * mass).tocsc())
    except RuntimeError as exc:
        raise SingularShift(str(exc)) from exc

    def deflate(v: np.ndarray) -> np.ndarray:
        return v - (v @ mdiag) / total_mass

    x = start.astype(float).copy() if start is not None else np.cos(np.arange(n))
    x = deflate(x)
    nrm = math.sqrt(x @ (mdiag * x))
    if nrm == 0.0:
        raise ValueError("start vector is M-orthogonal to the search space")
    x /= nrm

    lam = float(x @ (stiffness @ x))
    residual = math.inf
    for it in range(1, max_iterations + 1):
        y = lu.solve(mdiag * x)
        y = deflate(y)
        y /= math.sqrt(y @ (mdiag * y))
        lam = float(y @ (stiffness @ y))
        r = stiffness @ y - lam * (mdiag * y)
        residual = float(np.linalg.norm(r) / np.linalg.norm(mdiag * y))
        x = y
        if residual < tol:
            return SpectrumResult(lambda1=lam, residual=residual, iterations=it)
    raise SolverStagnation(
        f"residual {residual:.3e} above tol {tol:.3e} after {max_iterations} iterations")
