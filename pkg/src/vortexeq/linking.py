"""Linking seed families on tori, membership tests for aligned and spoke
configurations, and the seed-map Jacobian certificate.

The concentric family pins vortex 1 at the seed centre and vortex N on the
positive real ray at radius ``(N-1)*rho``; vortices ``2..N-1`` rotate on
concentric circles of radii ``(j-1)*rho``.  The annular family places each
vortex on its own circle nested inside the annulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, VortexError
from .geometry import Annulus, Configuration

__all__ = [
    "TorusSeedSpec",
    "concentric_seed",
    "annular_seed",
    "concentric_seed_grid",
    "annular_seed_grid",
    "spoke_membership",
    "line_intersection_residual",
    "line_membership",
    "jacobian_determinant_h0",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TorusSeedSpec:
    """Parameters of a torus seed family.

    ``kind`` is "concentric" or "annular"; ``rho`` the concentric radius
    unit (defaults to ``d(center, boundary) / (n + 1)``); ``collar_levels``
    the annular circle radii (default equispaced strictly inside the
    annulus); ``angles`` the grid resolution per torus dimension.
    """

    kind: str
    n: int
    rho: float | None = None
    collar_levels: tuple | None = None
    angles: int = 8
    center: complex | None = None

    def __post_init__(self):
        if self.kind not in ("concentric", "annular"):
            raise DomainError(f"unknown seed kind {self.kind!r}")
        if self.n < 1:
            raise DomainError("need at least one vortex")
        if self.angles < 1:
            raise DomainError("angles must be positive")
        if self.collar_levels is not None:
            object.__setattr__(self, "collar_levels", tuple(float(v) for v in self.collar_levels))


def _seed_center(domain, spec: TorusSeedSpec) -> complex:
    if spec.center is not None:
        return complex(spec.center)
    if isinstance(domain, Annulus):
        return complex((1.0 + domain.inner_radius) / 2.0, 0.0)
    return complex(getattr(domain, "center", 0.0 + 0.0j))


def _resolve_rho(domain, spec: TorusSeedSpec, center: complex) -> float:
    if spec.rho is not None:
        return float(spec.rho)
    dist = float(domain._boundary_dist(np.asarray([center]))[0])
    return dist / (spec.n + 1)


def _check_unit(zeta) -> np.ndarray:
    z = np.asarray([complex(v) for v in zeta], dtype=complex)
    if z.size and np.max(np.abs(np.abs(z) - 1.0)) > 1e-9:
        raise DomainError(f"torus coordinates must be unit complex numbers, got {zeta}")
    return z


def concentric_seed(domain, spec: TorusSeedSpec, zeta) -> Configuration:
    """Seed configuration of the concentric family at torus point ``zeta``
    (a tuple of ``n - 2`` unit complex numbers); requires ``n >= 3`` and
    the closed ball of radius ``n * rho`` about the centre inside the
    domain."""
    if spec.kind != "concentric":
        raise DomainError("spec.kind must be 'concentric'")
    n = spec.n
    if n < 3:
        raise DomainError("concentric seeds require at least 3 vortices")
    zt = _check_unit(zeta)
    if zt.size != n - 2:
        raise DomainError(f"expected {n - 2} torus coordinates, got {zt.size}")
    center = _seed_center(domain, spec)
    rho = _resolve_rho(domain, spec, center)
    if float(domain._boundary_dist(np.asarray([center]))[0]) <= n * rho:
        raise DomainError(
            f"ball of radius {n * rho:.4g} about {center} is not contained in the domain"
        )
    pts = np.empty(n, dtype=complex)
    pts[0] = center
    pts[-1] = center + (n - 1) * rho
    for j in range(2, n):
        pts[j - 1] = center + (j - 1) * rho * zt[j - 2]
    return Configuration(pts)


def annular_seed(domain, spec: TorusSeedSpec, zeta) -> Configuration:
    """Seed of the annular family: vortex ``j`` on the circle of radius
    ``level_j`` at angle ``zeta_j``.  Levels default to
    ``r_in + j (1 - r_in) / (n + 1)`` and must be strictly nested inside
    the annulus."""
    if spec.kind != "annular":
        raise DomainError("spec.kind must be 'annular'")
    if not isinstance(domain, Annulus):
        raise DomainError("annular seeds require an annulus domain")
    n = spec.n
    zt = _check_unit(zeta)
    if zt.size != n:
        raise DomainError(f"expected {n} torus coordinates, got {zt.size}")
    q = domain.inner_radius
    if spec.collar_levels is not None:
        levels = np.asarray(spec.collar_levels, dtype=float)
        if levels.size != n:
            raise DomainError(f"expected {n} collar levels, got {levels.size}")
    else:
        levels = q + np.arange(1, n + 1) * (1.0 - q) / (n + 1)
    if np.any(np.diff(levels) <= 0.0) or levels[0] <= q or levels[-1] >= 1.0:
        raise DomainError(f"collar levels must be strictly nested inside the annulus: {levels}")
    return Configuration(levels * zt)


def _angle_grid(angles: int) -> np.ndarray:
    return np.exp(1j * np.arange(angles) * (_TWO_PI / angles))


def concentric_seed_grid(domain, spec: TorusSeedSpec) -> list:
    """All seeds on the product angle grid; returns ``(zeta, config)``
    pairs in row-major grid order.

    For ``n == 2`` the torus is zero-dimensional (both vortices are
    pinned), so the grid falls back to ``angles`` rigid rotations of the
    two-point seed about the centre, which sweep the same family under the
    rotational symmetry of the supported domains.
    """
    n = spec.n
    ring = _angle_grid(spec.angles)
    if n == 2:
        center = _seed_center(domain, spec)
        rho = _resolve_rho(domain, spec, center)
        if float(domain._boundary_dist(np.asarray([center]))[0]) <= n * rho:
            raise DomainError("two-point seed ball is not contained in the domain")
        out = []
        for w in ring:
            out.append(((complex(w),), Configuration([center, center + rho * w])))
        return out
    grids = np.meshgrid(*([ring] * (n - 2)), indexing="ij")
    flat = [g.ravel() for g in grids]
    out = []
    for k in range(flat[0].size):
        zeta = tuple(complex(f[k]) for f in flat)
        out.append((zeta, concentric_seed(domain, spec, zeta)))
    return out


def annular_seed_grid(domain, spec: TorusSeedSpec) -> list:
    grids = np.meshgrid(*([_angle_grid(spec.angles)] * spec.n), indexing="ij")
    flat = [g.ravel() for g in grids]
    out = []
    for k in range(flat[0].size):
        zeta = tuple(complex(f[k]) for f in flat)
        out.append((zeta, annular_seed(domain, spec, zeta)))
    return out


def spoke_membership(c, tol: float = 1e-9) -> bool:
    """True iff vortex ``j`` (1-based) sits on the ray of the ``j``-th
    N-th root of unity, within angular tolerance."""
    cfg = c if isinstance(c, Configuration) else Configuration(c)
    z = cfg.points
    if np.any(z == 0.0):
        raise DomainError("spoke membership is undefined for a vortex at the origin")
    n = z.size
    targets = _TWO_PI * (np.arange(1, n + 1)) / n
    diff = np.angle(z * np.exp(-1j * targets))
    return bool(np.max(np.abs(diff)) <= tol)


def line_intersection_residual(c, s) -> np.ndarray:
    """Residual whose vanishing certifies that the configuration is
    aligned in slot order: component ``k`` is
    ``s_k (z_k - z_{k+1}) + (1 - s_k)(z_{k+2} - z_{k+1})``."""
    cfg = c if isinstance(c, Configuration) else Configuration(c)
    z = cfg.points
    n = z.size
    if n < 3:
        raise DomainError("residual needs at least 3 vortices")
    s = np.asarray(s, dtype=float)
    if s.size != n - 2:
        raise DomainError(f"expected {n - 2} interpolation weights, got {s.size}")
    return s * (z[:-2] - z[1:-1]) + (1.0 - s) * (z[2:] - z[1:-1])


def line_membership(c, tol: float = 1e-10) -> tuple:
    """Search the interpolation weights for a root of the alignment
    residual.  Each component is affine in its own weight, so the search
    is an exact per-component least-squares solve clipped to ``[0, 1]``.

    Returns ``(member, s_opt, residual_norm)``.
    """
    cfg = c if isinstance(c, Configuration) else Configuration(c)
    z = cfg.points
    if z.size < 3:
        raise DomainError("membership needs at least 3 vortices")
    a = z[:-2] - z[2:]
    b = z[2:] - z[1:-1]
    denom = np.abs(a) ** 2
    s = np.where(denom > 0.0, -(np.conj(a) * b).real / np.where(denom > 0.0, denom, 1.0), 0.0)
    s = np.clip(s, 0.0, 1.0)
    res = np.abs(s * a + b)
    return (bool(np.max(res) <= tol), s, float(np.max(res)))


def jacobian_determinant_h0(n: int, rho: float) -> float:
    """Absolute Jacobian determinant of the concentric seed's alignment map
    at its unique zero: ``2^{n-2} rho^{2n-4} |det M|`` with ``M`` the
    tridiagonal matrix with rows ``((j-1)/2, -j, (j+1)/2)``.

    Nonzero for every ``n >= 3``: the first ``n-3`` rows force a kernel
    vector to be constant and the last row forces that constant to zero.
    """
    if n < 3:
        raise DomainError("the certificate is defined for n >= 3")
    m = n - 2
    M = np.zeros((m, m))
    for j in range(1, m + 1):
        M[j - 1, j - 1] = -float(j)
        if j >= 2:
            M[j - 1, j - 2] = (j - 1) / 2.0
        if j <= m - 1:
            M[j - 1, j] = (j + 1) / 2.0
    det = abs(float(np.linalg.det(M)))
    value = (2.0 ** (n - 2)) * (float(rho) ** (2 * n - 4)) * det
    if value == 0.0:
        raise VortexError(f"alignment-map Jacobian unexpectedly singular at n={n}")
    return value
