"""Kirchhoff-Routh path function: energy, analytic gradient, Hessian, and
the cluster/boundary functionals that control collision behaviour.

The energy of vorticities ``gamma`` at configuration ``z`` is

    H(z) = sum_j gamma_j^2 h(z_j) + sum_{i != j} gamma_i gamma_j G(z_i, z_j),

with the double sum over ordered pairs.  Gradients are assembled from the
analytic kernel gradients; the Hessian is a central finite difference of
the analytic gradient (step 1e-5 scaled by coordinate magnitude).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import greens
from .errors import (
    CapacityError,
    CollarError,
    ConfigurationError,
    ConvergenceError,
    SingularityError,
)
from .geometry import Configuration, ConformalImage, UnitDisk

__all__ = [
    "VorticityVector",
    "ClusterPartition",
    "energy",
    "energy_gradient",
    "cluster_log_energy",
    "collision_weight_constant",
    "boundary_interaction",
    "boundary_pairing",
    "boundary_weight_constant",
    "hessian",
]

_TWO_PI = 2.0 * math.pi

MAX_SUBSET_N = 20


def VorticityVector(gamma) -> np.ndarray:
    """Validate and return a vorticity vector: nonzero finite reals."""
    g = np.asarray(gamma, dtype=float).ravel()
    if g.size == 0:
        raise ConfigurationError("gamma must be non-empty")
    if not np.all(np.isfinite(g)) or np.any(g == 0.0):
        raise ConfigurationError(f"vorticities must be finite and nonzero, got {gamma}")
    return g


@dataclass(frozen=True)
class ClusterPartition:
    """A partition of ``{0, ..., N-1}``; blocks with >= 2 indices are the
    collision clusters."""

    blocks: tuple

    def __init__(self, blocks):
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in blocks)
        seen: set = set()
        for b in blocks:
            if not b:
                raise ConfigurationError("empty block in partition")
            if seen & set(b):
                raise ConfigurationError("partition blocks are not disjoint")
            seen |= set(b)
        if seen != set(range(len(seen))) or not seen:
            raise ConfigurationError("blocks must partition 0..N-1 with no gaps")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def clusters(self) -> tuple:
        return tuple(b for b in self.blocks if len(b) >= 2)


# ---------------------------------------------------------------------------
# energy and gradient
# ---------------------------------------------------------------------------

def _as_config(c) -> Configuration:
    return c if isinstance(c, Configuration) else Configuration(c)


def _validated(domain, gamma, c):
    g = VorticityVector(gamma)
    cfg = _as_config(c)
    if len(cfg) != g.size:
        raise ConfigurationError(f"gamma has {g.size} entries but configuration has {len(cfg)}")
    cfg.validate(domain)
    return g, cfg


_TWO_PI_C = 2.0 * math.pi


def _pullback(domain, z):
    """For a conformal image, pull the batch back to the disk; the energy
    picks up ``sum_k gamma_k^2 ln|f'(w_k)| / 2pi`` and gradients the chain
    factor ``conj(1 / f'(w_k))``."""
    if isinstance(domain, ConformalImage):
        w = domain.inverse(z)
        fp = domain.map_derivative(w)
        fpp = domain.map_second_derivative(w)
        return UnitDisk(), w, fp, fpp
    return domain, z, None, None


def energy_batch(domain, gamma, z: np.ndarray) -> np.ndarray:
    """Energies of a batch of configurations, ``z`` of shape (S, N)."""
    g = np.asarray(gamma, dtype=float)
    z = np.asarray(z, dtype=complex)
    kern, w, fp, _ = _pullback(domain, z)
    h = greens.robin_value(kern, w)
    out = h @ (g ** 2)
    if fp is not None:
        out = out + (np.log(np.abs(fp)) @ (g ** 2)) / _TWO_PI_C
    n = z.shape[-1]
    if n > 1:
        iu, ju = np.triu_indices(n, k=1)
        G = greens.green_value(kern, w[..., iu], w[..., ju])
        out = out + 2.0 * (G @ (g[iu] * g[ju]))
    return out


def gradient_batch(domain, gamma, z: np.ndarray) -> np.ndarray:
    """Complex gradient of the energy for a batch, shape (S, N): entry k is
    ``dH/dx_k + 1j * dH/dy_k``."""
    g = np.asarray(gamma, dtype=float)
    z = np.asarray(z, dtype=complex)
    kern, w, fp, fpp = _pullback(domain, z)
    grad = greens.robin_grad(kern, w) * (g ** 2)
    if fp is not None:
        grad = grad + (g ** 2) * np.conj(fpp / fp) / _TWO_PI_C
    n = z.shape[-1]
    if n > 1:
        # one pairwise kernel call; the diagonal is filled with the rolled
        # configuration (valid distinct points) and zero-weighted
        idx = np.arange(n)
        Zx = np.broadcast_to(w[..., :, None], w.shape + (n,)).copy()
        Zy = np.broadcast_to(w[..., None, :], w.shape + (n,)).copy()
        Zy[..., idx, idx] = np.roll(w, 1, axis=-1)
        gx = greens.green_grad_x(kern, Zx, Zy)
        wts = g[:, None] * g[None, :]
        np.fill_diagonal(wts, 0.0)
        grad = grad + 2.0 * np.sum(gx * wts, axis=-1)
    if fp is not None:
        grad = np.conj(1.0 / fp) * grad
    return grad


def energy(domain, gamma, c) -> float:
    """Kirchhoff-Routh energy of a valid configuration."""
    g, cfg = _validated(domain, gamma, c)
    return float(energy_batch(domain, g, cfg.points[None, :])[0])


def energy_gradient(domain, gamma, c) -> np.ndarray:
    """Full analytic gradient as a real vector ``[dH/dx_1, dH/dy_1, ...]``."""
    g, cfg = _validated(domain, gamma, c)
    gz = gradient_batch(domain, g, cfg.points[None, :])[0]
    out = np.empty(2 * len(cfg))
    out[0::2] = gz.real
    out[1::2] = gz.imag
    return out


# ---------------------------------------------------------------------------
# cluster functionals
# ---------------------------------------------------------------------------

def cluster_log_energy(gamma, c, partition: ClusterPartition):
    """Weighted log-distance energies of the collision clusters.

    Returns ``(per_cluster, total, grad)`` where ``per_cluster`` maps each
    cluster (tuple of indices) to
    ``sum_{i != j in C} gamma_i gamma_j ln|z_i - z_j|``, ``total`` is their
    sum and ``grad`` the analytic gradient as a real 2N-vector.
    """
    g = VorticityVector(gamma)
    cfg = _as_config(c)
    if partition.n != len(cfg) or g.size != len(cfg):
        raise ConfigurationError("partition, gamma and configuration sizes disagree")
    z = cfg.points
    per: dict = {}
    grad = np.zeros(len(cfg), dtype=complex)
    for cluster in partition.clusters:
        idx = np.asarray(cluster, dtype=int)
        zz = z[idx]
        diff = zz[:, None] - zz[None, :]
        np.fill_diagonal(diff, 1.0)
        if np.min(np.abs(diff)) == 0.0:
            raise SingularityError(f"coincident points inside cluster {cluster}")
        gg = g[idx]
        w = gg[:, None] * gg[None, :]
        np.fill_diagonal(w, 0.0)
        per[cluster] = float(np.sum(w * np.log(np.abs(diff))))
        grad[idx] += 2.0 * np.sum(w * diff / np.abs(diff) ** 2, axis=1)
    total = float(sum(per.values()))
    out = np.empty(2 * len(cfg))
    out[0::2] = grad.real
    out[1::2] = grad.imag
    return per, total, out


def _pair_sum(gamma, idx) -> float:
    s = float(np.sum(gamma[list(idx)]))
    sq = float(np.sum(gamma[list(idx)] ** 2))
    return s * s - sq


def collision_weight_constant(gamma) -> tuple:
    """Minimum over index subsets ``|C| >= 2`` of ``|sum_{i != j in C}
    gamma_i gamma_j|``.

    Every such subset occurs as a cluster of some partition, so this equals
    the minimum over partitions and their clusters.  Returns ``(value,
    admissible)``; a vanishing pair sum yields ``(0.0, False)``.
    """
    g = VorticityVector(gamma)
    n = g.size
    if n < 2:
        return (math.inf, True)
    if n > MAX_SUBSET_N:
        raise CapacityError(f"subset enumeration is capped at N={MAX_SUBSET_N}, got {n}")
    best = math.inf
    for mask in range(3, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) < 2:
            continue
        s = abs(_pair_sum(g, idx))
        if s < best:
            best = s
    scale = float(np.sum(np.abs(g[:, None] * g[None, :]))) or 1.0
    if best <= 1e-12 * scale:
        return (0.0, False)
    return (float(best), True)


def boundary_weight_constant(gamma, cluster, strictly_convex: bool) -> float:
    """Boundary-repulsion weight of an index set: half the self-interaction
    minus the collision weight, restricted to opposite-sign pairs when the
    domain is strictly convex."""
    g = VorticityVector(gamma)
    idx = sorted(set(int(i) for i in cluster))
    if not idx:
        raise ConfigurationError("cluster must be non-empty")
    gg = g[idx]
    self_sum = float(np.sum(gg ** 2))
    prods = gg[:, None] * gg[None, :]
    np.fill_diagonal(prods, 0.0)
    if strictly_convex:
        cross = float(np.sum(np.abs(prods[prods < 0.0])))
    else:
        cross = float(np.sum(np.abs(prods)))
    return 0.5 * (self_sum - cross)


# ---------------------------------------------------------------------------
# boundary interaction
# ---------------------------------------------------------------------------

def boundary_interaction(domain, x, y) -> tuple:
    """Exact near-boundary pair interaction and its closed-form predictor.

    Returns ``(exact, predictor)`` where

        exact = 2 pi (<grad_x G, d_x nu_x> + <grad_y G, d_y nu_y>)

    and the predictor is ``(a + 2 d_y)^2 / ((a + 2 d_y)^2 + b^2) -
    a^2 / (a^2 + b^2)`` with ``a = <x - y, nu_y>``, ``b = <x - y, tau_y>``.
    Both points must lie in the boundary collar.
    """
    x, y = complex(x), complex(y)
    if x == y:
        raise SingularityError("boundary interaction needs distinct points")
    fx = domain.boundary_frame(x)
    fy = domain.boundary_frame(y)
    if not (fx.in_collar and fy.in_collar):
        raise CollarError("both points must lie in the boundary collar")
    gx = complex(greens.green_grad_x(domain, x, y))
    gy = complex(greens.green_grad_y(domain, x, y))
    dxnux = fx.dist * fx.inward_normal
    dynuy = fy.dist * fy.inward_normal
    exact = _TWO_PI * ((gx.real * dxnux.real + gx.imag * dxnux.imag)
                       + (gy.real * dynuy.real + gy.imag * dynuy.imag))
    diff = x - y
    a = diff.real * fy.inward_normal.real + diff.imag * fy.inward_normal.imag
    b = diff.real * fy.tangent.real + diff.imag * fy.tangent.imag
    ap = a + 2.0 * fy.dist
    predictor = ap * ap / (ap * ap + b * b) - a * a / (a * a + b * b)
    return (float(exact), float(predictor))


def boundary_pairing(domain, gamma, c, cluster) -> float:
    """Pairing ``<grad H, grad Phi_C>`` with ``Phi_C = pi sum_{j in C}
    d(z_j)^2``, i.e. ``2 pi sum_{j in C} <grad_j H, d(z_j) nu(z_j)>``.

    Every indexed point must lie in the collar; an empty index set gives 0.
    """
    g, cfg = _validated(domain, gamma, c)
    idx = sorted(set(int(i) for i in cluster))
    if not idx:
        return 0.0
    grad = gradient_batch(domain, g, cfg.points[None, :])[0]
    total = 0.0
    for j in idx:
        frame = domain.boundary_frame(cfg.points[j])
        if not frame.in_collar:
            raise CollarError(f"point {j} = {cfg.points[j]} is outside the collar")
        dn = frame.dist * frame.inward_normal
        total += grad[j].real * dn.real + grad[j].imag * dn.imag
    return float(_TWO_PI * total)


# ---------------------------------------------------------------------------
# Hessian
# ---------------------------------------------------------------------------

def hessian(domain, gamma, c, step: float = 1e-5) -> np.ndarray:
    """Central finite-difference Hessian of the energy from the analytic
    gradient, symmetrised.  Steps are scaled per coordinate and shrunk if a
    perturbed configuration would leave the domain."""
    g, cfg = _validated(domain, gamma, c)
    v0 = cfg.as_real()
    n2 = v0.size
    K = np.empty((n2, n2))
    for j in range(n2):
        h = step * (1.0 + abs(v0[j]))
        for _ in range(40):
            vp = v0.copy()
            vm = v0.copy()
            vp[j] += h
            vm[j] -= h
            zp = Configuration.from_real(vp)
            zm = Configuration.from_real(vm)
            if np.all(domain.contains(zp.points)) and np.all(domain.contains(zm.points)):
                break
            h *= 0.5
        else:
            raise ConvergenceError(
                f"hessian step underflow at coordinate {j}; too close to a singularity"
            )
        gp = gradient_batch(domain, g, zp.points[None, :])[0]
        gm = gradient_batch(domain, g, zm.points[None, :])[0]
        col = (gp - gm) / (2.0 * h)
        K[0::2, j] = col.real
        K[1::2, j] = col.imag
    return 0.5 * (K + K.T)


def hessian_eigenvalues(domain, gamma, c, step: float = 1e-5) -> np.ndarray:
    return np.sort(np.linalg.eigvalsh(hessian(domain, gamma, c, step=step)))


def morse_index(eigenvalues: Sequence[float], tol: float = 1e-8) -> int:
    """Number of ascent directions: positive Hessian eigenvalues beyond tol."""
    return int(np.sum(np.asarray(eigenvalues) > tol))
