"""Domain models, boundary frames, reflection and configuration-space helpers.

Points in the plane are represented as complex numbers throughout; a point
``z = x + iy`` stands for ``(x, y)``.  Vectorised internals accept numpy
arrays of complex128 and broadcast elementwise.

Conventions (used consistently by every domain model):

* ``inward_normal`` is the unit normal at the nearest boundary point that
  points into the domain, ``nu = (z - p(z)) / d(z)``.
* ``tangent`` is chosen so that the pair ``(tangent, inward_normal)`` is
  positively oriented, i.e. ``tangent = -1j * inward_normal``.
* curvature is signed with respect to the induced boundary orientation:
  ``+1`` for the unit circle as an outer boundary, ``-1/r`` for the inner
  circle of an annulus of inner radius ``r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AmbiguousProjectionError,
    ChartError,
    CollarError,
    ConfigurationError,
    ConvergenceError,
    DomainError,
)

__all__ = [
    "BoundaryFrame",
    "Configuration",
    "LineChart",
    "UnitDisk",
    "Annulus",
    "ConformalImage",
    "boundary_frame",
    "reflect",
    "contains",
    "line_configuration",
    "permute",
    "identity_permutation",
    "compose_permutations",
    "invert_permutation",
    "min_separation",
    "domain_from_config",
]

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryFrame:
    """Nearest-boundary data for a point strictly inside the domain.

    Attributes
    ----------
    foot : complex
        Nearest boundary point ``p(z)``.
    dist : float
        Distance ``d(z)`` to the boundary.
    inward_normal : complex
        Unit normal at ``foot`` pointing into the domain.
    tangent : complex
        Unit tangent at ``foot``; ``(tangent, inward_normal)`` is positively
        oriented.
    curvature : float
        Signed boundary curvature at ``foot``.
    in_collar : bool
        Whether ``z`` lies in the tubular collar where projection and
        reflection are reliable.
    """

    foot: complex
    dist: float
    inward_normal: complex
    tangent: complex
    curvature: float
    in_collar: bool


class Configuration:
    """An ordered tuple of N pairwise-distinct vortex positions."""

    __slots__ = ("points",)

    def __init__(self, points) -> None:
        pts = np.asarray(points, dtype=complex).ravel()
        if pts.size == 0:
            raise ConfigurationError("configuration must contain at least one point")
        if not np.all(np.isfinite(pts.view(float))):
            raise ConfigurationError("configuration contains non-finite points")
        self.points = pts

    def __len__(self) -> int:
        return self.points.size

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Configuration) and np.array_equal(self.points, other.points)

    def __repr__(self) -> str:
        return f"Configuration({list(self.points)!r})"

    def as_real(self) -> np.ndarray:
        """Flatten to ``[x_1, y_1, ..., x_N, y_N]``."""
        out = np.empty(2 * self.points.size)
        out[0::2] = self.points.real
        out[1::2] = self.points.imag
        return out

    @classmethod
    def from_real(cls, vec) -> "Configuration":
        vec = np.asarray(vec, dtype=float)
        return cls(vec[0::2] + 1j * vec[1::2])

    @classmethod
    def from_xy(cls, pairs: Sequence[Sequence[float]]) -> "Configuration":
        return cls([complex(p[0], p[1]) for p in pairs])

    def validate(self, domain) -> None:
        """Raise ConfigurationError unless all points are strictly inside the
        domain and pairwise distinct at working precision."""
        inside = domain.contains(self.points)
        if not np.all(inside):
            bad = int(np.argmin(inside))
            raise ConfigurationError(f"point {bad} = {self.points[bad]} lies outside the domain")
        n = len(self)
        if n > 1:
            diff = self.points[:, None] - self.points[None, :]
            np.fill_diagonal(diff, 1.0)
            if np.min(np.abs(diff)) == 0.0:
                raise ConfigurationError("configuration has coincident points")


@dataclass(frozen=True)
class LineChart:
    """Ordered configuration chart along the line ``anchor + R*direction``.

    ``params`` must be strictly increasing; ``perm`` is the permutation
    (0-based image array) whose inverse action is applied to the ordered
    tuple, so slot ``i`` of the result holds line position ``perm[i]``.
    """

    anchor: complex
    direction: complex
    params: tuple
    perm: tuple

    def __post_init__(self):
        d = complex(self.direction)
        if abs(abs(d) - 1.0) > 1e-12:
            object.__setattr__(self, "direction", d / abs(d))


# ---------------------------------------------------------------------------
# permutations (0-based image arrays)
# ---------------------------------------------------------------------------

def identity_permutation(n: int) -> tuple:
    return tuple(range(n))


def invert_permutation(sigma) -> tuple:
    sigma = tuple(sigma)
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def compose_permutations(sigma, rho) -> tuple:
    """Return ``sigma o rho``, i.e. ``i -> sigma[rho[i]]``."""
    sigma = tuple(sigma)
    return tuple(sigma[r] for r in rho)


def _check_permutation(sigma, n: int) -> tuple:
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise ConfigurationError(f"not a permutation of 0..{n - 1}: {sigma}")
    return sigma


def permute(sigma, config: Configuration) -> Configuration:
    """Left group action: output slot ``i`` holds input slot ``sigma^{-1}(i)``."""
    sigma = _check_permutation(sigma, len(config))
    inv = np.asarray(invert_permutation(sigma), dtype=int)
    return Configuration(config.points[inv])


# ---------------------------------------------------------------------------
# domain models
# ---------------------------------------------------------------------------

class _DomainBase:
    """Shared scalar wrappers over the vectorised per-domain internals."""

    multiply_connected = False

    # subclasses set: collar_eps (float)

    def contains(self, z):
        raise NotImplementedError

    def _frames(self, z):
        """Vectorised frames: (foot, dist, nu, kappa) arrays for points
        strictly inside the domain (not validated here)."""
        raise NotImplementedError

    def boundary_frame(self, z: complex) -> BoundaryFrame:
        z = complex(z)
        if not self.contains(z):
            raise DomainError(f"{z} is not strictly inside the domain")
        foot, dist, nu, kappa = (np.asarray(a).reshape(-1) for a in self._frames(np.asarray([z])))
        nu0 = complex(nu[0])
        return BoundaryFrame(
            foot=complex(foot[0]),
            dist=float(dist[0]),
            inward_normal=nu0,
            tangent=-1j * nu0,
            curvature=float(kappa[0]),
            in_collar=bool(dist[0] < self.collar_eps),
        )

    def reflect(self, z: complex) -> complex:
        """Reflection at the boundary, ``2 p(z) - z``; requires the collar."""
        frame = self.boundary_frame(z)
        if not frame.in_collar:
            raise CollarError(
                f"{z} has boundary distance {frame.dist:.6g} >= collar width "
                f"{self.collar_eps:.6g}; reflection is not well-defined"
            )
        return 2.0 * frame.foot - complex(z)

    def _reflect_array(self, z):
        foot, _, _, _ = self._frames(np.asarray(z, dtype=complex))
        return 2.0 * foot - np.asarray(z, dtype=complex)

    def sample_interior(self, rng, n: int, margin: float = 0.0) -> np.ndarray:
        """Rejection-sample n points uniformly from the domain interior,
        keeping boundary distance > margin."""
        lo, hi = self._bbox()
        out = np.empty(n, dtype=complex)
        filled = 0
        attempts = 0
        while filled < n:
            attempts += 1
            if attempts > 1000:
                raise ConvergenceError("interior sampling failed to fill the request")
            m = max(2 * (n - filled), 64)
            cand = (rng.uniform(lo.real, hi.real, m) + 1j * rng.uniform(lo.imag, hi.imag, m))
            keep = self.contains(cand)
            if margin > 0.0:
                keep &= self._boundary_dist(cand) > margin
            cand = cand[keep]
            take = min(cand.size, n - filled)
            out[filled:filled + take] = cand[:take]
            filled += take
        return out

    def _boundary_dist(self, z):
        _, dist, _, _ = self._frames(np.asarray(z, dtype=complex))
        return dist

    def _bbox(self):
        raise NotImplementedError


class UnitDisk(_DomainBase):
    """The open unit disk ``{ |z| < 1 }``."""

    kind = "disk"
    collar_eps = 0.5
    multiply_connected = False
    strictly_convex = True

    def __repr__(self) -> str:
        return "UnitDisk()"

    def __eq__(self, other) -> bool:
        return isinstance(other, UnitDisk)

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.abs(z) < 1.0
        return bool(out) if out.ndim == 0 else out

    def _frames(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        # tie-break at the centre: foot at boundary parameter 0
        foot = np.where(r > 0.0, np.divide(z, np.where(r > 0.0, r, 1.0)), 1.0 + 0.0j)
        dist = 1.0 - r
        nu = -foot
        kappa = np.ones_like(r)
        return foot, dist, nu, kappa

    def _bbox(self):
        return (-1.0 - 1.0j, 1.0 + 1.0j)

    def boundary_components(self):
        return ({"radius": 1.0, "center": 0.0 + 0.0j, "orientation": +1},)

    def to_config(self) -> dict:
        return {"kind": "disk"}


class Annulus(_DomainBase):
    """Concentric annulus ``{ inner_radius < |z| < 1 }``.

    Carries the boundary-circulation periods used by the hydrodynamic
    Green's function; they must sum to -1 and default to the symmetric
    split ``(-1/2, -1/2)``.
    """

    kind = "annulus"
    multiply_connected = True
    strictly_convex = False

    def __init__(self, inner_radius: float, periods: Sequence[float] | None = None) -> None:
        r = float(inner_radius)
        if not 0.0 < r < 1.0:
            raise DomainError(f"annulus inner radius must lie in (0, 1), got {r}")
        self.inner_radius = r
        self.collar_eps = min(r, 1.0 - r) / 2.0
        if periods is None:
            periods = (-0.5, -0.5)
        periods = tuple(float(p) for p in periods)
        if len(periods) != 2 or abs(sum(periods) + 1.0) > 1e-12:
            raise DomainError(f"periods must be two reals summing to -1, got {periods}")
        self.periods = periods

    def __repr__(self) -> str:
        return f"Annulus({self.inner_radius!r}, periods={self.periods!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Annulus)
            and other.inner_radius == self.inner_radius
            and other.periods == self.periods
        )

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        out = (r > self.inner_radius) & (r < 1.0)
        return bool(out) if out.ndim == 0 else out

    def _frames(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        q = self.inner_radius
        d_out = 1.0 - r
        d_in = r - q
        unit = z / r
        # ties (mid-circle) go to the outer component, which sorts first
        outer = d_out <= d_in
        foot = np.where(outer, unit, q * unit)
        dist = np.where(outer, d_out, d_in)
        nu = np.where(outer, -unit, unit)
        kappa = np.where(outer, 1.0, -1.0 / q)
        return foot, dist, nu, kappa

    def _bbox(self):
        return (-1.0 - 1.0j, 1.0 + 1.0j)

    def boundary_components(self):
        # induced orientation: outer counterclockwise, inner clockwise
        return (
            {"radius": 1.0, "center": 0.0 + 0.0j, "orientation": +1},
            {"radius": self.inner_radius, "center": 0.0 + 0.0j, "orientation": -1},
        )

    def to_config(self) -> dict:
        return {
            "kind": "annulus",
            "inner_radius": self.inner_radius,
            "periods": list(self.periods),
        }


class ConformalImage(_DomainBase):
    """Image of the unit disk under an injective polynomial map ``f``.

    ``coeffs[k]`` is the coefficient of ``w**k``.  Injectivity on the closed
    disk is checked numerically at construction: the winding number of
    ``f'`` along the boundary must vanish (argument principle, so ``f'`` has
    no zero in the disk) and the boundary image curve must be simple.
    """

    kind = "conformal"
    multiply_connected = False

    _N_BOUNDARY = 1024
    _NEWTON_TOL = 1e-12
    _NEWTON_MAX = 100

    def __init__(self, coeffs, check: bool = True) -> None:
        c = np.asarray([complex(v) for v in coeffs], dtype=complex)
        if c.size < 2 or np.all(c[1:] == 0):
            raise DomainError("conformal map must have a non-constant polynomial")
        self.coeffs = c
        self._dcoeffs = c[1:] * np.arange(1, c.size)
        self._ddcoeffs = self._dcoeffs[1:] * np.arange(1, self._dcoeffs.size)
        # boundary curve samples (cached for nearest-point search)
        t = np.arange(self._N_BOUNDARY) * (_TWO_PI / self._N_BOUNDARY)
        w = np.exp(1j * t)
        self._bt = t
        self._bc = self.map(w)
        self._bfp = self.map_derivative(w)
        if check:
            self._check_injective()
        self.strictly_convex = bool(np.min(self._curvature_at(self._bt)) > 1e-9)
        self.collar_eps = self._estimate_collar()
        # warm-start grid for the inverse map
        rr = np.linspace(0.02, 0.985, 36)
        tt = np.arange(96) * (_TWO_PI / 96)
        grid_w = (rr[:, None] * np.exp(1j * tt[None, :])).ravel()
        grid_w = np.concatenate(([0.0 + 0.0j], grid_w))
        self._grid_w = grid_w
        self._grid_z = self.map(grid_w)
        self.center = complex(self.map(0.0 + 0.0j))

    def __repr__(self) -> str:
        return f"ConformalImage({list(self.coeffs)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ConformalImage) and np.array_equal(other.coeffs, self.coeffs)

    # -- polynomial map and derivatives --

    def map(self, w):
        return np.polyval(self.coeffs[::-1], np.asarray(w, dtype=complex))

    def map_derivative(self, w):
        return np.polyval(self._dcoeffs[::-1], np.asarray(w, dtype=complex))

    def map_second_derivative(self, w):
        if self._ddcoeffs.size == 0:
            return np.zeros_like(np.asarray(w, dtype=complex))
        return np.polyval(self._ddcoeffs[::-1], np.asarray(w, dtype=complex))

    # -- construction-time checks --

    def _check_injective(self) -> None:
        fp = self._bfp
        if np.min(np.abs(fp)) < 1e-9:
            raise DomainError("f' vanishes on the boundary; map is not injective")
        winding = np.sum(np.angle(np.roll(fp, -1) / fp)) / _TWO_PI
        if abs(winding) > 0.25:
            raise DomainError(
                f"f' has zeros inside the disk (winding {winding:.3f}); map is not injective"
            )
        if self._boundary_self_intersects():
            raise DomainError("boundary image curve is not simple; map is not injective")

    def _boundary_self_intersects(self) -> bool:
        # segment/segment intersection test on a coarse polygon, skipping
        # neighbouring segments
        m = 256
        idx = np.linspace(0, self._N_BOUNDARY, m, endpoint=False).astype(int)
        p = self._bc[idx]
        a = p
        b = np.roll(p, -1)
        for i in range(m):
            js = np.arange(i + 2, m if i > 0 else m - 1)
            if js.size == 0:
                continue
            d1 = _cross(b[i] - a[i], a[js] - a[i])
            d2 = _cross(b[i] - a[i], b[js] - a[i])
            d3 = _cross(b[js] - a[js], a[i] - a[js])
            d4 = _cross(b[js] - a[js], b[i] - a[js])
            if np.any((d1 * d2 < 0) & (d3 * d4 < 0)):
                return True
        return False

    def _estimate_collar(self) -> float:
        # inward reach estimate from the focal bound 1/max(kappa) and the
        # bottleneck of well-separated boundary points; halved for safety
        kappa = self._curvature_at(self._bt)
        kmax = float(np.max(kappa))
        focal = 1.0 / kmax if kmax > 0 else np.inf
        m = 256
        idx = np.linspace(0, self._N_BOUNDARY, m, endpoint=False).astype(int)
        p = self._bc[idx]
        sep = np.abs(p[:, None] - p[None, :])
        gap = np.minimum(np.abs(np.arange(m)[:, None] - np.arange(m)[None, :]),
                         m - np.abs(np.arange(m)[:, None] - np.arange(m)[None, :]))
        far = gap > m // 8
        neck = float(np.min(sep[far])) / 2.0 if np.any(far) else np.inf
        return 0.5 * min(focal, neck)

    # -- boundary curve helpers --

    def _curve(self, t):
        w = np.exp(1j * np.asarray(t, dtype=float))
        return self.map(w)

    def _curve_derivatives(self, t):
        t = np.asarray(t, dtype=float)
        w = np.exp(1j * t)
        fp = self.map_derivative(w)
        fpp = self.map_second_derivative(w)
        c1 = 1j * w * fp
        c2 = -w * fp - (w ** 2) * fpp
        return c1, c2

    def _curvature_at(self, t):
        c1, c2 = self._curve_derivatives(t)
        return (np.conj(c1) * c2).imag / np.abs(c1) ** 3

    # -- containment and inverse --

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        w, ok = self._inverse_safe(z.reshape(-1))
        out = ok & (np.abs(w) < 1.0)
        return bool(out[0]) if scalar else out.reshape(z.shape)

    def inverse(self, z):
        """Inverse map ``f^{-1}`` on the domain; damped-Newton with a grid
        warm start.  Raises ConvergenceError after 100 iterations."""
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        w, ok = self._inverse_safe(z.reshape(-1))
        if not np.all(ok):
            bad = z.reshape(-1)[~ok][0]
            raise ConvergenceError(f"inverse map did not converge at {bad}", last_iterate=w)
        return complex(w[0]) if scalar else w.reshape(z.shape)

    def _inverse_safe(self, z):
        """Vectorised Newton iteration; returns (w, converged_mask)."""
        z = np.asarray(z, dtype=complex).ravel()
        n = z.size
        w = np.empty(n, dtype=complex)
        # nearest warm start, chunked to bound memory
        chunk = 2048
        for s in range(0, n, chunk):
            zz = z[s:s + chunk]
            d2 = np.abs(zz[:, None] - self._grid_z[None, :])
            w[s:s + chunk] = self._grid_w[np.argmin(d2, axis=1)]
        res = np.abs(self.map(w) - z)
        active = res > self._NEWTON_TOL
        for _ in range(self._NEWTON_MAX):
            if not np.any(active):
                break
            wa = w[active]
            za = z[active]
            fp = self.map_derivative(wa)
            step = (self.map(wa) - za) / fp
            cand = wa - step
            rnew = np.abs(self.map(cand) - za)
            rold = np.abs(self.map(wa) - za)
            # damping: halve steps that do not reduce the residual
            for _ in range(40):
                worse = rnew >= rold
                if not np.any(worse):
                    break
                step[worse] *= 0.5
                cand = wa - step
                rnew = np.abs(self.map(cand) - za)
            w[active] = cand
            res[active] = rnew
            active = res > self._NEWTON_TOL
        # two polish sweeps drive converged points to machine precision
        for _ in range(2):
            ok = res <= self._NEWTON_TOL
            if not np.any(ok):
                break
            w[ok] = w[ok] - (self.map(w[ok]) - z[ok]) / self.map_derivative(w[ok])
        res = np.abs(self.map(w) - z)
        return w, res <= self._NEWTON_TOL

    # -- nearest boundary point --

    def _frames(self, z):
        z = np.asarray(z, dtype=complex).ravel()
        foot = np.empty_like(z)
        dist = np.empty(z.size)
        kappa = np.empty(z.size)
        for i, zi in enumerate(z):
            t, d = self._nearest_param(zi)
            foot[i] = self._curve(t)
            dist[i] = d
            kappa[i] = float(self._curvature_at(t))
        nu = (z - foot) / dist
        return foot, dist, nu, kappa

    def _nearest_param(self, z: complex):
        d2 = np.abs(self._bc - z)
        order = np.argsort(d2)
        t0 = self._bt[order[0]]
        t_best, d_best = self._refine_param(t0, z)
        # check a well-separated second candidate for ambiguity
        spacing = _TWO_PI / self._N_BOUNDARY
        for idx in order[1:]:
            if _angdist(self._bt[idx], t0) > 0.3:
                t2, d2nd = self._refine_param(self._bt[idx], z)
                if (
                    abs(d2nd - d_best) <= 1e-12 * max(1.0, d_best)
                    and abs(self._curve(t2) - self._curve(t_best)) > 1e-9
                    and d_best >= self.collar_eps
                ):
                    raise AmbiguousProjectionError(
                        (complex(self._curve(t_best)), complex(self._curve(t2)))
                    )
                if d2nd < d_best - 1e-15:
                    t_best, d_best = t2, d2nd
                break
        del spacing
        return t_best, d_best

    def _refine_param(self, t0: float, z: complex):
        """Damped Newton on d/dt |c(t)-z|^2; tolerance 1e-12 in t."""
        t = float(t0)
        max_step = _TWO_PI / self._N_BOUNDARY
        for _ in range(60):
            c = self._curve(t)
            c1, c2 = self._curve_derivatives(t)
            diff = c - z
            phi1 = 2.0 * (diff.real * c1.real + diff.imag * c1.imag)
            phi2 = 2.0 * (abs(c1) ** 2 + diff.real * c2.real + diff.imag * c2.imag)
            if phi2 <= 0:
                step = -math.copysign(max_step, phi1)
            else:
                step = -phi1 / phi2
                step = max(-4 * max_step, min(4 * max_step, step))
            # damp until the squared distance does not increase
            base = abs(diff) ** 2
            lam = 1.0
            for _ in range(40):
                cand = t + lam * step
                if abs(self._curve(cand) - z) ** 2 <= base + 1e-18:
                    break
                lam *= 0.5
            t = t + lam * step
            if abs(lam * step) < 1e-12:
                break
        return t % _TWO_PI, abs(self._curve(t) - z)

    def _bbox(self):
        re = self._bc.real
        im = self._bc.imag
        return (complex(re.min(), im.min()), complex(re.max(), im.max()))

    def boundary_components(self):
        return ({"curve": self._curve, "orientation": +1},)

    def to_config(self) -> dict:
        return {"kind": "conformal", "coeffs": [[c.real, c.imag] for c in self.coeffs]}


def _cross(a, b):
    return a.real * np.asarray(b).imag - a.imag * np.asarray(b).real


def _angdist(a: float, b: float) -> float:
    d = abs(a - b) % _TWO_PI
    return min(d, _TWO_PI - d)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def boundary_frame(domain, z: complex) -> BoundaryFrame:
    """Nearest-boundary frame (foot, distance, normal, tangent, curvature)."""
    return domain.boundary_frame(z)


def reflect(domain, z: complex) -> complex:
    """Reflection ``2 p(z) - z`` at the boundary; requires ``z`` in the collar."""
    return domain.reflect(z)


def contains(domain, z) -> bool:
    """True iff ``z`` is strictly inside the domain."""
    return domain.contains(z)


def line_configuration(domain, chart: LineChart) -> Configuration:
    """Place vortices at ``anchor + t_j * direction`` and apply the inverse
    permutation action of ``chart.perm``."""
    t = np.asarray(chart.params, dtype=float)
    if t.ndim != 1 or t.size < 1:
        raise ChartError("chart parameters must be a non-empty 1-d sequence")
    if np.any(np.diff(t) <= 0.0):
        raise ChartError(f"chart parameters must be strictly increasing, got {chart.params}")
    pts = chart.anchor + t * chart.direction
    inside = domain.contains(pts)
    if not np.all(inside):
        bad = int(np.argmin(inside))
        raise DomainError(f"line point {bad} = {pts[bad]} lies outside the domain")
    sigma = _check_permutation(chart.perm, t.size)
    return Configuration(pts[np.asarray(sigma, dtype=int)])


def min_separation(domain, config: Configuration) -> tuple:
    """Return ``(min_pair, min_bdry)``: the minimum pairwise distance and the
    minimum boundary distance.  A configuration lies in the near-collision
    set of width delta iff ``min(min_pair, min_bdry) <= delta``."""
    pts = config.points
    _, dist, _, _ = domain._frames(pts)
    min_bdry = float(np.min(dist))
    if pts.size < 2:
        return (math.inf, min_bdry)
    diff = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(diff, np.inf)
    return (float(np.min(diff)), min_bdry)


# ---------------------------------------------------------------------------
# configuration parsing
# ---------------------------------------------------------------------------

def domain_from_config(cfg: dict):
    """Build a domain model from a config mapping.

    Expected keys: ``kind`` in {"disk", "annulus", "conformal"}, plus
    ``inner_radius`` (and optional ``periods``) for the annulus and
    ``coeffs`` as a list of ``[re, im]`` pairs for the conformal image.
    """
    kind = cfg.get("kind")
    if kind == "disk":
        return UnitDisk()
    if kind == "annulus":
        if "inner_radius" not in cfg:
            raise DomainError("annulus config requires inner_radius")
        return Annulus(cfg["inner_radius"], periods=cfg.get("periods"))
    if kind == "conformal":
        if "coeffs" not in cfg:
            raise DomainError("conformal config requires coeffs")
        coeffs = [complex(c[0], c[1]) for c in cfg["coeffs"]]
        return ConformalImage(coeffs)
    raise DomainError(f"unknown domain kind {kind!r}")
