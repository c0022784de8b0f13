"""Ascending gradient flow, critical-point refinement, near-collision
scans, and the Hamiltonian dynamics integrator.

The search flow integrates ``dz/dt = + grad H`` (energy ascends, matching
the deformation the existence argument uses) with explicit Euler steps and
step halving whenever a step would decrease the energy or leave the
domain.  Converged endpoints are polished by a damped Newton iteration on
``grad H = 0`` using a pseudo-inverse with eigenvalue cutoff 1e-10, which
tolerates the rotational null direction of the disk and annulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import hamiltonian
from .errors import (
    ConfigurationError,
    ConvergenceError,
    FlowTerminatedError,
    SamplingError,
)
from .geometry import Annulus, Configuration, UnitDisk, min_separation

__all__ = [
    "FlowParams",
    "FlowTrace",
    "CriticalPointReport",
    "MDeltaScanResult",
    "Trajectory",
    "CauchyDiagnosis",
    "gradient_flow",
    "find_critical_point",
    "m_delta_scan",
    "integrate_dynamics",
    "flow_limit_monitor",
    "sweep",
]

_TWO_PI = 2.0 * math.pi

_ASCENT_SLACK = 1e-12
_MAX_STEPS = 100_000


@dataclass(frozen=True)
class FlowParams:
    dt_init: float = 0.01
    dt_min: float = 1e-12
    dt_max: float = 1.0
    grad_tol: float = 1e-8
    max_time: float = 500.0
    collision_delta: float = 1e-3
    energy_cap: float | None = None

    def __post_init__(self):
        if not (0.0 < self.dt_min <= self.dt_init <= self.dt_max):
            raise ConfigurationError("need 0 < dt_min <= dt_init <= dt_max")
        if self.grad_tol <= 0.0:
            raise ConfigurationError("grad_tol must be positive")
        if self.max_time <= 0.0 or self.collision_delta <= 0.0:
            raise ConfigurationError("max_time and collision_delta must be positive")


@dataclass
class FlowTrace:
    times: np.ndarray
    configs: np.ndarray  # (M, N) complex
    energies: np.ndarray
    grad_norms: np.ndarray
    termination: str

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final_configuration(self) -> Configuration:
        return Configuration(self.configs[-1])

    def rows(self):
        """CSV rows: t, x_1, y_1, ..., x_N, y_N, H, grad_norm."""
        for i in range(len(self.times)):
            z = self.configs[i]
            coords = np.empty(2 * z.size)
            coords[0::2] = z.real
            coords[1::2] = z.imag
            yield [self.times[i], *coords, self.energies[i], self.grad_norms[i]]


@dataclass(frozen=True)
class CriticalPointReport:
    config: Configuration
    energy: float
    grad_norm: float
    hessian_eigenvalues: np.ndarray
    morse_index: int

    def to_json_dict(self) -> dict:
        return {
            "config": [[p.real, p.imag] for p in self.config.points],
            "energy": self.energy,
            "grad_norm": self.grad_norm,
            "hessian_eigenvalues": [float(v) for v in self.hessian_eigenvalues],
            "morse_index": self.morse_index,
        }


def _grad_complex(domain, gamma, z):
    return hamiltonian.gradient_batch(domain, gamma, z[None, :])[0]


def _grad_norm(gz) -> float:
    return float(np.sqrt(np.sum(np.abs(gz) ** 2)))


def _classify_blowup(domain, z, delta: float) -> str:
    """interior when a pairwise distance crossed delta while both involved
    points keep boundary distance > 2*delta; boundary otherwise."""
    diff = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(diff, np.inf)
    min_pair = float(np.min(diff))
    if min_pair <= delta:
        i, j = np.unravel_index(np.argmin(diff), diff.shape)
        _, dist, _, _ = domain._frames(z[[i, j]])
        if np.all(dist > 2.0 * delta):
            return "interior_blowup"
    return "boundary_blowup"


def gradient_flow(domain, gamma, z0, params: FlowParams) -> FlowTrace:
    """Ascending gradient flow of the energy from ``z0``.

    Terminates with one of: ``converged`` (gradient norm below tolerance),
    ``interior_blowup`` / ``boundary_blowup`` (minimum separation crossed
    ``collision_delta``), ``energy_cap_hit``, or ``budget_exhausted``.
    Accepted steps never decrease the energy by more than 1e-12.
    """
    g = hamiltonian.VorticityVector(gamma)
    cfg = z0 if isinstance(z0, Configuration) else Configuration(z0)
    cfg.validate(domain)
    z = cfg.points.copy()

    cap = params.energy_cap
    E = float(hamiltonian.energy_batch(domain, g, z[None, :])[0])
    if cap is None:
        cap = E + 10.0

    gz = _grad_complex(domain, g, z)
    gn = _grad_norm(gz)
    times, configs, energies, gnorms = [0.0], [z.copy()], [E], [gn]
    t = 0.0
    dt = params.dt_init
    termination = "budget_exhausted"

    for _ in range(_MAX_STEPS):
        if gn < params.grad_tol:
            termination = "converged"
            break
        if t >= params.max_time:
            termination = "budget_exhausted"
            break
        # propose and halve until the step gains enough energy and stays in
        # the domain; the sufficient-ascent factor keeps the discrete path
        # within the flow-displacement estimate checked by the monitor
        accepted = False
        while True:
            z_new = z + dt * gz
            if np.all(domain.contains(z_new)):
                E_new = float(hamiltonian.energy_batch(domain, g, z_new[None, :])[0])
                need = 0.75 * dt * gn * gn - 1e-14
                if np.isfinite(E_new) and (
                    E_new - E >= need
                    or (dt <= params.dt_min and E_new >= E - _ASCENT_SLACK)
                ):
                    accepted = True
                    break
            if dt <= params.dt_min:
                break
            dt = max(params.dt_min, 0.5 * dt)
        if not accepted:
            termination = "budget_exhausted"
            break

        t += dt
        z, E = z_new, E_new
        gz = _grad_complex(domain, g, z)
        gn = _grad_norm(gz)
        times.append(t)
        configs.append(z.copy())
        energies.append(E)
        gnorms.append(gn)

        min_pair, min_bdry = min_separation(domain, Configuration(z))
        if min(min_pair, min_bdry) <= params.collision_delta:
            termination = _classify_blowup(domain, z, params.collision_delta)
            break
        if E > cap:
            termination = "energy_cap_hit"
            break
        dt = min(dt * 1.5, params.dt_max)
    else:
        termination = "budget_exhausted"

    return FlowTrace(
        times=np.asarray(times),
        configs=np.asarray(configs),
        energies=np.asarray(energies),
        grad_norms=np.asarray(gnorms),
        termination=termination,
    )


_EIG_CUTOFF = 1e-10


def _newton_polish(domain, gamma, z, grad_tol: float, max_iter: int = 60):
    g = np.asarray(gamma, dtype=float)
    for _ in range(max_iter):
        gz = _grad_complex(domain, g, z)
        gn = _grad_norm(gz)
        if gn < grad_tol:
            return z, gn
        gvec = np.empty(2 * z.size)
        gvec[0::2] = gz.real
        gvec[1::2] = gz.imag
        K = hamiltonian.hessian(domain, g, Configuration(z))
        lam, V = np.linalg.eigh(K)
        inv = np.where(np.abs(lam) > _EIG_CUTOFF, 1.0 / np.where(lam == 0.0, 1.0, lam), 0.0)
        step = -V @ (inv * (V.T @ gvec))
        dz = step[0::2] + 1j * step[1::2]
        # damped: halve until the gradient norm decreases and the config
        # stays inside the domain
        lam_ls = 1.0
        improved = False
        for _ in range(30):
            z_new = z + lam_ls * dz
            if np.all(domain.contains(z_new)):
                gn_new = _grad_norm(_grad_complex(domain, g, z_new))
                if gn_new < gn:
                    improved = True
                    break
            lam_ls *= 0.5
        if not improved:
            raise ConvergenceError(
                f"Newton polish stalled at gradient norm {gn:.3e}",
                last_iterate=Configuration(z),
            )
        z = z_new
    gn = _grad_norm(_grad_complex(domain, g, z))
    if gn >= grad_tol:
        raise ConvergenceError(
            f"Newton polish did not reach tolerance ({gn:.3e} >= {grad_tol:.3e})",
            last_iterate=Configuration(z),
        )
    return z, gn


def find_critical_point(
    domain,
    gamma,
    z0,
    params: FlowParams,
    *,
    polish_threshold: float = 1e-5,
    newton_max_iter: int = 60,
    return_trace: bool = False,
):
    """Gradient flow followed by a Newton polish of ``grad H = 0``.

    The flow runs until its gradient norm falls below
    ``max(grad_tol, polish_threshold)``; Newton then refines to
    ``params.grad_tol``.  A non-converged flow raises
    ``FlowTerminatedError`` with the termination reason and trace.
    Returns the report, or ``(report, trace)`` with ``return_trace``.
    """
    g = hamiltonian.VorticityVector(gamma)
    coarse_tol = max(params.grad_tol, polish_threshold)
    flow_params = FlowParams(
        dt_init=params.dt_init,
        dt_min=params.dt_min,
        dt_max=params.dt_max,
        grad_tol=coarse_tol,
        max_time=params.max_time,
        collision_delta=params.collision_delta,
        energy_cap=params.energy_cap,
    )
    trace = gradient_flow(domain, g, z0, flow_params)
    if trace.termination != "converged":
        raise FlowTerminatedError(trace.termination, trace)

    z, gn = _newton_polish(domain, g, trace.configs[-1].copy(), params.grad_tol,
                           max_iter=newton_max_iter)
    cfg = Configuration(z)
    cfg.validate(domain)
    min_pair, min_bdry = min_separation(domain, cfg)
    if min(min_pair, min_bdry) <= params.collision_delta:
        raise ConvergenceError(
            "refined point violates the separation margin", last_iterate=cfg
        )
    eigs = hamiltonian.hessian_eigenvalues(domain, g, cfg)
    report = CriticalPointReport(
        config=cfg,
        energy=float(hamiltonian.energy_batch(domain, g, z[None, :])[0]),
        grad_norm=gn,
        hessian_eigenvalues=eigs,
        morse_index=hamiltonian.morse_index(eigs),
    )
    return (report, trace) if return_trace else report


# ---------------------------------------------------------------------------
# near-collision scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MDeltaScanResult:
    min_grad_norm: float
    argmin_config: Configuration
    delta: float
    samples: int

    def to_json_dict(self) -> dict:
        return {
            "min_grad_norm": self.min_grad_norm,
            "argmin_config": [[p.real, p.imag] for p in self.argmin_config.points],
            "delta": self.delta,
            "samples": self.samples,
        }


def _boundary_offset_points(domain, rng, m: int, delta: float) -> np.ndarray:
    u = rng.uniform(0.0, 1.0, m)
    t = rng.uniform(0.0, _TWO_PI, m)
    d = delta * np.maximum(u, 1e-6)
    if isinstance(domain, UnitDisk):
        return (1.0 - d) * np.exp(1j * t)
    if isinstance(domain, Annulus):
        inner = rng.uniform(size=m) < 0.5
        r = np.where(inner, domain.inner_radius + d, 1.0 - d)
        return r * np.exp(1j * t)
    c = domain._curve(t)
    c1, _ = domain._curve_derivatives(t)
    nu = 1j * c1 / np.abs(c1)
    return c + d * nu


def m_delta_scan(domain, gamma, delta: float, sample_count: int, *, seed: int = 0) -> MDeltaScanResult:
    """Minimum gradient norm over sampled near-collision configurations.

    Each sample forces membership in the near-collision set: either one
    pair within ``delta`` of each other or one point within ``delta`` of
    the boundary; remaining points are uniform in the domain.
    """
    if delta <= 0.0:
        raise SamplingError("delta must be positive")
    g = hamiltonian.VorticityVector(gamma)
    n = g.size
    rng = np.random.default_rng(seed)
    S = int(sample_count)

    z = domain.sample_interior(rng, S * n, margin=1e-9).reshape(S, n)
    use_pair = rng.uniform(size=S) < 0.5 if n >= 2 else np.zeros(S, dtype=bool)

    # pair samples: move one vortex next to another
    pair_rows = np.nonzero(use_pair)[0]
    if pair_rows.size:
        i_idx = rng.integers(0, n, pair_rows.size)
        j_off = rng.integers(1, n, pair_rows.size)
        j_idx = (i_idx + j_off) % n
        for attempt in range(200):
            r = delta * np.maximum(rng.uniform(size=pair_rows.size), 1e-6)
            th = rng.uniform(0.0, _TWO_PI, pair_rows.size)
            cand = z[pair_rows, i_idx] + r * np.exp(1j * th)
            ok = domain.contains(cand)
            z[pair_rows[ok], j_idx[ok]] = cand[ok]
            pair_rows, i_idx, j_idx = pair_rows[~ok], i_idx[~ok], j_idx[~ok]
            if pair_rows.size == 0:
                break
        else:
            raise SamplingError("could not place near-collision pairs inside the domain")

    # boundary samples: move one vortex into the boundary strip
    bdry_rows = np.nonzero(~use_pair)[0]
    if bdry_rows.size:
        j_idx = rng.integers(0, n, bdry_rows.size)
        z[bdry_rows, j_idx] = _boundary_offset_points(domain, rng, bdry_rows.size, delta)

    # guard against accidental coincidences
    if n >= 2:
        diff = np.abs(z[:, :, None] - z[:, None, :])
        diff[:, np.arange(n), np.arange(n)] = np.inf
        bad = np.min(diff, axis=(1, 2)) == 0.0
        if np.any(bad):
            z[bad, 0] += 1e-9

    grads = np.empty(S)
    chunk = 4096
    for s in range(0, S, chunk):
        gz = hamiltonian.gradient_batch(domain, g, z[s:s + chunk])
        grads[s:s + chunk] = np.sqrt(np.sum(np.abs(gz) ** 2, axis=1))
    best = int(np.argmin(grads))
    return MDeltaScanResult(
        min_grad_norm=float(grads[best]),
        argmin_config=Configuration(z[best]),
        delta=float(delta),
        samples=S,
    )


# ---------------------------------------------------------------------------
# Hamiltonian dynamics
# ---------------------------------------------------------------------------

@dataclass
class Trajectory:
    times: np.ndarray
    configs: np.ndarray  # (M, N) complex
    energies: np.ndarray
    termination: str  # "completed" | "collision_halt"

    @property
    def relative_drift(self) -> float:
        h0 = self.energies[0]
        return float(np.max(np.abs(self.energies - h0)) / (1.0 + abs(h0)))

    def rows(self):
        for i in range(len(self.times)):
            z = self.configs[i]
            coords = np.empty(2 * z.size)
            coords[0::2] = z.real
            coords[1::2] = z.imag
            yield [self.times[i], *coords, self.energies[i]]


def integrate_dynamics(
    domain,
    gamma,
    z0,
    t_final: float,
    tol: float,
    *,
    n_output: int = 201,
    min_separation_floor: float = 1e-6,
) -> Trajectory:
    """Integrate the point-vortex equations of motion.

    The velocity of vortex ``i`` is ``dz_i/dt = -1j * grad_i H / gamma_i``
    (i.e. ``gamma_i dx_i/dt = dH/dy_i`` and ``gamma_i dy_i/dt = -dH/dx_i``),
    solved with the adaptive Dormand-Prince 4(5) pair at ``rtol = atol =
    tol``.  Integration halts early when the minimum pairwise or boundary
    separation crosses the floor.
    """
    g = hamiltonian.VorticityVector(gamma)
    cfg = z0 if isinstance(z0, Configuration) else Configuration(z0)
    cfg.validate(domain)
    if t_final <= 0.0:
        raise ConfigurationError("t_final must be positive")

    def rhs(_t, v):
        z = v[0::2] + 1j * v[1::2]
        gz = hamiltonian.gradient_batch(domain, g, z[None, :])[0]
        dz = -1j * gz / g
        out = np.empty_like(v)
        out[0::2] = dz.real
        out[1::2] = dz.imag
        return out

    def separation_event(_t, v):
        z = v[0::2] + 1j * v[1::2]
        if not np.all(domain.contains(z)):
            return -min_separation_floor
        mp, mb = min_separation(domain, Configuration(z))
        return min(mp, mb) - min_separation_floor

    separation_event.terminal = True
    separation_event.direction = -1.0

    sol = solve_ivp(
        rhs,
        (0.0, float(t_final)),
        cfg.as_real(),
        method="RK45",
        rtol=tol,
        atol=tol,
        t_eval=np.linspace(0.0, float(t_final), n_output),
        events=separation_event,
    )
    times = sol.t
    zs = sol.y[0::2].T + 1j * sol.y[1::2].T
    energies = hamiltonian.energy_batch(domain, g, zs)
    return Trajectory(
        times=times,
        configs=zs,
        energies=energies,
        termination="collision_halt" if sol.status == 1 else "completed",
    )


# ---------------------------------------------------------------------------
# flow-limit monitor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CauchyDiagnosis:
    violations: tuple
    max_ratio: float
    checked_pairs: int

    @property
    def ok(self) -> bool:
        return len(self.violations) == 0


def flow_limit_monitor(trace: FlowTrace, *, slack: float = 0.2) -> CauchyDiagnosis:
    """Check the flow-displacement estimate along a recorded trace.

    For recorded times ``s < t`` the exact ascending flow satisfies
    ``|z^t - z^s| <= sqrt(t - s) * sqrt(c0 - H(z^s))`` with ``c0`` the
    energy supremum; violations beyond the slack indicate integration
    error (e.g. a deliberately coarse step size).

    Pairs whose energy gap ``c0 - H(z^s)`` is at floating-point resolution
    carry no information and are skipped.  The default slack absorbs the
    discretisation deficit of accepted Euler steps below the ascent
    stability limit; a step size near or beyond ``1/|lambda_min|`` of the
    local Hessian pushes the ratio past it.
    """
    m = len(trace)
    if m < 2:
        return CauchyDiagnosis(violations=(), max_ratio=0.0, checked_pairs=0)
    c0 = float(np.max(trace.energies))
    gap_floor = 64.0 * np.finfo(float).eps * (1.0 + abs(c0))
    idx = np.arange(m)
    if m > 400:
        idx = np.unique(np.linspace(0, m - 1, 400).astype(int))
    violations = []
    max_ratio = 0.0
    checked = 0
    for a in range(len(idx)):
        i = idx[a]
        zi = trace.configs[i]
        gap = c0 - trace.energies[i]
        if gap <= gap_floor:
            continue
        for b in range(a + 1, len(idx)):
            j = idx[b]
            lhs = float(np.sqrt(np.sum(np.abs(trace.configs[j] - zi) ** 2)))
            rhs = math.sqrt(max(trace.times[j] - trace.times[i], 0.0)) * math.sqrt(gap)
            checked += 1
            if rhs > 0.0:
                max_ratio = max(max_ratio, lhs / rhs)
            if lhs > rhs * (1.0 + slack) + 1e-12:
                violations.append((int(i), int(j), lhs, rhs))
    return CauchyDiagnosis(
        violations=tuple(violations), max_ratio=max_ratio, checked_pairs=checked
    )


# ---------------------------------------------------------------------------
# seed sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    index: int
    seed_config: Configuration
    termination: str
    report: CriticalPointReport | None = None

    @property
    def converged(self) -> bool:
        return self.report is not None


def sweep(domain, gamma, seeds, params: FlowParams, *, threads: int = 1) -> list:
    """Run ``find_critical_point`` from every seed; failures are recorded
    with their termination reason instead of raising.  Results are returned
    in seed order regardless of the worker count."""
    seeds = list(seeds)
    if params.energy_cap is None and seeds:
        g = hamiltonian.VorticityVector(gamma)
        zb = np.asarray([s.points for s in seeds])
        cap = float(np.max(hamiltonian.energy_batch(domain, g, zb))) + 10.0
        params = FlowParams(
            dt_init=params.dt_init,
            dt_min=params.dt_min,
            dt_max=params.dt_max,
            grad_tol=params.grad_tol,
            max_time=params.max_time,
            collision_delta=params.collision_delta,
            energy_cap=cap,
        )

    def run_one(item):
        i, seed = item
        try:
            report = find_critical_point(domain, gamma, seed, params)
            return SweepResult(index=i, seed_config=seed, termination="converged",
                               report=report)
        except FlowTerminatedError as exc:
            return SweepResult(index=i, seed_config=seed, termination=exc.termination)
        except ConvergenceError:
            return SweepResult(index=i, seed_config=seed, termination="refinement_failed")

    items = list(enumerate(seeds))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, items))
    else:
        results = [run_one(it) for it in items]
    return results
