"""Numerical verification of the quantitative boundary and collision
estimates; shared by the verify-lemmas CLI command and the test suite.

Every check returns a :class:`CheckResult` with a JSON-able detail dict.
Asymptotic statements are tested at fixed scales plus a rate check (the
defect must shrink by a stated factor when the boundary distance shrinks),
never at an unspecified absolute rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import greens, hamiltonian
from .errors import VortexError
from .flow import FlowParams, flow_limit_monitor, gradient_flow, m_delta_scan
from .geometry import Configuration, UnitDisk

__all__ = [
    "CheckResult",
    "check_reflection_identity",
    "check_projection_jacobian",
    "check_distance_inequalities",
    "check_boundary_interaction",
    "check_interior_collision_floor",
    "check_boundary_pairing_floor",
    "check_near_collision_gradient_floor",
    "check_line_boundedness",
    "check_flow_displacement",
    "standard_checks",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: dict

    def to_json_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def _collar_points(domain, rng, n: int) -> np.ndarray:
    out = np.empty(0, dtype=complex)
    while out.size < n:
        pts = domain.sample_interior(rng, 4 * n)
        _, dist, _, _ = domain._frames(pts)
        out = np.concatenate([out, pts[dist < domain.collar_eps]])
    return out[:n]


def check_reflection_identity(domain, samples: int = 2000, seed: int = 0) -> CheckResult:
    """|reflect(z) - z| = 2 d(z) and the midpoint lies on the boundary."""
    rng = np.random.default_rng(seed)
    z = _collar_points(domain, rng, samples)
    foot, dist, _, _ = domain._frames(z)
    zbar = 2.0 * foot - z
    len_residual = float(np.max(np.abs(np.abs(zbar - z) - 2.0 * dist)))
    mid = 0.5 * (z + zbar)
    if isinstance(domain, UnitDisk):
        bdry_residual = float(np.max(np.abs(np.abs(mid) - 1.0)))
    elif hasattr(domain, "inner_radius"):
        r = np.abs(mid)
        bdry_residual = float(np.max(np.minimum(np.abs(r - 1.0), np.abs(r - domain.inner_radius))))
    else:
        w = domain.inverse(mid)
        bdry_residual = float(np.max(np.abs(np.abs(w) - 1.0)))
    passed = len_residual < 1e-10 and bdry_residual < 1e-10
    return CheckResult(
        "reflection_identity",
        passed,
        {"samples": samples, "length_residual": len_residual, "boundary_residual": bdry_residual},
    )


def check_projection_jacobian(
    domain, samples: int = 300, seed: int = 0, step: float = 1e-6, rel_tol: float = 1e-5
) -> CheckResult:
    """Finite-difference Jacobian of the nearest-point projection against
    the tangential-stretch closed form ``Dp(z) v = <v, tau> tau / (1 - kappa d)``."""
    rng = np.random.default_rng(seed)
    z = _collar_points(domain, rng, samples)
    worst = 0.0
    for zi in z:
        frame = domain.boundary_frame(zi)
        tau = frame.tangent
        pref = 1.0 / (1.0 - frame.curvature * frame.dist)
        for v in (1.0 + 0.0j, 1.0j, (1.0 + 1.0j) / math.sqrt(2.0)):
            fp, _, _, _ = domain._frames(np.asarray([zi + step * v, zi - step * v]))
            fd = (fp[0] - fp[1]) / (2.0 * step)
            inner = v.real * tau.real + v.imag * tau.imag
            exact = pref * inner * tau
            denom = max(abs(exact), abs(pref))
            worst = max(worst, abs(fd - exact) / denom)
    return CheckResult(
        "projection_jacobian",
        worst < rel_tol,
        {"samples": samples, "max_rel_error": worst, "rel_tol": rel_tol},
    )


def check_distance_inequalities(domain, samples: int = 10_000, seed: int = 0) -> CheckResult:
    """Reflection-distance inequalities on random collar pairs.

    The two constant-free bounds
    ``d(x) + d(y) <= |x - reflect(y)| <= |x - y| + 2 d(y)`` must hold with
    zero violations; the remaining three are reported as fitted constants
    (C6 from below on |x - reflect(y)| / |x - y|, C7 from below on
    |x - reflect(y)|^2 / |p(x) - p(y)|^2, C8 from above on the reflection
    symmetry defect).
    """
    rng = np.random.default_rng(seed)
    x = _collar_points(domain, rng, samples)
    y = _collar_points(domain, rng, samples)
    fx, dx, _, _ = domain._frames(x)
    fy, dy, _, _ = domain._frames(y)
    xbar = 2.0 * fx - x
    ybar = 2.0 * fy - y
    xy = np.abs(x - y)
    x_ybar = np.abs(x - ybar)
    xbar_y = np.abs(xbar - y)
    tol = 1e-12

    lower_viol = int(np.sum(x_ybar < dx + dy - tol))
    upper_viol = int(np.sum(x_ybar > xy + 2.0 * dy + tol))

    feet = np.abs(fx - fy)
    nz = xy > 0
    c6 = float(np.min(x_ybar[nz] / xy[nz]))
    nzf = feet > 1e-12
    c7 = float(np.min((x_ybar[nzf] / feet[nzf]) ** 2)) if np.any(nzf) else math.inf
    num = (x_ybar - xbar_y) ** 2
    den = (dx + dy) * feet ** 2
    c8 = float(np.max(num[nzf] / den[nzf])) if np.any(nzf) else 0.0

    passed = (
        lower_viol == 0
        and upper_viol == 0
        and c6 > 0.0
        and np.isfinite(c6)
        and np.isfinite(c7)
        and c7 > 0.0
        and np.isfinite(c8)
    )
    return CheckResult(
        "distance_inequalities",
        passed,
        {
            "samples": samples,
            "lower_violations": lower_viol,
            "upper_violations": upper_viol,
            "c6_hat": c6,
            "c7_hat": c7,
            "c8_hat": c8,
        },
    )


def _interaction_family(domain, d: float, seed: int = 0, n: int = 24):
    """Collar pairs shrinking homothetically toward boundary points: both
    distances and the tangential offset scale with d."""
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(n):
        t0 = rng.uniform(0.0, _TWO_PI)
        s_x = rng.uniform(0.6, 1.4)
        beta = rng.uniform(-3.0, 3.0)
        x = _offset_from_boundary(domain, t0, d * s_x)
        y = _offset_from_boundary(domain, t0 + beta * d, d)
        pairs.append((x, y))
    return pairs


def _offset_from_boundary(domain, t: float, depth: float) -> complex:
    if isinstance(domain, UnitDisk):
        return (1.0 - depth) * math.e ** 0j * complex(math.cos(t), math.sin(t))
    if hasattr(domain, "inner_radius"):
        return (1.0 - depth) * complex(math.cos(t), math.sin(t))
    c = complex(domain._curve(t))
    c1, _ = domain._curve_derivatives(t)
    nu = 1j * complex(c1) / abs(complex(c1))
    return c + depth * nu


def check_boundary_interaction(
    domain,
    depths=(1e-2, 1e-3, 1e-4),
    seed: int = 0,
    rate_factor: float = 1.5,
    bound: float = 1.1,
    convex_floor: float = -0.1,
) -> CheckResult:
    """Exact boundary interaction against its two-term predictor.

    The defect must shrink by ``rate_factor`` per depth decade; at depth
    <= 1e-2 the exact value must satisfy ``|A| <= bound`` and, on strictly
    convex domains, ``A >= convex_floor``.
    """
    errs = []
    a_min, a_max = math.inf, -math.inf
    for d in depths:
        worst = 0.0
        for x, y in _interaction_family(domain, d, seed=seed):
            exact, pred = hamiltonian.boundary_interaction(domain, x, y)
            worst = max(worst, abs(exact - pred))
            if d <= 1e-2:
                a_min = min(a_min, exact)
                a_max = max(a_max, exact)
        errs.append(worst)
    rate_ok = all(errs[k + 1] <= errs[k] / rate_factor for k in range(len(errs) - 1))
    bound_ok = max(abs(a_min), abs(a_max)) <= bound
    convex_ok = (not getattr(domain, "strictly_convex", False)) or a_min >= convex_floor
    return CheckResult(
        "boundary_interaction",
        rate_ok and bound_ok and convex_ok,
        {
            "depths": list(depths),
            "predictor_errors": errs,
            "a_min": a_min,
            "a_max": a_max,
            "rate_ok": rate_ok,
            "bound_ok": bound_ok,
            "convex_ok": convex_ok,
        },
    )


def check_interior_collision_floor(
    domain, gamma, center: complex, cluster, seed: int = 0, radii=None
) -> CheckResult:
    """Gradient floor while a cluster contracts to an interior point:
    ``|grad H| >= (C_Gamma / 4 pi) (sum_i |z_i - center|^2)^{-1/2}`` must
    hold from some contraction radius downward."""
    g = hamiltonian.VorticityVector(gamma)
    n = g.size
    cluster = sorted(int(i) for i in cluster)
    c_gamma, ok = hamiltonian.collision_weight_constant(g)
    if not ok:
        raise VortexError("gamma is not admissible for the interior-collision floor")
    rng = np.random.default_rng(seed)
    dirs = np.exp(1j * rng.uniform(0.0, _TWO_PI, len(cluster)))
    rest = [j for j in range(n) if j not in cluster]
    rest_pts = domain.sample_interior(rng, max(len(rest), 1), margin=0.2)
    if radii is None:
        radii = 0.02 * 0.5 ** np.arange(9)
    rows = []
    for r in radii:
        z = np.empty(n, dtype=complex)
        for k, j in enumerate(cluster):
            z[j] = center + r * dirs[k] * (1.0 + 0.2 * k)
        for k, j in enumerate(rest):
            z[j] = rest_pts[k]
        grad = hamiltonian.energy_gradient(domain, g, Configuration(z))
        gn = float(np.linalg.norm(grad))
        spread = math.sqrt(sum(abs(z[j] - center) ** 2 for j in cluster))
        floor = c_gamma / (4.0 * math.pi) / spread
        rows.append({"radius": float(r), "grad_norm": gn, "floor": floor, "ok": gn >= floor})
    # the bound must hold from some radius down to the smallest sampled
    tail_ok = [row["ok"] for row in rows]
    k_hat = next((k for k in range(len(rows)) if all(tail_ok[k:])), None)
    return CheckResult(
        "interior_collision_floor",
        k_hat is not None,
        {
            "c_gamma": c_gamma,
            "delta_hat": rows[k_hat]["radius"] if k_hat is not None else None,
            "rows": rows,
        },
    )


def check_boundary_pairing_floor(
    domain, gamma, cluster, seed: int = 0, depths=(1e-2, 3e-3, 1e-3, 3e-4, 1e-4), tol: float = 0.1
) -> CheckResult:
    """Pairing floor while a cluster is pushed to the boundary: the pairing
    against the squared-distance functional must reach ``eps_C - tol``."""
    g = hamiltonian.VorticityVector(gamma)
    n = g.size
    cluster = sorted(int(i) for i in cluster)
    eps_c = hamiltonian.boundary_weight_constant(
        g, cluster, bool(getattr(domain, "strictly_convex", False))
    )
    rng = np.random.default_rng(seed)
    t0 = rng.uniform(0.0, _TWO_PI)
    rest = [j for j in range(n) if j not in cluster]
    rest_pts = domain.sample_interior(rng, max(len(rest), 1), margin=0.3)
    rows = []
    for d in depths:
        z = np.empty(n, dtype=complex)
        for k, j in enumerate(cluster):
            z[j] = _offset_from_boundary(domain, t0 + 1.7 * k * d, d * (1.0 + 1.2 * k))
        for k, j in enumerate(rest):
            z[j] = rest_pts[k]
        pairing = hamiltonian.boundary_pairing(domain, g, Configuration(z), cluster)
        rows.append({"depth": float(d), "pairing": pairing, "ok": pairing >= eps_c - tol})
    tail_ok = [row["ok"] for row in rows]
    k_hat = next((k for k in range(len(rows)) if all(tail_ok[k:])), None)
    small_ok = k_hat is not None and rows[k_hat]["depth"] >= 1e-3
    return CheckResult(
        "boundary_pairing_floor",
        small_ok,
        {"eps_c": eps_c, "tol": tol, "delta_hat": rows[k_hat]["depth"] if k_hat is not None else None,
         "rows": rows},
    )


def check_near_collision_gradient_floor(
    domain, gamma, delta: float = 0.01, samples: int = 10_000, seed: int = 7
) -> CheckResult:
    """Sampled manifestation of the near-collision gradient bound: the
    minimum gradient norm over the forced near-collision set exceeds 1."""
    res = m_delta_scan(domain, gamma, delta, samples, seed=seed)
    return CheckResult(
        "near_collision_gradient_floor",
        res.min_grad_norm > 1.0,
        {"delta": delta, "samples": samples, "min_grad_norm": res.min_grad_norm},
    )


def _disk_chord(center: complex, angle: float):
    v = complex(math.cos(angle), math.sin(angle))
    b = center.real * v.real + center.imag * v.imag
    c = abs(center) ** 2 - 1.0
    disc = math.sqrt(b * b - c)
    return v, -b - disc, -b + disc


def check_line_boundedness(
    domain,
    gamma,
    samples: int = 100_000,
    sequences: int = 20,
    seed: int = 11,
) -> CheckResult:
    """Energy along slot-ordered line configurations (unit disk).

    The sampled supremum over random chords must be finite, and sequences
    approaching the chart boundary (a collapsing gap or an endpoint
    reaching the boundary) must drive the energy below the sampled grid
    minimum.
    """
    if not isinstance(domain, UnitDisk):
        raise VortexError("line-boundedness check is implemented for the unit disk")
    g = hamiltonian.VorticityVector(gamma)
    n = g.size
    rng = np.random.default_rng(seed)

    # dense chart grid with a mild relative separation floor, so the grid
    # minimum stays within the dive depth reachable at double precision
    centers = domain.sample_interior(rng, samples, margin=0.02)
    angles = rng.uniform(0.0, _TWO_PI, samples)
    v = np.exp(1j * angles)
    b = centers.real * v.real + centers.imag * v.imag
    disc = np.sqrt(b * b - (np.abs(centers) ** 2 - 1.0))
    t_lo, t_hi = -b - disc, -b + disc
    u = np.sort(rng.uniform(1e-3, 1.0 - 1e-3, (samples, n)), axis=1)
    t = t_lo[:, None] + (t_hi - t_lo)[:, None] * u
    z = centers[:, None] + t * v[:, None]
    ok = np.min(np.diff(u, axis=1), axis=1) > 1e-3
    z = z[ok]
    H = hamiltonian.energy_batch(domain, g, z)
    sup_h = float(np.max(H))
    min_h = float(np.min(H))

    # approach the chart boundary along the strongest collapsing gap or by
    # pushing the strongest endpoint, so the dive rate is comparable to
    # the strongest direction present in the grid
    j_gap = int(np.argmax(np.abs(g[:-1] * g[1:])))
    push_last = abs(g[-1]) >= abs(g[0])
    dive_ok = []
    for k in range(sequences):
        c0 = complex(domain.sample_interior(rng, 1, margin=0.2)[0])
        vk, lo, hi = _disk_chord(c0, rng.uniform(0.0, _TWO_PI))
        span = hi - lo
        base = np.sort(rng.uniform(lo + 0.2 * span, hi - 0.2 * span, n))
        mode = "gap" if k % 2 == 0 else "boundary"
        reached = False
        for step in range(14):
            tt = base.copy()
            if mode == "gap":
                tt[j_gap + 1] = tt[j_gap] + (base[j_gap + 1] - base[j_gap]) * 10.0 ** (-step - 1)
                tt = np.sort(tt)
            elif push_last:
                tt[-1] = hi - (hi - base[-1]) * 10.0 ** (-step - 1)
            else:
                tt[0] = lo + (base[0] - lo) * 10.0 ** (-step - 1)
            if np.any(np.diff(tt) <= 0):
                break
            zz = c0 + tt * vk
            val = float(hamiltonian.energy_batch(domain, g, zz[None, :])[0])
            if val < min_h:
                reached = True
                break
        dive_ok.append(reached)
    passed = bool(np.all(np.isfinite(H))) and all(dive_ok)
    return CheckResult(
        "line_boundedness",
        bool(passed),
        {
            "samples": int(z.shape[0]),
            "sup_energy": sup_h,
            "grid_min_energy": min_h,
            "sequences": sequences,
            "sequences_diving": int(sum(dive_ok)),
        },
    )


def check_flow_displacement(domain, gamma, z0, seed: int = 0) -> CheckResult:
    """A converged fine-step flow trace satisfies the displacement
    estimate; the monitor must report no violations."""
    params = FlowParams(dt_init=0.01, dt_max=0.2, grad_tol=1e-6, max_time=300.0)
    trace = gradient_flow(domain, gamma, z0, params)
    diag = flow_limit_monitor(trace)
    return CheckResult(
        "flow_displacement_estimate",
        trace.termination == "converged" and diag.ok,
        {
            "termination": trace.termination,
            "steps": len(trace),
            "max_ratio": diag.max_ratio,
            "violations": len(diag.violations),
        },
    )


def standard_checks(domain, gamma, samples: int = 10_000, seed: int = 0) -> list:
    """The battery run by the verify-lemmas command."""
    from .admissibility import is_delta_admissible, is_l_admissible, is_partial_admissible

    g = hamiltonian.VorticityVector(gamma)
    results = [
        check_reflection_identity(domain, samples=min(samples, 2000), seed=seed),
        check_projection_jacobian(domain, samples=min(samples, 300), seed=seed),
        check_distance_inequalities(domain, samples=samples, seed=seed),
        check_boundary_interaction(domain, seed=seed),
    ]
    delta_ok, _ = is_delta_admissible(g)
    partial_ok, _ = is_partial_admissible(g, bool(getattr(domain, "strictly_convex", False)))
    if delta_ok and g.size >= 2:
        center = complex(domain.sample_interior(np.random.default_rng(seed), 1, margin=0.3)[0])
        results.append(
            check_interior_collision_floor(domain, g, center, list(range(min(2, g.size))), seed=seed)
        )
    if partial_ok and g.size >= 2:
        results.append(
            check_boundary_pairing_floor(domain, g, list(range(min(2, g.size))), seed=seed)
        )
    if delta_ok and partial_ok:
        results.append(
            check_near_collision_gradient_floor(domain, g, samples=samples, seed=seed)
        )
    if isinstance(domain, UnitDisk) and is_l_admissible(g)[0] == "strict":
        results.append(
            check_line_boundedness(domain, g, samples=min(samples * 10, 100_000), seed=seed)
        )
    z0 = domain.sample_interior(np.random.default_rng(seed + 1), g.size, margin=0.25)
    try:
        results.append(check_flow_displacement(domain, g, Configuration(z0), seed=seed))
    except VortexError:
        pass
    return results
