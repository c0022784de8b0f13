"""Admissibility predicates on the vorticity vector, with witnesses.

Indices in witnesses and permutations are 0-based.  "Near-zero" pair sums
are flagged as violations of the open condition (relative tolerance 1e-12)
so the downstream collision-weight constant stays bounded away from zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .geometry import invert_permutation
from .hamiltonian import VorticityVector

__all__ = [
    "AdmissibilityReport",
    "is_delta_admissible",
    "is_partial_admissible",
    "is_l_admissible",
    "admissibility_report",
]

MAX_SUBSET_N = 20

_REL_TOL = 1e-12


@dataclass(frozen=True)
class AdmissibilityReport:
    delta_ok: bool
    delta_witness: tuple | None
    partial_ok: bool
    partial_variant: str
    partial_witness: tuple | None
    l_ok: str
    sigma: tuple | None
    theorem: str

    def to_json_dict(self) -> dict:
        return {
            "delta_ok": self.delta_ok,
            "delta_witness": list(self.delta_witness) if self.delta_witness else None,
            "partial_ok": self.partial_ok,
            "partial_variant": self.partial_variant,
            "partial_witness": list(self.partial_witness) if self.partial_witness else None,
            "l_ok": self.l_ok,
            "sigma": list(self.sigma) if self.sigma is not None else None,
            "theorem": self.theorem,
        }


def _subsets(n: int):
    for mask in range(3, 1 << n):
        idx = tuple(i for i in range(n) if mask >> i & 1)
        if len(idx) >= 2:
            yield idx


def _check_capacity(n: int) -> None:
    if n > MAX_SUBSET_N:
        raise CapacityError(f"subset enumeration is capped at N={MAX_SUBSET_N}, got {n}")


def is_delta_admissible(gamma) -> tuple:
    """True iff no index subset of size >= 2 has vanishing pairwise
    product sum.  Returns ``(verdict, first_violating_subset_or_None)``."""
    g = VorticityVector(gamma)
    _check_capacity(g.size)
    for idx in _subsets(g.size):
        gg = g[list(idx)]
        s = float(np.sum(gg)) ** 2 - float(np.sum(gg ** 2))
        scale = (float(np.sum(np.abs(gg))) ** 2 - float(np.sum(gg ** 2))) or 1.0
        if abs(s) <= _REL_TOL * scale:
            return (False, idx)
    return (True, None)


def is_partial_admissible(gamma, strictly_convex: bool) -> tuple:
    """True iff the self-interaction weight strictly exceeds the collision
    weight on every subset of size >= 2; the strictly convex variant only
    counts opposite-sign pairs.  Returns ``(verdict, witness)``."""
    g = VorticityVector(gamma)
    _check_capacity(g.size)
    for idx in _subsets(g.size):
        gg = g[list(idx)]
        self_sum = float(np.sum(gg ** 2))
        prods = gg[:, None] * gg[None, :]
        np.fill_diagonal(prods, 0.0)
        if strictly_convex:
            cross = float(np.sum(np.abs(prods[prods < 0.0])))
        else:
            cross = float(np.sum(np.abs(prods)))
        if not self_sum > cross:
            return (False, idx)
    return (True, None)


def is_l_admissible(gamma) -> tuple:
    """Decide whether the vorticities can be aligned with alternating signs
    and nondecreasing moduli.

    Returns ``(kind, sigma)`` with ``kind`` in {"none", "weak", "strict"}.
    ``sigma`` is a 0-based permutation (image array) such that the permuted
    vector ``v_i = gamma[sigma^{-1}(i)]`` alternates in sign with
    nondecreasing (strictly increasing when strict) moduli.

    Sorting by modulus makes the feasible slot assignment explicit: within
    a group of tied moduli the entries may be permuted freely, so the group
    only needs to contain as many positive entries as its slots require.
    No permutation search is performed.
    """
    g = VorticityVector(gamma)
    n = g.size
    mod = np.abs(g)
    order = np.argsort(mod, kind="stable")
    # tie groups of equal modulus, in slot order
    groups: list = []
    start = 0
    for i in range(1, n + 1):
        if i == n or mod[order[i]] != mod[order[start]]:
            groups.append(order[start:i])
            start = i
    strict_possible = all(len(gr) == 1 for gr in groups)

    for phase in (1.0, -1.0):
        arrangement = _assign_slots(g, groups, phase)
        if arrangement is None:
            continue
        sigma = invert_permutation(tuple(int(i) for i in arrangement))
        return ("strict" if strict_possible else "weak", sigma)
    return ("none", None)


def _assign_slots(g, groups, phase):
    """Fill slots 0..n-1 (required sign ``phase * (-1)^slot`` with slots
    0-based standing for 1-based positions) group by group; returns the
    original index placed in each slot, or None if infeasible."""
    arrangement = []
    slot = 0
    for gr in groups:
        k = len(gr)
        req_pos = sum(1 for j in range(slot, slot + k) if phase * (-1.0) ** (j + 1) > 0)
        pos = [i for i in gr if g[i] > 0]
        neg = [i for i in gr if g[i] < 0]
        if len(pos) != req_pos:
            return None
        pi, ni = iter(pos), iter(neg)
        for j in range(slot, slot + k):
            arrangement.append(next(pi) if phase * (-1.0) ** (j + 1) > 0 else next(ni))
        slot += k
    return arrangement


def check_l_witness(gamma, sigma) -> str:
    """Re-evaluate an L-admissibility witness: classify the permuted vector
    as strict, weak, or none."""
    g = VorticityVector(gamma)
    inv = invert_permutation(sigma)
    v = g[list(inv)]
    signs = np.sign(v)
    alt = np.all(signs[1:] * signs[:-1] < 0)
    if not alt or np.any(v == 0.0):
        return "none"
    mods = np.abs(v)
    if np.all(np.diff(mods) > 0):
        return "strict"
    if np.all(np.diff(mods) >= 0):
        return "weak"
    return "none"


def admissibility_report(gamma, domain) -> AdmissibilityReport:
    """Combine the three predicates with the domain's topology and
    convexity into the applicable existence statement."""
    strictly_convex = bool(getattr(domain, "strictly_convex", False))
    delta_ok, delta_w = is_delta_admissible(gamma)
    partial_ok, partial_w = is_partial_admissible(gamma, strictly_convex)
    l_kind, sigma = is_l_admissible(gamma)
    if delta_ok and partial_ok:
        if getattr(domain, "multiply_connected", False):
            theorem = "multiply_connected"
        elif l_kind != "none":
            theorem = "general"
        else:
            theorem = "none"
    else:
        theorem = "none"
    return AdmissibilityReport(
        delta_ok=delta_ok,
        delta_witness=delta_w,
        partial_ok=partial_ok,
        partial_variant="strictly_convex" if strictly_convex else "standard",
        partial_witness=partial_w,
        l_ok=l_kind,
        sigma=sigma,
        theorem=theorem,
    )
