"""Residual checks: conservation, cutoff bound, macrocausality, merging."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from .free import MoverPair
from .profile import Profile, sup_distance
from .shock import Scenario, evolve, final_movers

SUPPORT_FLOOR = 1e-12

DEFAULT_TOLERANCES = {
    "conservation_residual": 1e-9,
    "bound_violation": 1e-12,
    "causality_residual": 1e-12,
    "merge_distance": 1e-9,
    "fixed_point_distance": 1e-9,
}


def support(p: Profile, floor: float = SUPPORT_FLOOR) -> tuple[float, float] | None:
    """Smallest interval containing every point where ``|p| > floor``."""
    lo = hi = None
    for x0, v0, x1, v1 in p.segments():
        if abs(v0) <= floor and abs(v1) <= floor:
            continue
        # endpoints of the part of the segment above the floor
        a = x0 if abs(v0) > floor else x0 + (floor - abs(v0)) / abs(v1 - v0) * (x1 - x0)
        b = x1 if abs(v1) > floor else x1 - (floor - abs(v1)) / abs(v1 - v0) * (x1 - x0)
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    return None if lo is None else (lo, hi)


def mover_distance(a: MoverPair, b: MoverPair) -> float:
    return max(sup_distance(a.f_plus, b.f_plus), sup_distance(a.f_minus, b.f_minus))


def check_conservation(s: Scenario, times: Iterable[float]) -> float:
    total0 = s.movers.integral()
    return max((abs(evolve(s, t).integral() - total0) for t in times), default=0.0)


def check_bound(s: Scenario, times: Iterable[float]) -> float:
    """Largest excursion above the cutoff (exact over x: profile maxima sit on knots)."""
    worst = 0.0
    for t in times:
        vmax, _ = evolve(s, t).profile().max_value()
        worst = max(worst, vmax - s.phi_cut)
    return worst


def check_causality(
    s: Scenario | None,
    time_pairs: Iterable[tuple[float, float]],
    snapshot: Callable[[float], Profile] | None = None,
) -> float:
    """Max excess of ``support(t2)`` over ``support(t1)`` dilated by ``|t2 - t1|``."""
    if snapshot is None:
        snapshot = lambda t: evolve(s, t).profile()  # noqa: E731
    worst = 0.0
    for t1, t2 in time_pairs:
        if t2 < t1:
            t1, t2 = t2, t1
        s1, s2 = support(snapshot(t1)), support(snapshot(t2))
        if s2 is None:
            continue
        if s1 is None:
            return math.inf
        dt = t2 - t1
        worst = max(worst, (s1[0] - dt) - s2[0], s2[1] - (s1[1] + dt))
    return worst


@dataclass(frozen=True)
class NonunitarityReport:
    merge_distance: float
    fixed_point_distance: float


def nonunitarity_report(s: Scenario, n_samples: int = 2001) -> NonunitarityReport:
    """Compare the scenario with the one seeded by its own outgoing packets.

    ``merge_distance`` covers both the outgoing movers and the full field at a
    late time, sampled on ``n_samples`` points.
    """
    out = final_movers(s)
    reseeded = Scenario(s.phi_cut, out, s.tol_event, s.tol_root)
    out2 = final_movers(reseeded)
    merge = mover_distance(out, out2)

    ev = s.events
    t_late = 0.0 if ev.contact is None else ev.annihilation
    lo, hi = s.movers.f_plus.support or (0.0, 0.0)
    t_late += 2.0 * (hi - lo) + 1.0
    f1, f2 = evolve(s, t_late), evolve(reseeded, t_late)
    reach = t_late + max(abs(lo), abs(hi)) + 1.0
    for i in range(n_samples):
        x = -reach + 2.0 * reach * i / (n_samples - 1)
        merge = max(merge, abs(f1.value(x) - f2.value(x)))

    fixed = mover_distance(final_movers(Scenario(s.phi_cut, out2, s.tol_event, s.tol_root)), out2)
    return NonunitarityReport(merge, max(fixed, mover_distance(out2, out)))


@dataclass(frozen=True)
class ValidationReport:
    conservation_residual: float
    bound_violation: float
    causality_residual: float
    merge_distance: float
    fixed_point_distance: float

    def passed(self, tolerances: dict | None = None) -> dict[str, bool]:
        tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
        return {k: v <= tol[k] for k, v in asdict(self).items()}

    def ok(self, tolerances: dict | None = None) -> bool:
        return all(self.passed(tolerances).values())

    def to_dict(self, tolerances: dict | None = None) -> dict:
        tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
        return {
            "residuals": asdict(self),
            "tolerances": {k: tol[k] for k in asdict(self)},
            "pass": self.passed(tolerances),
            "ok": self.ok(tolerances),
        }


def validate(s: Scenario, times: Sequence[float]) -> ValidationReport:
    times = sorted(times)
    pairs = [(a, b) for i, a in enumerate(times) for b in times[i + 1 :]]
    nu = nonunitarity_report(s)
    return ValidationReport(
        conservation_residual=check_conservation(s, times),
        bound_violation=max(check_bound(s, times), 0.0),
        causality_residual=max(check_causality(s, pairs), 0.0),
        merge_distance=nu.merge_distance,
        fixed_point_distance=nu.fixed_point_distance,
    )
