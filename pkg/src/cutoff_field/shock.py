"""Interacting evolution: plateau growth, decay onset, half-step split, final movers.

The right shock is evolved explicitly; the left one is its mirror image.  The
incoming and outgoing mover profiles are frozen at the contact time and
parametrized outward from the contact edge, so time enters only through the
integration limits ``y + tau`` and ``y - tau`` of the volume balance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .free import ContactEvent, InvalidScenarioError, MoverPair, dalembert_eval, first_contact
from .profile import Profile, sup_distance, superpose
from .roots import find_root


class Phase(str, enum.Enum):
    FREE = "free"
    GROWTH = "growth"
    DECAYED = "decayed"


def is_single_peaked(f: Profile) -> bool:
    """Non-decreasing then non-increasing, jumps included."""
    vals = [v for k in f.knots for v in (k.left, k.right)]
    i = 1
    while i < len(vals) and vals[i] >= vals[i - 1]:
        i += 1
    return all(vals[j] <= vals[j - 1] for j in range(i, len(vals)))


@dataclass(frozen=True)
class Scenario:
    phi_cut: float
    movers: MoverPair
    tol_event: float = 1e-12
    tol_root: float = 1e-12
    symmetric: bool = True

    def __post_init__(self):
        if not self.phi_cut > 0.0:
            raise InvalidScenarioError("cutoff must be positive")
        if not self.symmetric:
            raise InvalidScenarioError("only mirror-symmetric scenarios are supported")
        fp, fm = self.movers.f_plus, self.movers.f_minus
        if sup_distance(fm, fp.reflect()) > 1e-12 * self.phi_cut:
            raise InvalidScenarioError("left mover is not the mirror image of the right mover")
        if not is_single_peaked(fp):
            raise InvalidScenarioError("mover is not single-peaked")
        if min((min(k.left, k.right) for k in fp.knots), default=0.0) < 0.0:
            raise InvalidScenarioError("mover takes negative values")
        if fp.max_value()[0] >= self.phi_cut:
            raise InvalidScenarioError("mover amplitude reaches the cutoff")

    @classmethod
    def from_packet(cls, f: Profile, phi_cut: float = 1.0, **kw) -> "Scenario":
        return cls(phi_cut, MoverPair.mirrored(f), **kw)

    @cached_property
    def events(self) -> "CollisionEvents":
        return CollisionEvents.compute(self)


# -- volume balance ---------------------------------------------------------


def volume_balance(g_in: Profile, g_out: Profile, phi_cut: float, y: float, tau: float) -> float:
    """Plateau volume gained minus wave volume swallowed, ``y*phi - (y1 + y2)*phi``."""
    if y < 0.0 or tau < 0.0:
        raise ValueError(f"displacement and elapsed time must be non-negative (y={y}, tau={tau})")
    absorbed = g_in.integral(0.0, y + tau)
    if y > tau:
        absorbed += g_out.integral(0.0, y - tau)
    return y * phi_cut - absorbed


def solve_displacement(
    g_in: Profile, g_out: Profile, phi_cut: float, tau: float, tol: float = 1e-12
) -> float:
    """Shock advance ``y`` after ``tau``, the root of :func:`volume_balance`."""
    if tau <= 0.0:
        return 0.0
    total = g_in.integral(0.0) + g_out.integral(0.0)
    hi = 1.01 * total / phi_cut + tau
    return find_root(lambda y: volume_balance(g_in, g_out, phi_cut, y, tau), 0.0, hi, tol)


def _first_fall(g: Profile, start: float, level: float) -> float:
    """Smallest s >= start at which ``g`` is at or below ``level``."""
    if g.evaluate(start) <= level:
        return start
    for k0, k1 in zip(g.knots, g.knots[1:]):
        if k1.x <= start:
            continue
        a = max(k0.x, start)
        va = k0.right + (k1.left - k0.right) * (a - k0.x) / (k1.x - k0.x)
        if k1.left <= level:
            return a + (va - level) * (k1.x - a) / (va - k1.left)
        if k1.right <= level:
            return k1.x
    return g.knots[-1].x if g.knots else start


def decay_onset(
    g_in: Profile, g_out: Profile, phi_cut: float, tol: float = 1e-12
) -> tuple[float, float]:
    """``(tau_hat, y_hat)`` at which the incoming amplitude at the shock drops to ``phi/2``.

    The amplitude seen by the shock is ``g_in(y(tau) + tau)``, so onset is the
    root of ``y(tau) + tau = s_half`` with ``s_half`` the first point past the
    incoming peak where ``g_in <= phi/2``.  ``y + tau`` is strictly increasing.
    """
    half = 0.5 * phi_cut
    vmax, hull = g_in.max_value()
    if hull is None or vmax <= half:
        return 0.0, 0.0
    s_half = _first_fall(g_in, max(hull[0], 0.0), half)
    if s_half <= 0.0:
        return 0.0, 0.0

    def reach(tau: float) -> float:
        return solve_displacement(g_in, g_out, phi_cut, tau, tol) + tau - s_half

    tau_hat = find_root(reach, 0.0, s_half, tol)
    return tau_hat, solve_displacement(g_in, g_out, phi_cut, tau_hat, tol)


def plateau_decay(half_width: float, t_d: float, phi_cut: float) -> tuple[Profile, Profile]:
    """Split the frozen plateau ``[-X, X]`` at ``t_d`` into two ``phi/2`` steps.

    Steps are returned in mover coordinates (``x - t`` and ``x + t``).
    """
    if half_width <= 0.0:
        return Profile(), Profile()
    right = Profile.box(-half_width - t_d, half_width - t_d, 0.5 * phi_cut)
    return right, right.reflect()


# -- event bookkeeping ------------------------------------------------------


@dataclass(frozen=True)
class CollisionEvents:
    contact: ContactEvent | None
    g_in: Profile = field(default_factory=Profile)
    g_out: Profile = field(default_factory=Profile)
    tau_hat: float = math.nan
    y_hat: float = math.nan

    @classmethod
    def compute(cls, s: Scenario) -> "CollisionEvents":
        contact = first_contact(s.movers, s.phi_cut, s.tol_event)
        if contact is None:
            return cls(None)
        xl, xr = contact.interval
        atol = 1e-9 * max(1.0, abs(xl), abs(xr))
        if abs(xl + xr) > atol or xl > atol:
            raise InvalidScenarioError(
                f"cutoff first reached away from the centre at [{xl}, {xr}]; "
                "two separate plateaus are not supported"
            )
        c = max(0.5 * (xr - xl), 0.0)
        contact = ContactEvent(contact.t_star, (0.0 - c, c))
        ts = contact.t_star
        g_in = s.movers.f_minus.shift(-(c + ts)).restrict(0.0)
        g_out = s.movers.f_plus.shift(-(c - ts)).restrict(0.0)
        tau_hat, y_hat = decay_onset(g_in, g_out, s.phi_cut, s.tol_root)
        return cls(contact, g_in, g_out, tau_hat, y_hat)

    @property
    def t_star(self) -> float:
        return self.contact.t_star if self.contact else math.nan

    @property
    def edge(self) -> float:
        return self.contact.interval[1] if self.contact else math.nan

    @property
    def t_d(self) -> float:
        return self.t_star + self.tau_hat

    @property
    def half_width(self) -> float:
        """Plateau half-width at decay onset."""
        return self.edge + self.y_hat

    @property
    def annihilation(self) -> float:
        return self.t_d + self.half_width

    def to_dict(self) -> dict:
        if self.contact is None:
            return {"contact": None, "t_star": None, "t_d": None, "annihilation": None, "X": None}
        return {
            "contact": {"t_star": self.t_star, "interval": list(self.contact.interval)},
            "t_star": self.t_star,
            "t_d": self.t_d,
            "annihilation": self.annihilation,
            "X": self.half_width,
            "tau_hat": self.tau_hat,
            "y_hat": self.y_hat,
        }


def shock_position(s: Scenario, t: float) -> float:
    """Right shock position at ``t``; NaN when no shock exists."""
    ev = s.events
    if ev.contact is None or t < ev.t_star or t >= ev.annihilation:
        return math.nan
    if t < ev.t_d:
        return ev.edge + solve_displacement(ev.g_in, ev.g_out, s.phi_cut, t - ev.t_star, s.tol_root)
    return ev.half_width - (t - ev.t_d)


# -- field assembly ---------------------------------------------------------


@dataclass(frozen=True)
class FieldState:
    t: float
    phase: Phase
    movers: MoverPair
    phi_cut: float
    plateau: tuple[float, float] | None = None

    def value(self, x: float, side: str = "right") -> float:
        if self.phase is Phase.GROWTH and self.plateau[0] <= x <= self.plateau[1]:
            return self.phi_cut
        return dalembert_eval(self.movers, x, self.t, side)

    def profile(self) -> Profile:
        free = self.movers.at(self.t)
        if self.phase is Phase.GROWTH:
            return free.replace(self.plateau[0], self.plateau[1], self.phi_cut)
        return free

    def integral(self) -> float:
        if self.phase is Phase.GROWTH:
            a, b = self.plateau
            free = self.movers.at(self.t)
            return free.integral(b=a) + self.phi_cut * (b - a) + free.integral(a=b)
        return self.movers.integral()


def final_movers(s: Scenario) -> MoverPair:
    """Outgoing mover pair after the collision.

    Right mover: the incoming tail below the capture threshold, a ``phi/2``
    step over the captured range, and the escaped head beyond it.
    """
    ev = s.events
    if ev.contact is None or ev.half_width <= 0.0:
        return s.movers
    f = s.movers.f_plus
    u_tail = -ev.half_width - ev.t_d
    u_head = ev.half_width - ev.t_d
    step, _ = plateau_decay(ev.half_width, ev.t_d, s.phi_cut)
    fp = superpose(f.restrict(b=u_tail), step, f.restrict(a=u_head))
    return MoverPair(fp, fp.reflect())


def evolve(s: Scenario, t: float) -> FieldState:
    ev = s.events
    if ev.contact is None or t <= ev.t_star:
        return FieldState(t, Phase.FREE, s.movers, s.phi_cut)
    if t < ev.t_d:
        xs = shock_position(s, t)
        return FieldState(t, Phase.GROWTH, s.movers, s.phi_cut, (-xs, xs))
    plateau = None
    if t < ev.annihilation:
        xs = shock_position(s, t)
        plateau = (-xs, xs)
    return FieldState(t, Phase.DECAYED, final_movers(s), s.phi_cut, plateau)


def phase_at(s: Scenario, t: float) -> Phase:
    ev = s.events
    if ev.contact is None or t <= ev.t_star:
        return Phase.FREE
    return Phase.GROWTH if t < ev.t_d else Phase.DECAYED


@dataclass(frozen=True)
class ShockTrajectory:
    contact: ContactEvent | None
    decay_onset: tuple[float, float] | None
    annihilation: float | None
    samples: tuple[tuple[float, float, float], ...]


def shock_trajectory(s: Scenario, sample_times: Iterable[float]) -> ShockTrajectory:
    ev = s.events
    samples = []
    for t in sample_times:
        xs = shock_position(s, t)
        samples.append((t, xs, -xs))
    if ev.contact is None:
        return ShockTrajectory(None, None, None, tuple(samples))
    return ShockTrajectory(ev.contact, (ev.t_d, ev.half_width), ev.annihilation, tuple(samples))
