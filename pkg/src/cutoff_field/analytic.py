"""Closed-form solution for two colliding triangular packets of amplitude 3Φ/4."""

from __future__ import annotations

import math
from dataclasses import dataclass

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class TriangularParams:
    w: float = 1.0
    phi_cut: float = 1.0

    def __post_init__(self):
        if not (self.w > 0.0 and self.phi_cut > 0.0):
            raise ValueError("w and phi_cut must be positive")

    @property
    def amplitude(self) -> float:
        return 0.75 * self.phi_cut

    @property
    def t_contact(self) -> float:
        return -self.w / 3.0

    @property
    def t_decay(self) -> float:
        return -self.w / (3.0 * SQRT2)

    @property
    def t_annihilation(self) -> float:
        return self.w / 3.0

    @property
    def x2(self) -> float:
        return self.w / 3.0 + SQRT2 * self.w / 3.0


def tri_initial(x: float, w: float = 1.0, phi_cut: float = 1.0) -> float:
    if abs(x) >= w:
        return 0.0
    return 0.75 * phi_cut * (1.0 - abs(x) / w)


def tri_final(x: float, w: float = 1.0, phi_cut: float = 1.0) -> float:
    """Outgoing right-mover profile (left limit at the persistent jump)."""
    x2 = w / 3.0 + SQRT2 * w / 3.0
    if x <= -w or x >= w:
        return 0.0
    if x <= -w / 3.0:
        return 0.75 * phi_cut * (1.0 + x / w)
    if x <= x2:
        return 0.5 * phi_cut
    return 0.75 * phi_cut * (1.0 - x / w)


def tri_centroid(w: float = 1.0) -> float:
    return w / 27.0 + 2.0 * w * SQRT2 / 81.0


def tri_y(tau: float, w: float = 1.0) -> float:
    tau_max = w / 3.0 - w / (3.0 * SQRT2)
    if tau < 0.0 or tau > tau_max * (1.0 + 1e-12):
        raise ValueError(f"tau={tau} outside the growth window [0, {tau_max}]")
    return math.sqrt(max(2.0 * w * tau / 3.0 - tau * tau, 0.0))


def tri_shock(t: float, w: float = 1.0) -> float:
    if t < -w / 3.0 or t >= w / 3.0:
        raise ValueError(f"t={t} outside [-w/3, w/3)")
    if t <= -w / (3.0 * SQRT2):
        # factored to avoid cancellation near contact, where the slope is infinite
        return w / 3.0 + math.sqrt(max((w / 3.0 - t) * (w / 3.0 + t), 0.0))
    return w / 3.0 - t


def tri_phi(x: float, t: float, w: float = 1.0, phi_cut: float = 1.0) -> float:
    """Field at ``(x, t)`` by time regime: free incoming, plateau growth, free outgoing."""
    if t <= -w / 3.0:
        return tri_initial(x - t, w, phi_cut) + tri_initial(x + t, w, phi_cut)
    if t < -w / (3.0 * SQRT2):
        if abs(x) < tri_shock(t, w):
            return phi_cut
        return tri_initial(x - t, w, phi_cut) + tri_initial(x + t, w, phi_cut)
    return tri_final(x - t, w, phi_cut) + tri_final(-(x + t), w, phi_cut)
