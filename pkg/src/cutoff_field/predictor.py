"""Direct map from an incoming single-peak packet to its outgoing packet.

The outgoing right mover equals the incoming one outside ``[x1, x2]`` and is
flat at ``phi/2`` inside, where ``x1`` is the first point the packet reaches
``phi/2`` and ``x2 > x1`` balances the area:
``integral_{x1}^{x2} f = (phi/2) (x2 - x1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .free import InvalidScenarioError
from .profile import Profile
from .roots import find_root


@dataclass(frozen=True)
class PredictorResult:
    x1: float | None
    x2: float | None
    f_final: Profile

    @property
    def is_identity(self) -> bool:
        return self.x1 is None

    def to_dict(self) -> dict:
        return {"x1": self.x1, "x2": self.x2, "knots": self.f_final.to_json()}


def area_defect(f: Profile, x1: float, x2: float, phi_cut: float) -> float:
    return f.integral(x1, x2) - 0.5 * phi_cut * (x2 - x1)


def _falling_root(c: float, b: float, q: float, length: float) -> float:
    """Root in ``(0, length]`` of ``c + b d + q d^2`` where it crosses downward."""
    if q == 0.0:
        return -c / b
    disc = math.sqrt(max(b * b - 4.0 * q * c, 0.0))
    r1 = (-b - math.copysign(disc, b)) / (2.0 * q)
    r2 = c / (q * r1) if r1 != 0.0 else -b / q
    cands = [d for d in (r1, r2) if 0.0 < d <= length * (1.0 + 1e-12) and b + 2.0 * q * d <= 0.0]
    return min(cands) if cands else length


def _x2_exact(f: Profile, x1: float, phi_cut: float) -> float:
    """Segment-wise solve of the area balance (one quadratic per segment)."""
    half = 0.5 * phi_cut
    acc = 0.0  # defect accumulated from x1 to the current segment start
    root = None
    for x0, v0, xe, v1 in f.segments():
        if xe <= x1:
            continue
        a = max(x0, x1)
        va = v0 + (v1 - v0) * (a - x0) / (xe - x0)
        s = (v1 - v0) / (xe - x0)
        # defect(a + d) = acc + (va - half) d + s d^2 / 2
        full = acc + (va - half) * (xe - a) + 0.5 * s * (xe - a) ** 2
        if full <= 0.0:
            root = a + _falling_root(acc, va - half, 0.5 * s, xe - a)
            break
        acc = full
    if root is None:
        # remaining defect is paid off by the flat step past the support
        end = f.knots[-1].x
        root = end + acc / half
    return root


def predict_final(f_in: Profile, phi_cut: float = 1.0, method: str = "exact", tol: float = 1e-12) -> PredictorResult:
    """Outgoing packet for a mirror-symmetric collision of ``f_in`` with its reflection.

    ``method`` selects the exact segment-wise solve or a bracketed root search
    on the area defect; both are kept so each can check the other.  Jumps in
    ``f_in`` are accepted, so the map can be applied to its own output.
    """
    peak, _ = f_in.max_value()
    if peak >= phi_cut:
        raise InvalidScenarioError("packet amplitude reaches the cutoff")
    half = 0.5 * phi_cut
    # an already flattened packet sits at phi/2 up to rounding: leave it alone
    if peak <= half + tol * phi_cut:
        return PredictorResult(None, None, f_in)

    x1 = f_in.level_crossing_min(half)
    if method == "exact":
        x2 = _x2_exact(f_in, x1, phi_cut)
    elif method == "root":
        # the defect rises while f > phi/2 and falls afterwards: bracket past the last crossing
        lo = max(x for x in (x1, *f_in.xs) if f_in.evaluate(x) >= half)
        end = f_in.knots[-1].x
        hi = end + f_in.integral(x1) / half + 1.0
        x2 = find_root(lambda x: area_defect(f_in, x1, x, phi_cut), lo, hi, tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    return PredictorResult(x1, x2, f_in.replace(x1, x2, half))
