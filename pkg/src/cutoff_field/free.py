"""Free d'Alembert evolution of a right/left mover pair and first cutoff contact."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction

from .profile import Profile, superpose


class InvalidScenarioError(ValueError):
    """Initial data outside the class the engine can evolve."""


@dataclass(frozen=True)
class MoverPair:
    """``phi(x, t) = f_plus(x - t) + f_minus(x + t)``."""

    f_plus: Profile
    f_minus: Profile

    @classmethod
    def mirrored(cls, f: Profile) -> "MoverPair":
        return cls(f, f.reflect())

    def at(self, t: float) -> Profile:
        """Field profile at time ``t`` under free evolution."""
        return superpose(self.f_plus.shift(t), self.f_minus.shift(-t))

    def integral(self) -> float:
        return self.f_plus.integral() + self.f_minus.integral()


@dataclass(frozen=True)
class ContactEvent:
    t_star: float
    interval: tuple[float, float]

    @property
    def half_width(self) -> float:
        return 0.5 * (self.interval[1] - self.interval[0])


def dalembert_eval(m: MoverPair, x: float, t: float, side: str = "right") -> float:
    return m.f_plus.evaluate(x - t, side) + m.f_minus.evaluate(x + t, side)


def collision_times(m: MoverPair) -> list[float]:
    """Times at which a knot of one mover passes a knot of the other."""
    ts = {(b - a) / 2.0 for a in m.f_plus.xs for b in m.f_minus.xs}
    return sorted(ts)


def _segment(p: Profile, u: float):
    """``(x0, v0, x1, v1)`` of the segment of ``p`` containing ``u``; None on the zero tails."""
    i = bisect.bisect_right(p.xs, u)
    if i == 0 or i == len(p.knots):
        return None
    a, b = p.knots[i - 1], p.knots[i]
    return a.x, a.right, b.x, b.left


def _knot_lines(m: MoverPair, t_mid: float):
    """Knot positions and values as affine functions of t on one collision piece.

    Yields ``(pos0, dpos, val0, dval, exact)``: position ``pos0 + dpos * t`` and
    value ``val0 + dval * t``.  Valid on the closed piece around ``t_mid``, using
    right limits at its left end.  ``exact`` carries the raw knot and segment
    data for :func:`_exact_crossing`.
    """
    fp, fm = m.f_plus, m.f_minus
    for own, other, sign in ((fp, fm, 1.0), (fm, fp, -1.0)):
        for k in own.knots:
            arg = k.x + sign * 2.0 * t_mid
            s = sign * 2.0 * other.slope(arg)
            base = other.evaluate(arg) - s * t_mid
            peak = max(k.left, k.right)
            yield k.x, sign, peak + base, s, (k.x, peak, _segment(other, arg), sign)


def _exact_crossing(exact, phi_cut: float) -> float | None:
    """Time the knot value reaches ``phi_cut``, in rational arithmetic.

    The float intercepts of :func:`_knot_lines` carry rounding from the
    evaluation at ``t_mid``; solving from the knot data directly gives the
    correctly rounded time.  Growth is like sqrt(t - t*) right after contact,
    so an ulp in t* would cost ~1e-8 in shock position.
    """
    kx, kval, seg, sign = exact
    if seg is None:
        return None
    x0, v0, x1, v1 = (Fraction(v) for v in seg)
    slope = (v1 - v0) / (x1 - x0)
    if slope == 0:
        return None
    u = x0 + (Fraction(phi_cut) - Fraction(kval) - v0) / slope
    return float((u - Fraction(kx)) / (2 * Fraction(sign)))


def first_contact(m: MoverPair, phi_cut: float, tol_event: float = 1e-12) -> ContactEvent | None:
    """Earliest time the superposed field reaches ``phi_cut`` on its way above it.

    Touching the cutoff without rising past it (two flat ``phi/2`` steps
    overlapping, say) is free evolution and does not count as contact.

    Between consecutive knot-collision times every knot value of the superposed
    profile is affine in t, so the first crossing on each piece is the minimum
    over knots of a linear solve.  Pieces are scanned in time order.
    """
    for name, f in (("f_plus", m.f_plus), ("f_minus", m.f_minus)):
        if f.max_value()[0] >= phi_cut:
            raise InvalidScenarioError(f"{name} alone reaches the cutoff")
    if not m.f_plus.knots or not m.f_minus.knots:
        return None

    bps = collision_times(m)
    for tl, tr in zip(bps, bps[1:]):
        lines = list(_knot_lines(m, 0.5 * (tl + tr)))
        best = None
        for _, _, v0, dv, exact in lines:
            vl = v0 + dv * tl
            if vl > phi_cut + tol_event * phi_cut:
                t = tl
            elif dv > 0.0 and v0 + dv * tr >= phi_cut:
                # a knot resting at phi (dv == 0) only touches the cutoff
                t = min(tr, tl + max(phi_cut - vl, 0.0) / dv)
                te = _exact_crossing(exact, phi_cut) if tl < t < tr else None
                if te is not None:
                    t = min(max(te, tl), tr)
            else:
                continue
            best = t if best is None else min(best, t)
        if best is None:
            continue
        atol = 1e3 * tol_event * phi_cut
        knots = sorted((p0 + dp * best, v0 + dv * best >= phi_cut - atol) for p0, dp, v0, dv, _ in lines)
        hits = [x for x, hit in knots if hit]
        lo, hi = hits[0], hits[-1]
        if any(lo < x < hi and not hit for x, hit in knots):
            raise InvalidScenarioError(
                f"cutoff first reached on a disconnected set within [{lo}, {hi}] at t={best}"
            )
        return ContactEvent(best, (lo, hi))
    return None
