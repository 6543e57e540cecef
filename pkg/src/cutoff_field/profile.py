"""Compactly supported piecewise-linear profiles with jump discontinuities.

A profile is a tuple of knots ``(x, left, right)``.  Between consecutive knots
the profile is the straight line from ``right`` of the left knot to ``left`` of
the right knot; outside the first and last knot it is identically zero.  A knot
whose one-sided values differ is a jump.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class Knot(NamedTuple):
    x: float
    left: float
    right: float


class ProfileError(ValueError):
    pass


class UndefinedCentroidError(ProfileError):
    pass


def _slope(a: Knot, b: Knot) -> float:
    return (b.left - a.right) / (b.x - a.x)


def _canonical(knots: Sequence[Knot], eps: float = 0.0) -> tuple[Knot, ...]:
    ks = list(knots)
    if eps > 0.0:
        ks = [Knot(k.x, 0.0 if abs(k.left) <= eps else k.left, 0.0 if abs(k.right) <= eps else k.right) for k in ks]
    for a, b in zip(ks, ks[1:]):
        if not b.x > a.x:
            raise ProfileError(f"knot positions must be strictly increasing ({a.x} !< {b.x})")
    if ks and (ks[0].left != 0.0 or ks[-1].right != 0.0):
        raise ProfileError("profile must vanish outside its first and last knot")

    # Drop continuous knots whose adjacent segments are collinear; the zero
    # line outside the support counts as a segment of slope 0.
    out: list[Knot] = []
    for i, k in enumerate(ks):
        if abs(k.left - k.right) > eps:
            out.append(k)
            continue
        nxt = ks[i + 1] if i + 1 < len(ks) else None
        if not out or nxt is None:
            # end knot: redundant only if the adjacent segment is the zero line
            # (compared by value; a slope can underflow to zero)
            near = nxt.left if nxt is not None else out[-1].right if out else 0.0
            if abs(k.left) > eps or abs(near) > eps:
                out.append(k)
        elif abs(_slope(out[-1], k) - _slope(k, nxt)) > eps:
            out.append(k)
    if len(out) < len(ks):
        return _canonical(out, eps)
    return tuple(out)


@dataclass(frozen=True)
class Profile:
    """Immutable piecewise-linear profile; build with :meth:`from_knots`."""

    knots: tuple[Knot, ...] = ()

    @classmethod
    def from_knots(cls, knots: Iterable[Sequence[float]], eps: float = 0.0) -> "Profile":
        ks = [Knot(float(k[0]), float(k[1]), float(k[2] if len(k) > 2 else k[1])) for k in knots]
        return cls(_canonical(ks, eps))

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "Profile":
        """Continuous profile through ``(x, value)`` points."""
        return cls.from_knots((x, v, v) for x, v in points)

    @classmethod
    def box(cls, a: float, b: float, value: float) -> "Profile":
        if b <= a or value == 0.0:
            return cls()
        return cls.from_knots([(a, 0.0, value), (b, value, 0.0)])

    @classmethod
    def triangle(cls, half_width: float, amplitude: float, center: float = 0.0) -> "Profile":
        return cls.from_points(
            [(center - half_width, 0.0), (center, amplitude), (center + half_width, 0.0)]
        )

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.knots)

    @cached_property
    def xs(self) -> list[float]:
        return [k.x for k in self.knots]

    @property
    def support(self) -> tuple[float, float] | None:
        if not self.knots:
            return None
        return self.knots[0].x, self.knots[-1].x

    def evaluate(self, x: float, side: str = "right") -> float:
        ks = self.knots
        if not ks or x < ks[0].x or x > ks[-1].x:
            return 0.0
        xs = self.xs
        i = bisect.bisect_left(xs, x)
        if i < len(ks) and xs[i] == x:
            return ks[i].left if side == "left" else ks[i].right
        a, b = ks[i - 1], ks[i]
        return a.right + (b.left - a.right) * (x - a.x) / (b.x - a.x)

    __call__ = evaluate

    def slope(self, x: float) -> float:
        """Slope of the segment containing ``x`` (zero outside the support)."""
        ks = self.knots
        if not ks or x <= ks[0].x or x >= ks[-1].x:
            return 0.0
        i = bisect.bisect_right(self.xs, x)
        return _slope(ks[i - 1], ks[i])

    def segments(self):
        """Yield ``(x0, v0, x1, v1)`` for every interior segment."""
        for a, b in zip(self.knots, self.knots[1:]):
            yield a.x, a.right, b.x, b.left

    def integral(self, a: float = -math.inf, b: float = math.inf) -> float:
        if a > b:
            raise ProfileError(f"integration bounds reversed: {a} > {b}")
        total = 0.0
        for x0, v0, x1, v1 in self.segments():
            lo, hi = max(x0, a), min(x1, b)
            if hi <= lo:
                continue
            s = (v1 - v0) / (x1 - x0)
            total += 0.5 * (v0 + s * (lo - x0) + v0 + s * (hi - x0)) * (hi - lo)
        return total

    def moment(self) -> float:
        """First moment, exact for linear segments."""
        total = 0.0
        for x0, v0, x1, v1 in self.segments():
            dx = x1 - x0
            total += dx * (v0 * (2 * x0 + x1) + v1 * (x0 + 2 * x1)) / 6.0
        return total

    def centroid(self) -> float:
        mass = self.integral()
        if mass == 0.0:
            raise UndefinedCentroidError("centroid of a profile with zero integral")
        return self.moment() / mass

    def max_value(self, atol: float = 0.0) -> tuple[float, tuple[float, float] | None]:
        """Global maximum and the hull of where it is attained.

        For the zero profile the attainment interval is reported as ``None``.
        """
        if not self.knots:
            return 0.0, None
        vmax = max(max(k.left, k.right) for k in self.knots)
        if vmax <= 0.0:
            return 0.0, None
        hits = [k.x for k in self.knots if max(k.left, k.right) >= vmax - atol]
        return vmax, (hits[0], hits[-1])

    def level_crossing_min(self, c: float) -> float | None:
        """Smallest x where the profile attains ``c`` (``c > 0``)."""
        for k, (x0, v0, x1, v1) in zip(self.knots, self.segments()):
            lo, hi = min(k.left, k.right), max(k.left, k.right)
            if lo <= c <= hi and k.left != k.right:
                return k.x
            if v0 == c:
                return x0
            if min(v0, v1) <= c <= max(v0, v1):
                return x0 + (c - v0) * (x1 - x0) / (v1 - v0)
        return None

    def value_range(self) -> float:
        return max((abs(v) for k in self.knots for v in (k.left, k.right)), default=0.0)

    # -- transformations ---------------------------------------------------

    def shift(self, d: float) -> "Profile":
        return Profile(tuple(Knot(k.x + d, k.left, k.right) for k in self.knots))

    def reflect(self) -> "Profile":
        return Profile(tuple(Knot(-k.x, k.right, k.left) for k in reversed(self.knots)))

    def scale(self, factor: float) -> "Profile":
        if factor == 0.0:
            return Profile()
        return Profile(tuple(Knot(k.x, factor * k.left, factor * k.right) for k in self.knots))

    def __add__(self, other: "Profile") -> "Profile":
        return superpose(self, other)

    def restrict(self, a: float = -math.inf, b: float = math.inf) -> "Profile":
        """Copy of the profile on ``[a, b]``, zero elsewhere (jumps at the cuts)."""
        if not self.knots or a >= b:
            return Profile()
        lo, hi = self.knots[0].x, self.knots[-1].x
        a, b = max(a, lo), min(b, hi)
        if a >= b:
            return Profile()
        inner = [k for k in self.knots if a < k.x < b]
        ka = Knot(a, 0.0, self.evaluate(a, "right"))
        kb = Knot(b, self.evaluate(b, "left"), 0.0)
        return Profile.from_knots([ka, *inner, kb])

    def replace(self, a: float, b: float, value: float) -> "Profile":
        """The profile with ``[a, b]`` overwritten by the constant ``value``."""
        return superpose(
            self.restrict(-math.inf, a), Profile.box(a, b, value), self.restrict(b, math.inf)
        )

    def sample(self, xs: Iterable[float], side: str = "right") -> list[float]:
        return [self.evaluate(x, side) for x in xs]

    # -- I/O ---------------------------------------------------------------

    def to_json(self) -> list[list[float]]:
        return [[k.x, k.left, k.right] for k in self.knots]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str, eps: float = 0.0) -> "Profile":
        return cls.from_knots(json.loads(text), eps)

    def to_csv(self, xs: Iterable[float]) -> str:
        lines = ["x,phi"]
        lines += [f"{x:.17g},{self.evaluate(x):.17g}" for x in xs]
        return "\n".join(lines) + "\n"


def superpose(*profiles: Profile) -> Profile:
    """Pointwise sum on the merged knot set."""
    xs = sorted({k.x for p in profiles for k in p.knots})
    knots = [
        Knot(x, sum(p.evaluate(x, "left") for p in profiles), sum(p.evaluate(x, "right") for p in profiles))
        for x in xs
    ]
    return Profile.from_knots(knots)


def sup_distance(p: Profile, q: Profile) -> float:
    """Sup-norm of ``p - q`` (one-sided values included at every knot)."""
    xs = sorted({k.x for k in p.knots} | {k.x for k in q.knots})
    return max(
        (abs(p.evaluate(x, s) - q.evaluate(x, s)) for x in xs for s in ("left", "right")),
        default=0.0,
    )


def knot_distance(p: Profile, q: Profile) -> float:
    """Largest knot-wise difference in position or one-sided value.

    Unlike :func:`sup_distance` this stays small when two profiles carry the
    same jump at marginally different positions.  Profiles with different knot
    counts are infinitely far apart.
    """
    if len(p) != len(q):
        return math.inf
    return max(
        (max(abs(a.x - b.x), abs(a.left - b.left), abs(a.right - b.right)) for a, b in zip(p.knots, q.knots)),
        default=0.0,
    )
