"""Bracketed scalar root finding: bisection safeguarding a secant step."""

from __future__ import annotations

import math
from typing import Callable


class BracketError(RuntimeError):
    """The function does not change sign over the supplied bracket."""


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Root of ``f`` in ``[lo, hi]``; requires ``f(lo)`` and ``f(hi)`` of opposite sign.

    Each iteration tries the secant (regula falsi, Illinois weighting) point and
    falls back to bisection whenever it does not shrink the bracket by at least
    half.  Terminates once the bracket is narrower than ``tol``.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    side = 0
    for _ in range(max_iter):
        width = hi - lo
        if width <= tol:
            break
        x = (lo * fhi - hi * flo) / (fhi - flo)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = f(x)
        if fx == 0.0:
            return x
        if math.copysign(1.0, fx) == math.copysign(1.0, flo):
            lo, flo = x, fx
            if side == -1:
                fhi *= 0.5
            side = -1
        else:
            hi, fhi = x, fx
            if side == 1:
                flo *= 0.5
            side = 1
        if hi - lo > 0.5 * width:
            # secant step stalled; force a bisection
            m = 0.5 * (lo + hi)
            fm = f(m)
            if fm == 0.0:
                return m
            if math.copysign(1.0, fm) == math.copysign(1.0, flo):
                lo, flo = m, fm
            else:
                hi, fhi = m, fm
            side = 0
    return 0.5 * (lo + hi)
