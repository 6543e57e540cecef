"""Cell-based oracle: exact unit-Courant advection plus explicit plateau accounting.

Right- and left-mover cell values shift by one cell per step (time step equals
cell width), so free transport carries no error and all discretization error
sits in the plateau bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .shock import Phase, Scenario


class DomainTooSmallError(RuntimeError):
    pass


@dataclass
class GridState:
    h: float
    x0: float
    r: np.ndarray
    l: np.ndarray
    t: float
    phi_cut: float
    plateau: tuple[int, int] | None = None  # inclusive cell indices
    v_abs: float = 0.0
    phase: Phase = Phase.FREE

    @property
    def centers(self) -> np.ndarray:
        return self.x0 + (np.arange(self.r.size) + 0.5) * self.h

    def field(self) -> np.ndarray:
        phi = self.r + self.l
        if self.plateau is not None:
            lo, hi = self.plateau
            phi[lo : hi + 1] = self.phi_cut
        return phi

    def total(self) -> float:
        width = 0 if self.plateau is None else self.plateau[1] - self.plateau[0] + 1
        return self.h * float(np.sum(self.r + self.l)) + self.phi_cut * self.h * width

    def edges(self) -> tuple[float, float] | None:
        if self.plateau is None:
            return None
        lo, hi = self.plateau
        return self.x0 + lo * self.h, self.x0 + (hi + 1) * self.h


@dataclass
class GridRun:
    snapshots: list[tuple[float, np.ndarray, np.ndarray]] = field(default_factory=list)
    t_contact: float | None = None
    t_decay: float | None = None
    edges: list[tuple[float, float, float]] = field(default_factory=list)
    totals: list[float] = field(default_factory=list)
    max_excess: float = 0.0


def _absorb(st: GridState, lo: int, hi: int) -> None:
    st.v_abs += st.h * float(np.sum(st.r[lo : hi + 1] + st.l[lo : hi + 1]))
    st.r[lo : hi + 1] = 0.0
    st.l[lo : hi + 1] = 0.0


def _extend(st: GridState) -> None:
    lo, hi = st.plateau
    slack = 1e-12 * st.phi_cut * st.h
    while st.phi_cut * st.h * (hi - lo + 1) < st.v_abs - slack:
        if lo == 0 or hi == st.r.size - 1:
            raise DomainTooSmallError("plateau reached the domain boundary")
        lo, hi = lo - 1, hi + 1
        _absorb(st, lo, lo)
        _absorb(st, hi, hi)
    st.plateau = (lo, hi)


def _seed(st: GridState, level: float) -> None:
    tot = st.r + st.l
    j = int(np.argmax(tot))
    lo = hi = j
    while lo > 0 and tot[lo - 1] >= level:
        lo -= 1
    while hi < tot.size - 1 and tot[hi + 1] >= level:
        hi += 1
    st.v_abs = 0.0
    _absorb(st, lo, hi)
    st.plateau = (lo, hi)
    st.phase = Phase.GROWTH
    _extend(st)


def _maybe_decay(st: GridState) -> bool:
    lo, hi = st.plateau
    half = 0.5 * st.phi_cut
    if st.l[min(hi + 1, st.l.size - 1)] <= half or st.r[max(lo - 1, 0)] <= half:
        st.r[lo : hi + 1] = half
        st.l[lo : hi + 1] = half
        st.plateau = None
        st.v_abs = 0.0
        st.phase = Phase.DECAYED
        return True
    return False


def _advect(st: GridState) -> None:
    if st.r[-1] != 0.0 or st.l[0] != 0.0:
        raise DomainTooSmallError("field support reached the domain boundary")
    st.r[1:] = st.r[:-1].copy()
    st.r[0] = 0.0
    st.l[:-1] = st.l[1:].copy()
    st.l[-1] = 0.0
    st.t += st.h


def start_time(s: Scenario, h: float, t_end: float) -> float:
    """Grid-aligned start time before the movers' supports first touch."""
    t_touch = (s.movers.f_minus.xs[0] - s.movers.f_plus.xs[-1]) / 2.0
    n = math.ceil((t_end - t_touch) / h) + 1
    return t_end - n * h


def initial_state(s: Scenario, h: float, half_width: float, t0: float) -> GridState:
    n = int(round(2.0 * half_width / h))
    fp, fm = s.movers.f_plus, s.movers.f_minus
    if fp.knots and (fp.xs[0] + t0 <= -half_width or fm.xs[-1] - t0 >= half_width):
        raise DomainTooSmallError("initial data extends past the domain")
    st = GridState(h, -half_width, np.zeros(n), np.zeros(n), t0, s.phi_cut)
    xc = st.centers
    st.r = np.array([s.movers.f_plus.evaluate(x - t0) for x in xc])
    st.l = np.array([s.movers.f_minus.evaluate(x + t0) for x in xc])
    if st.r[-1] or st.r[0] or st.l[0] or st.l[-1]:
        raise DomainTooSmallError("initial data touches the domain boundary")
    return st


def simulate(
    s: Scenario,
    h: float,
    half_width: float,
    t_end: float,
    sample_times=(),
    t_start: float | None = None,
) -> GridRun:
    """Step the grid from ``t_start`` to ``t_end``.

    Snapshots are taken at the step nearest each requested sample time; the
    reported time is that of the step.
    """
    if h <= 0.0:
        raise ValueError("cell width must be positive")
    t0 = start_time(s, h, t_end) if t_start is None else t_start
    st = initial_state(s, h, half_width, t0)
    nsteps = int(round((t_end - t0) / h))
    want: dict[int, list[float]] = {}
    for ts in sample_times:
        k = int(round((ts - t0) / h))
        if 0 <= k <= nsteps:
            want.setdefault(k, []).append(ts)
    level = s.phi_cut * (1.0 - 1e-12)
    run = GridRun()

    for k in range(nsteps + 1):
        if k > 0:
            _advect(st)
            if st.phase is Phase.GROWTH:
                _absorb(st, *st.plateau)
                _extend(st)
        if st.phase is Phase.FREE and np.max(st.r + st.l) >= level:
            _seed(st, level)
            run.t_contact = st.t
        if st.phase is Phase.GROWTH:
            run.edges.append((st.t, *st.edges()))
            if _maybe_decay(st):
                run.t_decay = st.t
        tot = st.r + st.l
        run.max_excess = max(run.max_excess, float(np.max(tot)) - s.phi_cut)
        run.totals.append(st.total())
        if k in want:
            run.snapshots.append((st.t, st.centers, st.field()))
    return run
