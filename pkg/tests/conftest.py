import os
import random

import hypothesis
import pytest
from hypothesis import strategies as st

from cutoff_field import InvalidScenarioError, Profile, Scenario

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=300, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def random_packet(rng: random.Random, peak_range=(0.55, 0.95), seg_range=(3, 9)) -> Profile:
    """Continuous single-peak packet with random knots on [-1, 1]."""
    nseg = rng.randint(*seg_range)
    nup = rng.randint(1, nseg - 1)
    peak = rng.uniform(*peak_range)
    xs = sorted(rng.uniform(-1.0, 1.0) for _ in range(nseg + 1))
    ups = sorted(rng.uniform(0.0, peak) for _ in range(nup - 1))
    downs = sorted((rng.uniform(0.0, peak) for _ in range(nseg - nup - 1)), reverse=True)
    return Profile.from_points(zip(xs, [0.0, *ups, peak, *downs, 0.0]))


def admissible_packets(seed: int, count: int, **kw) -> list[tuple[Profile, Scenario]]:
    """Draw packets until ``count`` of them give a well-posed centred collision."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        f = random_packet(rng, **kw)
        try:
            s = Scenario.from_packet(f)
            s.events
        except InvalidScenarioError:
            continue
        out.append((f, s))
    return out


@st.composite
def packets(draw, peak=st.floats(0.55, 0.95)):
    """Hypothesis strategy mirroring :func:`random_packet`."""
    return random_packet(random.Random(draw(st.integers(0, 2**32 - 1))), (draw(peak),) * 2)


@st.composite
def profiles(draw, max_knots=7):
    """Arbitrary piecewise-linear profiles, jumps allowed."""
    n = draw(st.integers(2, max_knots))
    xs = sorted(set(draw(st.lists(st.floats(-5, 5), min_size=n, max_size=n))))
    hypothesis.assume(len(xs) >= 2 and min(b - a for a, b in zip(xs, xs[1:])) > 1e-3)
    vals = st.floats(-2, 2)
    knots = []
    for i, x in enumerate(xs):
        left = 0.0 if i == 0 else draw(vals)
        right = 0.0 if i == len(xs) - 1 else (left if draw(st.booleans()) else draw(vals))
        knots.append((x, left, right))
    return Profile.from_knots(knots)


@pytest.fixture
def tri():
    return Scenario.from_packet(Profile.triangle(1.0, 0.75))


@pytest.fixture
def trapezoid():
    return Profile.from_points([(-1.0, 0.0), (-0.5, 0.6), (0.5, 0.6), (1.0, 0.0)])


def leaky_snapshot(s: Scenario, push: float = 0.1):
    """Negative control for causality: during growth, the field outside the
    plateau is displaced outward by ``push * x_s``, so it moves faster than light
    whenever the shock advances."""
    from cutoff_field import Phase, evolve
    from cutoff_field.shock import shock_position

    def snap(t):
        st = evolve(s, t)
        p = st.profile()
        if st.phase is not Phase.GROWTH:
            return p
        xs = shock_position(s, t)
        d = push * xs
        return (
            p.restrict(b=-xs).shift(-d)
            + Profile.box(-xs - d, xs + d, s.phi_cut)
            + p.restrict(a=xs).shift(d)
        )

    return snap
