import random

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from cutoff_field import InvalidScenarioError, MoverPair, Profile, Scenario, dalembert_eval, first_contact
from cutoff_field.analytic import tri_initial
from cutoff_field.free import collision_times

from conftest import random_packet


def tri_movers(amp):
    return MoverPair.mirrored(Profile.triangle(1.0, amp))


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_dalembert_matches_closed_form(x, t):
    m = tri_movers(0.75)
    assert dalembert_eval(m, x, t) == pytest.approx(tri_initial(x - t) + tri_initial(x + t), abs=1e-14)
    assert m.at(t)(x) == pytest.approx(dalembert_eval(m, x, t), abs=1e-14)


def test_mirrored_pair():
    f = Profile.from_points([(-1, 0), (-0.2, 0.7), (0.6, 0)])
    m = MoverPair.mirrored(f)
    assert m.f_minus(0.1) == f(-0.1)
    assert m.integral() == pytest.approx(2 * f.integral())


def test_collision_times_sorted_unique():
    ts = collision_times(tri_movers(0.75))
    assert ts == sorted(set(ts))
    assert -1.0 in ts and 0.0 in ts and 1.0 in ts


def _brute_contact(m, phi=1.0):
    xs = np.linspace(-3, 3, 60001)
    peak = lambda t: max(m.at(t).sample(xs)) - phi  # noqa: E731
    return brentq(peak, -2.0, 0.0, xtol=1e-13)


@pytest.mark.parametrize("amp", [0.55, 0.6, 0.75, 0.9])
def test_contact_time_and_interval(amp):
    ev = first_contact(tri_movers(amp), 1.0)
    t_ref = 1.0 / (2.0 * amp) - 1.0
    assert ev.t_star == pytest.approx(t_ref, abs=1e-12)
    assert ev.interval == pytest.approx((t_ref, -t_ref), abs=1e-12)
    assert ev.half_width == pytest.approx(1.0 - 1.0 / (2.0 * amp), abs=1e-12)
    assert ev.t_star == pytest.approx(_brute_contact(tri_movers(amp)), abs=1e-9)


def test_contact_for_random_packet_matches_brute_force():
    f = Profile.from_points([(-0.9, 0.0), (-0.3, 0.5), (0.1, 0.8), (0.7, 0.2), (1.0, 0.0)])
    m = MoverPair.mirrored(f)
    assert first_contact(m, 1.0).t_star == pytest.approx(_brute_contact(m), abs=1e-9)


def test_no_contact_below_half_cutoff():
    assert first_contact(tri_movers(0.45), 1.0) is None
    assert first_contact(MoverPair(Profile(), Profile()), 1.0) is None


def test_single_mover_at_cutoff_rejected():
    with pytest.raises(InvalidScenarioError):
        first_contact(tri_movers(1.0), 1.0)


def test_disconnected_contact_rejected():
    rng = random.Random(0)
    for _ in range(200):
        f = random_packet(rng)
        try:
            Scenario.from_packet(f).events
        except InvalidScenarioError as exc:
            assert "disconnected" in str(exc) or "centre" in str(exc) or "center" in str(exc)
            return
    pytest.fail("no rejected packet drawn")
