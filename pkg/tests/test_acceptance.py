"""End-to-end acceptance checks; each prints one PASS/FAIL line."""

import math
import random

import numpy as np
import pytest

from cutoff_field import Profile, Scenario, evolve, final_movers, predict_final, solve_displacement
from cutoff_field.analytic import SQRT2, tri_centroid, tri_phi, tri_shock, tri_y
from cutoff_field.grid import simulate
from cutoff_field.profile import knot_distance
from cutoff_field.shock import decay_onset, shock_position, shock_trajectory
from cutoff_field.validators import check_causality, nonunitarity_report

from conftest import admissible_packets, leaky_snapshot

SNAP_TIMES = (-5 / 6, -1 / 4, 1 / 4, 4 / 3)
GRID_H = (1 / 100, 1 / 200, 1 / 400)


@pytest.fixture
def report(capsys):
    def emit(n, label, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'} {label}: {detail}")
        return ok

    return emit


def test_c1_closed_form_field(tri, report):
    xs = np.linspace(-3.0, 3.0, 2000)
    worst = max(abs(evolve(tri, t).value(x) - tri_phi(x, t)) for t in SNAP_TIMES for x in xs)
    assert report(1, "engine vs closed-form field", worst <= 1e-9, f"max dev {worst:.3e} (tol 1e-9)")


def test_c2_shock_law(tri, report):
    ev = tri.events
    tau_max = 1 / 3 - 1 / (3 * SQRT2)
    taus = np.linspace(0.0, tau_max, 500)
    dev = max(abs(solve_displacement(ev.g_in, ev.g_out, 1.0, t) - tri_y(t)) for t in taus)
    tau_hat, y_hat = decay_onset(ev.g_in, ev.g_out, 1.0)
    onset = max(abs(tau_hat - tau_max), abs(y_hat - 1 / (3 * SQRT2)))
    ok = dev <= 1e-9 and onset <= 1e-9
    assert report(2, "shock law and decay onset", ok, f"y dev {dev:.3e}, onset dev {onset:.3e} (tol 1e-9)")


def test_c3_trajectory(tri, report):
    t_d = -1 / (3 * SQRT2)
    times = np.concatenate([np.linspace(-1 / 3, 1 / 3, 1000, endpoint=False), [t_d]])
    traj = shock_trajectory(tri, times)
    dev = max(max(abs(xr - tri_shock(t)), abs(xl + tri_shock(t))) for t, xr, xl in traj.samples)
    # both branches meet at t_d; the shock vanishes at 1/3
    ev = tri.events
    growth_end = ev.edge + solve_displacement(ev.g_in, ev.g_out, 1.0, ev.tau_hat)
    cont = abs(growth_end - shock_position(tri, t_d))
    last = shock_position(tri, 1 / 3 - 1e-12)
    gone = math.isnan(shock_position(tri, 1 / 3)) and abs(ev.annihilation - 1 / 3) <= 1e-9
    ok = dev <= 1e-9 and cont <= 1e-9 and last <= 1e-9 and gone
    detail = f"dev {dev:.3e}, continuity {cont:.3e}, x_s(1/3-) {last:.3e}, annihilation {ev.annihilation:.15f}"
    assert report(3, "shock trajectory", ok, detail)


def test_c4_final_state(tri, report):
    x2 = 1 / 3 + SQRT2 / 3
    expected = Profile.from_knots([(-1, 0, 0), (-1 / 3, 0.5, 0.5), (x2, 0.5, 0.75 * (1 - x2)), (1, 0, 0)])
    fp = final_movers(tri).f_plus
    dist = knot_distance(fp, expected)
    cdev = abs(fp.centroid() - (1 / 27 + 2 * SQRT2 / 81))
    ok = dist <= 1e-9 and cdev <= 1e-9 and abs(tri_centroid() - fp.centroid()) <= 1e-9
    assert report(4, "final movers and centroid", ok, f"knot dist {dist:.3e}, centroid dev {cdev:.3e}")


def test_c5_conservation(tri, report):
    times = np.linspace(-1.5, 1.5, 64)
    eng = max(abs(evolve(tri, t).integral() - 1.5) for t in times)
    grid = {h: max(abs(v - 1.5) for v in simulate(tri, h, 3.0, 1.5).totals) for h in GRID_H}
    ok = eng <= 1e-9 and all(d <= 6 * h for h, d in grid.items())
    detail = f"engine {eng:.3e}; grid " + ", ".join(f"h=1/{round(1 / h)}: {d / h:.3f}h" for h, d in grid.items())
    assert report(5, "conservation", ok, detail)


def test_c6_merging(tri, report):
    nu = nonunitarity_report(tri)
    ok = nu.merge_distance <= 1e-9 and nu.fixed_point_distance <= 1e-9
    assert report(6, "merging and fixed point", ok, f"merge {nu.merge_distance:.3e}, fixed {nu.fixed_point_distance:.3e}")


def test_c7_causality(tri, report):
    rng = random.Random(2024)
    t_star = tri.events.t_star
    pairs = [(rng.uniform(t_star - 0.05, t_star), rng.uniform(t_star, t_star + 0.02)) for _ in range(15)]
    pairs += [(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)) for _ in range(35)]
    res = check_causality(tri, pairs)
    neg = check_causality(tri, pairs, snapshot=leaky_snapshot(tri))
    ok = len(pairs) == 50 and res <= 1e-12 and neg > 0.0
    assert report(7, "macrocausality", ok, f"residual {res:.3e} (tol 1e-12), negative control {neg:.3e} (> 0)")


def test_c8_predictor(trapezoid, report):
    worst = max(knot_distance(predict_final(f).f_final, final_movers(s).f_plus) for f, s in admissible_packets(8, 25))
    res = predict_final(trapezoid)
    trap = max(abs(res.x1 + 7 / 12), abs(res.x2 - 121 / 120))
    ok = worst <= 1e-6 and trap <= 1e-9
    assert report(8, "predictor vs engine", ok, f"25 packets knot dist {worst:.3e}; trapezoid dev {trap:.3e}")


def test_c9_grid_convergence(tri, report):
    t_end = 4 / 3
    jumps = [s * (t_end + 1 / 3 + SQRT2 / 3) for s in (-1, 1)]
    errs, decay = [], []
    for h in GRID_H:
        run = simulate(tri, h, 3.0, t_end, sample_times=[t_end])
        _, xc, phi = run.snapshots[0]
        far = np.array([min(abs(x - j) for j in jumps) > 3 * h for x in xc])
        errs.append(float(np.max(np.abs(phi - [tri_phi(x, t_end) for x in xc])[far])))
        decay.append(abs(run.t_decay + 1 / (3 * SQRT2)) / h)
    orders = [math.log2(a / b) if b > 0 else math.inf for a, b in zip(errs, errs[1:])]
    converging = all(b < a for a, b in zip(errs, errs[1:])) and min(orders) >= 0.8
    # unit-Courant transport is exact here; zero error at every h beats any order
    exact = max(errs) <= 1e-12
    ok = (converging or exact) and max(decay) <= 2.0
    detail = (
        "max err " + ", ".join(f"{e:.2e}" for e in errs)
        + f" ({'exact to roundoff' if exact else 'orders ' + ', '.join(f'{o:.2f}' for o in orders)})"
        + ", decay err " + ", ".join(f"{d:.2f}h" for d in decay)
    )
    assert report(9, "grid oracle", ok, detail)
