"""Field snapshots of the triangular collision at the four reference times.

Writes one CSV (t, x, phi, phi_exact) and, with --plot and matplotlib
installed, a four-panel PNG next to it.
"""

import argparse
from pathlib import Path

import numpy as np

from cutoff_field import Profile, Scenario, evolve
from cutoff_field.analytic import tri_phi

TIMES = (-5 / 6, -1 / 4, 1 / 4, 4 / 3)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out/snapshots"))
    ap.add_argument("--samples", type=int, default=1201)
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    s = Scenario.from_packet(Profile.triangle(1.0, 0.75))
    xs = np.linspace(-3.0, 3.0, args.samples)
    panels = []
    with (args.out / "snapshots.csv").open("w") as fh:
        fh.write("t,x,phi,phi_exact\n")
        for t in TIMES:
            st = evolve(s, t)
            phi = [st.value(x) for x in xs]
            panels.append((t, phi))
            for x, v in zip(xs, phi):
                fh.write(f"{t:.17g},{x:.17g},{v:.17g},{tri_phi(x, t):.17g}\n")
    print(f"wrote {args.out / 'snapshots.csv'}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(2, 2, figsize=(8, 5), sharex=True, sharey=True)
        for ax, (t, phi) in zip(axes.flat, panels):
            ax.plot(xs, phi, lw=1.2)
            ax.axhline(1.0, ls=":", c="gray")
            ax.set_title(f"t = {t:.4g}")
        fig.tight_layout()
        fig.savefig(args.out / "snapshots.png", dpi=150)
        print(f"wrote {args.out / 'snapshots.png'}")


if __name__ == "__main__":
    main()
