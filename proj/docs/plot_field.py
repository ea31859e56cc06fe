#!/usr/bin/env python3
"""Render a wavecorr field file, optionally overlaying trajectory CSVs.

    python3 docs/plot_field.py out/psi2.field out/classical.csv out/bohmian_0.csv
"""
import csv
import sys

import matplotlib.pyplot as plt
import numpy as np


def read_field(path):
    with open(path) as f:
        lines = [f.readline().rstrip("\n") for _ in range(6)]
        assert lines[0] == "format=wavecorr-field-v1", "not a wavecorr field file"
        umin, umax = (float(tok.split("=")[1]) for tok in lines[1].split())
        nu = int(lines[2].split("=")[1])
        vmin, vmax = (float(tok.split("=")[1]) for tok in lines[3].split())
        nv = int(lines[4].split("=")[1])
        kind = lines[5].split("=", 1)[1]
        data = np.loadtxt(f, delimiter=",", ndmin=2)
    assert data.shape == (nv, nu)
    return (umin, umax, vmin, vmax), data, kind


def read_trajectory(path):
    with open(path) as f:
        rows = [r for r in csv.DictReader(f) if not r["t"].startswith("summary")]
    return np.array([float(r["u"]) for r in rows]), np.array([float(r["v"]) for r in rows])


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    extent, data, kind = read_field(sys.argv[1])
    fig, ax = plt.subplots(figsize=(6, 5.5))
    im = ax.imshow(data, origin="lower", cmap="viridis",
                   extent=(extent[0], extent[1], extent[2], extent[3]), aspect="equal")
    fig.colorbar(im, ax=ax, label=kind)
    styles = [("w--", "classical"), ("r-", "bohmian")]
    for path, (style, label) in zip(sys.argv[2:], styles + [("c-", "extra")] * 8):
        u, v = read_trajectory(path)
        ax.plot(u, v, style, lw=1.2, label=label)
    ax.set_xlabel("u")
    ax.set_ylabel("v")
    if len(sys.argv) > 2:
        ax.legend(loc="upper right")
    out = "field.png"
    fig.tight_layout()
    fig.savefig(out, dpi=160)
    print("wrote", out)


if __name__ == "__main__":
    main()
