#!/usr/bin/env python3
"""Plot CSV output from the ifsc CLI.

Reads one or more files produced with `--format csv`, figures out what each
one is from the `# command = ...` metadata line, and writes a PNG per file.
Mean/SE column pairs get a +-2 SE band.
"""

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_table(path):
    meta = {}
    header = None
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
            continue
        cells = line.split(",")
        if header is None:
            header = cells
        else:
            rows.append([float(c) for c in cells])
    if header is None:
        raise ValueError(f"{path}: no table found")
    cols = {name: [r[i] for r in rows] for i, name in enumerate(header)}
    return meta, cols


def band(ax, x, col, se, label, color=None):
    (line,) = ax.plot(x, col, marker="o", label=label, color=color)
    if se is not None:
        lo = [m - 2 * s for m, s in zip(col, se)]
        hi = [m + 2 * s for m, s in zip(col, se)]
        ax.fill_between(x, lo, hi, alpha=0.2, color=line.get_color())


def plot_rates(meta, cols, ax):
    x = cols["d"]
    ax.set_xscale("log")
    band(ax, x, cols["r_if"], None, "integer-forcing")
    band(ax, x, cols["r_naive"], None, "per-source baseline")
    band(ax, x, cols["r_bt"], None, "joint benchmark")
    ax.set_xlabel("distortion d")
    ax.set_ylabel("rate [bits/sample]")


def plot_ergodic(meta, cols, ax):
    x = cols["d"]
    ax.set_xscale("log")
    band(ax, x, cols["r_if_mean"], cols["r_if_se"], "integer-forcing")
    band(ax, x, cols["r_naive_mean"], cols["r_naive_se"], "per-source baseline")
    band(ax, x, cols["r_bt_mean"], cols["r_bt_se"], "joint benchmark")
    ax.set_xlabel("distortion d")
    ax.set_ylabel("mean rate [bits/sample]")


def plot_relay(meta, cols, ax):
    x = cols["snr_db"]
    band(ax, x, cols["sum_if_mean"], cols["sum_if_se"], "integer-forcing sum rate")
    band(ax, x, cols["sum_naive_mean"], cols["sum_naive_se"], "per-relay baseline")
    band(ax, x, cols["upper_bound_mean"], cols["upper_bound_se"], "upper bound")
    ax.set_xlabel("snr [dB]")
    ax.set_ylabel("sum rate [bits]")


def plot_oneshot(meta, cols, ax):
    k = 1
    while f"mse_{k + 1}" in cols:
        k += 1
    idx = list(range(1, k + 1))
    mse = [cols[f"mse_{i}"][0] for i in idx]
    ax.bar(idx, mse, label="empirical mse")
    ax.axhline(cols["d"][0], color="k", linestyle="--", label="target d")
    ax.set_xlabel("source")
    ax.set_ylabel("mse")
    ax.set_xticks(idx)
    ax.set_title(
        f"rate {cols['rate'][0]:g} bits, {int(cols['trials'][0])} trials, "
        f"{int(cols['overloads'][0])} overloads"
    )


def plot_jscc(meta, cols, ax):
    ax.bar([0, 1], [cols["d_if"][0], cols["d_naive"][0]])
    ax.set_xticks([0, 1], ["integer-forcing", "per-source baseline"])
    ax.set_ylabel("distortion")
    ax.set_title(
        f"p={cols['p'][0]:g}, n={cols['n'][0]:g}, n_nom={cols['n_nom'][0]:g}, "
        f"beta={cols['beta_opt'][0]:.4g}"
    )


PLOTTERS = {
    "rates": plot_rates,
    "ergodic": plot_ergodic,
    "relay": plot_relay,
    "oneshot": plot_oneshot,
    "jscc": plot_jscc,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("files", nargs="+", help="csv files written by the ifsc CLI")
    ap.add_argument("-o", "--outdir", default=".", help="directory for the PNGs")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for f in args.files:
        meta, cols = read_table(f)
        command = meta.get("command", "")
        plotter = PLOTTERS.get(command)
        if plotter is None:
            print(f"{f}: no plot for command '{command}', skipping", file=sys.stderr)
            status = 1
            continue
        fig, ax = plt.subplots(figsize=(6.5, 4.5))
        plotter(meta, cols, ax)
        if ax.get_legend_handles_labels()[0]:
            ax.legend()
        ax.grid(True, alpha=0.3)
        out = outdir / (Path(f).stem + ".png")
        fig.tight_layout()
        fig.savefig(out, dpi=150)
        plt.close(fig)
        print(f"{f} -> {out}")
    return status


if __name__ == "__main__":
    sys.exit(main())
