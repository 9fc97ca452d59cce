#!/usr/bin/env python3
"""Render simulator CSV artifacts (summary, sweep, histogram) as PNG plots.

Examples:
    tools/plot_results.py summary out/grid_ts/summary.csv -o summary.png
    tools/plot_results.py sweep out/sweep_eg/sweep.csv -o sweep.png
    tools/plot_results.py hist hist.csv -o hist.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def plot_summary(df: pd.DataFrame, out: str) -> None:
    fig, (ax_tpt, ax_std) = plt.subplots(1, 2, figsize=(11, 4))
    labels = [f"{s}-{e}" for s, e in zip(df.interval_start, df.interval_end)]
    x = range(len(df))
    ax_tpt.bar(x, df.mean_tpt_mbps, color="tab:blue")
    ax_tpt.set_xticks(list(x), labels, rotation=30)
    ax_tpt.set_ylabel("mean throughput per WN (Mbps)")
    ax_tpt.set_xlabel("learning interval")
    title = f"{df.policy.iloc[0]} / {df['mode'].iloc[0]} / N={df.n_wns.iloc[0]}"
    ax_tpt.set_title(title)
    ax_std.bar(x, df.temporal_std_mbps, color="tab:red")
    ax_std.set_xticks(list(x), labels, rotation=30)
    ax_std.set_ylabel("temporal std (Mbps)")
    ax_std.set_xlabel("learning interval")
    if df.pf_fraction.notna().any():
        ax_std.set_title(
            f"late-interval PF fraction: {df.pf_fraction.iloc[-1]:.3f}")
    fig.tight_layout()
    fig.savefig(out, dpi=150)


def plot_sweep(df: pd.DataFrame, out: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.errorbar(df.value, df.mean_aggregate_mbps, yerr=df.std_aggregate_mbps,
                marker="o", capsize=3)
    ax.set_xlabel(df.param.iloc[0])
    ax.set_ylabel("aggregate throughput (Mbps)")
    ax.set_title(f"{df.policy.iloc[0]} tuning ({df.reps.iloc[0]} repetitions)")
    fig.tight_layout()
    fig.savefig(out, dpi=150)


def plot_hist(df: pd.DataFrame, out: str) -> None:
    wns = sorted(df.wn_id.unique())
    fig, axes = plt.subplots(1, len(wns), figsize=(3.2 * len(wns), 3.5),
                             squeeze=False)
    for ax, wn in zip(axes[0], wns):
        sub = df[df.wn_id == wn]
        ax.bar(sub.arm, sub.frequency, color="tab:green")
        ax.set_title(f"WN {wn}")
        ax.set_xlabel("arm")
        ax.set_ylabel("frequency")
        ax.set_ylim(0, 1)
    fig.tight_layout()
    fig.savefig(out, dpi=150)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("kind", choices=["summary", "sweep", "hist"])
    parser.add_argument("csv")
    parser.add_argument("-o", "--out", default="plot.png")
    args = parser.parse_args()
    df = pd.read_csv(args.csv)
    {"summary": plot_summary, "sweep": plot_sweep, "hist": plot_hist}[
        args.kind](df, args.out)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
