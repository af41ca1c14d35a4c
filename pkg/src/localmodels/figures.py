"""Report and poset figures, rendered headlessly to files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_STATUS_COLORS = {"ok": "#2a9d58", "failed": "#d03535", "timeout": "#9a9a9a"}


def render_verify_summary(report: dict, path: str) -> None:
    """One horizontal bar per chart: wall time, colored by outcome, with
    the dimension bookkeeping written next to each bar."""
    charts = report["charts"]
    names = [c["ideal"] for c in charts]
    walls = [max(c.get("wall_ms") or 0, 1) for c in charts]
    colors = [_STATUS_COLORS.get(c["status"], "#9a9a9a") for c in charts]
    height = max(2.2, 0.55 * len(charts) + 1.4)
    fig, ax = plt.subplots(figsize=(8.5, height))
    ypos = range(len(charts))
    ax.barh(ypos, walls, color=colors)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names, fontsize=9)
    ax.invert_yaxis()
    ax.set_xlabel("wall time (ms)")
    ax.set_title(
        f"verification: n={report['n']}, r={report['r']}, field={report['field']}  "
        f"({'all passed' if report['all_passed'] else 'FAILURES'})"
    )
    for y, c in zip(ypos, charts):
        if c["status"] == "timeout":
            note = "timeout"
        else:
            note = (
                f"flat={c['flat']}  dim {c['dim_chart_special']}/"
                f"{c['dim_chart_generic']} (want {c['expected_dim']})  "
                f"{c['radical_cert']}"
            )
        ax.annotate(
            note,
            xy=(max(walls) * 0.01, y),
            va="center",
            ha="left",
            fontsize=8,
            color="black",
        )
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_poset_figure(poset, path: str) -> None:
    """Layered Hasse diagram: height is Bruhat length, edges are
    covering relations."""
    lengths = [l for _, l in poset.nodes]
    by_layer: dict[int, list[int]] = {}
    for i, l in enumerate(lengths):
        by_layer.setdefault(l, []).append(i)
    xs = {}
    for l, members in by_layer.items():
        for pos, i in enumerate(members):
            xs[i] = pos - (len(members) - 1) / 2.0
    width = max(4.0, 1.1 * max(len(v) for v in by_layer.values()))
    height = max(3.0, 1.0 * (max(lengths) + 1))
    fig, ax = plt.subplots(figsize=(width, height))
    for lo, hi in sorted(poset.covers):
        ax.plot(
            [xs[lo], xs[hi]],
            [lengths[lo], lengths[hi]],
            color="#888888",
            linewidth=1.0,
            zorder=1,
        )
    ax.scatter(
        [xs[i] for i in range(len(lengths))],
        lengths,
        s=260,
        c=[
            "#d03535" if i == poset.bottom
            else "#2a6fd0" if i in poset.tops
            else "#f0f0f0"
        for i in range(len(lengths))],
        edgecolors="black",
        zorder=2,
    )
    for i, l in enumerate(lengths):
        ax.annotate(
            str(i),
            xy=(xs[i], l),
            va="center",
            ha="center",
            fontsize=8,
            zorder=3,
        )
    ax.set_yticks(sorted(by_layer))
    ax.set_ylabel("length")
    ax.set_xticks([])
    ax.set_title(f"admissible strata, n={poset.n}, r={poset.r}")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
