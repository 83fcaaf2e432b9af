"""Figures for verify-paper reports: fusing graphs and a catalog overview."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

PNG_META = {"Software": None}


def _circle(n):
    if n == 1:
        return [(0.0, 0.0)]
    return [(math.cos(math.pi / 2 - 2 * math.pi * k / n),
             math.sin(math.pi / 2 - 2 * math.pi * k / n)) for k in range(n)]


def draw_graph(ax, graph: dict, d: int, title: str):
    """Draw a fusing graph record (as stored in the report) on a circle."""
    pos = dict(zip(range(1, d + 1), _circle(d)))
    for a, b in graph["edges"]:
        (x1, y1), (x2, y2) = pos[a[0]], pos[b[0]]
        ax.plot([x1, x2], [y1, y2], color="0.35", lw=1.5, zorder=1)
    xs, ys = zip(*(pos[i] for i in range(1, d + 1)))
    ax.scatter(xs, ys, s=380, color="white", edgecolor="black", zorder=2)
    for i, (x, y) in pos.items():
        ax.text(x, y, str(i), ha="center", va="center", fontsize=10, zorder=3)
    shape = "path" if graph["isPath"] else ("connected" if graph["connected"] else "disconnected")
    ax.set_title(f"{title}\n{graph['edgeCount']} edges, {shape}", fontsize=9)
    ax.set_xlim(-1.4, 1.4)
    ax.set_ylim(-1.4, 1.4)
    ax.set_aspect("equal")
    ax.axis("off")


def scheme_figure(record: dict, path: Path) -> Path:
    d = record["d"]
    fig, axes = plt.subplots(1, 2, figsize=(6.4, 3.4))
    draw_graph(axes[0], record["graphs"]["relations"], d, "fusing relations")
    draw_graph(axes[1], record["graphs"]["idempotents"], d, "fusing idempotents")
    verdict = record["verdicts"]
    amorphic = verdict["oracle"] if verdict["oracle"] is not None else verdict["canonical"]
    fig.suptitle(f"{record['id']}  (v={record['v']}, d={d}, "
                 f"{'amorphic' if amorphic else 'not amorphic'})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=PNG_META)
    plt.close(fig)
    return path


def overview_figure(report: dict, path: Path) -> Path:
    """Fusing pair count against class count, one marker per scheme."""
    recs = [r for r in report["schemes"] if r["status"] == "ok"]
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    for amorphic, marker, label in ((True, "o", "amorphic"), (False, "x", "not amorphic")):
        pts = [(r["d"], r["pairCounts"]["relations"]) for r in recs
               if bool(r["verdicts"]["canonical"]) == amorphic]
        if pts:
            ax.scatter(*zip(*pts), marker=marker, label=label, s=40)
    ds = sorted({r["d"] for r in recs})
    if ds:
        grid = range(min(ds), max(ds) + 1)
        ax.plot(list(grid), [d * (d - 1) // 2 for d in grid], color="0.6", lw=1,
                label="all pairs")
        ax.plot(list(grid), [(d - 1) * (d - 2) // 2 for d in grid], color="0.6", lw=1,
                ls="--", label="(d-1 choose 2)")
    ax.set_xlabel("classes d")
    ax.set_ylabel("fusing pairs of relations")
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=PNG_META)
    plt.close(fig)
    return path


def render_report(report: dict, directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = [overview_figure(report, directory / "overview.png")]
    for rec in report["schemes"]:
        if rec["status"] == "ok":
            out.append(scheme_figure(rec, directory / f"{rec['id']}.png"))
    return out
