"""Report figures (headless matplotlib)."""

from __future__ import annotations

import io
from pathlib import Path
from typing import Mapping, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .fileio import atomic_write  # noqa: E402
from .interval import Interval  # noqa: E402

_STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}
# keep PNG output reproducible
_META = {"Software": None}


def _save(fig, path) -> Path:
    buf = io.BytesIO()
    fig.savefig(buf, format="png", bbox_inches="tight", metadata=_META)
    plt.close(fig)
    return atomic_write(path, buf.getvalue())


def concordance_figure(by_category: Mapping[str, Tuple[int, int]], path, title: str = "") -> Path:
    """Matched vs unmatched problems per benchmark category."""
    cats = list(by_category)
    matched = [by_category[c][0] for c in cats]
    missed = [by_category[c][1] - by_category[c][0] for c in cats]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5.5, 3))
        ax.bar(cats, matched, color="#4c72b0", label="concordant")
        ax.bar(cats, missed, bottom=matched, color="#dd8452", label="mismatch")
        for i, c in enumerate(cats):
            ax.text(i, by_category[c][1] + 0.2, str(by_category[c][1]), ha="center", va="bottom", fontsize=8)
        ax.set_xlabel("category")
        ax.set_ylabel("problems")
        ax.yaxis.set_major_locator(MaxNLocator(integer=True))
        ax.set_ylim(0, max(t for _, t in by_category.values()) * 1.2 + 1)
        if title:
            ax.set_title(title)
        ax.legend(frameon=False, loc="upper right")
        return _save(fig, path)


def _span(iv: Interval, view: Tuple[float, float]) -> Tuple[float, float]:
    lo = float(iv.lower) if iv.lower is not None else view[0]
    hi = float(iv.upper) if iv.upper is not None else view[1]
    return max(lo, view[0]), min(hi, view[1])


def _view(intervals: Sequence[Interval]) -> Tuple[float, float]:
    pts = [float(v) for iv in intervals if not iv.is_empty() for v in (iv.lower, iv.upper) if v is not None]
    if not pts:
        return (-1.0, 1.0)
    lo, hi = min(pts), max(pts)
    pad = (hi - lo) * 0.25 or max(abs(hi), 1.0) * 0.25
    return lo - pad, hi + pad


def box_figure(
    boxes: Sequence[Tuple[str, Interval, Interval]],
    path,
    xlabel: str = "",
    ylabel: str = "",
    title: str = "",
) -> Path:
    """Draw labelled 2D boxes; unbounded sides are clipped to the view."""
    xs = [b[1] for b in boxes]
    ys = [b[2] for b in boxes]
    xview, yview = _view(xs), _view(ys)
    colors = ("#4c72b0", "#dd8452", "#55a868", "#c44e52")
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 4))
        for i, (label, ix, iy) in enumerate(boxes):
            color = colors[i % len(colors)]
            if ix.is_empty() or iy.is_empty():
                ax.plot([], [], color=color, label=f"{label} (empty)")
                continue
            x0, x1 = _span(ix, xview)
            y0, y1 = _span(iy, yview)
            w, h = max(x1 - x0, 0.0), max(y1 - y0, 0.0)
            if w == 0 or h == 0:
                # points and segments have no area; draw them as marks
                ax.plot([x0, x0 + w], [y0, y0 + h], color=color, lw=2, marker="o", ms=5, label=label)
                continue
            ax.add_patch(Rectangle((x0, y0), w, h, fill=True, alpha=0.25, color=color, lw=0))
            ax.add_patch(Rectangle((x0, y0), w, h, fill=False, color=color, lw=1.5, label=label))
        ax.set_xlim(*xview)
        ax.set_ylim(*yview)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.legend(frameon=False, fontsize=8)
        return _save(fig, path)

