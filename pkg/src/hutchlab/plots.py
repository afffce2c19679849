"""Figure rendering for trace output.

The CLI writes attraction traces as bare two-column CSV; whenever it does,
it also renders a matplotlib figure next to the file so the decay is
inspectable without further tooling.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def render_trace_figure(
    steps: Sequence[int],
    distances: Sequence[Fraction],
    png_path: str,
    title: str = "",
) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(list(steps), [float(d) for d in distances], marker="o", markersize=3)
    ax.set_xlabel("iteration")
    ax.set_ylabel("Hausdorff distance to full space")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
