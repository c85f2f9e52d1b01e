"""Figures for the CLI report paths (written to files, never shown)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

GOLDEN = (5**0.5 - 1) / 2


def _figure(width: float = 6.0):
    fig, ax = plt.subplots(figsize=(width, width * GOLDEN))
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    return fig, ax


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed metadata keeps repeated runs byte-identical
    meta = {"Software": None} if path.suffix == ".png" else {"Creator": None}
    fig.tight_layout()
    fig.savefig(path, metadata=meta)
    plt.close(fig)
    return path


def census_figure(census_dict: dict, path: str | Path, oracle: dict | None = None) -> Path:
    """Per-vertex cycle counts by family; oracle counts overlaid when given."""
    fams = [k for k in census_dict["per_vertex"] if k.startswith("C")]
    values = [census_dict["per_vertex"][k] for k in fams]
    fig, ax = _figure()
    xs = range(len(fams))
    ax.bar(xs, values, color="0.6", label="constructed")
    if oracle:
        ax.plot(xs, [oracle.get(k, 0) for k in fams], "kx", ms=8, label="oracle")
        ax.legend(frameon=False)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(fams)
    ax.set_ylabel("cycles through a vertex")
    ax.set_title(f"BS_{census_dict['n']}: 4- and 6-cycles per vertex")
    return _save(fig, path)


def histogram_figure(hists: dict[str, dict[int, int]], n: int, path: str | Path) -> Path:
    """Side-by-side generator usage of several Gray codes."""
    fig, ax = _figure()
    gens = list(range(1, n))
    width = 0.8 / max(len(hists), 1)
    shades = ["0.25", "0.65", "0.45", "0.85"]
    for r, (name, hist) in enumerate(hists.items()):
        ax.bar(
            [g - 0.4 + width * (r + 0.5) for g in gens],
            [hist.get(g, 0) for g in gens],
            width,
            color=shades[r % len(shades)],
            label=name,
        )
    ax.set_xticks(gens)
    ax.set_xticklabels([f"b{g}" for g in gens])
    ax.set_ylabel("steps")
    ax.set_title(f"Generator usage in Hamiltonian cycles of BS_{n}")
    ax.legend(frameon=False)
    return _save(fig, path)
