"""Figure rendering for CLI reports.

Every function draws one figure to a file and returns the path. The Agg
backend is forced so rendering works on headless machines.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _finish(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def loss_curve(losses, path: str, title: str = "Training loss") -> str:
    """Per-epoch loss line for one training run."""
    losses = list(losses)
    if not losses:
        raise ValueError("no losses to plot")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(range(1, len(losses) + 1), losses, marker=".", linewidth=1.2)
    ax.set_xlabel("epoch")
    ax.set_ylabel("loss")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return _finish(fig, path)


def feature_score_bar(table, path: str, top: int = 20) -> str:
    """Horizontal bars for the top ANOVA F-scores, best at the top."""
    rows = list(table.rows)[:top]
    if not rows:
        raise ValueError("no feature scores to plot")
    names = [name for name, _ in rows]
    values = [f for _, f in rows]
    fig, ax = plt.subplots(figsize=(7, 0.32 * len(rows) + 1.4))
    pos = np.arange(len(rows))
    ax.barh(pos, values, color="#3b6ea5")
    ax.set_yticks(pos)
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("F-value")
    ax.set_title("Feature relevance (ANOVA F)")
    return _finish(fig, path)


def pca_variance(model, path: str) -> str:
    """Explained-variance ratios with their cumulative sum."""
    ratios = np.asarray(model.ratios, dtype=float)
    if ratios.size == 0:
        raise ValueError("no components to plot")
    pos = np.arange(1, ratios.size + 1)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(pos, ratios, color="#3b6ea5", label="per component")
    ax.plot(pos, np.cumsum(ratios), color="#b5443b", marker=".",
            label="cumulative")
    ax.set_xlabel("component")
    ax.set_ylabel("explained variance ratio")
    ax.set_ylim(0.0, 1.02)
    ax.set_title("Principal component spectrum")
    ax.legend()
    return _finish(fig, path)


def grid_heatmap(result, path: str) -> str:
    """Mean cross-validation score per (gamma, C) cell; failures blank."""
    gammas = []
    c_values = []
    for cell in result.cells:
        if cell.gamma not in gammas:
            gammas.append(cell.gamma)
        if cell.c not in c_values:
            c_values.append(cell.c)
    if not gammas or not c_values:
        raise ValueError("no grid cells to plot")
    grid = np.full((len(gammas), len(c_values)), np.nan)
    for cell in result.cells:
        if cell.mean_score is not None:
            grid[gammas.index(cell.gamma), c_values.index(cell.c)] = (
                cell.mean_score
            )
    fig, ax = plt.subplots(
        figsize=(0.6 * len(c_values) + 2.4, 0.5 * len(gammas) + 2.0)
    )
    image = ax.imshow(grid, aspect="auto", cmap="viridis")
    ax.set_xticks(range(len(c_values)))
    ax.set_xticklabels([f"{c:g}" for c in c_values], rotation=45, fontsize=7)
    ax.set_yticks(range(len(gammas)))
    ax.set_yticklabels([f"{g:g}" for g in gammas], fontsize=7)
    ax.set_xlabel("C")
    ax.set_ylabel("gamma")
    score = "accuracy" if result.task == "classification" else "-MAE"
    ax.set_title(f"Grid search mean {score}")
    fig.colorbar(image, ax=ax, shrink=0.85)
    if result.best is not None:
        ax.scatter(
            [c_values.index(result.best.c)],
            [gammas.index(result.best.gamma)],
            marker="*", s=160, color="#b5443b", edgecolor="white",
        )
    return _finish(fig, path)


def ranking_bar(ranked, primary: str, path: str) -> str:
    """Primary score per candidate, best play at the top."""
    plays = list(ranked)
    if not plays:
        raise ValueError("no ranked plays to plot")
    field = {"progress": "progress", "success": "success_score",
             "yards": "yards"}[primary]
    labels = [f"{rp.rank}. {rp.candidate.label()}" for rp in plays]
    values = [getattr(rp, field) for rp in plays]
    fig, ax = plt.subplots(figsize=(7, 0.3 * len(plays) + 1.4))
    pos = np.arange(len(plays))
    ax.barh(pos, values, color="#3b6ea5")
    ax.set_yticks(pos)
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel(f"model score ({primary})")
    ax.set_title("Ranked play calls (model scores, not outcomes)")
    return _finish(fig, path)
