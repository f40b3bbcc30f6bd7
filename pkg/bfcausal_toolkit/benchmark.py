"""
Seeded benchmark grids.

A grid file is JSON::

    {
      "scenarios": [
        {"nodes": 10, "edges": 10, "samples": 1000, "data_type": "continuous",
         "algorithm": "boss", "truncations": [1, 3], "penalties": [1, 2],
         "seeds": [1, 2, 3]}
      ]
    }

Every scenario expands into cells (truncation x penalty for BOSS, truncation x
alpha for PC-Max). Each cell runs once per seed. Three CSV files are written to
the output directory: ``runs.csv`` with one row per run, ``cells.csv`` with
seed-averaged rows and ``best.csv`` with the best cell of every scenario by
F1Adj.
"""

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .errors import ConfigurationError, TimeoutExceededError
from .evaluation.metrics import METRIC_NAMES, UNDEFINED, compare_graphs
from .runner import ALGORITHMS, BOSS, RunConfig, search_table
from .search.deadline import Deadline
from .simulation.scenario import SimulationSpec, simulate

logger = logging.getLogger(__name__)

DEFAULT_PENALTIES = (1, 2, 4, 8, 32, 64)
DEFAULT_TRUNCATIONS = (1, 3, 4, 8)
DEFAULT_ALPHAS = (0.05, 0.01, 0.001)
DEFAULT_SEEDS = tuple(range(1, 11))

RUNS_FILE = "runs.csv"
CELLS_FILE = "cells.csv"
BEST_FILE = "best.csv"

SCORE_COLUMNS = [name for name in METRIC_NAMES if name != "elapsed"]
KEY_COLUMNS = ["scenario", "scale", "algorithm", "label", "data_type", "nodes", "edges",
               "sample_size", "trunc_limit", "penalty", "alpha"]


@dataclass(frozen=True)
class Scenario:
    simulation: SimulationSpec
    algorithm: str = BOSS
    truncations: Tuple[int, ...] = DEFAULT_TRUNCATIONS
    penalties: Tuple[float, ...] = DEFAULT_PENALTIES
    alphas: Tuple[float, ...] = DEFAULT_ALPHAS
    seeds: Tuple[int, ...] = DEFAULT_SEEDS
    max_depth: int = 3
    timeout: Optional[float] = None
    scale: str = "small"
    name: str = ""

    @property
    def label(self) -> str:
        prefix = "BOSS-BF-BIC" if self.algorithm == BOSS else "PC-Max-BF-LRT"
        return f"{prefix} {self.simulation.label}"

    def cells(self) -> List[Tuple[int, Optional[float], Optional[float]]]:
        """(truncation, penalty, alpha) triples in a fixed order."""
        if self.algorithm == BOSS:
            return [(p, c, None) for p, c in product(self.truncations, self.penalties)]
        return [(p, None, a) for p, a in product(self.truncations, self.alphas)]


def load_grid(path) -> List[Scenario]:
    """
    Read a JSON grid file into scenarios.

    Raises:
    -------
    ConfigurationError
        If the file is not a valid grid
    """
    with open(path, "r", encoding="utf-8") as handle:
        try:
            grid = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(grid, dict) or not isinstance(grid.get("scenarios"), list):
        raise ConfigurationError("A grid needs a 'scenarios' list")

    scenarios = []
    for index, entry in enumerate(grid["scenarios"]):
        entry = dict(entry)
        algorithm = entry.pop("algorithm", BOSS)
        if algorithm not in ALGORITHMS:
            raise ConfigurationError(f"Scenario {index + 1}: unknown algorithm {algorithm!r}")
        simulation = SimulationSpec(
            nodes=int(entry.pop("nodes", 10)),
            edges=int(entry.pop("edges", 10)),
            samples=int(entry.pop("samples", 1000)),
            data_type=entry.pop("data_type", "continuous"),
            multinomial_prob=entry.pop("mprob", None),
            model=entry.pop("model", "cpn"),
            noise=entry.pop("noise", "beta"),
            pnl=entry.pop("pnl", None),
        )
        scenario = Scenario(
            simulation=simulation,
            algorithm=algorithm,
            truncations=tuple(entry.pop("truncations", DEFAULT_TRUNCATIONS)),
            penalties=tuple(entry.pop("penalties", DEFAULT_PENALTIES)),
            alphas=tuple(entry.pop("alphas", DEFAULT_ALPHAS)),
            seeds=tuple(entry.pop("seeds", DEFAULT_SEEDS)),
            max_depth=int(entry.pop("max_depth", 3)),
            timeout=entry.pop("timeout", None),
            scale=entry.pop("scale", "small"),
            name=entry.pop("name", f"scenario{index + 1}"),
        )
        if entry:
            raise ConfigurationError(f"Scenario {index + 1}: unknown keys {sorted(entry)}")
        scenarios.append(scenario)
    return scenarios


def _cell_key(scenario: Scenario, truncation, penalty, alpha) -> Dict:
    sim = scenario.simulation
    return {
        "scenario": scenario.name,
        "scale": scenario.scale,
        "algorithm": scenario.algorithm,
        "label": scenario.label,
        "data_type": sim.data_type,
        "nodes": sim.nodes,
        "edges": sim.edges,
        "sample_size": sim.samples,
        "trunc_limit": truncation,
        "penalty": penalty,
        "alpha": alpha,
    }


def run_cell(task) -> List[Dict]:
    """Run one cell over all seeds; returns one row per seed."""
    scenario, truncation, penalty, alpha = task
    rows = []
    for seed in scenario.seeds:
        table, truth = simulate(scenario.simulation, seed)
        cfg = RunConfig(
            algorithm=scenario.algorithm,
            truncation_limit=truncation,
            penalty_discount=penalty,
            alpha=alpha,
            max_depth=scenario.max_depth,
            seed=seed,
            simulation=scenario.simulation,
        )
        row = _cell_key(scenario, truncation, penalty, alpha)
        row["seed"] = seed
        start = time.perf_counter()
        try:
            graph = search_table(table, cfg, deadline=Deadline(scenario.timeout))
        except TimeoutExceededError:
            row.update({name: None for name in SCORE_COLUMNS})
            row.update(elapsed=time.perf_counter() - start, status="timeout")
        else:
            report = compare_graphs(graph, truth, time.perf_counter() - start)
            row.update(report.to_dict())
            row["status"] = "ok"
        rows.append(row)
    return rows


def _average(rows: Sequence[Dict]) -> Dict:
    frame = pd.DataFrame(rows)
    averaged = {key: rows[0][key] for key in KEY_COLUMNS}
    averaged["seeds"] = ";".join(str(row["seed"]) for row in rows)
    averaged["completed"] = int((frame["status"] == "ok").sum())
    for name in SCORE_COLUMNS + ["elapsed"]:
        values = pd.to_numeric(frame[name], errors="coerce")
        averaged[name] = float(values.mean()) if values.notna().any() else None
    return averaged


def select_best(cells: pd.DataFrame) -> pd.DataFrame:
    """
    Best cell per scenario by F1Adj.

    Ties go to the lower penalty (or alpha), then the lower truncation limit.
    """
    best = []
    for _, group in cells.groupby("scenario", sort=False):
        ranked = group.assign(
            _f1=group["f1adj"].fillna(-1.0),
            _param=group["penalty"].fillna(group["alpha"]),
        ).sort_values(["_f1", "_param", "trunc_limit"], ascending=[False, True, True], kind="mergesort")
        best.append(ranked.iloc[0])
    if not best:
        return cells.iloc[0:0]
    frame = pd.DataFrame(best).drop(columns=["_f1", "_param"])
    frame["penalty"] = frame["penalty"].map(lambda v: "*" if pd.isna(v) else v)
    frame["alpha"] = frame["alpha"].map(lambda v: "*" if pd.isna(v) else v)
    return frame.reset_index(drop=True)


def _append(frame: pd.DataFrame, path: str, header: bool):
    frame.to_csv(path, mode="w" if header else "a", header=header, index=False, lineterminator="\n")


def plot_best(best: pd.DataFrame, path: str):
    """AP, AR, AHP and AHR of the best cells against sample size, one line per label."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    metrics = ["ap", "ar", "ahp", "ahr"]
    figure, axes = plt.subplots(1, len(metrics), figsize=(4 * len(metrics), 3.5), sharey=True)
    for axis, metric in zip(axes, metrics):
        for label, group in best.groupby("label"):
            ordered = group.sort_values("sample_size")
            axis.plot(ordered["sample_size"], ordered[metric], marker="o", label=label)
        axis.set_xscale("log")
        axis.set_title(metric.upper())
        axis.set_xlabel("Sample size")
        axis.set_ylim(0, 1.05)
    axes[0].legend(fontsize="small")
    figure.tight_layout()
    figure.savefig(path)
    plt.close(figure)


@dataclass
class BenchmarkReport:
    runs: pd.DataFrame
    cells: pd.DataFrame
    best: pd.DataFrame
    paths: Dict[str, str] = field(default_factory=dict)


def run_benchmark(grid_path, out_dir, workers: int = 1, plot_path: Optional[str] = None) -> BenchmarkReport:
    """
    Run every cell of a grid and write the report files.

    Parameters:
    -----------
    grid_path : str
        JSON grid file
    out_dir : str
        Output directory, created if missing
    workers : int
        Worker processes; cells are written in grid order either way
    plot_path : str, optional
        Write a metric plot of the best cells here

    Returns:
    --------
    BenchmarkReport
    """
    if workers < 1:
        raise ConfigurationError("workers must be at least 1")
    scenarios = load_grid(grid_path)
    tasks = [(scenario, *cell) for scenario in scenarios for cell in scenario.cells()]
    os.makedirs(out_dir, exist_ok=True)
    paths = {name: os.path.join(out_dir, name) for name in (RUNS_FILE, CELLS_FILE, BEST_FILE)}
    logger.info("Benchmark: %d scenarios, %d cells", len(scenarios), len(tasks))

    all_runs, all_cells = [], []
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        results = pool.map(run_cell, tasks) if pool else map(run_cell, tasks)
        for index, rows in enumerate(results):
            averaged = _average(rows)
            _append(pd.DataFrame(rows), paths[RUNS_FILE], header=index == 0)
            _append(pd.DataFrame([averaged]), paths[CELLS_FILE], header=index == 0)
            all_runs.extend(rows)
            all_cells.append(averaged)
            logger.info("Cell %d/%d done: f1adj=%s", index + 1, len(tasks), averaged["f1adj"])
    finally:
        if pool:
            pool.shutdown()

    runs = pd.DataFrame(all_runs)
    cells = pd.DataFrame(all_cells)
    best = select_best(cells) if not cells.empty else cells
    best.to_csv(paths[BEST_FILE], index=False, lineterminator="\n")
    if plot_path:
        plot_best(best, plot_path)
        paths["plot"] = plot_path
    return BenchmarkReport(runs, cells, best, paths)


def default_grid(seeds=DEFAULT_SEEDS) -> Dict:
    """The small-scale continuous grid for BOSS and PC-Max at N = 1000."""
    base = {"nodes": 10, "edges": 10, "samples": 1000, "data_type": "continuous",
            "seeds": list(seeds), "timeout": 180}
    return {
        "scenarios": [
            dict(base, name="boss-10-2", algorithm="boss",
                 truncations=list(DEFAULT_TRUNCATIONS), penalties=list(DEFAULT_PENALTIES)),
            dict(base, name="pcmax-10-2", algorithm="pcmax",
                 truncations=list(DEFAULT_TRUNCATIONS), alphas=list(DEFAULT_ALPHAS)),
        ]
    }


def summarize(best: pd.DataFrame) -> str:
    columns = ["scale", "data_type", "label", "sample_size", "trunc_limit", "penalty", "alpha", "f1adj"]
    present = [c for c in columns if c in best.columns]
    if best.empty:
        return "No completed cells"
    shown = best[present].copy()
    if "f1adj" in shown:
        shown["f1adj"] = shown["f1adj"].map(lambda v: UNDEFINED if v is None or np.isnan(v) else f"{v:.6f}")
    return shown.to_string(index=False)
