"""Benchmark harness: seeded instances per size, median timings, slope fit.

Bench instances are well-parenthesized with one pair per eight vertices
and forward-edge density 4/n over a guaranteed backbone, recorded in the
report for reproducibility.  A cell whose first run exceeds the time cap
(env ``PAFP_TIME_CAP_SECONDS``) is marked skipped.
"""

from __future__ import annotations

import json
import os
import platform
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .classify import StructureClass
from .core import Instance
from .dp_solvers import build_dp_tables, solve_by_rules
from .matrix_solver import matrix_build
from .reductions import gen_random

__all__ = ["BenchCell", "BenchReport", "bench_instance", "run_bench", "TIME_CAP_ENV"]

TIME_CAP_ENV = "PAFP_TIME_CAP_SECONDS"

SOLVER_RUNNERS = {
    "cubic": lambda instance: build_dp_tables(instance),
    "matrix": lambda instance: matrix_build(instance),
    "rules": lambda instance: solve_by_rules(instance),
}


WORKLOAD = {
    "class": "well-parenthesized",
    "pairs": "max(3, n // 8)",
    "density": "4 / n",
    "backbone": True,
}


def bench_instance(n: int, seed: int) -> Instance:
    """The canonical bench workload for one size and seed (see WORKLOAD)."""
    pairs = max(3, n // 8)
    return gen_random(
        StructureClass.WELL_PARENTHESIZED,
        n,
        pairs,
        density=4.0 / n,
        seed=seed,
        ensure_path=True,
    )


@dataclass
class BenchCell:
    solver: str
    n: int
    seconds: float | None
    repeats: int
    seeds: list[int]
    skipped: bool = False


@dataclass
class BenchReport:
    solvers: list[str]
    sizes: list[int]
    repeats: int
    seed: int
    machine: str
    cells: list[BenchCell] = field(default_factory=list)
    slopes: dict[str, float | None] = field(default_factory=dict)

    def cell(self, solver: str, n: int) -> BenchCell:
        for c in self.cells:
            if c.solver == solver and c.n == n:
                return c
        raise KeyError((solver, n))

    def to_dict(self) -> dict:
        return {
            "solvers": self.solvers,
            "sizes": self.sizes,
            "repeats": self.repeats,
            "seed": self.seed,
            "machine": self.machine,
            "workload": WORKLOAD,
            "cells": [
                {
                    "solver": c.solver,
                    "n": c.n,
                    "seconds": c.seconds,
                    "repeats": c.repeats,
                    "seeds": c.seeds,
                    "skipped": c.skipped,
                }
                for c in self.cells
            ],
            "slopes": self.slopes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["solver,n,seconds,repeats,skipped"]
        for c in self.cells:
            seconds = "" if c.seconds is None else f"{c.seconds:.6f}"
            lines.append(f"{c.solver},{c.n},{seconds},{c.repeats},{int(c.skipped)}")
        return "\n".join(lines) + "\n"

    def table(self) -> str:
        widths = [8, 8, 12]
        rows = [["solver", "n", "seconds"]]
        for c in self.cells:
            val = "skipped" if c.skipped else f"{c.seconds:.4f}"
            rows.append([c.solver, str(c.n), val])
        for solver, slope in self.slopes.items():
            if slope is not None:
                rows.append([solver, "slope", f"{slope:.3f}"])
        return "\n".join(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)) for row in rows
        )


def _machine_descriptor() -> str:
    return f"{platform.platform()} / python {platform.python_version()} / {os.cpu_count()} cpus"


def run_bench(
    solvers: list[str],
    sizes: list[int],
    repeats: int = 3,
    seed: int = 0,
    time_cap: float | None = None,
) -> BenchReport:
    """Run each solver over the seeded instance set; median per cell."""
    unknown = [s for s in solvers if s not in SOLVER_RUNNERS]
    if unknown:
        raise ValueError(f"unknown solvers: {unknown} (choose from {sorted(SOLVER_RUNNERS)})")
    if time_cap is None:
        time_cap = float(os.environ.get(TIME_CAP_ENV, "inf"))
    report = BenchReport(list(solvers), list(sizes), repeats, seed, _machine_descriptor())
    instances: dict[tuple[int, int], Instance] = {}
    for n in sizes:
        for r in range(repeats):
            instances[(n, r)] = bench_instance(n, seed + 1000 * r)
    for solver in solvers:
        runner = SOLVER_RUNNERS[solver]
        for n in sizes:
            seeds = [seed + 1000 * r for r in range(repeats)]
            times: list[float] = []
            skipped = False
            for r in range(repeats):
                t0 = time.perf_counter()
                runner(instances[(n, r)])
                dt = time.perf_counter() - t0
                times.append(dt)
                if dt > time_cap:
                    skipped = True
                    break
            if skipped:
                report.cells.append(BenchCell(solver, n, None, len(times), seeds, True))
            else:
                report.cells.append(
                    BenchCell(solver, n, statistics.median(times), repeats, seeds)
                )
        usable = [c for c in report.cells if c.solver == solver and not c.skipped]
        if len({c.n for c in usable}) >= 4:
            xs = np.log([c.n for c in usable])
            ys = np.log([max(c.seconds, 1e-9) for c in usable])
            report.slopes[solver] = float(np.polyfit(xs, ys, 1)[0])
        else:
            report.slopes[solver] = None
    return report


def plot_report(report: BenchReport, path: str) -> None:
    """Write a log-log timing plot; needs matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for solver in report.solvers:
        points = [
            (c.n, c.seconds)
            for c in report.cells
            if c.solver == solver and not c.skipped and c.seconds
        ]
        if points:
            xs, ys = zip(*points)
            label = solver
            if report.slopes.get(solver) is not None:
                label += f" (slope {report.slopes[solver]:.2f})"
            ax.loglog(xs, ys, marker="o", label=label)
    ax.set_xlabel("vertices")
    ax.set_ylabel("seconds")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
