"""Deterministic sweep execution and CSV emission.

One CSV file per (alpha, method) pair, rows sorted by (a^2, time).
Every numeric cell is written in scientific notation with 12 significant
digits, so output bytes are independent of the worker count: each file
is produced by exactly one task and tasks share no mutable state.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .composer import EvolutionCache, InitialSpec, Method, density_series
from .concurrence import concurrence_series
from .config import ScenarioConfig
from .errors import SolverError
from .model import discretize_bath

CSV_HEADER = (
    "alpha,a_squared,time,concurrence,norm_drift,energy_drift,x_form_valid,status"
)


@dataclass(frozen=True)
class ResultRow:
    alpha: float
    a_squared: float
    time: float
    concurrence: float
    norm_drift: float
    energy_drift: float
    x_form_valid: bool
    status: str = "ok"


def _fmt(x: float) -> str:
    return f"{x:.11e}"


def format_rows(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    _fmt(r.alpha),
                    _fmt(r.a_squared),
                    _fmt(r.time),
                    _fmt(r.concurrence),
                    _fmt(r.norm_drift),
                    _fmt(r.energy_drift),
                    "1" if r.x_form_valid else "0",
                    r.status,
                )
            )
        )
    return "\n".join(lines) + "\n"


def cell_rows(cfg: ScenarioConfig, alpha: float, method: Method) -> list[ResultRow]:
    """All result rows of one (alpha, method) cell of the sweep.

    The single-qubit evolutions are computed once and shared across the
    whole a grid; a solver abort is converted into per-a error rows so
    the rest of the sweep survives.
    """
    params = cfg.model_params(alpha)
    bath = discretize_bath(params)
    times = cfg.times
    cache = EvolutionCache(cfg.frame, method, params, bath, times)
    rows: list[ResultRow] = []
    for a in sorted(cfg.a_values, key=lambda v: v * v):
        spec = InitialSpec(kind=cfg.kind, a=a, frame=cfg.frame)
        try:
            dens = density_series(spec, method, params, bath, times, cache=cache)
            conc = concurrence_series(times, dens.rhos)
        except SolverError as exc:
            rows.append(
                ResultRow(
                    alpha=alpha,
                    a_squared=a * a,
                    time=0.0,
                    concurrence=float("nan"),
                    norm_drift=float("nan"),
                    energy_drift=float("nan"),
                    x_form_valid=False,
                    status=f"error: {type(exc).__name__}",
                )
            )
            continue
        for i, t in enumerate(times):
            rows.append(
                ResultRow(
                    alpha=alpha,
                    a_squared=a * a,
                    time=float(t),
                    concurrence=float(conc.values[i]),
                    norm_drift=float(dens.norm_drift[i]),
                    energy_drift=float(dens.energy_drift[i]),
                    x_form_valid=bool(conc.x_form_valid[i]),
                )
            )
    return rows


def cell_filename(cfg: ScenarioConfig, alpha: float, method: Method) -> str:
    return f"{cfg.prefix}_alpha{alpha:g}_{method.value}.csv"


def _run_cell(args):
    cfg, alpha, method = args
    rows = cell_rows(cfg, alpha, method)
    had_error = any(r.status != "ok" for r in rows)
    return cell_filename(cfg, alpha, method), format_rows(rows), had_error


def run_scenario(
    cfg: ScenarioConfig, output_dir: str = ".", workers: int | None = None
):
    """Run the full sweep and write one CSV per (alpha, method).

    Returns (paths, had_error).  Files are written by the calling process
    in fixed task order, so output is identical for any worker count.
    """
    if workers is None:
        workers = cfg.workers
    tasks = [(cfg, alpha, method) for alpha in cfg.alphas for method in cfg.methods]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, tasks))
    else:
        results = [_run_cell(t) for t in tasks]

    os.makedirs(output_dir, exist_ok=True)
    paths = []
    had_error = False
    for filename, text, cell_error in results:
        path = os.path.join(output_dir, filename)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        paths.append(path)
        had_error = had_error or cell_error
    return paths, had_error
