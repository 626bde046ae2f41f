"""Monte Carlo experiments contrasting average-iterate and last-iterate error.

The default configuration minimizes f(x) = |x| over the real line with the
euclidean geometry (plain SGD), unit-variance noise from the gaussian class
and three symmetrized Weibull classes (theta = 1, 2, 10/3), and reports the
mean and the 99-percentile of the error across runs:

* fixed-horizon: constant step 1/sqrt(T) for each horizon T on a grid,
  recording the final errors of both iterate kinds;
* anytime: step 1/sqrt(t), recording error trajectories on a logarithmic
  checkpoint grid plus the final window densely.

Every run draws from its own counter-based stream keyed by
(base_seed, noise index, cell, run index), so output files are byte-identical
for a given config and base seed no matter how many workers computed them.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .noise import NoiseSpec, stream, unit_variance_scale

AVERAGE = "average"
LAST = "last"

DEFAULT_NOISES = (
    NoiseSpec(kind="gaussian"),
    NoiseSpec(kind="sym-weibull", theta=1.0),
    NoiseSpec(kind="sym-weibull", theta=2.0),
    NoiseSpec(kind="sym-weibull", theta=10.0 / 3.0),
)

CSV_COLUMNS = ("noise_class", "theta_or_p", "T", "iterate_kind", "runs",
               "mean_err", "q", "quantile_err", "base_seed")


def default_t_grid(t_max: int = 3000, points: int = 7) -> tuple[int, ...]:
    """Log-spaced horizons from 100 up to t_max."""
    grid = np.unique(np.round(np.geomspace(100, t_max, points)).astype(int))
    return tuple(int(t) for t in grid)


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str = "fixed-horizon"              # fixed-horizon | anytime
    noises: tuple = DEFAULT_NOISES
    runs: int = 20_000
    t_grid: tuple = ()                       # fixed-horizon; default from t_max
    t_max: int = 3000
    quantile: float = 0.99
    base_seed: int = 20_250_101
    x1: float = 2.0
    fixed_eta_rule: str = "inv-sqrt-T"       # inv-sqrt-T | inv-T
    common_random_numbers: bool = False
    dense_window: int = 1000
    workers: int = 1
    out: str = ""

    def __post_init__(self):
        if self.mode not in ("fixed-horizon", "anytime"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not 0 < self.quantile < 1:
            raise ValueError("quantile must lie in (0, 1)")
        if self.fixed_eta_rule not in ("inv-sqrt-T", "inv-T"):
            raise ValueError(f"unknown fixed-eta rule {self.fixed_eta_rule!r}")
        grid = self.t_grid or default_t_grid(self.t_max)
        if list(grid) != sorted(set(grid)):
            raise ValueError("t_grid must be strictly increasing")
        object.__setattr__(self, "t_grid", tuple(int(t) for t in grid))

    def desk_scale(self) -> "ExperimentConfig":
        """CI-sized preset: 2k runs, horizons up to 1000."""
        return replace(self, runs=2000, t_max=1000,
                       t_grid=default_t_grid(1000))


@dataclass(frozen=True)
class QuantileSummary:
    noise_class: str
    theta_or_p: float
    T: int
    iterate_kind: str
    runs: int
    mean_err: float
    q: float
    quantile_err: float
    base_seed: int


def noise_label(spec: NoiseSpec) -> tuple[str, float]:
    if spec.kind == "gaussian":
        return "gaussian", 0.5          # its sub-Weibull shape
    if spec.kind == "sym-weibull":
        return "sym-weibull", float(spec.theta)
    return "sym-poly", float(spec.p)


# ---------------------------------------------------------------------------
# vectorized 1-D engine (plain SGD on f(x) = |x|)
# ---------------------------------------------------------------------------

def _noise_rows(spec: NoiseSpec, base_seed: int, ids: tuple, run_lo: int,
                run_hi: int, T: int) -> np.ndarray:
    """(run_hi - run_lo, T) noise values, one per-run stream per row."""
    out = np.empty((run_hi - run_lo, T))
    scale = unit_variance_scale(spec)
    for i, r in enumerate(range(run_lo, run_hi)):
        gen = stream(base_seed, *ids, r)
        if scale == 0.0:
            out[i] = 0.0
        elif spec.kind == "gaussian":
            out[i] = gen.normal(0.0, scale, T)
        else:
            if spec.kind == "sym-weibull":
                mags = scale * gen.weibull(1.0 / spec.theta, T)
            else:
                mags = scale * (1.0 + gen.pareto(spec.p + 1.0, T))
            signs = gen.integers(0, 2, size=T).astype(float) * 2.0 - 1.0
            out[i] = mags * signs
    return out


def _run_block_abs1d(noise: np.ndarray, etas: np.ndarray, x1: float,
                     checkpoints: tuple) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """Run a block of |x| SGD paths in lockstep; error snapshots at checkpoints.

    Returns {t: (avg_iterate_error, last_iterate_error)} where the errors at
    checkpoint t belong to xbar_t = mean(x_1..x_t) and x_t.  Subgradient of
    |x| at 0 is 0.
    """
    rows, T = noise.shape
    x = np.full(rows, float(x1))
    s = x.copy()
    want = set(checkpoints)
    out = {}
    for t in range(1, T + 1):
        if t in want:
            out[t] = (np.abs(s / t), np.abs(x))
        g = np.sign(x) - noise[:, t - 1]
        x = x - etas[t - 1] * g
        s = s + x
    if T + 1 in want:                    # not used by default; keep exact
        out[T + 1] = (np.abs(s / (T + 1)), np.abs(x))
    return out


def _cell_task(spec: NoiseSpec, base_seed: int, ids: tuple, run_lo: int,
               run_hi: int, etas: np.ndarray, x1: float,
               checkpoints: tuple) -> tuple[int, dict]:
    noise = _noise_rows(spec, base_seed, ids, run_lo, run_hi, len(etas))
    return run_lo, _run_block_abs1d(noise, etas, x1, checkpoints)


def _gather_cell(cfg: ExperimentConfig, spec: NoiseSpec, noise_idx: int,
                 cell_ids: tuple, etas: np.ndarray, checkpoints: tuple,
                 pool) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """All runs of one cell, assembled by run index (order-independent)."""
    ids = cell_ids if cfg.common_random_numbers else (noise_idx,) + cell_ids
    block = 2048
    tasks = [(lo, min(lo + block, cfg.runs)) for lo in range(0, cfg.runs, block)]
    results = {}
    if pool is None:
        parts = [_cell_task(spec, cfg.base_seed, ids, lo, hi, etas, cfg.x1,
                            checkpoints) for lo, hi in tasks]
    else:
        futs = [pool.submit(_cell_task, spec, cfg.base_seed, ids, lo, hi,
                            etas, cfg.x1, checkpoints) for lo, hi in tasks]
        parts = [f.result() for f in futs]
    for t in checkpoints:
        avg = np.empty(cfg.runs)
        last = np.empty(cfg.runs)
        results[t] = (avg, last)
    for lo, out in sorted(parts):
        for t, (a, l) in out.items():
            results[t][0][lo:lo + len(a)] = a
            results[t][1][lo:lo + len(l)] = l
    return results


# ---------------------------------------------------------------------------
# aggregation and output
# ---------------------------------------------------------------------------

def aggregate(errors, q: float) -> tuple[float, float]:
    """Exact mean and nearest-rank q-quantile (sorted value at index
    ceil(q n), 1-based)."""
    arr = np.asarray(errors, float)
    if arr.size == 0:
        raise ValueError("cannot aggregate an empty error multiset")
    rank = min(max(int(math.ceil(q * arr.size)), 1), arr.size)
    return float(np.mean(arr)), float(np.sort(arr)[rank - 1])


def _summarize(cfg: ExperimentConfig, spec: NoiseSpec, t: int,
               cell: tuple[np.ndarray, np.ndarray]) -> list[QuantileSummary]:
    cls, top = noise_label(spec)
    out = []
    for kind, errs in ((AVERAGE, cell[0]), (LAST, cell[1])):
        mean, quant = aggregate(errs, cfg.quantile)
        out.append(QuantileSummary(noise_class=cls, theta_or_p=top, T=t,
                                   iterate_kind=kind, runs=cfg.runs,
                                   mean_err=mean, q=cfg.quantile,
                                   quantile_err=quant,
                                   base_seed=cfg.base_seed))
    return out


def fixed_horizon_experiment(cfg: ExperimentConfig) -> list[QuantileSummary]:
    """One cell per (noise, T): constant step 1/sqrt(T) (or 1/T under the
    alternate rule), final errors of both iterate kinds."""
    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        summaries = []
        for noise_idx, spec in enumerate(cfg.noises):
            for t_idx, T in enumerate(cfg.t_grid):
                eta = 1.0 / math.sqrt(T) if cfg.fixed_eta_rule == "inv-sqrt-T" \
                    else 1.0 / T
                etas = np.full(T, eta)
                cell = _gather_cell(cfg, spec, noise_idx, (0, T), etas,
                                    (T,), pool)
                summaries.extend(_summarize(cfg, spec, T, cell[T]))
    finally:
        if pool is not None:
            pool.shutdown()
    return summaries


def anytime_checkpoints(t_max: int, dense_window: int = 1000,
                        log_points: int = 60) -> tuple[int, ...]:
    """Logarithmic grid over 1..t_max plus the final window densely."""
    log_grid = np.unique(np.round(np.geomspace(1, t_max, log_points)).astype(int))
    dense = np.arange(max(1, t_max - dense_window + 1), t_max + 1)
    return tuple(int(t) for t in np.union1d(log_grid, dense))


def anytime_experiment(cfg: ExperimentConfig) -> list[QuantileSummary]:
    """One run of length t_max per (noise, run), with eta_t = 1/sqrt(t);
    one summary per (noise, checkpoint, iterate kind)."""
    T = cfg.t_max
    etas = 1.0 / np.sqrt(np.arange(1, T + 1, dtype=float))
    checkpoints = anytime_checkpoints(T, cfg.dense_window)
    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        summaries = []
        for noise_idx, spec in enumerate(cfg.noises):
            cells = _gather_cell(cfg, spec, noise_idx, (1, T), etas,
                                 checkpoints, pool)
            for t in checkpoints:
                summaries.extend(_summarize(cfg, spec, t, cells[t]))
    finally:
        if pool is not None:
            pool.shutdown()
    return summaries


def run_experiment(cfg: ExperimentConfig) -> list[QuantileSummary]:
    return fixed_horizon_experiment(cfg) if cfg.mode == "fixed-horizon" \
        else anytime_experiment(cfg)


def emit_results(summaries: list[QuantileSummary], fmt: str, path: str) -> None:
    """Write summaries as CSV (fixed column order, LF, full float precision)
    or JSON (the same records as objects)."""
    if not summaries:
        raise ValueError("no summaries to emit")
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    try:
        if fmt == "csv":
            lines = [",".join(CSV_COLUMNS)]
            for s in summaries:
                lines.append(",".join((
                    s.noise_class, repr(float(s.theta_or_p)), str(s.T),
                    s.iterate_kind, str(s.runs), repr(float(s.mean_err)),
                    repr(float(s.q)), repr(float(s.quantile_err)),
                    str(s.base_seed))))
            data = "\n".join(lines) + "\n"
        else:
            records = [{c: getattr(s, c) for c in CSV_COLUMNS}
                       for s in summaries]
            data = json.dumps(records, indent=2) + "\n"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
    except OSError as e:
        raise OSError(f"could not write results to {path}: {e}") from e


def load_config(path: str) -> ExperimentConfig:
    """Flat JSON config; every field optional, defaults as in the paper-scale
    setup.  Noise entries are {kind, theta?, p?} objects."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> ExperimentConfig:
    kwargs = dict(raw)
    if "noises" in kwargs:
        specs = []
        for item in kwargs["noises"]:
            specs.append(NoiseSpec(kind=item["kind"],
                                   theta=item.get("theta"),
                                   p=item.get("p"),
                                   target=item.get("target", 1.0)))
        kwargs["noises"] = tuple(specs)
    if "t_grid" in kwargs:
        kwargs["t_grid"] = tuple(int(t) for t in kwargs["t_grid"])
    unknown = set(kwargs) - set(ExperimentConfig.__dataclass_fields__)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return ExperimentConfig(**kwargs)
