"""Stochastic mirror descent runs and their full per-step traces.

`run_smd` executes the textbook loop -- output x_t, receive the noisy
subgradient ghat_t = g_t - xi_t, prox-step to x_{t+1} -- and records
everything a diagnostic could later want: iterates, noises, noisy
subgradients, step sizes, and both error sequences (last iterate and running
average).  Runs are deterministic functions of the seed.

Full traces are kept up to T <= 100_000; beyond that use
`run_smd_streaming`, which keeps only the running average, the last iterate,
and a few scalar accumulators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import MirrorSetup, as_point, mirror_step
from .noise import NoiseSpec, sample_noise, stream
from .problems import OracleProblem

FULL_TRACE_MAX_T = 100_000


@dataclass(frozen=True)
class StepSchedule:
    """Positive, non-increasing learning rates: eta or eta / sqrt(t)."""
    kind: str = "constant"        # constant | inverse-sqrt
    eta: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "inverse-sqrt"):
            raise ValueError(f"unknown schedule {self.kind!r}")
        if not self.eta > 0:
            raise ValueError("eta must be positive")

    def at(self, t: int) -> float:
        return step_size(self, t)

    def etas(self, T: int) -> np.ndarray:
        t = np.arange(1, T + 1, dtype=float)
        return np.full(T, self.eta) if self.kind == "constant" \
            else self.eta / np.sqrt(t)


def step_size(schedule: StepSchedule, t: int) -> float:
    """eta_t for 1-based step t."""
    if t < 1:
        raise ValueError("steps are 1-based")
    if schedule.kind == "constant":
        return schedule.eta
    return schedule.eta / math.sqrt(t)


@dataclass
class RunTrace:
    """Everything recorded along one run; immutable after creation.

    ``xs`` holds the T+1 iterates x_1 .. x_{T+1}; ``xis`` and ``ghats`` hold
    the T noise vectors and noisy subgradients, with ghat_t + xi_t a true
    subgradient of f at x_t.  ``err_last[t-1]`` is f(x_t) - f* and
    ``err_avg[t-1]`` is f(xbar_t) - f* with xbar_t the average of x_1 .. x_t.
    """
    xs: np.ndarray
    xis: np.ndarray
    ghats: np.ndarray
    etas: np.ndarray
    err_last: np.ndarray
    err_avg: np.ndarray
    seed: int
    problem: OracleProblem
    setup: MirrorSetup
    schedule: StepSchedule
    noise: NoiseSpec | None = None

    @property
    def T(self) -> int:
        return len(self.etas)

    def sigma2(self) -> float:
        """Exact conditional second moment of ||xi_t||_* under the run's noise."""
        return 0.0 if self.noise is None else self.noise.target


def run_smd(problem: OracleProblem, setup: MirrorSetup, schedule: StepSchedule,
            noise: NoiseSpec | None, T: int, x1, seed: int = 0) -> RunTrace:
    """Run T steps of stochastic mirror descent and return the full trace.

    The whole noise block is drawn up front from the run's own stream, so the
    trace is a pure function of (problem, setup, schedule, noise, T, x1, seed).
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    if T > FULL_TRACE_MAX_T:
        raise ValueError(f"full traces are kept only up to T = {FULL_TRACE_MAX_T}; "
                         "use run_smd_streaming")
    x1 = as_point(x1)
    if not setup.in_interior(x1):
        raise ValueError("x1 must lie in the interior of dom(psi)")
    if not setup.contains(x1):
        raise ValueError("x1 must lie in the domain")
    d = x1.size

    if noise is not None and noise.d != d:
        raise ValueError("noise dimension does not match x1")
    gen = stream(seed)
    xis = np.zeros((T, d)) if noise is None else sample_noise(noise, gen, size=T)

    xs = np.empty((T + 1, d))
    ghats = np.empty((T, d))
    etas = schedule.etas(T)
    err_last = np.empty(T + 1)
    err_avg = np.empty(T + 1)

    xs[0] = x1
    running_sum = x1.copy()
    err_last[0] = problem.value(x1) - problem.f_star
    err_avg[0] = err_last[0]
    for t in range(1, T + 1):
        x_t = xs[t - 1]
        g = problem.subgradient(x_t)
        ghat = g - xis[t - 1]
        try:
            x_next = mirror_step(setup, x_t, ghat, etas[t - 1])
        except ValueError as e:
            raise ValueError(f"mirror_step failed at step {t}: {e}") from e
        xs[t] = x_next
        ghats[t - 1] = ghat
        running_sum += x_next
        err_last[t] = problem.value(x_next) - problem.f_star
        err_avg[t] = problem.value(running_sum / (t + 1)) - problem.f_star

    return RunTrace(xs=xs, xis=xis, ghats=ghats, etas=etas,
                    err_last=err_last, err_avg=err_avg, seed=seed,
                    problem=problem, setup=setup, schedule=schedule,
                    noise=noise)


def average_iterate(trace: RunTrace, t: int) -> np.ndarray:
    """xbar_t = (1/t) sum_{s<=t} x_s for 1 <= t <= T + 1."""
    if not 1 <= t <= trace.xs.shape[0]:
        raise ValueError("t out of range")
    return trace.xs[:t].mean(axis=0)


@dataclass
class StreamingRun:
    """Slim record for very long runs: no per-step storage."""
    x_last: np.ndarray
    x_avg: np.ndarray
    err_last: float
    err_avg: float
    sum_eta2_ghat2: float
    max_noise_dual: float
    seed: int
    T: int


def run_smd_streaming(problem: OracleProblem, setup: MirrorSetup,
                      schedule: StepSchedule, noise: NoiseSpec | None,
                      T: int, x1, seed: int = 0,
                      chunk: int = 65_536) -> StreamingRun:
    """Memory-thrifty runner: keeps the running average, the last iterate, and
    diagnostic accumulators; noise is drawn in chunks from the same stream."""
    if T < 1:
        raise ValueError("T must be >= 1")
    x1 = as_point(x1)
    if not (setup.in_interior(x1) and setup.contains(x1)):
        raise ValueError("x1 must lie in the interior of the domain")
    d = x1.size
    gen = stream(seed)

    x = x1.copy()
    s = x1.copy()
    sum_eta2_ghat2 = 0.0
    max_noise = 0.0
    t = 1
    while t <= T:
        n = min(chunk, T - t + 1)
        xi = np.zeros((n, d)) if noise is None else sample_noise(noise, gen, size=n)
        for i in range(n):
            eta_t = schedule.at(t)
            ghat = problem.subgradient(x) - xi[i]
            sum_eta2_ghat2 += eta_t * eta_t * setup.dual(ghat) ** 2
            max_noise = max(max_noise, setup.dual(xi[i]))
            x = mirror_step(setup, x, ghat, eta_t)
            s += x
            t += 1
    x_avg = s / (T + 1)
    return StreamingRun(x_last=x, x_avg=x_avg,
                        err_last=problem.value(x) - problem.f_star,
                        err_avg=problem.value(x_avg) - problem.f_star,
                        sum_eta2_ghat2=sum_eta2_ghat2,
                        max_noise_dual=max_noise, seed=seed, T=T)
