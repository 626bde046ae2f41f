"""Stochastic mirror descent under heavy-tailed gradient noise.

Library layout:

* ``geometry``      regularizers, domains, Bregman divergence, prox step
* ``problems``      convex test objectives with known minimizers
* ``smd``           the SMD loop, step schedules, full run traces
* ``noise``         gaussian / symmetrized-Weibull / polynomial-tail samplers
                    with certified tail constants
* ``bounds``        every closed-form high-probability bound
* ``diagnostics``   numerical verification of the per-run inequalities
* ``concentration`` Monte Carlo validation of the martingale inequalities
* ``experiments``   average-vs-last-iterate percentile experiments (CSV/JSON)
* ``cli``           the ``mirrortail`` command
"""

from .geometry import MirrorSetup, bregman, mirror_step
from .noise import NoiseSpec, sample_noise, tail_params, unit_variance_scale
from .problems import OracleProblem, make_problem
from .smd import RunTrace, StepSchedule, average_iterate, run_smd, step_size

__all__ = [
    "MirrorSetup", "bregman", "mirror_step",
    "NoiseSpec", "sample_noise", "tail_params", "unit_variance_scale",
    "OracleProblem", "make_problem",
    "RunTrace", "StepSchedule", "average_iterate", "run_smd", "step_size",
]

__version__ = "0.1.0"
