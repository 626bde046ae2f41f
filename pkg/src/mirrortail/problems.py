"""Convex test objectives with known minimizers and certified Lipschitz bounds.

Each problem carries its minimizer ``x_star``, optimal value ``f_star``, and a
constant ``G`` such that every subgradient it ever returns has dual norm at
most ``G`` on the setup's domain.  Three families are shipped:

* ``abs-sum``               f(x) = sum_i |x_i - c_i|        (|x| in 1-D)
* ``piecewise-linear-max``  f(x) = max_i |x_i - c_i|
* ``quadratic``             f(x) = (a/2) ||x - c||_2^2      (bounded domains only;
                            on an unbounded domain its gradient is unbounded)

The subgradient of |.| at a kink is taken as 0, so noise-free runs that reach
the minimizer stay there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import MirrorSetup, as_point

ABS_SUM = "abs-sum"
PWL_MAX = "piecewise-linear-max"
QUADRATIC = "quadratic"


@dataclass(frozen=True)
class OracleProblem:
    objective: str
    center: tuple
    quad_scale: float
    G: float
    x_star: np.ndarray = field(compare=False)
    f_star: float = 0.0

    def value(self, x) -> float:
        x = as_point(x)
        c = np.asarray(self.center, float)
        if self.objective == ABS_SUM:
            return float(np.sum(np.abs(x - c)))
        if self.objective == PWL_MAX:
            return float(np.max(np.abs(x - c)))
        d = x - c
        return 0.5 * self.quad_scale * float(np.dot(d, d))

    def subgradient(self, x) -> np.ndarray:
        """A subgradient of f at x with dual norm <= G (sign(0) := 0)."""
        x = as_point(x)
        c = np.asarray(self.center, float)
        if self.objective == ABS_SUM:
            return np.sign(x - c)
        if self.objective == PWL_MAX:
            r = np.abs(x - c)
            i = int(np.argmax(r))
            g = np.zeros_like(x)
            if r[i] > 0.0:
                g[i] = np.sign(x[i] - c[i])
            return g
        return self.quad_scale * (x - c)


def _domain_l2_reach(setup: MirrorSetup, c: np.ndarray) -> float:
    """max over the domain of ||x - c||_2 (used to certify G for quadratics)."""
    if setup.domain == "l2-ball":
        return setup.radius + float(np.linalg.norm(c))
    if setup.domain == "box":
        lo, hi = np.asarray(setup.lo, float), np.asarray(setup.hi, float)
        far = np.maximum(np.abs(lo - c), np.abs(hi - c))
        return float(np.linalg.norm(far))
    if setup.domain == "simplex":
        d = c.size
        return max(float(np.linalg.norm(np.eye(d)[i] - c)) for i in range(d))
    raise ValueError("quadratic objective needs a bounded domain for a finite G")


def make_problem(objective: str, center, setup: MirrorSetup,
                 quad_scale: float = 1.0) -> OracleProblem:
    """Build a problem whose minimizer ``center`` lies in the setup's domain."""
    c = as_point(center)
    if not setup.contains(c):
        raise ValueError("minimizer must lie in the domain")
    if objective == ABS_SUM:
        G = 1.0 if setup.dual_norm == "l-infinity" else float(np.sqrt(c.size))
    elif objective == PWL_MAX:
        G = 1.0
    elif objective == QUADRATIC:
        if not quad_scale > 0:
            raise ValueError("quad_scale must be positive")
        # ||a (x - c)||_2 and ||.||_inf are both <= a * l2-reach on the domain
        G = quad_scale * _domain_l2_reach(setup, c)
    else:
        raise ValueError(f"unknown objective {objective!r}")
    return OracleProblem(objective=objective, center=tuple(float(v) for v in c),
                         quad_scale=float(quad_scale), G=float(G), x_star=c)
