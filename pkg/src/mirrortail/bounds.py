"""Closed-form high-probability error bounds as pure functions of their inputs.

Every bound is evaluated exactly as displayed in its source statement, with
the unspecified multiplicative constant exposed as ``C`` (default 1).  The
sub-Weibull scale is always called ``nu`` and the polynomial scale ``kappa``;
where a statement mixes symbols for the scale of the active noise class, both
render to the class's single scale here.  ``delta = 1`` is accepted as a
degenerate input (all bounds stay finite), which makes formula cross-checks
against noise-free reductions painless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .smd import StepSchedule

WEIBULL = "weibull"
POLY = "poly"


@dataclass(frozen=True)
class TailBoundInputs:
    """All scalars entering the bound formulas."""
    breg0: float = 0.0       # B_psi(x*, x_1)
    eta: float = 1.0
    G: float = 0.0
    sigma2: float = 0.0
    nu: float = 0.0          # sub-Weibull scale
    theta: float = 1.0
    kappa: float = 0.0       # polynomial scale
    p: float = 5.0
    T: int = 1
    delta: float = 0.5
    C: float = 1.0
    D: float | None = None   # diameter bound, bounded-domain forms only

    def __post_init__(self):
        if self.breg0 < 0 or self.eta <= 0 or self.G < 0 or self.sigma2 < 0:
            raise ValueError("breg0, G, sigma2 must be >= 0 and eta > 0")
        if self.nu < 0 or self.kappa < 0 or self.C <= 0:
            raise ValueError("nu, kappa must be >= 0 and C > 0")
        if not (self.theta >= 1 or self.theta == 0.5):
            raise ValueError("theta must be >= 1 or the sub-Gaussian value 1/2")
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if not 0 < self.delta <= 1:
            raise ValueError("delta must lie in (0, 1]")


@dataclass(frozen=True)
class MartingaleTailFns:
    """Tail quantile functions for the two noise martingales of the
    average-iterate analysis: each maps (delta, per-step etas) to a level
    exceeded with probability at most delta."""
    Y1: Callable[[float, np.ndarray], float]
    Y2: Callable[[float, np.ndarray], float]


def _log(x: float) -> float:
    return math.log(x)


def gamma_value(Y2_at_half_delta: float, sum_eta2_G2_sigma2: float) -> float:
    """The anchor constant for the divergence running max:
    sqrt(Y2(delta/2) + sum_t eta_t^2 (G^2 + sigma^2))."""
    if Y2_at_half_delta < 0 or sum_eta2_G2_sigma2 < 0:
        raise ValueError("both arguments must be >= 0")
    if Y2_at_half_delta == 0 and sum_eta2_G2_sigma2 == 0:
        raise ValueError("arguments must not both be zero")
    return math.sqrt(Y2_at_half_delta + sum_eta2_G2_sigma2)


def eval_thm1_bound(fns: MartingaleTailFns, inp: TailBoundInputs,
                    schedule: StepSchedule) -> float:
    """General average-iterate bound:
    (3 / (eta_T T)) (breg0 + sum eta_t^2 (G^2 + sigma^2)
                     + 2 Y1(delta/2)^2 + Y2(delta/2))."""
    etas = schedule.etas(inp.T)
    y1 = fns.Y1(inp.delta / 2.0, etas)
    y2 = fns.Y2(inp.delta / 2.0, etas)
    s = float(np.sum(etas ** 2)) * (inp.G ** 2 + inp.sigma2)
    return 3.0 / (etas[-1] * inp.T) * (inp.breg0 + s + 2.0 * y1 ** 2 + y2)


def eval_cor1_bound(case: str, inp: TailBoundInputs) -> float:
    """Average iterate under sub-Weibull noise, constant or eta/sqrt(t) rates."""
    le_d = _log(math.e / inp.delta)
    if case == "constant":
        leT_d = _log(math.e * inp.T / inp.delta)
        return inp.C / inp.T * (
            inp.breg0 / inp.eta
            + inp.eta * (inp.G ** 2 + inp.nu ** 2 * le_d) * inp.T
            + inp.eta * inp.nu ** 2 * leT_d ** (2.0 * inp.theta))
    if case == "inverse-sqrt":
        return inp.C * _log(math.e * inp.T) / math.sqrt(inp.T) * (
            inp.breg0 / inp.eta
            + inp.eta * (inp.G ** 2 + inp.nu ** 2 * le_d ** (2.0 * inp.theta)))
    raise ValueError(f"unknown case {case!r}")


def eval_cor2_bound(case: str, inp: TailBoundInputs) -> float:
    """Average iterate under polynomial-tail noise."""
    if inp.p <= 4:
        raise ValueError("polynomial bounds need p > 4")
    le_d = _log(math.e / inp.delta)
    if case == "constant":
        return inp.C / inp.T * (
            inp.breg0 / inp.eta
            + inp.eta * (inp.G ** 2 + inp.kappa ** 2 * le_d) * inp.T
            + inp.eta * inp.kappa ** 2 * (inp.T / inp.delta) ** (2.0 / inp.p))
    if case == "inverse-sqrt":
        return inp.C * _log(math.e * inp.T) / math.sqrt(inp.T) * (
            inp.breg0 / inp.eta
            + inp.eta * (inp.G ** 2
                         + inp.kappa ** 2 * (1.0 / inp.delta) ** (2.0 / inp.p)))
    raise ValueError(f"unknown case {case!r}")


def eval_tuned_eta_forms(regime: str, inp: TailBoundInputs
                         ) -> tuple[float, float, float]:
    """Optimally tuned constant-eta bound, split into its two addends.

    Returns (total, sub_gaussian_addend, heavy_tail_addend).  The first
    addend decays like 1/sqrt(T), the second faster, so the light-tailed
    term eventually dominates; `tuned_eta_crossover` locates that horizon.
    """
    rootb = math.sqrt(inp.breg0)
    le_d = _log(math.e / inp.delta)
    if regime == WEIBULL:
        a1 = rootb * math.sqrt((inp.G ** 2 + inp.nu ** 2 * le_d) / inp.T)
        a2 = rootb * inp.nu * _log(math.e * inp.T / inp.delta) ** inp.theta / inp.T
    elif regime == POLY:
        a1 = rootb * math.sqrt((inp.G ** 2 + inp.kappa ** 2 * le_d) / inp.T)
        a2 = rootb * inp.kappa * (1.0 / inp.delta) ** (1.0 / inp.p) \
            / inp.T ** (1.0 - 1.0 / inp.p)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return a1 + a2, a1, a2


def tuned_eta_crossover(regime: str, inp: TailBoundInputs,
                        t_max: int = 10 ** 6) -> int | None:
    """First horizon where the sub-Gaussian addend overtakes the heavy-tail
    addend, by brute-force scan; None if it does not happen by t_max."""
    ts = np.arange(1, t_max + 1, dtype=float)
    le_d = _log(math.e / inp.delta)
    if regime == WEIBULL:
        a1 = np.sqrt((inp.G ** 2 + inp.nu ** 2 * le_d) / ts)
        a2 = inp.nu * np.log(math.e * ts / inp.delta) ** inp.theta / ts
    else:
        a1 = np.sqrt((inp.G ** 2 + inp.kappa ** 2 * le_d) / ts)
        a2 = inp.kappa * (1.0 / inp.delta) ** (1.0 / inp.p) \
            / ts ** (1.0 - 1.0 / inp.p)
    hit = np.nonzero(a1 >= a2)[0]
    return int(hit[0]) + 1 if hit.size else None


def eval_thm2_last_bound(Xi1: float, Xi2: float, inp: TailBoundInputs) -> float:
    """General last-iterate bound with the Xi quantiles already evaluated at
    delta/3:
    (35/sqrt(T)) (2 Xi1 + sqrt(2) eta G^2 log(4T)
                  + 9 sqrt(2) eta (Xi2 + 2 sigma^2 log(4T)) log(3/delta))."""
    l4t = _log(4.0 * inp.T)
    return 35.0 / math.sqrt(inp.T) * (
        2.0 * Xi1
        + math.sqrt(2.0) * inp.eta * inp.G ** 2 * l4t
        + 9.0 * math.sqrt(2.0) * inp.eta * (Xi2 + 2.0 * inp.sigma2 * l4t)
        * _log(3.0 / inp.delta))


def eval_cor3_bound(regime: str, inp: TailBoundInputs) -> float:
    """Concrete last-iterate bounds for the two noise classes (eta/sqrt(t))."""
    lead = inp.C * _log(math.e * inp.T) / math.sqrt(inp.T)
    le_d = _log(math.e / inp.delta)
    if regime == WEIBULL:
        tail = inp.nu ** 2 * le_d ** (2.0 * inp.theta + 1.0)
    elif regime == POLY:
        if inp.p <= 4:
            raise ValueError("polynomial bounds need p > 4")
        tail = inp.kappa ** 2 * (1.0 / inp.delta) ** (2.0 / inp.p) * le_d
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return lead * (inp.breg0 / inp.eta + inp.eta * (inp.G ** 2 + tail))


def eval_bounded_domain_bound(regime: str, inp: TailBoundInputs) -> float:
    """Average-iterate bounds under a diameter bound D, eta/sqrt(t) rates."""
    if inp.D is None:
        raise ValueError("the bounded-domain forms need the diameter D")
    le_d = _log(math.e / inp.delta)
    rt = math.sqrt(inp.T)
    if regime == WEIBULL:
        leT_d = _log(math.e * inp.T / inp.delta)
        tail = inp.nu ** 2 * (le_d
                              + le_d ** (2.0 * inp.theta) / rt
                              + leT_d ** (2.0 * inp.theta) / inp.T)
    elif regime == POLY:
        if inp.p <= 4:
            raise ValueError("polynomial bounds need p > 4")
        tail = inp.kappa ** 2 * (le_d
                                 + (1.0 / inp.delta) ** (2.0 / inp.p) / rt)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return inp.C / rt * (inp.D ** 2 / inp.eta + inp.eta * inp.G ** 2
                         + inp.eta * tail)


# -- concrete tail functions for the theorem-level bounds ---------------------

def subweibull_tail_fns(theta: float, nu: float, s1: float = 3.0,
                        s2: float = 2.0) -> MartingaleTailFns:
    """Tail quantiles for the two noise martingales under sub-Weibull noise,
    built from the weighted maximal inequalities (inner product with weights
    eta_t, squared norm with weights eta_t^2); s1/s2 are their union-bound
    shape parameters."""
    from .concentration import subw_inner_threshold, subw_sqnorm_threshold

    def Y1(delta: float, etas: np.ndarray) -> float:
        return subw_inner_threshold(theta, nu, np.asarray(etas, float),
                                    delta, s=s1)

    def Y2(delta: float, etas: np.ndarray) -> float:
        return subw_sqnorm_threshold(theta, nu, np.asarray(etas, float) ** 2,
                                     delta, s=s2)

    return MartingaleTailFns(Y1=Y1, Y2=Y2)


def poly_tail_fns(p: float, kappa: float) -> MartingaleTailFns:
    """Same as `subweibull_tail_fns` for polynomial-tail noise."""
    from .concentration import poly_inner_threshold, poly_sqnorm_threshold

    def Y1(delta: float, etas: np.ndarray) -> float:
        return poly_inner_threshold(p, kappa, np.asarray(etas, float), delta)

    def Y2(delta: float, etas: np.ndarray) -> float:
        return poly_sqnorm_threshold(p, kappa, np.asarray(etas, float) ** 2,
                                     delta)

    return MartingaleTailFns(Y1=Y1, Y2=Y2)
