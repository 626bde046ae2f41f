"""Mirror-descent geometry: regularizers, domains, norm pairs, and the prox step.

Two geometries are shipped, both with closed-form prox steps:

* ``euclidean``   -- psi = (1/2)||.||_2^2 on an unconstrained domain, an l2 ball,
  or a box; primal/dual norms are (l2, l2).
* ``neg-entropy`` -- psi = sum_i x_i log x_i on the probability simplex;
  primal/dual norms are (l1, l-infinity) and the prox step is the
  multiplicative-weights update.

Both regularizers are 1-strongly convex w.r.t. their primal norm on their
domain, so every Bregman divergence here dominates (1/2)||x - y||^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Simplex iterates are clamped to this floor after every step so the next
# iterate stays in the interior (log/exp stay finite).
SIMPLEX_FLOOR = 1e-300

EUCLIDEAN = "euclidean"
NEG_ENTROPY = "neg-entropy"

_DOMAINS = ("unconstrained", "l2-ball", "box", "simplex")


def as_point(x) -> np.ndarray:
    """Coerce to a finite 1-D float vector."""
    pt = np.atleast_1d(np.asarray(x, dtype=float))
    if pt.ndim != 1 or pt.size < 1:
        raise ValueError("a point must be a 1-D real vector of dimension >= 1")
    if not np.all(np.isfinite(pt)):
        raise ValueError("point has non-finite entries")
    return pt


@dataclass(frozen=True)
class MirrorSetup:
    """Regularizer + domain + norm pair defining the geometry of one SMD run.

    Only pairings with closed-form prox steps are allowed:
    ``euclidean`` goes with {unconstrained, l2-ball, box} and (l2, l2);
    ``neg-entropy`` goes with the simplex and (l1, l-infinity).
    """

    regularizer: str = EUCLIDEAN
    domain: str = "unconstrained"
    radius: float = 1.0           # l2-ball only
    lo: tuple = ()                # box only
    hi: tuple = ()                # box only
    primal_norm: str = field(default="", compare=False)
    dual_norm: str = field(default="", compare=False)

    def __post_init__(self):
        if self.regularizer not in (EUCLIDEAN, NEG_ENTROPY):
            raise ValueError(f"unknown regularizer {self.regularizer!r}")
        if self.domain not in _DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.regularizer == NEG_ENTROPY:
            if self.domain != "simplex":
                raise ValueError("neg-entropy only pairs with the simplex domain")
            p, d = "l1", "l-infinity"
        else:
            if self.domain == "simplex":
                raise ValueError("euclidean prox on the simplex is not shipped; "
                                 "use neg-entropy")
            p, d = "l2", "l2"
        if self.primal_norm and self.primal_norm != p:
            raise ValueError(f"{self.regularizer} requires primal norm {p}")
        if self.dual_norm and self.dual_norm != d:
            raise ValueError(f"{self.regularizer} requires dual norm {d}")
        object.__setattr__(self, "primal_norm", p)
        object.__setattr__(self, "dual_norm", d)
        if self.domain == "l2-ball" and not self.radius > 0:
            raise ValueError("l2-ball radius must be positive")
        if self.domain == "box":
            lo, hi = np.asarray(self.lo, float), np.asarray(self.hi, float)
            if lo.shape != hi.shape or lo.size == 0 or np.any(lo >= hi):
                raise ValueError("box needs lo < hi componentwise")

    # -- norms -------------------------------------------------------------

    def norm(self, v) -> float:
        """Primal norm of v."""
        v = np.asarray(v, float)
        return float(np.sum(np.abs(v))) if self.primal_norm == "l1" \
            else float(np.sqrt(np.sum(v * v)))

    def dual(self, v) -> float:
        """Dual norm of v (sup of <v,w> over primal-unit w)."""
        v = np.asarray(v, float)
        return float(np.max(np.abs(v))) if self.dual_norm == "l-infinity" \
            else float(np.sqrt(np.sum(v * v)))

    # -- domain ------------------------------------------------------------

    def contains(self, x, tol: float = 1e-12) -> bool:
        x = as_point(x)
        if self.domain == "unconstrained":
            return True
        if self.domain == "l2-ball":
            return float(np.linalg.norm(x)) <= self.radius + tol
        if self.domain == "box":
            return bool(np.all(x >= np.asarray(self.lo) - tol)
                        and np.all(x <= np.asarray(self.hi) + tol))
        return bool(np.all(x >= -tol) and abs(float(np.sum(x)) - 1.0) <= tol)

    def in_interior(self, x, tol: float = 0.0) -> bool:
        """Interior of dom(psi); for neg-entropy that means strictly positive."""
        x = as_point(x)
        if self.regularizer == NEG_ENTROPY:
            return self.contains(x) and bool(np.all(x > tol))
        return True

    def project(self, x) -> np.ndarray:
        """Nearest feasible point (used only to generate feasible probes)."""
        x = as_point(x)
        if self.domain == "unconstrained":
            return x
        if self.domain == "l2-ball":
            n = float(np.linalg.norm(x))
            return x if n <= self.radius else x * (self.radius / n)
        if self.domain == "box":
            return np.clip(x, np.asarray(self.lo, float), np.asarray(self.hi, float))
        y = np.maximum(x, 0.0)
        s = float(np.sum(y))
        return y / s if s > 0 else np.full_like(x, 1.0 / x.size)


def bregman(setup: MirrorSetup, x, y) -> float:
    """Bregman divergence B_psi(x, y) = psi(x) - psi(y) - <x - y, grad psi(y)>.

    For the euclidean setup this is (1/2)||x - y||_2^2; for neg-entropy it is
    the generalized KL divergence sum_i [x_i log(x_i / y_i) - x_i + y_i]
    (equal to the KL divergence when both points are on the simplex), with
    0 log 0 := 0.  ``y`` must lie in the interior of dom(psi): strictly
    positive for neg-entropy.
    """
    x, y = as_point(x), as_point(y)
    if x.shape != y.shape:
        raise ValueError("dimension mismatch in bregman")
    if setup.regularizer == EUCLIDEAN:
        d = x - y
        return 0.5 * float(np.dot(d, d))
    if np.any(y <= 0.0):
        raise ValueError("neg-entropy divergence needs y strictly positive "
                         "(y on the boundary of the simplex)")
    if np.any(x < 0.0):
        raise ValueError("neg-entropy divergence needs x >= 0")
    xlog = np.where(x > 0.0, x * np.log(np.where(x > 0.0, x, 1.0) / y), 0.0)
    return float(np.sum(xlog) - np.sum(x) + np.sum(y))


def mirror_step(setup: MirrorSetup, x_t, ghat, eta_t: float) -> np.ndarray:
    """One prox step: argmin_{x in X} <ghat, x> + B_psi(x, x_t) / eta_t.

    All shipped setups admit the exact closed form: plain gradient step,
    gradient step followed by ball/box projection, or the multiplicative
    update on the simplex.  The simplex update works in log space with a
    max shift so large eta * ghat never overflows, and the result is clamped
    away from the boundary.
    """
    x_t, ghat = as_point(x_t), as_point(ghat)
    if x_t.shape != ghat.shape:
        raise ValueError("dimension mismatch between iterate and subgradient")
    if not eta_t > 0:
        raise ValueError("step size must be positive")

    if setup.regularizer == EUCLIDEAN:
        z = x_t - eta_t * ghat
        if setup.domain == "unconstrained":
            return z
        if setup.domain == "l2-ball":
            n = float(np.linalg.norm(z))
            return z if n <= setup.radius else z * (setup.radius / n)
        return np.clip(z, np.asarray(setup.lo, float), np.asarray(setup.hi, float))

    if np.any(x_t <= 0.0):
        raise ValueError("simplex iterate must be strictly positive")
    logits = np.log(x_t) - eta_t * ghat
    logits -= np.max(logits)          # log-sum-exp guard
    w = np.exp(logits)
    w /= np.sum(w)
    w = np.maximum(w, SIMPLEX_FLOOR)
    return w / np.sum(w)


def prox_objective(setup: MirrorSetup, x_t, ghat, eta_t: float, x) -> float:
    """Value of the per-step objective Phi_t(x) minimized by mirror_step."""
    x = as_point(x)
    return float(np.dot(as_point(ghat), x)) + bregman(setup, x, x_t) / eta_t
