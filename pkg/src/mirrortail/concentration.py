"""Monte Carlo validation of the martingale concentration inequalities.

Each validator simulates many independent martingales whose increments carry
the *exact* tail certificate the inequality assumes (e.g. a symmetrized
Weibull magnitude whose sub-Weibull moment equals 2 with equality), counts
how often the maximal partial sum crosses the displayed threshold, and
passes when the empirical violation rate is at most the stated cap plus four
binomial standard errors.  The inequalities are one-sided and usually loose,
so rates far below the cap are expected.

Violations are counted with a strict ``>`` so the degenerate zero-scale
threshold behaves sensibly; this only makes the checks harder to pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .noise import stream

LN2 = math.log(2.0)


# ---------------------------------------------------------------------------
# report types
# ---------------------------------------------------------------------------

@dataclass
class ViolationEstimate:
    """Empirical violation rate of one tail inequality configuration."""
    name: str
    trials: int
    violations: int
    target: float                 # delta or the analytic cap
    threshold: float = float("nan")
    params: dict = field(default_factory=dict)

    @property
    def rate(self) -> float:
        return self.violations / self.trials

    @property
    def stderr(self) -> float:
        # binomial standard error at the stated cap; the test is one-sided
        t = min(self.target, 1.0)
        return math.sqrt(t * (1.0 - t) / self.trials)

    @property
    def passed(self) -> bool:
        return self.rate <= self.target + 4.0 * self.stderr


@dataclass
class MomentReport:
    """Empirical moment (or MGF) versus its analytic bound."""
    name: str
    estimate: float
    stderr: float
    bound: float
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.estimate <= self.bound + 4.0 * self.stderr


@dataclass(frozen=True)
class MartingaleGen:
    """Recipe for a martingale difference sequence with per-step scales."""
    increment_class: str          # gaussian | sym-weibull | sym-poly |
    #                               rademacher | adversarial-scaled
    scales: tuple
    theta: float | None = None
    p: float | None = None

    def __post_init__(self):
        if self.increment_class not in ("gaussian", "sym-weibull", "sym-poly",
                                        "rademacher", "adversarial-scaled"):
            raise ValueError(f"unknown increment class {self.increment_class!r}")

    @property
    def n(self) -> int:
        return len(self.scales)


# ---------------------------------------------------------------------------
# thresholds (displayed right-hand sides, evaluated exactly)
# ---------------------------------------------------------------------------

def _fsum_sq(w: np.ndarray) -> float:
    return math.fsum(float(v) * float(v) for v in w)


def subw_maximal_threshold(theta: float, m, delta: float, s: float = 0.0) -> float:
    """Maximal-inequality threshold for conditionally sub-Weibull increments.

    theta = 1/2 uses the sub-Gaussian form 4 sqrt(e sum m_i^2 log(1/delta));
    theta >= 1 uses the truncation form with C1 = 2^(3 theta + 1)
    Gamma(3 theta + 1) and the union-bound shape parameter s >= 0.
    """
    m = np.asarray(m, float)
    if theta == 0.5:
        return 4.0 * math.sqrt(math.e * _fsum_sq(m) * math.log(1.0 / delta))
    if theta < 1:
        raise ValueError("theta must be 1/2 or >= 1")
    m_star = float(np.max(m))
    if m_star == 0.0:
        return 0.0
    c1 = 2.0 ** (3.0 * theta + 1.0) * math.gamma(3.0 * theta + 1.0)
    sum_ms = math.fsum(float(v) ** s for v in m)
    log_arg = 2.0 * math.e * sum_ms / (m_star ** s * delta)
    mx = max(math.log(log_arg) ** (theta - 1.0), (s * theta - s) ** (theta - 1.0))
    return math.sqrt(c1 * _fsum_sq(m) * math.log(2.0 / delta)) \
        + 4.0 * m_star * mx * math.log(2.0 / delta)


def fuk_nagaev_threshold(p: float, kappas, delta: float) -> float:
    """Fuk-Nagaev threshold for increments with a certified p-th moment:
    sqrt(2 sum k_i^2 log(1/delta)) + (2 + p/3) (sum k_i^p / delta)^(1/p)."""
    if p <= 2:
        raise ValueError("needs p > 2")
    k = np.asarray(kappas, float)
    sum_p = math.fsum(float(v) ** p for v in k)
    return math.sqrt(2.0 * _fsum_sq(k) * math.log(1.0 / delta)) \
        + (2.0 + p / 3.0) * (sum_p / delta) ** (1.0 / p)


def subw_inner_threshold(theta: float, phi: float, omegas, delta: float,
                         s: float = 0.0) -> float:
    """Weighted inner-product threshold under sub-Weibull noise of scale phi."""
    w = np.asarray(omegas, float)
    w_star = float(np.max(w)) if w.size else 0.0
    if w_star == 0.0 or phi == 0.0:
        return 0.0
    if theta == 0.5:
        return subw_maximal_threshold(0.5, phi * w, delta)
    c1 = 2.0 ** (3.0 * theta + 1.0) * math.gamma(3.0 * theta + 1.0)
    c2 = max(1.0, (s * theta - s) ** (theta - 1.0))
    sum_ws = math.fsum(float(v) ** s for v in w)
    log_arg = 2.0 * math.e * sum_ws / (w_star ** s * delta)
    return phi * math.sqrt(c1 * _fsum_sq(w) * math.log(2.0 / delta)) \
        + 4.0 * phi * w_star * c2 * math.log(log_arg) ** theta


def subw_sqnorm_threshold(theta: float, phi: float, omegas, delta: float,
                          s: float = 0.0) -> float:
    """Weighted centered-squared-norm threshold under sub-Weibull noise.

    The squared norm is sub-Weibull with doubled shape, so this is valid for
    theta >= 1/2 (the effective shape 2 theta is then >= 1)."""
    w = np.asarray(omegas, float)
    w_star = float(np.max(w)) if w.size else 0.0
    if w_star == 0.0 or phi == 0.0:
        return 0.0
    c1 = 2.0 ** (6.0 * theta + 1.0) * math.gamma(6.0 * theta + 1.0)
    c2 = max(1.0, (2.0 * s * theta - s) ** (2.0 * theta - 1.0))
    c3 = 2.0 ** (2.0 * theta + 1.0) * math.gamma(2.0 * theta + 1.0) \
        / LN2 ** (2.0 * theta)
    sum_ws = math.fsum(float(v) ** s for v in w)
    log_arg = 2.0 * math.e * sum_ws / (w_star ** s * delta)
    return c3 * phi ** 2 * math.sqrt(c1 * _fsum_sq(w) * math.log(2.0 / delta)) \
        + 4.0 * c2 * c3 * phi ** 2 * w_star * math.log(log_arg) ** (2.0 * theta)


def poly_inner_threshold(p: float, phi: float, omegas, delta: float) -> float:
    """Weighted inner-product threshold under polynomial-tail noise."""
    return fuk_nagaev_threshold(p, phi * np.asarray(omegas, float), delta)


def poly_sqnorm_threshold(p: float, phi: float, omegas, delta: float) -> float:
    """Weighted centered-squared-norm threshold under polynomial-tail noise."""
    if p <= 4:
        raise ValueError("needs p > 4 so the squared norm keeps p/2 > 2 moments")
    w = np.asarray(omegas, float)
    sum_p2 = math.fsum(float(v) ** (p / 2.0) for v in w)
    return 2.0 * phi ** 2 * math.sqrt(2.0 * _fsum_sq(w) * math.log(1.0 / delta)) \
        + 2.0 * (2.0 + p / 6.0) * phi ** 2 * (sum_p2 / delta) ** (2.0 / p)


def chicken_egg_cap(alpha: float, beta: float, x: float) -> float:
    """exp(-min(x^2 / (8 beta), x / (6 alpha))), with x/(6*0) = infinity."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if alpha < 0 or x <= 0:
        raise ValueError("needs alpha >= 0 and x > 0")
    terms = [x * x / (8.0 * beta)]
    if alpha > 0:
        terms.append(x / (6.0 * alpha))
    return math.exp(-min(terms))


# ---------------------------------------------------------------------------
# increment samplers (each law carries its certificate with equality)
# ---------------------------------------------------------------------------

def _rademacher(gen, shape) -> np.ndarray:
    return gen.integers(0, 2, size=shape).astype(float) * 2.0 - 1.0


def _subw_increments(gen, theta: float, scales: np.ndarray, rows: int,
                     increment_class: str) -> np.ndarray:
    """(rows, n) MDS increments, conditionally sub-Weibull(theta, scales[i])."""
    n = scales.size
    if increment_class == "gaussian" or theta == 0.5:
        sig = scales * math.sqrt(3.0 / 8.0)
        return gen.normal(size=(rows, n)) * sig[None, :]
    if increment_class == "rademacher":
        return _rademacher(gen, (rows, n)) * (scales * LN2 ** theta)[None, :]
    lam = scales * 2.0 ** (-theta)
    mags = gen.weibull(1.0 / theta, size=(rows, n)) * lam[None, :]
    return mags * _rademacher(gen, (rows, n))


def _poly_increments(gen, p: float, kappas: np.ndarray, rows: int) -> np.ndarray:
    """(rows, n) symmetric Pareto-type increments with E|X_i|^p = kappas[i]^p."""
    n = kappas.size
    x_m = kappas / (p + 1.0) ** (1.0 / p)
    mags = (1.0 + gen.pareto(p + 1.0, size=(rows, n))) * x_m[None, :]
    return mags * _rademacher(gen, (rows, n))


def _chunks(trials: int, n: int, cap_elems: int = 4_000_000):
    rows = max(1, cap_elems // max(n, 1))
    done = 0
    while done < trials:
        yield min(rows, trials - done)
        done += rows


# ---------------------------------------------------------------------------
# validators
# ---------------------------------------------------------------------------

def validate_subw_maximal(theta: float, m, n: int | None = None,
                          delta: float = 0.05, s: float = 0.0,
                          trials: int = 100_000,
                          increment_class: str = "sym-weibull",
                          seed: int = 0) -> ViolationEstimate:
    """Maximal inequality for martingales with sub-Weibull increments.

    ``m`` is either the per-step scale vector or a scalar replicated to
    length ``n``.  theta = 1/2 routes to the sub-Gaussian threshold (gaussian
    increments); theta >= 1 uses the heavy-tailed form.
    """
    m = np.full(n, float(m)) if np.isscalar(m) else np.asarray(m, float)
    thr = subw_maximal_threshold(theta, m, delta, s)
    gen = stream(seed, 101)
    cls = "gaussian" if theta == 0.5 else increment_class
    hits = 0
    for rows in _chunks(trials, m.size):
        if cls == "adversarial-scaled":
            x = _adversarial_subw_paths(gen, theta, m, rows)
            peaks = np.max(x, axis=1)
        else:
            inc = _subw_increments(gen, theta, m, rows, cls)
            peaks = np.max(np.cumsum(inc, axis=1), axis=1)
        hits += int(np.count_nonzero(peaks > thr))
    return ViolationEstimate(name="subw-maximal", trials=trials, violations=hits,
                             target=delta, threshold=thr,
                             params={"theta": theta, "n": m.size, "s": s,
                                     "class": cls})


def _adversarial_subw_paths(gen, theta: float, m: np.ndarray,
                            rows: int) -> np.ndarray:
    """Partial-sum paths with a predictable scale that stays at the cap while
    the path is high and shrinks while it is low (still an MDS; per-step
    certificate never exceeds m_i)."""
    n = m.size
    mags = gen.weibull(1.0 / theta, size=(rows, n)) * 2.0 ** (-theta)
    signs = _rademacher(gen, (rows, n))
    out = np.empty((rows, n))
    s_run = np.zeros(rows)
    for t in range(n):
        scale = np.where(s_run >= 0.0, m[t], 0.25 * m[t])
        s_run = s_run + scale * mags[:, t] * signs[:, t]
        out[:, t] = s_run
    return out


def validate_fuk_nagaev(p: float, kappas, n: int | None = None,
                        delta: float = 0.05, trials: int = 100_000,
                        seed: int = 0) -> ViolationEstimate:
    """Fuk-Nagaev maximal inequality for bounded-p-th-moment increments."""
    k = np.full(n, float(kappas)) if np.isscalar(kappas) \
        else np.asarray(kappas, float)
    thr = fuk_nagaev_threshold(p, k, delta)
    gen = stream(seed, 103)
    hits = 0
    for rows in _chunks(trials, k.size):
        inc = _poly_increments(gen, p, k, rows)
        peaks = np.max(np.cumsum(inc, axis=1), axis=1)
        hits += int(np.count_nonzero(peaks > thr))
    return ViolationEstimate(name="fuk-nagaev", trials=trials, violations=hits,
                             target=delta, threshold=thr,
                             params={"p": p, "n": k.size})


def validate_chicken_egg(alpha: float, beta: float, x: float,
                         gen_spec: MartingaleGen, trials: int = 100_000,
                         seed: int = 0) -> ViolationEstimate:
    """Joint event bound: P(union_t {M_t >= x and <M>_t + [M]_t <= alpha M_t
    + beta}) <= exp(-min(x^2/(8 beta), x/(6 alpha)))."""
    cap = chicken_egg_cap(alpha, beta, x)
    scales = np.asarray(gen_spec.scales, float)
    n = scales.size
    gen = stream(seed, 107)
    hits = 0
    for rows in _chunks(trials, n):
        inc, tcv = _increments_with_tcv(gen, gen_spec, scales, rows)
        s = np.cumsum(inc, axis=1)
        total_var = tcv + np.cumsum(inc * inc, axis=1)
        event = (s >= x) & (total_var <= alpha * s + beta)
        hits += int(np.count_nonzero(np.any(event, axis=1)))
    return ViolationEstimate(name="chicken-egg", trials=trials, violations=hits,
                             target=cap, threshold=x,
                             params={"alpha": alpha, "beta": beta,
                                     "class": gen_spec.increment_class, "n": n})


def _increments_with_tcv(gen, spec: MartingaleGen, scales: np.ndarray,
                         rows: int) -> tuple[np.ndarray, np.ndarray]:
    """Increments plus the exact running total conditional variance."""
    n = scales.size
    cls = spec.increment_class
    if cls == "rademacher":
        inc = _rademacher(gen, (rows, n)) * scales[None, :]
        var = scales ** 2
    elif cls == "gaussian":
        inc = gen.normal(size=(rows, n)) * scales[None, :]
        var = scales ** 2
    elif cls == "sym-weibull":
        th = spec.theta
        mags = gen.weibull(1.0 / th, size=(rows, n)) * scales[None, :]
        inc = mags * _rademacher(gen, (rows, n))
        var = scales ** 2 * math.gamma(2.0 * th + 1.0)
    elif cls == "sym-poly":
        p = spec.p
        mags = (1.0 + gen.pareto(p + 1.0, size=(rows, n))) * scales[None, :]
        inc = mags * _rademacher(gen, (rows, n))
        var = scales ** 2 * (p + 1.0) / (p - 1.0)
    else:  # adversarial-scaled: predictable scale switch, rademacher base
        inc = np.empty((rows, n))
        tcv = np.empty((rows, n))
        s_run = np.zeros(rows)
        v_run = np.zeros(rows)
        signs = _rademacher(gen, (rows, n))
        for t in range(n):
            sc = np.where(s_run >= 0.0, scales[t], 0.25 * scales[t])
            step = sc * signs[:, t]
            s_run = s_run + step
            v_run = v_run + sc * sc
            inc[:, t] = step
            tcv[:, t] = v_run
        return inc, tcv
    return inc, np.cumsum(np.broadcast_to(var, (rows, n)), axis=1)


def validate_weighted_shortcuts(regime: str, which: str, omegas,
                                delta: float = 0.05, trials: int = 100_000,
                                theta: float = 1.0, p: float = 5.0,
                                phi: float = 1.0, s: float = 0.0,
                                seed: int = 0) -> ViolationEstimate:
    """Weighted noise-martingale inequalities behind the corollaries.

    ``which`` selects the inner-product sum (predictable adversarial unit
    directions) or the centered-squared-norm sum.  ``phi`` is the certified
    tail scale (nu for the weibull regime, kappa for poly); increments carry
    that certificate with equality.
    """
    w = np.asarray(omegas, float)
    n = w.size
    if np.any(w < 0):
        raise ValueError("weights must be positive")
    if regime == "weibull":
        thr = subw_inner_threshold(theta, phi, w, delta, s) \
            if which == "inner-product" \
            else subw_sqnorm_threshold(theta, phi, w, delta, s)
    elif regime == "poly":
        thr = poly_inner_threshold(p, phi, w, delta) \
            if which == "inner-product" \
            else poly_sqnorm_threshold(p, phi, w, delta)
    else:
        raise ValueError(f"unknown regime {regime!r}")

    gen = stream(seed, 109)
    hits = 0
    for rows in _chunks(trials, max(n, 1)):
        if regime == "weibull":
            lam = phi * 2.0 ** (-theta)
            mags = gen.weibull(1.0 / theta, size=(rows, n)) * lam
            sigma2 = lam * lam * math.gamma(2.0 * theta + 1.0)
        else:
            x_m = phi / (p + 1.0) ** (1.0 / p)
            mags = (1.0 + gen.pareto(p + 1.0, size=(rows, n))) * x_m
            sigma2 = x_m * x_m * (p + 1.0) / (p - 1.0)
        if which == "inner-product":
            xi = mags * _rademacher(gen, (rows, n))
            inc = _adversarial_directed(xi, w)
        elif which == "squared-norm":
            inc = (mags * mags - sigma2) * w[None, :]
        else:
            raise ValueError(f"unknown sum kind {which!r}")
        peaks = np.max(np.cumsum(inc, axis=1), axis=1) if n else np.zeros(rows)
        hits += int(np.count_nonzero(peaks > thr))
    return ViolationEstimate(name=f"shortcut-{regime}-{which}", trials=trials,
                             violations=hits, target=delta, threshold=thr,
                             params={"n": n, "s": s, "theta": theta, "p": p})


def _adversarial_directed(xi: np.ndarray, w: np.ndarray) -> np.ndarray:
    """omega_t <xi_t, u_t> with the predictable unit direction u_t flipped to
    align with the running bias of the sum (1-D directions: u_t = +/-1)."""
    rows, n = xi.shape
    inc = np.empty((rows, n))
    bias = np.zeros(rows)
    for t in range(n):
        u = np.where(bias >= 0.0, 1.0, -1.0)
        inc[:, t] = w[t] * u * xi[:, t]
        bias += inc[:, t]
    return inc


# ---------------------------------------------------------------------------
# sub-Weibull calculus checks (moments, centering, MGF)
# ---------------------------------------------------------------------------

def check_subw_moment(theta: float, nu: float, p: float,
                      trials: int = 100_000, seed: int = 0) -> MomentReport:
    """E |X|^p <= 2 Gamma(theta p + 1) nu^p for X with the sub-Weibull tail
    exp(-(t/nu)^(1/theta)) (the extremal law for the tail form)."""
    bound = 2.0 * math.gamma(theta * p + 1.0) * nu ** p
    gen = stream(seed, 113)
    vals = (gen.weibull(1.0 / theta, trials) * nu) ** p
    est = float(np.mean(vals))
    se = float(np.std(vals)) / math.sqrt(trials)
    return MomentReport(name="subw-moment", estimate=est, stderr=se, bound=bound,
                        params={"theta": theta, "nu": nu, "p": p})


def centering_constant(theta: float) -> float:
    """c_theta = 2^(max(theta,1)+1) Gamma(theta+1) / ln(2)^theta."""
    return 2.0 ** (max(theta, 1.0) + 1.0) * math.gamma(theta + 1.0) \
        / LN2 ** theta


def check_centering(theta: float, nu: float, trials: int = 100_000,
                    symmetric: bool = False, seed: int = 0) -> MomentReport:
    """X - E X stays sub-Weibull at the inflated scale c_theta nu.

    X has the tight certificate E exp((|X|/nu)^(1/theta)) = 2 (one-sided
    Weibull magnitude, or its symmetrization when ``symmetric``)."""
    c = centering_constant(theta)
    lam = nu * 2.0 ** (-theta)
    gen = stream(seed, 127)
    mags = gen.weibull(1.0 / theta, trials) * lam
    if symmetric:
        x = mags * _rademacher(gen, trials)
        mean = 0.0
    else:
        x = mags
        mean = lam * math.gamma(theta + 1.0)
    vals = np.exp((np.abs(x - mean) / (c * nu)) ** (1.0 / theta))
    est = float(np.mean(vals))
    se = float(np.std(vals)) / math.sqrt(trials)
    return MomentReport(name="subw-centering", estimate=est, stderr=se, bound=2.0,
                        params={"theta": theta, "nu": nu, "c_theta": c,
                                "symmetric": symmetric})


def mgf_bound(theta: float, nu: float, lam: float, h: float | None = None
              ) -> float:
    """Admissible-range MGF bound for a centered sub-Weibull variable.

    theta = 1/2: exp(4 e nu^2 lam^2) on all of R.
    theta = 1 (h None): exp(2 e^2 nu^2 lam^2) for |lam| <= 1/(2 e nu).
    theta >= 1 with truncation level nu*h: exp(a nu^2 lam^2) for
    lam in [0, 1/(2 h^(1-1/theta) nu)] with
    a = (2^(2 theta)+1) Gamma(2 theta+1) + 2^(3 theta) Gamma(3 theta+1)
        h^(1/theta - 1) / 6.
    Out-of-range lam raises, and that contract is itself under test.
    """
    if theta == 0.5:
        return math.exp(4.0 * math.e * nu * nu * lam * lam)
    if theta == 1.0 and h is None:
        if abs(lam) > 1.0 / (2.0 * math.e * nu):
            raise ValueError("lambda outside the sub-exponential MGF range")
        return math.exp(2.0 * math.e ** 2 * nu * nu * lam * lam)
    if theta < 1.0 or h is None or h <= 0:
        raise ValueError("theta >= 1 with a positive truncation h required")
    if not 0.0 <= lam <= 1.0 / (2.0 * h ** (1.0 - 1.0 / theta) * nu):
        raise ValueError("lambda outside the truncated MGF range")
    a = (2.0 ** (2.0 * theta) + 1.0) * math.gamma(2.0 * theta + 1.0) \
        + 2.0 ** (3.0 * theta) * math.gamma(3.0 * theta + 1.0) \
        * h ** (1.0 / theta - 1.0) / 6.0
    return math.exp(a * nu * nu * lam * lam)


def check_mgf_bounds(theta: float, nu: float, lambdas,
                     h: float | None = None, trials: int = 100_000,
                     seed: int = 0) -> list[MomentReport]:
    """Empirical MGF (of X, or of the truncated X when theta >= 1 needs it)
    against the case's bound at every lambda on the grid."""
    gen = stream(seed, 131)
    if theta == 0.5:
        x = gen.normal(0.0, nu * math.sqrt(3.0 / 8.0), trials)
    else:
        lam_scale = nu * 2.0 ** (-theta)
        mags = gen.weibull(1.0 / theta, trials) * lam_scale
        x = mags * _rademacher(gen, trials)
    if h is not None:
        level = nu * h
        x = np.where(x <= level, x, 0.0)   # X * 1{X <= L}
    out = []
    for lam in np.atleast_1d(np.asarray(lambdas, float)):
        bound = mgf_bound(theta, nu, float(lam), h)
        vals = np.exp(lam * x)
        est = float(np.mean(vals))
        se = float(np.std(vals)) / math.sqrt(trials)
        out.append(MomentReport(name="subw-mgf", estimate=est, stderr=se,
                                bound=bound,
                                params={"theta": theta, "nu": nu,
                                        "lambda": float(lam), "h": h}))
    return out
