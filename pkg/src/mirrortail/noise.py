"""Zero-mean oracle-noise samplers for the three tail classes.

Classes
-------
* ``gaussian``    -- N(0, sigma^2); its dual norm is sub-Weibull(1/2, nu).
* ``sym-weibull`` -- Rademacher sign times a Weibull(shape 1/theta) magnitude,
  theta >= 1; the dual norm is sub-Weibull(theta, nu).
* ``sym-poly``    -- Rademacher sign times a Pareto magnitude with tail index
  p + 1, p > 4; the dual norm has p-th moment exactly kappa^p.

Every class is scaled so that E ||xi||_*^2 equals ``target`` exactly (1 by
default).  Zero mean holds conditionally on the past by construction: the
magnitude is multiplied by an independent symmetric sign (d = 1) or by a
uniformly random unit direction of the dual norm (d > 1), so ||xi||_* equals
the scalar magnitude in every dimension.

Streams are counter-based: `stream(base, *ids)` builds an independent
generator from the integer tuple, so runs are reproducible and independent of
scheduling order.  Within one run, `sample_noise(spec, gen, size=T)` draws the
whole noise block at once (magnitudes first, then signs/directions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

GAUSSIAN = "gaussian"
SYM_WEIBULL = "sym-weibull"
SYM_POLY = "sym-poly"


@dataclass(frozen=True)
class NoiseSpec:
    kind: str
    theta: float | None = None     # sym-weibull only, theta >= 1
    p: float | None = None         # sym-poly only, p > 4
    target: float = 1.0            # E ||xi||_*^2
    d: int = 1
    dual_norm: str = "l2"          # direction geometry for d > 1

    def __post_init__(self):
        if self.kind not in (GAUSSIAN, SYM_WEIBULL, SYM_POLY):
            raise ValueError(f"unknown noise class {self.kind!r}")
        if self.kind == SYM_WEIBULL and (self.theta is None or self.theta < 1):
            raise ValueError("sym-weibull needs theta >= 1")
        if self.kind == SYM_POLY and (self.p is None or self.p <= 4):
            raise ValueError("sym-poly needs p > 4")
        if self.target < 0:
            raise ValueError("target second moment must be >= 0")
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if self.dual_norm not in ("l2", "l-infinity"):
            raise ValueError("dual_norm must be l2 or l-infinity")


@dataclass(frozen=True)
class TailParams:
    """Certified tail constants of the scaled law of ||xi||_*."""
    kind: str
    sigma2: float
    theta: float | None = None
    nu: float | None = None
    p: float | None = None
    kappa: float | None = None


def stream(base_seed: int, *ids: int) -> np.random.Generator:
    """Independent counter-based generator for the integer id tuple."""
    key = [int(base_seed) & 0xFFFFFFFFFFFFFFFF] + [int(i) for i in ids]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


def unit_variance_scale(spec: NoiseSpec) -> float:
    """Scale applied to the raw magnitude law to hit the target second moment.

    sym-weibull: lambda = sqrt(target / Gamma(1 + 2 theta)); sym-poly: the
    Pareto minimum x_m from its closed-form second moment a x_m^2 / (a - 2)
    with a = p + 1; gaussian: the standard deviation sqrt(target).
    Gamma overflows for theta > 150 and surfaces as a range error.
    """
    if spec.kind == GAUSSIAN:
        return math.sqrt(spec.target)
    if spec.kind == SYM_WEIBULL:
        return math.sqrt(spec.target / math.gamma(1.0 + 2.0 * spec.theta))
    a = spec.p + 1.0
    return math.sqrt(spec.target * (a - 2.0) / a)


def _magnitudes(spec: NoiseSpec, gen: np.random.Generator, n: int) -> np.ndarray:
    scale = unit_variance_scale(spec)
    if scale == 0.0:
        return np.zeros(n)
    if spec.kind == GAUSSIAN:
        return np.abs(gen.normal(0.0, scale, n))
    if spec.kind == SYM_WEIBULL:
        return scale * gen.weibull(1.0 / spec.theta, n)
    return scale * (1.0 + gen.pareto(spec.p + 1.0, n))


def _rademacher(gen: np.random.Generator, n: int) -> np.ndarray:
    return gen.integers(0, 2, size=n).astype(float) * 2.0 - 1.0


def _unit_directions(gen: np.random.Generator, n: int, d: int,
                     dual_norm: str) -> np.ndarray:
    """n draws uniform on the unit sphere of the dual norm."""
    if dual_norm == "l2":
        u = gen.normal(size=(n, d))
        norms = np.linalg.norm(u, axis=1, keepdims=True)
        # resample-free guard: a zero row has probability 0
        norms[norms == 0.0] = 1.0
        return u / norms
    # l-infinity sphere = cube surface: pick a face, then uniform inside it
    u = gen.uniform(-1.0, 1.0, size=(n, d))
    faces = gen.integers(0, d, size=n)
    signs = _rademacher(gen, n)
    u[np.arange(n), faces] = signs
    return u


def sample_noise(spec: NoiseSpec, gen: np.random.Generator,
                 size: int | None = None) -> np.ndarray:
    """Draw noise vectors: shape (d,) or (size, d).

    d = 1: sign * magnitude (the gaussian class draws N(0, sigma) directly).
    d > 1: magnitude times a uniform unit direction of the dual norm, which
    makes ||xi||_* equal to the magnitude exactly.
    """
    n = 1 if size is None else int(size)
    if spec.target == 0.0:
        out = np.zeros((n, spec.d))
        return out[0] if size is None else out
    if spec.d == 1:
        if spec.kind == GAUSSIAN:
            vals = gen.normal(0.0, unit_variance_scale(spec), n)
        else:
            vals = _magnitudes(spec, gen, n) * _rademacher(gen, n)
        out = vals[:, None]
    else:
        m = _magnitudes(spec, gen, n)
        u = _unit_directions(gen, n, spec.d, spec.dual_norm)
        out = u * m[:, None]
    return out[0] if size is None else out


# -- certified tail constants ------------------------------------------------

def _subweibull_moment(spec: NoiseSpec, nu: float) -> float:
    """E exp((||xi||_* / nu)^(1/theta)) for the scaled law, by quadrature."""
    scale = unit_variance_scale(spec)
    if spec.kind == GAUSSIAN:
        # theta = 1/2; integrand 2 phi_sigma(x) exp(x^2 / nu^2), finite iff
        # nu^2 > 2 sigma^2
        if nu * nu <= 2.0 * scale * scale:
            return math.inf
        val, _ = integrate.quad(
            lambda x: 2.0 / (scale * math.sqrt(2.0 * math.pi))
            * math.exp(-0.5 * (x / scale) ** 2 + (x / nu) ** 2),
            0.0, np.inf)
        return val
    # Weibull magnitude: substitute u = (m / lambda)^(1/theta) ~ Exp(1)
    c = (scale / nu) ** (1.0 / spec.theta)
    if c >= 1.0:
        return math.inf
    val, _ = integrate.quad(lambda u: math.exp((c - 1.0) * u), 0.0, np.inf)
    return val


def solve_nu(spec: NoiseSpec, tol: float = 1e-12) -> float:
    """Smallest nu with E exp((||xi||_*/nu)^(1/theta)) = 2, by bisection.

    The moment is monotone decreasing in nu, diverges at the bracket's lower
    end and tends to 1 at infinity, so plain bisection converges.
    """
    scale = unit_variance_scale(spec)
    if scale == 0.0:
        return 0.0
    if spec.kind == GAUSSIAN:
        lo = scale * math.sqrt(2.0) * (1.0 + 1e-9)
        hi = 8.0 * scale
    else:
        lo = scale * (1.0 + 1e-12)
        hi = scale * 4.0 ** spec.theta
    while _subweibull_moment(spec, hi) > 2.0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _subweibull_moment(spec, mid) > 2.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * hi:
            break
    return 0.5 * (lo + hi)


def tail_params(spec: NoiseSpec) -> TailParams:
    """Certified constants: sub-Weibull (theta, nu) or polynomial (p, kappa),
    plus the exact second moment sigma^2 = target."""
    if spec.kind == GAUSSIAN:
        return TailParams(kind=spec.kind, sigma2=spec.target,
                          theta=0.5, nu=solve_nu(spec))
    if spec.kind == SYM_WEIBULL:
        return TailParams(kind=spec.kind, sigma2=spec.target,
                          theta=spec.theta, nu=solve_nu(spec))
    scale = unit_variance_scale(spec)
    kappa = scale * (spec.p + 1.0) ** (1.0 / spec.p)
    return TailParams(kind=spec.kind, sigma2=spec.target,
                      p=spec.p, kappa=kappa)
