"""Numerical verification of the deterministic per-run inequalities.

Every check here evaluates both sides of an inequality that holds *surely*
(not just with high probability) on any SMD trace, and reports the worst
signed violation ``max_t (LHS_t - RHS_t)``.  A check passes when that
violation is at most a tolerance proportional to the magnitude of the terms
involved (floored at 1e-10), since the two sides can span many orders of
magnitude across tail classes.  A genuine violation is a hard failure: it
would falsify the algebra, not a tail event.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import gamma_value
from .geometry import EUCLIDEAN, MirrorSetup, bregman
from .noise import NoiseSpec, stream
from .problems import make_problem
from .smd import RunTrace, StepSchedule, run_smd

REL_TOL = 1e-7
ABS_TOL_FLOOR = 1e-10


def slack_tolerance(scale: float, rel: float = REL_TOL) -> float:
    return max(ABS_TOL_FLOOR, rel * (1.0 + abs(scale)))


@dataclass
class DiagnosticReport:
    name: str
    max_violation: float          # max over steps of LHS - RHS (<= 0 is clean)
    worst_index: int
    tol: float
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol


@dataclass
class DSequence:
    """Running max of root divergences to the minimizer, anchored at gamma."""
    gamma: float
    d: np.ndarray                 # d_t = sqrt(B(x*, x_t)), t = 1 .. T+1
    D: np.ndarray                 # D_t = max(gamma, d_1, ..., d_t)


def ceil_half(T: int) -> int:
    return (T + 1) // 2


# ---------------------------------------------------------------------------
# basic per-trace quantities
# ---------------------------------------------------------------------------

def _breg_to(trace: RunTrace, z: np.ndarray) -> np.ndarray:
    """B(z, x_t) for every stored iterate."""
    return np.array([bregman(trace.setup, z, x) for x in trace.xs])


def _dual_sq(trace: RunTrace, vs: np.ndarray) -> np.ndarray:
    return np.array([trace.setup.dual(v) ** 2 for v in vs])


def d_sequence(trace: RunTrace, gamma: float) -> DSequence:
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    d = np.sqrt(np.maximum(_breg_to(trace, trace.problem.x_star), 0.0))
    return DSequence(gamma=gamma, d=d,
                     D=np.maximum.accumulate(np.maximum(d, gamma)))


# ---------------------------------------------------------------------------
# one-step and weighted inequalities
# ---------------------------------------------------------------------------

def check_one_step(trace: RunTrace, z) -> DiagnosticReport:
    """Per-step regret inequality against any feasible comparator z:
    f(x_t) - f(z) <= (B(z,x_t) - B(z,x_{t+1})) / eta_t + <xi_t, x_t - z>
                     + (eta_t / 2) ||ghat_t||_*^2."""
    z = np.asarray(z, float)
    if not trace.setup.contains(z):
        raise ValueError("comparator z must be feasible")
    T = trace.T
    bz = _breg_to(trace, z)
    fz = trace.problem.value(z)
    fvals = trace.err_last + trace.problem.f_star
    lhs = fvals[:T] - fz
    inner = np.array([float(np.dot(trace.xis[t], trace.xs[t] - z))
                      for t in range(T)])
    gsq = _dual_sq(trace, trace.ghats)
    rhs = (bz[:T] - bz[1:]) / trace.etas + inner + 0.5 * trace.etas * gsq
    viol = lhs - rhs
    worst = int(np.argmax(viol))
    scale = max(np.max(np.abs(rhs)), np.max(np.abs(lhs)), np.max(bz) )
    return DiagnosticReport(name="one-step", max_violation=float(viol[worst]),
                            worst_index=worst + 1, tol=slack_tolerance(scale))


def check_weighted_iterates(trace: RunTrace, z, weights, s: int) -> DiagnosticReport:
    """Weighted telescoped inequality at step s for non-increasing positive
    weights; with unit weights it is the plain telescoped sum, and with
    w_t = 1/D_t it is the averaging step of the main average-iterate bound."""
    w = np.asarray(weights, float)
    if np.any(w <= 0):
        raise ValueError("weights must be positive")
    if np.any(np.diff(w) > 0):
        raise ValueError("weights must be non-increasing")
    if not 1 <= s <= trace.T or len(w) < s:
        raise ValueError("need 1 <= s <= T and len(weights) >= s")
    z = np.asarray(z, float)
    bz = _breg_to(trace, z)
    fz = trace.problem.value(z)
    fvals = trace.err_last + trace.problem.f_star
    eta = trace.etas[:s]
    wv = w[:s]
    lhs = wv[-1] * bz[s] + float(np.sum(wv * eta * (fvals[:s] - fz)))
    gsq = _dual_sq(trace, trace.ghats[:s])
    inner = np.array([float(np.dot(trace.xis[t], trace.xs[t] - z))
                      for t in range(s)])
    rhs_terms = (wv[0] * bz[0],
                 float(np.sum(0.5 * wv * eta ** 2 * gsq)),
                 float(np.sum(wv * eta * inner)))
    rhs = sum(rhs_terms)
    scale = max(abs(lhs), *(abs(t) for t in rhs_terms))
    return DiagnosticReport(name="weighted-iterates", max_violation=lhs - rhs,
                            worst_index=s, tol=slack_tolerance(scale),
                            params={"s": s})


def check_iterate_comparison(trace: RunTrace, j: int, r: int) -> DiagnosticReport:
    """Two-index comparison inequality with eta_tilde_t = 1/eta_t - 1/eta_{t-1}:
    B(x_j, x_{r+1})/eta_r + sum_{t=j}^r (f(x_t) - f(x_j))
      <= sum <xi_t, x_t - x_j> + (1/2) sum eta_t ||ghat_t||_*^2
         + sum eta_tilde_t B(x_j, x_t)."""
    if not 1 <= j <= r <= trace.T:
        raise ValueError("need 1 <= j <= r <= T")
    viol, scale = _iterate_comparison_violation(trace, j, (r,))
    return DiagnosticReport(name="iterate-comparison", max_violation=viol[0],
                            worst_index=r, tol=slack_tolerance(scale),
                            params={"j": j, "r": r})


def _eta_tilde(trace: RunTrace) -> np.ndarray:
    inv = 1.0 / trace.etas
    out = np.empty_like(inv)
    out[0] = inv[0]
    out[1:] = inv[1:] - inv[:-1]
    return out


def _breg_matrix(trace: RunTrace, rows: int) -> np.ndarray:
    """Bm[j-1, t-1] = B(x_j, x_t) for j = 1..rows, t = 1..T+1, vectorized."""
    xs = trace.xs
    if trace.setup.regularizer == EUCLIDEAN:
        diff = xs[:rows, None, :] - xs[None, :, :]
        return 0.5 * np.sum(diff * diff, axis=2)
    logs = np.log(xs)                      # simplex iterates stay positive
    ent = np.sum(xs[:rows] * logs[:rows], axis=1)
    sums = np.sum(xs, axis=1)
    return ent[:, None] - xs[:rows] @ logs.T - sums[:rows, None] + sums[None, :]


def _iterate_comparison_violation(trace: RunTrace, j: int, rs) -> tuple[np.ndarray, float]:
    """Violations of the comparison inequality at fixed j for each r in rs."""
    T = trace.T
    fvals = trace.err_last + trace.problem.f_star
    gsq = _dual_sq(trace, trace.ghats)
    et = _eta_tilde(trace)
    Bm = _breg_matrix(trace, T)
    inner = np.array([float(np.dot(trace.xis[t], trace.xs[t] - trace.xs[j - 1]))
                      for t in range(j - 1, T)])
    fdiff = fvals[j - 1:T] - fvals[j - 1]
    bterm = et[j - 1:] * Bm[j - 1, j - 1:T]
    cum_inner = np.cumsum(inner)
    cum_g = np.cumsum(0.5 * trace.etas[j - 1:] * gsq[j - 1:])
    cum_b = np.cumsum(bterm)
    cum_f = np.cumsum(fdiff)
    viols = np.empty(len(rs))
    scale = 0.0
    for i, r in enumerate(rs):
        k = r - j
        lhs = Bm[j - 1, r] / trace.etas[r - 1] + cum_f[k]
        rhs = cum_inner[k] + cum_g[k] + cum_b[k]
        viols[i] = lhs - rhs
        scale = max(scale, abs(lhs), abs(cum_inner[k]), cum_g[k], abs(cum_b[k]))
    return viols, scale


def check_iterate_comparison_all(trace: RunTrace) -> DiagnosticReport:
    """Exhaustive sweep of the comparison inequality over every pair j <= r."""
    T = trace.T
    worst = -math.inf
    worst_pair = (1, 1)
    scale = 0.0
    for j in range(1, T + 1):
        viols, sc = _iterate_comparison_violation(trace, j, range(j, T + 1))
        scale = max(scale, sc)
        i = int(np.argmax(viols))
        if viols[i] > worst:
            worst, worst_pair = float(viols[i]), (j, j + i)
    return DiagnosticReport(name="iterate-comparison-all", max_violation=worst,
                            worst_index=worst_pair[1], tol=slack_tolerance(scale),
                            params={"pair": worst_pair})


# ---------------------------------------------------------------------------
# the divergence-recursion closure behind the average-iterate bound
# ---------------------------------------------------------------------------

def check_d_recursion(trace: RunTrace, gamma: float) -> DiagnosticReport:
    """With B_T = d_1 + max(gamma, sum_t (eta_t^2/2)||ghat_t||^2 / gamma)
    + sqrt(2) [max_s sum_{t<=s} eta_t <xi_t, (x_t - x*)/(sqrt(2) D_t)>]_+,
    every D_s (s <= T) is at most B_T."""
    T = trace.T
    ds = d_sequence(trace, gamma)
    u = trace.xs[:T] - trace.problem.x_star[None, :]
    inner = np.array([float(np.dot(trace.xis[t], u[t])) for t in range(T)])
    mart = np.cumsum(trace.etas * inner / (math.sqrt(2.0) * ds.D[:T]))
    gsq = _dual_sq(trace, trace.ghats)
    b_t = ds.d[0] \
        + max(gamma, float(np.sum(0.5 * trace.etas ** 2 * gsq)) / gamma) \
        + math.sqrt(2.0) * max(0.0, float(np.max(mart)))
    viol = ds.D[:T] - b_t
    worst = int(np.argmax(viol))
    return DiagnosticReport(name="d-recursion", max_violation=float(viol[worst]),
                            worst_index=worst + 1, tol=slack_tolerance(b_t),
                            params={"gamma": gamma, "B_T": b_t})


# ---------------------------------------------------------------------------
# combinatorial identities for the last-iterate weights
# ---------------------------------------------------------------------------

def alpha_sum(a: int, b: int, T: int) -> float:
    """sum_{j=a}^{b} 1/((T-j)(T-j+1)), asserted against its telescoped value
    1/(T-b) - 1/(T-a+1) to 1e-12."""
    if not 1 <= a <= b < T:
        raise ValueError("need 1 <= a <= b < T")
    total = math.fsum(1.0 / ((T - j) * (T - j + 1.0)) for j in range(a, b + 1))
    closed = 1.0 / (T - b) - 1.0 / (T - a + 1.0)
    if abs(total - closed) > 1e-12:
        raise AssertionError(f"alpha-sum identity broke: {total} vs {closed}")
    return total


def rho_sequence(T: int) -> np.ndarray:
    """rho_t = sum_{j=ceil(T/2)}^{min(t, T-1)} alpha_j for t = ceil(T/2) .. T."""
    t0 = ceil_half(T)
    js = np.arange(t0, T, dtype=float)             # j = t0 .. T-1
    alpha = 1.0 / ((T - js) * (T - js + 1.0))
    cum = np.concatenate(([0.0], np.cumsum(alpha)))
    ts = np.arange(t0, T + 1)
    idx = np.minimum(ts, T - 1) - t0 + 1
    return cum[np.maximum(idx, 0)]


def alpha_double_sums(T: int) -> tuple[float, float]:
    """(sum rho_t, sum rho_t^2) over t = ceil(T/2)..T; the first is at most
    log(4T), the second at most 3, and both are asserted."""
    rho = rho_sequence(T)
    s1 = float(math.fsum(rho))
    s2 = float(math.fsum(rho * rho))
    if s1 > math.log(4.0 * T) + 1e-12 or s2 > 3.0 + 1e-12:
        raise AssertionError(f"alpha double-sum bounds broke at T={T}")
    return s1, s2


def rho_max_summary(T: int) -> dict:
    """Directly summed max rho_t versus the proof-sketch value 1/2.

    The direct telescoped value is rho_T = 1 - 1/(floor(T/2)+1), which equals
    1/2 only at T = 2; the summary flags the gap rather than resolving it.
    """
    rho = rho_sequence(T)
    direct = float(np.max(rho))
    closed = 1.0 - 1.0 / (T // 2 + 1.0) if T >= 2 else 0.0
    return {"T": T, "max_rho_direct": direct, "closed_form": closed,
            "proof_sketch_value": 0.5,
            "matches_sketch": abs(direct - 0.5) < 1e-12}


# ---------------------------------------------------------------------------
# last-iterate decomposition and its three lemmas
# ---------------------------------------------------------------------------

@dataclass
class LastIterateDecomp:
    """Everything entering the last-iterate recursion, computed from a trace."""
    t0: int                        # ceil(T/2)
    ts: np.ndarray                 # t = t0 .. T
    w: np.ndarray                  # (len(ts), d)
    z: np.ndarray
    rho: np.ndarray
    q: np.ndarray                  # increments <xi_t, w_t>
    Q: np.ndarray                  # partial sums
    tcv: np.ndarray                # running sum of E_t <xi_t, w_t>^2
    tqv: np.ndarray                # running sum of <xi_t, w_t>^2
    n_star: int                    # first argmax of Q (as a step index)
    z_star: float


def last_iterate_decomposition(trace: RunTrace,
                               mc_resamples: int = 10_000) -> LastIterateDecomp:
    """Compute the alpha-weighted vectors/scalars of the last-iterate analysis.

    Stated for the eta/sqrt(t) schedule only.  The conditional second moment
    E_t <xi_t, w_t>^2 is exact in one dimension (sigma^2 w_t^2) and otherwise
    estimated by Monte Carlo over ``mc_resamples`` fresh unit directions of
    the run's dual norm, drawn once from a stream derived from the trace seed.
    """
    if trace.schedule.kind != "inverse-sqrt":
        raise ValueError("the last-iterate decomposition is defined for the "
                         "eta/sqrt(t) schedule")
    T = trace.T
    t0 = ceil_half(T)
    d = trace.xs.shape[1]
    ts = np.arange(t0, T + 1)
    js = np.arange(t0, T)
    alpha = 1.0 / ((T - js) * (T - js + 1.0)) if js.size else np.empty(0)

    w = np.zeros((ts.size, d))
    zv = np.zeros(ts.size)
    rho = np.zeros(ts.size)
    for i, t in enumerate(ts):
        jmax = min(t, T - 1)
        if jmax < t0:
            continue
        k = jmax - t0 + 1
        xj = trace.xs[t0 - 1:jmax]            # x_j, j = t0..jmax
        xt = trace.xs[t - 1]
        a = alpha[:k]
        w[i] = np.sum(a[:, None] * (xt[None, :] - xj), axis=0)
        zv[i] = float(np.sum(a * np.array(
            [bregman(trace.setup, x, xt) for x in xj])))
        rho[i] = float(np.sum(a))

    q = np.array([float(np.dot(trace.xis[t - 1], w[i]))
                  for i, t in enumerate(ts)])
    Q = np.cumsum(q)

    sigma2 = trace.sigma2()
    if d == 1 or sigma2 == 0.0:
        cond_sq = sigma2 * np.sum(w * w, axis=1)
    else:
        from .noise import _unit_directions
        gen = stream(trace.seed, 9001)
        dirs = _unit_directions(gen, mc_resamples, d, trace.setup.dual_norm)
        proj = dirs @ w.T                     # (mc, len(ts))
        cond_sq = sigma2 * np.mean(proj * proj, axis=0)
    tcv = np.cumsum(cond_sq)
    tqv = np.cumsum(q * q)

    n_star = int(ts[int(np.argmax(Q))])
    return LastIterateDecomp(t0=t0, ts=ts, w=w, z=zv, rho=rho, q=q, Q=Q,
                             tcv=tcv, tqv=tqv, n_star=n_star,
                             z_star=float(np.max(zv)))


def check_w_bound(trace: RunTrace, decomp: LastIterateDecomp) -> DiagnosticReport:
    """||w_t||^2 <= 2 rho_t z_t in the primal norm, for every t."""
    wn = np.array([trace.setup.norm(v) ** 2 for v in decomp.w])
    rhs = 2.0 * decomp.rho * decomp.z
    viol = wn - rhs
    worst = int(np.argmax(viol))
    scale = float(np.max(rhs)) if rhs.size else 0.0
    return DiagnosticReport(name="w-sq-bound", max_violation=float(viol[worst]),
                            worst_index=int(decomp.ts[worst]),
                            tol=slack_tolerance(scale))


def check_last_iterate_lemmas(trace: RunTrace, decomp: LastIterateDecomp
                              ) -> dict[str, DiagnosticReport]:
    """Signed slacks of the three last-iterate lemmas on one trace.

    * recursion:  f(x_T) - f* against the unrolled suffix bound;
    * max-z:      z* against its bound through Q_{n*};
    * tqv-tcv:    <Q>_T + [Q]_T against 4 sigma^2 z* log(4T) plus the
                  centered weighted squared-norm sum.
    """
    T = trace.T
    eta = trace.schedule.eta
    sigma2 = trace.sigma2()
    idx = decomp.ts - 1
    delta_f = trace.err_last[idx]                  # f(x_t) - f*, t = t0..T
    gsq = _dual_sq(trace, trace.ghats[idx])        # ghat_t for t = t0..T
    rho_g = float(np.sum(decomp.rho * gsq))
    sum_delta = float(np.sum(delta_f))
    sum_z = float(np.sum(decomp.z))

    lhs1 = trace.err_last[T - 1]                   # f(x_T) - f*
    q_total = float(decomp.Q[-1]) if decomp.Q.size else 0.0
    terms1 = (2.0 / T * sum_delta, q_total,
              eta / math.sqrt(2.0 * T) * rho_g,
              math.sqrt(2.0) / (eta * math.sqrt(T)) * sum_z)
    rep1 = DiagnosticReport(
        name="last-iterate-recursion", max_violation=lhs1 - sum(terms1),
        worst_index=T, tol=slack_tolerance(max(abs(v) for v in terms1)))

    q_nstar = float(decomp.Q[decomp.n_star - decomp.t0])
    terms2 = (6.0 * math.sqrt(2.0) * eta / (T * math.sqrt(T)) * sum_delta,
              3.0 * math.sqrt(2.0) * eta / math.sqrt(T) * q_nstar,
              3.0 * eta ** 2 / T * rho_g)
    rep2 = DiagnosticReport(
        name="max-z", max_violation=decomp.z_star - sum(terms2),
        worst_index=decomp.n_star,
        tol=slack_tolerance(max(abs(v) for v in terms2)))

    xi_sq = _dual_sq(trace, trace.xis[idx])
    centered = float(np.sum(decomp.rho * (xi_sq - sigma2)))
    lhs3 = float(decomp.tcv[-1] + decomp.tqv[-1])
    rhs3_terms = (4.0 * sigma2 * decomp.z_star * math.log(4.0 * T),
                  2.0 * decomp.z_star * centered)
    rep3 = DiagnosticReport(
        name="tqv-tcv", max_violation=lhs3 - sum(rhs3_terms), worst_index=T,
        tol=slack_tolerance(max(abs(lhs3), *(abs(v) for v in rhs3_terms))))

    return {"recursion": rep1, "max-z": rep2, "tqv-tcv": rep3}


# ---------------------------------------------------------------------------
# randomized trace grid and the full deterministic suite
# ---------------------------------------------------------------------------

_SETUPS = (
    MirrorSetup(),
    MirrorSetup(domain="l2-ball", radius=2.0),
    MirrorSetup(domain="box", lo=(-1.0, -1.5), hi=(2.0, 1.0)),
    MirrorSetup(regularizer="neg-entropy", domain="simplex"),
)
_SETUP_DIMS = (2, 2, 2, 3)
_SCHEDULE_KINDS = ("constant", "inverse-sqrt")
_NOISE_RECIPES = (
    ("gaussian", None, None, 1.0),
    ("sym-weibull", 1.0, None, 1.0),
    ("sym-weibull", 2.0, None, 0.25),
    ("sym-poly", None, 5.0, 1.0),
    ("sym-poly", None, 6.0, 0.25),
)


def _interior_point(setup: MirrorSetup, d: int, gen) -> np.ndarray:
    if setup.domain == "unconstrained":
        return gen.normal(0.0, 1.5, d)
    if setup.domain == "l2-ball":
        v = gen.normal(size=d)
        return v / np.linalg.norm(v) * setup.radius * 0.8 * gen.uniform(0.1, 1.0)
    if setup.domain == "box":
        lo, hi = np.asarray(setup.lo), np.asarray(setup.hi)
        return lo + (hi - lo) * gen.uniform(0.1, 0.9, size=lo.size)
    w = np.maximum(gen.dirichlet(np.ones(d)), 1e-3)
    return w / np.sum(w)


def standard_traces(n_traces: int, t_values=(1, 2, 4, 64),
                    base_seed: int = 0) -> list[RunTrace]:
    """Random traces spanning setups x schedules x noise classes x horizons."""
    traces = []
    for i in range(n_traces):
        gen = stream(base_seed, 601, i)
        k = i % len(_SETUPS)
        setup = _SETUPS[k]
        d = _SETUP_DIMS[k]
        objective = ("abs-sum", "piecewise-linear-max", "quadratic")[i % 3]
        if objective == "quadratic" and setup.domain == "unconstrained":
            objective = "abs-sum"
        center = _interior_point(setup, d, gen)
        problem = make_problem(objective, center, setup)
        schedule = StepSchedule(kind=_SCHEDULE_KINDS[i % 2],
                                eta=float(gen.uniform(0.1, 1.0)))
        kind, theta, p, target = _NOISE_RECIPES[i % len(_NOISE_RECIPES)]
        noise = NoiseSpec(kind=kind, theta=theta, p=p, target=target, d=d,
                          dual_norm=setup.dual_norm)
        T = int(t_values[i % len(t_values)])
        x1 = _interior_point(setup, d, gen)
        traces.append(run_smd(problem, setup, schedule, noise, T, x1,
                              seed=base_seed * 1_000_003 + i))
    return traces


def suite_gamma(trace: RunTrace) -> float:
    """gamma anchored at sqrt(sum eta_t^2 (G^2 + sigma^2)) for this run."""
    s = float(np.sum(trace.etas ** 2)) * (trace.problem.G ** 2 + trace.sigma2())
    return gamma_value(0.0, s)


def run_deterministic_suite(traces) -> list[DiagnosticReport]:
    """Every surely-true inequality on every trace; one report per check."""
    reports = []
    for i, trace in enumerate(traces):
        gen = stream(trace.seed, 907)
        z_rand = _interior_point(trace.setup, trace.xs.shape[1], gen)
        gamma = suite_gamma(trace)
        ds = d_sequence(trace, gamma)

        for tag, z in (("x-star", trace.problem.x_star), ("random-z", z_rand)):
            rep = check_one_step(trace, z)
            rep.params.update(trace=i, z=tag)
            reports.append(rep)

        w_inv_d = 1.0 / ds.D[:trace.T]
        rep = check_weighted_iterates(trace, trace.problem.x_star, w_inv_d,
                                      trace.T)
        rep.params.update(trace=i, weights="1/D_t")
        reports.append(rep)
        w_rand = np.sort(gen.uniform(0.2, 2.0, trace.T))[::-1]
        rep = check_weighted_iterates(trace, z_rand, w_rand, trace.T)
        rep.params.update(trace=i, weights="random")
        reports.append(rep)

        rep = check_iterate_comparison_all(trace)
        rep.params.update(trace=i)
        reports.append(rep)

        rep = check_d_recursion(trace, gamma)
        rep.params.update(trace=i)
        reports.append(rep)

        if trace.schedule.kind == "inverse-sqrt":
            decomp = last_iterate_decomposition(trace)
            rep = check_w_bound(trace, decomp)
            rep.params.update(trace=i)
            reports.append(rep)
            for name, rep in check_last_iterate_lemmas(trace, decomp).items():
                rep.params.update(trace=i)
                reports.append(rep)
    return reports


def summarize_reports(reports) -> list[dict]:
    """Worst case per check name: count, max violation, tolerance, pass."""
    rows = {}
    for rep in reports:
        row = rows.setdefault(rep.name, {"check": rep.name, "count": 0,
                                         "max_violation": -math.inf,
                                         "tol": 0.0, "passed": True})
        row["count"] += 1
        if rep.max_violation > row["max_violation"]:
            row["max_violation"] = rep.max_violation
            row["tol"] = rep.tol
        row["passed"] &= rep.passed
    return [rows[k] for k in sorted(rows)]
