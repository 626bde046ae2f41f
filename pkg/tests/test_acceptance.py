"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Budgets: the whole
module finishes in a few minutes on a laptop; each criterion also asserts
its own runtime ceiling.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from mirrortail import concentration as conc
from mirrortail import diagnostics as diag
from mirrortail.experiments import (ExperimentConfig, emit_results,
                                    fixed_horizon_experiment)
from mirrortail.noise import NoiseSpec


def _report(num: int, desc: str, ok: bool) -> None:
    print(f"\nACCEPTANCE {num} [{desc}]: {'PASS' if ok else 'FAIL'}")


# ---------------------------------------------------------------------------
# 1. deterministic inequality suite on 1000 random traces
# ---------------------------------------------------------------------------

def test_criterion_1_deterministic_inequalities():
    t0 = time.time()
    traces = diag.standard_traces(1000, t_values=(1, 2, 4, 64), base_seed=20)
    reports = diag.run_deterministic_suite(traces)
    elapsed = time.time() - t0

    failures = [r for r in reports if not r.passed]
    names = {r.name for r in reports}
    expected = {"one-step", "weighted-iterates", "iterate-comparison-all",
                "d-recursion", "w-sq-bound", "last-iterate-recursion",
                "max-z", "tqv-tcv"}
    ok = not failures and expected <= names and elapsed < 120.0
    _report(1, "deterministic inequality suite, 1000 traces", ok)
    print(f"  checks={len(reports)} failures={len(failures)} "
          f"time={elapsed:.1f}s")
    for row in diag.summarize_reports(reports):
        print(f"  {row['check']:<24} n={row['count']:<5} "
              f"worst={row['max_violation']:+.3e} tol={row['tol']:.1e}")
    assert not failures
    assert expected <= names
    assert elapsed < 120.0


# ---------------------------------------------------------------------------
# 2. exact combinatorics
# ---------------------------------------------------------------------------

def test_criterion_2_exact_combinatorics():
    t0 = time.time()
    worst = 0.0
    for T in range(2, 201):
        j = np.arange(1.0, T)
        alpha = 1.0 / ((T - j) * (T - j + 1.0))
        prefix = np.concatenate(([0.0], np.cumsum(alpha)))
        a = np.arange(1, T)
        b = np.arange(1, T)
        sums = prefix[b][None, :] - prefix[a - 1][:, None]
        closed = (1.0 / (T - b))[None, :] - (1.0 / (T - a + 1.0))[:, None]
        mask = a[:, None] <= b[None, :]
        worst = max(worst, float(np.max(np.abs(sums - closed)[mask])))
    identity_ok = worst <= 1e-12

    # exercise the checked op itself on a sample of triples
    gen = np.random.default_rng(2)
    for _ in range(300):
        T = int(gen.integers(2, 201))
        a = int(gen.integers(1, T))
        b = int(gen.integers(a, T))
        diag.alpha_sum(a, b, T)          # raises if the identity breaks

    sums_ok = True
    for T in range(1, 501):
        s1, s2 = diag.alpha_double_sums(T)   # asserts the two bounds
        sums_ok &= s1 <= math.log(4.0 * T) + 1e-12 and s2 <= 3.0 + 1e-12
    elapsed = time.time() - t0

    ok = identity_ok and sums_ok and elapsed < 5.0
    _report(2, "alpha-sum identity and double-sum bounds", ok)
    print(f"  worst identity error={worst:.2e} time={elapsed:.2f}s")
    assert identity_ok and sums_ok
    assert elapsed < 5.0


# ---------------------------------------------------------------------------
# 3. concentration validators at 1e5 trials
# ---------------------------------------------------------------------------

TRIALS = 100_000


def _criterion3_configs():
    inv_sqrt_1000 = 1.0 / np.sqrt(np.arange(1.0, 1001.0))
    inv_t_1000 = 1.0 / np.arange(1.0, 1001.0)
    yield "E2(i) theta=1/2 m=1 n=100 d=.05", lambda: conc.validate_subw_maximal(
        0.5, 1.0, n=100, delta=0.05, trials=TRIALS, seed=31)
    yield "E2(i) zero scales", lambda: conc.validate_subw_maximal(
        0.5, 0.0, n=100, delta=0.05, trials=TRIALS, seed=32)
    for s in (0.0, 2.0, 3.0):
        yield (f"E2(ii) theta=1 m=1/sqrt(i) n=1000 d=.01 s={s}",
               lambda s=s: conc.validate_subw_maximal(
                   1.0, 1.0 / np.sqrt(np.arange(1.0, 1001.0)), delta=0.01,
                   s=s, trials=TRIALS, seed=33))
        yield (f"E2(ii) theta=2 m=1 n=100 d=.05 s={s}",
               lambda s=s: conc.validate_subw_maximal(
                   2.0, 1.0, n=100, delta=0.05, s=s, trials=TRIALS, seed=34))
    yield "E2(ii) adversarial-scaled theta=2", lambda: conc.validate_subw_maximal(
        2.0, 1.0, n=100, delta=0.05, s=2.0, trials=TRIALS,
        increment_class="adversarial-scaled", seed=35)
    yield "E3 p=5 k=1 n=100 d=.05", lambda: conc.validate_fuk_nagaev(
        5.0, 1.0, n=100, delta=0.05, trials=TRIALS, seed=36)
    yield "E3 delta=1 degenerate", lambda: conc.validate_fuk_nagaev(
        5.0, 1.0, n=100, delta=1.0, trials=TRIALS, seed=37)
    yield "E3 k=1/sqrt(i) n=1000", lambda: conc.validate_fuk_nagaev(
        5.0, 1.0 / np.sqrt(np.arange(1.0, 1001.0)), delta=0.05,
        trials=TRIALS, seed=38)
    yield "P1 rademacher a=0 b=200 x=40", lambda: conc.validate_chicken_egg(
        0.0, 200.0, 40.0, conc.MartingaleGen("rademacher",
                                             tuple(np.ones(100))),
        trials=TRIALS, seed=39)
    yield "P1 huge x", lambda: conc.validate_chicken_egg(
        0.0, 200.0, 1e6, conc.MartingaleGen("rademacher",
                                            tuple(np.ones(100))),
        trials=TRIALS, seed=40)
    yield "P1 gaussian a=1 b=1 x=12", lambda: conc.validate_chicken_egg(
        1.0, 1.0, 12.0, conc.MartingaleGen("gaussian",
                                           tuple(0.5 * np.ones(100))),
        trials=TRIALS, seed=41)
    yield "B1 zero weights", lambda: conc.validate_weighted_shortcuts(
        "weibull", "inner-product", np.zeros(100), delta=0.05, trials=TRIALS,
        theta=1.0, phi=1.0, seed=42)
    yield "B1 inner theta=1 w=1/sqrt(t) s=3", \
        lambda: conc.validate_weighted_shortcuts(
            "weibull", "inner-product", inv_sqrt_1000, delta=0.05,
            trials=TRIALS, theta=1.0, phi=1.0, s=3.0, seed=43)
    yield "B1 sqnorm theta=1 w=1/t s=2", \
        lambda: conc.validate_weighted_shortcuts(
            "weibull", "squared-norm", inv_t_1000, delta=0.05, trials=TRIALS,
            theta=1.0, phi=1.0, s=2.0, seed=44)
    yield "B2 inner p=5 w=1/t", lambda: conc.validate_weighted_shortcuts(
        "poly", "inner-product", inv_t_1000, delta=0.05, trials=TRIALS,
        p=5.0, phi=1.0, seed=45)
    yield "B2 sqnorm p=5 w=1/t", lambda: conc.validate_weighted_shortcuts(
        "poly", "squared-norm", inv_t_1000, delta=0.05, trials=TRIALS,
        p=5.0, phi=1.0, seed=46)
    yield "E1 theta=1 nu=1 p=2", lambda: conc.check_subw_moment(
        1.0, 1.0, 2.0, trials=TRIALS, seed=47)
    yield "E1 p->0 sanity", lambda: conc.check_subw_moment(
        1.0, 1.0, 1e-6, trials=TRIALS, seed=48)
    yield "E1 theta=2 nu=1 p=1", lambda: conc.check_subw_moment(
        2.0, 1.0, 1.0, trials=TRIALS, seed=49)
    yield "E2-centering theta=1", lambda: conc.check_centering(
        1.0, 1.0, trials=TRIALS, seed=50)
    yield "E2-centering symmetric", lambda: conc.check_centering(
        1.0, 1.0, trials=TRIALS, symmetric=True, seed=51)
    yield "E2-centering theta=2", lambda: conc.check_centering(
        2.0, 1.0, trials=TRIALS, seed=52)


def test_criterion_3_concentration_validators():
    t0 = time.time()
    rows = []
    for desc, job in _criterion3_configs():
        rows.append((desc, job()))
    # MGF checks (several lambdas per report)
    nu_g = math.sqrt(8.0 / 3.0)
    for rep in conc.check_mgf_bounds(0.5, nu_g, [0.0, 0.5], trials=TRIALS,
                                     seed=53):
        rows.append((f"E3-mgf theta=1/2 lam={rep.params['lambda']}", rep))
    lam_max = 1.0 / (2.0 * math.e)
    for rep in conc.check_mgf_bounds(1.0, 1.0, [0.0, lam_max], trials=TRIALS,
                                     seed=54):
        rows.append((f"E3-mgf theta=1 lam={rep.params['lambda']:.4f}", rep))
    for rep in conc.check_mgf_bounds(2.0, 1.0, [0.0, 0.1, 0.25], h=4.0,
                                     trials=TRIALS, seed=55):
        rows.append((f"E3-mgf theta=2 h=4 lam={rep.params['lambda']}", rep))
    elapsed = time.time() - t0

    bad = [(d, r) for d, r in rows if not r.passed]
    ok = not bad and elapsed < 900.0
    _report(3, f"concentration validators ({len(rows)} configs, "
               f"{TRIALS} trials each)", ok)
    for desc, r in rows:
        if isinstance(r, conc.ViolationEstimate):
            print(f"  {desc:<44} rate={r.rate:.2e} cap={r.target:.2e}")
        else:
            print(f"  {desc:<44} est={r.estimate:.4g} bound={r.bound:.4g}")
    print(f"  time={elapsed:.0f}s")
    assert not bad, [d for d, _ in bad]
    assert elapsed < 900.0


# ---------------------------------------------------------------------------
# 4 + 5. desk-scale experiment replication and byte-level determinism
# ---------------------------------------------------------------------------

# Pinned desk-scale config.  The two-regime gap-ratio property is a
# distributional signature: at 20k runs the average-iterate p99 gap ratio
# moves 0.65 -> 0.41 between T=100 and T=1000; this seed's 2k-run estimates
# (0.68 -> 0.41) sit at those reference values.
DESK = ExperimentConfig(
    runs=2000,
    t_grid=(100, 147, 215, 316, 464, 681, 1000),
    base_seed=20_250_101,
    noises=(NoiseSpec(kind="gaussian"),
            NoiseSpec(kind="sym-weibull", theta=1.0),
            NoiseSpec(kind="sym-weibull", theta=2.0),
            NoiseSpec(kind="sym-weibull", theta=10.0 / 3.0)),
)


@pytest.fixture(scope="module")
def desk_rows():
    t0 = time.time()
    rows = fixed_horizon_experiment(DESK)
    return rows, time.time() - t0


def test_criterion_4_desk_scale_replication(desk_rows):
    rows, elapsed = desk_rows
    tbl = {(s.noise_class, s.theta_or_p, s.T, s.iterate_kind):
           (s.mean_err, s.quantile_err) for s in rows}
    ts = DESK.t_grid
    classes = [("gaussian", 0.5), ("sym-weibull", 1.0), ("sym-weibull", 2.0),
               ("sym-weibull", 10.0 / 3.0)]

    def p99(cls, top, T, kind):
        return tbl[(cls, top, T, kind)][1]

    def mean(cls, top, T, kind):
        return tbl[(cls, top, T, kind)][0]

    # (a) two-regime convergence of the averaged iterate toward gaussian
    gap = {T: (p99("sym-weibull", 10.0 / 3.0, T, "average")
               - p99("gaussian", 0.5, T, "average"))
           / p99("gaussian", 0.5, T, "average") for T in (ts[0], ts[-1])}
    a_ok = gap[ts[-1]] < gap[ts[0]]

    # (b) persistent last-iterate separation at every horizon
    b_ok = all(p99("sym-weibull", 10.0 / 3.0, T, "last")
               > p99("gaussian", 0.5, T, "last") for T in ts)

    # (c) mean-error decay rate for both iterate kinds, every class
    slopes = {}
    for kind in ("average", "last"):
        for cls, top in classes:
            ys = [mean(cls, top, T, kind) for T in ts]
            slopes[(cls, top, kind)] = float(
                np.polyfit(np.log(ts), np.log(ys), 1)[0])
    c_ok = all(-0.65 <= v <= -0.35 for v in slopes.values())

    # (d) means nearly identical across noise classes at each horizon
    spreads = {}
    for kind in ("average", "last"):
        for T in ts:
            ms = [mean(cls, top, T, kind) for cls, top in classes]
            spreads[(kind, T)] = (max(ms) - min(ms)) / min(ms)
    d_ok = all(v <= 0.25 for v in spreads.values())

    runtime_ok = elapsed < 600.0
    ok = a_ok and b_ok and c_ok and d_ok and runtime_ok
    _report(4, "desk-scale percentile replication", ok)
    print(f"  (a) avg-iterate p99 gap ratio {gap[ts[0]]:.3f} -> "
          f"{gap[ts[-1]]:.3f}  shrinks={a_ok}")
    print(f"  (b) last-iterate separation at every T: {b_ok}")
    print(f"  (c) slopes in [-0.65,-0.35]: {c_ok} "
          f"(range {min(slopes.values()):.3f} .. {max(slopes.values()):.3f})")
    print(f"  (d) max mean spread across classes: "
          f"{max(spreads.values()):.3f} <= 0.25: {d_ok}")
    print(f"  runtime {elapsed:.1f}s")
    assert a_ok and b_ok and c_ok and d_ok and runtime_ok


def test_criterion_5_byte_identical_artifacts(tmp_path, desk_rows):
    rows, _ = desk_rows
    f_base = tmp_path / "desk_w1.csv"
    emit_results(rows, "csv", str(f_base))

    # same config, two workers, fresh process pool: identical bytes
    f_w2 = tmp_path / "desk_w2.csv"
    emit_results(fixed_horizon_experiment(replace(DESK, workers=2)), "csv",
                 str(f_w2))
    csv_ok = f_base.read_bytes() == f_w2.read_bytes()

    # rerun of the trace suite is reproducible
    r1 = diag.run_deterministic_suite(diag.standard_traces(40, base_seed=20))
    r2 = diag.run_deterministic_suite(diag.standard_traces(40, base_seed=20))
    suite_ok = all(a.max_violation == b.max_violation
                   for a, b in zip(r1, r2))

    # validators reproduce violation counts for a fixed seed
    v1 = conc.validate_fuk_nagaev(5.0, 1.0, n=50, delta=0.05, trials=20_000,
                                  seed=60)
    v2 = conc.validate_fuk_nagaev(5.0, 1.0, n=50, delta=0.05, trials=20_000,
                                  seed=60)
    conc_ok = v1.violations == v2.violations

    ok = csv_ok and suite_ok and conc_ok
    _report(5, "byte-identical artifacts across reruns and worker counts", ok)
    print(f"  csv={csv_ok} suite={suite_ok} validators={conc_ok}")
    assert ok
