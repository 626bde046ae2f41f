"""Command-line entry points.

    mirrortail run-experiment   --config cfg.json [--desk-scale] [--out f.csv]
    mirrortail eval-bounds      --config inputs.json [--formula NAME ...]
    mirrortail check-invariants [--traces N] [--seed S]
    mirrortail validate-concentration --prop {e2,e3,p1,b1,b2,moments,mgf} ...

Exit status: 0 on success, 1 when an invariant or validator suite fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds as bnd
from . import concentration as conc
from . import diagnostics as diag
from .experiments import ExperimentConfig, config_from_dict, emit_results, \
    run_experiment
from .smd import StepSchedule


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mirrortail")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run-experiment",
                       help="fixed-horizon or anytime percentile experiment")
    p.add_argument("--config", help="flat JSON config; defaults are the "
                                    "paper-scale setup")
    p.add_argument("--desk-scale", action="store_true",
                   help="CI preset: 2k runs, horizons up to 1000")
    p.add_argument("--mode", choices=("fixed-horizon", "anytime"))
    p.add_argument("--fixed-eta-rule", choices=("inv-sqrt-T", "inv-T"))
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="output path (overrides config)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("eval-bounds",
                       help="evaluate closed-form bounds from a flat config")
    p.add_argument("--config", required=True)
    p.add_argument("--formula", action="append", default=[],
                   help="repeatable; defaults to the config's 'formulas' list")

    p = sub.add_parser("check-invariants",
                       help="deterministic inequality suite on random traces")
    p.add_argument("--traces", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-values", type=int, nargs="+", default=[1, 2, 4, 64])

    p = sub.add_parser("validate-concentration",
                       help="Monte Carlo validation of one concentration result")
    p.add_argument("--prop", required=True,
                   choices=("e2", "e3", "p1", "b1", "b2", "moments", "mgf"))
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--p", type=float, default=5.0)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--scales", choices=("unit", "inv-sqrt", "inv-t"),
                   default="unit")
    p.add_argument("--increment-class", default="sym-weibull")
    p.add_argument("--which", choices=("inner-product", "squared-norm"),
                   default="inner-product")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=200.0)
    p.add_argument("--x", type=float, default=40.0)
    p.add_argument("--pmoment", type=float, default=2.0)
    p.add_argument("--lambdas", default="0.0,0.1,0.25")
    p.add_argument("--h", type=float)
    return ap


# -- eval-bounds --------------------------------------------------------------

def _bound_formulas(inp: bnd.TailBoundInputs, cfg: dict) -> dict:
    schedule = StepSchedule(kind=cfg.get("schedule", "constant"), eta=inp.eta)
    return {
        "gamma": lambda: bnd.gamma_value(cfg.get("Y2", 0.0),
                                         cfg.get("sum_eta2_G2_sigma2", 0.0)),
        "thm1-weibull": lambda: bnd.eval_thm1_bound(
            bnd.subweibull_tail_fns(inp.theta, inp.nu), inp, schedule),
        "thm1-poly": lambda: bnd.eval_thm1_bound(
            bnd.poly_tail_fns(inp.p, inp.kappa), inp, schedule),
        "cor1-constant": lambda: bnd.eval_cor1_bound("constant", inp),
        "cor1-inverse-sqrt": lambda: bnd.eval_cor1_bound("inverse-sqrt", inp),
        "cor2-constant": lambda: bnd.eval_cor2_bound("constant", inp),
        "cor2-inverse-sqrt": lambda: bnd.eval_cor2_bound("inverse-sqrt", inp),
        "tuned-weibull": lambda: bnd.eval_tuned_eta_forms("weibull", inp)[0],
        "tuned-poly": lambda: bnd.eval_tuned_eta_forms("poly", inp)[0],
        "thm2": lambda: bnd.eval_thm2_last_bound(cfg.get("Xi1", 0.0),
                                                 cfg.get("Xi2", 0.0), inp),
        "cor3-weibull": lambda: bnd.eval_cor3_bound("weibull", inp),
        "cor3-poly": lambda: bnd.eval_cor3_bound("poly", inp),
        "bounded-weibull": lambda: bnd.eval_bounded_domain_bound("weibull", inp),
        "bounded-poly": lambda: bnd.eval_bounded_domain_bound("poly", inp),
    }


def _cmd_eval_bounds(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    field_names = set(bnd.TailBoundInputs.__dataclass_fields__)
    inp = bnd.TailBoundInputs(**{k: v for k, v in cfg.items()
                                 if k in field_names})
    table = _bound_formulas(inp, cfg)
    names = args.formula or cfg.get("formulas", [])
    if not names:
        print("no formulas requested (use --formula or a 'formulas' list)",
              file=sys.stderr)
        return 2
    unknown = [n for n in names if n not in table]
    if unknown:
        print(f"unknown formulas: {unknown}; choose from {sorted(table)}",
              file=sys.stderr)
        return 2
    for name in names:
        print(f"{name} {table[name]():.12g}")
    return 0


# -- check-invariants ---------------------------------------------------------

def _cmd_check_invariants(args) -> int:
    traces = diag.standard_traces(args.traces, tuple(args.t_values), args.seed)
    reports = diag.run_deterministic_suite(traces)
    rows = diag.summarize_reports(reports)
    width = max(len(r["check"]) for r in rows)
    print(f"{'check':<{width}}  {'count':>5}  {'max violation':>14}  "
          f"{'tol':>10}  result")
    ok = True
    for r in rows:
        ok &= r["passed"]
        print(f"{r['check']:<{width}}  {r['count']:>5}  "
              f"{r['max_violation']:>14.3e}  {r['tol']:>10.2e}  "
              f"{'pass' if r['passed'] else 'FAIL'}")
    note = diag.rho_max_summary(max(args.t_values))
    print(f"note: max rho_t at T={note['T']} sums to "
          f"{note['max_rho_direct']:.6f} "
          f"(= 1 - 1/(floor(T/2)+1)); the proof sketch states 1/2, which "
          f"matches only at T=2.")
    return 0 if ok else 1


# -- validate-concentration ---------------------------------------------------

def _scale_vector(kind: str, n: int) -> np.ndarray:
    t = np.arange(1, n + 1, dtype=float)
    if kind == "inv-sqrt":
        return 1.0 / np.sqrt(t)
    if kind == "inv-t":
        return 1.0 / t
    return np.ones(n)


def _cmd_validate_concentration(args) -> int:
    reports = []
    if args.prop == "e2":
        m = _scale_vector(args.scales, args.n)
        reports.append(conc.validate_subw_maximal(
            args.theta, m, delta=args.delta, s=args.s, trials=args.trials,
            increment_class=args.increment_class, seed=args.seed))
    elif args.prop == "e3":
        k = _scale_vector(args.scales, args.n)
        reports.append(conc.validate_fuk_nagaev(
            args.p, k, delta=args.delta, trials=args.trials, seed=args.seed))
    elif args.prop == "p1":
        gen = conc.MartingaleGen(increment_class=args.increment_class,
                                 scales=tuple(_scale_vector(args.scales,
                                                            args.n)),
                                 theta=args.theta, p=args.p)
        reports.append(conc.validate_chicken_egg(
            args.alpha, args.beta, args.x, gen, trials=args.trials,
            seed=args.seed))
    elif args.prop in ("b1", "b2"):
        w = _scale_vector(args.scales, args.n)
        regime = "weibull" if args.prop == "b1" else "poly"
        reports.append(conc.validate_weighted_shortcuts(
            regime, args.which, w, delta=args.delta, trials=args.trials,
            theta=args.theta, p=args.p, phi=args.nu, s=args.s,
            seed=args.seed))
    elif args.prop == "moments":
        reports.append(conc.check_subw_moment(args.theta, args.nu,
                                              args.pmoment,
                                              trials=args.trials,
                                              seed=args.seed))
    else:
        lams = [float(v) for v in args.lambdas.split(",")]
        reports.extend(conc.check_mgf_bounds(args.theta, args.nu, lams,
                                             h=args.h, trials=args.trials,
                                             seed=args.seed))
    ok = True
    for r in reports:
        ok &= r.passed
        if isinstance(r, conc.ViolationEstimate):
            print(f"{r.name} params={r.params} trials={r.trials} "
                  f"violations={r.violations} rate={r.rate:.3e} "
                  f"cap={r.target:.3e} stderr={r.stderr:.2e} "
                  f"{'pass' if r.passed else 'FAIL'}")
        else:
            print(f"{r.name} params={r.params} estimate={r.estimate:.6g} "
                  f"bound={r.bound:.6g} stderr={r.stderr:.2e} "
                  f"{'pass' if r.passed else 'FAIL'}")
    return 0 if ok else 1


# -- run-experiment -----------------------------------------------------------

def _cmd_run_experiment(args) -> int:
    cfg = ExperimentConfig() if args.config is None \
        else config_from_dict(json.load(open(args.config, encoding="utf-8")))
    if args.desk_scale:
        cfg = cfg.desk_scale()
    overrides = {}
    if args.mode:
        overrides["mode"] = args.mode
    if args.fixed_eta_rule:
        overrides["fixed_eta_rule"] = args.fixed_eta_rule
    if args.workers:
        overrides["workers"] = args.workers
    if args.out:
        overrides["out"] = args.out
    if overrides:
        from dataclasses import replace
        cfg = replace(cfg, **overrides)
    if not cfg.out:
        print("an output path is required (config 'out' or --out)",
              file=sys.stderr)
        return 2
    summaries = run_experiment(cfg)
    emit_results(summaries, args.format, cfg.out)
    print(f"wrote {len(summaries)} rows to {cfg.out}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run-experiment":
            return _cmd_run_experiment(args)
        if args.command == "eval-bounds":
            return _cmd_eval_bounds(args)
        if args.command == "check-invariants":
            return _cmd_check_invariants(args)
        return _cmd_validate_concentration(args)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
