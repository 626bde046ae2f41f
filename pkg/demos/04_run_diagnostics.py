"""Numerically verifying the per-run inequalities on a live trace.

These inequalities hold surely (for every noise realization), so any
positive violation beyond float tolerance would expose an algebra bug.
Run:  python demos/04_run_diagnostics.py
"""

from mirrortail import MirrorSetup, StepSchedule, make_problem, run_smd
from mirrortail.diagnostics import (check_d_recursion,
                                    check_iterate_comparison_all,
                                    check_last_iterate_lemmas, check_one_step,
                                    check_w_bound, d_sequence,
                                    last_iterate_decomposition,
                                    rho_max_summary, suite_gamma)
from mirrortail.noise import NoiseSpec

setup = MirrorSetup()
prob = make_problem("abs-sum", [0.0], setup)
noise = NoiseSpec(kind="sym-weibull", theta=2.0)
trace = run_smd(prob, setup, StepSchedule("inverse-sqrt", 0.5), noise,
                T=64, x1=[2.0], seed=11)

reports = [check_one_step(trace, prob.x_star),
           check_iterate_comparison_all(trace),
           check_d_recursion(trace, suite_gamma(trace))]
decomp = last_iterate_decomposition(trace)
reports.append(check_w_bound(trace, decomp))
reports.extend(check_last_iterate_lemmas(trace, decomp).values())

print("per-run inequality report (T = 64, theta = 2 noise)")
print(f"{'check':<26}{'worst violation':>17}{'tolerance':>12}  result")
for rep in reports:
    print(f"{rep.name:<26}{rep.max_violation:>+17.3e}{rep.tol:>12.1e}"
          f"  {'pass' if rep.passed else 'FAIL'}")

ds = d_sequence(trace, suite_gamma(trace))
print(f"\ndivergence running max: D_1 = {ds.D[0]:.3f}, "
      f"D_T = {ds.D[-1]:.3f} (non-decreasing, anchored at gamma)")

print("\nthe weights of the last-iterate recursion:")
print(f"  rho_T summed directly      = {decomp.rho[-1]:.4f}")
info = rho_max_summary(trace.T)
print(f"  closed form 1-1/(T//2 + 1) = {info['closed_form']:.4f}")
print(f"  proof-sketch value         = {info['proof_sketch_value']}  "
      f"(matches only for T <= 3; the diagnostics use the summed value)")
