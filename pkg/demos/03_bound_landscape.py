"""Evaluating the closed-form tail bounds and the two-regime crossover.

The unspecified multiplicative constants default to 1, so the absolute
numbers are only meaningful relative to each other.
Run:  python demos/03_bound_landscape.py
"""

import math

from mirrortail.bounds import (TailBoundInputs, eval_cor1_bound,
                               eval_cor2_bound, eval_cor3_bound,
                               eval_tuned_eta_forms, tuned_eta_crossover)

print("average-iterate bounds vs horizon (theta = 2 weibull, delta = 0.01)")
print(f"{'T':>7}{'constant eta':>14}{'eta/sqrt(t)':>13}{'last iterate':>14}")
for T in (100, 1000, 10_000, 100_000):
    inp = TailBoundInputs(breg0=2.0, eta=1.0 / math.sqrt(T), G=1.0, nu=1.0,
                          theta=2.0, T=T, delta=0.01)
    anytime = TailBoundInputs(breg0=2.0, eta=1.0, G=1.0, nu=1.0, theta=2.0,
                              T=T, delta=0.01)
    print(f"{T:>7}"
          f"{eval_cor1_bound('constant', inp):>14.3f}"
          f"{eval_cor1_bound('inverse-sqrt', anytime):>13.3f}"
          f"{eval_cor3_bound('weibull', anytime):>14.3f}")

print("\nthe last-iterate bound pays an extra log(1/delta) factor over the")
print("anytime average-iterate bound; both share the log(eT)/sqrt(T) decay.")

print("\ntwo-regime structure of the tuned constant-eta bound")
inp = TailBoundInputs(breg0=1.0, eta=1.0, G=0.0, nu=1.0, theta=1.0,
                      delta=1.0 / math.e, T=1)
print(f"{'T':>7}{'sub-gaussian addend':>21}{'heavy-tail addend':>19}")
for T in (2, 5, 9, 50, 1000):
    _, a1, a2 = eval_tuned_eta_forms(
        "weibull", TailBoundInputs(breg0=1.0, eta=1.0, G=0.0, nu=1.0,
                                   theta=1.0, delta=1.0 / math.e, T=T))
    print(f"{T:>7}{a1:>21.4f}{a2:>19.4f}")
t_star = tuned_eta_crossover("weibull", inp)
print(f"crossover: the light-tailed term dominates from T* = {t_star}")

print("\npolynomial tails trade the log for a power of 1/delta")
for delta in (0.1, 0.01, 0.001):
    inp = TailBoundInputs(breg0=2.0, eta=1.0, G=1.0, kappa=1.0, p=5.0,
                          T=1000, delta=delta)
    winp = TailBoundInputs(breg0=2.0, eta=1.0, G=1.0, nu=1.0, theta=1.0,
                           T=1000, delta=delta)
    print(f"  delta={delta:<7} poly {eval_cor2_bound('inverse-sqrt', inp):>9.3f}"
          f"   weibull(theta=1) {eval_cor1_bound('inverse-sqrt', winp):>9.3f}")
