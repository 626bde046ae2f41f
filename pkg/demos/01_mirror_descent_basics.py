"""Tour of the mirror-descent core: geometries, Bregman divergences, runs.

Run:  python demos/01_mirror_descent_basics.py
"""

import numpy as np

from mirrortail import (MirrorSetup, StepSchedule, bregman, make_problem,
                        mirror_step, run_smd)
from mirrortail.noise import NoiseSpec

# Two geometries: plain SGD on R^d, and multiplicative weights on the simplex.
euclid = MirrorSetup()
simplex = MirrorSetup(regularizer="neg-entropy", domain="simplex")

print("Bregman divergences")
print("  euclidean  B((1,2),(0,0)) =", bregman(euclid, [1, 2], [0, 0]),
      " (half squared distance)")
print("  neg-entropy B((1,0),(.5,.5)) =",
      round(bregman(simplex, [1, 0], [0.5, 0.5]), 6), " (= ln 2, the KL)")

print("\nProx steps")
print("  gradient step      :", mirror_step(euclid, [1, 1], [2, 0], 0.5))
print("  multiplicative step:",
      mirror_step(simplex, [0.5, 0.5], [1.0, 0.0], np.log(2)))

# A noise-free run on f(x) = |x| reaches the kink and stays there, because
# the subgradient at 0 is taken to be 0.
prob = make_problem("abs-sum", [0.0], euclid)
trace = run_smd(prob, euclid, StepSchedule("constant", 1.0), None, 4, [2.0])
print("\nNoise-free |x| run, eta = 1:", trace.xs.ravel())

# The same objective under heavy-tailed noise: the trace records everything.
noise = NoiseSpec(kind="sym-weibull", theta=2.0)
trace = run_smd(prob, euclid, StepSchedule("inverse-sqrt", 1.0), noise,
                T=2000, x1=[2.0], seed=7)
print("\nWeibull(theta=2) noise, eta_t = 1/sqrt(t), T = 2000")
print(f"  final last-iterate error    {trace.err_last[-1]:.4f}")
print(f"  final average-iterate error {trace.err_avg[-1]:.4f}")
print(f"  largest single noise draw   {np.abs(trace.xis).max():.2f}")

# Runs are bit-reproducible given the seed.
again = run_smd(prob, euclid, StepSchedule("inverse-sqrt", 1.0), noise,
                T=2000, x1=[2.0], seed=7)
print("  reran with the same seed ->",
      "identical" if np.array_equal(trace.xs, again.xs) else "DIFFERENT")
