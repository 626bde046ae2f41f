"""The three noise classes and their certified tail constants.

Every class is scaled to unit second moment, so runs differ only through
tail shape.  Run:  python demos/02_noise_tails.py
"""

import math

import numpy as np

from mirrortail.noise import NoiseSpec, sample_noise, stream, tail_params

SPECS = [
    NoiseSpec(kind="gaussian"),
    NoiseSpec(kind="sym-weibull", theta=1.0),
    NoiseSpec(kind="sym-weibull", theta=2.0),
    NoiseSpec(kind="sym-weibull", theta=10.0 / 3.0),
    NoiseSpec(kind="sym-poly", p=5.0),
]

print("certified tail constants (unit variance)")
print(f"{'class':<14}{'theta/p':>8}{'nu':>10}{'kappa':>10}{'sigma^2':>9}")
for spec in SPECS:
    tp = tail_params(spec)
    print(f"{spec.kind:<14}"
          f"{(tp.theta if tp.theta is not None else tp.p):>8.3g}"
          f"{(tp.nu if tp.nu else float('nan')):>10.4f}"
          f"{(tp.kappa if tp.kappa else float('nan')):>10.4f}"
          f"{tp.sigma2:>9.2f}")

n = 200_000
print(f"\nempirical tails over {n} draws: P(|X| >= t)")
header = f"{'class':<14}" + "".join(f"{f't={m}':>12}" for m in (1, 2, 4, 8))
print(header)
for spec in SPECS:
    draws = np.abs(sample_noise(spec, stream(1), size=n)[:, 0])
    cells = []
    for t in (1.0, 2.0, 4.0, 8.0):
        rate = float(np.mean(draws >= t))
        cells.append(f"{rate:>12.2e}")
    print(f"{spec.kind + format(spec.theta or spec.p or 0.5, '.2g'):<14}"
          + "".join(cells))

print("\nnote the sub-Weibull certificates in action: a theta = 10/3 draw")
print("exceeds 8 with probability ~1e-2 while the gaussian never does;")
print("all classes still share E X^2 = 1 exactly.")

spec = NoiseSpec(kind="sym-weibull", theta=2.0)
tp = tail_params(spec)
t = 4.0 * tp.nu
bound = 2.0 * math.exp(-((t / tp.nu) ** (1.0 / spec.theta)))
draws = np.abs(sample_noise(spec, stream(2), size=n)[:, 0])
print(f"\ntail-bound check at t = 4 nu for theta = 2:")
print(f"  empirical {float(np.mean(draws >= t)):.3e}  <=  "
      f"2 exp(-(t/nu)^(1/theta)) = {bound:.3e}")
