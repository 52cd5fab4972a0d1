"""Where does a stable path land when it first enters (-1, 1)?

Compares the closed-form entry density with a simulated histogram, and for
alpha < 1 the probability of never entering with the censored fraction.

    python demos/entry_law.py [n_paths]
"""

import sys

import numpy as np

from stablepassage import hitting, montecarlo
from stablepassage.stable import validate_params

n = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000

p = validate_params(1.3, 0.55)
x = 2.0
law = hitting.interval_hitting_law(p, x)
emp = montecarlo.first_entry_interval(p, x, montecarlo.MCConfig(n_paths=n, step=1e-3, seed=1))

edges = np.linspace(-1, 1, 11)
counts, _ = np.histogram(emp.samples, edges)
print(f"alpha={p.alpha}, rho={p.rho}, x={x}, {n} paths")
print(f"{'bin':>17}  {'exact':>8}  {'simulated':>9}")
for lo, hi, c in zip(edges[:-1], edges[1:], counts):
    print(f"[{lo:+.1f}, {hi:+.1f})  {law.mass(lo, hi):8.4f}  {c / n:9.4f}")
print("KS distance:", round(montecarlo.ks_distance(emp, law.cdf_function()), 4))

# below alpha = 1 the interval can be missed altogether
q = validate_params(0.6, 0.4)
emp = montecarlo.first_entry_interval(q, 3.0, montecarlo.MCConfig(n_paths=n // 4, seed=2))
print()
print(f"alpha={q.alpha}, rho={q.rho}, x=3")
print(f"P(never enter)   exact {hitting.interval_avoidance_prob(q, 3.0):.4f}")
print(f"                 sim   {emp.censored_mass:.4f}")
print(f"missed hits from censoring at radius 1e6: <= {montecarlo.residual_hit_bound(q, 1e6):.1e}")
