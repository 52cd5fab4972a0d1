"""Hitting a point before passing above 1, alpha in (1, 2).

Single points are hit with positive probability when alpha > 1.  The
simulation can only see small intervals (-eps, eps), so a ladder of eps
values is shown next to the exact point-hitting probability.

    python demos/hitting_zero.py [n_paths]
"""

import sys

from stablepassage import hitting, montecarlo
from stablepassage.stable import validate_params
from stablepassage.validation import EPS_LADDER

n = int(sys.argv[1]) if len(sys.argv) > 1 else 5_000
p = validate_params(1.5, 0.55)
cfg = montecarlo.MCConfig(n_paths=n, seed=3)

for x in (0.5, -0.5):
    exact = hitting.hit_zero_before_up_prob(p, x)
    print(f"x={x:+.1f}  exact {exact:.4f}")
    for lv in montecarlo.hit_zero_ladder(p, x, EPS_LADDER, cfg):
        print(f"   eps={lv.epsilon:<6g} {lv.estimate:.4f} +- {lv.std_error:.4f}")

# on the event that 0 is avoided, where does the path cross 1?
x = 0.5
print()
print(f"avoiding 0 from x={x}: density of the crossing position")
for y in (1.01, 1.1, 1.5, 2.0, 5.0, 20.0):
    print(f"  y={y:<5g} {hitting.passage_density_avoiding_zero(p, x, y):.5f}")
