"""Ladder-height exponents of the Lamperti process of the censored
stable process, and how well they reproduce its characteristic exponent.

    python demos/ladder_factors.py
"""

import numpy as np

from stablepassage import lamperti, wiener_hopf
from stablepassage.stable import validate_params

lams = np.array([0.1, 0.5, 1.0, 2.0, 5.0])
for a, r in [(0.6, 0.4), (1.5, 0.6)]:
    p = validate_params(a, r)
    pair = wiener_hopf.factors(p)
    print(f"alpha={a}, rho={r}: {pair.regime.name.lower().replace('_', ' ')}")
    print("   lambda   kappa     kappa_hat")
    for lam, k, kh in zip(lams, pair.kappa(lams), pair.kappa_hat(lams)):
        print(f"   {lam:<6g} {k:9.5f} {kh:9.5f}")
    res = max(wiener_hopf.verify_factorisation(p, t) for t in np.linspace(-20, 20, 81))
    print(f"   factorisation residual over theta in [-20, 20]: {res:.1e}")
    th = 1.5
    print(f"   Psi({th}) = {complex(lamperti.psi_xi(p, th)):.6f}")
    print()
