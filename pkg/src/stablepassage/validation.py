"""Self-check suites run by ``stablepassage validate``.

Each check records a measured residual and the tolerance it is held to.
The ``mc`` suite at budget ``full`` uses the path counts and tolerances
of the published acceptance run; the smaller budgets add a sampling
allowance that scales like ``1/sqrt(n)``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .hitting import (
    hit_zero_before_up_prob,
    interval_avoidance_prob,
    interval_hitting_law,
    killed_potential_density,
    passage_density_avoiding_zero,
)
from .lamperti import psi_C, psi_L, psi_xi
from .montecarlo import (
    MCConfig,
    first_entry_interval,
    hit_zero_ladder,
    ks_distance,
    occupation_before_entry,
)
from .specfun import integrate
from .stable import validate_params
from .wiener_hopf import verify_factorisation

__all__ = ["Check", "random_admissible", "wh_suite", "mass_suite", "mc_suite", "run_suite", "BUDGETS"]

THETAS = (-50.0, -10.0, -1.0, -0.1, 0.1, 1.0, 10.0, 50.0)

# paths for the KS comparison and for the other Monte Carlo checks
BUDGETS = {
    "small": (2_000, 2_000),
    "medium": (20_000, 5_000),
    "full": (100_000, 20_000),
}

EPS_LADDER = (0.05, 0.02, 0.01, 0.005, 0.002)


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.measured <= self.tolerance)

    def as_dict(self):
        return {
            "name": self.name,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def random_admissible(rng, n):
    """n parameter pairs, half with alpha < 1 and half with alpha > 1,
    rho drawn uniformly inside the admissible range."""
    out = []
    for k in range(n):
        if k % 2 == 0:
            a = rng.uniform(0.05, 0.95)
            lo, hi = 0.02, 0.98
        else:
            a = rng.uniform(1.05, 1.95)
            lo, hi = 1.0 - 1.0 / a, 1.0 / a
            pad = 0.02 * (hi - lo)
            lo, hi = lo + pad, hi - pad
        out.append(validate_params(a, rng.uniform(lo, hi)))
    return out


def wh_suite(seed=0, n_params=50):
    rng = np.random.default_rng(seed)
    params = random_admissible(rng, n_params)
    wh = max(verify_factorisation(p, t) for p in params for t in THETAS)
    th = np.array(THETAS)
    dec = 0.0
    for p in params:
        psi = psi_xi(p, th)
        dec = max(dec, float(np.max(np.abs(psi - psi_L(p, th) - psi_C(p, th)) / (1.0 + np.abs(psi)))))
    return [
        Check("wiener_hopf_residual", float(wh), 1e-8),
        Check("decomposition_residual", float(dec), 1e-9),
    ]


def avoid_zero_passage_mass(p, x):
    """Total mass of the passage density avoiding 0; the density behaves
    like (y-1)^(-alpha rho) at y = 1."""
    f = lambda y: passage_density_avoiding_zero(p, x, y)
    return integrate(f, 1.0, math.inf, p=1.0 - p.alpha * p.rho).value


def mass_suite(seed=0, n_params=20):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for p in random_admissible(rng, n_params):
        x = 1.0 + rng.exponential(2.0)
        law = interval_hitting_law(p, x)
        expected = 1.0 - interval_avoidance_prob(p, x) if p.alpha < 1.0 else 1.0
        worst = max(worst, abs(law.mass() - expected))
    p = validate_params(1.5, 0.55)
    cor = 0.0
    for x in (0.5, -0.5, 0.1):
        m = avoid_zero_passage_mass(p, x)
        cor = max(cor, abs(m - (1.0 - hit_zero_before_up_prob(p, x))))
    return [
        Check("interval_hitting_mass", float(worst), 1e-6),
        Check("avoid_zero_passage_mass", float(cor), 1e-5),
    ]


def mc_suite(seed=0, budget="small"):
    n_ks, n_other = BUDGETS[budget]
    full = budget == "full"
    checks = []

    p = validate_params(1.3, 0.55)
    emp = first_entry_interval(p, 2.0, MCConfig(n_paths=n_ks, step=1e-4, seed=seed))
    law = interval_hitting_law(p, 2.0)
    ks_tol = 0.02 if full else 0.02 + 1.63 / math.sqrt(n_ks)
    checks.append(Check("first_entry_ks", ks_distance(emp, law.cdf_function()), ks_tol))

    p = validate_params(0.6, 0.4)
    emp = first_entry_interval(p, 3.0, MCConfig(n_paths=n_other, seed=seed))
    exact = interval_avoidance_prob(p, 3.0)
    se = math.sqrt(exact * (1 - exact) / n_other)
    tol = 0.02 if full else 0.02 + 3 * se
    checks.append(Check("avoidance_probability", abs(emp.censored_mass - exact), tol))

    p = validate_params(0.8, 0.5)
    occ = occupation_before_entry(p, 2.0, [2.5, 2.6], MCConfig(n_paths=n_other, seed=seed))
    exact = integrate(lambda y: killed_potential_density(p, 2.0, y), 2.5, 2.6).value
    checks.append(
        Check("occupation_bin_in_se", abs(occ.mean[0] - exact) / occ.std_error[0], 3.0)
    )

    p = validate_params(1.5, 0.55)
    ladder = hit_zero_ladder(p, 0.5, EPS_LADDER, MCConfig(n_paths=n_other, seed=seed))
    exact = hit_zero_before_up_prob(p, 0.5)
    finest = ladder[-1]
    tol = 0.03 if full else 0.03 + 3 * finest.std_error
    checks.append(Check("hit_zero_ladder_finest", abs(finest.estimate - exact), tol))
    return checks


def run_suite(name, seed=0, budget="small"):
    if name == "wh":
        return wh_suite(seed)
    if name == "mass":
        return mass_suite(seed)
    if name == "mc":
        return mc_suite(seed, budget)
    if name == "all":
        return wh_suite(seed) + mass_suite(seed) + mc_suite(seed, budget)
    raise ValueError(f"unknown suite {name!r}")
