"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line, also when
pytest captures output.  Run directly with ``python tests/test_acceptance.py``
to get just the ten lines.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest
import scipy.integrate as si

from stablepassage.hitting import (
    conditioned_potential_density,
    hit_zero_before_up_prob,
    interval_avoidance_prob,
    interval_hitting_density,
    interval_hitting_law,
    killed_potential_density,
    spectrally_negative_hitting,
    xi_killed_potential,
    xi_overshoot_density_large,
    xi_overshoot_density_small,
)
from stablepassage.lamperti import jump_cf, jump_density, jump_factor_densities, psi_C, psi_L, psi_xi
from stablepassage.montecarlo import (
    MCConfig,
    first_entry_interval,
    hit_zero_ladder,
    ks_distance,
    occupation_before_entry,
)
from stablepassage.specfun import gauss_2f1, gamma, integrate, log_gamma
from stablepassage.stable import SpectrallyNegativeParams, validate_params
from stablepassage.validation import EPS_LADDER, avoid_zero_passage_mass, random_admissible
from stablepassage.wiener_hopf import factors, renewal_density, verify_factorisation

THETAS = (-50.0, -10.0, -1.0, -0.1, 0.1, 1.0, 10.0, 50.0)
MC_SEED = 42
MC_PATHS = 20_000


def _line(n, ok, detail):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.fixture
def verdict(capsys):
    def emit(n, result):
        ok, detail = result
        with capsys.disabled():
            print("\n" + _line(n, ok, detail))
        assert ok, detail

    return emit


def criterion_1():
    params = random_admissible(np.random.default_rng(0), 50)
    t0 = time.perf_counter()
    worst = max(verify_factorisation(p, t) for p in params for t in THETAS)
    dt = time.perf_counter() - t0
    return worst <= 1e-8 and dt < 1.0, f"max WH residual {worst:.2e} (tol 1e-8), {dt:.2f} s (limit 1 s)"


def criterion_2():
    params = random_admissible(np.random.default_rng(0), 50)
    th = np.array(THETAS)
    worst = 0.0
    for p in params:
        psi = psi_xi(p, th)
        worst = max(worst, float(np.max(np.abs(psi - psi_L(p, th) - psi_C(p, th)) / (1 + np.abs(psi)))))
    return worst <= 1e-9, f"max decomposition residual {worst:.2e} (tol 1e-9)"


def _line_integral(f):
    kw = dict(limit=400, epsabs=1e-13, epsrel=1e-12)
    return sum(si.quad(f, lo, hi, **kw)[0] for lo, hi in [(-np.inf, -5), (-5, 0), (0, 5), (5, np.inf)])


def criterion_3():
    t0 = time.perf_counter()
    mass = ft = conv = 0.0
    kw = dict(limit=400, epsabs=1e-13, epsrel=1e-12)
    for a, r in [(0.5, 0.5), (1.5, 0.6)]:
        p = validate_params(a, r)
        f = lambda x: jump_density(p, x)
        mass = max(mass, abs(_line_integral(f) - 1.0))
        for th in range(-5, 6):
            re = _line_integral(lambda x: math.cos(th * x) * f(x))
            im = _line_integral(lambda x: math.sin(th * x) * f(x))
            ft = max(ft, abs(complex(re, im) - jump_cf(p, th)))
        f1, f2 = jump_factor_densities(p)
        for x in (-2.0, -1.0, 0.0, 1.0, 2.0):
            g = lambda y: f1(y) * f2(x - y)
            lo, hi = sorted((0.0, x))
            c = si.quad(g, -np.inf, lo, **kw)[0] + si.quad(g, hi, np.inf, **kw)[0]
            if hi > lo:
                c += si.quad(g, lo, hi, **kw)[0]
            conv = max(conv, abs(c - f(x)))
    dt = time.perf_counter() - t0
    ok = mass <= 1e-8 and ft <= 1e-6 and conv <= 1e-7 and dt < 10
    return ok, f"mass {mass:.1e} (1e-8), cf {ft:.1e} (1e-6), convolution {conv:.1e} (1e-7), {dt:.1f} s (10 s)"


def criterion_4():
    rng = np.random.default_rng(1)
    worst = 0.0
    for p in random_admissible(rng, 20):
        x = 1.0 + rng.exponential(2.0)
        expected = 1.0 - interval_avoidance_prob(p, x) if p.alpha < 1 else 1.0
        worst = max(worst, abs(interval_hitting_law(p, x).mass() - expected))
    p = validate_params(1.5, 0.55)
    cor = abs(avoid_zero_passage_mass(p, 0.5) - (1.0 - hit_zero_before_up_prob(p, 0.5)))
    return worst <= 1e-6 and cor <= 1e-5, f"entry-law mass {worst:.1e} (1e-6), avoid-zero mass {cor:.1e} (1e-5)"


def criterion_5():
    worst = 0.0
    for a, r in [(0.6, 0.4), (0.5, 0.5), (1.5, 0.6), (1.3, 0.45)]:
        p = validate_params(a, r)
        pair = factors(p)
        for side, phi, e in (("asc", pair.kappa, a * r), ("desc", pair.kappa_hat, a * (1 - r))):
            for lam in (0.5, 1.0, 2.0):
                v = integrate(lambda x: math.exp(-lam * x) * renewal_density(p, side, x), 0.0, math.inf, p=min(e, 1.0)).value
                worst = max(worst, abs(v * phi(lam) - 1.0))
    return worst <= 1e-6, f"max relative Laplace residual {worst:.1e} (tol 1e-6)"


def criterion_6():
    rng = np.random.default_rng(2)
    params = random_admissible(rng, 40)
    entry = killed = cond = 0.0
    for p in params:
        a, r = p.alpha, p.rho
        x, y = 1.0 + rng.exponential(2.0), rng.uniform(-0.99, 0.99)
        lhs = interval_hitting_density(p, x, y)
        if a < 1:
            rhs = xi_overshoot_density_small(p, math.log(2 / (x + 1)), math.log((y + 1) / (x + 1))) / (y + 1)
            entry = max(entry, abs(rhs / lhs - 1))
            x, y = 1 + rng.exponential(2.0), 1 + rng.exponential(2.0)
            lhs = killed_potential_density(p, x, y)
            rhs = (y + 1) ** (a - 1) * xi_killed_potential(p, math.log((x + 1) / 2), math.log((y + 1) / 2))
            killed = max(killed, abs(rhs / lhs - 1))
        else:
            rhs = xi_overshoot_density_large(p, math.log(2 / (x + 1)), math.log(2 / (y + 1))) / (y + 1)
            entry = max(entry, abs(rhs / lhs - 1))
            x = rng.uniform(-5, 0.99)
            lhs = hit_zero_before_up_prob(p, x)
            G = math.gamma(a * r) * math.gamma(a * (1 - r))
            rhs = (a - 1) * G * (1 - x) ** (a * r) * conditioned_potential_density(a, r, -math.log(1 - x))
            cond = max(cond, abs(rhs / lhs - 1))
    ok = max(entry, killed, cond) <= 1e-10
    return ok, f"entry {entry:.1e}, killed potential {killed:.1e}, conditioned potential {cond:.1e} (tol 1e-10)"


def criterion_7():
    limit = spectrally_negative_hitting(SpectrallyNegativeParams(1.5), 2.0)
    parts = []
    ok = True
    for z in (-0.5, 0.0, 0.5):
        target = limit.mass(z, 1.0)
        errs = [abs(interval_hitting_law(validate_params(1.5, 1 / 1.5 - d), 2.0).mass(z, 1.0) - target) for d in (1e-2, 1e-3)]
        ok &= errs[1] < errs[0] and errs[1] < 5e-3
        parts.append(f"z={z:g}: {errs[0]:.1e} -> {errs[1]:.1e}")
    return ok, "; ".join(parts) + " (final < 5e-3, decreasing)"


def criterion_8():
    out = []
    ok = True

    p = validate_params(1.3, 0.55)
    t0 = time.perf_counter()
    emp = first_entry_interval(p, 2.0, MCConfig(n_paths=100_000, step=1e-4, seed=MC_SEED))
    dt = time.perf_counter() - t0
    ks = ks_distance(emp, interval_hitting_law(p, 2.0).cdf_function())
    ok &= ks <= 0.02 and dt <= 300
    out.append(f"KS {ks:.4f} (0.02) in {dt:.0f} s")

    p = validate_params(0.6, 0.4)
    emp = first_entry_interval(p, 3.0, MCConfig(n_paths=MC_PATHS, seed=MC_SEED))
    err = abs(emp.censored_mass - interval_avoidance_prob(p, 3.0))
    ok &= err <= 0.02
    out.append(f"avoidance {err:.4f} (0.02)")

    p = validate_params(0.8, 0.5)
    occ = occupation_before_entry(p, 2.0, [2.5, 2.6], MCConfig(n_paths=MC_PATHS, seed=MC_SEED))
    exact = integrate(lambda y: killed_potential_density(p, 2.0, y), 2.5, 2.6).value
    z = abs(occ.mean[0] - exact) / occ.std_error[0]
    ok &= z <= 3.0
    out.append(f"occupation {z:.2f} SE (3)")

    p = validate_params(1.5, 0.55)
    for x in (0.5, -0.5):
        finest = hit_zero_ladder(p, x, EPS_LADDER, MCConfig(n_paths=MC_PATHS, seed=MC_SEED))[-1]
        err = abs(finest.estimate - hit_zero_before_up_prob(p, x))
        ok &= err <= 0.03
        out.append(f"hit-0 x={x:g} {err:.4f} (0.03)")
    return ok, "; ".join(out)


def criterion_9():
    rec = max(
        abs(log_gamma(z + 1.0) - log_gamma(z) - math.log(z)) / max(1.0, abs(log_gamma(z + 1.0)))
        for z in np.linspace(0.1, 20, 200)
    )
    refl = max(abs(gamma(x) * gamma(1 - x) * math.sin(math.pi * x) / math.pi - 1) for x in np.linspace(0.05, 0.95, 91))
    euler = contig = power = 0.0
    a, b, c = 0.7, 1.3, 2.4
    for z in (-9.0, -2.0, -0.3, 0.2, 0.6, 0.9, 0.98):
        lhs = gauss_2f1(a, b, c, z)
        euler = max(euler, abs((1 - z) ** (c - a - b) * gauss_2f1(c - a, c - b, c, z) / lhs - 1))
        f = lambda aa: gauss_2f1(aa, 0.8, 2.9, z)
        aa = 1.4
        res = (2.9 - aa) * f(aa - 1) + (2 * aa - 2.9 + (0.8 - aa) * z) * f(aa) + aa * (z - 1) * f(aa + 1)
        contig = max(contig, abs(res) / (abs((2.9 - aa) * f(aa - 1)) + abs(aa * (z - 1) * f(aa + 1))))
        power = max(power, abs(gauss_2f1(0.6, 1.7, 1.7, z) * (1 - z) ** 0.6 - 1))
    ok = rec <= 1e-12 and refl <= 1e-11 and max(euler, contig, power) <= 1e-10
    return ok, (
        f"recurrence {rec:.1e} (1e-12), reflection {refl:.1e} (1e-11), "
        f"Euler {euler:.1e}, contiguity {contig:.1e}, b=c {power:.1e} (1e-10)"
    )


def criterion_10():
    cmd = [sys.executable, "-m", "stablepassage", "validate", "mc", "--seed", str(MC_SEED)]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    codes = [r.returncode for r in runs]
    return same and codes == [0, 0], f"byte-identical reports: {same}, exit codes {codes}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def test_criterion_1_wiener_hopf(verdict):
    verdict(1, criterion_1())


def test_criterion_2_decomposition(verdict):
    verdict(2, criterion_2())


def test_criterion_3_jump_law(verdict):
    verdict(3, criterion_3())


def test_criterion_4_mass_identities(verdict):
    verdict(4, criterion_4())


def test_criterion_5_renewal_duality(verdict):
    verdict(5, criterion_5())


def test_criterion_6_derivation_chain(verdict):
    verdict(6, criterion_6())


def test_criterion_7_spectrally_negative_limit(verdict):
    verdict(7, criterion_7())


def test_criterion_8_monte_carlo(verdict):
    verdict(8, criterion_8())


def test_criterion_9_special_functions(verdict):
    verdict(9, criterion_9())


def test_criterion_10_determinism(verdict):
    verdict(10, criterion_10())


if __name__ == "__main__":
    failed = 0
    for n, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        failed += not ok
        print(_line(n, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
