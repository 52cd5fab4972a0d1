"""The Levy process xi obtained by censoring negative excursions of a stable
process and applying the Lamperti transform.

xi is the independent sum of a Lamperti-stable part xi^L (the process
xi^* without its killing) and a compound Poisson part xi^C whose jumps
arrive at rate c_minus/alpha.  This module evaluates their exponents, the
jump law of xi^C, and a small calculus of subordinator Laplace exponents
(Lamperti-stable family, Esscher transform, T_beta transform,
conjugation).
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, PoleError
from .specfun import gauss_2f1, log_expm1, log_gamma, rgamma
from .stable import StableParams

__all__ = [
    "LampertiStableParams",
    "LaplaceExponent",
    "JumpLaw",
    "xi_star_levy_density",
    "xi_star_killing_rate",
    "jump_cf",
    "jump_density",
    "jump_factor_densities",
    "jump_law",
    "psi_L",
    "psi_C",
    "psi_xi",
    "lamperti_stable_laplace",
    "lamperti_stable_exponent",
    "esscher",
    "t_beta",
    "conjugate",
    "bernstein_violation",
    "is_bernstein",
]


_lg = log_gamma


# ---------------------------------------------------------------------------
# xi^* and the jump law of xi^C


def xi_star_levy_density(p: StableParams, x):
    """Levy density of the Lamperti-stable process xi^*."""
    x = float(x)
    if x == 0.0:
        raise DomainError("Levy density of xi* is undefined at x=0")
    a = p.alpha
    if x > 0:
        return p.c_plus * math.exp(x - (a + 1.0) * log_expm1(x))
    return p.c_minus * math.exp(x) * (-math.expm1(x)) ** (-(a + 1.0))


def xi_star_killing_rate(p: StableParams):
    """Killing rate of xi^*, equal to c_minus / alpha."""
    return p.c_minus / p.alpha


def _as_theta(theta):
    th = np.asarray(theta, dtype=float)
    return th


def _finish(out, th):
    return complex(out) if th.ndim == 0 else out


def jump_cf(p: StableParams, theta):
    """Characteristic function of a single jump of xi^C."""
    th = _as_theta(theta)
    a, ar = p.alpha, p.alpha * p.rho
    it = 1j * th
    lg = (
        _lg(1.0 - ar + it)
        + _lg(ar - it)
        + _lg(1.0 + it)
        + _lg(a - it)
        - math.lgamma(a)
    )
    out = math.sin(math.pi * ar) / math.pi * np.exp(lg)
    return _finish(out, th)


def jump_density(p: StableParams, x):
    """Density of a single jump of xi^C at real x.

    Closed form through 2F1(1, alpha rho + 1; alpha + 2; 1 - e^{-x}).  For
    x < 0 the argument is negative; the Pfaff transformation rewrites it as
    e^{(1 - alpha rho) x} 2F1(1, alpha + 1 - alpha rho; alpha + 2; 1 - e^x),
    so both tails are evaluated with an argument in [0, 1) and an exact
    complement.
    """
    x = float(x)
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    const = (
        a
        * math.sin(math.pi * ar)
        / math.pi
        * math.exp(math.lgamma(ar + 1.0) + math.lgamma(arh + 1.0) - math.lgamma(a + 2.0))
    )
    if x >= 0.0:
        b, rate, e = ar + 1.0, ar * x, math.exp(-x)
    else:
        b, rate, e = a + 1.0 - ar, (ar - 1.0) * x, math.exp(x)
    if e == 0.0:
        # deep tail: 2F1 at argument 1 by Gauss's summation
        c = a + 2.0
        f = math.exp(math.lgamma(c) + math.lgamma(c - 1.0 - b) - math.lgamma(c - 1.0) - math.lgamma(c - b))
    else:
        f = gauss_2f1(1.0, b, a + 2.0, -math.expm1(-abs(x)), e)
    return const * math.exp(-rate) * f


def jump_factor_densities(p: StableParams):
    """The two densities whose convolution is the jump density.

    Returns ``(f1, f2)`` with f1(x) = alpha e^x (1+e^x)^{-(alpha+1)} and
    f2(x) = sin(pi alpha rho)/pi e^{(1-alpha rho)x} (1+e^x)^{-1}.
    """
    a, ar = p.alpha, p.alpha * p.rho
    s = math.sin(math.pi * ar) / math.pi

    def f1(x):
        # written in terms of e^{-|x|} to avoid overflow
        if x > 0:
            e = math.exp(-x)
            return a * e**a * (1.0 + e) ** (-(a + 1.0))
        e = math.exp(x)
        return a * e * (1.0 + e) ** (-(a + 1.0))

    def f2(x):
        if x > 0:
            e = math.exp(-x)
            return s * e**ar / (1.0 + e)
        e = math.exp(x)
        return s * e ** (1.0 - ar) / (1.0 + e)

    return f1, f2


@dataclass(frozen=True)
class JumpLaw:
    """Density and characteristic function of one jump of xi^C."""

    density: Callable[[float], float]
    cf: Callable[[float], complex]


def jump_law(p: StableParams):
    return JumpLaw(lambda x: jump_density(p, x), lambda t: jump_cf(p, t))


# ---------------------------------------------------------------------------
# characteristic exponents


def psi_L(p: StableParams, theta):
    """Characteristic exponent of the Lamperti-stable component xi^L."""
    th = _as_theta(theta)
    a, arh = p.alpha, p.alpha * p.rho_hat
    it = 1j * th
    main = np.exp(_lg(a - it) + _lg(1.0 + it) - _lg(arh - it) - _lg(1.0 - arh + it))
    kill = math.exp(math.lgamma(a) - math.lgamma(arh) - math.lgamma(1.0 - arh))
    return _finish(main - kill, th)


def psi_C(p: StableParams, theta):
    """Characteristic exponent of the compound Poisson component xi^C."""
    th = _as_theta(theta)
    out = xi_star_killing_rate(p) * (1.0 - np.asarray(jump_cf(p, th)))
    return _finish(out, th)


def psi_xi(p: StableParams, theta):
    """Characteristic exponent of xi in gamma-product form.

    1/Gamma(-i theta) is taken as 0 at theta = 0, so psi_xi(0) = 0.
    """
    th = _as_theta(theta)
    a, ar = p.alpha, p.alpha * p.rho
    it = 1j * th
    out = np.zeros(th.shape, dtype=complex)
    nz = th != 0
    if np.any(nz):
        t = it[nz]
        out[nz] = np.exp(
            _lg(ar - t) - _lg(-t) + _lg(1.0 - ar + t) - _lg(1.0 - a + t)
        )
    return _finish(out, th)


# ---------------------------------------------------------------------------
# Laplace exponents of subordinators


@dataclass(frozen=True)
class LampertiStableParams:
    """Killing q, index a, exponential tilt beta, intensity c, drift d."""

    q: float
    a: float
    beta: float
    c: float
    d: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise DomainError(f"index a must lie in (0,1), got a={self.a}")
        if not self.beta <= 1.0 + self.a:
            raise DomainError(f"need beta <= 1+a, got beta={self.beta}, a={self.a}")
        for name in ("q", "c", "d"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class LaplaceExponent:
    """An evaluable subordinator Laplace exponent.

    ``fn`` maps lambda >= 0 to phi(lambda).  ``killing_rate`` is phi(0),
    ``drift`` is the limit of phi(lambda)/lambda, and ``levy_density`` is
    attached when it is known in closed form.
    """

    fn: Callable[[float], float]
    killing_rate: float
    drift: float
    levy_density: Optional[Callable[[float], float]] = None
    name: str = field(default="", compare=False)

    def eval(self, lam):
        lam_arr = np.asarray(lam, dtype=float)
        if lam_arr.ndim == 0:
            return float(self.fn(float(lam_arr)))
        return np.array([float(self.fn(float(v))) for v in lam_arr.ravel()]).reshape(
            lam_arr.shape
        )

    __call__ = eval


def _gamma_ratio(x, a):
    """Gamma(x + a) / Gamma(x), with the value 0 when x is a pole."""
    if x + a <= 0 and x + a == math.floor(x + a):
        if x <= 0 and x == math.floor(x):
            raise PoleError(f"Gamma ratio undefined at x={x}, shift {a}")
        raise PoleError(f"Gamma({x + a}) is a pole")
    if x > 0:
        return math.exp(math.lgamma(x + a) - math.lgamma(x))
    return math.gamma(x + a) * float(rgamma(x))


def lamperti_stable_laplace(lsp: LampertiStableParams, lam):
    """Laplace exponent of a Lamperti-stable subordinator at lambda >= 0.

    1/Gamma is entire, so a pole of Gamma(lambda + 1 - beta) contributes 0;
    only a pole of Gamma(lambda + 1 - beta + a) is an error.
    """
    lam = float(lam)
    if lam < 0:
        raise DomainError(f"Laplace exponent needs lambda >= 0, got {lam}")
    a, b = lsp.a, lsp.beta
    x = lam + 1.0 - b
    ratio = _gamma_ratio(x, a) - _gamma_ratio(1.0 - b, a)
    return lsp.q + lsp.d * lam - lsp.c * math.gamma(-a) * ratio


def lamperti_stable_exponent(lsp: LampertiStableParams, name=""):
    """The Lamperti-stable Laplace exponent as a :class:`LaplaceExponent`."""

    def dens(x):
        if x <= 0:
            raise DomainError("Levy density is defined on x > 0")
        return lsp.c * math.exp(lsp.beta * x - (lsp.a + 1.0) * log_expm1(x))

    return LaplaceExponent(
        lambda lam: lamperti_stable_laplace(lsp, lam), lsp.q, lsp.d, dens, name
    )


def esscher(phi: LaplaceExponent, beta):
    """Esscher transform lambda -> phi(lambda + beta) - phi(beta)."""
    beta = float(beta)
    if not beta > 0:
        raise DomainError(f"Esscher transform needs beta > 0, got {beta}")
    shift = phi.fn(beta)
    dens = None
    if phi.levy_density is not None:
        base = phi.levy_density

        def dens(x):
            return math.exp(-beta * x) * base(x)

    return LaplaceExponent(
        lambda lam: phi.fn(lam + beta) - shift,
        0.0,
        phi.drift,
        dens,
        f"E_{beta:g}({phi.name})",
    )


def t_beta(phi: LaplaceExponent, beta):
    """T_beta transform lambda -> lambda/(lambda + beta) * phi(lambda + beta)."""
    beta = float(beta)
    if not beta > 0:
        raise DomainError(f"T_beta transform needs beta > 0, got {beta}")
    return LaplaceExponent(
        lambda lam: lam / (lam + beta) * phi.fn(lam + beta),
        0.0,
        phi.drift,
        None,
        f"T_{beta:g}({phi.name})",
    )


_SMALL_LAMBDA = 1e-8
_LARGE_LAMBDA = 1e12


def conjugate(phi: LaplaceExponent, killing_rate=None, drift=None):
    """The conjugate exponent lambda -> lambda / phi(lambda).

    The value at 0 is the right limit.  When it is not supplied,
    it is 0 if phi has killing, and otherwise estimated as
    lambda/phi(lambda) at lambda = 1e-8.  The drift, 1/phi(infinity), is
    0 when phi has a drift and otherwise estimated at lambda = 1e12.  Pass
    the exact values when known.
    """

    def fn(lam):
        if lam == 0.0:
            return k0
        val = phi.fn(lam)
        if val == 0.0:
            raise ZeroDivisionError(f"phi vanishes at lambda={lam}; no conjugate")
        return lam / val

    if killing_rate is None:
        if phi.killing_rate > 0:
            k0 = 0.0
        else:
            k0 = _SMALL_LAMBDA / phi.fn(_SMALL_LAMBDA)
    else:
        k0 = float(killing_rate)
    if drift is None:
        drift = 0.0 if phi.drift > 0 else 1.0 / phi.fn(_LARGE_LAMBDA)
    return LaplaceExponent(fn, k0, float(drift), None, f"conj({phi.name})")


def bernstein_violation(phi, grid=None, order=3):
    """Largest sign violation of the Bernstein finite-difference conditions.

    On an equispaced grid (default 20 points, spacing 0.5 from 0) the
    checks are phi >= 0 and (-1)**(k+1) * Delta^k phi >= 0 for
    k = 1..order.  Violations are scaled by max|phi| on the grid; the
    result is 0 when every condition holds.  This is a sampled necessary
    condition, not a proof.
    """
    if grid is None:
        grid = 0.5 * np.arange(20)
    vals = np.asarray(phi.eval(np.asarray(grid, dtype=float)), dtype=float)
    scale = max(np.max(np.abs(vals)), 1e-300)
    worst = max(0.0, -np.min(vals) / scale)
    diff = vals
    for k in range(1, order + 1):
        diff = np.diff(diff)
        signed = (-1) ** (k + 1) * diff
        if signed.size:
            worst = max(worst, -np.min(signed) / scale)
    return float(worst)


def is_bernstein(phi, grid=None, order=3, tol=1e-9):
    return bernstein_violation(phi, grid, order) <= tol
