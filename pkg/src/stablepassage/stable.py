"""Strictly alpha-stable processes parameterised by (alpha, rho).

The Levy density is ``c_plus * x**(-alpha-1)`` on x > 0 and
``c_minus * |x|**(-alpha-1)`` on x < 0 with

    c_plus  = Gamma(alpha+1) / (Gamma(alpha*rho) Gamma(1-alpha*rho))
    c_minus = Gamma(alpha+1) / (Gamma(alpha*rho_hat) Gamma(1-alpha*rho_hat)).

With ``E exp(i theta X_t) = exp(-t Psi(theta))`` this normalisation gives

    Psi(theta) = |theta|**alpha * exp(-i pi alpha (rho - 1/2) sgn(theta)),

that is ``c = cos(pi alpha (rho-1/2))`` and
``beta * tan(pi alpha / 2) = tan(pi alpha (rho - 1/2))`` in the
``c |theta|^alpha (1 - i beta tan(pi alpha/2) sgn theta)`` form, where
``beta = (c_plus - c_minus)/(c_plus + c_minus)``.

Sampling uses the Chambers-Mallows-Stuck construction.  Matching
characteristic exponents, the shift ``pi alpha (rho - 1/2)`` replaces the
usual ``arctan(beta tan(pi alpha/2))``, and no scale factor is needed::

    X = sin(alpha V + s) / cos(V)**(1/alpha)
        * (cos(V - alpha V - s) / W)**((1-alpha)/alpha),
    s = pi alpha (rho - 1/2),  V ~ U(-pi/2, pi/2),  W ~ Exp(1).

For alpha = 1 (rho = 1/2 only) the draw is ``tan(V)``, a standard Cauchy
variable.  Increments over time ``dt`` are ``dt**(1/alpha) * X``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError

__all__ = [
    "StableParams",
    "SpectrallyNegativeParams",
    "validate_params",
    "char_exponent",
    "levy_density",
    "sample_increment",
    "standard_draws",
]


@dataclass(frozen=True)
class StableParams:
    """Validated parameters of a stable process; build with
    :func:`validate_params`."""

    alpha: float
    rho: float
    rho_hat: float
    c_plus: float
    c_minus: float

    @property
    def large(self):
        """True in the regime alpha in (1, 2)."""
        return self.alpha > 1.0

    def dual(self):
        """Parameters of the dual process -X (rho and rho_hat swapped)."""
        return validate_params(self.alpha, self.rho_hat)


@dataclass(frozen=True)
class SpectrallyNegativeParams:
    """A stable process with alpha in (1, 2) and no positive jumps.

    This sits on the boundary rho = 1/alpha of the admissible set and is
    only meaningful for the interval hitting law with an atom.
    """

    alpha: float

    def __post_init__(self):
        if not 1.0 < self.alpha < 2.0:
            raise DomainError(
                f"spectrally negative case needs alpha in (1,2), got alpha={self.alpha}"
            )

    @property
    def rho(self):
        return 1.0 / self.alpha


def _jump_constant(alpha, r):
    ar = alpha * r
    return math.gamma(alpha + 1.0) * math.sin(math.pi * ar) / math.pi


def validate_params(alpha, rho):
    """Check that (alpha, rho) is admissible and compute the Levy density
    constants.

    The admissible set is alpha in (0,1) with rho in (0,1); alpha in (1,2)
    with rho in (1-1/alpha, 1/alpha); or (alpha, rho) = (1, 1/2).
    """
    alpha = float(alpha)
    rho = float(rho)
    if not (math.isfinite(alpha) and math.isfinite(rho)):
        raise DomainError("alpha and rho must be finite")
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"alpha must lie in (0,2), got alpha={alpha}")
    if alpha == 1.0:
        if rho != 0.5:
            raise DomainError(f"alpha=1 requires rho=1/2, got rho={rho}")
    elif alpha < 1.0:
        if not 0.0 < rho < 1.0:
            raise DomainError(f"rho must lie in (0,1) for alpha<1, got rho={rho}")
    else:
        lo, hi = 1.0 - 1.0 / alpha, 1.0 / alpha
        if not lo < rho < hi:
            raise DomainError(
                f"rho must lie in (1-1/alpha, 1/alpha) = ({lo:.6g}, {hi:.6g}) "
                f"for alpha={alpha}, got rho={rho}"
            )
    rho_hat = 1.0 - rho
    # Gamma(a r) Gamma(1 - a r) = pi / sin(pi a r)
    c_plus = _jump_constant(alpha, rho)
    c_minus = _jump_constant(alpha, rho_hat)
    if alpha == 1.0:
        c_minus = c_plus
    return StableParams(alpha, rho, rho_hat, c_plus, c_minus)


def _scale_skew(p):
    """(c, beta) of the canonical exponent implied by c_plus and c_minus."""
    a = p.alpha
    beta = (p.c_plus - p.c_minus) / (p.c_plus + p.c_minus)
    if a == 1.0:
        return (p.c_plus + p.c_minus) * math.pi / 2.0, 0.0
    c = -(p.c_plus + p.c_minus) * math.gamma(-a) * math.cos(math.pi * a / 2.0)
    return c, beta


def char_exponent(p, theta):
    """Characteristic exponent Psi(theta), with E exp(i theta X_1) = exp(-Psi)."""
    c, beta = _scale_skew(p)
    th = np.asarray(theta, dtype=float)
    mag = c * np.abs(th) ** p.alpha
    if p.alpha == 1.0:
        out = mag.astype(complex)
    else:
        out = mag * (1.0 - 1j * beta * math.tan(math.pi * p.alpha / 2.0) * np.sign(th))
    return complex(out) if out.ndim == 0 else out


def levy_density(p, x):
    """Density of the Levy measure at x != 0."""
    x = float(x)
    if x == 0.0:
        raise DomainError("Levy density is undefined at x=0")
    if x > 0:
        return p.c_plus * x ** (-(p.alpha + 1.0))
    return p.c_minus * (-x) ** (-(p.alpha + 1.0))


def standard_draws(alpha, rho, size, rng):
    """Draws of X_1 for the given parameters (no validation)."""
    v = rng.uniform(-0.5 * math.pi, 0.5 * math.pi, size)
    if alpha == 1.0:
        rng.standard_exponential(size)  # keep stream usage regime-independent
        return np.tan(v)
    w = rng.standard_exponential(size)
    s = math.pi * alpha * (rho - 0.5)
    return (
        np.sin(alpha * v + s)
        / np.cos(v) ** (1.0 / alpha)
        * (np.cos(v - alpha * v - s) / w) ** ((1.0 - alpha) / alpha)
    )


def sample_increment(p, dt, rng, size=None):
    """Draw X_dt (or an array of draws) using the generator ``rng``.

    ``dt`` may be a scalar or an array broadcast against ``size``.
    """
    dt = np.asarray(dt, dtype=float)
    if np.any(dt <= 0):
        raise DomainError("time step dt must be positive")
    n = size if size is not None else (dt.shape if dt.ndim else None)
    x = standard_draws(p.alpha, p.rho, n, rng)
    out = dt ** (1.0 / p.alpha) * x
    return float(out) if np.ndim(out) == 0 else out
