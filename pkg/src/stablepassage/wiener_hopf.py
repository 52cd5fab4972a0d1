"""Wiener-Hopf factors of xi, ladder height Levy densities and renewal
densities, split by regime.

The factorisation is normalised as Psi(theta) = kappa(-i theta) *
kappa_hat(i theta) with unit constant.

* alpha in (0, 1]:
  kappa(l) = Gamma(alpha rho + l)/Gamma(l),
  kappa_hat(l) = Gamma(1 - alpha rho + l)/Gamma(1 - alpha + l).
* alpha in (1, 2):
  kappa(l) = (alpha - 1 + l) Gamma(alpha rho + l)/Gamma(1 + l),
  kappa_hat(l) = l Gamma(1 - alpha rho + l)/Gamma(2 - alpha + l).
"""

from dataclasses import dataclass
import enum
import math
from typing import Callable

import numpy as np

from .errors import DomainError
from .lamperti import LampertiStableParams, LaplaceExponent, psi_xi
from .specfun import incomplete_beta_integral, log_expm1, log_gamma, rgamma
from .stable import StableParams

__all__ = [
    "Regime",
    "Side",
    "WienerHopfPair",
    "regime_of",
    "factors",
    "kappa_complex",
    "kappa_hat_complex",
    "verify_factorisation",
    "ladder_levy_density",
    "renewal_density",
    "ladder_lamperti_params",
    "hypergeometric_exponent",
]


class Regime(enum.Enum):
    SMALL_ALPHA = "small"  # alpha in (0, 1]
    LARGE_ALPHA = "large"  # alpha in (1, 2)


class Side(enum.Enum):
    ASC = "asc"
    DESC = "desc"


def _side(side):
    return side if isinstance(side, Side) else Side(str(side).lower())


def regime_of(p: StableParams):
    return Regime.LARGE_ALPHA if p.alpha > 1.0 else Regime.SMALL_ALPHA


@dataclass(frozen=True)
class WienerHopfPair:
    regime: Regime
    kappa: LaplaceExponent
    kappa_hat: LaplaceExponent
    asc_levy_density: Callable[[float], float]
    desc_levy_density: Callable[[float], float]
    asc_renewal_density: Callable[[float], float]
    desc_renewal_density: Callable[[float], float]


def _is_pole(z):
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _gamma_product(num, den):
    """prod Gamma(num) / prod Gamma(den) at complex arguments.

    Numerator arguments must avoid poles; a pole in the denominator gives 0.
    """
    num = [complex(z) for z in num]
    den = [complex(z) for z in den]
    if any(_is_pole(z) for z in den):
        return 0j
    lg = sum(log_gamma(z) for z in num) - sum(log_gamma(z) for z in den)
    return complex(np.exp(lg))


def kappa_complex(p: StableParams, z):
    """Ascending factor kappa(z) by analytic continuation of the gamma ratio."""
    z = complex(z)
    a, ar = p.alpha, p.alpha * p.rho
    if p.alpha > 1.0:
        return (a - 1.0 + z) * _gamma_product([ar + z], [1.0 + z])
    return _gamma_product([ar + z], [z])


def kappa_hat_complex(p: StableParams, z):
    """Descending factor kappa_hat(z) by analytic continuation."""
    z = complex(z)
    a, ar = p.alpha, p.alpha * p.rho
    if p.alpha > 1.0:
        return z * _gamma_product([1.0 - ar + z], [2.0 - a + z])
    return _gamma_product([1.0 - ar + z], [1.0 - a + z])


def _real(f):
    def g(lam):
        if lam < 0:
            raise DomainError(f"Laplace exponent needs lambda >= 0, got {lam}")
        return f(lam).real

    return g


def verify_factorisation(p: StableParams, theta):
    """Relative residual |Psi(theta) - kappa(-i theta) kappa_hat(i theta)| / (1 + |Psi|)."""
    theta = float(theta)
    psi = psi_xi(p, theta)
    prod = kappa_complex(p, -1j * theta) * kappa_hat_complex(p, 1j * theta)
    return abs(psi - prod) / (1.0 + abs(psi))


def ladder_levy_density(p: StableParams, side, x):
    """Levy density of the ascending or descending ladder height process."""
    side = _side(side)
    x = float(x)
    if not x > 0:
        raise DomainError(f"ladder Levy density is defined on x > 0, got x={x}")
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    L = log_expm1(x)
    if a <= 1.0:
        if side is Side.ASC:
            return -float(rgamma(-ar)) * math.exp(x - (ar + 1.0) * L)
        return -float(rgamma(-arh)) * math.exp(a * x - (arh + 1.0) * L)
    if side is Side.ASC:
        k = ar + 1.0
        return ((a - 1.0) * math.exp(-k * L) + (1.0 - arh) * math.exp(x - k * L)) / math.gamma(1.0 - ar)
    k = arh + 1.0
    return (
        (a - 1.0) * math.exp((a - 1.0) * x - k * L) + (1.0 - ar) * math.exp(a * x - k * L)
    ) / math.gamma(1.0 - arh)


def _tail_integral(a, r, x):
    """Integral of e^{(a - a r) z} (e^z - 1)^{a r - 2} over z > x, written as
    the incomplete Beta integral of u^{1-a} (1-u)^{a r - 2} over (0, e^{-x})."""
    return incomplete_beta_integral(2.0 - a, a * r - 1.0, math.exp(-x), -math.expm1(-x))


def renewal_density(p: StableParams, side, x):
    """Density of the ascending or descending renewal measure at x > 0."""
    side = _side(side)
    x = float(x)
    if not x > 0:
        raise DomainError(f"renewal density is defined on x > 0, got x={x}")
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    one_m = -math.expm1(-x)
    if a <= 1.0:
        if side is Side.ASC:
            return one_m ** (ar - 1.0) / math.gamma(ar)
        return one_m ** (arh - 1.0) * math.exp(-(1.0 - a) * x) / math.gamma(arh)
    if side is Side.ASC:
        tail = _tail_integral(a, p.rho, x)
        return math.exp(-(a - 1.0) * x) * (
            math.gamma(2.0 - a) / math.gamma(1.0 - arh)
            + (1.0 - ar) / math.gamma(ar) * tail
        )
    tail = _tail_integral(a, p.rho_hat, x)
    return math.gamma(2.0 - a) / math.gamma(1.0 - ar) + (1.0 - arh) / math.gamma(arh) * tail


def factors(p: StableParams):
    """Wiener-Hopf factors and ladder characteristics for the regime of p."""
    a, ar = p.alpha, p.alpha * p.rho
    regime = regime_of(p)
    if regime is Regime.SMALL_ALPHA:
        k0 = 0.0
        kh0 = math.gamma(1.0 - ar) / math.gamma(1.0 - a) if a < 1.0 else 0.0
    else:
        k0 = (a - 1.0) * math.gamma(ar)
        kh0 = 0.0
    asc_l = lambda x: ladder_levy_density(p, Side.ASC, x)
    desc_l = lambda x: ladder_levy_density(p, Side.DESC, x)
    kappa = LaplaceExponent(
        _real(lambda lam: kappa_complex(p, lam)), k0, 0.0, asc_l, "kappa"
    )
    kappa_hat = LaplaceExponent(
        _real(lambda lam: kappa_hat_complex(p, lam)), kh0, 0.0, desc_l, "kappa_hat"
    )
    return WienerHopfPair(
        regime,
        kappa,
        kappa_hat,
        asc_l,
        desc_l,
        lambda x: renewal_density(p, Side.ASC, x),
        lambda x: renewal_density(p, Side.DESC, x),
    )


def ladder_lamperti_params(p: StableParams):
    """Lamperti-stable parameter sets identifying the ladder processes.

    For alpha <= 1 returns ``{"asc": ..., "desc": ...}``, the parameters of
    kappa and kappa_hat themselves.  For alpha > 1 returns
    ``{"psi_star": ..., "phi_star": ...}``: kappa is conjugate to
    T_{alpha-1} psi_star and kappa_hat is conjugate to phi_star.
    """
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    if a <= 1.0:
        q_desc = math.gamma(1.0 - ar) / math.gamma(1.0 - a) if a < 1.0 else 0.0
        return {
            "asc": LampertiStableParams(0.0, ar, 1.0, -float(rgamma(-ar)), 0.0),
            "desc": LampertiStableParams(q_desc, arh, a, -float(rgamma(-arh)), 0.0),
        }
    return {
        "psi_star": LampertiStableParams(
            math.gamma(2.0 - a) / math.gamma(1.0 - arh), 1.0 - ar, arh, -float(rgamma(ar - 1.0)), 0.0
        ),
        "phi_star": LampertiStableParams(
            math.gamma(2.0 - a) / math.gamma(1.0 - ar), 1.0 - arh, ar, -float(rgamma(arh - 1.0)), 0.0
        ),
    }


def hypergeometric_exponent(beta, gamma_, beta_hat, gamma_hat, theta):
    """Characteristic exponent of a hypergeometric Levy process."""
    it = 1j * float(theta)
    return _gamma_product([1.0 - beta + gamma_ - it], [1.0 - beta - it]) * _gamma_product(
        [beta_hat + gamma_hat + it], [beta_hat + it]
    )
