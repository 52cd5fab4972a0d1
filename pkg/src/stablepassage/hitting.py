"""First-passage laws of a stable process in closed form.

Covers first entry into (-1, 1) from x > 1, the probability of never
entering when alpha < 1, the spectrally negative limit with its atom at
-1, the potential killed on entering (-1, 1), hitting 0 before passing
above 1, and upward passage avoiding 0.  The laws of the underlying
Lamperti process xi from which these are obtained are exposed as well.

Every integral that appears is reduced to an incomplete Beta integral
``B_s(a, b) = int_0^s t^(a-1) (1-t)^(b-1) dt``.  For instance
``int_1^x (t-1)^(a-1) (t+1)^(b-1) dt = 2^(a+b-1) B_{(x-1)/(x+1)}(a, 1-a-b)``
under ``t = (1+s)/(1-s)``, and ``int_1^{1/x} (t-1)^(a-1) t^(b-1) dt =
B_{1-x}(a, 1-a-b)`` under ``t = 1/(1-s)``.
"""

from dataclasses import dataclass
import math
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .specfun import DEFAULT_TOL, beta_integral, incomplete_beta_integral
from .stable import SpectrallyNegativeParams, StableParams, validate_params

__all__ = [
    "HittingLaw",
    "interval_hitting_density",
    "interval_hitting_law",
    "interval_avoidance_prob",
    "spectrally_negative_hitting",
    "killed_potential_density",
    "hit_zero_before_up_prob",
    "passage_density_avoiding_zero",
    "rogozin_overshoot_density",
    "xi_overshoot_density_small",
    "xi_overshoot_density_large",
    "xi_killed_potential",
    "conditioned_potential_density",
]


def _ibeta(a, b, s, one_minus_s):
    return incomplete_beta_integral(a, b, s, one_minus_s)


@dataclass(frozen=True)
class HittingLaw:
    """A law on (lo, hi) with algebraic endpoint behaviour plus an optional atom.

    The density is ``(y-lo)**(lo_exponent-1) * (hi-y)**(hi_exponent-1) *
    smooth(y)``.  ``total_mass`` is the theoretical mass of the law
    (density plus atom), which is below one when the event can fail.
    """

    lo: float
    hi: float
    smooth: Callable[[float], float]
    lo_exponent: float
    hi_exponent: float
    total_mass: float
    atom_location: Optional[float] = None
    atom_mass: float = 0.0

    def density(self, y):
        y = float(y)
        if not self.lo < y < self.hi:
            return 0.0
        return (
            (y - self.lo) ** (self.lo_exponent - 1.0)
            * (self.hi - y) ** (self.hi_exponent - 1.0)
            * self.smooth(y)
        )

    def mass(self, a=None, b=None, tol=DEFAULT_TOL):
        """Integral of the density (atom excluded) over (a, b)."""
        a = self.lo if a is None else max(float(a), self.lo)
        b = self.hi if b is None else min(float(b), self.hi)
        if not b > a:
            return 0.0
        at_lo, at_hi = a == self.lo, b == self.hi
        pl = self.lo_exponent if at_lo else 1.0
        ph = self.hi_exponent if at_hi else 1.0
        el = 0.0 if at_lo else self.lo_exponent - 1.0
        eh = 0.0 if at_hi else self.hi_exponent - 1.0

        def g(t):
            return (t - self.lo) ** el * (self.hi - t) ** eh * self.smooth(t)

        return beta_integral(g, a, b, pl, ph, tol).value

    def integrated_mass(self):
        """Density integral plus atom."""
        return self.mass() + self.atom_mass

    def cdf(self, y):
        """Mass of (lo, y], atom included."""
        y = float(y)
        atom = self.atom_mass if (self.atom_location is not None and y >= self.atom_location) else 0.0
        if y <= self.lo:
            return atom
        return atom + self.mass(self.lo, y)

    def cdf_function(self, n=4001):
        """Vectorised CDF, exact on a grid clustered at both endpoints and
        linearly interpolated between nodes."""
        s = np.linspace(0.0, 1.0, n)
        nodes = self.lo + (self.hi - self.lo) * 0.5 * (1.0 - np.cos(np.pi * s))
        pieces = [0.0]
        for k in range(1, n - 1):
            pieces.append(self.mass(nodes[k - 1], nodes[k]))
        pieces.append(self.mass(nodes[n - 2], nodes[n - 1]))
        cum = np.cumsum(pieces)
        atom_loc = self.atom_location
        atom = self.atom_mass

        def F(y):
            y = np.asarray(y, dtype=float)
            out = np.interp(y, nodes, cum, left=0.0, right=cum[-1])
            if atom_loc is not None and atom:
                out = out + np.where(y >= atom_loc, atom, 0.0)
            return out

        return F


# ---------------------------------------------------------------------------
# first entry into (-1, 1)


def _check_outside(x):
    x = float(x)
    if not x > 1.0:
        raise DomainError(f"starting point must satisfy x > 1, got x={x}")
    return x


def _interval_coefficients(p, x):
    """(A, B) with density (1+y)^{-a rho}(1-y)^{-a rho_hat} (A/(x-y) - B)."""
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    sh = math.sin(math.pi * arh) / math.pi
    A = sh * (x + 1.0) ** ar * (x - 1.0) ** arh
    B = 0.0
    if a > 1.0:
        # int_1^x (t-1)^{a rho_hat - 1}(t+1)^{a rho - 1} dt
        integral = 2.0 ** (a - 1.0) * _ibeta(arh, 1.0 - a, (x - 1.0) / (x + 1.0), 2.0 / (x + 1.0))
        B = (a - 1.0) * sh * integral
    return A, B


def interval_hitting_density(p: StableParams, x, y):
    """Density of the position of first entry into (-1, 1) from x > 1.

    For alpha <= 1 the law is defective; its mass is one minus
    :func:`interval_avoidance_prob`.
    """
    x = _check_outside(x)
    y = float(y)
    if not -1.0 < y < 1.0:
        raise DomainError(f"y must lie in (-1,1), got y={y}")
    A, B = _interval_coefficients(p, x)
    w = (1.0 + y) ** (-p.alpha * p.rho) * (1.0 - y) ** (-p.alpha * p.rho_hat)
    return w * (A / (x - y) - B)


def interval_hitting_law(p: StableParams, x):
    """The first entry law into (-1, 1) from x > 1 as a :class:`HittingLaw`."""
    x = _check_outside(x)
    A, B = _interval_coefficients(p, x)
    total = 1.0 - interval_avoidance_prob(p, x) if p.alpha < 1.0 else 1.0
    return HittingLaw(
        -1.0,
        1.0,
        lambda y: A / (x - y) - B,
        1.0 - p.alpha * p.rho,
        1.0 - p.alpha * p.rho_hat,
        total,
    )


def interval_avoidance_prob(p: StableParams, x):
    """Probability that the process started at x > 1 never enters (-1, 1);
    only positive for alpha < 1."""
    if not p.alpha < 1.0:
        raise DomainError(f"avoidance probability needs alpha < 1, got alpha={p.alpha}")
    x = _check_outside(x)
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    const = math.exp(math.lgamma(1.0 - ar) - math.lgamma(arh) - math.lgamma(1.0 - a))
    return min(1.0, const * _ibeta(arh, 1.0 - a, (x - 1.0) / (x + 1.0), 2.0 / (x + 1.0)))


def spectrally_negative_hitting(sp: SpectrallyNegativeParams, x):
    """Entry law into [-1, 1] without positive jumps: a density on (-1, 1)
    plus an atom at -1 carried by paths that jump over the interval and
    then creep upward onto -1."""
    if not isinstance(sp, SpectrallyNegativeParams):
        raise DomainError("spectrally_negative_hitting needs SpectrallyNegativeParams")
    x = _check_outside(x)
    a = sp.alpha
    c = math.sin(math.pi * (a - 1.0)) / math.pi
    atom = c * _ibeta(a - 1.0, 2.0 - a, (x - 1.0) / (x + 1.0), 2.0 / (x + 1.0))
    k = c * (x - 1.0) ** (a - 1.0)
    return HittingLaw(-1.0, 1.0, lambda y: k / (x - y), 1.0, 2.0 - a, 1.0, -1.0, atom)


# ---------------------------------------------------------------------------
# killed potential


def killed_potential_density(p: StableParams, x, y):
    """Expected occupation density at y before first entry into (-1, 1),
    started from x, for alpha <= 1.

    Both points above 1 use the closed form; both below -1 use the dual
    process with (x, y) reflected.
    """
    if p.alpha > 1.0:
        raise DomainError(f"killed potential needs alpha <= 1, got alpha={p.alpha}")
    x, y = float(x), float(y)
    if x < -1.0 and y < -1.0:
        return killed_potential_density(p.dual(), -x, -y)
    if not (x > 1.0 and y > 1.0):
        raise DomainError(
            f"killed potential needs x, y > 1 (or both < -1), got x={x}, y={y}"
        )
    if y == x:
        raise DomainError("killed potential density is not evaluated at y = x")
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    G = math.gamma(ar) * math.gamma(arh)
    if y < x:
        den = (x - 1.0) * (y + 1.0)
        s = (x + 1.0) * (y - 1.0) / den
        oms = 2.0 * (x - y) / den
        return (x - y) ** (a - 1.0) / G * _ibeta(ar, 1.0 - a, s, oms)
    den = (y - 1.0) * (x + 1.0)
    s = (y + 1.0) * (x - 1.0) / den
    oms = 2.0 * (y - x) / den
    return (y - x) ** (a - 1.0) / G * _ibeta(arh, 1.0 - a, s, oms)


# ---------------------------------------------------------------------------
# hitting zero and passage above 1


def hit_zero_before_up_prob(p: StableParams, x):
    """Probability of hitting 0 before first passage above 1, alpha > 1."""
    if not p.alpha > 1.0:
        raise DomainError(f"point hitting needs alpha in (1,2), got alpha={p.alpha}")
    x = float(x)
    if x == 0.0 or not x < 1.0:
        raise DomainError(f"need x < 1 and x != 0, got x={x}")
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    if x > 0:
        v = (a - 1.0) * x ** (a - 1.0) * _ibeta(ar, 1.0 - a, 1.0 - x, x)
    else:
        v = (a - 1.0) * (-x) ** (a - 1.0) * _ibeta(arh, 1.0 - a, 1.0 / (1.0 - x), -x / (1.0 - x))
    # tends to 1 at x = 0; rounding may overshoot by a few ulps there
    return min(1.0, v)


def rogozin_overshoot_density(p: StableParams, x, y):
    """Density of the position of first passage above 1 from x < 1."""
    x, y = float(x), float(y)
    if not x < 1.0:
        raise DomainError(f"need x < 1, got x={x}")
    if not y > 1.0:
        raise DomainError(f"need y > 1, got y={y}")
    ar = p.alpha * p.rho
    return (
        math.sin(math.pi * ar)
        / math.pi
        * (1.0 - x) ** ar
        * (y - 1.0) ** (-ar)
        / (y - x)
    )


def passage_density_avoiding_zero(p: StableParams, x, y):
    """Density of the first position above 1 on the event that 0 is not hit
    first, alpha > 1.  By the strong Markov property at the hitting time of
    0 it is the unrestricted overshoot density minus the hit-0 probability
    times the overshoot density from 0."""
    h = hit_zero_before_up_prob(p, x)
    return rogozin_overshoot_density(p, x, y) - h * rogozin_overshoot_density(p, 0.0, y)


# ---------------------------------------------------------------------------
# laws of the Lamperti process xi


def xi_overshoot_density_small(p: StableParams, a, w):
    """Density in w < a < 0 of the position of xi at first passage below a,
    alpha <= 1, started from 0."""
    if p.alpha > 1.0:
        raise DomainError(f"needs alpha <= 1, got alpha={p.alpha}")
    a, w = float(a), float(w)
    if not a < 0.0:
        raise DomainError(f"level must be negative, got a={a}")
    if not w < a:
        raise DomainError(f"need w < a, got w={w}, a={a}")
    ar, arh = p.alpha * p.rho, p.alpha * p.rho_hat
    c = math.sin(math.pi * arh) / math.pi
    return (
        c
        * (-math.expm1(a)) ** arh
        * math.exp((1.0 - ar) * w)
        / (-math.expm1(w))
        * (math.exp(a) - math.exp(w)) ** (-arh)
    )


def xi_overshoot_density_large(p: StableParams, a, w):
    """Density in w > 0 of the undershoot a - xi at first passage below
    a < 0, alpha > 1, started from 0."""
    if not p.alpha > 1.0:
        raise DomainError(f"needs alpha in (1,2), got alpha={p.alpha}")
    a, w = float(a), float(w)
    if not a < 0.0:
        raise DomainError(f"level must be negative, got a={a}")
    if not w > 0.0:
        raise DomainError(f"undershoot must be positive, got w={w}")
    al, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    c = math.sin(math.pi * arh) / math.pi
    integral = _ibeta(arh, 2.0 - al, -math.expm1(a), math.exp(a))
    first = (
        math.exp((1.0 - al) * a)
        * (-math.expm1(a)) ** arh
        * math.exp(-w)
        / (math.exp(-a) - math.exp(-w))
    )
    return c * math.exp(-(1.0 - ar) * w) * (-math.expm1(-w)) ** (-arh) * (first - (ar - 1.0) * integral)


def xi_killed_potential(p: StableParams, pstart, w):
    """Occupation density at w > 0 of xi started at pstart > 0 and killed on
    passing below 0, alpha <= 1."""
    if p.alpha > 1.0:
        raise DomainError(f"needs alpha <= 1, got alpha={p.alpha}")
    q, w = float(pstart), float(w)
    if not (q > 0.0 and w > 0.0):
        raise DomainError(f"need pstart > 0 and w > 0, got {q}, {w}")
    if w == q:
        raise DomainError("killed potential is not evaluated at w = pstart")
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    G = math.gamma(ar) * math.gamma(arh)
    if w < q:
        s = math.expm1(-w) / math.expm1(-q)
        oms = -math.exp(-w) * math.expm1(w - q) / -math.expm1(-q)
        return math.expm1(q - w) ** (a - 1.0) / G * _ibeta(ar, 1.0 - a, s, oms)
    s = math.expm1(-q) / math.expm1(-w)
    oms = -math.exp(-q) * math.expm1(q - w) / -math.expm1(-w)
    return (-math.expm1(q - w)) ** (a - 1.0) / G * _ibeta(arh, 1.0 - a, s, oms)


def conditioned_potential_density(alpha, rho, y):
    """Bounded potential density at y != 0 of the Lamperti process of the
    dual stable process conditioned to stay positive, alpha > 1."""
    p = validate_params(alpha, rho)
    if not p.alpha > 1.0:
        raise DomainError(f"needs alpha in (1,2), got alpha={p.alpha}")
    y = float(y)
    if y == 0.0:
        raise DomainError("conditioned potential density is not evaluated at y = 0")
    a, ar, arh = p.alpha, p.alpha * p.rho, p.alpha * p.rho_hat
    G = math.gamma(ar) * math.gamma(arh)
    if y > 0:
        return (
            (-math.expm1(-y)) ** (a - 1.0)
            * math.exp(ar * y)
            / G
            * _ibeta(ar, 1.0 - a, math.exp(-y), -math.expm1(-y))
        )
    return (
        (-math.expm1(y)) ** (a - 1.0)
        * math.exp((1.0 - arh) * y)
        / G
        * _ibeta(arh, 1.0 - a, math.exp(y), -math.expm1(y))
    )
