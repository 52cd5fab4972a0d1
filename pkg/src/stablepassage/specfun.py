"""Gamma-type special functions, the Gauss hypergeometric function and
Beta-type quadrature.

Every definite integral in the package has integrable algebraic endpoint
singularities.  They are removed by the substitution
``t = lo + (hi - lo) * u**(1/p)`` before adaptive Gauss-Kronrod quadrature
(QUADPACK via :func:`scipy.integrate.quad`) is applied.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy import integrate as _integrate
from scipy import special as _sp

from .errors import NonConvergenceError, PoleError

__all__ = [
    "QuadratureResult",
    "log_gamma",
    "gamma",
    "rgamma",
    "gauss_2f1",
    "integrate",
    "beta_integral",
    "incomplete_beta_integral",
]

DEFAULT_TOL = 1e-10
_SUBDIVISIONS = 200


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a definite integral with QUADPACK's error estimate."""

    value: float
    abs_error_estimate: float
    subdivisions: int

    def __float__(self):
        return float(self.value)

    def __add__(self, other):
        return QuadratureResult(
            self.value + other.value,
            self.abs_error_estimate + other.abs_error_estimate,
            self.subdivisions + other.subdivisions,
        )


def _is_pole(z):
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def log_gamma(z):
    """Principal branch of log Gamma(z) for real or complex ``z``.

    Raises :class:`PoleError` at the non-positive integers.  Arrays are
    accepted and checked elementwise.
    """
    arr = np.asarray(z)
    if arr.ndim == 0:
        if _is_pole(arr.item()):
            raise PoleError(f"log_gamma has a pole at z={arr.item()}")
        return complex(_sp.loggamma(complex(arr.item())))
    za = arr.astype(complex)
    bad = (za.imag == 0) & (za.real <= 0) & (za.real == np.floor(za.real))
    if np.any(bad):
        raise PoleError(f"log_gamma has a pole at z={za[bad][0].real}")
    return _sp.loggamma(za)


def gamma(x):
    """Real gamma function; a thin alias kept so callers share one import."""
    return _sp.gamma(x)


def rgamma(z):
    """Reciprocal gamma function 1/Gamma(z), entire, zero at the poles."""
    return _sp.rgamma(z)


# ---------------------------------------------------------------------------
# Gauss hypergeometric function

def log_expm1(x):
    """log(e^x - 1) for x > 0 without overflow or cancellation."""
    return x + math.log(-math.expm1(-x))


_MAX_TERMS = 200_000


def _series_2f1(a, b, c, z, max_terms=_MAX_TERMS):
    term = 1.0
    total = 1.0
    small = 0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if term == 0.0:
            return total
        if abs(term) <= 1e-17 * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise NonConvergenceError(
        f"2F1({a}, {b}; {c}; {z}) series did not converge in {max_terms} terms"
    )


def _near_integer(x, eps=1e-6):
    return abs(x - round(x)) < eps


def _2f1_unit(a, b, c, z, w):
    """2F1 for z in [0, 1], with w = 1 - z > 0 supplied accurately."""
    if z <= 0.5:
        return _series_2f1(a, b, c, z)
    s = c - a - b
    if _near_integer(s) or any(_is_pole(v) for v in (c - a, c - b, a, b)):
        # The 1-z connection formula degenerates; sum the series directly.
        return _series_2f1(a, b, c, z)
    g = _sp.gamma
    A = g(c) * g(s) / (g(c - a) * g(c - b))
    B = g(c) * g(-s) / (g(a) * g(b))
    return A * _series_2f1(a, b, 1.0 - s, w) + B * w**s * _series_2f1(
        c - a, c - b, 1.0 + s, w
    )


def gauss_2f1(a, b, c, z, one_minus_z=None):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.

    The power series is summed on [0, 1/2].  For 1/2 < z < 1 the
    connection formula around z = 1 is used, and for z < 0 the Pfaff
    transformation maps the argument into (0, 1).  ``one_minus_z`` may be
    passed when 1 - z is known more accurately than the subtraction gives
    (z close to 1, or z very negative).
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    w1 = 1.0 - z if one_minus_z is None else float(one_minus_z)
    if _is_pole(c):
        raise PoleError(f"2F1 undefined for c={c}")
    if not w1 > 0.0:
        raise ValueError(f"2F1 requires z < 1, got z={z}")
    if z == 0.0 or a == 0.0 or b == 0.0:
        return 1.0
    if z >= 0.0:
        return _2f1_unit(a, b, c, z, w1)
    # Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), and
    # 1 - z/(z-1) = 1/(1-z)
    return w1 ** (-a) * _2f1_unit(a, c - b, c, z / (z - 1.0), 1.0 / w1)


# ---------------------------------------------------------------------------
# Quadrature


def _quad(fun, lo, hi, tol):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val, err, info = _integrate.quad(
            fun, lo, hi, epsabs=tol, epsrel=tol, limit=_SUBDIVISIONS, full_output=1
        )[:3]
    last = int(info.get("last", 1)) if isinstance(info, dict) else 1
    if not np.isfinite(val):
        raise NonConvergenceError(f"quadrature on [{lo}, {hi}] produced {val}")
    if last >= _SUBDIVISIONS and err > 100 * max(tol, tol * abs(val)):
        raise NonConvergenceError(
            f"subdivision budget exhausted on [{lo}, {hi}] (error estimate {err:.3g})"
        )
    return QuadratureResult(float(val), float(abs(err)), max(last, 1))


def integrate(f, lo, hi, tol=DEFAULT_TOL, p=1.0, q=1.0):
    """Integrate ``f`` over (lo, hi).

    ``p`` and ``q`` declare endpoint behaviour ``(t-lo)**(p-1)`` and
    ``(hi-t)**(q-1)`` of the integrand.  The declared weight is divided
    out of ``f`` at each node and integrated exactly by
    :func:`beta_integral`, so the substitution ``t = lo + h u**(1/p)``
    (mirrored at ``hi``) sees a bounded integrand, and rounding of nodes
    near an endpoint cancels between ``f`` and the weight.  ``hi`` may be
    ``inf``, in which case only the lower endpoint is treated.
    """
    lo, hi = float(lo), float(hi)
    if hi == lo:
        return QuadratureResult(0.0, 0.0, 1)
    if hi < lo:
        r = integrate(f, hi, lo, tol, q, p)
        return QuadratureResult(-r.value, r.abs_error_estimate, r.subdivisions)
    if math.isinf(hi):
        split = lo + 1.0
        head = integrate(f, lo, split, tol, p, 1.0)
        return head + _quad(f, split, hi, tol)
    if p == 1.0 and q == 1.0:
        return _quad(f, lo, hi, tol)

    def g(t):
        return f(t) * (t - lo) ** (1.0 - p) * (hi - t) ** (1.0 - q)

    return beta_integral(g, lo, hi, p, q, tol)


def beta_integral(g, lo, hi, p, q, tol=DEFAULT_TOL):
    """Integral of ``(t-lo)**(p-1) * (hi-t)**(q-1) * g(t)`` over (lo, hi).

    The algebraic weight is absorbed exactly by the substitution, so ``g``
    is only ever evaluated at interior points and never near a singular
    power.  Requires p, q > 0.
    """
    lo, hi = float(lo), float(hi)
    if not hi > lo:
        return QuadratureResult(0.0, 0.0, 1)
    length = hi - lo
    h = 0.5 * length
    # nodes that round onto an endpoint are moved one ulp inside
    lo_in = math.nextafter(lo, hi)
    hi_in = math.nextafter(hi, lo)

    # (t-lo)^(p-1) dt = h^p/p du  with  t = lo + h u^(1/p)
    def fl(u):
        s = u ** (1.0 / p)
        return (length - h * s) ** (q - 1.0) * g(max(lo + h * s, lo_in))

    def fr(v):
        s = v ** (1.0 / q)
        return (length - h * s) ** (p - 1.0) * g(min(hi - h * s, hi_in))

    left = _quad(fl, 0.0, 1.0, tol / 2)
    right = _quad(fr, 0.0, 1.0, tol / 2)
    cl = h**p / p
    cr = h**q / q
    return QuadratureResult(
        cl * left.value + cr * right.value,
        cl * left.abs_error_estimate + cr * right.abs_error_estimate,
        left.subdivisions + right.subdivisions,
    )


def incomplete_beta_integral(a, b, s, one_minus_s=None, tol=DEFAULT_TOL):
    """Unnormalised incomplete Beta integral of ``t**(a-1) * (1-t)**(b-1)``
    over (0, s), for a > 0, any real b and 0 <= s < 1 (s = 1 allowed when
    b > 0).

    ``one_minus_s`` may be supplied when ``1 - s`` is known more accurately
    than the subtraction gives.  On (0, min(s, 1/2)) the weight t**(a-1) is
    absorbed by substitution; on (1/2, s) the variable ``log(1-t)`` turns
    the possibly near-singular factor (1-t)**(b-1) into a smooth
    exponential.
    """
    a, b, s = float(a), float(b), float(s)
    if a <= 0:
        raise ValueError(f"incomplete Beta integral needs a > 0, got {a}")
    if s <= 0.0:
        return 0.0
    w_end = (1.0 - s) if one_minus_s is None else float(one_minus_s)
    if w_end <= 0.0:
        if b <= 0:
            raise ValueError("incomplete Beta integral diverges at t=1 for b <= 0")
        return math.exp(_sp.betaln(a, b))
    cut = min(s, 0.5)
    # t^(a-1) weight with smooth remainder (1-t)^(b-1) on (0, cut)
    head = beta_integral(lambda t: (1.0 - t) ** (b - 1.0), 0.0, cut, a, 1.0, tol)
    total = head.value
    if s > 0.5:
        v_lo = math.log(w_end)
        v_hi = math.log(0.5)

        def fv(v):
            w = math.exp(v)
            return (-math.expm1(v)) ** (a - 1.0) * w**b

        tail = _quad(fv, v_lo, v_hi, tol)
        total += tail.value
    return total
