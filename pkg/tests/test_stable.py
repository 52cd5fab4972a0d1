import math

from hypothesis import given, strategies as st
import numpy as np
import pytest
from scipy import integrate as si
from scipy import stats

from stablepassage.errors import DomainError
from stablepassage.stable import (
    SpectrallyNegativeParams,
    char_exponent,
    levy_density,
    sample_increment,
    validate_params,
)

CPLUS_05_03 = 0.12806835549134632427  # mpmath


@st.composite
def admissible(draw):
    if draw(st.booleans()):
        a = draw(st.floats(0.05, 0.95))
        r = draw(st.floats(0.02, 0.98))
    else:
        a = draw(st.floats(1.05, 1.95))
        lo, hi = 1 - 1 / a, 1 / a
        r = draw(st.floats(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo)))
    return validate_params(a, r)


class TestValidate:
    def test_small_alpha(self):
        p = validate_params(0.5, 0.3)
        assert p.rho_hat == pytest.approx(0.7)
        assert p.c_plus == pytest.approx(CPLUS_05_03, rel=1e-13)
        assert p.c_plus == pytest.approx(math.gamma(1.5) / (math.gamma(0.15) * math.gamma(0.85)), rel=1e-13)

    def test_cauchy(self):
        p = validate_params(1.0, 0.5)
        assert p.c_plus == p.c_minus == pytest.approx(1 / math.pi, rel=1e-15)

    def test_rho_outside_range_names_constraint(self):
        with pytest.raises(DomainError, match=r"1-1/alpha, 1/alpha"):
            validate_params(1.5, 0.9)

    def test_alpha_one_needs_half(self):
        with pytest.raises(DomainError, match="rho=1/2"):
            validate_params(1.0, 0.4)

    @pytest.mark.parametrize("a,r", [(0.0, 0.5), (2.0, 0.5), (0.5, 0.0), (0.5, 1.0), (1.5, 1 / 1.5), (float("nan"), 0.5)])
    def test_rejected(self, a, r):
        with pytest.raises(DomainError):
            validate_params(a, r)

    def test_dual(self):
        p = validate_params(1.3, 0.55).dual()
        assert p.rho == pytest.approx(0.45)

    def test_spectrally_negative(self):
        sp = SpectrallyNegativeParams(1.5)
        assert sp.rho == pytest.approx(2 / 3)
        with pytest.raises(DomainError):
            SpectrallyNegativeParams(0.8)


class TestCharExponent:
    def test_zero(self):
        assert char_exponent(validate_params(1.3, 0.5), 0.0) == 0

    def test_cauchy_is_abs(self):
        psi = char_exponent(validate_params(1.0, 0.5), 3.0)
        assert psi.imag == 0.0
        assert psi.real == pytest.approx(3.0, rel=1e-14)

    def test_symmetric_is_real(self):
        psi = char_exponent(validate_params(0.5, 0.5), 2.7)
        assert abs(psi.imag) < 1e-15

    def test_vectorised(self):
        th = np.linspace(-3, 3, 7)
        p = validate_params(1.2, 0.4)
        out = char_exponent(p, th)
        assert out.shape == th.shape
        assert out[3] == 0

    @given(admissible(), st.floats(0.01, 100.0))
    def test_hermitian_and_positive(self, p, th):
        a, b = char_exponent(p, th), char_exponent(p, -th)
        assert b == pytest.approx(a.conjugate(), rel=1e-14)
        assert a.real > 0

    @given(admissible(), st.floats(0.1, 10.0), st.floats(0.1, 10.0))
    def test_homogeneity(self, p, th, k):
        assert char_exponent(p, k * th) == pytest.approx(k**p.alpha * char_exponent(p, th), rel=1e-12)

    @pytest.mark.parametrize(
        "a,r", [(0.3, 0.2), (0.5, 0.5), (0.8, 0.7), (1.0, 0.5), (1.2, 0.3), (1.5, 0.55), (1.8, 0.5), (1.9, 0.48)]
    )
    @pytest.mark.parametrize("th", [0.7, 2.5])
    def test_levy_khintchine(self, a, r, th):
        """Psi from the Levy measure: no compensation for alpha < 1, full
        compensation for alpha > 1 (equivalent to truncation at 1 plus the
        drift (c+ - c-)/(alpha - 1))."""
        p = validate_params(a, r)
        c_sum, c_diff = p.c_plus + p.c_minus, p.c_plus - p.c_minus
        kw = dict(limit=400, epsabs=1e-11, epsrel=1e-10)
        # real part: int_0^inf (1 - cos th x) x^{-a-1} dx, times c+ + c-
        head = si.quad(lambda x: 2 * math.sin(th * x / 2) ** 2 * x ** (-a - 1), 0, 1, **kw)[0]
        tail = 1 / a - si.quad(lambda x: x ** (-a - 1), 1, np.inf, weight="cos", wvar=th)[0]
        re = c_sum * (head + tail)
        if a == 1.0:
            im = 0.0
        else:
            tail_s = si.quad(lambda x: x ** (-a - 1), 1, np.inf, weight="sin", wvar=th)[0]
            if a < 1:
                head_s = si.quad(lambda x: math.sin(th * x) * x ** (-a - 1), 0, 1, **kw)[0]
                im = -c_diff * (head_s + tail_s)
            else:
                def g(x):
                    u = th * x
                    # sin u - u without cancellation for small u
                    d = -(u**3) / 6 * (1 - u**2 / 20 * (1 - u**2 / 42)) if u < 1e-2 else math.sin(u) - u
                    return d * x ** (-a - 1)

                head_s = si.quad(g, 0, 1, **kw)[0]
                im = -c_diff * (head_s + tail_s - th / (a - 1))
        psi = char_exponent(p, th)
        assert abs(psi - complex(re, im)) <= 1e-5 * abs(psi)


class TestLevyDensity:
    def test_cauchy_value(self):
        assert levy_density(validate_params(1, 0.5), 2.0) == pytest.approx(0.25 / math.pi, rel=1e-14)
        assert 0.25 / math.pi == pytest.approx(0.0795775, abs=1e-7)

    def test_at_one(self):
        p = validate_params(0.5, 0.3)
        assert levy_density(p, 1.0) == p.c_plus
        assert levy_density(p, -1.0) == p.c_minus

    @given(admissible(), st.floats(0.01, 100.0))
    def test_ratio(self, p, x):
        assert levy_density(p, x) / levy_density(p, -x) == pytest.approx(p.c_plus / p.c_minus, rel=1e-12)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            levy_density(validate_params(0.5, 0.5), 0.0)


class TestSampler:
    @pytest.mark.parametrize("a,r", [(0.6, 0.3), (1.5, 0.55), (1.0, 0.5), (1.8, 0.45)])
    def test_positivity(self, a, r):
        p = validate_params(a, r)
        x = sample_increment(p, 0.3, np.random.default_rng(1), size=10**6)
        m = np.mean(np.sign(x))
        assert abs(m - (2 * r - 1)) <= 3 * math.sqrt(1 - (2 * r - 1) ** 2) / 1000

    @pytest.mark.parametrize("a,r", [(0.7, 0.4), (1.5, 0.55)])
    def test_scaling(self, a, r):
        p = validate_params(a, r)
        rng = np.random.default_rng(2)
        c, dt = 2.0, 0.5
        x = sample_increment(p, dt, rng, size=10**5)
        y = c * sample_increment(p, dt * c**-a, rng, size=10**5)
        assert stats.ks_2samp(x, y).statistic <= 0.01

    def test_cauchy(self):
        p = validate_params(1.0, 0.5)
        dt = 0.7
        x = sample_increment(p, dt, np.random.default_rng(3), size=10**5)
        assert stats.kstest(x, stats.cauchy(scale=dt).cdf).statistic <= 0.01

    @pytest.mark.parametrize("a,r", [(0.6, 0.3), (1.3, 0.55)])
    def test_empirical_cf(self, a, r):
        p = validate_params(a, r)
        dt = 0.4
        x = sample_increment(p, dt, np.random.default_rng(4), size=4 * 10**5)
        for th in (0.5, 1.0, 2.0):
            emp = np.mean(np.exp(1j * th * x))
            assert abs(emp - np.exp(-dt * char_exponent(p, th))) <= 5 / math.sqrt(x.size)

    def test_scalar_and_array_dt(self):
        p = validate_params(1.3, 0.5)
        rng = np.random.default_rng(5)
        assert isinstance(sample_increment(p, 0.1, rng), float)
        assert sample_increment(p, np.array([0.1, 0.2, 0.3]), rng).shape == (3,)
        with pytest.raises(DomainError):
            sample_increment(p, 0.0, rng)
