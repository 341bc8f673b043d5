import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelcert.chebyshev import MAX_DEGREE, cheb_t, cheb_u, h_series, t_series
from hankelcert.series import TruncatedSeries, mul


@pytest.mark.parametrize(
    "n, t, expected",
    [(0, 0.75, 1.0), (1, 0.75, 1.5), (3, 0.6, 8 * 0.216 - 2.4)],
)
def test_cheb_u_values(n, t, expected):
    assert cheb_u(n, t) == pytest.approx(expected, abs=1e-15)


def test_cheb_u_explicit_polynomials():
    for t in np.linspace(-1, 1, 9):
        assert cheb_u(2, t) == pytest.approx(4 * t * t - 1, abs=1e-14)
        assert cheb_u(3, t) == pytest.approx(8 * t**3 - 4 * t, abs=1e-14)
        assert cheb_u(4, t) == pytest.approx(16 * t**4 - 12 * t * t + 1, abs=1e-14)


@pytest.mark.parametrize("n, t, expected", [(0, 0.3, 1.0), (2, 0.5, -0.5)])
def test_cheb_t_values(n, t, expected):
    assert cheb_t(n, t) == pytest.approx(expected, abs=1e-15)


def test_cheb_t_via_u_relation():
    # 2 T_2 = U_2 - U_0
    assert cheb_t(2, 0.75) == pytest.approx((cheb_u(2, 0.75) - cheb_u(0, 0.75)) / 2, abs=1e-15)
    assert cheb_t(2, 0.75) == pytest.approx(0.125, abs=1e-15)


def test_recurrence_valid_outside_open_interval():
    assert cheb_u(5, 1.0) == 6.0
    assert cheb_u(5, -1.0) == -6.0
    assert cheb_t(7, 1.0) == 1.0
    assert cheb_t(3, 2.0) == pytest.approx(4 * 8 - 3 * 2)


@pytest.mark.parametrize("fn", [cheb_u, cheb_t])
def test_degree_errors(fn):
    with pytest.raises(ValueError):
        fn(-1, 0.5)
    with pytest.raises(ValueError):
        fn(MAX_DEGREE + 1, 0.5)
    with pytest.raises(TypeError):
        fn(1.5, 0.5)


def test_array_input():
    ts = np.linspace(-0.9, 0.9, 7)
    out = cheb_u(3, ts)
    assert out.shape == ts.shape
    np.testing.assert_allclose(out, 8 * ts**3 - 4 * ts, atol=1e-14)


def test_h_series_values():
    np.testing.assert_allclose(h_series(0.75, 3).coefficients, [1, 1.5, 1.25, 0.375], atol=1e-15)
    np.testing.assert_allclose(h_series(0.0, 2).coefficients, [1, 0, -1], atol=1e-15)


@pytest.mark.parametrize("t", [1.0, -1.0, 1.5])
def test_h_series_rejects_closed_endpoints(t):
    with pytest.raises(ValueError):
        h_series(t, 3)


@settings(max_examples=50, deadline=None)
@given(st.floats(-0.99, 0.99), st.integers(2, 20))
def test_generating_function_identities(t, N):
    denom = TruncatedSeries([1.0, -2 * t, 1.0] + [0.0] * (N - 2))
    one = np.zeros(N + 1)
    one[0] = 1
    np.testing.assert_allclose(mul(h_series(t, N), denom).coefficients, one, atol=1e-12)
    one_minus_tz = one.copy()
    one_minus_tz[1] = -t
    np.testing.assert_allclose(mul(t_series(t, N), denom).coefficients, one_minus_tz, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(-0.99, 0.99), st.integers(2, 20))
def test_u_t_relations(t, n):
    assert abs(cheb_u(n, t) - 2 * t * cheb_u(n - 1, t) + cheb_u(n - 2, t)) <= 1e-12
    assert abs(2 * cheb_t(n, t) - (cheb_u(n, t) - cheb_u(n - 2, t))) <= 1e-12
    assert abs(cheb_t(n, t) - (cheb_u(n, t) - t * cheb_u(n - 1, t))) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, math.pi - 0.05), st.integers(0, 20))
def test_trigonometric_forms(theta, n):
    t = math.cos(theta)
    assert abs(cheb_u(n, t) - math.sin((n + 1) * theta) / math.sin(theta)) <= 1e-10
    assert abs(cheb_t(n, t) - math.cos(n * theta)) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(st.floats(-0.99, 0.99), st.integers(1, 8))
def test_derivative_relation(t, n):
    # Central differences carry an h^2 T'''/6 truncation error that grows like
    # n^6, so the 1e-6 bound is held on degrees up to 8.
    h = 1e-5
    fd = (cheb_t(n, t + h) - cheb_t(n, t - h)) / (2 * h)
    assert abs(fd - n * cheb_u(n - 1, t)) <= 1e-6
