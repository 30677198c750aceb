"""Quadrature, sampled functions, Laplace/Fourier transforms, and the
mean-value analyticity check."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauberlab import xforms
from tauberlab.errors import DomainError


def make_sampled(t0, step, values, **kw):
    return xforms.SampledComplexFunction(t0, step, np.asarray(values, dtype=complex), **kw)


def test_simpson_weights_basic():
    w = xforms.simpson_weights(5, 0.5)
    assert w == pytest.approx(np.array([1, 4, 2, 4, 1]) * 0.5 / 3.0)
    assert w.sum() == pytest.approx(4 * 0.5)  # integrates the constant 1 exactly
    w_even = xforms.simpson_weights(6, 0.5)  # trailing trapezoid panel
    assert w_even.sum() == pytest.approx(5 * 0.5)
    with pytest.raises(DomainError):
        xforms.simpson_weights(1, 0.5)


def test_quadrature_cubic_exact():
    t = np.linspace(0.0, 2.0, 21)
    vals = t**3 - t + 2.0
    got = xforms.quadrature(vals.astype(complex), t[1] - t[0])
    assert got == pytest.approx(2**4 / 4 - 2**2 / 2 + 4.0, rel=1e-14)


def test_quadrature_error_estimate_is_honest():
    t = np.linspace(0.0, math.pi, 201)
    got, err = xforms.quadrature(np.sin(t).astype(complex), t[1] - t[0], with_error=True)
    assert abs(got - 2.0) <= max(err, 1e-12)


def test_l1_norm_exponential_tail():
    t = np.arange(0.0, 40.0 + 1e-12, 0.01)
    vals = np.exp(-t)
    got = xforms.l1_norm_samples(vals.astype(complex), 0.01)
    assert got == pytest.approx(-math.expm1(-40.0), rel=1e-10)


def test_l1_norm_kinked_function_halving():
    # |e^{-|t|}| has a kink at 0; the absolute-value-aware panels keep the
    # composite rule honest there, so halving still shrinks the error fast.
    def l1_of(step):
        t = np.arange(-20.0, 20.0 + 1e-12, step)
        return xforms.l1_norm_samples(np.exp(-np.abs(t)).astype(complex), step)

    exact = 2.0 * -math.expm1(-20.0)
    e1 = abs(l1_of(0.02) - exact)
    e2 = abs(l1_of(0.01) - exact)
    assert e2 < e1
    assert e1 / max(e2, 1e-300) > 8.0  # at least cubic-order shrinkage


def test_l1_norm_decimation_stability():
    t = np.arange(-12.0, 12.0 + 1e-12, 0.005)
    vals = np.exp(-(t**2)).astype(complex)
    full = xforms.l1_norm_samples(vals, 0.005)
    half = xforms.l1_norm_samples(vals[::2], 0.01)
    assert abs(full - half) / full < 1e-9


@settings(max_examples=60, deadline=None)
@given(
    re=st.floats(-0.8, 0.8, allow_nan=False),
    im=st.floats(-25.0, 25.0, allow_nan=False),
)
def test_transform_triangle_inequality(re, im):
    # |quadrature of e^{-lam t} g| <= quadrature of |e^{-lam t} g| with the
    # same positive weights: the structural bound the half-plane checks use
    t = np.arange(0.0, 8.0 + 1e-12, 0.01)
    g = xforms.SampledComplexFunction(
        0.0, 0.01, (np.exp(1j * 3.0 * t) * np.exp(-t)).astype(complex), support="half"
    )
    value = xforms.laplace(g, complex(re, im), tail_tol=math.inf)
    w = xforms.simpson_weights(g.n, g.step)
    envelope = float(w @ np.abs(np.exp(-complex(re, im) * t) * g.values))
    assert abs(value) <= envelope * (1.0 + 1e-12)


def test_derivative_samples_accuracy():
    t = np.arange(0.0, 2.0 + 1e-12, 0.001)
    g = make_sampled(0.0, 0.001, np.sin(t))
    d = xforms.derivative_samples(g)
    assert np.max(np.abs(d - np.cos(t))) < 5e-6


def test_laplace_gaussian_closed_form():
    t = np.arange(-12.0, 12.0 + 1e-12, 0.005)
    g = make_sampled(-12.0, 0.005, np.exp(-(t**2)), tail_bound=math.exp(-144.0))
    for lam in (0.3 + 2.0j, -0.1 - 1.0j, 0.5j):
        got = xforms.laplace(g, lam)
        expect = math.sqrt(math.pi) * np.exp(lam * lam / 4.0)
        assert abs(got - expect) < 1e-10


def test_laplace_tail_guard():
    t = np.arange(-12.0, 12.0 + 1e-12, 0.01)
    g = make_sampled(-12.0, 0.01, np.exp(-(t**2)), tail_bound=1e-3)
    with pytest.raises(DomainError):
        xforms.laplace(g, 5.0 + 0.0j)  # exp(|Re|*12) * 1e-3 >> tol


def test_laplace_many_matches_scalar():
    t = np.arange(-12.0, 12.0 + 1e-12, 0.01)
    g = make_sampled(-12.0, 0.01, np.exp(-(t**2)), tail_bound=math.exp(-144.0))
    lams = np.array([0.2 + 1j, -0.3 + 4j, 0.0 + 0.0j, 0.1 - 2.5j])
    got = xforms.laplace_many(g, lams)
    expect = np.array([xforms.laplace(g, lam) for lam in lams])
    assert np.max(np.abs(got - expect)) < 1e-13


def test_fourier_invert_gaussian_spectrum():
    # spectrum exp(-u^2) inverts to exp(-t^2/4) / (2 sqrt(pi))
    out = xforms.fourier_invert(
        lambda u: np.exp(-(u**2)),
        eps_decay=1.0,
        tol=1e-10,
        out_grid=(-4.0, 0.05, 161),
        tail_bound_fn=lambda u: math.exp(-(u**2)),
    )
    t = out.t_grid
    expect = np.exp(-(t**2) / 4.0) / (2.0 * math.sqrt(math.pi))
    assert np.max(np.abs(out.values - expect)) < 1e-9
    assert out.meta["quad_err"] < 1e-10


def test_fourier_invert_validates():
    with pytest.raises(DomainError):
        xforms.fourier_invert(lambda u: np.exp(-(u**2)), eps_decay=-1.0, tol=1e-8,
                              out_grid=(-1.0, 0.1, 21))
    with pytest.raises(DomainError):
        xforms.fourier_invert(lambda u: np.exp(-(u**2)), eps_decay=1.0, tol=1e-8,
                              out_grid=(-1.0, 0.0, 21))


def test_weighted_sup_variants():
    pts = np.array([0.5 + 1.0j, 0.5 + 3.0j])
    vals = np.array([2.0 + 0.0j, 1.0 + 0.0j])
    sample = xforms.TransformSample(points=pts, values=vals, meta={})
    w = lambda y: 1.0 + y
    plain = xforms.weighted_sup(sample, w)
    assert plain == pytest.approx(1.0)  # max(2/2, 1/4)
    deriv = xforms.weighted_sup(sample, w, variant="derivative")
    assert deriv == pytest.approx(abs(pts[0]) * 2.0 / 2.0)
    with pytest.raises(DomainError):
        xforms.weighted_sup(sample, w, variant="squared")


def test_cauchy_check_flags_non_analytic():
    contour = xforms.circle_sample(np.exp, 0.3 + 0.2j, 0.25)
    assert xforms.cauchy_check(contour, np.exp(0.3 + 0.2j)) < 1e-14
    bad = xforms.circle_sample(lambda z: np.abs(z), 0.3 + 0.2j, 0.25)
    assert xforms.cauchy_check(bad, abs(0.3 + 0.2j)) > 1e-3


def test_sampled_function_validation():
    with pytest.raises(DomainError):
        make_sampled(0.0, -0.1, [1.0, 2.0, 3.0])
    with pytest.raises(DomainError):
        make_sampled(0.0, 0.1, [[1.0], [2.0]])
    g = make_sampled(-1.0, 0.5, [0.0, 1.0, 0.0])
    assert np.array_equal(g.t_grid, np.array([-1.0, -0.5, 0.0]))
    assert g.n == 3 and g.t_end == pytest.approx(0.0)
