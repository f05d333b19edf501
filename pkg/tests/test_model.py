import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cogsec.config import SystemConfig
from cogsec.model import (Scheme, artificial_noise_rates, construct_noise_vector,
                          proposed_batch, rate_eve, rate_eve_max, rate_main,
                          sample_realization, sample_realizations, schedule_proposed,
                          schedule_traditional, traditional_batch, transmit_power)

from conftest import make_realization


def cfg(m=1, n=1, **kw):
    return SystemConfig(m_users=m, n_eves=n, **kw)


# --- sampling ---------------------------------------------------------------


def test_sampling_mean_unit_gain():
    c = cfg(2, 1, sigma_m_sq=1.0)
    g = sample_realizations(c, np.random.default_rng(1), 1_000_000).g_main
    assert abs(g[:, 0].mean() - 1.0) < 0.01


def test_sampling_variance_sigma2():
    # exponential with mean 2 has variance 4
    c = cfg(1, 1, sigma_m_sq=2.0)
    g = sample_realizations(c, np.random.default_rng(2), 1_000_000).g_main[:, 0]
    assert abs(g.var(ddof=1) - 4.0) < 0.05


def test_sampling_all_fields_within_4se():
    c = SystemConfig(m_users=3, n_eves=2, sigma_m_sq=0.8, lambda_me=3.0,
                     theta_main=[1.0, 0.5, 2.0], theta_eve=[[0.6, 1.0], [2.0, 0.3], [1, 1]],
                     sigma_ip_sq=[0.5, 1.0, 1.5])
    n = 400_000
    r = sample_realizations(c, np.random.default_rng(3), n)
    for got, want in [(r.g_main, c.sigma_main_sq), (r.g_primary, c.sigma_ip_sq),
                      (r.g_eve, c.sigma_eve_sq)]:
        mean = got.mean(axis=0)
        se = want / math.sqrt(n)  # exponential std equals its mean
        assert np.all(np.abs(mean - want) < 4 * se)


def test_sampling_is_circular():
    c = cfg(1, 1)
    h = sample_realizations(c, np.random.default_rng(4), 200_000).h_main[:, 0]
    assert abs(h.real.var() - 0.5) < 0.01
    assert abs(h.imag.var() - 0.5) < 0.01
    assert abs(np.mean(h.real * h.imag)) < 0.01


def test_sampling_deterministic():
    c = cfg(3, 2)
    a = sample_realization(c, np.random.default_rng(99))
    b = sample_realization(c, np.random.default_rng(99))
    for f in ("h_main", "h_primary", "h_eve"):
        np.testing.assert_array_equal(getattr(a, f), getattr(b, f))


def test_g_fields_are_squared_moduli(rng):
    r = sample_realization(cfg(2, 3), rng)
    np.testing.assert_array_equal(r.g_eve, r.h_eve.real ** 2 + r.h_eve.imag ** 2)
    assert np.all(r.g_main > 0) and np.all(r.g_primary > 0) and np.all(r.g_eve > 0)


def test_underflowed_draws_are_resampled():
    class Zeros:
        """Generator stand-in whose first normals are exactly zero."""
        def __init__(self):
            self.inner = np.random.default_rng(0)
            self.calls = 0

        def standard_normal(self, shape):
            self.calls += 1
            if self.calls <= 2:
                return np.zeros(shape)
            return self.inner.standard_normal(shape)

    r = sample_realization(cfg(2, 1), Zeros())
    assert np.all(r.g_main > 0)


# --- rates --------------------------------------------------------------------


def test_transmit_power_examples():
    assert transmit_power(cfg(interference_cap=1.0), make_realization([1], [0.5], [[1]]), 0) == pytest.approx(2.0)
    assert transmit_power(cfg(interference_cap=2.0), make_realization([1], [2.0], [[1]]), 0) == pytest.approx(1.0)


def test_rate_main_examples():
    c = cfg(interference_cap=1.0, noise_cbs=1.0)
    assert rate_main(c, make_realization([3.0], [1.0], [[1]]), 0) == pytest.approx(2.0)
    assert rate_main(c, make_realization([1.0], [2.0], [[1]]), 0) == pytest.approx(0.5849625007)
    assert rate_main(c, make_realization([0.0], [1.0], [[1]]), 0) == 0.0


def test_rate_eve_examples():
    assert rate_eve(cfg(), make_realization([1], [1], [[1.0]]), 0, 0) == pytest.approx(1.0)
    assert rate_eve(cfg(), make_realization([1], [1], [[0.0]]), 0, 0) == 0.0
    c = cfg(interference_cap=4.0, noise_eve=2.0)
    assert rate_eve(c, make_realization([1], [1], [[1.0]]), 0, 0) == pytest.approx(math.log2(3))


def test_rate_eve_max_examples():
    c = cfg(1, 3)
    # rates 0.5, 2.0, 1.1 bits -> snr = 2^r - 1
    g = [[2 ** 0.5 - 1, 2 ** 2.0 - 1, 2 ** 1.1 - 1]]
    assert rate_eve_max(c, make_realization([1], [1], g), 0) == pytest.approx(2.0)
    one = make_realization([1], [1], [[0.7]])
    assert rate_eve_max(cfg(1, 1), one, 0) == rate_eve(cfg(1, 1), one, 0, 0)
    same = make_realization([1], [1], [[0.3, 0.3, 0.3]])
    assert rate_eve_max(c, same, 0) == rate_eve(c, same, 0, 2)


def test_index_checks():
    r = make_realization([1], [1], [[1]])
    with pytest.raises(IndexError):
        rate_main(cfg(), r, 1)
    with pytest.raises(IndexError):
        rate_eve(cfg(), r, 0, 1)


# --- scheduling --------------------------------------------------------------


def test_single_user_schemes_identical(rng):
    c = cfg(1, 3)
    for _ in range(50):
        r = sample_realization(c, rng)
        assert schedule_proposed(c, r).__dict__ | {"scheme": None} == \
            schedule_traditional(c, r).__dict__ | {"scheme": None}


def test_proposed_argmax():
    # user 0 margin 0.3 bits, user 1 margin 0.9 bits (N_b = N_e = I = 1, y = 1)
    c = cfg(2, 1)
    g_main = [2 ** 1.3 - 1, 2 ** 1.9 - 1]
    r = make_realization(g_main, [1, 1], [[1.0], [1.0]])
    out = schedule_proposed(c, r)
    assert out.selected_user == 1
    assert out.secrecy_rate == pytest.approx(0.9)


def test_traditional_ignores_eavesdroppers():
    c = cfg(2, 1)
    g_main = [2 ** 1.0 - 1, 2 ** 2.5 - 1]
    r = make_realization(g_main, [1, 1], [[0.01], [1000.0]])
    out = schedule_traditional(c, r)
    assert out.selected_user == 1
    assert out.rate_main == pytest.approx(2.5)
    assert out.intercept


def test_traditional_vs_proposed_disagree():
    # user 0: best main link but a strong eavesdropper; user 1: weaker but secure
    c = cfg(2, 1)
    r = make_realization([10.0, 3.0], [1.0, 1.0], [[50.0], [0.1]])
    trad, prop = schedule_traditional(c, r), schedule_proposed(c, r)
    # brute force over both criteria
    rb = [math.log2(1 + g) for g in (10.0, 3.0)]
    re = [math.log2(1 + g) for g in (50.0, 0.1)]
    assert trad.selected_user == int(np.argmax(rb)) == 0
    assert prop.selected_user == int(np.argmax(np.subtract(rb, re))) == 1
    assert trad.secrecy_rate == 0.0 and prop.secrecy_rate > 0.0


def test_ties_go_to_lowest_index():
    c = cfg(3, 1)
    r = make_realization([2.0, 2.0, 2.0], [1, 1, 1], [[0.5], [0.5], [0.5]])
    assert schedule_proposed(c, r).selected_user == 0
    assert schedule_traditional(c, r).selected_user == 0


def test_outcome_invariants(rng):
    c = cfg(3, 2, lambda_me=0.5)
    for _ in range(200):
        r = sample_realization(c, rng)
        for out in (schedule_proposed(c, r), schedule_traditional(c, r),
                    artificial_noise_rates(c, r)):
            assert out.secrecy_rate == max(out.rate_main - out.rate_eve, 0.0)
            assert out.intercept == (out.rate_main < out.rate_eve)
            assert out.rate_main >= 0 and out.rate_eve >= 0


def test_dominance_exhaustive():
    gen = np.random.default_rng(8)
    count = 0
    while count < 100_000:
        m, n = int(gen.integers(1, 7)), int(gen.integers(1, 5))
        c = SystemConfig(m_users=m, n_eves=n, lambda_me=float(10 ** gen.uniform(-1, 2)),
                         theta_main=gen.uniform(0.2, 2, m), theta_eve=gen.uniform(0.2, 2, (m, n)),
                         sigma_ip_sq=gen.uniform(0.2, 2, m), noise_eve=gen.uniform(0.5, 2, n),
                         noise_cbs=float(gen.uniform(0.5, 2)))
        batch = sample_realizations(c, gen, 2000)
        p, t = proposed_batch(c, batch), traditional_batch(c, batch)
        assert np.all(p.secrecy_rate >= t.secrecy_rate)
        if m == 1:
            np.testing.assert_array_equal(p.secrecy_rate, t.secrecy_rate)
        count += 2000


# --- artificial noise --------------------------------------------------------


def test_an_main_rate_example():
    c = cfg(2, 1)
    # |sqrt2 + sqrt2|^2 / 1 = 8 -> log2(1 + 8 / 4)
    r = make_realization([2.0, 2.0], [1.0, 1.0], [[1.0], [1.0]])
    out = artificial_noise_rates(c, r)
    assert out.rate_main == pytest.approx(math.log2(3))
    assert out.selected_user is None


def test_an_eve_rate_below_one_bit(rng):
    c = cfg(3, 4, lambda_me=0.01)
    for _ in range(200):
        assert artificial_noise_rates(c, sample_realization(c, rng)).rate_eve < 1.0


def test_an_eve_rate_limit():
    c = cfg(2, 1)
    r = make_realization([1.0, 1.0], [1.0, 1.0], [[1e14], [1e14]])
    assert artificial_noise_rates(c, r).rate_eve == pytest.approx(1.0, abs=1e-12)


def test_an_rejects_single_user():
    r = make_realization([1.0], [1.0], [[1.0]])
    with pytest.raises(ValueError, match="m_users"):
        artificial_noise_rates(cfg(1, 1), r)
    with pytest.raises(ValueError, match="m_users"):
        construct_noise_vector(cfg(1, 1), r, np.random.default_rng(0))
    # formula-level evaluation at M = 1 is available on request
    assert artificial_noise_rates(cfg(1, 1), r, allow_single_user=True).rate_main >= 0


def test_noise_vector_two_users(rng):
    c = cfg(2, 1, interference_cap=3.0)
    r = sample_realization(c, rng)
    w = construct_noise_vector(c, r, rng)
    a = np.sqrt(c.interference_cap / (2 * 2 * r.g_primary)) * r.h_main
    # in two dimensions the null space is spanned by (a2, -a1)
    ref = np.array([a[1], -a[0]])
    cosine = abs(np.vdot(ref, w)) / (np.linalg.norm(ref) * np.linalg.norm(w))
    assert cosine == pytest.approx(1.0, abs=1e-12)
    assert np.mean(np.abs(w) ** 2) == pytest.approx(1.0)


def test_noise_vector_null_residual():
    gen = np.random.default_rng(5)
    for _ in range(1000):
        m = int(gen.integers(2, 9))
        c = cfg(m, 2, interference_cap=float(gen.uniform(0.1, 10)))
        r = sample_realization(c, gen)
        w = construct_noise_vector(c, r, gen)
        a = np.sqrt(c.interference_cap / (m * r.g_primary) / 2) * r.h_main
        assert abs(np.sum(a * w)) / (np.linalg.norm(a) * np.linalg.norm(w)) < 1e-10
        assert np.mean(np.abs(w) ** 2) == pytest.approx(1.0)
        e = np.sqrt(c.interference_cap / (m * r.g_primary) / 2)[:, None] * r.h_eve
        assert np.all(np.abs((e * w[:, None]).sum(axis=0)) > 0)


# --- invariances --------------------------------------------------------------

positive = st.floats(min_value=1e-2, max_value=1e2)


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 5), n=st.integers(1, 4), scale=positive, cap=positive,
       nb=positive, ne=positive, seed=st.integers(0, 2 ** 32 - 1))
def test_joint_power_scaling_invariance(m, n, scale, cap, nb, ne, seed):
    a = SystemConfig(m_users=m, n_eves=n, interference_cap=cap, noise_cbs=nb, noise_eve=ne)
    b = a.replace(interference_cap=cap * scale, noise_cbs=nb * scale, noise_eve=ne * scale)
    r = sample_realization(a, np.random.default_rng(seed))
    funcs = [schedule_proposed, schedule_traditional]
    if m >= 2:
        funcs.append(artificial_noise_rates)
    for f in funcs:
        x, y = f(a, r), f(b, r)
        assert x.selected_user == y.selected_user
        assert x.rate_main == pytest.approx(y.rate_main, rel=1e-9, abs=1e-12)
        assert x.rate_eve == pytest.approx(y.rate_eve, rel=1e-9, abs=1e-12)
        if abs(x.rate_main - x.rate_eve) > 1e-9:
            assert x.intercept == y.intercept


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 5), n=st.integers(1, 4), cap=positive, cap2=positive,
       seed=st.integers(0, 2 ** 32 - 1))
def test_scheduling_intercept_independent_of_cap(m, n, cap, cap2, seed):
    a = SystemConfig(m_users=m, n_eves=n, interference_cap=cap, lambda_me=2.0)
    b = a.replace(interference_cap=cap2)
    r = sample_realization(a, np.random.default_rng(seed))
    # intercept <=> |h_b|^2/N_b < max_j |h_e|^2/N_e for the chosen user; I cancels
    x = schedule_proposed(a, r)
    margins = r.g_main / a.noise_cbs - (r.g_eve / a.noise_eve).max(axis=-1)
    if np.min(np.abs(margins)) > 1e-12:
        assert x.intercept == schedule_proposed(b, r).intercept == bool(np.all(margins < 0))
        t = schedule_traditional(a, r)
        if t.selected_user == schedule_traditional(b, r).selected_user:
            assert t.intercept == schedule_traditional(b, r).intercept


def test_scheme_parse():
    assert Scheme.parse("AN") is Scheme.ARTIFICIAL_NOISE
    assert Scheme.parse("proposed") is Scheme.PROPOSED
    with pytest.raises(ValueError):
        Scheme.parse("round-robin")
