import math

import numpy as np
import pytest

import bohrkit as bk
from bohrkit.errors import (DomainError, InconclusiveError, PreconditionError)
from bohrkit.extremal import (ExtremalParams, bernardi_extremal_decomposition,
                              bernardi_first_order_factor,
                              cesaro_extremal_decomposition,
                              cesaro_first_order_factor, extremal_coeffs,
                              extremal_eval, identity_suite, lemma1_check,
                              remainder_order_check, sharpness_scan_bernardi,
                              sharpness_scan_cesaro)
from bohrkit.operators import BernardiParams, bernardi_majorant, cesaro_majorant
from bohrkit.radii import bernardi_radius, cesaro_radius
from bohrkit.series import DomainGamma, truncation_order

from oracles import (bernardi_extremal_closed_form, cauchy_coeffs,
                     cesaro_extremal_closed_form)

WITNESS_LADDER = (0.99, 0.999, 0.9999)


def direct_cesaro_extremal_majorant(a, gamma, r):
    """Independent direct summation of the averaged extremal majorant."""
    q = a * (1.0 - gamma) / (1.0 - a * gamma)
    a0 = (a - gamma) / (1.0 - a * gamma)
    lead = (1.0 - a * a) / (a * (1.0 - a * gamma))
    n = truncation_order(r, 1.0, 1e-15) + 64
    mags = np.empty(n + 1)
    mags[0] = abs(a0)
    mags[1:] = lead * q ** np.arange(1, n + 1)
    weights = np.cumsum(mags) / np.arange(1, n + 2)
    return math.fsum(weights * np.power(r, np.arange(n + 1)))


# ------------------------------------------------------------ extremal family

def test_extremal_coeffs_reduce_to_mobius_at_gamma_zero():
    a = 0.7
    s = extremal_coeffs(ExtremalParams(a, DomainGamma(0.0)), 10)
    assert s.coeffs[0] == pytest.approx(a)
    for n in range(1, 11):
        assert s.coeffs[n] == pytest.approx(-(1.0 - a * a) * a ** (n - 1), abs=1e-15)


def test_extremal_leading_coefficient_vanishes_as_a_meets_gamma():
    gamma = 0.4
    s = extremal_coeffs(ExtremalParams(gamma + 1e-8, DomainGamma(gamma)), 2)
    assert abs(s.coeffs[0]) < 2e-8


def test_extremal_coeffs_match_cauchy_oracle():
    a, gamma = 0.7, 0.2
    s = extremal_coeffs(ExtremalParams(a, DomainGamma(gamma)), 12)
    expected = cauchy_coeffs(lambda z: extremal_eval(ExtremalParams(a, DomainGamma(gamma)), z),
                             12, radius=0.5)
    assert np.max(np.abs(np.asarray(s.coeffs) - expected)) < 1e-11


def test_extremal_params_require_a_above_gamma():
    with pytest.raises(PreconditionError):
        ExtremalParams(0.3, DomainGamma(0.5))
    with pytest.raises(PreconditionError):
        ExtremalParams(1.0, DomainGamma(0.0))


def test_extremal_function_maps_omega_into_unit_disk():
    # Evaluate the closed rational form at 500 random points of Omega_gamma
    # (the affine preimage of the unit disk) and at boundary points.
    gamma = 0.35
    p = ExtremalParams(0.8, DomainGamma(gamma))
    rng = np.random.default_rng(61)
    for _ in range(500):
        w = math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        z = (w - gamma) / (1.0 - gamma)
        assert abs(extremal_eval(p, z)) <= 1.0 + 1e-12
    for theta in np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False):
        w = np.exp(1j * theta) * (1.0 - 1e-9)
        z = (w - gamma) / (1.0 - gamma)
        assert abs(extremal_eval(p, z)) > 1.0 - 1e-6


# ------------------------------------------------------ cesaro decomposition

def test_cesaro_decomposition_parts_sum_to_direct_majorant():
    a, gamma, r = 0.9, 0.3, 0.4
    d = cesaro_extremal_decomposition(ExtremalParams(a, DomainGamma(gamma)), r)
    direct = direct_cesaro_extremal_majorant(a, gamma, r)
    assert d.bound + d.first_order + d.remainder == pytest.approx(direct, abs=1e-10)


def test_cesaro_extremal_majorant_matches_two_log_closed_form():
    for (a, gamma, r) in [(0.9, 0.3, 0.4), (0.65, 0.2, 0.6), (0.99, 0.0, 0.55),
                          (0.8, 0.6, 0.3)]:
        d = cesaro_extremal_decomposition(ExtremalParams(a, DomainGamma(gamma)), r)
        total = d.bound + d.first_order + d.remainder
        assert total == pytest.approx(cesaro_extremal_closed_form(a, gamma, r), abs=1e-10)


def test_cesaro_first_order_term_is_linear_in_one_minus_a():
    gamma, r = 0.3, 0.4
    d = cesaro_extremal_decomposition(ExtremalParams(1.0 - 1e-8, DomainGamma(gamma)), r)
    factor = cesaro_first_order_factor(DomainGamma(gamma), r)
    assert abs(d.first_order) <= 2e-8 * abs(factor)


def test_cesaro_first_order_factor_vanishes_at_radius():
    for gamma in (0.0, 0.3, 0.7):
        dg = DomainGamma(gamma)
        root = cesaro_radius(dg).value
        assert abs(2.0 * root + (3.0 + gamma) * (1.0 - root) * math.log1p(-root)) <= 1e-9


def test_cesaro_first_order_factor_sign_flips_at_radius():
    for gamma in (0.0, 0.4):
        dg = DomainGamma(gamma)
        root = cesaro_radius(dg).value
        below = cesaro_first_order_factor(dg, root - 1e-6)
        above = cesaro_first_order_factor(dg, root + 1e-6)
        assert below < 0.0 < above


# ---------------------------------------------------- bernardi decomposition

@pytest.mark.parametrize("a,gamma,beta,r", [
    (0.9, 0.2, 1.0, 0.3),
    (0.9, 0.0, 1.0, 0.3),
    (0.7, 0.4, 2.0, 0.5),
])
def test_bernardi_decomposition_parts_sum_to_direct_majorant(a, gamma, beta, r):
    d = bernardi_extremal_decomposition(ExtremalParams(a, DomainGamma(gamma)), beta, r)
    direct = bernardi_extremal_closed_form(a, gamma, beta, r)
    assert d.bound + d.first_order + d.remainder == pytest.approx(direct, abs=1e-10)


def test_bernardi_first_order_vanishes_at_radius():
    gamma, beta = 0.2, 1.0
    dg = DomainGamma(gamma)
    root = bernardi_radius(dg, beta).value
    d = bernardi_extremal_decomposition(ExtremalParams(0.9, dg), beta, root)
    assert abs(d.first_order) <= 1e-9


def test_bernardi_first_order_factor_sign_flips_at_radius():
    for (gamma, beta) in [(0.0, 1.0), (0.5, 2.0)]:
        dg = DomainGamma(gamma)
        root = bernardi_radius(dg, beta).value
        assert bernardi_first_order_factor(dg, beta, root - 1e-6) > 0.0
        assert bernardi_first_order_factor(dg, beta, root + 1e-6) < 0.0


def test_bernardi_remainder_is_quadratic_at_gamma_zero():
    # At gamma = 0 the remainder's linear part cancels identically; the
    # ladder fit pins the quadratic order.
    dg = DomainGamma(0.0)
    remainders = {}
    for eps in (1e-2, 1e-3, 1e-4):
        d = bernardi_extremal_decomposition(ExtremalParams(1.0 - eps, dg), 1.0, 0.3)
        remainders[eps] = abs(d.remainder)
    assert remainders[1e-2] / remainders[1e-3] == pytest.approx(100.0, rel=0.2)
    assert remainders[1e-3] / remainders[1e-4] == pytest.approx(100.0, rel=0.2)


def test_bernardi_remainder_linear_coefficient_for_positive_gamma():
    # For gamma > 0 (and r away from the radius) the remainder is linear in
    # (1-a) with coefficient -(2 gamma/(1-gamma)) * tail-balance factor; the
    # quadratic-order claim only survives at gamma = 0 or at the radius.
    # See the decisions ledger.
    for (gamma, beta, r) in [(0.2, 1.0, 0.3), (0.5, 2.0, 0.4)]:
        dg = DomainGamma(gamma)
        predicted = -(2.0 * gamma / (1.0 - gamma)) * bernardi_first_order_factor(dg, beta, r)
        for eps in (1e-4, 1e-5):
            d = bernardi_extremal_decomposition(ExtremalParams(1.0 - eps, dg), beta, r)
            assert d.remainder / eps == pytest.approx(predicted, rel=2e-3)


def test_bernardi_decomposition_flags_small_beta_as_exploratory():
    with pytest.warns(UserWarning, match="exploratory"):
        bernardi_extremal_decomposition(ExtremalParams(0.9, DomainGamma(0.1)), 0.5, 0.3)


# -------------------------------------------------------------- lemma 1 suite

def test_lemma1_bound_holds_at_gamma_04():
    report = lemma1_check(DomainGamma(0.4), 1000, 8, 64, 7)
    assert report.max_ratio <= 1.0 + 1e-9
    assert report.worst_spec is not None


def test_lemma1_equality_for_single_mobius_factor():
    # phi_a at gamma = 0: |a_1| = 1 - a^2 = 1 - |a_0|^2, ratio exactly 1.
    report = lemma1_check(DomainGamma(0.0), 400, 8, 64, 3)
    assert 1.0 - 1e-9 <= report.max_ratio <= 1.0 + 1e-9


def test_lemma1_skips_degenerate_constants():
    report = lemma1_check(DomainGamma(0.3), 50, 0, 16, 5)
    assert report.max_ratio == 0.0
    assert report.worst_spec is None


def test_lemma1_worst_spec_is_reproducible():
    report = lemma1_check(DomainGamma(0.25), 200, 8, 64, 11)
    from bohrkit.series import sample_schur_omega
    sample = sample_schur_omega(report.worst_spec, 64)
    mags = np.abs(sample.coeff_array())
    ratio = float(np.max(mags[1:])) * 1.25 / (1.0 - mags[0] ** 2)
    assert ratio == pytest.approx(report.max_ratio, rel=1e-12)


def test_lemma1_rejects_bad_arguments():
    with pytest.raises(DomainError):
        lemma1_check(DomainGamma(0.0), 0, 8, 64, 1)


# ------------------------------------------------------------ sharpness scans

def test_cesaro_sharpness_witness_above_radius():
    report = sharpness_scan_cesaro(DomainGamma(0.0), 0.55, WITNESS_LADDER)
    assert report.witness_found
    assert all(m > 0.0 for m in report.margins)


def test_cesaro_sharpness_guard_below_radius():
    with pytest.raises(PreconditionError):
        sharpness_scan_cesaro(DomainGamma(0.0), cesaro_radius(DomainGamma(0.0)).value - 0.01,
                              WITNESS_LADDER)


def test_cesaro_sharpness_margins_scale_linearly():
    report = sharpness_scan_cesaro(DomainGamma(0.0), 0.55, WITNESS_LADDER)
    for m_big, m_small in zip(report.margins, report.margins[1:]):
        assert abs(m_big / m_small / 10.0 - 1.0) <= 0.2


def test_bernardi_sharpness_witness_above_radius():
    report = sharpness_scan_bernardi(DomainGamma(0.0), 1.0, 0.62, (0.99, 0.999))
    assert report.witness_found
    assert report.radius == pytest.approx(0.5828116438658114, abs=1e-10)


def test_bernardi_sharpness_guard_below_radius():
    with pytest.raises(PreconditionError):
        sharpness_scan_bernardi(DomainGamma(0.0), 1.0, 0.5, (0.99,))


def test_bernardi_sharpness_first_order_consistency():
    # first_order/(1-a) equals the negated tail-balance factor exactly, so it
    # is constant across the ladder (well within 1%) and positive above the
    # radius.
    gamma, beta, r = 0.0, 1.0, 0.62
    dg = DomainGamma(gamma)
    ratios = []
    for a in (0.99, 0.999, 0.9999):
        d = bernardi_extremal_decomposition(ExtremalParams(a, dg), beta, r)
        ratios.append(d.first_order / (1.0 - a))
    assert all(x > 0.0 for x in ratios)
    assert max(ratios) / min(ratios) - 1.0 <= 0.01


def test_bernardi_sharpness_small_beta_warns():
    with pytest.warns(UserWarning, match="exploratory"):
        sharpness_scan_bernardi(DomainGamma(0.0), 0.5, 0.78, (0.999,))


# ------------------------------------------------------- remainder-order fits

def test_remainder_order_cesaro_slope_is_quadratic():
    slope = remainder_order_check("cesaro", DomainGamma(0.3), 0.4,
                                  [1.0 - 10.0 ** -k for k in range(1, 5)])
    assert 1.8 <= slope <= 2.2


def test_remainder_order_bernardi_slope_at_gamma_zero():
    slope = remainder_order_check("bernardi", DomainGamma(0.0), 0.3,
                                  [1.0 - 10.0 ** -k for k in range(1, 5)], beta=1.0)
    assert 1.8 <= slope <= 2.2


def test_remainder_order_bernardi_slope_at_positive_gamma_is_linear():
    # Documented defect: the displayed remainder keeps a linear term for
    # gamma > 0 away from the radius, so the measured exponent is 1, not 2.
    slope = remainder_order_check("bernardi", DomainGamma(0.2), 0.3,
                                  [1.0 - 10.0 ** -k for k in range(1, 5)], beta=1.0)
    assert 0.9 <= slope <= 1.1


def test_remainder_order_single_point_is_inconclusive():
    with pytest.raises(InconclusiveError):
        remainder_order_check("cesaro", DomainGamma(0.3), 0.4, [0.9])


def test_remainder_order_rejects_unknown_kind():
    with pytest.raises(DomainError):
        remainder_order_check("libera", DomainGamma(0.3), 0.4, [0.9, 0.99])


# -------------------------------------------------------------- identity suite

def test_identity_suite_deviation_bound():
    report = identity_suite()
    assert report["max_deviation"] <= 1e-10


def test_identity_closed_values_at_half():
    r = 0.5
    n = truncation_order(r, 1.0, 1e-13)
    ns = np.arange(1, n + 1)
    weighted = math.fsum(ns / (ns + 1.0) * np.power(r, ns))
    assert weighted == pytest.approx(2.0 - 2.0 * math.log(2.0), abs=1e-10)
    averaged = 1.0 + math.fsum(np.power(r, ns) / (ns + 1.0))
    assert averaged == pytest.approx(2.0 * math.log(2.0), abs=1e-10)


# ------------------------------------------------------- below-radius safety

def test_below_radius_safety_smoke():
    from bohrkit.series import SchurSampleSpec, sample_schur_omega
    gamma = 0.3
    dg = DomainGamma(gamma)
    r_c = 0.99 * cesaro_radius(dg).value
    r_b = 0.99 * bernardi_radius(dg, 2.0).value
    n_out = truncation_order(max(r_c, r_b))
    params = BernardiParams(2.0, 0)
    for seed in range(25):
        s = sample_schur_omega(SchurSampleSpec(seed % 5, 4000 + seed, dg), n_out)
        value, error = cesaro_majorant(s, r_c)
        assert value <= bk.log_bound(r_c) + 10.0 * error
        value, error = bernardi_majorant(s, params, r_b)
        assert value <= 0.5 + 10.0 * error
