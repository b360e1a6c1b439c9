import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mockmod import GEN_S, Tau, eta_value, theta_value
from mockmod.jets import (Jet, exp_linear_jet, exp_quadratic_jet,
                          gaussian_completed_coeffs, jet_dz, jet_dzbar,
                          rho_degeneracy_residual, taylor_completion_psi,
                          taylor_completion_rho, theta_arg_jet,
                          theta_power_completed_residual, theta_power_taylor,
                          vartheta_nu_jet, y_substitute, zwegers_S_jet,
                          zwegers_S_value)
from mockmod.special import e2_value


def random_jet(rng: random.Random, order: int) -> Jet:
    j = Jet.zero(order)
    for a in range(order + 1):
        for b in range(order + 1 - a):
            j.coeffs[a, b] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return j


def jet_eval(j: Jet, z: complex) -> complex:
    zb = z.conjugate()
    return sum(j.coeffs[a, b] * z ** a * zb ** b
               for a in range(j.order + 1)
               for b in range(j.order + 1 - a))


def test_jet_ring_axioms():
    rng = random.Random(1)
    for _ in range(10):
        a = random_jet(rng, 4)
        b = random_jet(rng, 4)
        c = random_jet(rng, 4)
        assert np.allclose((a * b).coeffs, (b * a).coeffs)
        assert np.allclose(((a * b) * c).coeffs, (a * (b * c)).coeffs)
        assert np.allclose((a * (b + c)).coeffs,
                           (a * b + a * c).coeffs)


def test_jet_exp_is_homomorphic():
    rng = random.Random(4)
    a = random_jet(rng, 5)
    b = random_jet(rng, 5)
    assert np.allclose((a + b).exp().coeffs, (a.exp() * b.exp()).coeffs,
                       atol=1e-12)


def test_jet_exp_matches_point_values():
    rng = random.Random(9)
    a = random_jet(rng, 8).scale(0.3)
    z = 0.05 + 0.04j
    # truncation error ~ |a z|^9
    assert jet_eval(a.exp(), z) == pytest.approx(cmath.exp(jet_eval(a, z)),
                                                 rel=1e-9)


def test_wirtinger_derivatives_leibniz():
    rng = random.Random(7)
    a = random_jet(rng, 5)
    b = random_jet(rng, 5)
    prod = a * b
    lhs = jet_dz(prod)
    rhs = jet_dz(a) * b + a * jet_dz(b)
    assert np.allclose(lhs.coeffs[:5, :5], rhs.coeffs[:5, :5])
    lhs = jet_dzbar(prod)
    rhs = jet_dzbar(a) * b + a * jet_dzbar(b)
    assert np.allclose(lhs.coeffs[:5, :5], rhs.coeffs[:5, :5])


def test_parity_projectors():
    rng = random.Random(3)
    a = random_jet(rng, 6)
    z = 0.21 - 0.13j
    even = jet_eval(a.even_part(), z)
    odd = jet_eval(a.odd_part(), z)
    assert even + odd == pytest.approx(jet_eval(a, z))
    assert even == pytest.approx((jet_eval(a, z) + jet_eval(a, -z)) / 2.0)


def test_exp_builders():
    c = 0.3 - 0.8j
    jq = exp_quadratic_jet(c, 8)
    assert jq.coeff(0, 0) == pytest.approx(1.0)
    assert jq.coeff(2, 0) == pytest.approx(c)
    assert jq.coeff(4, 0) == pytest.approx(c * c / 2.0)
    assert jq.coeff(3, 0) == pytest.approx(0.0)
    jl = exp_linear_jet(c, 6)
    assert jl.coeff(3, 0) == pytest.approx(c ** 3 / 6.0)


def test_y_substitute_small_cases():
    # constant: y^0
    j = y_substitute([2.5], 4)
    assert j.coeff(0, 0) == pytest.approx(2.5)
    # y = (z - conj z)/(2i): coefficients 1/(2i) and -1/(2i)
    j = y_substitute([0.0, 1.0], 4)
    assert j.coeff(1, 0) == pytest.approx(1.0 / 2j)
    assert j.coeff(0, 1) == pytest.approx(-1.0 / 2j)
    # y^2 = (z^2 - 2 z conj z + conj z^2) / (-4)
    j = y_substitute([0.0, 0.0, 1.0], 4)
    assert j.coeff(2, 0) == pytest.approx(-0.25)
    assert j.coeff(1, 1) == pytest.approx(0.5)
    assert j.coeff(0, 2) == pytest.approx(-0.25)


def test_y_substitute_point_values():
    rng = random.Random(8)
    coeffs = [complex(rng.uniform(-1, 1)) for _ in range(5)]
    j = y_substitute(coeffs, 6)
    z = 0.3 + 0.17j
    y = z.imag
    want = sum(c * y ** k for k, c in enumerate(coeffs))
    assert jet_eval(j, z) == pytest.approx(want)


def test_theta_arg_jet_matches_point_values(tau_a):
    base = 0.13 + 0.07j
    jet = theta_arg_jet(base, tau_a.z, 10)
    for dz in (0.05 + 0.02j, -0.08j):
        got = jet_eval(jet, dz)
        want = theta_value(base + dz, tau_a)
        assert got == pytest.approx(want, rel=1e-10)


def test_theta_jet_heat_equation(tau_a):
    # 4 pi i d(theta)/d(tau) = d^2(theta)/dz^2, checked on jet columns
    h = 1e-6
    up = theta_arg_jet(0.11 + 0.04j, (tau_a.z + h), 6)
    dn = theta_arg_jet(0.11 + 0.04j, (tau_a.z - h), 6)
    jet = theta_arg_jet(0.11 + 0.04j, tau_a.z, 6)
    for p in range(4):
        dtau = (up.coeff(p, 0) - dn.coeff(p, 0)) / (2.0 * h)
        dzz = (p + 2) * (p + 1) * jet.coeff(p + 2, 0)
        assert 4j * math.pi * dtau == pytest.approx(dzz, rel=2e-5)


def test_vartheta_jet_value_matches_blocks(tau_a):
    from mockmod.special import theta_null_value
    for nu, kind in ((-1, "vartheta_minus"), (0, "vartheta_zero")):
        jet = vartheta_nu_jet(nu, tau_a.z, 4)
        assert jet.coeff(0, 0) == pytest.approx(theta_null_value(kind, tau_a),
                                                rel=1e-13)


def test_zwegers_S_jet_against_finite_differences(tau_a):
    # S is not holomorphic: a real step sees c10 + c01, an imaginary step
    # sees c10 - c01; recombine to isolate each Wirtinger column
    base = 0.21 + 0.09j
    jet = zwegers_S_jet(base, tau_a.z, 2)
    h = 1e-5
    fd_r = (zwegers_S_value(base + h, tau_a.z)
            - zwegers_S_value(base - h, tau_a.z)) / (2.0 * h)
    fd_i = (zwegers_S_value(base + 1j * h, tau_a.z)
            - zwegers_S_value(base - 1j * h, tau_a.z)) / (2j * h)
    assert jet.coeff(1, 0) == pytest.approx((fd_r + fd_i) / 2.0, rel=1e-7)
    assert jet.coeff(0, 1) == pytest.approx((fd_r - fd_i) / 2.0, rel=1e-6)


def test_gaussian_completed_coeffs_by_hand():
    chis = [1.0, 2.0, 3.0, 4.0]
    a = 0.5 + 0.25j
    out = gaussian_completed_coeffs(chis, a)
    assert out[0] == pytest.approx(1.0)
    assert out[1] == pytest.approx(2.0)
    assert out[2] == pytest.approx(3.0 + a * 1.0)
    assert out[3] == pytest.approx(4.0 + a * 2.0)


def test_theta_power_taylor_vanishing_order(tau_a):
    chis = theta_power_taylor(8, tau_a.z, 10)
    # the first surviving coefficient is theta'(0)^8 = (2 pi)^8 eta^24
    want = (-2.0 * math.pi * eta_value(tau_a) ** 3) ** 8
    assert chis[8] == pytest.approx(want, rel=1e-11)
    for n in range(8):
        assert abs(chis[n]) < 1e-11 * abs(chis[8])


def test_completions_at_vanishing_order_are_bare(tau_a):
    chis = theta_power_taylor(8, tau_a.z, 8)
    assert taylor_completion_psi(chis, 4.0, tau_a, 8) == pytest.approx(chis[8])
    assert taylor_completion_rho(chis, 4.0, tau_a, 8) == pytest.approx(chis[8])


def test_completed_rows_transform(tau_a):
    for n in (8, 9, 10):
        assert theta_power_completed_residual(8, n, "psi", GEN_S, tau_a) < 1e-12
        assert theta_power_completed_residual(8, n, "rho", GEN_S, tau_a) < 1e-12


def test_rho_row_ten_degenerates(tau_a, tau_b):
    # chi_10 = -(4 pi^2 / 3) E2 chi_8 makes the tenth recombined row vanish
    assert rho_degeneracy_residual(tau_a) < 1e-12
    chis = theta_power_taylor(8, tau_b.z, 10)
    want = -(4.0 * math.pi ** 2 / 3.0) * e2_value(tau_b) * chis[8]
    assert chis[10] == pytest.approx(want, rel=1e-12)
