import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mockmod import (DomainError, GEN_S, GEN_T, IDENTITY, Mobius, Report, Tau,
                     principal_halfpower, relative_residual)
from mockmod.core import (accumulate, csum, mobius_im_identity_residual,
                          richardson, sample_mobius, sample_tau, sample_z)


def small_mobius(rng: random.Random) -> Mobius:
    while True:
        a = rng.randint(-5, 5)
        c = rng.randint(-5, 5)
        if c == 0:
            if abs(a) == 1:
                return Mobius(a, rng.randint(-5, 5), 0, a)
            continue
        if math.gcd(a, c) != 1:
            continue
        # extend the coprime column (a, c) to determinant one
        d = pow(a, -1, abs(c))
        b = (a * d - 1) // c
        return Mobius(a, b, c, d)


def test_tau_rejects_lower_half_plane():
    with pytest.raises(DomainError):
        Tau(0.3, -1.0)
    with pytest.raises(DomainError):
        Tau(0.3, 0.0)


def test_tau_q_magnitude():
    t = Tau(0.4, 1.1)
    assert abs(t.q) == pytest.approx(math.exp(-2.0 * math.pi * 1.1))


def test_mobius_determinant_validation():
    with pytest.raises(DomainError):
        Mobius(2, 0, 0, 1)


def test_mobius_group_structure():
    rng = random.Random(11)
    for _ in range(50):
        g = small_mobius(rng)
        h = small_mobius(rng)
        tau = sample_tau(rng)
        lhs = (g @ h).apply(tau).z
        rhs = g.apply(h.apply(tau)).z
        assert abs(lhs - rhs) < 1e-12
        assert (g @ g.inverse()).entries() in ((1, 0, 0, 1), (-1, 0, 0, -1))


def test_j_factor_cocycle():
    rng = random.Random(7)
    for _ in range(50):
        g = small_mobius(rng)
        h = small_mobius(rng)
        tau = sample_tau(rng)
        lhs = (g @ h).j_factor(tau)
        rhs = g.j_factor(h.apply(tau)) * h.j_factor(tau)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


def test_im_transformation_identity():
    rng = random.Random(3)
    for _ in range(30):
        tau = sample_tau(rng)
        g = sample_mobius(rng, tau)
        assert mobius_im_identity_residual(g, tau) < 1e-14


def test_generators():
    t = Tau(0.25, 1.5)
    assert GEN_T.apply(t).z == pytest.approx(t.z + 1.0)
    assert GEN_S.apply(t).z == pytest.approx(-1.0 / t.z)
    assert IDENTITY.j_factor(t) == 1.0


def test_principal_halfpower_square():
    rng = random.Random(5)
    for _ in range(100):
        w = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(w) < 1e-3:
            continue
        for tw in (-3, -1, 1, 3, 5):
            val = principal_halfpower(w, tw)
            assert val * val == pytest.approx(w ** tw, rel=1e-12)
            # branch pinned to the principal square root
            assert (principal_halfpower(w, 1).real > 0
                    or (principal_halfpower(w, 1).real == 0
                        and principal_halfpower(w, 1).imag >= 0))


def test_principal_halfpower_integer_weight():
    assert principal_halfpower(2.0 + 0.0j, 4) == pytest.approx(4.0)
    with pytest.raises(DomainError):
        principal_halfpower(0.0, 1)


def test_report_verdicts():
    assert Report("x", {}, 1e-9, 1e-6).verdict == "pass"
    assert Report("x", {}, 1e-3, 1e-6).verdict == "fail"
    assert Report("x", {}, math.inf, 1e-6).verdict == "fail"
    assert Report("x", {}, 0.0, 0.0).verdict == "pass"


def test_report_json_roundtrip():
    import json
    r = Report("law", {"ell": 2}, 1e-10, 1e-6)
    d = json.loads(r.to_json())
    assert d["check_id"] == "law"
    assert d["verdict"] == "pass"
    assert d["params"] == {"ell": 2}


@given(st.lists(st.floats(min_value=-1e6, max_value=1e6,
                          allow_nan=False), min_size=1, max_size=40))
def test_csum_matches_fsum(xs):
    got = csum(complex(x, -x) for x in xs)
    want = math.fsum(xs)
    assert got.real == pytest.approx(want, abs=1e-9)
    assert got.imag == pytest.approx(-want, abs=1e-9)


def test_csum_cancellation():
    # compensation keeps the tiny tail through a 1e16 cancellation
    terms = [1e16 + 0j, 1.0 + 0j, -1e16 + 0j]
    assert csum(terms).real == 1.0
    assert accumulate(terms, "dd").real == 1.0


def test_relative_residual_scales():
    assert relative_residual(1.0 + 1e-9, 1.0) == pytest.approx(1e-9)
    assert relative_residual(2e6 + 2.0, 2e6) == pytest.approx(1e-6)
    assert relative_residual(0.0, 0.0) == 0.0


def test_sampler_windows_and_determinism():
    r1 = random.Random(9)
    r2 = random.Random(9)
    for _ in range(25):
        t1 = sample_tau(r1)
        t2 = sample_tau(r2)
        assert (t1.u, t1.v) == (t2.u, t2.v)
        assert -0.5 <= t1.u <= 0.5
        assert 0.8 <= t1.v <= 2.0
        g = sample_mobius(r1, t1)
        assert g.entries() == sample_mobius(r2, t2).entries()
        a, b, c, d = g.entries()
        assert a * d - b * c == 1
        assert max(abs(a), abs(b), abs(c), abs(d)) <= 6
        assert g.apply(t1).v >= 0.2
    rz = random.Random(4)
    assert all(abs(sample_z(rz)) <= 0.4 * math.sqrt(2.0) for _ in range(50))


def test_richardson_eliminates_low_orders():
    # cubic with all low powers present: four halving samples kill it
    vals = [1.0 + h + h * h / 2 + h ** 3 / 6 for h in (0.4, 0.2, 0.1, 0.05)]
    extrap, err = richardson(vals)
    assert abs(extrap - 1.0) < 1e-12
    # a genuinely infinite expansion: estimate bounds the true error
    vals = [math.exp(h) for h in (0.4, 0.2, 0.1, 0.05)]
    extrap, err = richardson(vals)
    assert abs(extrap - 1.0) < 1e-4
    assert abs(extrap - 1.0) <= 10.0 * err + 1e-12


@settings(max_examples=40)
@given(st.integers(min_value=-60, max_value=60),
       st.integers(min_value=-60, max_value=60))
def test_accumulate_modes_agree(xr, xi):
    terms = [complex(xr, xi) / (k + 1) for k in range(30)]
    f64 = accumulate(terms, "f64")
    dd = accumulate(terms, "dd")
    assert abs(f64 - dd) <= 1e-10 * max(1.0, abs(dd))
