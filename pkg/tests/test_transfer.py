import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from breakcast.errors import DomainError, SingularityError
from breakcast.transfer import (
    KernelSpec,
    PredictorParams,
    SmootherParams,
    Variant,
    eval_F,
    eval_G,
    eval_gamma_ap,
    eval_H,
    eval_K,
    eval_xi,
)

PAPER_SMOOTHER = SmootherParams(a=0.6, p=0.7, m=2, cap_n=100)

# 50-digit values from tests/oracles.py
XI_06_07 = 0.26810349320650200740
XI_05_07 = 0.29195826548649662937
GAMMA_06_07 = 0.88231666844221089438
GAMMA_05_07 = 0.71888557496714442471
K_AT_1 = 0.64112026397341311756
F_AT_1 = 1.2580025863568559233
H_AT_1 = 0.80653095024434390091


def test_frozen_values_match_oracle():
    assert float(oracles.xi("0.6", "0.7")) == pytest.approx(XI_06_07, abs=1e-18)
    assert float(oracles.gamma_ap("0.6", "0.7")) == pytest.approx(GAMMA_06_07, abs=1e-18)
    assert float(oracles.K(1).real) == pytest.approx(K_AT_1, abs=1e-18)
    assert float(oracles.F(1).real) == pytest.approx(F_AT_1, abs=1e-18)


@pytest.mark.parametrize(
    "a, p, expected", [(0.6, 0.7, XI_06_07), (0.5, 0.7, XI_05_07)]
)
def test_xi(a, p, expected):
    assert eval_xi(a, p) == pytest.approx(expected, rel=1e-14)


def test_xi_limit_p_to_one():
    assert eval_xi(0.3, 1 - 1e-12) == pytest.approx(math.exp(-1), rel=1e-9)


@pytest.mark.parametrize(
    "a, p, expected", [(0.6, 0.7, GAMMA_06_07), (0.5, 0.7, GAMMA_05_07)]
)
def test_gamma_ap(a, p, expected):
    assert eval_gamma_ap(a, p) == pytest.approx(expected, rel=1e-14)
    assert eval_gamma_ap(a, p) / eval_xi(a, p) == pytest.approx(abs(1 - a) ** (p - 2), rel=1e-15)


@pytest.mark.parametrize("a, p", [(0.0, 0.7), (1.0, 0.7), (0.6, 0.5), (0.6, 1.0), (-0.2, 0.8)])
def test_smoother_domain(a, p):
    with pytest.raises(DomainError):
        eval_xi(a, p)
    with pytest.raises(DomainError):
        SmootherParams(a=a, p=p)


@pytest.mark.parametrize("kwargs", [{"gamma_k": 0}, {"r": -1.0}, {"r": math.nan}])
def test_predictor_domain(kwargs):
    with pytest.raises(DomainError):
        PredictorParams(**kwargs)


def test_K_values():
    params = PredictorParams(1.1, 0.8)
    assert eval_K(1.0, params) == pytest.approx(K_AT_1, rel=1e-14)
    assert eval_K(0.0, params) == 0
    z = 0.3 + 0.4j
    p2 = PredictorParams(1.1, 2.0)
    assert eval_K(z.conjugate(), p2) == pytest.approx(eval_K(z, p2).conjugate(), rel=1e-15)
    assert eval_K(z, p2) == pytest.approx(complex(oracles.K(z, "1.1", "2")), rel=1e-13)


def test_K_singularity_guard():
    params = PredictorParams(1.1, 0.8)
    with pytest.raises(SingularityError):
        eval_K(params.pole + 1e-10, params)
    # just outside the guard is fine unless the exponential overflows
    assert np.isfinite(eval_K(params.pole + 1e-3, params))
    with pytest.raises(SingularityError):
        eval_K(params.pole - 1e-5, params)


@pytest.mark.parametrize("z", [1.0, -1.0, 1j])
def test_G_cancels(z):
    assert eval_G(z, PAPER_SMOOTHER) == pytest.approx(-XI_06_07, abs=1e-14)


def test_G_singular_at_zero():
    with pytest.raises(SingularityError):
        eval_G(0.0, PAPER_SMOOTHER)


def test_G_matches_oracle_off_cancellation():
    z = cmath.exp(0.37j)
    assert eval_G(z, PAPER_SMOOTHER) == pytest.approx(complex(oracles.G(z)), rel=1e-12)


def test_G_odd_order_sign():
    params = SmootherParams(0.6, 0.7, 1, 3)
    z = 0.8 - 0.3j
    assert eval_G(z, params) == pytest.approx(complex(oracles.G(z, n=3)), rel=1e-13)


def test_F_values():
    assert eval_F(1.0, PAPER_SMOOTHER) == pytest.approx(F_AT_1, rel=1e-14)
    m1 = SmootherParams(0.6, 0.7, 1, 100)
    base = math.exp(0.4**0.7 / 1.6) - eval_xi(0.6, 0.7)
    assert eval_F(1.0, m1) == pytest.approx(base, rel=1e-15)
    z = cmath.exp(1j * math.pi / 3)
    assert eval_F(z.conjugate(), PAPER_SMOOTHER) == pytest.approx(eval_F(z, PAPER_SMOOTHER).conjugate(), rel=1e-13)
    assert eval_F(z, PAPER_SMOOTHER) == pytest.approx(complex(oracles.F(z)), rel=1e-12)


def test_F_singularities():
    with pytest.raises(SingularityError):
        eval_F(-0.6, PAPER_SMOOTHER)
    with pytest.raises(SingularityError):
        eval_F(0.0, PAPER_SMOOTHER)


def test_F_power_consistency(rng):
    z = np.exp(1j * rng.uniform(-np.pi, np.pi, 32))
    one = eval_F(z, SmootherParams(0.6, 0.7, 1, 100))
    two = eval_F(z, PAPER_SMOOTHER)
    np.testing.assert_allclose(two, one * one, rtol=1e-12)


def test_H_variants():
    k_only = KernelSpec.build("k", r=0.8)
    kh = KernelSpec.build("kh", r=0.8)
    assert eval_H(0.0, k_only) == 0
    assert eval_H(1.0, kh) == pytest.approx(H_AT_1, rel=1e-13)
    assert H_AT_1 == pytest.approx(K_AT_1 * F_AT_1, rel=1e-15)


def test_H_conjugate_grid():
    z = np.exp(2j * np.pi * np.arange(16) / 16)
    for spec in (KernelSpec.build("k", r=2.0), KernelSpec.build("kh", r=1.1)):
        np.testing.assert_allclose(eval_H(np.conj(z), spec), np.conj(eval_H(z, spec)), rtol=1e-12)


def test_kernel_spec_invariants():
    with pytest.raises(DomainError):
        KernelSpec(Variant.SMOOTHED_PREDICT, PredictorParams())
    with pytest.raises(DomainError):
        KernelSpec(Variant.PREDICT_ONLY, PredictorParams(), SmootherParams())
    assert KernelSpec.build("k", r=1.5).smoother is None
    assert KernelSpec.build("kh", r=1.5) == KernelSpec.build(Variant.SMOOTHED_PREDICT, r=1.5)


@pytest.mark.parametrize("r", [0.8, 1.1, 1.5, 2.0])
def test_poles_inside_unit_circle(r):
    pole = PredictorParams(1.1, r).pole
    assert abs(pole) < 0.2
    w = np.linspace(-np.pi, np.pi, 4097)
    assert np.all(np.isfinite(eval_H(np.exp(1j * w), KernelSpec.build("kh", r=r))))


@settings(max_examples=200, deadline=None)
@given(
    w=st.floats(-math.pi, math.pi),
    radius=st.floats(0.5, 2.0),
    r=st.floats(0.3, 3.0),
    gamma_k=st.floats(0.5, 2.0),
    a=st.floats(0.05, 0.95),
    p=st.floats(0.55, 0.95),
    m=st.integers(1, 3),
    n=st.integers(1, 120),
)
def test_conjugate_symmetry_property(w, radius, r, gamma_k, a, p, m, n):
    z = radius * cmath.exp(1j * w)
    spec = KernelSpec.build("kh", r=r, gamma_k=gamma_k, a=a, p=p, m=m, cap_n=n)
    if abs(z - spec.predictor.pole) < 1e-3 or abs(z + a) < 1e-3:
        return
    h = eval_H(z, spec)
    assert eval_H(z.conjugate(), spec) == pytest.approx(h.conjugate(), rel=1e-12, abs=1e-300)
