import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from xyness import (
    DomainError,
    ModelParams,
    kappa,
    mu,
    mu_min,
    mu_sup,
    mu_zeros,
    phi,
    q_factor,
    symbol,
    symbol_matrices,
    symbol_singular_values,
    two_point_operator,
)
from conftest import ACCEPTANCE_SETS, CRITICAL_SET, midpoint_grid

TWO_PI = 2.0 * math.pi


class TestModelParams:
    def test_derived_fields_exact(self):
        p = ModelParams(0.5, 0.3, 1.0, 3.0)
        assert p.beta == 2.0 and p.delta == 1.0
        assert not p.swapped and not p.critical

    def test_swap_rule(self):
        p = ModelParams(0.5, 0.3, 3.0, 1.0)
        assert p.swapped
        assert (p.beta_l, p.beta_r) == (1.0, 3.0)
        assert 0.0 <= p.delta < p.beta

    @pytest.mark.parametrize(
        "gamma,lam,critical",
        [
            (0.0, 0.5, True),
            (0.0, 1.0, True),
            (0.0, -1.0, True),
            (0.0, 1.5, False),
            (0.5, 1.0, True),
            (0.5, -1.0, True),
            (0.5, 0.3, False),
            (0.9, 0.0, False),
        ],
    )
    def test_critical_flag(self, gamma, lam, critical):
        assert ModelParams(gamma, lam, 1.0, 2.0).critical is critical

    @pytest.mark.parametrize(
        "bad",
        [
            dict(gamma=1.0),
            dict(gamma=-1.5),
            dict(gamma=math.nan),
            dict(beta_l=0.0),
            dict(beta_r=-1.0),
            dict(beta_l=math.inf),
            dict(lam=math.inf),
        ],
    )
    def test_rejects_invalid(self, bad):
        kwargs = dict(gamma=0.5, lam=0.3, beta_l=1.0, beta_r=2.0)
        kwargs.update(bad)
        with pytest.raises(ValueError):
            ModelParams(**kwargs)


class TestDispersion:
    def test_kappa_zero_at_origin(self):
        for p in ACCEPTANCE_SETS:
            assert kappa(0.0, p) == 0.0

    def test_kappa_isotropic_point(self):
        p = ModelParams(0.0, 1.0, 1.0, 2.0)
        assert kappa(math.pi / 2, p) == pytest.approx(2.0, abs=1e-15)

    def test_kappa_frozen_value(self):
        # high-precision scalar oracle: 2*0.3*sin(1) - 0.75*sin(2)
        p = ModelParams(0.5, 0.3, 1.0, 2.0)
        assert kappa(1.0, p) == pytest.approx(-0.17709047923452337, abs=1e-15)

    def test_mu_at_origin(self):
        p = ModelParams(0.7, 0.3, 1.0, 2.0)
        assert mu(0.0, p) == pytest.approx(0.7, abs=1e-15)

    def test_mu_isotropic_closed_form(self):
        p = ModelParams(0.0, 0.0, 1.0, 2.0)
        xi = midpoint_grid(64)
        assert np.allclose(mu(xi, p), np.abs(np.cos(xi)), atol=1e-15)

    def test_mu_frozen_value(self):
        # sqrt(0.09 + 0.25), scalar oracle
        p = ModelParams(0.5, 0.3, 1.0, 2.0)
        assert mu(math.pi / 2, p) == pytest.approx(0.58309518948453005, abs=1e-15)

    @given(
        xi=st.floats(0.0, TWO_PI),
        gamma=st.floats(-0.95, 0.95),
        lam=st.floats(-2.0, 2.0),
    )
    def test_parity(self, xi, gamma, lam):
        p = ModelParams(gamma, lam, 1.0, 2.0)
        assert kappa(TWO_PI - xi, p) == pytest.approx(-kappa(xi, p), abs=1e-13)
        assert mu(TWO_PI - xi, p) == pytest.approx(mu(xi, p), abs=1e-13)

    def test_mu_nonnegative_and_zeros(self):
        xi = midpoint_grid(512)
        for p in (*ACCEPTANCE_SETS, CRITICAL_SET):
            assert np.all(mu(xi, p) >= 0.0)
        z = mu_zeros(CRITICAL_SET)
        assert z == pytest.approx([math.acos(0.5), TWO_PI - math.acos(0.5)])
        assert np.allclose(mu(z, CRITICAL_SET), 0.0, atol=1e-15)
        assert mu_zeros(ACCEPTANCE_SETS[0]).size == 0


class TestPhi:
    def test_zero_alpha(self, base_params):
        xi = midpoint_grid(32)
        assert np.all(phi(0.0, xi, base_params) == 0.0)

    def test_equilibrium_half_angle(self):
        # delta = 0: phi_beta = tanh(beta*mu/2) pointwise
        p = ModelParams(0.5, 0.3, 2.0, 2.0)
        xi = midpoint_grid(257)
        lhs = phi(p.beta, xi, p)
        rhs = np.tanh(0.5 * p.beta * mu(xi, p))
        assert np.allclose(lhs, rhs, atol=1e-15)

    def test_frozen_value(self):
        # beta=2, delta=1, mu(0)=1: sinh(2)/(cosh(2)+cosh(1)), scalar oracle
        p = ModelParams(0.5, 0.0, 1.0, 3.0)
        assert mu(0.0, p) == 1.0
        assert phi(2.0, 0.0, p) == pytest.approx(0.6836327054524381, abs=1e-15)

    def test_overflow_safe(self):
        p = ModelParams(0.5, 0.3, 1.0e5, 3.0e5)
        xi = midpoint_grid(64)
        vb, vd = phi(p.beta, xi, p), phi(p.delta, xi, p)
        assert np.all(np.isfinite(vb)) and np.all(np.isfinite(vd))
        # at these temperatures both tanh factors saturate
        assert np.allclose(vb + vd, 1.0, atol=1e-12)

    def test_sum_to_product_identities(self):
        xi = midpoint_grid(512)
        for p in ACCEPTANCE_SETS:
            m = mu(xi, p)
            pb, pd = phi(p.beta, xi, p), phi(p.delta, xi, p)
            assert np.allclose(pb + pd, np.tanh(0.5 * p.beta_r * m), atol=1e-12)
            assert np.allclose(pb - pd, np.tanh(0.5 * p.beta_l * m), atol=1e-12)

    def test_ordering_invariant(self):
        # 0 < phi_beta - phi_delta <= phi_beta + phi_delta < 1 off criticality
        xi = midpoint_grid(512)
        for p in ACCEPTANCE_SETS:
            pb, pd = phi(p.beta, xi, p), phi(p.delta, xi, p)
            assert np.all(pb - pd > 0.0)
            assert np.all(pb - pd <= pb + pd)
            assert np.all(pb + pd < 1.0)


class TestQFactor:
    def test_unit_modulus(self):
        xi = midpoint_grid(512)
        for p in ACCEPTANCE_SETS:
            assert np.allclose(np.abs(q_factor(xi, p)), 1.0, atol=1e-14)

    def test_simple_values(self):
        assert q_factor(0.0, ModelParams(0.0, 0.0, 1.0, 2.0)) == pytest.approx(1.0)
        assert q_factor(0.0, ModelParams(0.0, 2.0, 1.0, 2.0)) == pytest.approx(-1.0)

    def test_domain_error_at_exact_mu_zero(self):
        # domain errors fire only at exact zeros of mu: gamma=0, lam=1, xi=0
        with pytest.raises(DomainError):
            q_factor(0.0, ModelParams(0.0, 1.0, 1.0, 3.0))
        # a floating-point neighbor of a zero is still in-domain
        assert abs(q_factor(math.acos(0.5), CRITICAL_SET)) == pytest.approx(1.0)


class TestSymbol:
    def test_structure(self, base_params):
        for xi in midpoint_grid(64):
            a = symbol(float(xi), base_params).entries
            assert a[0, 0].imag == 0.0 and a[1, 1].imag == 0.0
            assert a[0, 0] == -a[1, 1]
            assert abs(a[0, 1]) == pytest.approx(abs(a[1, 0]), abs=1e-15)
            assert abs(a[0, 1]) == pytest.approx(
                phi(base_params.beta, float(xi), base_params), abs=1e-15
            )

    def test_equilibrium_diagonal_vanishes(self):
        p = ModelParams(-0.4, 1.7, 2.0, 2.0)
        a = symbol_matrices(midpoint_grid(128), p)
        assert np.all(a[:, 0, 0] == 0.0) and np.all(a[:, 1, 1] == 0.0)

    def test_singular_values_match_closed_form(self):
        xi = midpoint_grid(512)
        for p in ACCEPTANCE_SETS:
            sv = np.linalg.svd(symbol_matrices(xi, p), compute_uv=False)
            lo, hi = symbol_singular_values(xi, p)
            assert np.max(np.abs(sv[:, 0] - hi)) < 1e-12
            assert np.max(np.abs(sv[:, 1] - lo)) < 1e-12

    def test_determinant_positive(self):
        xi = midpoint_grid(256)
        for p in ACCEPTANCE_SETS:
            a = symbol_matrices(xi, p)
            det = np.linalg.det(a)
            lo, hi = symbol_singular_values(xi, p)
            assert np.allclose(det.imag, 0.0, atol=1e-14)
            assert np.all(det.real > 0.0)
            assert np.allclose(det.real, lo * hi, atol=1e-13)


class TestTwoPointOperator:
    def test_routes_agree_on_grid(self):
        # two_point_operator raises ConsistencyError internally if not
        for p in ACCEPTANCE_SETS:
            for xi in midpoint_grid(64):
                S = two_point_operator(float(xi), p)
                ev = np.linalg.eigvalsh(S)
                assert np.all(ev > 0.0) and np.all(ev < 1.0)

    def test_no_sigma1_component(self, base_params):
        for xi in midpoint_grid(32):
            S = two_point_operator(float(xi), base_params)
            s1 = 0.5 * (S[0, 1] + S[1, 0])
            assert abs(s1) < 1e-15

    def test_equilibrium_form(self):
        # delta = 0: S = (1 + exp(-beta*h))^{-1}, scalar part exactly 1/2
        p = ModelParams(0.5, 0.3, 2.0, 2.0)
        for xi in midpoint_grid(32):
            S = two_point_operator(float(xi), p)
            assert 0.5 * (S[0, 0] + S[1, 1]).real == pytest.approx(0.5, abs=1e-14)
            m = mu(float(xi), p)
            h = np.array(
                [
                    [np.cos(xi) - p.lam, 1j * p.gamma * np.sin(xi)],
                    [-1j * p.gamma * np.sin(xi), -(np.cos(xi) - p.lam)],
                ]
            )
            expected = np.linalg.inv(
                np.eye(2) + np.array(expm_2x2(-p.beta * h, m * p.beta))
            )
            assert np.allclose(S, expected, atol=1e-12)

    def test_domain_error_at_exact_mu_zero(self):
        with pytest.raises(DomainError):
            two_point_operator(0.0, ModelParams(0.0, 1.0, 1.0, 3.0))


def expm_2x2(M, scale):
    """exp of a trace-free 2x2 matrix with eigenvalues +-scale (test helper)."""
    eye = np.eye(2, dtype=complex)
    if scale == 0.0:
        return eye
    return math.cosh(scale) * eye + math.sinh(scale) * (M / scale)


class TestMuExtremes:
    @pytest.mark.parametrize(
        "gamma,lam,expected",
        [(0.0, 0.0, 1.0), (0.0, 0.5, 1.5), (0.5, 0.3, 1.3), (-0.4, 1.7, 2.7)],
    )
    def test_mu_sup_closed_form(self, gamma, lam, expected):
        p = ModelParams(gamma, lam, 1.0, 2.0)
        assert mu_sup(p) == pytest.approx(expected, abs=1e-15)
        # grid oracle: never exceeded, attained at an endpoint
        grid_max = float(np.max(mu(np.linspace(0, TWO_PI, 20001), p)))
        assert grid_max <= mu_sup(p) + 1e-12
        assert grid_max == pytest.approx(mu_sup(p), abs=1e-6)

    def test_mu_min_grid_oracle(self):
        for p in (*ACCEPTANCE_SETS, CRITICAL_SET):
            grid_min = float(np.min(mu(np.linspace(0, TWO_PI, 20001), p)))
            assert mu_min(p) <= grid_min + 1e-12
            assert grid_min == pytest.approx(mu_min(p), abs=1e-4)
