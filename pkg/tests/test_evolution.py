import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steercoh.evolution import (
    PSI_PLUS,
    BellLikeState,
    Family,
    bell_like_evolved,
    evolve_pair,
    evolve_single,
    transfer_coefficients,
)
from steercoh.qcore import KET0, KET1, partial_trace_A, partial_trace_B, projector, tensor, validate

from conftest import random_density

seeds = st.integers(0, 2**32 - 1)
amps = st.floats(-1.0, 1.0)


def kraus(p):
    """Amplitude-damping Kraus pair in the {|1>, |0>} ordering."""
    k0 = np.array([[p, 0], [0, 1]], dtype=complex)
    k1 = np.array([[0, 0], [math.sqrt(1 - p * p), 0]], dtype=complex)
    return k0, k1


def kraus_pair(rho, pa, pb):
    out = np.zeros((4, 4), dtype=complex)
    for ka in kraus(pa):
        for kb in kraus(pb):
            k = np.kron(ka, kb)
            out += k @ rho @ k.conj().T
    return out


class TestSingle:
    def test_identity(self):
        rho = np.array([[0.3, 0.1 + 0.2j], [0.1 - 0.2j, 0.7]])
        assert np.allclose(evolve_single(rho, 1.0), rho, atol=0)

    def test_full_decay(self):
        assert np.allclose(evolve_single(projector(KET1), 0.0), projector(KET0))

    def test_worked_value(self):
        out = evolve_single(np.full((2, 2), 0.5), 0.6)
        assert np.allclose(out, [[0.18, 0.30], [0.30, 0.82]], atol=1e-15)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            evolve_single(np.eye(2) / 2, 1.2)
        with pytest.raises(TypeError):
            evolve_single(np.eye(2) / 2, 0.5j)

    @given(seeds, amps)
    def test_cptp(self, seed, p):
        rho = random_density(np.random.default_rng(seed), 2)
        assert validate(evolve_single(rho, p)).ok

    @given(seeds, amps, amps)
    def test_semigroup(self, seed, p1, p2):
        rho = random_density(np.random.default_rng(seed), 2)
        lhs = evolve_single(evolve_single(rho, p1), p2)
        assert np.max(np.abs(lhs - evolve_single(rho, p1 * p2))) < 1e-12


class TestTransferCoefficients:
    def test_identity(self):
        assert transfer_coefficients(1.0).as_tuple() == (1, 1, 1, 1, 0)

    def test_decayed(self):
        assert transfer_coefficients(0.0).as_tuple() == (0, 0, 0, 1, 1)

    def test_value(self):
        s = transfer_coefficients(0.6)
        assert s.s_11_11 == pytest.approx(0.36)
        assert s.s_00_11 == pytest.approx(0.64)
        assert s.s_11_11 + s.s_00_11 == pytest.approx(1.0)

    @given(seeds, amps)
    def test_reproduces_single_map(self, seed, p):
        rho = random_density(np.random.default_rng(seed), 2)
        T = transfer_coefficients(p).tensor()
        assert np.max(np.abs(np.einsum("abcd,cd->ab", T, rho) - evolve_single(rho, p))) < 1e-15


class TestPair:
    def test_identity(self):
        rho = random_density(np.random.default_rng(0), 4)
        assert np.max(np.abs(evolve_pair(rho, 1.0, 1.0) - rho)) < 1e-15

    def test_full_decay(self):
        out = evolve_pair(PSI_PLUS.density_matrix(), 0.0, 0.0)
        assert np.allclose(out, projector(tensor(KET0, KET0)))

    def test_matches_closed_form(self):
        a = bell_like_evolved(PSI_PLUS, 0.8, 0.6)
        b = evolve_pair(PSI_PLUS.density_matrix(), 0.8, 0.6)
        assert np.max(np.abs(a - b)) < 1e-15

    @given(seeds, amps, amps)
    def test_against_kraus(self, seed, pa, pb):
        rho = random_density(np.random.default_rng(seed), 4)
        assert np.max(np.abs(evolve_pair(rho, pa, pb) - kraus_pair(rho, pa, pb))) < 1e-12

    @given(seeds, amps)
    def test_marginals_with_idle_b(self, seed, pa):
        rho = random_density(np.random.default_rng(seed), 4)
        out = evolve_pair(rho, pa, 1.0)
        assert np.max(np.abs(partial_trace_A(out) - partial_trace_A(rho))) < 1e-12
        assert np.max(np.abs(partial_trace_B(out) - evolve_single(partial_trace_B(rho), pa))) < 1e-12


class TestBellLike:
    def test_normalization(self):
        with pytest.raises(ValueError):
            BellLikeState(0.5, 0.5)

    def test_no_decay_is_bell_projector(self):
        assert np.allclose(bell_like_evolved(PSI_PLUS, 1.0, 1.0), PSI_PLUS.density_matrix())

    def test_worked_value(self):
        rho = bell_like_evolved(PSI_PLUS, 0.8, 0.6)
        assert np.allclose(np.diag(rho).real, [0, 0.32, 0.18, 0.50], atol=1e-15)
        assert rho[1, 2] == pytest.approx(0.24)

    def test_phi_full_decay(self):
        s = BellLikeState(0.6, 0.8j, Family.PHI)
        assert np.allclose(bell_like_evolved(s, 0.0, 0.0), projector(tensor(KET0, KET0)))

    def test_phi_structure(self):
        a, b, pa, pb = 0.6, 0.8, 0.7, 0.4
        rho = bell_like_evolved(BellLikeState(a, b, Family.PHI), pa, pb)
        assert rho[0, 0].real == pytest.approx((a * pa * pb) ** 2)
        assert rho[0, 3] == pytest.approx(a * b * pa * pb)

    @given(st.floats(0.0, 1.0), st.floats(0, 2 * math.pi), amps, amps)
    def test_closed_form_equals_generic_map(self, a2, phase, pa, pb):
        s = BellLikeState(math.sqrt(a2), np.exp(1j * phase) * math.sqrt(1 - a2))
        diff = bell_like_evolved(s, pa, pb) - evolve_pair(s.density_matrix(), pa, pb)
        assert np.max(np.abs(diff)) < 1e-12

    @given(st.floats(0.0, 1.0), amps, amps)
    def test_b_marginal(self, a2, pa, pb):
        s = BellLikeState.from_alpha_sq(a2)
        x = abs(s.beta * pb) ** 2
        rho_b = partial_trace_A(bell_like_evolved(s, pa, pb))
        assert np.max(np.abs(rho_b - np.diag([x, 1 - x]))) < 1e-12
