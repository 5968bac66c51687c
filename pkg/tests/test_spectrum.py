import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import frustra as fr
from frustra.model import FermionParity
from frustra.spectrum import channel_energies, channel_levels

# frozen before the analytic build, from an independent kron-based spin-matrix
# diagonalization (32-dim, gamma=1, delta=0.5, h=0.5)
L5_GROUND_ENERGY = -4.0

dyadic = st.integers(-128, 128).map(lambda n: n / 64.0)


def params(L=5, gamma=1.0, delta=0.5, h=0.5):
    return fr.ModelParams(L=L, gamma=gamma, delta=delta, h=h)


def lex_sorted(w):
    w = np.asarray(w, dtype=complex)
    return w[np.lexsort((w.imag, w.real))]


class TestPairBlock:
    def test_triangle_block(self):
        blk = fr.pair_block(params(gamma=1.0, delta=0.0, h=0.0), 2 * math.pi / 3)
        assert sorted([blk.even_low.real, blk.even_high.real]) == pytest.approx([-3.0, 1.0])
        assert blk.odd_level == pytest.approx(-1.0)

    def test_unit_dispersion_block(self):
        blk = fr.pair_block(params(gamma=1.0, delta=0.5, h=0.5), math.pi / 2)
        assert blk.even_low == pytest.approx(-2.0)
        assert blk.even_high == pytest.approx(2.0)
        assert blk.odd_level == pytest.approx(0.0)

    def test_imaginary_branch_block(self):
        blk = fr.pair_block(params(gamma=1.0, delta=1.5, h=0.0), math.pi / 2)
        s = 2.0 * math.sqrt(1.25)
        assert blk.even_low == pytest.approx(-1j * s)
        assert blk.even_high == pytest.approx(1j * s)

    def test_special_modes_rejected(self):
        with pytest.raises(fr.ParameterError):
            fr.pair_block(params(), 0.0)
        with pytest.raises(fr.ParameterError):
            fr.pair_block(params(), math.pi)

    @given(gamma=dyadic, delta=dyadic, h=dyadic, q=st.floats(1e-6, math.pi - 1e-6))
    @settings(max_examples=150)
    def test_even_levels_average_to_odd(self, gamma, delta, h, q):
        blk = fr.pair_block(fr.ModelParams(L=5, gamma=gamma, delta=delta, h=h), q)
        assert abs(blk.even_low + blk.even_high - 2 * blk.odd_level) < 1e-12


class TestSpecialModeEnergy:
    def test_examples(self):
        p = params(h=0.5)
        assert fr.special_mode_energy(p, fr.SpecialMode.ZERO, 1) == pytest.approx(1.5)
        assert fr.special_mode_energy(p, fr.SpecialMode.ZERO, 0) == pytest.approx(0.5)
        assert fr.special_mode_energy(p, fr.SpecialMode.PI, 1) == pytest.approx(-2.5)

    def test_occupation_validated(self):
        with pytest.raises(fr.ParameterError):
            fr.special_mode_energy(params(), fr.SpecialMode.ZERO, 2)


class TestEnumerateSpectrum:
    def test_triangle_multiset(self):
        w = fr.enumerate_spectrum(params(L=3, gamma=1.0, delta=0.0, h=0.0)).energies()
        assert np.abs(w.imag).max() == 0.0
        counts = Counter(round(x, 12) for x in w.real)
        assert counts == {-1.0: 6, 3.0: 2}

    def test_square_multiset(self):
        w = fr.enumerate_spectrum(params(L=4, gamma=1.0, delta=0.0, h=0.0)).energies()
        counts = Counter(round(x, 12) for x in w.real)
        assert counts == {-4.0: 2, 0.0: 12, 4.0: 2}

    @pytest.mark.parametrize("L", [3, 4, 5, 6, 9, 10])
    def test_level_count(self, L):
        spec = fr.enumerate_spectrum(params(L=L, gamma=0.8, delta=1.3, h=0.4))
        assert spec.count == 2**L

    def test_cap(self):
        with pytest.raises(fr.CapacityError):
            fr.enumerate_spectrum(params(L=17))

    def test_descriptor_parity_matches_channel(self):
        spec = fr.enumerate_spectrum(params(L=6, gamma=1.0, delta=0.7, h=0.9))
        for lv in spec.levels:
            want = 1 if lv.channel.fermion_parity is FermionParity.ODD else 0
            assert lv.occupation_parity == want

    @pytest.mark.parametrize(
        "gamma,delta,h", [(1.0, 0.5, 0.5), (1.0, 1.2, 0.5), (0.7, 0.2, 1.4), (1.0, 1.2, 2.0)]
    )
    def test_conjugate_closure(self, gamma, delta, h):
        w = fr.enumerate_spectrum(params(L=7, gamma=gamma, delta=delta, h=h)).energies()
        assert np.abs(lex_sorted(w) - lex_sorted(w.conj())).max() < 1e-12


class TestChannelForm:
    def test_lambda_triangle(self):
        consts = fr.channel_constants(params(L=3, gamma=1.0, delta=0.0, h=0.0), fr.CHANNELS[0])
        assert consts.lam == pytest.approx(-3.0)

    def test_odd_constants_cancel_below_critical(self):
        # |h-1| + (h-1) vanishes identically for h < 1
        consts = fr.channel_constants(params(L=3, h=0.5), fr.CHANNELS[0])
        assert consts.offsets["constant"] == pytest.approx(0.0)

    def test_vacuum_plus_zero_mode_energy(self):
        p = params(L=3, gamma=1.0, delta=0.0, h=0.0)
        lows = [
            lv
            for lv in channel_levels(p, fr.CHANNELS[0])
            if lv.n_zero == 1 and all(c is fr.PairChoice.EVEN_LOW for c in lv.pair_choices.values())
        ]
        assert len(lows) == 1
        assert fr.channel_form_energy(p, lows[0]) == pytest.approx(-1.0)

    @pytest.mark.parametrize("L", [3, 5, 7])
    @pytest.mark.parametrize(
        "gamma,delta,h", [(1.0, 0.0, 0.0), (1.0, 0.5, 0.5), (1.0, 1.2, 0.5), (0.8, 0.3, 1.6)]
    )
    def test_matches_pair_construction_for_every_level(self, L, gamma, delta, h):
        p = params(L=L, gamma=gamma, delta=delta, h=h)
        for lv in fr.enumerate_spectrum(p).levels:
            assert abs(fr.channel_form_energy(p, lv) - lv.energy) < 1e-12

    def test_even_length_unsupported(self):
        p = params(L=4)
        lv = fr.enumerate_spectrum(p).levels[0]
        with pytest.raises(fr.ParameterError):
            fr.channel_form_energy(p, lv)


class TestGroundState:
    def test_kink_ground_occupies_zero_mode(self):
        g = fr.ground_state(params(L=11, gamma=1.0, delta=0.5, h=0.5))
        assert g.channel.fermion_parity is FermionParity.ODD
        assert g.n_zero == 1
        assert all(c is fr.PairChoice.EVEN_LOW for c in g.pair_choices.values())

    def test_even_length_twofold_degeneracy(self):
        lows = fr.low_levels(params(L=10, gamma=1.0, delta=0.5, h=0.5), 3)
        assert abs(lows[0].energy - lows[1].energy) < 1e-12
        assert {lows[0].channel.fermion_parity, lows[1].channel.fermion_parity} == {
            FermionParity.ODD,
            FermionParity.EVEN,
        }

    def test_frozen_l5_fixture(self):
        g = fr.ground_state(params(L=5, gamma=1.0, delta=0.5, h=0.5))
        assert g.energy == pytest.approx(L5_GROUND_ENERGY, abs=1e-12)

    def test_matches_enumeration_on_random_draws(self):
        rng = np.random.default_rng(3)
        for _ in range(120):
            p = params(
                L=int(rng.integers(3, 10)),
                gamma=float(rng.uniform(-1.5, 1.5)),
                delta=float(rng.uniform(-2, 2)),
                h=float(rng.uniform(-2.5, 2.5)),
            )
            w = lex_sorted(fr.enumerate_spectrum(p).energies())
            lows = fr.low_levels(p, 8)
            assert np.abs(np.array([lv.energy for lv in lows]) - w[:8]).max() < 1e-10
            assert abs(fr.ground_energy(p) - w[0]) < 1e-10


class TestSpectralGap:
    def test_odd_length_gap_shrinks(self):
        gaps = {
            L: fr.spectral_gap(params(L=L, gamma=1.0, delta=0.5, h=0.5)) for L in (7, 9, 11)
        }
        assert gaps[11] < gaps[9] < gaps[7]

    def test_even_length_gap_above_degenerate_pair(self):
        gap = fr.spectral_gap(params(L=10, gamma=1.0, delta=0.5, h=0.5))
        assert gap > 0.1

    def test_critical_point_merged_gap_is_ed_arbitrated(self):
        # the quasiparticle dispersion is exactly gapless here (omega(0) = 0),
        # while the merged many-body gap stays finite at L=10; the ED oracle
        # fixes its value
        p = params(L=10, gamma=1.0, delta=0.0, h=1.0)
        assert fr.dispersion(p, 0.0) == 0.0
        assert fr.spectral_gap(p) == pytest.approx(0.15740341364923616, abs=1e-10)


class TestBogoliubov:
    def test_limit_near_zero_momentum(self):
        c = fr.bogoliubov_coeffs(params(gamma=1.0, delta=0.0, h=0.5), 1e-6)
        assert c.u == pytest.approx(1.0, abs=1e-9)
        assert c.v == pytest.approx(0.0, abs=1e-6)

    @given(gamma=dyadic, delta=dyadic, h=dyadic, q=st.floats(1e-3, math.pi - 1e-3))
    @settings(max_examples=200)
    def test_normalization(self, gamma, delta, h, q):
        p = fr.ModelParams(L=5, gamma=gamma, delta=delta, h=h)
        if p.gap_product <= 1e-9 or fr.reality_function(p, q) <= 1e-9:
            return
        c = fr.bogoliubov_coeffs(p, q)
        assert c.u**2 + c.v**2 == pytest.approx(1.0, abs=1e-12)

    def test_v_flips_sign_under_momentum_reversal(self):
        p = params(gamma=1.0, delta=0.3, h=0.4)
        plus = fr.bogoliubov_coeffs(p, 0.9)
        minus = fr.bogoliubov_coeffs(p, -0.9)
        assert plus.u == pytest.approx(minus.u)
        assert plus.v == pytest.approx(-minus.v)

    def test_domain_errors(self):
        with pytest.raises(fr.DomainError):
            fr.bogoliubov_coeffs(params(gamma=1.0, delta=1.5, h=0.0), math.pi / 2)
        with pytest.raises(fr.ParameterError):
            fr.bogoliubov_coeffs(params(), 0.0)


class TestBdgBlock:
    @pytest.mark.parametrize(
        "gamma,delta,h,q",
        [
            (1.0, 0.5, 0.5, math.pi / 2),
            (1.0, 0.0, 0.0, 2 * math.pi / 3),
            (1.0, 1.5, 0.0, math.pi / 2),  # complex eigenvalue match
        ],
    )
    def test_block_reproduces_pair_levels(self, gamma, delta, h, q):
        assert fr.verify_bdg_block(params(gamma=gamma, delta=delta, h=h), q)


class TestHermitianCounterpartSpectrum:
    @pytest.mark.parametrize("L", [5, 8])
    def test_multiset_equality(self, L):
        p = params(L=L, gamma=1.0, delta=0.5, h=0.8)
        cp = fr.hermitian_counterpart(p)
        report = fr.match_multisets(
            fr.enumerate_spectrum(p).energies(), fr.enumerate_spectrum(cp).energies(), 1e-10
        )
        assert report.passed


class TestChannelEnergies:
    def test_worked_triangle_channels(self):
        p = params(L=3, gamma=1.0, delta=0.0, h=0.0)
        odd = channel_energies(p, fr.CHANNELS[0])
        assert Counter(round(x, 12) for x in odd.real) == {-1.0: 3, 3.0: 1}
        even = channel_energies(p, fr.CHANNELS[1])
        assert Counter(round(x, 12) for x in even.real) == {-1.0: 3, 3.0: 1}
