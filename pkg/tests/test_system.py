import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demodlab.io import system_from_json, system_to_json
from demodlab.signals import attenuate, draw_model_a
from demodlab.system import (
    DENSE_LIMIT,
    build_accumulator,
    build_system,
    draw_chipping,
    sample_continuous,
)

from conftest import make_instance


class TestChipping:
    def test_values_pm_one(self, rng):
        eps = draw_chipping(1000, rng)
        assert set(np.unique(eps)) <= {-1.0, 1.0}

    def test_empirical_mean(self, rng):
        eps = draw_chipping(100_000, rng)
        assert abs(eps.mean()) < 0.02

    def test_same_seed_same_sequence(self):
        a = draw_chipping(256, np.random.default_rng(5))
        b = draw_chipping(256, np.random.default_rng(5))
        assert np.array_equal(a, b)


class TestAccumulator:
    def test_block_example(self):
        h = build_accumulator(3, 12).matrix.toarray()
        expected = np.zeros((3, 12))
        for r in range(3):
            expected[r, 4 * r : 4 * r + 4] = 1.0
        assert np.array_equal(h, expected)

    def test_fractional_example(self):
        # the printed R=3, W=7 matrix with sqrt(1/3), sqrt(2/3) boundary weights
        h = build_accumulator(3, 7).matrix.toarray()
        expected = np.array(
            [
                [1, 1, np.sqrt(1 / 3), 0, 0, 0, 0],
                [0, 0, np.sqrt(2 / 3), 1, np.sqrt(2 / 3), 0, 0],
                [0, 0, 0, 0, np.sqrt(1 / 3), 1, 1],
            ]
        )
        assert np.allclose(h, expected, atol=1e-15)

    def test_identity_at_r_equals_w(self):
        assert np.array_equal(build_accumulator(5, 5).matrix.toarray(), np.eye(5))

    @pytest.mark.parametrize("r", [0, 13])
    def test_bad_rate(self, r):
        with pytest.raises(ValueError):
            build_accumulator(r, 12)

    @given(st.integers(2, 128), st.data())
    @settings(max_examples=60, deadline=None)
    def test_norm_structure(self, w, data):
        r = data.draw(st.integers(1, w))
        h = build_accumulator(r, w).matrix.toarray()
        assert np.allclose((h**2).sum(axis=0), 1.0, atol=1e-12)  # unit columns
        assert np.allclose((h**2).sum(axis=1), w / r, atol=1e-12)  # row mass W/R
        if w % r == 0:
            assert np.allclose(h @ h.T, (w / r) * np.eye(r), atol=1e-12)


class TestSystem:
    def test_mismatched_chipping(self, rng):
        with pytest.raises(ValueError):
            build_system(16, 4, draw_chipping(8, rng))
        with pytest.raises(ValueError):
            build_system(8, 4, np.zeros(8))

    def test_zero_maps_to_zero(self, rng):
        _, system, _ = make_instance(64, 16, 2, rng)
        assert np.all(system.apply(np.zeros(64, dtype=complex)) == 0)

    @pytest.mark.parametrize("w,r", [(128, 32), (64, 16), (100, 7), (96, 96)])
    def test_fast_operator_matches_dense(self, w, r, rng):
        system = build_system(w, r, draw_chipping(w, rng))
        phi = system.dense()
        for _ in range(100):
            s = rng.normal(size=w) + 1j * rng.normal(size=w)
            ref = phi @ s
            assert np.linalg.norm(system.apply(s) - ref) <= 1e-10 * np.linalg.norm(ref)

    @pytest.mark.parametrize("w,r", [(128, 32), (100, 7)])
    def test_adjoint_identity(self, w, r, rng):
        system = build_system(w, r, draw_chipping(w, rng))
        for _ in range(100):
            s = rng.normal(size=w) + 1j * rng.normal(size=w)
            y = rng.normal(size=r) + 1j * rng.normal(size=r)
            lhs = np.vdot(y, system.apply(s))
            rhs = np.vdot(system.apply_adjoint(y), s)
            assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_spectral_norm_divisible(self, rng):
        system = build_system(12, 3, draw_chipping(12, rng))
        assert np.linalg.norm(system.dense(), 2) == pytest.approx(2.0, abs=1e-9)

    def test_column_norm_concentration(self):
        # column norms stay within 0.5 of unit over 50 draws at W=512, R=128
        worst = 0.0
        for i in range(50):
            rng = np.random.default_rng(1000 + i)
            system = build_system(512, 128, draw_chipping(512, rng))
            norms = np.sum(np.abs(system.dense()) ** 2, axis=0)
            worst = max(worst, np.max(np.abs(norms - 1.0)))
        assert worst < 0.5

    def test_mean_gram_exhaustive(self):
        from itertools import product

        grams = []
        for signs in product((-1.0, 1.0), repeat=4):
            phi = build_system(4, 2, np.array(signs)).dense()
            grams.append(phi.conj().T @ phi)
        deviation = np.max(np.abs(np.mean(grams, axis=0) - np.eye(4)))
        assert deviation == 0.0

    def test_entry_bound_mostly_holds(self):
        # Lemma-style bound sqrt(10 log W / R), quick desk check
        from demodlab.diagnostics import entry_bound_threshold, max_entry

        w, r = 128, 32
        threshold = entry_bound_threshold(w, r)
        exceed = 0
        for i in range(200):
            system = build_system(w, r, draw_chipping(w, np.random.default_rng(i)))
            exceed += max_entry(system) > threshold
        assert exceed <= 2 * 200 / w

    def test_dense_refusal_above_limit(self, rng):
        w = 2 * DENSE_LIMIT
        system = build_system(w, w // 4, draw_chipping(w, rng))
        with pytest.raises(ValueError):
            system.dense()
        s = rng.normal(size=w) + 1j * rng.normal(size=w)
        y = rng.normal(size=w // 4) + 1j * rng.normal(size=w // 4)
        lhs = np.vdot(y, system.apply(s))
        rhs = np.vdot(system.apply_adjoint(y), s)
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_columns_slice(self, rng):
        system = build_system(100, 7, draw_chipping(100, rng))
        idx = np.array([0, 3, 99])
        cols = system.columns(idx)
        assert np.allclose(cols, system.dense()[:, idx], atol=1e-12)


class TestContinuousSampler:
    def test_zero_signal(self, rng):
        eps = draw_chipping(64, rng)
        assert np.all(sample_continuous(np.zeros(64, dtype=complex), eps, 16) == 0)

    def test_matches_matrix_path(self, rng):
        for _ in range(100):
            s = draw_model_a(64, 4, rng)
            system = build_system(64, 16, draw_chipping(64, rng))
            y_cont = sample_continuous(s, system.chipping, 16)
            y_mat = system.apply(s)
            assert np.linalg.norm(y_cont - y_mat) <= 1e-8 * np.linalg.norm(y_mat)

    def test_dc_tone_constant_across_windows(self):
        w, r = 32, 8
        s = attenuate(np.eye(w)[0] * 2.0)  # DC tone amplitude 2
        y = sample_continuous(s, np.ones(w), r)
        assert np.allclose(y, y[0])
        assert y[0] == pytest.approx((w / r) * s[0].real / np.sqrt(w))

    def test_requires_divisible_rate(self, rng):
        with pytest.raises(ValueError):
            sample_continuous(np.zeros(64, dtype=complex), draw_chipping(64, rng), 7)


class TestSerialization:
    def test_eps_round_trip(self, rng):
        system = build_system(32, 8, draw_chipping(32, rng))
        rebuilt = system_from_json(system_to_json(system))
        assert np.array_equal(rebuilt.chipping, system.chipping)
        assert (rebuilt.w, rebuilt.r) == (32, 8)

    def test_seed_round_trip(self):
        from demodlab.io import make_system

        system = make_system(64, 16, seed=123)
        rebuilt = system_from_json(system_to_json(system, seed=123))
        assert np.array_equal(rebuilt.chipping, system.chipping)
