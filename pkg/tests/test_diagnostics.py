import numpy as np
import pytest

from demodlab.diagnostics import (
    coherence,
    coherence_floor,
    cumulative_coherence,
    entry_bound_threshold,
    gram_deviation,
    max_entry,
    rip_estimate,
    submatrix_condition,
)
from demodlab.system import build_system, draw_chipping

from conftest import make_instance


def all_sign_patterns(w):
    from itertools import product

    for signs in product((-1.0, 1.0), repeat=w):
        yield np.array(signs)


class TestMaxEntry:
    def test_two_by_two_enumeration(self):
        # at R = W = 2 the matrix is D F, so every entry has magnitude 1/sqrt(2)
        for eps in all_sign_patterns(2):
            system = build_system(2, 2, eps)
            assert max_entry(system) == pytest.approx(1 / np.sqrt(2), abs=1e-15)
            assert max_entry(system) <= np.sqrt(2 / 2)

    def test_deterministic_chipping_closed_form(self):
        # all-ones chipping makes Phi = H F; entries are Dirichlet-kernel sums
        w, r = 64, 8
        system = build_system(w, r, np.ones(w))
        block = w // r
        omegas = np.arange(1, w)
        dirichlet = np.abs(np.sin(np.pi * block * omegas / w) / np.sin(np.pi * omegas / w))
        expected = max(block, dirichlet.max()) / np.sqrt(w)
        assert max_entry(system) == pytest.approx(expected, abs=1e-12)

    def test_entry_bound_rarely_exceeded(self):
        w, r = 512, 128
        threshold = entry_bound_threshold(w, r)
        assert threshold == pytest.approx(np.sqrt(10 * np.log(512) / 128), abs=1e-12)
        exceed = sum(
            max_entry(build_system(w, r, draw_chipping(w, np.random.default_rng(i)))) > threshold
            for i in range(200)
        )
        assert exceed / 200 <= 2 / w


class TestCoherence:
    def test_exhaustive_w4(self):
        # brute-force column inner products over all 16 chipping sequences
        for eps in all_sign_patterns(4):
            system = build_system(4, 2, eps)
            phi = system.dense()
            brute = max(
                abs(np.vdot(phi[:, a], phi[:, o])) for a in range(4) for o in range(4) if a != o
            )
            assert coherence(system) == pytest.approx(brute, abs=1e-12)

    def test_upper_band(self):
        w, r = 512, 64
        bound = 4 * np.sqrt(np.log(w) / r)
        hits = sum(
            coherence(build_system(w, r, draw_chipping(w, np.random.default_rng(i)))) <= bound
            for i in range(100)
        )
        assert hits >= 99

    def test_lower_floor(self):
        w, r = 256, 64
        floor = coherence_floor(w, r) - 0.05
        for i in range(20):
            system = build_system(w, r, draw_chipping(w, np.random.default_rng(i)))
            assert coherence(system) >= floor

    def test_gram_deviation_structure(self, rng):
        _, system, _ = make_instance(64, 16, 1, rng)
        dev = gram_deviation(system)
        assert np.max(np.abs(dev.x - dev.x.conj().T)) < 1e-12
        norms = np.sum(np.abs(system.dense()) ** 2, axis=0)
        assert np.allclose(np.diag(dev.x).real, norms - 1, atol=1e-12)
        off = np.abs(dev.x - np.diag(np.diag(dev.x)))
        assert coherence(system) == pytest.approx(off.max(), abs=1e-12)


class TestCumulativeCoherence:
    def test_singleton_support(self, rng):
        _, system, _ = make_instance(32, 8, 1, rng)
        g = np.abs(
            system.dense().conj().T @ system.dense()
        )
        for omega in (0, 5, 31):
            others = [a for a in range(32) if a != omega]
            assert cumulative_coherence(system, [omega]) == pytest.approx(
                max(g[a, omega] for a in others), abs=1e-10
            )

    def test_bounded_by_mu_sqrt_k(self, rng):
        for _ in range(25):
            _, system, _ = make_instance(64, 32, 1, rng)
            omega = rng.choice(64, size=6, replace=False)
            mu = coherence(system)
            assert cumulative_coherence(system, omega) <= mu * np.sqrt(6) + 1e-12

    def test_empty_complement(self, rng):
        _, system, _ = make_instance(8, 4, 1, rng)
        with pytest.raises(ValueError):
            cumulative_coherence(system, np.arange(8))


class TestSubmatrixCondition:
    def test_single_column(self, rng):
        _, system, _ = make_instance(64, 16, 1, rng)
        phi = system.dense()
        for omega in (0, 9):
            expected = abs(np.linalg.norm(phi[:, omega]) ** 2 - 1)
            assert submatrix_condition(system, [omega]) == pytest.approx(expected, abs=1e-12)

    def test_eigenvalue_containment(self, rng):
        _, system, _ = make_instance(128, 64, 1, rng)
        omega = rng.choice(128, size=8, replace=False)
        v = submatrix_condition(system, omega)
        sub = system.columns(omega)
        eigs = np.linalg.eigvalsh(sub.conj().T @ sub)
        assert np.all(eigs >= 1 - v - 1e-10) and np.all(eigs <= 1 + v + 1e-10)

    def test_oversized_support(self, rng):
        _, system, _ = make_instance(32, 8, 1, rng)
        with pytest.raises(ValueError):
            submatrix_condition(system, np.arange(9))


class TestRip:
    def test_order_one_reduction(self, rng):
        _, system, _ = make_instance(64, 16, 1, rng)
        est = rip_estimate(system, 1)
        norms = np.sum(np.abs(system.dense()) ** 2, axis=0)
        assert est.method == "exhaustive"
        assert est.delta_hat == pytest.approx(np.max(np.abs(norms - 1)), abs=1e-12)

    def test_sampled_never_exceeds_exhaustive(self, rng):
        _, system, _ = make_instance(16, 8, 1, rng)
        exact = rip_estimate(system, 2, budget=200)
        assert exact.method == "exhaustive" and exact.supports_tested == 120
        sampled = rip_estimate(system, 2, budget=60, rng=np.random.default_rng(0))
        assert sampled.method == "sampled"
        assert sampled.delta_hat <= exact.delta_hat + 1e-12

    def test_delta_shrinks_with_rate(self):
        # median sampled delta over order-8 supports falls as R doubles
        medians = []
        for r in (32, 64, 128):
            deltas = [
                rip_estimate(
                    build_system(256, r, draw_chipping(256, np.random.default_rng(100 + i))),
                    8,
                    budget=400,
                    rng=np.random.default_rng(i),
                ).delta_hat
                for i in range(5)
            ]
            medians.append(np.median(deltas))
        assert medians[0] > medians[1] > medians[2]

    def test_order_bounds(self, rng):
        _, system, _ = make_instance(32, 8, 1, rng)
        with pytest.raises(ValueError):
            rip_estimate(system, 9)
