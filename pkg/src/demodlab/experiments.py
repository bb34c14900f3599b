"""Monte-Carlo experiments over the sampling system.

Minimum sampling-rate searches, the rate-law regression, the phase-transition
success grid, a synthetic AM acquisition demo, the windowing decay study, and
the ENOB / figure-of-merit calculators.  Every experiment is a deterministic
function of its configuration and master seed; grid trials draw their own
streams from (seed, cell, trial) labels so execution order never matters.
"""

from dataclasses import dataclass

import numpy as np

from .seeding import derive_rng
from .signals import attenuate, column_frequencies, draw_model_a, freq_to_column, prewhiten
from .solvers import SolverConfig, irls_l1, l1_denoise
from .system import build_system, draw_chipping
from .windows import window, windowed_tone_energy

__all__ = [
    "RECOVERY_RTOL",
    "GridConfig",
    "TrialGrid",
    "RegressionFit",
    "WindowDecayTable",
    "recovery_success",
    "recovery_trial",
    "success_count",
    "min_rate_search",
    "fit_rate_law",
    "success_grid",
    "am_demo",
    "window_demo",
    "enob",
    "fom",
]

# "Machine precision" success, operationalized for an iterative solver.
RECOVERY_RTOL = 1e-6


def recovery_success(s_true, result):
    """Exact-recovery test: converged and within 1e-6 relative l2 of the truth."""
    if not result.converged:
        return False
    norm = np.linalg.norm(s_true)
    if norm == 0.0:
        return bool(np.linalg.norm(result.estimate) <= 1e-9)
    return bool(np.linalg.norm(result.estimate - s_true) <= RECOVERY_RTOL * norm)


def recovery_trial(w, k, r, rng, config=None):
    """One experiment trial: fresh signal, fresh demodulator, sample, recover."""
    s = draw_model_a(w, k, rng)
    system = build_system(w, r, draw_chipping(w, rng))
    result = irls_l1(system, system.apply(s), config)
    return recovery_success(s, result)


def success_count(w, k, r, trials, rng, config=None, needed=None, allowed_failures=None):
    """Count successful trials, stopping early once the verdict is decided.

    When ``needed`` / ``allowed_failures`` are given, the loop exits as soon
    as the success count reaches ``needed`` or the failure count exceeds
    ``allowed_failures``; the trial tally consumed from ``rng`` then depends
    only on the outcomes, so the scan stays deterministic.
    """
    successes = failures = 0
    for t in range(trials):
        if recovery_trial(w, k, r, rng, config):
            successes += 1
        else:
            failures += 1
        if needed is not None and successes >= needed:
            break
        if allowed_failures is not None and failures > allowed_failures:
            break
    return successes, failures


def min_rate_search(w, k, trials, target_success, rng, config=None, r_max=None):
    """Least sampling rate whose empirical success frequency meets the target.

    Scans R upward in coarse steps of max(1, W/128), then refines by unit
    steps below the first passing candidate.  Every trial draws a new signal
    and a new demodulator.  Returns -1 when no rate up to W succeeds.
    """
    if not 0.0 < target_success < 1.0:
        raise ValueError("target_success must lie in (0, 1)")
    if trials < 20:
        raise ValueError("need at least 20 trials per candidate rate")
    r_max = w if r_max is None else min(int(r_max), w)
    needed = int(np.ceil(target_success * trials))
    allowed = trials - needed

    def passes(r):
        successes, _ = success_count(
            w, k, r, trials, rng, config, needed=needed, allowed_failures=allowed
        )
        return successes >= needed

    step = max(1, w // 128)
    coarse_hit = None
    for r in range(step, r_max + 1, step):
        if passes(r):
            coarse_hit = r
            break
    if coarse_hit is None:
        for r in range(r_max - (r_max - step) % step + 1, r_max + 1):  # tail below r_max
            if passes(r):
                coarse_hit = r
                break
        if coarse_hit is None:
            return -1
    for r in range(max(1, coarse_hit - step + 1), coarse_hit):
        if passes(r):
            return r
    return coarse_hit


@dataclass
class RegressionFit:
    """Least-squares fit of R against K log(W/K + 1) (natural log)."""

    slope: float
    intercept: float
    residuals: np.ndarray


def rate_law_predictor(k, w):
    """Regressor x = K * ln(W/K + 1) underlying the empirical rate law."""
    return k * np.log(w / k + 1.0)


def fit_rate_law(points):
    """Fit R = a * K log(W/K + 1) + b to (K, W, R_min) triples."""
    points = [(k, w, r) for (k, w, r) in points]
    if len(points) < 3:
        raise ValueError("need at least 3 points to fit the rate law")
    x = np.array([rate_law_predictor(k, w) for (k, w, _) in points])
    r = np.array([float(rm) for (_, _, rm) in points])
    design = np.column_stack([x, np.ones_like(x)])
    if np.linalg.matrix_rank(design) < 2:
        raise ValueError("degenerate design matrix: regressor values coincide")
    coef, *_ = np.linalg.lstsq(design, r, rcond=None)
    return RegressionFit(
        slope=float(coef[0]), intercept=float(coef[1]), residuals=r - design @ coef
    )


@dataclass(frozen=True)
class GridConfig:
    """Phase-transition grid configuration."""

    w: int
    k_values: tuple
    r_values: tuple
    trials_per_cell: int = 100
    master_seed: int = 0


@dataclass
class TrialGrid:
    """Success counts on the (K, R) grid; -1 marks skipped cells."""

    w: int
    k_values: tuple
    r_values: tuple
    trials_per_cell: int
    success_counts: np.ndarray
    master_seed: int

    def success_rate(self, i, j):
        count = self.success_counts[i, j]
        return None if count < 0 else count / self.trials_per_cell


def success_grid(config, solver_config=None):
    """Populate the success grid cell by cell with per-trial derived streams."""
    counts = np.zeros((len(config.k_values), len(config.r_values)), dtype=int)
    for i, k in enumerate(config.k_values):
        for j, r in enumerate(config.r_values):
            if k > config.w or r > config.w or r < 1:
                counts[i, j] = -1
                continue
            hits = 0
            for t in range(config.trials_per_cell):
                rng = derive_rng(config.master_seed, "grid", config.w, k, r, t)
                hits += recovery_trial(config.w, k, r, rng, solver_config)
            counts[i, j] = hits
    return TrialGrid(
        w=config.w,
        k_values=tuple(config.k_values),
        r_values=tuple(config.r_values),
        trials_per_cell=config.trials_per_cell,
        success_counts=counts,
        master_seed=config.master_seed,
    )


def am_demo(message_k, w, r, carrier_omega, noise_level, rng, config=None):
    """Acquire and demodulate a synthetic AM transmission.

    The message is a real multitone with ``message_k`` nonzero Fourier
    coefficients drawn in a low band; modulating (message + DC) onto a cosine
    carrier gives an amplitude vector with 2 * message_k + 2 active tones.
    The demodulator samples at rate R, the samples are recovered (noise-aware
    when noise is added), and the message is demodulated from the upper
    sideband.  Returns (snr_db, reconstructed message on the chip grid).
    """
    message_k = int(message_k)
    if message_k < 2 or message_k % 2 != 0:
        raise ValueError("message_k must be an even count >= 2 of Fourier coefficients")
    pairs = message_k // 2
    band = 2 * pairs
    carrier_omega = int(carrier_omega)
    if carrier_omega <= band or carrier_omega + band > w // 2 - 1:
        raise ValueError(
            f"carrier {carrier_omega} with message band {band} overflows +-(W/2-1) for W={w}"
        )
    freqs = 1 + rng.choice(band, size=pairs, replace=False)
    coefs = np.exp(2j * np.pi * rng.uniform(size=pairs))

    amplitude = 1.0
    dc_offset = 2.0 * pairs  # keeps message + C positive
    a = np.zeros(w, dtype=complex)
    for f, c in zip(freqs, coefs):
        for m_freq, m_coef in ((int(f), c), (-int(f), np.conj(c))):
            a[freq_to_column(m_freq + carrier_omega, w)] += 0.5 * amplitude * m_coef
            a[freq_to_column(m_freq - carrier_omega, w)] += 0.5 * amplitude * m_coef
    a[freq_to_column(carrier_omega, w)] += 0.5 * amplitude * dc_offset
    a[freq_to_column(-carrier_omega, w)] += 0.5 * amplitude * dc_offset
    s = attenuate(a)

    system = build_system(w, r, draw_chipping(w, rng))
    y = system.apply(s)
    if noise_level > 0.0:
        noise = rng.normal(size=r) + 1j * rng.normal(size=r)
        eta = noise_level * np.linalg.norm(y)
        y = y + noise * (eta / np.linalg.norm(noise))
        result = l1_denoise(system, y, eta, config)
    else:
        result = irls_l1(system, y, config)
    a_hat = prewhiten(result.estimate)

    t_grid = np.arange(w) / w
    omegas = np.arange(-band, band + 1)
    omegas = omegas[omegas != 0]
    basis = np.exp(-2j * np.pi * np.outer(t_grid, omegas))
    true_coef = np.array([a[freq_to_column(int(o) + carrier_omega, w)] for o in omegas])
    rec_coef = np.array([a_hat[freq_to_column(int(o) + carrier_omega, w)] for o in omegas])
    message_true = (basis @ (2.0 / amplitude * true_coef)).real
    message_rec = (basis @ (2.0 / amplitude * rec_coef)).real
    err = np.linalg.norm(message_true - message_rec)
    if err == 0.0:
        return float("inf"), message_rec
    snr_db = 20.0 * np.log10(np.linalg.norm(message_true) / err)
    return float(snr_db), message_rec


@dataclass
class WindowDecayTable:
    """Best-K approximation errors of a nonharmonic tone, raw and windowed."""

    k_values: tuple
    err_raw: np.ndarray
    err_windowed: np.ndarray
    slope_raw: float
    slope_windowed: float


def _loglog_slope(k_values, errs):
    coef, *_ = np.linalg.lstsq(
        np.column_stack([np.log(k_values), np.ones(len(k_values))]), np.log(errs), rcond=None
    )
    return float(coef[0])


def window_demo(omega_prime, window_order, k_values, n_grid=1 << 20):
    """Best-K harmonic approximation error of a nonharmonic tone, raw vs windowed.

    The raw tone exp(-2*pi*i*omega'*t) has sinc-profile coefficients whose
    best-K L2 error decays only like K**(-1/2); multiplying by an order-r
    window steepens the decay to K**(1/2 - r).  Coefficients of the windowed
    tone are computed on a 2**20 harmonic grid via the FFT; the raw tone's
    come from the closed-form sinc samples.  Returns the error table and the
    log-log slopes.
    """
    omega_prime = float(omega_prime)
    if omega_prime == int(omega_prime):
        raise ValueError("omega' must be nonharmonic (that signal is 1-sparse already)")
    k_values = tuple(int(k) for k in k_values)
    if min(k_values) < 1:
        raise ValueError("K values must be >= 1")

    # raw tone: |c_w| = |sinc(w - omega')|, total energy exactly 1
    offsets = np.arange(-(n_grid // 2), n_grid // 2) - (omega_prime - round(omega_prime))
    raw_power = np.sort(np.sinc(offsets) ** 2)[::-1]
    err_raw = np.sqrt(np.maximum(1.0 - np.cumsum(raw_power), 0.0))

    # windowed tone: FFT of psi(t) exp(-2 pi i omega' t) on a fine grid
    t = np.arange(n_grid) / n_grid
    g = window(t, window_order) * np.exp(-2j * np.pi * omega_prime * t)
    coef_power = np.sort(np.abs(np.fft.ifft(g)) ** 2)[::-1]
    energy = windowed_tone_energy(window_order)
    err_win = np.sqrt(np.maximum(energy - np.cumsum(coef_power), 0.0))

    idx = np.array(k_values) - 1
    table = WindowDecayTable(
        k_values=k_values,
        err_raw=err_raw[idx],
        err_windowed=err_win[idx],
        slope_raw=_loglog_slope(k_values, err_raw[idx]),
        slope_windowed=_loglog_slope(k_values, err_win[idx]),
    )
    return table


def enob(snr_db):
    """Effective number of bits: (SNR - 1.76) / 6.02, SNR in dB."""
    return (snr_db - 1.76) / 6.02


def fom(enob_value, w, p_diss_fn, k):
    """Figure of merit 2**(ENOB-1) * W / P_diss(R) at the empirical rate R = 1.7 K ln(W/K)."""
    k = int(k)
    if not 0 < k < w:
        raise ValueError("need 0 < K < W for the rate estimate")
    rate = 1.7 * k * np.log(w / k)
    power = p_diss_fn(rate)
    if power <= 0.0:
        raise ValueError("power dissipation must be positive")
    return float(2.0 ** (enob_value - 1.0) * w / power)
