"""Empirical matrix diagnostics for the sampling system.

Entry bounds, Gram deviation, coherence, cumulative coherence, random
submatrix conditioning, and restricted-isometry constant estimation - the
statistics whose concentration makes sub-Nyquist recovery work.  Everything
here is a pure function of a built system (and an explicit generator for the
sampled paths).
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb, log

import numpy as np

__all__ = [
    "GramDeviation",
    "RipEstimate",
    "gram_deviation",
    "max_entry",
    "entry_bound_threshold",
    "coherence",
    "coherence_floor",
    "cumulative_coherence",
    "submatrix_condition",
    "rip_estimate",
]


@dataclass
class GramDeviation:
    """Deviation X = Phi* Phi - I of the Gram matrix from the identity."""

    x: np.ndarray
    max_abs: float


def _gram(system):
    # Phi* Phi computed as a batched adjoint application, so the cost is one
    # matrix FFT instead of a W x R x W contraction.
    phi = system.dense()
    if system.h.divisible:
        lifted = np.repeat(phi, system.w // system.r, axis=0)
    else:
        lifted = system.h.matrix.T @ phi
    g = np.sqrt(system.w) * np.fft.ifft(system.chipping[:, None] * lifted, axis=0)
    return 0.5 * (g + g.conj().T)


def gram_deviation(system):
    x = _gram(system) - np.eye(system.w)
    return GramDeviation(x=x, max_abs=float(np.max(np.abs(x))))


def max_entry(system):
    """Largest entry magnitude of the dense sampling matrix."""
    return float(np.max(np.abs(system.dense())))


def entry_bound_threshold(w, r):
    """High-probability entry bound sqrt(10 log(W) / R); exceeded w.p. <= 1/W."""
    return float(np.sqrt(10.0 * log(w) / r))


def coherence(system):
    """Largest inner product magnitude between distinct columns."""
    g = np.abs(_gram(system))
    np.fill_diagonal(g, 0.0)
    return float(g.max())


def coherence_floor(w, r):
    """Lower bound (1/sqrt(R)) (1 - R/W) valid for unit-norm columns."""
    return (1.0 - r / w) / np.sqrt(r)


def cumulative_coherence(system, omega):
    """Local 2-cumulative coherence of a support set.

    mu2(Omega) is the worst l2 norm, over columns outside Omega, of that
    column's inner products with the columns inside Omega.  It is bounded by
    mu * sqrt(|Omega|) but typically much smaller for random supports.
    """
    omega = np.asarray(omega, dtype=int)
    if omega.size == 0 or np.any((omega < 0) | (omega >= system.w)):
        raise ValueError("support must be a nonempty subset of [0, W)")
    outside = np.setdiff1d(np.arange(system.w), omega)
    if outside.size == 0:
        raise ValueError("support complement is empty")
    g = _gram(system)
    return float(np.sqrt(np.sum(np.abs(g[np.ix_(outside, omega)]) ** 2, axis=1)).max())


def submatrix_condition(system, omega):
    """Spectral norm of Phi_Omega* Phi_Omega - I for a column subset."""
    omega = np.asarray(omega, dtype=int)
    if omega.size > system.r:
        raise ValueError(f"support size {omega.size} exceeds sampling rate {system.r}")
    phi = system.columns(omega)
    dev = phi.conj().T @ phi - np.eye(omega.size)
    return float(np.max(np.abs(np.linalg.eigvalsh(0.5 * (dev + dev.conj().T)))))


@dataclass
class RipEstimate:
    """Restricted isometry constant of order n: exact or a sampled lower bound."""

    n: int
    delta_hat: float
    supports_tested: int
    method: str  # "exhaustive" | "sampled"


def rip_estimate(system, n, budget=20000, rng=None):
    """Estimate the order-n restricted isometry constant.

    Exhausts all C(W, n) supports when that count fits the budget (the exact
    constant, since principal-submatrix spectral norms are maximized at full
    size n); otherwise evaluates ``budget`` random supports, which yields a
    lower bound flagged ``method="sampled"``.
    """
    n = int(n)
    if not 1 <= n <= system.r:
        raise ValueError(f"order n={n} outside [1, R={system.r}]")
    g = _gram(system)
    dev = g - np.eye(system.w)

    def value(cols):
        sub = dev[np.ix_(cols, cols)]
        return np.max(np.abs(np.linalg.eigvalsh(0.5 * (sub + sub.conj().T))))

    total = comb(system.w, n)
    if total <= budget:
        delta = max(value(np.asarray(cols)) for cols in combinations(range(system.w), n))
        return RipEstimate(n=n, delta_hat=float(delta), supports_tested=total, method="exhaustive")
    rng = rng if rng is not None else np.random.default_rng(0)
    delta = 0.0
    for _ in range(int(budget)):
        cols = rng.choice(system.w, size=n, replace=False)
        delta = max(delta, value(cols))
    return RipEstimate(n=n, delta_hat=float(delta), supports_tested=int(budget), method="sampled")
