"""Discrete multitone signal model.

A signal is a sum of harmonic tones on the unit time interval,

    f(t) = sum_w a_w exp(-2*pi*i*w*t),   t in [0, 1),

with integer frequencies w drawn from {0, +-1, ..., +-(W/2 - 1), W/2} for an
even bandlimit W.  Averaging f over chips of length 1/W attenuates each tone
amplitude a_w by a fixed complex factor; absorbing that factor yields the
length-W *amplitude vector* s, which is the recovery target everywhere in
this package.  Amplitude vectors are plain complex ndarrays of length W,
indexed by DFT bin (frequency w lives in column w mod W).
"""

import numpy as np

__all__ = [
    "freq_to_column",
    "column_to_freq",
    "column_frequencies",
    "attenuation_factors",
    "attenuate",
    "prewhiten",
    "eval_multitone",
    "draw_model_a",
    "draw_compressible",
    "best_k_approx",
    "compressible_tail_bounds",
    "support",
    "sparsity",
]


def _check_bandlimit(w):
    w = int(w)
    if w < 2 or w % 2 != 0:
        raise ValueError(f"bandlimit must be even and >= 2, got {w}")
    return w


def freq_to_column(omega, w):
    """Map a tone frequency to its DFT bin: w >= 0 -> w, w < 0 -> W + w."""
    w = _check_bandlimit(w)
    omega = int(omega)
    if not -(w // 2) < omega <= w // 2:
        raise ValueError(f"frequency {omega} outside (-{w // 2}, {w // 2}] for W={w}")
    return omega if omega >= 0 else w + omega


def column_to_freq(column, w):
    """Inverse of :func:`freq_to_column`."""
    w = _check_bandlimit(w)
    column = int(column)
    if not 0 <= column < w:
        raise ValueError(f"column {column} outside [0, {w})")
    return column if column <= w // 2 else column - w


def column_frequencies(w):
    """Frequencies for columns 0..W-1 in bin order: 0, 1, ..., W/2, -W/2+1, ..., -1."""
    w = _check_bandlimit(w)
    cols = np.arange(w)
    return np.where(cols <= w // 2, cols, cols - w)


def attenuation_factors(w):
    """Per-tone chip-integration factor (1 - exp(-2*pi*i*w/W)) / (2*pi*i*w).

    This is the integral of exp(-2*pi*i*w*t) over one chip of length 1/W,
    up to the tone's phase at the chip start; its value at frequency zero is
    1/W.  It never vanishes on the legal frequency range, so the map is
    invertible.
    """
    w = _check_bandlimit(w)
    omega = column_frequencies(w).astype(float)
    with np.errstate(divide="ignore", invalid="ignore"):
        factors = (1.0 - np.exp(-2j * np.pi * omega / w)) / (2j * np.pi * omega)
    factors[0] = 1.0 / w
    return factors


def attenuate(a):
    """Amplitude vector s for tone amplitudes a: s_w = a_w * attenuation factor."""
    a = np.asarray(a, dtype=complex)
    return a * attenuation_factors(a.size)


def prewhiten(s):
    """Tone amplitudes a for an amplitude vector s; exact inverse of attenuate."""
    s = np.asarray(s, dtype=complex)
    return s / attenuation_factors(s.size)


def eval_multitone(s, t):
    """Evaluate the continuous-time signal carried by amplitude vector s.

    Parameters
    ----------
    s : complex ndarray, length W
        Amplitude vector; the underlying tone amplitudes are recovered by
        inverting the attenuation map.
    t : float or ndarray
        Time points in [0, 1).

    Returns
    -------
    complex scalar or ndarray matching the shape of t.
    """
    s = np.asarray(s, dtype=complex)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((t_arr < 0.0) | (t_arr >= 1.0)):
        raise ValueError("time points must lie in [0, 1)")
    a = prewhiten(s)
    cols = np.nonzero(a)[0]
    if cols.size == 0:
        out = np.zeros(t_arr.shape, dtype=complex)
    else:
        omega = column_frequencies(s.size)[cols]
        out = np.exp(-2j * np.pi * np.outer(t_arr, omega)) @ a[cols]
    return out[0] if np.isscalar(t) or np.ndim(t) == 0 else out.reshape(np.shape(t))


def draw_model_a(w, k, rng):
    """Draw a random K-sparse amplitude vector.

    The support is a uniformly random K-subset of the W bins; every nonzero
    entry has unit magnitude and an i.i.d. uniform phase.
    """
    w = _check_bandlimit(w)
    k = int(k)
    if not 0 <= k <= w:
        raise ValueError(f"sparsity {k} outside [0, {w}]")
    s = np.zeros(w, dtype=complex)
    if k > 0:
        cols = rng.choice(w, size=k, replace=False)
        s[cols] = np.exp(2j * np.pi * rng.uniform(size=k))
    return s


def draw_compressible(w, p, rng):
    """Draw a p-compressible amplitude vector with sorted magnitudes k**(-1/p).

    The k-th largest magnitude equals k**(-1/p) exactly (the extremal case of
    the decay profile); positions are a random permutation and phases are
    i.i.d. uniform on the unit circle.
    """
    w = _check_bandlimit(w)
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"decay exponent p must lie in (0, 1), got {p}")
    magnitudes = np.arange(1, w + 1, dtype=float) ** (-1.0 / p)
    phases = np.exp(2j * np.pi * rng.uniform(size=w))
    s = np.empty(w, dtype=complex)
    s[rng.permutation(w)] = magnitudes * phases
    return s


def best_k_approx(s, k):
    """Best K-term approximation and its tail norms.

    Keeps the K largest-magnitude entries, breaking ties by lowest column
    index.  Returns ``(s_k, tail_l1, tail_l2)`` where the tails are the l1 and
    l2 norms of ``s - s_k``.
    """
    s = np.asarray(s, dtype=complex)
    k = int(k)
    if not 0 <= k <= s.size:
        raise ValueError(f"K={k} outside [0, {s.size}]")
    order = np.argsort(-np.abs(s), kind="stable")
    s_k = np.zeros_like(s)
    s_k[order[:k]] = s[order[:k]]
    tail = s - s_k
    return s_k, np.sum(np.abs(tail)), np.linalg.norm(tail)


def compressible_tail_bounds(p, k):
    """Tail-norm bounds for a p-compressible vector truncated to K terms.

    Returns ``(l1_bound, l2_bound)`` with
    l1 <= K**(1 - 1/p) / (1/p - 1) and l2 <= K**(1/2 - 1/p) / sqrt(2/p - 1).
    """
    p = float(p)
    k = int(k)
    if not 0.0 < p < 1.0:
        raise ValueError(f"decay exponent p must lie in (0, 1), got {p}")
    if k < 1:
        raise ValueError("K must be >= 1")
    return (
        k ** (1.0 - 1.0 / p) / (1.0 / p - 1.0),
        k ** (0.5 - 1.0 / p) / np.sqrt(2.0 / p - 1.0),
    )


def support(s):
    """Indices of the nonzero entries."""
    return np.nonzero(np.asarray(s))[0]


def sparsity(s):
    """Number of nonzero entries."""
    return int(np.count_nonzero(np.asarray(s)))
