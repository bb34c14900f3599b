"""Smooth windows on [0, 1) whose half-integer shifts sum to one.

The window of order r is built from a rising flank on [0, 1/2] whose
derivative is a normalized power of a sine arch, sin(2*pi*u)**(r-2); the
falling half is one minus the shifted flank, so sum_k psi(t - k/2) = 1 holds
identically.  Order r gives a window vanishing to order r-1 at the endpoints
and hence a Fourier transform decaying like omega**(-r):  r=1 is a half-width
boxcar, r=2 the triangle, r=3 exactly the raised cosine, and higher orders
sharpen the raised cosine further.
"""

from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = ["window", "window_flank", "windowed_tone_energy"]

_GL_NODES = 64


@lru_cache(maxsize=None)
def _gl_rule():
    nodes, weights = leggauss(_GL_NODES)
    # map from [-1, 1] to [0, 1]
    return 0.5 * (nodes + 1.0), 0.5 * weights


def _check_order(order):
    order = int(order)
    if order < 1:
        raise ValueError(f"window order must be >= 1, got {order}")
    return order


def window_flank(u, order):
    """Rising flank on [0, 1/2]: 0 at 0, 1 at 1/2, vanishing to order r-1."""
    order = _check_order(order)
    u = np.asarray(u, dtype=float)
    if order == 1:
        return (u > 0.0).astype(float)
    if order == 2:
        return np.clip(2.0 * u, 0.0, 1.0)
    if order == 3:
        return np.sin(np.pi * np.clip(u, 0.0, 0.5)) ** 2
    nodes, weights = _gl_rule()
    uu = np.clip(u, 0.0, 0.5)
    # integral of sin(2 pi v)^(r-2) from 0 to uu, by Gauss-Legendre per point
    grid = uu[..., None] * nodes
    vals = np.sin(2.0 * np.pi * grid) ** (order - 2)
    partial = uu * (vals @ weights)
    full = 0.5 * float(np.sin(2.0 * np.pi * 0.5 * nodes) ** (order - 2) @ weights)
    return partial / full


def window(t, order):
    """Window value psi_r(t); zero outside [0, 1)."""
    order = _check_order(order)
    t = np.asarray(t, dtype=float)
    rising = window_flank(t, order)
    falling = 1.0 - window_flank(t - 0.5, order)
    out = np.where(t < 0.5, rising, falling)
    out = np.where((t < 0.0) | (t >= 1.0), 0.0, out)
    return out if out.ndim else float(out)


def windowed_tone_energy(order):
    """L2[0,1) energy of the window itself (the windowed unit tone)."""
    nodes, weights = _gl_rule()
    # integrate |psi|^2 piecewise on [0, 1/2] and [1/2, 1] for accuracy
    left = 0.5 * np.sum(weights * window(0.5 * nodes, order) ** 2)
    right = 0.5 * np.sum(weights * window(0.5 + 0.5 * nodes, order) ** 2)
    return float(left + right)
