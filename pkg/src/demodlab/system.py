"""Random demodulator sampling system.

The sampler is the R x W matrix product of three factors: an accumulate-and-
dump matrix H (each row sums W/R consecutive chips), a diagonal of random
signs D = diag(eps), and the unitary permuted DFT F whose columns follow the
bin order of :mod:`demodlab.signals`.  The product acts on amplitude vectors,
and its action is available both as a cached dense matrix and as an
FFT-based fast operator.  A closed-form continuous-time integrate-and-dump
sampler provides an independent cross-check of the matrix model.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .signals import column_frequencies, prewhiten

__all__ = [
    "DENSE_LIMIT",
    "AccumulatorMatrix",
    "DemodulatorSystem",
    "draw_chipping",
    "build_accumulator",
    "build_system",
    "sample_continuous",
]

# Dense R x W matrices are materialized only up to this bandlimit; larger
# systems must go through the fast operator.
DENSE_LIMIT = 4096


def draw_chipping(w, rng):
    """Draw W i.i.d. +-1 chipping signs from the given generator."""
    if w < 2:
        raise ValueError(f"need W >= 2, got {w}")
    return rng.choice(np.array([-1.0, 1.0]), size=int(w))


@dataclass(frozen=True)
class AccumulatorMatrix:
    """Accumulate-and-dump matrix with R rows of chip weights.

    When R divides W the rows are disjoint blocks of W/R unit entries.
    Otherwise a chip overlapping a sampling window with fractional length
    lam contributes sqrt(lam), which keeps every column at unit l2 norm and
    reproduces the printed R=3, W=7 example.
    """

    r: int
    w: int
    matrix: sp.csr_matrix
    divisible: bool

    def dot(self, x):
        if self.divisible:
            return x.reshape(self.r, self.w // self.r).sum(axis=1)
        return self.matrix @ x

    def tdot(self, y):
        if self.divisible:
            return np.repeat(y, self.w // self.r)
        return self.matrix.T @ y


def build_accumulator(r, w):
    """Build the R x W accumulator; overlaps are computed in exact integers."""
    r, w = int(r), int(w)
    if not 1 <= r <= w:
        raise ValueError(f"sampling rate R={r} outside [1, W={w}]")
    if w % r == 0:
        block = w // r
        rows = np.repeat(np.arange(r), block)
        cols = np.arange(w)
        vals = np.ones(w)
    else:
        # Work in units of 1/(R*W) seconds: chip j spans [j*R, j*R + R),
        # window m spans [m*W, m*W + W); the overlap is an exact integer.
        rows, cols, vals = [], [], []
        for m in range(r):
            j_lo = (m * w) // r
            j_hi = -((-(m + 1) * w) // r)  # ceil division
            for j in range(j_lo, min(j_hi, w)):
                overlap = min(j * r + r, m * w + w) - max(j * r, m * w)
                if overlap > 0:
                    rows.append(m)
                    cols.append(j)
                    vals.append(np.sqrt(overlap / r))
        rows, cols, vals = np.array(rows), np.array(cols), np.array(vals)
    matrix = sp.csr_matrix((vals, (rows, cols)), shape=(r, w))
    return AccumulatorMatrix(r=r, w=w, matrix=matrix, divisible=(w % r == 0))


@dataclass
class DemodulatorSystem:
    """Immutable sampling system mapping length-W amplitude vectors to R samples."""

    w: int
    r: int
    chipping: np.ndarray
    h: AccumulatorMatrix
    _dense: np.ndarray | None = field(default=None, repr=False, compare=False)

    def apply(self, s):
        """Sample an amplitude vector: accumulate the sign-flipped spectrum blocks.

        Runs in O(W log W): one FFT, one pointwise multiply, one block sum.
        """
        s = np.asarray(s, dtype=complex)
        if s.shape != (self.w,):
            raise ValueError(f"expected amplitude vector of length {self.w}, got {s.shape}")
        x = np.fft.fft(s) / np.sqrt(self.w)
        return self.h.dot(self.chipping * x)

    def apply_adjoint(self, y):
        """Exact conjugate-transpose action on a sample vector."""
        y = np.asarray(y, dtype=complex)
        if y.shape != (self.r,):
            raise ValueError(f"expected sample vector of length {self.r}, got {y.shape}")
        u = self.h.tdot(y)
        return np.sqrt(self.w) * np.fft.ifft(self.chipping * u)

    def dense(self):
        """Dense R x W matrix, cached; refuses above the dense limit."""
        if self.w > DENSE_LIMIT:
            raise ValueError(f"dense form refused for W={self.w} > {DENSE_LIMIT}")
        if self._dense is None:
            u = self.h.matrix.multiply(self.chipping[None, :]).toarray()
            self._dense = np.fft.fft(u, axis=1) / np.sqrt(self.w)
        return self._dense

    def columns(self, indices):
        """Selected columns of the dense matrix, without materializing all of it."""
        indices = np.asarray(indices, dtype=int)
        if self._dense is not None:
            return self._dense[:, indices]
        n = np.arange(self.w)
        e = np.exp(-2j * np.pi * np.outer(n, indices) / self.w) / np.sqrt(self.w)
        return self.h.matrix @ (self.chipping[:, None] * e)


def build_system(w, r, chipping):
    """Assemble the sampling system from its chipping sequence and dimensions."""
    chipping = np.asarray(chipping, dtype=float)
    w, r = int(w), int(r)
    if chipping.shape != (w,):
        raise ValueError(f"chipping length {chipping.shape} does not match W={w}")
    if not np.all(np.abs(chipping) == 1.0):
        raise ValueError("chipping entries must be exactly +-1")
    return DemodulatorSystem(w=w, r=r, chipping=chipping.copy(), h=build_accumulator(r, w))


def sample_continuous(s, chipping, r):
    """Integrate-and-dump samples of the continuous-time signal, in closed form.

    Integrates each tone analytically over every chip interval using the
    antiderivative of exp(-2*pi*i*w*t), flips chip signs, and sums blocks.
    The output is scaled to the matrix convention (the physical prefactor
    R*sqrt(W) is dropped), so it equals ``system.apply(s)`` exactly in exact
    arithmetic.  Requires R | W so that chips nest inside sampling windows.
    """
    s = np.asarray(s, dtype=complex)
    chipping = np.asarray(chipping, dtype=float)
    w = s.size
    if chipping.shape != (w,):
        raise ValueError("chipping length does not match the amplitude vector")
    r = int(r)
    if w % r != 0:
        raise ValueError(f"continuous sampler requires R | W, got R={r}, W={w}")
    a = prewhiten(s)
    cols = np.nonzero(a)[0]
    x = np.zeros(w, dtype=complex)
    if cols.size > 0:
        omega = column_frequencies(w)[cols].astype(float)
        edges = np.arange(w + 1) / w
        ends = np.exp(-2j * np.pi * np.outer(edges, omega))
        with np.errstate(divide="ignore", invalid="ignore"):
            integrals = (ends[1:] - ends[:-1]) / (-2j * np.pi * omega)
        integrals[:, omega == 0.0] = 1.0 / w
        x = integrals @ a[cols]
    return (chipping * x).reshape(r, w // r).sum(axis=1) / np.sqrt(w)
