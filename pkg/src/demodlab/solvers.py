"""Sparse recovery from demodulator samples.

Four routes to an amplitude-vector estimate: equality-constrained l1
minimization by iteratively reweighted least squares (IRLS), its noise-aware
variant with an l2 residual ball, the CoSaMP greedy pursuit, and an
exhaustive minimum-support oracle for desk-size instances.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np
import scipy.linalg

__all__ = [
    "SolverConfig",
    "RecoveryResult",
    "BudgetExceededError",
    "irls_l1",
    "l1_denoise",
    "cosamp",
    "l0_oracle",
]


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive search would exceed its work budget."""


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by the solvers.

    The smoothing schedule drives IRLS: the reweighting smoother starts at
    ``eps_initial`` and is multiplied by ``eps_decay`` after every iteration,
    never dropping below ``eps_floor``.  ``tol`` is the relative l2 change
    between successive iterates that declares convergence;
    ``feasibility_tol`` is the relative residual a converged estimate must
    satisfy.  ``eta`` is the default noise radius for the noise-aware
    program.  CoSaMP halts after ``halt_window`` successive iterations whose
    relative residual improvement is below ``halt_improvement``.
    """

    max_iters: int = 400
    eps_initial: float = 1.0
    eps_decay: float = 0.1
    eps_floor: float = 1e-8
    tol: float = 1e-8
    feasibility_tol: float = 1e-6
    eta: float = 0.0
    halt_window: int = 3
    halt_improvement: float = 1e-6
    oracle_budget: float = 5e7
    track_objective: bool = False

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        for name in ("eps_initial", "eps_floor", "tol", "feasibility_tol"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.eps_decay < 1.0:
            raise ValueError("eps_decay must lie in (0, 1)")
        if self.eta < 0.0:
            raise ValueError("eta must be nonnegative")


DEFAULT_CONFIG = SolverConfig()


@dataclass
class RecoveryResult:
    """Solver output: the estimate plus convergence telemetry."""

    estimate: np.ndarray
    iterations: int
    residual_l2: float
    converged: bool
    telemetry: dict = field(default_factory=dict)


def _finish(system, estimate, y, iterations, converged, telemetry=None):
    residual = float(np.linalg.norm(system.apply(estimate) - y))
    return RecoveryResult(
        estimate=estimate,
        iterations=iterations,
        residual_l2=residual,
        converged=converged,
        telemetry=telemetry or {},
    )


def _check_samples(system, y):
    y = np.asarray(y, dtype=complex)
    if y.shape != (system.r,):
        raise ValueError(f"expected sample vector of length {system.r}, got {y.shape}")
    return y


class _NormalEquations:
    """Weighted normal matrix Phi diag(d) Phi* without dense matmuls.

    With Phi = H D F and F the unitary DFT, F diag(d) F* is circulant, so
    each Gram evaluation costs one batched FFT plus a sparse product instead
    of an R x W x R contraction.
    """

    def __init__(self, system):
        self.system = system
        self.mixed = system.h.matrix.multiply(system.chipping[None, :]).tocsr()
        self.basis = np.fft.ifft(self.mixed.T.toarray(), axis=0)

    def gram(self, winv):
        a = self.mixed @ np.fft.fft(winv[:, None] * self.basis, axis=0)
        return 0.5 * (a + a.conj().T)

    def min_norm(self, y, winv):
        # arg min sum |v_i|^2 / winv_i  s.t.  Phi v = y, via the normal
        # equations (Phi diag(winv) Phi*) z = y,  v = winv * (Phi* z).
        a = self.gram(winv)
        try:
            z = scipy.linalg.solve(a, y, assume_a="pos")
        except scipy.linalg.LinAlgError:
            z = np.linalg.lstsq(a, y, rcond=None)[0]
        return winv * self.system.apply_adjoint(z)


def irls_l1(system, y, config=None):
    """Approximate the minimum-l1 interpolator of the samples by IRLS.

    Each iteration solves a weighted minimum-norm problem with weights
    (|v_i|^2 + eps^2)^(-1/2) while the smoother eps decays toward its floor.
    Convergence means successive iterates differ by less than ``config.tol``
    in relative l2 and the estimate reproduces the samples to
    ``config.feasibility_tol``; non-convergence is reported in the result,
    not raised.
    """
    config = config or DEFAULT_CONFIG
    y = _check_samples(system, y)
    normal = _NormalEquations(system)
    ynorm = np.linalg.norm(y)

    objective_pairs = [] if config.track_objective else None
    v = normal.min_norm(y, np.ones(system.w))  # feasible l2 start
    eps = config.eps_initial
    iterations = 0
    converged = False
    for _ in range(config.max_iters):
        iterations += 1
        winv = np.sqrt(np.abs(v) ** 2 + eps**2)
        v_new = normal.min_norm(y, winv)
        if objective_pairs is not None:
            objective_pairs.append(
                (float(np.sum(np.abs(v) ** 2 / winv)), float(np.sum(np.abs(v_new) ** 2 / winv)))
            )
        diff = np.linalg.norm(v_new - v)
        v = v_new
        at_floor = eps <= config.eps_floor * (1.0 + 1e-12)
        eps = max(eps * config.eps_decay, config.eps_floor)
        if diff <= config.tol * max(1.0, np.linalg.norm(v)) and (at_floor or diff == 0.0):
            converged = True
            break

    telemetry = {"eps_final": eps}
    if objective_pairs is not None:
        telemetry["objective_pairs"] = objective_pairs
    result = _finish(system, v, y, iterations, converged, telemetry)
    if converged and result.residual_l2 > config.feasibility_tol * max(ynorm, 1e-300):
        result.converged = False
    return result


def l1_denoise(system, y, eta=None, config=None):
    """Noise-aware l1 minimization: least l1 norm within an l2 ball of radius eta.

    Solved as IRLS on the ridge-penalized subproblem, adjusting the penalty
    by bisection each iteration until the residual lands in
    [0.95 * eta, eta], which keeps every iterate feasible.  ``eta = 0``
    reduces exactly to :func:`irls_l1`.  Because the solution is only
    determined to O(eta) by the data, iterates count as converged once they
    are stable to 1e-4 * eta (or ``config.tol``, whichever is looser).
    """
    config = config or DEFAULT_CONFIG
    eta = config.eta if eta is None else float(eta)
    if eta < 0.0:
        raise ValueError("eta must be nonnegative")
    if eta == 0.0:
        return irls_l1(system, y, config)
    y = _check_samples(system, y)
    if np.linalg.norm(y) <= eta:
        # The zero vector is feasible and has minimal l1 norm.
        return _finish(system, np.zeros(system.w, dtype=complex), y, 0, True)

    normal = _NormalEquations(system)
    v = np.zeros(system.w, dtype=complex)
    eps = config.eps_initial
    iterations = 0
    converged = False
    for _ in range(config.max_iters):
        iterations += 1
        winv = np.sqrt(np.abs(v) ** 2 + eps**2)
        a = normal.gram(winv)
        lam, u = np.linalg.eigh(a)
        lam = np.maximum(lam, 0.0)
        yhat = u.conj().T @ y

        def residual_for(mu):
            return np.sqrt(np.sum((mu / (lam + mu)) ** 2 * np.abs(yhat) ** 2))

        # Bisect the ridge penalty until the subproblem residual lands in
        # [0.95 eta, eta]; driving the bracket all the way to the window's
        # upper edge keeps the iteration map deterministic, so the outer
        # IRLS loop can actually reach its fixed point.
        mu_hi = max(lam[-1], 1.0)
        while residual_for(mu_hi) < eta:
            mu_hi *= 10.0
        mu_lo = 0.0
        for _ in range(200):
            mu = 0.5 * (mu_lo + mu_hi)
            if residual_for(mu) > eta:
                mu_hi = mu
            else:
                mu_lo = mu
            if mu_hi - mu_lo <= 1e-12 * mu_hi:
                break
        mu = mu_lo if mu_lo > 0.0 else 0.5 * (mu_lo + mu_hi)
        z = u @ (yhat / (lam + mu))
        v_new = winv * system.apply_adjoint(z)
        diff = np.linalg.norm(v_new - v)
        v = v_new
        at_floor = eps <= config.eps_floor * (1.0 + 1e-12)
        eps = max(eps * config.eps_decay, config.eps_floor)
        stable = max(config.tol * max(1.0, np.linalg.norm(v)), 1e-4 * eta)
        if diff <= stable and at_floor:
            converged = True
            break

    result = _finish(system, v, y, iterations, converged, {"eps_final": eps})
    if converged and result.residual_l2 > eta * (1.0 + config.feasibility_tol):
        result.converged = False
    return result


def cosamp(system, y, k, config=None):
    """CoSaMP greedy pursuit for a K-sparse amplitude vector.

    Standard iteration: correlate the residual through the adjoint, merge the
    2K strongest bins with the current support, least-squares on the merged
    (at most 3K) support, prune back to K.  Halts on residual stagnation
    (``config.halt_window`` successive improvements below
    ``config.halt_improvement`` relative to ||y||) or ``config.max_iters``.
    """
    config = config or DEFAULT_CONFIG
    y = _check_samples(system, y)
    k = int(k)
    if not 1 <= k <= system.r // 2:
        raise ValueError(f"sparsity K={k} outside [1, R/2={system.r // 2}]")
    ynorm = np.linalg.norm(y)
    if ynorm == 0.0:
        return _finish(system, np.zeros(system.w, dtype=complex), y, 0, True)

    v = np.zeros(system.w, dtype=complex)
    residual = y.copy()
    rnorm = ynorm
    stagnant = 0
    iterations = 0
    history = [float(rnorm)]
    for _ in range(config.max_iters):
        iterations += 1
        proxy = system.apply_adjoint(residual)
        omega = np.argsort(-np.abs(proxy), kind="stable")[: 2 * k]
        merged = np.union1d(omega, np.nonzero(v)[0])
        phi_t = system.columns(merged)
        coef, *_ = np.linalg.lstsq(phi_t, y, rcond=None)
        keep = np.argsort(-np.abs(coef), kind="stable")[:k]
        v = np.zeros(system.w, dtype=complex)
        v[merged[keep]] = coef[keep]
        residual = y - system.apply(v)
        rnorm_new = np.linalg.norm(residual)
        history.append(float(rnorm_new))
        if rnorm - rnorm_new < config.halt_improvement * ynorm:
            stagnant += 1
        else:
            stagnant = 0
        rnorm = rnorm_new
        if rnorm <= config.feasibility_tol * ynorm or stagnant >= config.halt_window:
            break

    converged = rnorm <= config.feasibility_tol * ynorm
    return _finish(system, v, y, iterations, converged, {"residual_history": history})


def _oracle_cost(w, k_max):
    return sum(comb(w, k) * k**3 for k in range(1, k_max + 1))


def l0_oracle(system, y, k_max, config=None):
    """Exhaustively search for the sparsest amplitude vector explaining y.

    Tries every support of size 1..k_max in lexicographic order, solving a
    least-squares problem on each and accepting residuals below 1e-8.  The
    sparsest accepted support wins; ties break by smaller residual, then by
    lexicographic order.  Refuses instances whose enumeration cost exceeds
    ``config.oracle_budget``.
    """
    from itertools import combinations

    config = config or DEFAULT_CONFIG
    y = _check_samples(system, y)
    k_max = int(k_max)
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    cost = _oracle_cost(system.w, k_max)
    if cost > config.oracle_budget:
        raise BudgetExceededError(
            f"enumeration cost {cost:.3g} exceeds budget {config.oracle_budget:.3g}"
        )
    accept = 1e-8
    if np.linalg.norm(y) < accept:
        return _finish(
            system, np.zeros(system.w, dtype=complex), y, 0, True, {"k": 0, "n_accepted": 1}
        )

    phi = system.dense()
    searched = 0
    for k in range(1, k_max + 1):
        best = None
        n_accepted = 0
        for supp in combinations(range(system.w), k):
            searched += 1
            cols = np.asarray(supp)
            coef, *_ = np.linalg.lstsq(phi[:, cols], y, rcond=None)
            rnorm = np.linalg.norm(phi[:, cols] @ coef - y)
            if rnorm < accept:
                n_accepted += 1
                if best is None or rnorm < best[0]:
                    best = (rnorm, cols, coef)
        if best is not None:
            v = np.zeros(system.w, dtype=complex)
            v[best[1]] = best[2]
            return _finish(
                system,
                v,
                y,
                searched,
                True,
                {"k": k, "n_accepted": n_accepted, "supports_searched": searched},
            )
    return _finish(
        system,
        np.zeros(system.w, dtype=complex),
        y,
        searched,
        False,
        {"k": None, "n_accepted": 0, "supports_searched": searched},
    )
