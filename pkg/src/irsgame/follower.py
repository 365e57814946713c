"""Base-station best response: joint beamforming and module selection.

For a posted per-module price r the base station solves

    max_{W, phi}  sum_k log2(1 + SINR_k) - r*delta*sum_s ||phi_s||_2
    s.t.          sum_k ||w_k||^2 <= p_max,    |phi_i| <= 1,

a group-sparse relaxation of paying r per switched-on module.  The solver
is a block-coordinate scheme built from three standard moves:

1. Lagrangian dual transform: auxiliary alpha_k detaches the log from the
   SINR.  At the per-iterate optimum alpha_k = SINR_k, the surrogate

       sum_k [log2(1+alpha_k) - alpha_k + alphat_k*gamma_k/(1+gamma_k)]
           - r*delta*sum_s ||phi_s||_2,          alphat_k = 1 + alpha_k,

   equals the true objective exactly.
2. Quadratic transforms: the ratio gamma/(1+gamma) is linearized twice,
   with auxiliary beta_k over W (transmit side) and epsilon_k over phi
   (reflect side).  Each transform is tight at its closed-form optimum and
   makes the corresponding block update a regularized least squares.
3. ADMM splitting theta = phi: the group penalty and the per-element
   magnitude constraint are separated, giving a blockwise shrinkage for
   theta (modules whose pull is below r*delta are pruned to exactly zero)
   and a linear solve for phi.

Per-block prox and dual updates touch disjoint slices and may safely run
concurrently; here they are vectorized, which is the single-core analogue.

Notation used throughout: for user k and beamformer j,

    a_jk = diag(conj(g_k)) H w_j   (reflected signal seen through phi)
    b_jk = h_dk^H w_j              (direct signal)
    h_k^H w_j = b_jk + phi^H a_jk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .channel import ChannelSet
from .core import (
    BeamformingMatrix,
    PhaseProfile,
    block_norms,
    channel_gram,
    clamp_unit_disk,
    combined_channel,
    phase_vector,
    sinr,
    utility_follower,
)

POWER_MODES = ("bisection", "oneshot")


@dataclass(frozen=True)
class SolverOptions:
    """Knobs of the best-response solver.

    max_inner_iters : hard cap on block sweeps.
    obj_rel_tol     : stop when the surrogate objective's relative change
                      falls below this (and consensus holds).
    consensus_tol   : required max_i |theta_i - phi_i| at convergence.
    c               : ADMM penalty weight (fixed, not adapted).
    power_mode      : 'bisection' solves the power multiplier exactly;
                      'oneshot' uses the one-shot multiplier formula with
                      a scaling projection as backstop.
    power_tol       : relative power accuracy of the bisection.
    init_seed       : seed for the random unit-modulus phase init, so runs
                      are reproducible by default.
    """

    max_inner_iters: int = 500
    obj_rel_tol: float = 1e-5
    consensus_tol: float = 1e-3
    c: float = 1.0
    power_mode: str = "bisection"
    power_tol: float = 1e-8
    init_seed: int = 0

    def __post_init__(self):
        if self.max_inner_iters < 1:
            raise ValueError("max_inner_iters must be >= 1")
        if min(self.obj_rel_tol, self.consensus_tol, self.power_tol) <= 0:
            raise ValueError("tolerances must be > 0")
        if self.c <= 0:
            raise ValueError("ADMM penalty c must be > 0")
        if self.power_mode not in POWER_MODES:
            raise ValueError(f"power_mode must be one of {POWER_MODES}")


@dataclass(frozen=True)
class FollowerState:
    """All auxiliaries of the best-response iteration at return time.

    alpha, beta, epsilon are the transform variables (length K); phi is the
    magnitude-constrained reflection iterate, theta the group-sparse ADMM
    copy (pruned blocks are exactly zero), lambda_dual the consensus dual,
    mu the per-element magnitude multipliers, lambda0 the power multiplier,
    c the ADMM penalty the run used.  At declared convergence
    max_i |theta_i - phi_i| < consensus_tol.
    """

    alpha: np.ndarray
    beta: np.ndarray
    epsilon: np.ndarray
    phi: np.ndarray
    theta: np.ndarray
    lambda_dual: np.ndarray
    mu: np.ndarray
    lambda0: float
    c: float
    n_iter: int = 0
    converged: bool = False


# ---------------------------------------------------------------------------
# elementary updates (one closed-form block move each)
# ---------------------------------------------------------------------------


def update_alpha(gamma: np.ndarray) -> np.ndarray:
    """Dual-transform optimum: alpha_k = SINR_k."""
    return np.asarray(gamma, dtype=float).copy()


def update_beta(
    channels: ChannelSet, phases, W, alpha: np.ndarray, sigma2: float
) -> np.ndarray:
    """Transmit-side quadratic-transform optimum.

    beta_k = sqrt(alphat_k) h_k^H w_k / (sum_j |h_k^H w_j|^2 + sigma2).
    """
    gram = channel_gram(channels, phases, W)
    den = np.sum(np.abs(gram) ** 2, axis=1) + sigma2
    return np.sqrt(1.0 + alpha) * np.diag(gram) / den


def qt_w_value(
    channels: ChannelSet, phases, W, alpha: np.ndarray, beta: np.ndarray, sigma2: float
) -> float:
    """Transmit-side surrogate value.

    sum_k 2 sqrt(alphat_k) Re{conj(beta_k) h_k^H w_k}
        - sum_k |beta_k|^2 (sum_j |h_k^H w_j|^2 + sigma2).
    Equals sum_k alphat_k gamma_k/(1+gamma_k) at beta = update_beta(...).
    """
    gram = channel_gram(channels, phases, W)
    lin = 2.0 * np.sum(np.sqrt(1.0 + alpha) * np.real(np.conj(beta) * np.diag(gram)))
    quad = np.sum(np.abs(beta) ** 2 * (np.sum(np.abs(gram) ** 2, axis=1) + sigma2))
    return float(lin - quad)


def sinr_fraction_value(
    channels: ChannelSet, phases, W, alpha: np.ndarray, sigma2: float
) -> float:
    """sum_k alphat_k gamma_k / (1 + gamma_k) at the current (W, phi)."""
    g = sinr(channels, phases, W, sigma2)
    return float(np.sum((1.0 + alpha) * g / (1.0 + g)))


def dual_transform_value(
    channels: ChannelSet,
    phases,
    W,
    alpha: np.ndarray,
    r: float,
    delta: float,
    sigma2: float,
    block_size: int,
) -> float:
    """Full surrogate objective of the outer transform.

    sum_k [log2(1+alpha_k) - alpha_k] + sum_k alphat_k gamma_k/(1+gamma_k)
        - r*delta*sum_s ||phi_s||_2.
    At alpha_k = gamma_k this equals the true relaxed utility.
    """
    phi = phase_vector(phases)
    fixed = float(np.sum(np.log2(1.0 + alpha) - alpha))
    penalty = r * delta * float(np.sum(block_norms(phi, block_size)))
    return fixed + sinr_fraction_value(channels, phases, W, alpha, sigma2) - penalty


def update_w(
    channels: ChannelSet,
    phases,
    alpha: np.ndarray,
    beta: np.ndarray,
    lambda0: float,
) -> np.ndarray:
    """Regularized least-squares beamformers for fixed multiplier lambda0.

    w_k = sqrt(alphat_k) beta_k (lambda0 I + sum_j |beta_j|^2 h_j h_j^H)^-1 h_k.
    Raises scipy/numpy LinAlgError when the system matrix is singular
    (lambda0 = 0 with rank-deficient channels); callers wanting the
    limiting minimum-norm solution should use the bisection power step.
    """
    h = combined_channel(channels, phases)
    M = h.shape[1]
    w2 = np.abs(beta) ** 2
    mat = (h.T * w2) @ np.conj(h) + lambda0 * np.eye(M)
    try:
        cf = scipy.linalg.cho_factor(mat)
        sol = scipy.linalg.cho_solve(cf, h.T)  # columns: mat^-1 h_k
    except scipy.linalg.LinAlgError as err:
        raise np.linalg.LinAlgError(
            f"singular beamforming system (lambda0={lambda0:.3g}); "
            "the power step with mode='bisection' handles this limit"
        ) from err
    return (np.sqrt(1.0 + alpha) * beta)[:, None] * sol.T


def transmit_power(W) -> float:
    """sum_k ||w_k||^2."""
    Wm = W.W if isinstance(W, BeamformingMatrix) else np.asarray(W)
    return float(np.sum(np.abs(Wm) ** 2))


def enforce_power(
    W: np.ndarray,
    p_max: float,
    mode: str = "bisection",
    w_of_lambda=None,
    power_tol: float = 1e-8,
) -> tuple[np.ndarray, float]:
    """Impose the transmit budget, returning (W, lambda0).

    mode='oneshot': lambda0 = max(0, p_max - sum_k ||w_k||^2) evaluated
    on the given W, then a scaling projection if the budget is still
    violated.  mode='bisection' needs w_of_lambda, a callable mapping a
    candidate multiplier to the beamformers it induces; the multiplier is
    bisected until the power matches p_max within power_tol (relative) or
    the budget is slack at lambda0 = 0.
    """
    if mode == "oneshot":
        p = transmit_power(W)
        lambda0 = max(0.0, p_max - p)
        if p > p_max:
            W = W * np.sqrt(p_max / p)
        return W, lambda0
    if mode != "bisection":
        raise ValueError(f"power mode must be one of {POWER_MODES}, got {mode!r}")
    if w_of_lambda is None:
        raise ValueError("bisection mode needs w_of_lambda(lambda0) -> W")

    try:
        W0 = w_of_lambda(0.0)
    except np.linalg.LinAlgError:
        W0 = None  # singular at the endpoint: treat the budget as binding
    if W0 is not None and transmit_power(W0) <= p_max:
        return W0, 0.0
    hi = 1.0
    for _ in range(200):
        if transmit_power(w_of_lambda(hi)) <= p_max:
            break
        hi *= 4.0
    lo = 0.0
    lam = hi
    for _ in range(400):
        lam = 0.5 * (lo + hi)
        Wl = w_of_lambda(lam)
        p = transmit_power(Wl)
        if abs(p - p_max) <= power_tol * p_max:
            return Wl, lam
        if p > p_max:
            lo = lam
        else:
            hi = lam
    return w_of_lambda(lam), lam


def _power_step(h, alpha, beta, p_max, mode, power_tol, W_prev):
    """One beamforming update with the budget enforced.

    Bisection mode diagonalizes R = sum_j |beta_j|^2 h_j h_j^H once, so both
    the power curve p(lambda0) and W(lambda0) are closed-form in the
    eigenbasis; the lambda0 = 0 endpoint is the minimum-norm limit (directions
    outside range(R) dropped), which always has finite power.
    """
    atb = np.sqrt(1.0 + alpha) * beta
    w2 = np.abs(beta) ** 2
    M = h.shape[1]

    if mode == "oneshot":
        lambda0 = max(0.0, p_max - transmit_power(W_prev))
        mat = (h.T * w2) @ np.conj(h) + lambda0 * np.eye(M)
        sol = np.linalg.solve(mat, h.T)
        W = atb[:, None] * sol.T
        p = transmit_power(W)
        if p > p_max:
            W = W * np.sqrt(p_max / p)
        return W, lambda0

    if not np.any(w2 > 0.0):
        return np.zeros_like(W_prev), 0.0

    R = (h.T * w2) @ np.conj(h)
    d, U = np.linalg.eigh(R)
    d = np.maximum(d, 0.0)
    HU = np.conj(U).T @ h.T  # column k: U^H h_k
    coef = np.abs(HU) ** 2 * (np.abs(atb) ** 2)[None, :]
    pcol = coef.sum(axis=1)  # p(lam) = sum_m pcol_m/(lam+d_m)^2
    # directions with (numerically) zero eigenvalue carry only rounding dust
    # for users with beta_k != 0; drop them at the lam -> 0 endpoint
    zero_dir = d <= d.max() * 1e-12

    def w_at(lam: float) -> np.ndarray:
        inv = np.zeros_like(d)
        keep = ~zero_dir if lam == 0.0 else slice(None)
        inv[keep] = 1.0 / (lam + d[keep])
        return atb[:, None] * (U @ (inv[:, None] * HU)).T

    def p_at(lam: float) -> float:
        if lam == 0.0:
            return float(np.sum(pcol[~zero_dir] / d[~zero_dir] ** 2))
        return float(np.sum(pcol / (lam + d) ** 2))

    if p_at(0.0) <= p_max:
        return w_at(0.0), 0.0
    hi = 1.0
    for _ in range(200):
        if p_at(hi) <= p_max:
            break
        hi *= 4.0
    lo, lam = 0.0, hi
    for _ in range(400):
        lam = 0.5 * (lo + hi)
        p = p_at(lam)
        if abs(p - p_max) <= power_tol * p_max:
            break
        if p > p_max:
            lo = lam
        else:
            hi = lam
    return w_at(lam), lam


def reflect_terms(channels: ChannelSet, W) -> tuple[np.ndarray, np.ndarray]:
    """The (a, b) decomposition of every h_k^H w_j.

    Returns A of shape (K, S*N, K) with A[k, :, j] = a_jk and B of shape
    (K, K) with B[k, j] = b_jk, so h_k^H w_j = B[k, j] + phi^H A[k, :, j].
    """
    Wm = W.W if isinstance(W, BeamformingMatrix) else np.asarray(W)
    HW = channels.H_irs @ Wm.T  # column j: H w_j
    A = np.conj(channels.g_irs)[:, :, None] * HW[None, :, :]
    B = np.conj(channels.h_direct) @ Wm.T
    return A, B


def _received_terms(A, B, phi) -> np.ndarray:
    """F[k, j] = b_jk + phi^H a_jk = h_k^H w_j."""
    return B + np.einsum("i,kij->kj", np.conj(phi), A)


def update_epsilon(
    channels: ChannelSet, phases, W, alpha: np.ndarray, sigma2: float
) -> np.ndarray:
    """Reflect-side quadratic-transform optimum.

    eps_k = sqrt(alphat_k)(b_kk + phi^H a_kk)
            / (sum_j |b_jk + phi^H a_jk|^2 + sigma2).
    """
    A, B = reflect_terms(channels, W)
    return _epsilon_from_terms(A, B, phase_vector(phases), alpha, sigma2)


def _epsilon_from_terms(A, B, phi, alpha, sigma2) -> np.ndarray:
    F = _received_terms(A, B, phi)
    den = np.sum(np.abs(F) ** 2, axis=1) + sigma2
    return np.sqrt(1.0 + alpha) * np.diag(F) / den


def qt_phi_value(
    channels: ChannelSet,
    phases,
    W,
    alpha: np.ndarray,
    epsilon: np.ndarray,
    sigma2: float,
) -> float:
    """Reflect-side surrogate value (without the pricing penalty).

    sum_k 2 sqrt(alphat_k) Re{conj(eps_k)(b_kk + phi^H a_kk)}
        - sum_k |eps_k|^2 (sum_j |b_jk + phi^H a_jk|^2 + sigma2).
    Equals sum_k alphat_k gamma_k/(1+gamma_k) at eps = update_epsilon(...).
    """
    A, B = reflect_terms(channels, W)
    F = _received_terms(A, B, phase_vector(phases))
    lin = 2.0 * np.sum(np.sqrt(1.0 + alpha) * np.real(np.conj(epsilon) * np.diag(F)))
    quad = np.sum(np.abs(epsilon) ** 2 * (np.sum(np.abs(F) ** 2, axis=1) + sigma2))
    return float(lin - quad)


def update_phi(
    channels: ChannelSet,
    W,
    alpha: np.ndarray,
    epsilon: np.ndarray,
    theta: np.ndarray,
    lambda_dual: np.ndarray,
    mu: np.ndarray,
    c: float,
) -> np.ndarray:
    """Unconstrained maximizer of the phi block of the augmented Lagrangian.

    phi = Q^-1 v with
      Q = 2 sum_k |eps_k|^2 sum_j a_jk a_jk^H + 2 diag(mu) + c I
      v = 2 sum_k sqrt(alphat_k) conj(eps_k) a_kk + Lambda + c theta
          - 2 sum_k |eps_k|^2 sum_j conj(b_jk) a_jk.
    Q is Hermitian positive definite for c > 0.
    """
    A, B = reflect_terms(channels, W)
    return _phi_from_terms(A, B, alpha, epsilon, theta, lambda_dual, mu, c)


def _phi_from_terms(A, B, alpha, epsilon, theta, lambda_dual, mu, c) -> np.ndarray:
    n = A.shape[1]
    w2 = np.abs(epsilon) ** 2
    Q = 2.0 * np.einsum("k,kaj,kbj->ab", w2, A, np.conj(A), optimize=True)
    Q[np.diag_indices(n)] += 2.0 * mu + c
    K = alpha.shape[0]
    A_diag = A[np.arange(K), :, np.arange(K)]  # rows: a_kk
    signal = (np.sqrt(1.0 + alpha) * np.conj(epsilon)) @ A_diag
    interf = np.einsum("k,kij,kj->i", w2, A, np.conj(B), optimize=True)
    v = 2.0 * signal + lambda_dual + c * theta - 2.0 * interf
    return np.linalg.solve(Q, v)


def update_mu(phi: np.ndarray) -> np.ndarray:
    """Magnitude multipliers mu_i = max(0, 1 - |phi_i|^2)."""
    return np.maximum(0.0, 1.0 - np.abs(phi) ** 2)


def clamp_phases(phi: np.ndarray) -> np.ndarray:
    """Project entries with |phi_i| > 1 onto the unit circle, keeping phase."""
    return clamp_unit_disk(phi)


def prox_group(x_block: np.ndarray, r_delta: float, c: float) -> np.ndarray:
    """Blockwise shrinkage: argmax_theta -r_delta*||theta|| - (c/2)||theta - x/c||^2.

    Zero when ||x|| <= r_delta (ties prune), else x scaled by
    (||x|| - r_delta)/(c ||x||).
    """
    nrm = float(np.linalg.norm(x_block))
    if nrm <= r_delta:
        return np.zeros_like(x_block)
    return ((nrm - r_delta) / (c * nrm)) * x_block


def prox_blocks(x: np.ndarray, r_delta: float, c: float, block_size: int) -> np.ndarray:
    """prox_group applied to every block of x (independent, vectorized)."""
    xb = x.reshape(-1, block_size)
    norms = np.linalg.norm(xb, axis=1)
    scale = np.zeros_like(norms)
    keep = norms > r_delta
    scale[keep] = (norms[keep] - r_delta) / (c * norms[keep])
    return (xb * scale[:, None]).reshape(-1)


def update_lambda_dual(
    lambda_dual: np.ndarray, theta: np.ndarray, phi: np.ndarray, c: float
) -> np.ndarray:
    """Consensus dual ascent: Lambda + c (theta - phi)."""
    return lambda_dual + c * (theta - phi)


# ---------------------------------------------------------------------------
# full best-response solve
# ---------------------------------------------------------------------------


def _initial_beamformers(channels: ChannelSet, phi0, p_max: float) -> np.ndarray:
    """MRT toward the direct channels, power split evenly.

    Users with a zero direct link aim at their combined channel instead: a
    zero beamformer is an absorbing state of the beta/W updates, so the init
    must be nonzero whenever the user is reachable at all.
    """
    K = channels.dims.K
    target = channels.h_direct.copy()
    dead = np.linalg.norm(target, axis=1) == 0.0
    if np.any(dead):
        target[dead] = combined_channel(channels, phi0)[dead]
    norms = np.linalg.norm(target, axis=1)
    W = np.zeros_like(target)
    ok = norms > 0.0
    W[ok] = np.sqrt(p_max / K) * target[ok] / norms[ok, None]
    return W


def _zero_state(channels: ChannelSet, c: float) -> FollowerState:
    K = channels.dims.K
    n = channels.dims.S * channels.dims.N
    zc = np.zeros(n, complex)
    return FollowerState(
        alpha=np.zeros(K),
        beta=np.zeros(K, complex),
        epsilon=np.zeros(K, complex),
        phi=zc,
        theta=zc.copy(),
        lambda_dual=zc.copy(),
        mu=np.zeros(n),
        lambda0=0.0,
        c=c,
        n_iter=1,
        converged=True,
    )


def solve_follower(
    channels: ChannelSet,
    r: float,
    delta: float,
    sigma2: float,
    p_max: float,
    opts: SolverOptions | None = None,
) -> tuple[BeamformingMatrix, PhaseProfile, FollowerState, list[dict]]:
    """Best response of the base station to price r.

    Returns (beamformers, phases, state, trace).  The phases returned are
    the magnitude-feasible iterate phi; the group-sparse consensus copy
    (exactly zero on pruned modules) is state.theta.  trace is a list of
    per-sweep records with keys iteration, objective, power, consensus,
    active_blocks, surrogate_before, surrogate_after; 'objective' is the surrogate at
    alpha = SINR, i.e. the true relaxed utility of the current iterate, and
    the surrogate pair brackets the beamformer update at fixed reflection (the
    transmit-side surrogate value before/after, used to check monotone
    ascent).
    """
    if opts is None:
        opts = SolverOptions()
    if r < 0.0:
        raise ValueError(f"price must be >= 0, got {r}")
    if delta <= 0.0 or sigma2 <= 0.0 or p_max <= 0.0:
        raise ValueError("delta, sigma2 and p_max must all be > 0")
    M, K, S, N = channels.dims
    n = S * N

    if (
        not np.any(channels.h_direct)
        and not np.any(channels.H_irs)
        and not np.any(channels.g_irs)
    ):
        # fully dead channels: the objective is identically the penalty, so
        # the optimum is W = 0, phi = theta = 0; skip the iteration entirely
        state = _zero_state(channels, opts.c)
        trace = [
            {
                "iteration": 1,
                "objective": 0.0,
                "power": 0.0,
                "consensus": 0.0,
                "active_blocks": 0,
                "surrogate_before": 0.0,
                "surrogate_after": 0.0,
            }
        ]
        return (
            BeamformingMatrix(np.zeros((K, M), complex), p_max),
            PhaseProfile(state.phi, S, N),
            state,
            trace,
        )

    rng = np.random.default_rng(opts.init_seed)
    phi = np.exp(2j * np.pi * rng.random(n))
    theta = phi.copy()
    lam = np.zeros(n, complex)
    mu = np.zeros(n)
    W = _initial_beamformers(channels, phi, p_max)
    lambda0 = 0.0
    r_delta = r * delta

    trace: list[dict] = []
    prev_obj = None
    converged = False
    alpha = np.zeros(K)
    beta = np.zeros(K, complex)
    epsilon = np.zeros(K, complex)

    for it in range(1, opts.max_inner_iters + 1):
        gamma = sinr(channels, phi, W, sigma2)
        alpha = update_alpha(gamma)
        beta = update_beta(channels, phi, W, alpha, sigma2)

        surrogate_before = sinr_fraction_value(channels, phi, W, alpha, sigma2)
        h = combined_channel(channels, phi)
        W, lambda0 = _power_step(
            h, alpha, beta, p_max, opts.power_mode, opts.power_tol, W
        )
        surrogate_after = sinr_fraction_value(channels, phi, W, alpha, sigma2)

        A, B = reflect_terms(channels, W)
        epsilon = _epsilon_from_terms(A, B, phi, alpha, sigma2)
        phi = _phi_from_terms(A, B, alpha, epsilon, theta, lam, mu, opts.c)
        mu = update_mu(phi)
        phi = clamp_phases(phi)

        theta = prox_blocks(opts.c * phi - lam, r_delta, opts.c, N)
        lam = update_lambda_dual(lam, theta, phi, opts.c)

        obj = utility_follower(channels, phi, W, r, delta, sigma2, N)
        consensus = float(np.max(np.abs(theta - phi)))
        trace.append(
            {
                "iteration": it,
                "objective": obj,
                "power": transmit_power(W),
                "consensus": consensus,
                "active_blocks": int(np.sum(block_norms(theta, N) > 0.0)),
                "surrogate_before": surrogate_before,
                "surrogate_after": surrogate_after,
            }
        )
        if prev_obj is not None:
            rel = abs(obj - prev_obj) / max(abs(prev_obj), 1e-12)
            if rel < opts.obj_rel_tol and consensus < opts.consensus_tol:
                converged = True
                break
        prev_obj = obj

    state = FollowerState(
        alpha=alpha,
        beta=beta,
        epsilon=epsilon,
        phi=phi,
        theta=theta,
        lambda_dual=lam,
        mu=mu,
        lambda0=lambda0,
        c=opts.c,
        n_iter=len(trace),
        converged=converged,
    )
    return (
        BeamformingMatrix(W, p_max),
        PhaseProfile(phi, S, N),
        state,
        trace,
    )


def maximize_sum_rate(
    channels: ChannelSet,
    sigma2: float,
    p_max: float,
    opts: SolverOptions | None = None,
) -> tuple[BeamformingMatrix, list[dict]]:
    """Transmit-only optimization with the surface switched off (phi = 0).

    Runs the alpha/beta/W sweep on the direct links until the sum rate
    stalls.  Used by the direct-link baseline.
    """
    if opts is None:
        opts = SolverOptions()
    if sigma2 <= 0.0 or p_max <= 0.0:
        raise ValueError("sigma2 and p_max must be > 0")
    M, K, S, N = channels.dims
    phi0 = np.zeros(S * N, complex)

    if not np.any(channels.h_direct):
        return (
            BeamformingMatrix(np.zeros((K, M), complex), p_max),
            [{"iteration": 1, "objective": 0.0, "power": 0.0}],
        )

    W = _initial_beamformers(channels, phi0, p_max)
    h = channels.h_direct  # combined channel at phi = 0
    trace: list[dict] = []
    prev = None
    for it in range(1, opts.max_inner_iters + 1):
        gamma = sinr(channels, phi0, W, sigma2)
        alpha = update_alpha(gamma)
        beta = update_beta(channels, phi0, W, alpha, sigma2)
        W, _ = _power_step(h, alpha, beta, p_max, opts.power_mode, opts.power_tol, W)
        rate = float(np.sum(np.log2(1.0 + sinr(channels, phi0, W, sigma2))))
        trace.append({"iteration": it, "objective": rate, "power": transmit_power(W)})
        if prev is not None and abs(rate - prev) / max(abs(prev), 1e-12) < opts.obj_rel_tol:
            break
        prev = rate
    return BeamformingMatrix(W, p_max), trace
