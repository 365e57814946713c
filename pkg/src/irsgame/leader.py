"""IRS-operator pricing and the full leader/follower game loop.

At a fixed point of the follower's ADMM the consensus dual satisfies
||Lambda_s|| = r*delta on active modules, which turns the operator's revenue
into a closed-form function of the pull vectors

    x_s = c*phi_s - Lambda_s

taken from the follower's converged state: module s stays active iff
||x_s|| > r*delta (kappa_s = 1), and the revenue of price r is

    V(r) = sum_s kappa_s(r) * (-delta^2 r^2 + delta ||x_s|| r) / c,

a downward parabola on every fixed active set.  The best price therefore
lies at a vertex r = sum_{active} ||x_s|| / (2 delta m) of one of the at
most S prefix active sets (sorted by ||x_s||), restricted to vertices whose
induced active set reproduces themselves.  The Stackelberg loop alternates
follower best response and this price update until the revenue stalls.

Two reference schemes mirror the game interface: a uniformly random price
(follower still best-responds) and a direct-link-only scheme that switches
the surface off entirely.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelSet
from .core import (
    EPS_ACTIVE,
    BeamformingMatrix,
    PhaseProfile,
    block_norms,
    clamp_unit_disk,
    sum_rate,
    utility_follower,
    utility_leader,
)
from .follower import FollowerState, SolverOptions, maximize_sum_rate, solve_follower


@dataclass(frozen=True)
class GameOptions:
    """Leader-side knobs.

    r_init          : price posted in the first round.
    max_outer_iters : cap on price updates.
    v_rel_tol       : stop when the revenue's relative change drops below.
    baseline_r_range: (lo, hi) of the uniform draw used by the random-pricing
                      reference scheme.
    """

    r_init: float = 1.0
    max_outer_iters: int = 30
    v_rel_tol: float = 1e-3
    baseline_r_range: tuple[float, float] = (0.01, 2.0)

    def __post_init__(self):
        if self.r_init <= 0:
            raise ValueError("r_init must be > 0")
        if self.max_outer_iters < 1:
            raise ValueError("max_outer_iters must be >= 1")
        if self.v_rel_tol <= 0:
            raise ValueError("v_rel_tol must be > 0")
        lo, hi = self.baseline_r_range
        if not 0 < lo < hi:
            raise ValueError(f"baseline_r_range must satisfy 0 < lo < hi, got {(lo, hi)}")


def kappa(x_norms: np.ndarray, r_delta: float) -> np.ndarray:
    """Module-retention indicator: 1 iff ||x_s|| > r*delta (ties prune)."""
    return (np.asarray(x_norms) > r_delta).astype(int)


def leader_value(r: float, x_norms: np.ndarray, delta: float, c: float) -> float:
    """Revenue V(r) = sum_s kappa_s (-delta^2 r^2 + delta ||x_s|| r) / c."""
    x_norms = np.asarray(x_norms, dtype=float)
    k = kappa(x_norms, r * delta)
    return float(np.sum(k * (-(delta**2) * r**2 + delta * x_norms * r)) / c)


@dataclass(frozen=True)
class PriceSolution:
    """Best price for given pull norms; fallback marks the no-profit case."""

    r: float
    value: float
    active: np.ndarray
    fallback: bool = False


def optimal_price(x_norms: np.ndarray, delta: float, c: float) -> PriceSolution:
    """Maximize leader_value over r > 0 for fixed pull norms.

    Candidates are the parabola vertices of the prefix active sets in
    decreasing-norm order; a vertex counts only when the active set it
    induces is the one it was built from.  When no consistent profitable
    vertex exists (all norms zero, or pure threshold ties), the fallback
    price 0.5 * min(positive norms)/delta is returned flagged -- it keeps
    every positive block active; with no positive block at all the fallback
    is 1.0 (any price earns zero).
    """
    if delta <= 0 or c <= 0:
        raise ValueError("delta and c must be > 0")
    x_norms = np.asarray(x_norms, dtype=float)
    order = np.sort(x_norms)[::-1]
    best: PriceSolution | None = None
    cum = 0.0
    for m in range(1, len(order) + 1):
        cum += order[m - 1]
        if order[m - 1] <= 0.0:
            break
        r_m = cum / (2.0 * delta * m)
        act = x_norms > r_m * delta
        if act.sum() != m:
            continue
        if not np.isclose(x_norms[act].sum() / (2.0 * delta * m), r_m, rtol=1e-9):
            continue
        val = leader_value(r_m, x_norms, delta, c)
        if best is None or val > best.value:
            best = PriceSolution(r=r_m, value=val, active=act, fallback=False)
    if best is not None:
        return best

    positive = x_norms[x_norms > 0.0]
    if positive.size:
        r_fb = 0.5 * float(positive.min()) / delta
    else:
        r_fb = 1.0
    return PriceSolution(
        r=r_fb,
        value=leader_value(r_fb, x_norms, delta, c),
        active=x_norms > r_fb * delta,
        fallback=True,
    )


@dataclass(frozen=True)
class GameOutcome:
    """Result of one pricing interaction (game or reference scheme).

    Utilities come in both accounting conventions: relaxed bills
    r*delta*sum_s ||theta_s||, discrete bills r per active module.  Metrics
    are evaluated on phases_star, the group-sparse consensus profile
    projected onto the unit disk (pruned modules stay exactly zero).
    price_trace records one dict per leader round.  price_fallback is set
    when r_star did not come from a consistent vertex maximization: either
    no module was profitably active, or the price loop hit its iteration
    cap and returned the most profitable posted price instead.
    """

    r_star: float
    W_star: BeamformingMatrix
    phases_star: PhaseProfile
    follower_state: FollowerState
    U_relaxed: float
    U_discrete: float
    V_relaxed: float
    V_discrete: float
    sum_rate: float
    active_modules: int
    outer_iters: int
    inner_iters: int
    converged: bool
    price_fallback: bool = False
    price_trace: list = field(default_factory=list)


def _outcome_from_follower(
    channels: ChannelSet,
    r: float,
    W: BeamformingMatrix,
    state: FollowerState,
    delta: float,
    sigma2: float,
    outer_iters: int,
    inner_iters: int,
    converged: bool,
    price_fallback: bool = False,
    price_trace: list | None = None,
) -> GameOutcome:
    S, N = channels.dims.S, channels.dims.N
    phases = PhaseProfile(clamp_unit_disk(state.theta), S, N)
    active = int(np.sum(block_norms(phases.phi, N) > EPS_ACTIVE))
    return GameOutcome(
        r_star=r,
        W_star=W,
        phases_star=phases,
        follower_state=state,
        U_relaxed=utility_follower(channels, phases, W, r, delta, sigma2, N),
        U_discrete=utility_follower(
            channels, phases, W, r, delta, sigma2, N, discrete=True
        ),
        V_relaxed=utility_leader(r, phases, delta, N),
        V_discrete=utility_leader(r, phases, delta, N, discrete=True),
        sum_rate=sum_rate(channels, phases, W, sigma2),
        active_modules=active,
        outer_iters=outer_iters,
        inner_iters=inner_iters,
        converged=converged,
        price_fallback=price_fallback,
        price_trace=price_trace or [],
    )


def solve_game(
    channels: ChannelSet,
    delta: float,
    sigma2: float,
    p_max: float,
    solver_opts: SolverOptions | None = None,
    game_opts: GameOptions | None = None,
) -> GameOutcome:
    """Alternate follower best response and leader price update.

    On convergence the returned r_star maximizes the closed-form revenue for
    the pull norms of the final follower state, so it is the leader's exact
    best reply to the reported reflection profile, and that profile is (up
    to v_rel_tol) the follower's best response to it.

    When the iteration hits max_outer_iters instead (the price map can
     2-cycle when module profits sit on a pruning threshold), no mutually
    consistent pair exists among the iterates; the loop then returns the
    visited (posted price, best response) pair with the highest realized
    revenue r*delta*sum_s ||theta_s|| and flags price_fallback.  Such a pair
    keeps follower-side consistency: the returned profile is a genuine best
    response to the returned price.
    """
    if solver_opts is None:
        solver_opts = SolverOptions()
    if game_opts is None:
        game_opts = GameOptions()

    N = channels.dims.N
    r = game_opts.r_init
    prev_value = None
    converged = False
    inner_total = 0
    trace: list[dict] = []
    W_b = state = None
    sol = None
    best_realized = None  # (revenue, r_posted, W, state)

    for outer in range(1, game_opts.max_outer_iters + 1):
        W_b, _, state, f_trace = solve_follower(
            channels, r, delta, sigma2, p_max, solver_opts
        )
        inner_total += len(f_trace)
        realized = utility_leader(r, clamp_unit_disk(state.theta), delta, N)
        if best_realized is None or realized > best_realized[0]:
            best_realized = (realized, r, W_b, state)
        x_norms = block_norms(state.c * state.phi - state.lambda_dual, N)
        sol = optimal_price(x_norms, delta, state.c)
        trace.append(
            {
                "outer": outer,
                "r_posted": r,
                "r_next": sol.r,
                "value": sol.value,
                "realized": realized,
                "inner_iters": len(f_trace),
                "fallback": sol.fallback,
            }
        )
        if prev_value is not None:
            rel = abs(sol.value - prev_value) / max(abs(prev_value), 1e-12)
            if rel < game_opts.v_rel_tol:
                converged = True
                break
        prev_value = sol.value
        r = sol.r

    if converged:
        r_ret, W_ret, state_ret = sol.r, W_b, state
        fallback = sol.fallback
    else:
        _, r_ret, W_ret, state_ret = best_realized
        fallback = True
    return _outcome_from_follower(
        channels,
        r_ret,
        W_ret,
        state_ret,
        delta,
        sigma2,
        outer_iters=len(trace),
        inner_iters=inner_total,
        converged=converged,
        price_fallback=fallback,
        price_trace=trace,
    )


def baseline_random_pricing(
    channels: ChannelSet,
    delta: float,
    sigma2: float,
    p_max: float,
    seed,
    solver_opts: SolverOptions | None = None,
    game_opts: GameOptions | None = None,
) -> GameOutcome:
    """Reference scheme: one uniformly random price, follower best-responds."""
    if game_opts is None:
        game_opts = GameOptions()
    lo, hi = game_opts.baseline_r_range
    r = float(np.random.default_rng(seed).uniform(lo, hi))
    W_b, _, state, f_trace = solve_follower(
        channels, r, delta, sigma2, p_max, solver_opts
    )
    return _outcome_from_follower(
        channels,
        r,
        W_b,
        state,
        delta,
        sigma2,
        outer_iters=1,
        inner_iters=len(f_trace),
        converged=state.converged,
        price_trace=[{"outer": 1, "r_posted": r, "r_next": r}],
    )


def baseline_direct_only(
    channels: ChannelSet,
    delta: float,
    sigma2: float,
    p_max: float,
    solver_opts: SolverOptions | None = None,
) -> GameOutcome:
    """Reference scheme: surface off (phi = 0), transmit beamforming only.

    No module is rented, so the operator earns nothing and the follower
    utility equals the direct-link sum rate.  The price column reports 0.0
    to mean "no price posted".
    """
    S, N = channels.dims.S, channels.dims.N
    W_b, trace = maximize_sum_rate(channels, sigma2, p_max, solver_opts)
    K = channels.dims.K
    n = S * N
    state = FollowerState(
        alpha=np.zeros(K),
        beta=np.zeros(K, complex),
        epsilon=np.zeros(K, complex),
        phi=np.zeros(n, complex),
        theta=np.zeros(n, complex),
        lambda_dual=np.zeros(n, complex),
        mu=np.zeros(n),
        lambda0=0.0,
        c=(solver_opts or SolverOptions()).c,
        n_iter=len(trace),
        converged=True,
    )
    rate = sum_rate(channels, state.theta, W_b, sigma2)
    return GameOutcome(
        r_star=0.0,
        W_star=W_b,
        phases_star=PhaseProfile.zeros(S, N),
        follower_state=state,
        U_relaxed=rate,
        U_discrete=rate,
        V_relaxed=0.0,
        V_discrete=0.0,
        sum_rate=rate,
        active_modules=0,
        outer_iters=1,
        inner_iters=len(trace),
        converged=True,
        price_trace=[{"outer": 1, "r_posted": 0.0, "r_next": 0.0}],
    )
