"""scikit-learn style wrappers around the solvers.

Both estimators follow the usual optimizer-estimator pattern: __init__
stores hyperparameters verbatim, fit(X) runs a solver on a ChannelSet and
exposes results as trailing-underscore attributes, get_params/set_params
and cloning work out of the box.  X is a ChannelSet (or the tuple form
accepted by validation.check_channels), not a 2-D feature matrix, so the
generic array-input estimator checks do not apply.

Powers are in watts here, matching the functional API; the CLI layer is
where dBm lives.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator

from .channel import dbm_to_watts
from .follower import SolverOptions, solve_follower
from .leader import GameOptions, solve_game
from .validation import check_channels, check_positive


class FollowerSolver(BaseEstimator):
    """Best response of the base station to a fixed module price.

    Parameters mirror SolverOptions plus the problem constants.  After fit:

    W_         : BeamformingMatrix, the transmit solution
    phases_    : PhaseProfile, magnitude-feasible reflection iterate
    state_     : FollowerState with every auxiliary variable
    trace_     : per-sweep records (objective, power, consensus, ...)
    n_iter_    : number of sweeps run
    objective_ : final relaxed utility
    """

    def __init__(
        self,
        price=1.0,
        delta=0.1,
        noise_power=dbm_to_watts(-100.0),
        p_max=dbm_to_watts(0.0),
        max_inner_iters=500,
        obj_rel_tol=1e-5,
        consensus_tol=1e-3,
        c=1.0,
        power_mode="bisection",
        power_tol=1e-8,
        init_seed=0,
    ):
        self.price = price
        self.delta = delta
        self.noise_power = noise_power
        self.p_max = p_max
        self.max_inner_iters = max_inner_iters
        self.obj_rel_tol = obj_rel_tol
        self.consensus_tol = consensus_tol
        self.c = c
        self.power_mode = power_mode
        self.power_tol = power_tol
        self.init_seed = init_seed

    def _solver_options(self) -> SolverOptions:
        return SolverOptions(
            max_inner_iters=self.max_inner_iters,
            obj_rel_tol=self.obj_rel_tol,
            consensus_tol=self.consensus_tol,
            c=self.c,
            power_mode=self.power_mode,
            power_tol=self.power_tol,
            init_seed=self.init_seed,
        )

    def fit(self, X, y=None):
        channels = check_channels(X)
        if self.price < 0:
            raise ValueError(f"price must be >= 0, got {self.price}")
        check_positive("delta", self.delta)
        check_positive("noise_power", self.noise_power)
        check_positive("p_max", self.p_max)
        W, phases, state, trace = solve_follower(
            channels,
            self.price,
            self.delta,
            self.noise_power,
            self.p_max,
            self._solver_options(),
        )
        self.W_ = W
        self.phases_ = phases
        self.state_ = state
        self.trace_ = trace
        self.n_iter_ = state.n_iter
        self.objective_ = trace[-1]["objective"]
        return self

    def score(self, X=None, y=None):
        """Final relaxed utility of the fitted solution."""
        if not hasattr(self, "objective_"):
            raise AttributeError("FollowerSolver is not fitted yet; call fit first")
        return self.objective_


class StackelbergGame(BaseEstimator):
    """Full leader/follower pricing interaction.

    After fit:

    outcome_     : GameOutcome with every reported metric
    r_           : equilibrium price
    W_, phases_  : follower solution at the equilibrium
    n_iter_      : leader rounds run
    inner_iters_ : total follower sweeps across rounds
    """

    def __init__(
        self,
        delta=0.1,
        noise_power=dbm_to_watts(-100.0),
        p_max=dbm_to_watts(0.0),
        r_init=1.0,
        max_outer_iters=30,
        v_rel_tol=1e-3,
        max_inner_iters=500,
        obj_rel_tol=1e-5,
        consensus_tol=1e-3,
        c=1.0,
        power_mode="bisection",
        power_tol=1e-8,
        init_seed=0,
    ):
        self.delta = delta
        self.noise_power = noise_power
        self.p_max = p_max
        self.r_init = r_init
        self.max_outer_iters = max_outer_iters
        self.v_rel_tol = v_rel_tol
        self.max_inner_iters = max_inner_iters
        self.obj_rel_tol = obj_rel_tol
        self.consensus_tol = consensus_tol
        self.c = c
        self.power_mode = power_mode
        self.power_tol = power_tol
        self.init_seed = init_seed

    def fit(self, X, y=None):
        channels = check_channels(X)
        check_positive("delta", self.delta)
        check_positive("noise_power", self.noise_power)
        check_positive("p_max", self.p_max)
        solver_opts = SolverOptions(
            max_inner_iters=self.max_inner_iters,
            obj_rel_tol=self.obj_rel_tol,
            consensus_tol=self.consensus_tol,
            c=self.c,
            power_mode=self.power_mode,
            power_tol=self.power_tol,
            init_seed=self.init_seed,
        )
        game_opts = GameOptions(
            r_init=self.r_init,
            max_outer_iters=self.max_outer_iters,
            v_rel_tol=self.v_rel_tol,
        )
        outcome = solve_game(
            channels, self.delta, self.noise_power, self.p_max, solver_opts, game_opts
        )
        self.outcome_ = outcome
        self.r_ = outcome.r_star
        self.W_ = outcome.W_star
        self.phases_ = outcome.phases_star
        self.n_iter_ = outcome.outer_iters
        self.inner_iters_ = outcome.inner_iters
        return self

    def score(self, X=None, y=None):
        """Relaxed operator revenue at the fitted equilibrium."""
        if not hasattr(self, "outcome_"):
            raise AttributeError("StackelbergGame is not fitted yet; call fit first")
        return self.outcome_.V_relaxed
