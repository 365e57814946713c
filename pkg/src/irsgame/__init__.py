"""Stackelberg module pricing for IRS-aided downlink beamforming.

An IRS operator (leader) prices reflection modules; the base station
(follower) answers with joint transmit beamforming and a group-sparse
choice of which modules to rent.  The package provides the channel model,
the follower's ADMM/fractional-programming best response, the leader's
closed-form pricing, scikit-learn style estimator wrappers and a
Monte-Carlo experiment CLI.
"""

from .channel import (
    ChannelSet,
    Dims,
    FadingParams,
    Geometry,
    dbm_to_watts,
    extract_block,
    pathloss_db,
    sample_instance,
    stack_blocks,
)
from .core import (
    EPS_ACTIVE,
    BeamformingMatrix,
    PhaseProfile,
    active_count,
    block_norms,
    clamp_unit_disk,
    combined_channel,
    sinr,
    sum_rate,
    utility_follower,
    utility_leader,
)
from .estimators import FollowerSolver, StackelbergGame
from .experiment import (
    CSV_COLUMNS,
    SCHEMES,
    ExperimentConfig,
    default_config,
    run_experiment,
    run_trial,
    validate_config,
)
from .follower import (
    FollowerState,
    SolverOptions,
    enforce_power,
    prox_group,
    solve_follower,
    update_alpha,
    update_beta,
    update_epsilon,
    update_lambda_dual,
    update_mu,
    update_phi,
    update_w,
)
from .leader import (
    GameOptions,
    GameOutcome,
    PriceSolution,
    baseline_direct_only,
    baseline_random_pricing,
    kappa,
    leader_value,
    optimal_price,
    solve_game,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelSet",
    "Dims",
    "FadingParams",
    "Geometry",
    "dbm_to_watts",
    "extract_block",
    "pathloss_db",
    "sample_instance",
    "stack_blocks",
    "EPS_ACTIVE",
    "BeamformingMatrix",
    "PhaseProfile",
    "active_count",
    "block_norms",
    "clamp_unit_disk",
    "combined_channel",
    "sinr",
    "sum_rate",
    "utility_follower",
    "utility_leader",
    "FollowerSolver",
    "StackelbergGame",
    "CSV_COLUMNS",
    "SCHEMES",
    "ExperimentConfig",
    "default_config",
    "run_experiment",
    "run_trial",
    "validate_config",
    "FollowerState",
    "SolverOptions",
    "enforce_power",
    "prox_group",
    "solve_follower",
    "update_alpha",
    "update_beta",
    "update_epsilon",
    "update_lambda_dual",
    "update_mu",
    "update_phi",
    "update_w",
    "GameOptions",
    "GameOutcome",
    "PriceSolution",
    "baseline_direct_only",
    "baseline_random_pricing",
    "kappa",
    "leader_value",
    "optimal_price",
    "solve_game",
    "__version__",
]
