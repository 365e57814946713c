"""Monte-Carlo experiment: schemes x power grid x trials -> CSV.

Every (p_max, trial) cell draws one channel realization shared by all
schemes (paired common random numbers), seeded as a pure function of
(base_seed, p_max index, trial), so reruns and scheme comparisons are
deterministic; randomness private to a scheme (the random-pricing draw) is
keyed by the scheme as well.  One CSV row is written per (scheme, p_max,
trial); a failed solve keeps its row with nan metrics so the row count
stays schemes x grid x trials.  wall_ms is the only non-deterministic
column.
"""

from __future__ import annotations

import csv
import sys
import time
import traceback
from dataclasses import dataclass

import numpy as np

from .channel import (
    ChannelSet,
    Dims,
    FadingParams,
    Geometry,
    dbm_to_watts,
    sample_instance,
)
from .follower import POWER_MODES, SolverOptions
from .leader import (
    GameOptions,
    baseline_direct_only,
    baseline_random_pricing,
    solve_game,
)

SCHEMES = ("game", "random_pricing", "direct_only")

CSV_COLUMNS = (
    "scheme",
    "p_max_dbm",
    "trial",
    "seed",
    "U_relaxed",
    "U_discrete",
    "V_relaxed",
    "V_discrete",
    "sum_rate",
    "r",
    "active_modules",
    "inner_iters",
    "outer_iters",
    "wall_ms",
)

_METRIC_COLUMNS = (
    "U_relaxed",
    "U_discrete",
    "V_relaxed",
    "V_discrete",
    "sum_rate",
    "r",
    "active_modules",
    "inner_iters",
    "outer_iters",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved experiment description (every default filled in)."""

    dims: Dims
    geometry: Geometry
    fading: FadingParams
    delta: float
    p_max_dbm: tuple[float, ...]
    trials: int
    base_seed: int
    schemes: tuple[str, ...]
    output_path: str
    n_jobs: int
    solver: SolverOptions
    game: GameOptions


def default_config() -> ExperimentConfig:
    """The reference setup: 4x4 MIMO cell, 8 modules of 8 elements."""
    return ExperimentConfig(
        dims=Dims(M=4, K=4, S=8, N=8),
        geometry=Geometry(),
        fading=FadingParams(),
        delta=0.1,
        p_max_dbm=(-5.0, -2.5, 0.0, 2.5, 5.0),
        trials=20,
        base_seed=0,
        schemes=SCHEMES,
        output_path="results.csv",
        n_jobs=1,
        solver=SolverOptions(),
        game=GameOptions(),
    )


def _reject_unknown(section: str, raw: dict, allowed) -> None:
    for key in raw:
        if key not in allowed:
            where = f"{section}.{key}" if section else key
            raise ValueError(f"unknown config key: {where!r}")


def _pair(name: str, value) -> tuple[float, float]:
    try:
        x, y = value
        return float(x), float(y)
    except (TypeError, ValueError) as err:
        raise ValueError(f"{name} must be a pair of numbers, got {value!r}") from err


def validate_config(raw: dict | None) -> ExperimentConfig:
    """Turn a parsed YAML mapping into an ExperimentConfig.

    Unknown keys raise ValueError naming the key; omitted keys take the
    defaults of default_config().  An empty/None mapping is the full
    default experiment.
    """
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ValueError(f"config root must be a mapping, got {type(raw).__name__}")
    base = default_config()
    top_allowed = {
        "dims",
        "geometry",
        "fading",
        "delta",
        "p_max_dbm",
        "trials",
        "base_seed",
        "schemes",
        "output_path",
        "n_jobs",
        "solver",
        "game",
    }
    _reject_unknown("", raw, top_allowed)

    d = dict(raw.get("dims") or {})
    _reject_unknown("dims", d, {"M", "K", "S", "N"})
    dims = Dims(
        M=int(d.get("M", base.dims.M)),
        K=int(d.get("K", base.dims.K)),
        S=int(d.get("S", base.dims.S)),
        N=int(d.get("N", base.dims.N)),
    )
    if min(dims) < 1:
        raise ValueError(f"dims entries must be >= 1, got {dims}")

    g = dict(raw.get("geometry") or {})
    _reject_unknown(
        "geometry",
        g,
        {"bs_pos", "irs_pos", "cell_center", "cell_radius", "user_positions"},
    )
    user_positions = g.get("user_positions", base.geometry.user_positions)
    geometry = Geometry(
        bs_pos=_pair("geometry.bs_pos", g.get("bs_pos", base.geometry.bs_pos)),
        irs_pos=_pair("geometry.irs_pos", g.get("irs_pos", base.geometry.irs_pos)),
        cell_center=_pair(
            "geometry.cell_center", g.get("cell_center", base.geometry.cell_center)
        ),
        cell_radius=float(g.get("cell_radius", base.geometry.cell_radius)),
        user_positions=(
            tuple(_pair("geometry.user_positions[i]", p) for p in user_positions)
            if user_positions is not None
            else None
        ),
    )

    f = dict(raw.get("fading") or {})
    _reject_unknown(
        "fading",
        f,
        {"pl_ref_db", "direct_exponent", "irs_exponent", "noise_power_dbm"},
    )
    fading = FadingParams(
        pl_ref_db=float(f.get("pl_ref_db", base.fading.pl_ref_db)),
        direct_exponent=float(f.get("direct_exponent", base.fading.direct_exponent)),
        irs_exponent=float(f.get("irs_exponent", base.fading.irs_exponent)),
        noise_power_dbm=float(f.get("noise_power_dbm", base.fading.noise_power_dbm)),
    )

    delta = float(raw.get("delta", base.delta))
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta}")

    grid = raw.get("p_max_dbm", base.p_max_dbm)
    try:
        p_max_dbm = tuple(float(p) for p in grid)
    except (TypeError, ValueError) as err:
        raise ValueError(f"p_max_dbm must be a list of numbers, got {grid!r}") from err
    if not p_max_dbm:
        raise ValueError("p_max_dbm must not be empty")

    trials = int(raw.get("trials", base.trials))
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    base_seed = int(raw.get("base_seed", base.base_seed))

    schemes = tuple(raw.get("schemes", base.schemes))
    if not schemes:
        raise ValueError("schemes must not be empty")
    for s in schemes:
        if s not in SCHEMES:
            raise ValueError(f"unknown scheme {s!r}; valid schemes: {SCHEMES}")
    if len(set(schemes)) != len(schemes):
        raise ValueError(f"duplicate scheme in {schemes}")

    output_path = str(raw.get("output_path", base.output_path))
    n_jobs = int(raw.get("n_jobs", base.n_jobs))
    if n_jobs == 0:
        raise ValueError("n_jobs must be nonzero (-1 means all cores)")

    s = dict(raw.get("solver") or {})
    _reject_unknown(
        "solver",
        s,
        {
            "max_inner_iters",
            "obj_rel_tol",
            "consensus_tol",
            "c",
            "power_mode",
            "power_tol",
            "init_seed",
        },
    )
    if "power_mode" in s and s["power_mode"] not in POWER_MODES:
        raise ValueError(
            f"solver.power_mode must be one of {POWER_MODES}, got {s['power_mode']!r}"
        )
    solver = SolverOptions(
        max_inner_iters=int(s.get("max_inner_iters", base.solver.max_inner_iters)),
        obj_rel_tol=float(s.get("obj_rel_tol", base.solver.obj_rel_tol)),
        consensus_tol=float(s.get("consensus_tol", base.solver.consensus_tol)),
        c=float(s.get("c", base.solver.c)),
        power_mode=str(s.get("power_mode", base.solver.power_mode)),
        power_tol=float(s.get("power_tol", base.solver.power_tol)),
        init_seed=int(s.get("init_seed", base.solver.init_seed)),
    )

    gm = dict(raw.get("game") or {})
    _reject_unknown(
        "game", gm, {"r_init", "max_outer_iters", "v_rel_tol", "baseline_r_range"}
    )
    game = GameOptions(
        r_init=float(gm.get("r_init", base.game.r_init)),
        max_outer_iters=int(gm.get("max_outer_iters", base.game.max_outer_iters)),
        v_rel_tol=float(gm.get("v_rel_tol", base.game.v_rel_tol)),
        baseline_r_range=_pair(
            "game.baseline_r_range",
            gm.get("baseline_r_range", base.game.baseline_r_range),
        ),
    )

    return ExperimentConfig(
        dims=dims,
        geometry=geometry,
        fading=fading,
        delta=delta,
        p_max_dbm=p_max_dbm,
        trials=trials,
        base_seed=base_seed,
        schemes=schemes,
        output_path=output_path,
        n_jobs=n_jobs,
        solver=solver,
        game=game,
    )


def channel_seed(base_seed: int, p_idx: int, trial: int) -> np.random.SeedSequence:
    """Seed of the channel draw shared by every scheme in this cell."""
    return np.random.SeedSequence(base_seed, spawn_key=(0, p_idx, trial))


def scheme_seed(
    base_seed: int, p_idx: int, trial: int, scheme: str
) -> np.random.SeedSequence:
    """Seed of randomness private to one scheme (the random price draw)."""
    return np.random.SeedSequence(
        base_seed, spawn_key=(1, p_idx, trial, SCHEMES.index(scheme))
    )


def sample_trial_channels(
    config: ExperimentConfig, p_idx: int, trial: int
) -> ChannelSet:
    return sample_instance(
        config.geometry,
        config.fading,
        config.dims,
        channel_seed(config.base_seed, p_idx, trial),
    )


def run_trial(config: ExperimentConfig, scheme: str, p_idx: int, trial: int) -> dict:
    """One CSV row.  Exceptions are converted into a nan-metrics row."""
    ss = channel_seed(config.base_seed, p_idx, trial)
    seed_val = int(ss.generate_state(1)[0])
    p_dbm = config.p_max_dbm[p_idx]
    row = {
        "scheme": scheme,
        "p_max_dbm": p_dbm,
        "trial": trial,
        "seed": seed_val,
        "wall_ms": float("nan"),
    }
    t0 = time.perf_counter()
    try:
        channels = sample_trial_channels(config, p_idx, trial)
        sigma2 = config.fading.noise_power
        p_max = dbm_to_watts(p_dbm)
        if scheme == "game":
            out = solve_game(
                channels, config.delta, sigma2, p_max, config.solver, config.game
            )
        elif scheme == "random_pricing":
            out = baseline_random_pricing(
                channels,
                config.delta,
                sigma2,
                p_max,
                scheme_seed(config.base_seed, p_idx, trial, scheme),
                config.solver,
                config.game,
            )
        elif scheme == "direct_only":
            out = baseline_direct_only(
                channels, config.delta, sigma2, p_max, config.solver
            )
        else:
            raise ValueError(f"unknown scheme {scheme!r}")
        row.update(
            U_relaxed=out.U_relaxed,
            U_discrete=out.U_discrete,
            V_relaxed=out.V_relaxed,
            V_discrete=out.V_discrete,
            sum_rate=out.sum_rate,
            r=out.r_star,
            active_modules=out.active_modules,
            inner_iters=out.inner_iters,
            outer_iters=out.outer_iters,
        )
    except Exception:
        # flagged failure: the row survives with nan metrics, the run goes on
        print(
            f"trial failed: scheme={scheme} p_max={p_dbm} dBm trial={trial}",
            file=sys.stderr,
        )
        traceback.print_exc()
        for col in _METRIC_COLUMNS:
            row[col] = float("nan")
    row["wall_ms"] = 1e3 * (time.perf_counter() - t0)
    return row


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(float(value))  # plain-float repr: shortest round-trip form
    return str(value)


def write_csv(rows: list[dict], path: str) -> None:
    """UTF-8 CSV, header first, floats as shortest round-trip decimals."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(row[col]) for col in CSV_COLUMNS])


def summarize(rows: list[dict]) -> str:
    """Per (scheme, p_max) means of the headline metrics, as a text table."""
    groups: dict[tuple[str, float], list[dict]] = {}
    for row in rows:
        groups.setdefault((row["scheme"], row["p_max_dbm"]), []).append(row)
    lines = [
        f"{'scheme':<16}{'p_max_dbm':>10}{'n':>4}{'U_relaxed':>12}"
        f"{'V_relaxed':>12}{'sum_rate':>12}{'r':>10}{'active':>8}"
    ]
    for (scheme, p_dbm), grp in sorted(groups.items()):
        ok = [g for g in grp if np.isfinite(g["U_relaxed"])]
        if not ok:
            lines.append(f"{scheme:<16}{p_dbm:>10.2f}{0:>4} (all trials failed)")
            continue

        def mean(col):
            return float(np.mean([g[col] for g in ok]))

        lines.append(
            f"{scheme:<16}{p_dbm:>10.2f}{len(ok):>4}{mean('U_relaxed'):>12.4f}"
            f"{mean('V_relaxed'):>12.4f}{mean('sum_rate'):>12.4f}"
            f"{mean('r'):>10.4f}{mean('active_modules'):>8.2f}"
        )
    return "\n".join(lines)


def run_experiment(config: ExperimentConfig, verbose: int = 0) -> list[dict]:
    """Run every (scheme, p_max, trial) cell, write the CSV, print a summary.

    Rows are ordered by (scheme order in config, grid order, trial), and all
    columns except wall_ms are reproducible bit for bit for a fixed config.
    """
    tasks = [
        (scheme, p_idx, trial)
        for scheme in config.schemes
        for p_idx in range(len(config.p_max_dbm))
        for trial in range(config.trials)
    ]
    if config.n_jobs != 1:
        from joblib import Parallel, delayed

        rows = Parallel(n_jobs=config.n_jobs)(
            delayed(run_trial)(config, scheme, p_idx, trial)
            for scheme, p_idx, trial in tasks
        )
    else:
        rows = []
        for scheme, p_idx, trial in tasks:
            row = run_trial(config, scheme, p_idx, trial)
            rows.append(row)
            if verbose:
                print(
                    f"{row['scheme']:<16} p_max={row['p_max_dbm']:+.1f} dBm "
                    f"trial={row['trial']:<3} U={row['U_relaxed']:.4f} "
                    f"V={row['V_relaxed']:.4f} r={row['r']:.4f} "
                    f"active={row['active_modules']} ({row['wall_ms']:.0f} ms)"
                )
    write_csv(rows, config.output_path)
    print(summarize(rows))
    print(f"wrote {len(rows)} rows to {config.output_path}")
    return rows
