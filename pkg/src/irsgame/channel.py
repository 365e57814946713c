"""Geometry, path loss and Rayleigh channel sampling.

Layout: a multi-antenna base station (M antennas) serves K single-antenna
users with help from an intelligent reflecting surface split into S modules
of N elements each (SN elements total).  Three kinds of links exist:

    direct   h_dk in C^M      BS -> user k
    forward  H    in C^(SN,M) BS -> IRS, stacked per module (rows sN..sN+N-1
                              belong to module s)
    reverse  g_k  in C^SN     IRS -> user k, stacked the same way

Every entry is Rayleigh: sqrt(G) * CN(0, 1) where G is the linear power gain
of the link, G = 10^(-PL/10), and the path loss in dB follows

    PL(d) = pl_ref_db + 10 * exponent * log10(d),   d in meters.

Direct links use a larger exponent than the IRS links (the surface is
deployed to see both ends well).  Noise power is configured in dBm and
converted to watts where the solvers need it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np


class Dims(NamedTuple):
    """Problem dimensions: antennas M, users K, modules S, elements/module N."""

    M: int
    K: int
    S: int
    N: int


def dbm_to_watts(dbm: float) -> float:
    """10^((dbm - 30)/10): dBm referenced to 1 mW, returned in watts."""
    return 10.0 ** ((dbm - 30.0) / 10.0)


def pathloss_db(distance_m: float, exponent: float, pl_ref_db: float = 30.0) -> float:
    """Log-distance path loss PL(d) = pl_ref_db + 10*exponent*log10(d).

    pl_ref_db is the loss at d = 1 m.  Distances must be strictly positive;
    a zero distance has no finite loss under this model.
    """
    if distance_m <= 0.0:
        raise ValueError(f"distance must be > 0 m, got {distance_m}")
    return pl_ref_db + 10.0 * exponent * np.log10(distance_m)


def _amplitude_gain(pl_db: float) -> float:
    """Amplitude scale sqrt(10^(-PL/10)) applied to unit-power fading."""
    return 10.0 ** (-pl_db / 20.0)


@dataclass(frozen=True)
class Geometry:
    """Node placement on the 2-D ground plane, coordinates in meters.

    Users are dropped uniformly over a disk of radius cell_radius around
    cell_center unless user_positions pins them explicitly (then the list
    length must equal K at sampling time and every position must lie within
    the disk).
    """

    bs_pos: tuple[float, float] = (0.0, 0.0)
    irs_pos: tuple[float, float] = (50.0, 50.0)
    cell_center: tuple[float, float] = (200.0, 0.0)
    cell_radius: float = 10.0
    user_positions: Optional[tuple[tuple[float, float], ...]] = None

    def __post_init__(self):
        if self.cell_radius < 0.0:
            raise ValueError(f"cell_radius must be >= 0, got {self.cell_radius}")
        if self.user_positions is not None:
            # normalize to a hashable tuple-of-tuples so the dataclass stays frozen
            object.__setattr__(
                self,
                "user_positions",
                tuple((float(x), float(y)) for x, y in self.user_positions),
            )
            center = np.asarray(self.cell_center, dtype=float)
            for pos in self.user_positions:
                if np.hypot(*(np.asarray(pos) - center)) > self.cell_radius + 1e-9:
                    raise ValueError(
                        f"user position {pos} lies outside the cell disk "
                        f"(center {self.cell_center}, radius {self.cell_radius})"
                    )


@dataclass(frozen=True)
class FadingParams:
    """Path-loss and noise configuration.

    pl_ref_db is the loss at 1 m shared by all links; direct_exponent
    applies to BS->user, irs_exponent to both BS->IRS and IRS->user.
    noise_power_dbm is the receiver noise floor; it is not a geometric
    quantity but travels with the fading config because every consumer of a
    sampled channel needs it.  The default of -100 dBm puts the 200 m
    direct link of the default Geometry at a usable SNR for transmit powers
    in the -5..5 dBm range while keeping reflection valuable enough that
    module rentals survive prices of order one.
    """

    pl_ref_db: float = 30.0
    direct_exponent: float = 3.5
    irs_exponent: float = 2.0
    noise_power_dbm: float = -100.0

    def __post_init__(self):
        if self.direct_exponent <= 0 or self.irs_exponent <= 0:
            raise ValueError("path-loss exponents must be > 0")

    @property
    def noise_power(self) -> float:
        """Noise power sigma^2 in watts."""
        return dbm_to_watts(self.noise_power_dbm)


@dataclass(frozen=True)
class ChannelSet:
    """One sampled channel instance plus its dimensions.

    h_direct : (K, M) complex, row k is h_dk
    H_irs    : (S*N, M) complex, module s occupies rows s*N..(s+1)*N-1
    g_irs    : (K, S*N) complex, row k is g_k with the same row blocking
    """

    h_direct: np.ndarray
    H_irs: np.ndarray
    g_irs: np.ndarray
    dims: Dims

    def __post_init__(self):
        M, K, S, N = self.dims
        if min(M, K, S, N) < 1:
            raise ValueError(f"all dimensions must be >= 1, got {self.dims}")
        if self.h_direct.shape != (K, M):
            raise ValueError(f"h_direct shape {self.h_direct.shape} != {(K, M)}")
        if self.H_irs.shape != (S * N, M):
            raise ValueError(f"H_irs shape {self.H_irs.shape} != {(S * N, M)}")
        if self.g_irs.shape != (K, S * N):
            raise ValueError(f"g_irs shape {self.g_irs.shape} != {(K, S * N)}")
        for name in ("h_direct", "H_irs", "g_irs"):
            arr = getattr(self, name)
            if not np.all(np.isfinite(arr.view(float))):
                raise ValueError(f"{name} contains non-finite entries")


def stack_blocks(
    H_modules: Sequence[np.ndarray], g_modules: Sequence[Sequence[np.ndarray]]
) -> tuple[np.ndarray, np.ndarray]:
    """Stack per-module pieces into the flat (S*N, M) and (K, S*N) arrays.

    H_modules: S arrays of shape (N, M), one per module.
    g_modules: K sequences of S arrays of shape (N,), g_modules[k][s].
    Inverse of extract_block along the module axis.
    """
    H = np.vstack([np.asarray(Hs) for Hs in H_modules])
    g = np.vstack([np.concatenate([np.asarray(gs) for gs in gk]) for gk in g_modules])
    return H, g


def extract_block(arr: np.ndarray, s: int, N: int) -> np.ndarray:
    """Rows (1-D: entries) s*N..(s+1)*N-1 of a stacked array: module s."""
    total = arr.shape[0]
    if not 0 <= s < total // N:
        raise IndexError(f"module index {s} out of range for {total // N} modules")
    return arr[s * N : (s + 1) * N]


def _crandn(rng: np.random.Generator, shape) -> np.ndarray:
    """CN(0, 1) i.i.d. entries: unit power split evenly over re/im."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def sample_user_positions(
    geometry: Geometry, K: int, rng: np.random.Generator
) -> np.ndarray:
    """K points uniform over the cell disk, or the pinned positions.

    Uniformity over the disk needs radius ~ R*sqrt(u); a plain uniform
    radius would oversample the center.
    """
    if geometry.user_positions is not None:
        if len(geometry.user_positions) != K:
            raise ValueError(
                f"{len(geometry.user_positions)} pinned positions but K={K}"
            )
        return np.asarray(geometry.user_positions, dtype=float)
    radii = geometry.cell_radius * np.sqrt(rng.random(K))
    angles = 2.0 * np.pi * rng.random(K)
    center = np.asarray(geometry.cell_center, dtype=float)
    return center + np.stack([radii * np.cos(angles), radii * np.sin(angles)], axis=1)


def sample_instance(
    geometry: Geometry,
    fading: FadingParams,
    dims: Dims,
    seed,
    fading_scale: float = 1.0,
) -> ChannelSet:
    """Draw one channel realization.

    Deterministic in (geometry, fading, dims, seed): the same seed gives the
    same instance bit for bit.  seed may be anything numpy's default_rng
    accepts (int, SeedSequence, Generator).

    fading_scale multiplies the small-scale part only; 0 yields exactly zero
    channels (useful for degenerate-case tests).  All raw fading is drawn
    before any scaling is applied, so changing path-loss parameters rescales
    the very same realization instead of drawing a new one.
    """
    M, K, S, N = dims
    rng = np.random.default_rng(seed)

    users = sample_user_positions(geometry, K, rng)
    raw_hd = _crandn(rng, (K, M))
    raw_H = _crandn(rng, (S * N, M))
    raw_g = _crandn(rng, (K, S * N))

    bs = np.asarray(geometry.bs_pos, dtype=float)
    irs = np.asarray(geometry.irs_pos, dtype=float)

    d_bs_user = np.linalg.norm(users - bs, axis=1)
    d_irs_user = np.linalg.norm(users - irs, axis=1)
    d_bs_irs = float(np.linalg.norm(irs - bs))

    amp_direct = np.array(
        [
            _amplitude_gain(pathloss_db(d, fading.direct_exponent, fading.pl_ref_db))
            for d in d_bs_user
        ]
    )
    amp_fwd = _amplitude_gain(
        pathloss_db(d_bs_irs, fading.irs_exponent, fading.pl_ref_db)
    )
    amp_rev = np.array(
        [
            _amplitude_gain(pathloss_db(d, fading.irs_exponent, fading.pl_ref_db))
            for d in d_irs_user
        ]
    )

    h_direct = fading_scale * amp_direct[:, None] * raw_hd
    H_irs = fading_scale * amp_fwd * raw_H
    g_irs = fading_scale * amp_rev[:, None] * raw_g
    return ChannelSet(h_direct=h_direct, H_irs=H_irs, g_irs=g_irs, dims=dims)
