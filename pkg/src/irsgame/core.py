"""Shared game quantities: phase profiles, beamformers, SINR and utilities.

The IRS applies a diagonal reflection matrix Phi to the forward channel.  We
store the reflection as a vector phi in C^(S*N) under the convention

    g_k^H Phi H == phi^H diag(g_k^H) H,

which makes the literal matrix Phi = diag(conj(phi)) and the combined
downlink channel of user k, written as a column vector,

    h_k = h_dk + H^H (g_k * phi).                                   (*)

All SINRs, rates and utilities below are derived from (*).  Rates are in
bit/s/Hz (log base 2).

Module s owns entries s*N..(s+1)*N-1 of phi; a module is "active" when its
block has Euclidean norm above EPS_ACTIVE.  The leader charges r per active
module (discrete view) or r*delta*sum_s ||phi_s||_2 (relaxed view used by
the solvers); delta is the pricing balance weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelSet

# blocks with Euclidean norm above this count as active (switched-on module)
EPS_ACTIVE = 1e-6

# slack accepted on the unit-modulus and power budget inequalities
_BOUND_TOL = 1e-6


def phase_vector(phases) -> np.ndarray:
    """Accept a PhaseProfile or a raw complex vector; return the vector."""
    if isinstance(phases, PhaseProfile):
        return phases.phi
    return np.asarray(phases)


@dataclass(frozen=True)
class PhaseProfile:
    """Reflection coefficients phi for S*N elements, |phi_i| <= 1.

    num_blocks * block_size must equal len(phi).  Entries may have modulus
    up to 1 + 1e-6 to absorb floating-point drift at the boundary.
    """

    phi: np.ndarray
    num_blocks: int
    block_size: int

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=complex)
        object.__setattr__(self, "phi", phi)
        if phi.ndim != 1 or phi.size != self.num_blocks * self.block_size:
            raise ValueError(
                f"phi has {phi.size} entries, expected "
                f"{self.num_blocks} x {self.block_size}"
            )
        mags = np.abs(phi)
        if mags.size and mags.max() > 1.0 + _BOUND_TOL:
            raise ValueError(f"|phi_i| <= 1 violated: max modulus {mags.max():.6g}")

    @classmethod
    def zeros(cls, num_blocks: int, block_size: int) -> "PhaseProfile":
        return cls(np.zeros(num_blocks * block_size, complex), num_blocks, block_size)

    def block(self, s: int) -> np.ndarray:
        return self.phi[s * self.block_size : (s + 1) * self.block_size]

    def block_norms(self) -> np.ndarray:
        return block_norms(self.phi, self.block_size)

    def active_blocks(self) -> np.ndarray:
        """Boolean mask of modules with block norm above EPS_ACTIVE."""
        return self.block_norms() > EPS_ACTIVE


@dataclass(frozen=True)
class BeamformingMatrix:
    """Transmit beamformers, row k is w_k in C^M; sum_k ||w_k||^2 <= p_max."""

    W: np.ndarray
    p_max: float

    def __post_init__(self):
        W = np.asarray(self.W, dtype=complex)
        object.__setattr__(self, "W", W)
        if W.ndim != 2:
            raise ValueError(f"W must be (K, M), got shape {W.shape}")
        if self.p_max < 0:
            raise ValueError(f"p_max must be >= 0, got {self.p_max}")
        if self.power > self.p_max * (1.0 + _BOUND_TOL):
            raise ValueError(
                f"transmit power {self.power:.6g} exceeds budget {self.p_max:.6g}"
            )

    @property
    def power(self) -> float:
        return float(np.sum(np.abs(self.W) ** 2))


def combined_channel(channels: ChannelSet, phases) -> np.ndarray:
    """Effective downlink channels h_k (rows) under reflection phi, per (*)."""
    phi = phase_vector(phases)
    return channels.h_direct + (channels.g_irs * phi) @ np.conj(channels.H_irs)


def channel_gram(channels: ChannelSet, phases, W) -> np.ndarray:
    """Matrix of inner products h_k^H w_j, shape (K, K), entry [k, j]."""
    h = combined_channel(channels, phases)
    Wm = W.W if isinstance(W, BeamformingMatrix) else np.asarray(W)
    return np.conj(h) @ Wm.T


def sinr(channels: ChannelSet, phases, W, sigma2: float) -> np.ndarray:
    """Per-user SINR: |h_k^H w_k|^2 / (sum_{j!=k} |h_k^H w_j|^2 + sigma2)."""
    cross = np.abs(channel_gram(channels, phases, W)) ** 2
    signal = np.diag(cross).copy()
    interference = cross.sum(axis=1) - signal
    return signal / (interference + sigma2)


def sum_rate(channels: ChannelSet, phases, W, sigma2: float) -> float:
    """sum_k log2(1 + SINR_k) in bit/s/Hz."""
    return float(np.sum(np.log2(1.0 + sinr(channels, phases, W, sigma2))))


def clamp_unit_disk(phi: np.ndarray) -> np.ndarray:
    """Project entries with |phi_i| > 1 onto the unit circle, keeping phase.

    Entries already inside the disk (zeros included) pass through unchanged,
    so exact sparsity is preserved.
    """
    phi = np.asarray(phi)
    mags = np.abs(phi)
    over = mags > 1.0
    if not np.any(over):
        return phi
    out = phi.copy()
    out[over] = phi[over] / mags[over]
    return out


def block_norms(vec: np.ndarray, block_size: int) -> np.ndarray:
    """Euclidean norm of each length-block_size chunk of vec."""
    vec = np.asarray(vec)
    if vec.size % block_size:
        raise ValueError(f"vector of size {vec.size} not divisible by {block_size}")
    return np.linalg.norm(vec.reshape(-1, block_size), axis=1)


def active_count(vec: np.ndarray, block_size: int, eps: float = EPS_ACTIVE) -> int:
    """Number of blocks with norm above eps."""
    return int(np.sum(block_norms(vec, block_size) > eps))


def utility_follower(
    channels: ChannelSet,
    phases,
    W,
    r: float,
    delta: float,
    sigma2: float,
    block_size: int,
    discrete: bool = False,
) -> float:
    """Base-station utility: sum rate minus the reflection bill.

    Relaxed bill: r * delta * sum_s ||phi_s||_2 (what the solvers optimize).
    Discrete bill: r * (number of active modules).
    """
    rate = sum_rate(channels, phases, W, sigma2)
    phi = phase_vector(phases)
    if discrete:
        return rate - r * active_count(phi, block_size)
    return rate - r * delta * float(np.sum(block_norms(phi, block_size)))


def utility_leader(
    r: float,
    phases,
    delta: float,
    block_size: int,
    discrete: bool = False,
) -> float:
    """IRS-operator revenue for a given reflection profile.

    Relaxed: r * delta * sum_s ||phi_s||_2.  Discrete: r per active module.
    """
    phi = phase_vector(phases)
    if discrete:
        return r * active_count(phi, block_size)
    return r * delta * float(np.sum(block_norms(phi, block_size)))
