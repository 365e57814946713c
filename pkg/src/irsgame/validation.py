"""Input checks shared by the estimators and the CLI."""

from __future__ import annotations

import numpy as np

from .channel import ChannelSet, Dims


def check_channels(X) -> ChannelSet:
    """Coerce estimator input to a ChannelSet.

    Accepts a ChannelSet directly, or a (h_direct, H_irs, g_irs, dims)
    tuple; ChannelSet's own constructor validates shapes and finiteness.
    """
    if isinstance(X, ChannelSet):
        return X
    if isinstance(X, (tuple, list)) and len(X) == 4:
        h_direct, H_irs, g_irs, dims = X
        if not isinstance(dims, Dims):
            dims = Dims(*dims)
        return ChannelSet(
            h_direct=np.asarray(h_direct, complex),
            H_irs=np.asarray(H_irs, complex),
            g_irs=np.asarray(g_irs, complex),
            dims=dims,
        )
    raise TypeError(
        "expected a ChannelSet or a (h_direct, H_irs, g_irs, dims) tuple, "
        f"got {type(X).__name__}"
    )


def check_positive(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite number, got {value}")
    return value
