"""Discrete execution: ZOH discretization, linear recurrence, gated layer.

The diagonal recurrence x_k = lambda_bar * x_{k-1} + b_bar u_k runs either
sequentially or as an inclusive associative scan with the combine
(a1, b1) * (a2, b2) = (a1 a2, a2 b1 + b2).  A filter bank stacks channels
with distinct singularity indices; the layer output is gated by a
SiLU-activated branch of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .spectral import SpectralInit, spectral_init

__all__ = [
    "DiscreteDiagonalSSM",
    "FilterBankConfig",
    "LayerWeights",
    "SequenceBatch",
    "silu",
    "zoh_discretize",
    "recur_sequential",
    "recur_scan",
    "scan_combine",
    "build_filter_bank",
    "layer_forward",
]


@dataclass(frozen=True, eq=False)
class DiscreteDiagonalSSM:
    """ZOH-discretized diagonal recurrence parameters."""

    lambda_bar: np.ndarray   # complex, shape (n,)
    b_bar: np.ndarray        # complex, shape (n, input_width)
    delta: float


@dataclass(frozen=True)
class FilterBankConfig:
    """Multi-channel layout: one singularity index per state block."""

    channels: int
    block_state: int
    alphas: tuple = None
    delta: tuple = None
    input_width: int = 1
    output_width: int = 1

    def __post_init__(self):
        if self.channels < 1 or self.block_state < 1:
            raise ValueError("channels and block_state must be >= 1")
        if self.input_width < 1 or self.output_width < 1:
            raise ValueError("input and output widths must be >= 1")
        alphas = self.alphas
        if alphas is None:
            alphas = tuple(np.linspace(0.0, 0.9, self.channels))
        alphas = tuple(float(a) for a in alphas)
        if len(alphas) != self.channels:
            raise ValueError(f"expected {self.channels} alphas, got {len(alphas)}")
        if any(not (0.0 <= a <= 0.95) for a in alphas):
            raise ValueError("channel singularity indices must lie in [0, 0.95]")
        object.__setattr__(self, "alphas", alphas)
        delta = self.delta
        if delta is None:
            delta = (1e-2,) * self.channels
        elif np.isscalar(delta):
            delta = (float(delta),) * self.channels
        else:
            delta = tuple(float(d) for d in delta)
        if len(delta) != self.channels or any(d <= 0 for d in delta):
            raise ValueError("need one positive timestep per channel")
        object.__setattr__(self, "delta", delta)

    @property
    def total_state(self) -> int:
        return self.channels * self.block_state


@dataclass(frozen=True, eq=False)
class LayerWeights:
    """Output map, mixing and gate matrices of one gated layer."""

    c_tilde: np.ndarray            # complex, (output_width, total_state)
    w_out: np.ndarray              # (output_width, output_width)
    w_gate: np.ndarray             # (output_width, input_width)
    d: np.ndarray | float = 0.0    # feedthrough, scalar or (output_width, input_width)


@dataclass(frozen=True, eq=False)
class SequenceBatch:
    """A finite real-valued sequence, shape (length, width)."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2:
            raise ValueError("sequence values must be 1-d or 2-d")
        if not np.all(np.isfinite(values)):
            raise ValueError("sequence contains non-finite values")
        object.__setattr__(self, "values", values)

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]


def silu(x):
    """SiLU activation x * sigmoid(x)."""
    x = np.asarray(x, dtype=float)
    return x * expit(x)


def zoh_discretize(init: SpectralInit, delta: float) -> DiscreteDiagonalSSM:
    """Zero-order-hold discretization of a diagonal system with step delta.

    lambda_bar = exp(delta * lambda); b_bar = (lambda_bar - 1)/lambda * b_tilde.
    """
    if delta <= 0.0:
        raise ValueError(f"timestep must be positive, got {delta}")
    lam = init.eigenvalues
    lambda_bar = np.exp(delta * lam)
    b_bar = ((lambda_bar - 1.0) / lam)[:, None] * init.b_tilde
    return DiscreteDiagonalSSM(lambda_bar=lambda_bar, b_bar=b_bar, delta=float(delta))


def _driven_inputs(ssm: DiscreteDiagonalSSM, u: SequenceBatch) -> np.ndarray:
    if u.width != ssm.b_bar.shape[1]:
        raise ValueError(
            f"input width {u.width} does not match system width {ssm.b_bar.shape[1]}")
    return u.values @ ssm.b_bar.T  # (L, n)


def recur_sequential(ssm: DiscreteDiagonalSSM, u: SequenceBatch) -> np.ndarray:
    """State trajectory of the diagonal recurrence, one step at a time.

    x_0 = b_bar u_0 (zero initial state); returns shape (length, n) complex.
    """
    drive = _driven_inputs(ssm, u)
    out = np.empty_like(drive)
    state = np.zeros(ssm.lambda_bar.shape, dtype=complex)
    for k in range(drive.shape[0]):
        state = ssm.lambda_bar * state + drive[k]
        out[k] = state
    return out


def scan_combine(e1, e2):
    """Associative combine of recurrence elements: (a1 a2, a2 b1 + b2)."""
    a1, b1 = e1
    a2, b2 = e2
    return a1 * a2, a2 * b1 + b2


_SCAN_CHUNK = 1024


def recur_scan(ssm: DiscreteDiagonalSSM, u: SequenceBatch) -> np.ndarray:
    """State trajectory via the inclusive associative scan.

    Two-level block decomposition of the prefix combine: all chunks are
    swept in lockstep (one vectorized combine per in-chunk step), the
    chunk-boundary elements are scanned, and each carry is folded into its
    chunk through the same combine.  The coefficient component of every
    element is lambda_bar, so the blockwise prefix coefficients are its
    cumulative powers.  Matches recur_sequential to floating-point
    reassociation tolerance.
    """
    drive = _driven_inputs(ssm, u).astype(complex)
    length, n = drive.shape
    lam = ssm.lambda_bar
    chunk = min(_SCAN_CHUNK, length)
    blocks = -(-length // chunk)
    pad = blocks * chunk - length
    if pad:
        drive = np.vstack([drive, np.zeros((pad, n), dtype=complex)])
    drive = drive.reshape(blocks, chunk, n)

    local = np.empty_like(drive)
    state = np.zeros((blocks, n), dtype=complex)
    for s in range(chunk):
        state = lam * state + drive[:, s]
        local[:, s] = state

    # prefix coefficients lam^(s+1) within a chunk, and the carry scan
    pows = np.cumprod(np.broadcast_to(lam, (chunk, n)), axis=0)
    lam_chunk = pows[-1]
    carry = np.zeros((blocks, n), dtype=complex)
    running = np.zeros(n, dtype=complex)
    for c in range(1, blocks):
        running = lam_chunk * running + local[c - 1, -1]
        carry[c] = running

    local += pows[None, :, :] * carry[:, None, :]
    return local.reshape(blocks * chunk, n)[:length]


def build_filter_bank(config: FilterBankConfig, order: int | None = None) -> list[SpectralInit]:
    """One spectral initialization per channel of the bank."""
    return [spectral_init(alpha, config.block_state, config.input_width, order)
            for alpha in config.alphas]


def layer_forward(config: FilterBankConfig, weights: LayerWeights,
                  ssms: list[DiscreteDiagonalSSM], z_in: SequenceBatch,
                  scan: bool = True) -> SequenceBatch:
    """Gated layer: run all channels, project, and gate with SiLU(W_gate z).

    z_out = (W_out y) * silu(W_gate z_in) with y = Re(C_tilde x) + D z_in.
    """
    if len(ssms) != config.channels:
        raise ValueError(f"expected {config.channels} channel systems, got {len(ssms)}")
    if z_in.width != config.input_width:
        raise ValueError(
            f"input width {z_in.width} does not match config width {config.input_width}")
    run = recur_scan if scan else recur_sequential
    states = np.concatenate([run(ssm, z_in) for ssm in ssms], axis=1)
    if weights.c_tilde.shape != (config.output_width, config.total_state):
        raise ValueError("output map shape does not match the filter bank")
    y = (states @ weights.c_tilde.T).real
    d = weights.d
    if np.isscalar(d):
        if d != 0.0:
            if config.input_width != config.output_width:
                raise ValueError("scalar feedthrough requires matching widths")
            y = y + d * z_in.values
    else:
        y = y + z_in.values @ np.asarray(d).T
    gate = silu(z_in.values @ weights.w_gate.T)
    z_out = (y @ weights.w_out.T) * gate
    if not np.all(np.isfinite(z_out)):
        raise ArithmeticError("layer produced non-finite activations")
    return SequenceBatch(values=z_out)
