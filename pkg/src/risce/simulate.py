"""Ground-truth generation: channels, pilots and the filtered received tensor.

Transmission protocol: the RIS holds one reflection pattern per block; each
block carries ``T`` pilot slots.  The block-k received matrix is

    ``Y_k = H diag(s_k) G^T X + Z_k``

and matched filtering with the semi-unitary pilot (``X X^H = I``) gives the
``M_r x M_t`` slice ``Y_k X^H``, so the K filtered slices form a rank-N CP
tensor with factors ``(H, G, S)`` plus filtered noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .tensors import cp_reconstruct

SeedLike = "int | np.random.SeedSequence | np.random.Generator | None"


@dataclass(frozen=True)
class SystemDims:
    """Antenna/element/pilot geometry of one experiment."""

    m_t: int
    m_r: int
    n: int
    t: int
    k: int

    def __post_init__(self):
        for name in ("m_t", "m_r", "n", "t", "k"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.t < self.m_t:
            raise DomainError(
                f"semi-unitary pilots need t >= m_t, got t={self.t}, m_t={self.m_t}"
            )

    @property
    def identifiable(self) -> bool:
        """Whether the block count supports unique channel recovery (k >= n)."""
        return self.k >= self.n


@dataclass(frozen=True)
class ChannelPair:
    """The two unknown channels: ``h`` is M_r x N, ``g`` is M_t x N."""

    h: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        if self.h.ndim != 2 or self.g.ndim != 2:
            raise DimensionError("channels must be 2-D matrices")
        if self.h.shape[1] != self.g.shape[1]:
            raise DimensionError(
                f"channel column counts differ: {self.h.shape[1]} vs {self.g.shape[1]}"
            )
        if not (np.all(np.isfinite(self.h.view(float))) and np.all(np.isfinite(self.g.view(float)))):
            raise DomainError("channel entries must be finite")

    def to_csv(self, which: str, path) -> None:
        """Write one channel as ``i,n,re,im`` rows (1-based indices)."""
        mat = {"h": self.h, "g": self.g}[which]
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("i,n,re,im\n")
            for i in range(mat.shape[0]):
                for n in range(mat.shape[1]):
                    z = mat[i, n]
                    fh.write(f"{i + 1},{n + 1},{z.real:.17g},{z.imag:.17g}\n")


@dataclass(frozen=True)
class NoiseSpec:
    """Target SNR in dB (``inf`` for noiseless) plus the noise seed."""

    snr_db: float
    seed: object = None

    def __post_init__(self):
        if math.isnan(self.snr_db):
            raise DomainError("snr_db must not be NaN")


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def rayleigh_channel(rows: int, cols: int, seed=None) -> np.ndarray:
    """I.i.d. circularly-symmetric complex Gaussian matrix, unit entry variance."""
    if rows < 1 or cols < 1:
        raise DomainError(f"need rows, cols >= 1, got {rows}x{cols}")
    rng = _rng(seed)
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return (re + 1j * im) / np.sqrt(2.0)


def rayleigh_pair(dims: SystemDims, seed=None) -> ChannelPair:
    """Draw both channels from one seed (h first, then g)."""
    rng = _rng(seed)
    h = rayleigh_channel(dims.m_r, dims.n, rng)
    g = rayleigh_channel(dims.m_t, dims.n, rng)
    return ChannelPair(h=h, g=g)


def pilot_matrix(m_t: int, t: int) -> np.ndarray:
    """Semi-unitary M_t x T pilot: first rows of the unitary T-point DFT."""
    if m_t < 1:
        raise DomainError(f"need m_t >= 1, got {m_t}")
    if t < m_t:
        raise DomainError(f"need t >= m_t for orthonormal rows, got t={t}, m_t={m_t}")
    idx = np.arange(t)
    dft = np.exp(-2j * np.pi * np.outer(idx, idx) / t) / np.sqrt(t)
    return dft[:m_t, :]


def noise_variance(noiseless_blocks: np.ndarray, x: np.ndarray, snr_db: float) -> float:
    """Per-entry noise variance that realizes ``snr_db`` before filtering.

    ``noiseless_blocks`` has shape (K, M_r, M_t); the signal power is the
    per-block Frobenius power of ``block @ x`` averaged over blocks.
    """
    if math.isinf(snr_db) and snr_db > 0:
        return 0.0
    m_r = noiseless_blocks.shape[1]
    t = x.shape[1]
    signal_power = float(np.mean(np.abs(noiseless_blocks @ x) ** 2) * (m_r * t)) / (
        m_r * t
    ) * (m_r * t)
    # signal_power is the mean per-block ||block @ x||_F^2
    return signal_power / (m_r * t * 10.0 ** (snr_db / 10.0))


def received_tensor(
    channels: ChannelPair,
    s: np.ndarray,
    x: np.ndarray,
    noise: NoiseSpec,
) -> np.ndarray:
    """Noisy filtered received tensor of shape (M_r, M_t, K).

    The noise variance is calibrated against the realized channels so that
    the pre-filtering block SNR matches ``noise.snr_db``.
    """
    s = np.asarray(getattr(s, "matrix", s))
    h, g = channels.h, channels.g
    m_r, n = h.shape
    m_t = g.shape[0]
    k, n_s = s.shape
    t = x.shape[1]
    if n_s != n:
        raise DimensionError(f"S has {n_s} columns but channels have {n}")
    if x.shape[0] != m_t:
        raise DimensionError(f"pilot has {x.shape[0]} rows but m_t={m_t}")

    # noiseless block matrices H diag(s_k) G^T, stacked over k
    blocks = np.einsum("in,kn,jn->kij", h, s, g)
    sigma2 = noise_variance(blocks, x, noise.snr_db)
    if sigma2 == 0.0:
        return np.ascontiguousarray(np.moveaxis(blocks, 0, 2))

    rng = _rng(noise.seed)
    scale = np.sqrt(sigma2 / 2.0)
    out = np.empty((m_r, m_t, k), dtype=np.complex128)
    for block_idx in range(k):
        z = scale * (
            rng.standard_normal((m_r, t)) + 1j * rng.standard_normal((m_r, t))
        )
        y_block = blocks[block_idx] @ x + z
        out[:, :, block_idx] = y_block @ x.conj().T
    return out


def noiseless_tensor(channels: ChannelPair, s: np.ndarray) -> np.ndarray:
    """CP tensor of the noiseless filtered signal (equals received_tensor at sigma=0)."""
    s = np.asarray(getattr(s, "matrix", s))
    return cp_reconstruct(channels.h, channels.g, s)
