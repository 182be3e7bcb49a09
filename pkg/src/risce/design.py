"""RIS phase-shift matrix designs.

Two designs are provided for the K x N block schedule (one row per
training block, one column per RIS element):

* ``circuit_design`` derives each entry from the varactor circuit response.
  N resistance and N capacitance values are spread uniformly over an
  operating box, paired index-for-index, and circulated so that block ``k``
  applies the pair schedule right-shifted by ``k - 1`` positions.
* ``dft_design`` is the ideal baseline: unit-amplitude entries from the
  first N columns of the K x K DFT matrix, giving orthogonal columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import CircuitParams, response_matrix
from .errors import DomainError, IdentifiabilityError

CIRCUIT = "circuit"
DFT = "dft"


@dataclass(frozen=True)
class DesignBox:
    """Operating region for the circuit design: R in ohms, C in farads."""

    r_lo: float
    r_hi: float
    c_lo: float
    c_hi: float

    def __post_init__(self):
        if not (math.isfinite(self.r_lo) and math.isfinite(self.r_hi) and self.r_lo < self.r_hi):
            raise DomainError(f"need r_lo < r_hi, got [{self.r_lo}, {self.r_hi}]")
        if not (math.isfinite(self.c_lo) and math.isfinite(self.c_hi) and self.c_lo < self.c_hi):
            raise DomainError(f"need c_lo < c_hi, got [{self.c_lo}, {self.c_hi}]")
        if self.r_lo < 0:
            raise DomainError(f"resistances must be >= 0, got r_lo={self.r_lo}")
        if self.c_lo <= 0:
            raise DomainError(f"capacitances must be > 0, got c_lo={self.c_lo}")


#: Low-dissipation operating box: R in [0.5, 1] ohm, C in [1, 2] pF.
DEFAULT_BOX = DesignBox(r_lo=0.5, r_hi=1.0, c_lo=1e-12, c_hi=2e-12)


@dataclass(frozen=True)
class PhaseShiftMatrix:
    """A K x N complex matrix of per-block, per-element reflection coefficients.

    ``r_ohm`` and ``c_farad`` record the provenance (R, C) matrices for the
    circuit design and are ``None`` for the DFT design.
    """

    matrix: np.ndarray
    kind: str
    r_ohm: np.ndarray | None = None
    c_farad: np.ndarray | None = None

    @property
    def n_blocks(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_elements(self) -> int:
        return self.matrix.shape[1]

    @property
    def amplitude(self) -> np.ndarray:
        return np.abs(self.matrix)

    @property
    def phase(self) -> np.ndarray:
        return np.angle(self.matrix)

    def to_csv(self, path) -> None:
        """Write ``k,n,re,im,amplitude,phase_rad`` rows (1-based k, n)."""
        s = self.matrix
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("k,n,re,im,amplitude,phase_rad\n")
            for k in range(s.shape[0]):
                for n in range(s.shape[1]):
                    z = s[k, n]
                    fh.write(
                        f"{k + 1},{n + 1},{z.real:.17g},{z.imag:.17g},"
                        f"{abs(z):.17g},{math.atan2(z.imag, z.real):.17g}\n"
                    )

    def provenance_to_csv(self, path) -> None:
        """Write ``k,n,r_ohm,c_farad`` rows for the circuit design."""
        if self.r_ohm is None or self.c_farad is None:
            raise DomainError(f"design kind {self.kind!r} has no (R, C) provenance")
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("k,n,r_ohm,c_farad\n")
            for k in range(self.r_ohm.shape[0]):
                for n in range(self.r_ohm.shape[1]):
                    fh.write(
                        f"{k + 1},{n + 1},"
                        f"{self.r_ohm[k, n]:.17g},{self.c_farad[k, n]:.17g}\n"
                    )


def uniform_vector(lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` equally spaced values from ``lo`` to ``hi`` inclusive (``[lo]`` for n=1)."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if not lo <= hi:
        raise DomainError(f"need lo <= hi, got [{lo}, {hi}]")
    return np.linspace(lo, hi, n)


def circshift_rows(base: np.ndarray, k: int) -> np.ndarray:
    """K x N matrix whose row ``k`` is ``base`` right-shifted by ``k`` positions.

    Row 0 equals ``base``; shifts wrap modulo ``len(base)``.
    """
    base = np.asarray(base)
    if base.ndim != 1 or base.size < 1:
        raise DomainError("base must be a non-empty 1-D vector")
    if k < 1:
        raise DomainError(f"need at least one row, got {k}")
    return np.stack([np.roll(base, shift) for shift in range(k)])


def circuit_design(
    params: CircuitParams,
    box: DesignBox,
    k: int,
    n: int,
    allow_underdetermined: bool = False,
) -> PhaseShiftMatrix:
    """Circuit-based phase-shift matrix from circulated uniform (R, C) pairs.

    Row ``k`` applies the same right-shift ``k`` to both the resistance and
    capacitance schedules, so every entry uses a matched ``(r_i, c_i)`` pair
    from the box diagonal.  Requires ``k >= n`` unless
    ``allow_underdetermined`` is set, since fewer blocks than elements make
    the downstream channel estimate non-unique.
    """
    if n < 1 or k < 1:
        raise DomainError(f"need K, N >= 1, got K={k}, N={n}")
    if k < n and not allow_underdetermined:
        raise IdentifiabilityError(
            f"K={k} blocks < N={n} elements leaves the channel estimator "
            "underdetermined; pass allow_underdetermined=True to override"
        )
    r_vec = uniform_vector(box.r_lo, box.r_hi, n)
    c_vec = uniform_vector(box.c_lo, box.c_hi, n)
    r_mat = circshift_rows(r_vec, k)
    c_mat = circshift_rows(c_vec, k)
    amp, phase = response_matrix(params, r_mat, c_mat)
    s = amp * np.exp(1j * phase)
    return PhaseShiftMatrix(matrix=s, kind=CIRCUIT, r_ohm=r_mat, c_farad=c_mat)


def dft_design(k: int, n: int) -> PhaseShiftMatrix:
    """First ``n`` columns of the K x K DFT matrix, ``exp(-2j pi k n / K)``."""
    if n < 1 or k < 1:
        raise DomainError(f"need K, N >= 1, got K={k}, N={n}")
    if k < n:
        raise IdentifiabilityError(f"DFT design requires K >= N, got K={k}, N={n}")
    rows = np.arange(k)[:, None]
    cols = np.arange(n)[None, :]
    s = np.exp(-2j * np.pi * rows * cols / k)
    return PhaseShiftMatrix(matrix=s, kind=DFT)
