"""Varactor equivalent-circuit model of a single RIS element.

Each element is a parallel resonant circuit: an inductance ``l1`` in
parallel with the series branch (inductance ``l2``, tunable capacitance,
effective resistance).  Its reflection coefficient against the free-space
impedance sets the amplitude and phase the element imposes on an incident
wave.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DomainError, SingularityError

# Fraction of |z0| below which a denominator counts as singular.
SINGULARITY_RTOL = 1e-12


@dataclass(frozen=True)
class CircuitParams:
    """Fixed lumped-element constants of the varactor model.

    Parameters
    ----------
    l1, l2 : float
        Inductances in henries.
    z0 : float
        Free-space impedance in ohms.
    freq : float
        Carrier frequency in hertz.
    """

    l1: float
    l2: float
    z0: float
    freq: float

    def __post_init__(self):
        for name in ("l1", "l2", "z0", "freq"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a positive finite number, got {value}")

    @property
    def omega(self) -> float:
        """Angular frequency in rad/s."""
        return 2.0 * math.pi * self.freq


#: Standard varactor example constants at 2.4 GHz.
DEFAULT_CIRCUIT = CircuitParams(l1=2.5e-9, l2=0.7e-9, z0=377.0, freq=2.4e9)


@dataclass(frozen=True)
class VaractorState:
    """Tunable state of one element: effective resistance and capacitance."""

    resistance: float
    capacitance: float

    def __post_init__(self):
        if not (math.isfinite(self.resistance) and self.resistance >= 0):
            raise DomainError(f"resistance must be >= 0, got {self.resistance}")
        if not (math.isfinite(self.capacitance) and self.capacitance > 0):
            raise DomainError(f"capacitance must be > 0, got {self.capacitance}")


def impedance(params: CircuitParams, state: VaractorState) -> complex:
    """Equivalent impedance of the parallel resonant circuit, in ohms.

    ``Z = jwL1 * (jwL2 + 1/(jwC) + R) / (jwL1 + jwL2 + 1/(jwC) + R)``

    Raises
    ------
    SingularityError
        If the parallel-combination denominator magnitude falls below
        ``SINGULARITY_RTOL * z0`` (lossless element driven exactly at
        resonance).
    """
    w = params.omega
    branch = 1j * w * params.l2 + 1.0 / (1j * w * state.capacitance) + state.resistance
    denom = 1j * w * params.l1 + branch
    if abs(denom) < SINGULARITY_RTOL * params.z0:
        raise SingularityError(
            "impedance denominator is singular at "
            f"(R={state.resistance} ohm, C={state.capacitance} F)"
        )
    return (1j * w * params.l1) * branch / denom


def reflection_coefficient(z: complex, z0: float) -> complex:
    """Reflection coefficient ``(z - z0) / (z + z0)`` against a real ``z0 > 0``."""
    if not z0 > 0:
        raise DomainError(f"z0 must be positive, got {z0}")
    if abs(z + z0) < SINGULARITY_RTOL * z0:
        raise SingularityError(f"z + z0 is singular for z={z}")
    return (z - z0) / (z + z0)


def response(params: CircuitParams, state: VaractorState) -> tuple[float, float]:
    """Amplitude and phase shift (radians, in ``(-pi, pi]``) of one element."""
    v = reflection_coefficient(impedance(params, state), params.z0)
    return abs(v), math.atan2(v.imag, v.real)


@dataclass(frozen=True)
class ResponseGrid:
    """Amplitude/phase response sampled over a rectangular (R, C) grid.

    ``amplitude[i, j]`` and ``phase[i, j]`` hold the response at
    ``(r_axis[i], c_axis[j])``.
    """

    r_axis: np.ndarray
    c_axis: np.ndarray
    amplitude: np.ndarray
    phase: np.ndarray

    def min_amplitude_cell(self) -> tuple[float, float, float]:
        """``(r, c, amplitude)`` of the most dissipative grid cell."""
        i, j = np.unravel_index(np.argmin(self.amplitude), self.amplitude.shape)
        return float(self.r_axis[i]), float(self.c_axis[j]), float(self.amplitude[i, j])

    def to_csv(self, path) -> None:
        """Write ``r_ohm,c_farad,amplitude,phase_rad`` rows (r outer, c inner)."""
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("r_ohm,c_farad,amplitude,phase_rad\n")
            for i, r in enumerate(self.r_axis):
                for j, c in enumerate(self.c_axis):
                    fh.write(
                        f"{r:.17g},{c:.17g},"
                        f"{self.amplitude[i, j]:.17g},{self.phase[i, j]:.17g}\n"
                    )


def response_grid(
    params: CircuitParams,
    r_range: tuple[float, float],
    c_range: tuple[float, float],
    nr: int = 500,
    nc: int = 500,
) -> ResponseGrid:
    """Sample the element response on a uniform inclusive grid.

    Parameters
    ----------
    r_range, c_range : (lo, hi)
        Resistance (ohms, ``lo >= 0``) and capacitance (farads, ``lo > 0``)
        ranges; endpoints are included.
    nr, nc : int
        Number of samples per axis, at least 2.
    """
    r_lo, r_hi = r_range
    c_lo, c_hi = c_range
    if nr < 2 or nc < 2:
        raise DomainError(f"grid needs nr, nc >= 2, got {nr}x{nc}")
    if not (r_lo < r_hi and c_lo < c_hi):
        raise DomainError(f"invalid ranges r={r_range}, c={c_range}")
    if r_lo < 0:
        raise DomainError(f"resistance range must be non-negative, got lo={r_lo}")
    if c_lo <= 0:
        raise DomainError(f"capacitance range must be positive, got lo={c_lo}")
    r_axis = np.linspace(r_lo, r_hi, nr)
    c_axis = np.linspace(c_lo, c_hi, nc)
    rr, cc = np.meshgrid(r_axis, c_axis, indexing="ij")
    amp, phase = backend.active().reflection_response(
        params.omega, params.l1, params.l2, params.z0, rr, cc
    )
    return ResponseGrid(r_axis=r_axis, c_axis=c_axis, amplitude=amp, phase=phase)


def response_matrix(
    params: CircuitParams, r: np.ndarray, c: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Elementwise amplitude/phase response for matching (R, C) arrays."""
    r = np.asarray(r, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    if r.shape != c.shape:
        raise DomainError(f"R and C shapes differ: {r.shape} vs {c.shape}")
    if np.any(c <= 0):
        raise DomainError("all capacitances must be > 0")
    if np.any(r < 0):
        raise DomainError("all resistances must be >= 0")
    return backend.active().reflection_response(
        params.omega, params.l1, params.l2, params.z0, r, c
    )
