"""Pure-numpy reference implementations of the hot kernels.

Mirrors the interface of the compiled ``risce._kernels`` extension; the
active implementation is chosen in :mod:`risce.backend`.  The alternating
least-squares sweep here solves each subproblem through the SVD-based
pseudo-inverse, which is the reference formulation; the compiled kernel
uses mathematically equivalent normal-equation solves.
"""

from __future__ import annotations

import numpy as np

from .errors import DivergenceError, IllPosedError, SingularityError
from .tensors import khatri_rao, pseudo_inverse

NAME = "python"
IS_COMPILED = False


def reflection_response(omega, l1, l2, z0, r, c):
    """Amplitude and phase of the element reflection over (R, C) arrays.

    ``r`` and ``c`` are float64 arrays of identical shape; returns a pair
    of arrays of the same shape.  Raises :class:`SingularityError` if any
    impedance or reflection denominator magnitude drops below
    ``1e-12 * z0``.
    """
    r = np.asarray(r, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    tol = 1e-12 * z0
    branch = 1j * omega * l2 + 1.0 / (1j * omega * c) + r
    denom = 1j * omega * l1 + branch
    bad = np.abs(denom) < tol
    if np.any(bad):
        idx = np.argwhere(bad)[0]
        raise SingularityError(
            f"impedance denominator is singular at (R={r[tuple(idx)]} ohm, "
            f"C={c[tuple(idx)]} F)"
        )
    z = (1j * omega * l1) * branch / denom
    refl_denom = z + z0
    bad = np.abs(refl_denom) < tol
    if np.any(bad):
        idx = np.argwhere(bad)[0]
        raise SingularityError(
            f"z + z0 is singular at (R={r[tuple(idx)]} ohm, C={c[tuple(idx)]} F)"
        )
    v = (z - z0) / refl_denom
    return np.abs(v), np.angle(v)


def als_sweeps(y1, y2, s, g0, max_iters, eps):
    """Alternating least-squares factor updates for a CP tensor with known ``s``.

    Parameters
    ----------
    y1 : ndarray, shape (Mr, K*Mt)
        Mode-1 unfolding of the observed tensor.
    y2 : ndarray, shape (Mt, K*Mr)
        Mode-2 unfolding.
    s : ndarray, shape (K, N)
        Known third-mode factor.
    g0 : ndarray, shape (Mt, N)
        Initial guess for the second-mode factor.
    max_iters : int
    eps : float
        Stop once ``|e(i) - e(i-1)| <= eps`` where ``e`` is the squared
        relative reconstruction error of ``y1``.

    Returns
    -------
    (h, g, errors, converged)
    """
    y1_sq = np.linalg.norm(y1) ** 2
    n = s.shape[1]
    g = np.asarray(g0, dtype=np.complex128)
    errors = np.empty(max_iters)
    converged = False
    h = None
    for i in range(max_iters):
        h = y1 @ _pinv_transposed(khatri_rao(s, g), n, i + 1)
        g = y2 @ _pinv_transposed(khatri_rao(s, h), n, i + 1)
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(g))):
            raise DivergenceError(f"non-finite iterate at sweep {i + 1}", i + 1)
        resid = y1 - h @ khatri_rao(s, g).T
        errors[i] = np.linalg.norm(resid) ** 2 / y1_sq
        if i >= 1 and abs(errors[i] - errors[i - 1]) <= eps:
            converged = True
            break
    n_done = i + 1
    return h, g, errors[:n_done].copy(), converged


def _pinv_transposed(a, n, iteration):
    """Pseudo-inverse of ``a.T``, guarding against a rank-deficient factor."""
    sig = np.linalg.svd(a, compute_uv=False)
    if sig[0] == 0.0 or sig[-1] <= 1e-12 * max(a.shape) * sig[0]:
        raise IllPosedError(
            f"Khatri-Rao factor is rank deficient (< {n}) at sweep {iteration}"
        )
    return pseudo_inverse(a.T)
