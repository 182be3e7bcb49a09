"""Dense third-order complex tensor algebra.

Tensors are plain ``numpy`` arrays of shape ``(I, J, K)``.  The unfolding
column ordering is pinned to the Khatri-Rao convention used throughout the
library: for a CP tensor with factors ``(H, G, S)``,

* mode 1: ``I x (K*J)`` with column index ``k*J + j``, equal to ``H @ khatri_rao(S, G).T``
* mode 2: ``J x (K*I)`` with column index ``k*I + i``, equal to ``G @ khatri_rao(S, H).T``
* mode 3: ``K x (J*I)`` with column index ``j*I + i``, equal to ``S @ khatri_rao(G, H).T``

All functions are pure and never mutate their inputs.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, DomainError

_MODE_AXES = {1: (0, 2, 1), 2: (1, 2, 0), 3: (2, 1, 0)}


def khatri_rao(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Column-wise Kronecker product of ``a`` (K x N) and ``b`` (M x N).

    Output row ``k*M + m`` holds ``a[k, n] * b[m, n]``, i.e. column ``n``
    equals ``kron(a[:, n], b[:, n])``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise DimensionError("khatri_rao expects 2-D matrices")
    if a.shape[1] != b.shape[1]:
        raise DimensionError(
            f"khatri_rao column mismatch: {a.shape[1]} != {b.shape[1]}"
        )
    return (a[:, None, :] * b[None, :, :]).reshape(a.shape[0] * b.shape[0], a.shape[1])


def unfold(tensor: np.ndarray, mode: int) -> np.ndarray:
    """Mode-``mode`` unfolding of a third-order tensor."""
    t = np.asarray(tensor)
    if t.ndim != 3:
        raise DimensionError(f"expected a third-order tensor, got ndim={t.ndim}")
    if mode not in _MODE_AXES:
        raise DomainError(f"mode must be 1, 2 or 3, got {mode}")
    axes = _MODE_AXES[mode]
    return t.transpose(axes).reshape(t.shape[axes[0]], -1)


def fold(matrix: np.ndarray, mode: int, dims: tuple[int, int, int]) -> np.ndarray:
    """Inverse of :func:`unfold` for the given tensor dimensions."""
    m = np.asarray(matrix)
    if mode not in _MODE_AXES:
        raise DomainError(f"mode must be 1, 2 or 3, got {mode}")
    axes = _MODE_AXES[mode]
    permuted_shape = tuple(dims[ax] for ax in axes)
    if m.shape != (permuted_shape[0], permuted_shape[1] * permuted_shape[2]):
        raise DimensionError(
            f"cannot fold shape {m.shape} into dims {dims} along mode {mode}"
        )
    # invert the transpose applied by unfold()
    inverse = np.argsort(axes)
    return m.reshape(permuted_shape).transpose(inverse)


def cp_reconstruct(h: np.ndarray, g: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Rank-N CP tensor ``T[i, j, k] = sum_n h[i, n] g[j, n] s[k, n]``.

    Frontal slice ``k`` equals ``h @ diag(s[k, :]) @ g.T``.
    """
    h = np.asarray(h)
    g = np.asarray(g)
    s = np.asarray(s)
    if not (h.ndim == g.ndim == s.ndim == 2):
        raise DimensionError("cp_reconstruct expects 2-D factor matrices")
    if not (h.shape[1] == g.shape[1] == s.shape[1]):
        raise DimensionError(
            "factor column counts differ: "
            f"{h.shape[1]}, {g.shape[1]}, {s.shape[1]}"
        )
    return np.einsum("in,jn,kn->ijk", h, g, s)


def pseudo_inverse(a: np.ndarray, rtol: float | None = None) -> np.ndarray:
    """Moore-Penrose inverse via SVD.

    Singular values below ``rtol * sigma_max`` are treated as zero.  The
    default ``rtol`` is ``1e-12 * max(a.shape)``.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise DimensionError("pseudo_inverse expects a 2-D matrix")
    if rtol is None:
        rtol = 1e-12 * max(a.shape)
    u, sig, vh = np.linalg.svd(a, full_matrices=False)
    if sig.size == 0 or sig[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=a.dtype)
    keep = sig > rtol * sig[0]
    inv = np.zeros_like(sig)
    inv[keep] = 1.0 / sig[keep]
    return (vh.conj().T * inv) @ u.conj().T


def matrix_rank(a: np.ndarray, rtol: float | None = None) -> int:
    """Numerical rank with the same cutoff convention as :func:`pseudo_inverse`."""
    a = np.asarray(a)
    if rtol is None:
        rtol = 1e-12 * max(a.shape)
    sig = np.linalg.svd(a, compute_uv=False)
    if sig.size == 0 or sig[0] == 0:
        return 0
    return int(np.sum(sig > rtol * sig[0]))


def tensor_to_file(tensor: np.ndarray, path) -> None:
    """Debug dump: ASCII dims header followed by one ``re im`` pair per element."""
    t = np.asarray(tensor, dtype=complex)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(" ".join(str(d) for d in t.shape) + "\n")
        flat = t.reshape(-1)
        fh.write(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in flat) + "\n")


def tensor_from_file(path) -> np.ndarray:
    """Read a tensor written by :func:`tensor_to_file`."""
    with open(path, encoding="ascii") as fh:
        dims = tuple(int(x) for x in fh.readline().split())
        vals = [float(x) for x in fh.readline().split()]
    flat = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return flat.reshape(dims)
