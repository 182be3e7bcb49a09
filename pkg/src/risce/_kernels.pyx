# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: element reflection response and the ALS sweep.

Interface mirrors :mod:`risce._kernels_py`.  The least-squares subproblems
are solved through normal equations with a complex Cholesky factorization,
which equals the pseudo-inverse solution whenever the Khatri-Rao factor has
full column rank (the well-posed regime; rank deficiency raises).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, fabs, isfinite, sqrt

from .errors import DivergenceError, IllPosedError, SingularityError

NAME = "ext"
IS_COMPILED = True


def reflection_response(double omega, double l1, double l2, double z0, r, c):
    """Amplitude and phase of the element reflection over (R, C) arrays."""
    r_arr = np.ascontiguousarray(r, dtype=np.float64)
    c_arr = np.ascontiguousarray(c, dtype=np.float64)
    if r_arr.shape != c_arr.shape:
        raise ValueError("R and C arrays must have identical shapes")
    shape = r_arr.shape
    amp = np.empty(r_arr.size, dtype=np.float64)
    phase = np.empty(r_arr.size, dtype=np.float64)

    cdef double[::1] rv = r_arr.reshape(-1)
    cdef double[::1] cv = c_arr.reshape(-1)
    cdef double[::1] av = amp
    cdef double[::1] pv = phase
    cdef double tol = 1e-12 * z0
    cdef double wl1 = omega * l1
    cdef double wl2 = omega * l2
    cdef Py_ssize_t i, n = rv.shape[0]
    cdef Py_ssize_t bad_imp = -1, bad_ref = -1
    cdef double complex branch, den, z, v

    with nogil:
        for i in range(n):
            branch = rv[i] + 1j * (wl2 - 1.0 / (omega * cv[i]))
            den = branch + 1j * wl1
            if abs(den) < tol:
                bad_imp = i
                break
            z = 1j * wl1 * branch / den
            if abs(z + z0) < tol:
                bad_ref = i
                break
            v = (z - z0) / (z + z0)
            av[i] = abs(v)
            pv[i] = atan2(v.imag, v.real)
    if bad_imp >= 0:
        raise SingularityError(
            f"impedance denominator is singular at (R={rv[bad_imp]} ohm, "
            f"C={cv[bad_imp]} F)"
        )
    if bad_ref >= 0:
        raise SingularityError(
            f"z + z0 is singular at (R={rv[bad_ref]} ohm, C={cv[bad_ref]} F)"
        )
    return amp.reshape(shape), phase.reshape(shape)


cdef void _khatri_rao(double complex[:, ::1] a, double complex[:, ::1] b,
                      double complex[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t k, m, n
    cdef Py_ssize_t ka = a.shape[0], mb = b.shape[0], nc = a.shape[1]
    for k in range(ka):
        for m in range(mb):
            for n in range(nc):
                out[k * mb + m, n] = a[k, n] * b[m, n]


cdef void _gram(double complex[:, ::1] a, double complex[:, ::1] w) noexcept nogil:
    # w = a^H a (Hermitian)
    cdef Py_ssize_t r, p, q
    cdef Py_ssize_t rows = a.shape[0], n = a.shape[1]
    cdef double complex acc
    for p in range(n):
        for q in range(p, n):
            acc = 0
            for r in range(rows):
                acc = acc + a[r, p].conjugate() * a[r, q]
            w[p, q] = acc
            w[q, p] = acc.conjugate()


cdef void _rhs(double complex[:, ::1] y, double complex[:, ::1] a,
               double complex[:, ::1] b) noexcept nogil:
    # b = y @ conj(a)
    cdef Py_ssize_t m, r, n
    cdef Py_ssize_t rows = y.shape[0], inner = y.shape[1], n_cols = a.shape[1]
    cdef double complex acc
    for m in range(rows):
        for n in range(n_cols):
            acc = 0
            for r in range(inner):
                acc = acc + y[m, r] * a[r, n].conjugate()
            b[m, n] = acc


cdef Py_ssize_t _cholesky(double complex[:, ::1] w, double complex[:, ::1] l) noexcept nogil:
    # w = l @ l^H with positive real diagonal; returns failing column or -1.
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double d, dmax = 0.0
    cdef double complex acc
    for j in range(n):
        if w[j, j].real > dmax:
            dmax = w[j, j].real
    for j in range(n):
        d = w[j, j].real
        for k in range(j):
            d -= l[j, k].real * l[j, k].real + l[j, k].imag * l[j, k].imag
        if not (d > dmax * 1e-30) or not isfinite(d):
            return j
        l[j, j] = sqrt(d)
        for i in range(j + 1, n):
            acc = w[i, j]
            for k in range(j):
                acc = acc - l[i, k] * l[j, k].conjugate()
            l[i, j] = acc / l[j, j].real
    return -1


cdef void _solve_rows(double complex[:, ::1] l, double complex[:, ::1] b,
                      double complex[:, ::1] x, double complex[::1] tmp) noexcept nogil:
    # Solve w @ x[m, :]^T = b[m, :]^T for every row m, given w = l @ l^H.
    cdef Py_ssize_t rows = b.shape[0], n = l.shape[0]
    cdef Py_ssize_t m, i, k
    cdef double complex acc
    for m in range(rows):
        for i in range(n):
            acc = b[m, i]
            for k in range(i):
                acc = acc - l[i, k] * tmp[k]
            tmp[i] = acc / l[i, i].real
        for i in range(n - 1, -1, -1):
            acc = tmp[i]
            for k in range(i + 1, n):
                acc = acc - l[k, i].conjugate() * x[m, k]
            x[m, i] = acc / l[i, i].real


cdef double _residual_sq(double complex[:, ::1] y, double complex[:, ::1] h,
                         double complex[:, ::1] a) noexcept nogil:
    # || y - h @ a^T ||_F^2
    cdef Py_ssize_t rows = y.shape[0], cols = y.shape[1], n = h.shape[1]
    cdef Py_ssize_t m, r, k
    cdef double complex acc
    cdef double total = 0.0
    for m in range(rows):
        for r in range(cols):
            acc = y[m, r]
            for k in range(n):
                acc = acc - h[m, k] * a[r, k]
            total += acc.real * acc.real + acc.imag * acc.imag
    return total


cdef bint _all_finite(double complex[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t i, j
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if not (isfinite(a[i, j].real) and isfinite(a[i, j].imag)):
                return False
    return True


def als_sweeps(y1, y2, s, g0, int max_iters, double eps):
    """Alternating least-squares factor updates for a CP tensor with known ``s``.

    Same contract as :func:`risce._kernels_py.als_sweeps`.
    """
    y1_arr = np.ascontiguousarray(y1, dtype=np.complex128)
    y2_arr = np.ascontiguousarray(y2, dtype=np.complex128)
    s_arr = np.ascontiguousarray(s, dtype=np.complex128)
    g_arr = np.array(g0, dtype=np.complex128, order="C", copy=True)

    cdef Py_ssize_t mr = y1_arr.shape[0], mt = y2_arr.shape[0]
    cdef Py_ssize_t kk = s_arr.shape[0], n = s_arr.shape[1]

    h_arr = np.empty((mr, n), dtype=np.complex128)
    a1 = np.empty((kk * mt, n), dtype=np.complex128)
    a2 = np.empty((kk * mr, n), dtype=np.complex128)
    w = np.empty((n, n), dtype=np.complex128)
    lo = np.zeros((n, n), dtype=np.complex128)
    b1 = np.empty((mr, n), dtype=np.complex128)
    b2 = np.empty((mt, n), dtype=np.complex128)
    tmp = np.empty(n, dtype=np.complex128)
    errors = np.empty(max_iters, dtype=np.float64)

    cdef double complex[:, ::1] y1v = y1_arr, y2v = y2_arr, sv = s_arr
    cdef double complex[:, ::1] gv = g_arr, hv = h_arr
    cdef double complex[:, ::1] a1v = a1, a2v = a2, wv = w, lv = lo
    cdef double complex[:, ::1] b1v = b1, b2v = b2
    cdef double complex[::1] tmpv = tmp
    cdef double[::1] ev = errors

    cdef double y1_sq = 0.0
    cdef Py_ssize_t i, j, it
    cdef Py_ssize_t fail = -1
    cdef bint converged = False, diverged = False
    cdef Py_ssize_t n_done = 0

    with nogil:
        for i in range(mr):
            for j in range(y1v.shape[1]):
                y1_sq += y1v[i, j].real * y1v[i, j].real + y1v[i, j].imag * y1v[i, j].imag

        _khatri_rao(sv, gv, a1v)
        for it in range(max_iters):
            # h update from the current g
            _gram(a1v, wv)
            fail = _cholesky(wv, lv)
            if fail >= 0:
                break
            _rhs(y1v, a1v, b1v)
            _solve_rows(lv, b1v, hv, tmpv)
            # g update from the fresh h
            _khatri_rao(sv, hv, a2v)
            _gram(a2v, wv)
            fail = _cholesky(wv, lv)
            if fail >= 0:
                break
            _rhs(y2v, a2v, b2v)
            _solve_rows(lv, b2v, gv, tmpv)
            if not (_all_finite(hv) and _all_finite(gv)):
                diverged = True
                n_done = it + 1
                break
            _khatri_rao(sv, gv, a1v)
            ev[it] = _residual_sq(y1v, hv, a1v) / y1_sq
            n_done = it + 1
            if it >= 1 and fabs(ev[it] - ev[it - 1]) <= eps:
                converged = True
                break

    if fail >= 0:
        raise IllPosedError(
            f"Khatri-Rao factor is rank deficient (column {fail}) at sweep {n_done + 1}"
        )
    if diverged:
        raise DivergenceError(f"non-finite iterate at sweep {n_done}", n_done)
    return h_arr, g_arr, errors[:n_done].copy(), bool(converged)
