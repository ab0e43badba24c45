# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: dot product, symmetric rank-1 update, cyclic Jacobi."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def dot(const double[::1] x, const double[::1] y):
    cdef Py_ssize_t k, n = x.shape[0]
    cdef double acc = 0.0
    if y.shape[0] != n:
        raise ValueError("incompatible dimensions")
    for k in range(n):
        acc += x[k] * y[k]
    return acc


def rank1_update(double[:, ::1] acc, const double[::1] x, double weight):
    """In place: acc += weight * x x^T, mirrored so acc stays exactly symmetric."""
    cdef Py_ssize_t r, c, n = x.shape[0]
    cdef double wr, v
    for r in range(n):
        wr = weight * x[r]
        acc[r, r] += wr * x[r]
        for c in range(r + 1, n):
            v = acc[r, c] + wr * x[c]
            acc[r, c] = v
            acc[c, r] = v


cdef double _off_norm(double[:, ::1] a) nogil:
    cdef Py_ssize_t p, q, n = a.shape[0]
    cdef double s = 0.0
    for p in range(n):
        for q in range(p + 1, n):
            s += a[p, q] * a[p, q]
    return sqrt(2.0 * s)


def jacobi_eigh(const double[:, ::1] matrix, double tol, int max_sweeps):
    """Cyclic Jacobi on a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps, off_norm, converged)`` with
    eigenvectors stored as columns, in the order the diagonal ends up in.
    """
    cdef Py_ssize_t n = matrix.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a_arr = np.array(matrix, dtype=np.float64, order="C")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v_arr = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep = 0
    cdef double off, apq, g, h, theta, t, c, s, akp, akq
    cdef bint converged = False

    with nogil:
        off = _off_norm(a)
        while True:
            if off < tol:
                converged = True
                break
            if sweep >= max_sweeps:
                break
            sweep += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    g = 100.0 * fabs(apq)
                    if sweep > 4 and fabs(a[p, p]) + g == fabs(a[p, p]) and fabs(a[q, q]) + g == fabs(a[q, q]):
                        a[p, q] = 0.0
                        a[q, p] = 0.0
                        continue
                    h = a[q, q] - a[p, p]
                    if fabs(h) + g == fabs(h):
                        t = apq / h
                    else:
                        theta = 0.5 * h / apq
                        t = 1.0 / (fabs(theta) + sqrt(1.0 + theta * theta))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    for k in range(n):
                        if k == p or k == q:
                            continue
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[k, q] = s * akp + c * akq
                        a[p, k] = a[k, p]
                        a[q, k] = a[k, q]
                    a[p, p] -= t * apq
                    a[q, q] += t * apq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for k in range(n):
                        akp = v[k, p]
                        akq = v[k, q]
                        v[k, p] = c * akp - s * akq
                        v[k, q] = s * akp + c * akq
            off = _off_norm(a)

    return np.diagonal(a_arr).copy(), v_arr, sweep, off, converged
