"""Numpy fallback for the compiled kernels; same signatures, same rotation order."""

import math

import numpy as np


def dot(x, y):
    if x.shape[0] != y.shape[0]:
        raise ValueError("incompatible dimensions")
    # elementwise products then a plain sum; BLAS dot may fuse and leave residue
    return float(np.sum(x * y))


def rank1_update(acc, x, weight):
    wx = weight * x
    upper = np.triu(np.outer(wx, x))
    acc += upper + np.triu(upper, 1).T


def _off_norm(a):
    return math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))


def jacobi_eigh(matrix, tol, max_sweeps):
    a = np.array(matrix, dtype=np.float64, order="C")
    n = a.shape[0]
    v = np.eye(n)
    sweep = 0
    off = _off_norm(a)
    while off >= tol and sweep < max_sweeps:
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                g = 100.0 * abs(apq)
                app, aqq = a[p, p], a[q, q]
                if sweep > 4 and abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
                    a[p, q] = a[q, p] = 0.0
                    continue
                h = aqq - app
                if abs(h) + g == abs(h):
                    t = apq / h
                else:
                    theta = 0.5 * h / apq
                    t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                newp = c * colp - s * colq
                newq = s * colp + c * colq
                a[:, p] = newp
                a[:, q] = newq
                a[p, :] = newp
                a[q, :] = newq
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        off = _off_norm(a)
    return np.diagonal(a).copy(), v, sweep, off, off < tol
