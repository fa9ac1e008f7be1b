# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  ``_pykernels`` mirrors every function here."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def gibbs_sweep(const int[::1] doc, const int[::1] word, int[::1] z,
                long long[:, ::1] n_dt, long long[:, ::1] n_wt, long long[::1] n_t,
                double alpha, double beta, const double[::1] uniforms):
    cdef Py_ssize_t V = n_wt.shape[0]
    cdef Py_ssize_t T = n_wt.shape[1]
    cdef Py_ssize_t N = z.shape[0]
    cdef double vbeta = V * beta
    cdef double total, u
    cdef Py_ssize_t i, t, d, w, k
    cdef double[::1] cum = np.zeros(T, dtype=np.float64)
    for i in range(N):
        d = doc[i]
        w = word[i]
        k = z[i]
        n_dt[d, k] -= 1
        n_wt[w, k] -= 1
        n_t[k] -= 1
        total = 0.0
        for t in range(T):
            total += (<double>n_dt[d, t] + alpha) * (<double>n_wt[w, t] + beta) / (<double>n_t[t] + vbeta)
            cum[t] = total
        u = uniforms[i] * total
        k = T - 1
        for t in range(T):
            if cum[t] > u:
                k = t
                break
        z[i] = <int>k
        n_dt[d, k] += 1
        n_wt[w, k] += 1
        n_t[k] += 1


def winnow_pass(const long long[::1] indptr, const int[::1] indices, const signed char[::1] y,
                double[:, ::1] w_pos, double[:, ::1] w_neg, unsigned char[:, ::1] touched,
                double alpha, double beta, double theta_plus, double theta_minus):
    cdef Py_ssize_t r, c, q, f, lo, hi
    cdef Py_ssize_t n = y.shape[0]
    cdef double s
    cdef long updates = 0
    for r in range(n):
        lo = indptr[r]
        hi = indptr[r + 1]
        for c in range(2):
            for q in range(lo, hi):
                touched[c, indices[q]] = 1
            s = 0.0
            if hi > lo:
                for q in range(lo, hi):
                    f = indices[q]
                    s += w_pos[c, f] - w_neg[c, f]
                s = s / <double>(hi - lo)
            if y[r] == c and s < theta_plus:
                for q in range(lo, hi):
                    f = indices[q]
                    w_pos[c, f] *= alpha
                    w_neg[c, f] *= beta
                updates += 1
            elif y[r] != c and s > theta_minus:
                for q in range(lo, hi):
                    f = indices[q]
                    w_pos[c, f] *= beta
                    w_neg[c, f] *= alpha
                updates += 1
    return updates


cdef void _kernel_row(const long long[::1] indptr, const int[::1] indices, Py_ssize_t i,
                      double[::1] mark, double[::1] out) noexcept nogil:
    cdef Py_ssize_t q, t, n = out.shape[0]
    cdef double acc
    for q in range(indptr[i], indptr[i + 1]):
        mark[indices[q]] = 1.0
    for t in range(n):
        acc = 0.0
        for q in range(indptr[t], indptr[t + 1]):
            acc += mark[indices[q]]
        out[t] = acc
    for q in range(indptr[i], indptr[i + 1]):
        mark[indices[q]] = 0.0


def smo_solve(const long long[::1] indptr, const int[::1] indices, const double[::1] y,
              double C, double eps, long long max_iter, long long epoch):
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t width = (int(np.max(indices)) + 1) if indices.shape[0] else 1
    cdef double[::1] a = np.zeros(n)
    cdef double[::1] G = -np.ones(n)
    cdef double[::1] diag = np.empty(n)
    cdef double[::1] Ki = np.empty(n)
    cdef double[::1] Kj = np.empty(n)
    cdef double[::1] mark = np.zeros(width)
    cdef double tau = 1e-12
    cdef double gmax, gmax2, yg, grad_diff, quad, obj, obj_min, delta, bi, bj, ai, aj, f
    cdef Py_ssize_t t, i, j
    cdef long long it = 0
    cdef bint is_up, is_low
    trace = [0.0]
    for t in range(n):
        diag[t] = <double>(indptr[t + 1] - indptr[t])
    while it < max_iter:
        gmax = -INFINITY
        gmax2 = -INFINITY
        i = -1
        for t in range(n):
            yg = y[t] * G[t]
            is_up = (y[t] > 0 and a[t] < C) or (y[t] < 0 and a[t] > 0)
            is_low = (y[t] > 0 and a[t] > 0) or (y[t] < 0 and a[t] < C)
            if is_up and -yg >= gmax:
                gmax = -yg
                i = t
            if is_low and yg >= gmax2:
                gmax2 = yg
        if i < 0 or gmax2 == -INFINITY:
            break
        if gmax + gmax2 < eps:
            break
        _kernel_row(indptr, indices, i, mark, Ki)
        j = -1
        obj_min = INFINITY
        for t in range(n):
            is_low = (y[t] > 0 and a[t] > 0) or (y[t] < 0 and a[t] < C)
            if not is_low:
                continue
            grad_diff = gmax + y[t] * G[t]
            if grad_diff > 0:
                quad = diag[i] + diag[t] - 2.0 * Ki[t]
                if not quad > 0:
                    quad = tau
                obj = -(grad_diff * grad_diff) / quad
                if obj <= obj_min:
                    obj_min = obj
                    j = t
        if j < 0:
            break
        _kernel_row(indptr, indices, j, mark, Kj)
        grad_diff = gmax + y[j] * G[j]
        quad = diag[i] + diag[j] - 2.0 * Ki[j]
        if not quad > 0:
            quad = tau
        delta = grad_diff / quad
        bi = C - a[i] if y[i] > 0 else a[i]
        bj = a[j] if y[j] > 0 else C - a[j]
        delta = min(delta, bi, bj)
        ai = a[i] + y[i] * delta
        aj = a[j] - y[j] * delta
        if delta == bi:
            ai = C if y[i] > 0 else 0.0
        if delta == bj:
            aj = 0.0 if y[j] > 0 else C
        a[i] = ai
        a[j] = aj
        for t in range(n):
            G[t] += y[t] * delta * (Ki[t] - Kj[t])
        it += 1
        if it % epoch == 0:
            trace.append(_dual_objective(a, G))
    trace.append(_dual_objective(a, G))
    return np.asarray(a), np.asarray(G), it, trace


cdef double _dual_objective(double[::1] a, double[::1] G):
    cdef Py_ssize_t t
    cdef double acc = 0.0
    for t in range(a.shape[0]):
        acc += a[t] * (G[t] - 1.0)
    return 0.5 * acc
