"""Pure-Python versions of the inner loops in ``_kernels.pyx``.

Both backends perform the same floating-point operations in the same
order, so seeded runs give identical Gibbs assignments and Winnow weights
whichever one is loaded.  Keep the two files in step.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp


def gibbs_sweep(doc, word, z, n_dt, n_wt, n_t, alpha, beta, uniforms):
    """One collapsed Gibbs pass over every token, in place.

    ``n_wt`` is the word-by-topic count table (V x T).
    """
    V, T = n_wt.shape
    vbeta = V * beta
    dt = n_dt.tolist()
    wt = n_wt.tolist()
    tt = n_t.tolist()
    zz = z.tolist()
    cum = [0.0] * T
    for i, (d, w, u) in enumerate(zip(doc.tolist(), word.tolist(), uniforms.tolist())):
        k = zz[i]
        drow = dt[d]
        wrow = wt[w]
        drow[k] -= 1
        wrow[k] -= 1
        tt[k] -= 1
        total = 0.0
        for t in range(T):
            total += (drow[t] + alpha) * (wrow[t] + beta) / (tt[t] + vbeta)
            cum[t] = total
        u = u * total
        k = T - 1
        for t in range(T):
            if cum[t] > u:
                k = t
                break
        zz[i] = k
        drow[k] += 1
        wrow[k] += 1
        tt[k] += 1
    z[:] = zz
    n_dt[:] = dt
    n_wt[:] = wt
    n_t[:] = tt


def winnow_pass(indptr, indices, y, w_pos, w_neg, touched,
                alpha, beta, theta_plus, theta_minus):
    """One Balanced Winnow pass in input order; returns the update count."""
    wp = w_pos.tolist()
    wn = w_neg.tolist()
    ptr = indptr.tolist()
    idx = indices.tolist()
    updates = 0
    for r, label in enumerate(y.tolist()):
        active = idx[ptr[r]:ptr[r + 1]]
        for c in (0, 1):
            p, n = wp[c], wn[c]
            for f in active:
                touched[c, f] = 1
            if active:
                s = 0.0
                for f in active:
                    s += p[f] - n[f]
                s = s / len(active)
            else:
                s = 0.0
            if label == c and s < theta_plus:
                for f in active:
                    p[f] *= alpha
                    n[f] *= beta
                updates += 1
            elif label != c and s > theta_minus:
                for f in active:
                    p[f] *= beta
                    n[f] *= alpha
                updates += 1
    w_pos[:] = wp
    w_neg[:] = wn
    return updates


def _last_argmax(values):
    return len(values) - 1 - int(np.argmax(values[::-1]))


def _last_argmin(values):
    return len(values) - 1 - int(np.argmin(values[::-1]))


def _kernel_row(X, indptr, indices, i, width):
    row = np.zeros(width)
    row[indices[indptr[i]:indptr[i + 1]]] = 1.0
    return X @ row


def smo_solve(indptr, indices, y, C, eps, max_iter, epoch):
    """SMO with second-order working-set selection for a binary linear SVM.

    Minimises ``0.5 a'Qa - sum(a)`` subject to ``0 <= a <= C`` and
    ``y'a = 0`` with ``Q_ij = y_i y_j |A_i & A_j|``.  Returns
    ``(alpha, grad, iterations, trace)``; ``trace`` holds the objective at
    start, every ``epoch`` iterations, and at exit.
    """
    n = len(y)
    width = int(indices.max()) + 1 if len(indices) else 1
    X = sp.csr_matrix((np.ones(len(indices)), indices, indptr), shape=(n, width))
    diag = np.diff(indptr).astype(np.float64)
    a = np.zeros(n)
    G = -np.ones(n)
    tau = 1e-12
    trace = [0.0]
    it = 0
    while it < max_iter:
        yG = y * G
        up = ((y > 0) & (a < C)) | ((y < 0) & (a > 0))
        low = ((y > 0) & (a > 0)) | ((y < 0) & (a < C))
        if not up.any() or not low.any():
            break
        cand = np.where(up, -yG, -np.inf)
        i = _last_argmax(cand)
        gmax = cand[i]
        gmax2 = np.max(np.where(low, yG, -np.inf))
        if gmax + gmax2 < eps:
            break
        Ki = _kernel_row(X, indptr, indices, i, width)
        grad_diff = gmax + yG
        quad = diag[i] + diag - 2.0 * Ki
        quad = np.where(quad > 0, quad, tau)
        obj = np.where(low & (grad_diff > 0), -(grad_diff * grad_diff) / quad, np.inf)
        j = _last_argmin(obj)
        if not np.isfinite(obj[j]):
            break
        Kj = _kernel_row(X, indptr, indices, j, width)
        delta = grad_diff[j] / quad[j]
        bound_i = C - a[i] if y[i] > 0 else a[i]
        bound_j = a[j] if y[j] > 0 else C - a[j]
        delta = min(delta, bound_i, bound_j)
        ai = a[i] + y[i] * delta
        aj = a[j] - y[j] * delta
        if delta == bound_i:
            ai = C if y[i] > 0 else 0.0
        if delta == bound_j:
            aj = 0.0 if y[j] > 0 else C
        a[i] = ai
        a[j] = aj
        G += y * delta * (Ki - Kj)
        it += 1
        if it % epoch == 0:
            trace.append(0.5 * float(np.dot(a, G - 1.0)))
    trace.append(0.5 * float(np.dot(a, G - 1.0)))
    return a, G, it, trace
