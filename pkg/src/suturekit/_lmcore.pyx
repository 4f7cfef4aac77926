# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled multistart Levenberg-Marquardt on products of 2-spheres.

Same algorithm and signature as ``_lm_fallback.lm_batch``; seeds are processed
one at a time with small dense buffers.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

BACKEND = "cython"


cdef inline void _frame(double* x, double* u, double* v) noexcept nogil:
    cdef int ax = 0
    cdef double ax0 = fabs(x[0]), ax1 = fabs(x[1]), ax2 = fabs(x[2])
    if ax1 < ax0 and ax1 <= ax2:
        ax = 1
    elif ax2 < ax0 and ax2 < ax1:
        ax = 2
    cdef double d = x[ax]
    u[0] = -d * x[0]
    u[1] = -d * x[1]
    u[2] = -d * x[2]
    u[ax] += 1.0
    cdef double nu = sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2])
    u[0] /= nu
    u[1] /= nu
    u[2] /= nu
    v[0] = x[1] * u[2] - x[2] * u[1]
    v[1] = x[2] * u[0] - x[0] * u[2]
    v[2] = x[0] * u[1] - x[1] * u[0]


cdef double _residual(double* x, long* rel, int nrel, double* r) noexcept nogil:
    cdef int k, i
    cdef double dot, cost = 0.0
    cdef double *xa
    cdef double *xb
    cdef double *xc
    for k in range(nrel):
        xa = x + 3 * rel[3 * k]
        xb = x + 3 * rel[3 * k + 1]
        xc = x + 3 * rel[3 * k + 2]
        dot = xa[0] * xc[0] + xa[1] * xc[1] + xa[2] * xc[2]
        for i in range(3):
            r[3 * k + i] = xa[i] + xb[i] - 2.0 * dot * xc[i]
            cost += r[3 * k + i] * r[3 * k + i]
    return cost


cdef void _jacobian(double* x, long* rel, int nrel, int n, double* u, double* v,
                    double* jac) noexcept nogil:
    """jac is (3*nrel) x (2*(n-1)), row-major."""
    cdef int m = 2 * (n - 1)
    cdef int k, i, j, g, col
    cdef int a, b, c
    cdef double dot
    cdef double blk[3][3]
    cdef double *xa
    cdef double *xc
    for i in range(3 * nrel * m):
        jac[i] = 0.0
    for k in range(nrel):
        a = rel[3 * k]
        b = rel[3 * k + 1]
        c = rel[3 * k + 2]
        xa = x + 3 * a
        xc = x + 3 * c
        dot = xa[0] * xc[0] + xa[1] * xc[1] + xa[2] * xc[2]
        # d/dx_a = I - 2 xc xc^T
        if a > 0:
            for i in range(3):
                for j in range(3):
                    blk[i][j] = (1.0 if i == j else 0.0) - 2.0 * xc[i] * xc[j]
            col = 2 * (a - 1)
            for i in range(3):
                jac[(3 * k + i) * m + col] += blk[i][0] * u[3 * a] + blk[i][1] * u[3 * a + 1] + blk[i][2] * u[3 * a + 2]
                jac[(3 * k + i) * m + col + 1] += blk[i][0] * v[3 * a] + blk[i][1] * v[3 * a + 1] + blk[i][2] * v[3 * a + 2]
        # d/dx_b = I
        if b > 0:
            col = 2 * (b - 1)
            for i in range(3):
                jac[(3 * k + i) * m + col] += u[3 * b + i]
                jac[(3 * k + i) * m + col + 1] += v[3 * b + i]
        # d/dx_c = -2 (xc xa^T + dot I)
        if c > 0:
            for i in range(3):
                for j in range(3):
                    blk[i][j] = -2.0 * (xc[i] * xa[j] + (dot if i == j else 0.0))
            col = 2 * (c - 1)
            for i in range(3):
                jac[(3 * k + i) * m + col] += blk[i][0] * u[3 * c] + blk[i][1] * u[3 * c + 1] + blk[i][2] * u[3 * c + 2]
                jac[(3 * k + i) * m + col + 1] += blk[i][0] * v[3 * c] + blk[i][1] * v[3 * c + 1] + blk[i][2] * v[3 * c + 2]


cdef int _cholesky_solve(double* h, double* rhs, int m) noexcept nogil:
    """Solve h y = rhs in place (h overwritten by its Cholesky factor). Returns 0 on success."""
    cdef int i, j, k
    cdef double s
    for j in range(m):
        s = h[j * m + j]
        for k in range(j):
            s -= h[j * m + k] * h[j * m + k]
        if s <= 0.0:
            return 1
        h[j * m + j] = sqrt(s)
        for i in range(j + 1, m):
            s = h[i * m + j]
            for k in range(j):
                s -= h[i * m + k] * h[j * m + k]
            h[i * m + j] = s / h[j * m + j]
    for i in range(m):
        s = rhs[i]
        for k in range(i):
            s -= h[i * m + k] * rhs[k]
        rhs[i] = s / h[i * m + i]
    for i in range(m - 1, -1, -1):
        s = rhs[i]
        for k in range(i + 1, m):
            s -= h[k * m + i] * rhs[k]
        rhs[i] = s / h[i * m + i]
    return 0


def lm_batch(starts, rel, int max_iters=200, double tol=1e-10):
    """Run LM from every start.  Returns (points, residual_norms, iterations)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=3] X = np.array(starts, dtype=np.float64, copy=True, order="C")
    cdef cnp.ndarray[long, ndim=2] R = np.ascontiguousarray(np.asarray(rel, dtype=np.int_).reshape(-1, 3))
    cdef int S = X.shape[0], n = X.shape[1], nrel = R.shape[0]
    cdef int m = 2 * (n - 1) if n > 0 else 0
    cdef int nr = 3 * nrel
    out_cost = np.zeros(S)
    out_it = np.zeros(S, dtype=np.int64)
    cdef double[::1] oc = out_cost
    cdef long long[::1] oit = out_it
    cdef int s, it, i, j, k, g, fail
    cdef double cost, cnew, lam, nrm, maxstep
    cdef double target = (1e-3 * tol) * (1e-3 * tol)

    nrm_view = np.linalg.norm(X, axis=-1, keepdims=True)
    X /= nrm_view
    if nrel == 0 or n <= 1:
        return X, out_cost, out_it

    cdef double[::1] u = np.zeros(3 * n)
    cdef double[::1] v = np.zeros(3 * n)
    cdef double[::1] r = np.zeros(nr)
    cdef double[::1] rt = np.zeros(nr)
    cdef double[::1] jac = np.zeros(nr * m)
    cdef double[::1] h = np.zeros(m * m)
    cdef double[::1] grad = np.zeros(m)
    cdef double[::1] step = np.zeros(m)
    cdef double[::1] trial = np.zeros(3 * n)
    cdef double[:, :, ::1] Xv = X
    cdef long* relp = <long*> R.data
    cdef double* xp

    with nogil:
        for s in range(S):
            xp = &Xv[s, 0, 0]
            cost = _residual(xp, relp, nrel, &r[0])
            lam = 1e-3
            it = 0
            while it < max_iters and cost > target:
                it += 1
                for g in range(n):
                    _frame(xp + 3 * g, &u[3 * g], &v[3 * g])
                _jacobian(xp, relp, nrel, n, &u[0], &v[0], &jac[0])
                for i in range(m):
                    grad[i] = 0.0
                    for k in range(nr):
                        grad[i] += jac[k * m + i] * r[k]
                    for j in range(i + 1):
                        nrm = 0.0
                        for k in range(nr):
                            nrm += jac[k * m + i] * jac[k * m + j]
                        h[i * m + j] = nrm
                        h[j * m + i] = nrm
                    h[i * m + i] += lam
                for i in range(m):
                    step[i] = -grad[i]
                fail = _cholesky_solve(&h[0], &step[0], m)
                if fail:
                    lam *= 4.0
                    if lam > 1e12:
                        break
                    continue
                maxstep = 0.0
                for i in range(3):
                    trial[i] = xp[i]
                for g in range(1, n):
                    for i in range(3):
                        trial[3 * g + i] = xp[3 * g + i] + step[2 * (g - 1)] * u[3 * g + i] + step[2 * (g - 1) + 1] * v[3 * g + i]
                    nrm = sqrt(trial[3 * g] ** 2 + trial[3 * g + 1] ** 2 + trial[3 * g + 2] ** 2)
                    for i in range(3):
                        trial[3 * g + i] /= nrm
                for i in range(m):
                    if fabs(step[i]) > maxstep:
                        maxstep = fabs(step[i])
                cnew = _residual(&trial[0], relp, nrel, &rt[0])
                if cnew < cost:
                    for i in range(3 * n):
                        xp[i] = trial[i]
                    for i in range(nr):
                        r[i] = rt[i]
                    cost = cnew
                    lam = lam / 3.0
                    if lam < 1e-12:
                        lam = 1e-12
                else:
                    if maxstep < 1e-15:
                        break
                    if lam > 1e12:
                        break
                    lam *= 4.0
            oc[s] = sqrt(cost)
            oit[s] = it
    return X, out_cost, out_it
