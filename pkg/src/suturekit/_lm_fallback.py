"""Pure numpy multistart Levenberg-Marquardt on products of 2-spheres.

Batched over starting points: every array carries a leading seed axis.
The unknowns are unit 3-vectors (traceless unit quaternions); row 0 is pinned.
Each relation (a, b, c) asks for  x_b = R_c(x_a)  where R_c is the rotation by pi
about x_c, i.e. the residual  x_a + x_b - 2 (x_a . x_c) x_c.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def tangent_frames(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal (u, v) spanning the tangent plane at each unit vector of ``x`` (..., 3)."""
    ax = np.argmin(np.abs(x), axis=-1)
    e = np.zeros_like(x)
    np.put_along_axis(e, ax[..., None], 1.0, axis=-1)
    u = e - np.sum(e * x, axis=-1, keepdims=True) * x
    u /= np.linalg.norm(u, axis=-1, keepdims=True)
    v = np.cross(x, u)
    return u, v


def residuals(x: np.ndarray, rel: np.ndarray) -> np.ndarray:
    """(S, N, 3) points -> (S, 3R) residual vectors."""
    xa = x[:, rel[:, 0]]
    xb = x[:, rel[:, 1]]
    xc = x[:, rel[:, 2]]
    dot = np.sum(xa * xc, axis=-1, keepdims=True)
    r = xa + xb - 2.0 * dot * xc
    return r.reshape(x.shape[0], -1)


def jacobian(x: np.ndarray, rel: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Residual Jacobian in tangent coordinates of generators 1..N-1: (S, 3R, 2(N-1))."""
    s, n, _ = x.shape
    nrel = rel.shape[0]
    full = np.zeros((s, nrel, 3, n, 3))
    eye = np.eye(3)
    for k, (a, b, c) in enumerate(rel):
        xa = x[:, a]
        xc = x[:, c]
        dot = np.sum(xa * xc, axis=-1)[:, None, None]
        full[:, k, :, a, :] += eye - 2.0 * xc[:, :, None] * xc[:, None, :]
        full[:, k, :, b, :] += eye
        full[:, k, :, c, :] += -2.0 * (xc[:, :, None] * xa[:, None, :] + dot * eye)
    full = full[:, :, :, 1:, :]  # drop pinned generator
    ju = np.einsum("skrgd,sgd->skrg", full, u[:, 1:])
    jv = np.einsum("skrgd,sgd->skrg", full, v[:, 1:])
    jac = np.stack([ju, jv], axis=-1)  # s, k, r, g, 2
    return jac.reshape(s, 3 * nrel, 2 * (n - 1))


def retract(x: np.ndarray, step: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    s, n, _ = x.shape
    d = step.reshape(s, n - 1, 2)
    y = x.copy()
    y[:, 1:] += d[..., 0:1] * u[:, 1:] + d[..., 1:2] * v[:, 1:]
    y[:, 1:] /= np.linalg.norm(y[:, 1:], axis=-1, keepdims=True)
    return y


def lm_batch(starts, rel, max_iters: int = 200, tol: float = 1e-10):
    """Run LM from every start.  Returns (points, residual_norms, iterations)."""
    x = np.array(starts, dtype=np.float64, copy=True)
    rel = np.asarray(rel, dtype=np.int64).reshape(-1, 3)
    s, n, _ = x.shape
    x /= np.linalg.norm(x, axis=-1, keepdims=True)
    iters = np.zeros(s, dtype=np.int64)
    if rel.shape[0] == 0 or n == 1:
        return x, np.zeros(s), iters
    m = 2 * (n - 1)
    lam = np.full(s, 1e-3)
    r = residuals(x, rel)
    cost = np.sum(r * r, axis=1)
    active = np.ones(s, dtype=bool)
    target = (1e-3 * tol) ** 2
    eye = np.eye(m)
    for _ in range(max_iters):
        active &= cost > target
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        xs = x[idx]
        u, v = tangent_frames(xs)
        jac = jacobian(xs, rel, u, v)
        g = np.einsum("skm,sk->sm", jac, r[idx])
        h = np.einsum("skm,skl->sml", jac, jac)
        lam_i = lam[idx]
        step = -np.linalg.solve(h + lam_i[:, None, None] * eye, g[..., None])[..., 0]
        trial = retract(xs, step, u, v)
        r_new = residuals(trial, rel)
        c_new = np.sum(r_new * r_new, axis=1)
        ok = c_new < cost[idx]
        acc = idx[ok]
        x[acc] = trial[ok]
        r[acc] = r_new[ok]
        cost[acc] = c_new[ok]
        lam[acc] = np.maximum(lam[acc] / 3.0, 1e-12)
        rej = idx[~ok]
        lam[rej] *= 4.0
        iters[idx] += 1
        # stagnated seeds: step too small to matter
        tiny = np.max(np.abs(step), axis=1) < 1e-15
        active[idx[tiny & ~ok]] = False
        active[idx[lam_i > 1e12]] = False
    return x, np.sqrt(cost), iters
