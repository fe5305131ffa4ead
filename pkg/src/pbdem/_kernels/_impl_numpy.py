"""Pure-numpy reference implementations of the hot kernels.

Slow but dependency-free lane used when numba is unavailable or disabled
via PBDEM_NO_NUMBA=1.  The integrators keep the exact operation order of
the numba lane so both produce matching trajectories.
"""

from __future__ import annotations

import numpy as np


def sdof_rk4(forcing_half: np.ndarray, dt: float, zeta: float, omega: float,
             x0: float, v0: float) -> np.ndarray:
    """RK4 for x'' + 2*zeta*omega*x' + omega^2*x = f(t).

    ``forcing_half`` holds f on the dt/2 grid (2*n_steps + 1 values).
    Returns an (n_steps + 1, 2) array of [x, v].
    """
    n_steps = (forcing_half.shape[0] - 1) // 2
    out = np.empty((n_steps + 1, 2))
    x, v = x0, v0
    out[0, 0] = x
    out[0, 1] = v
    c = 2.0 * zeta * omega
    w2 = omega * omega
    for i in range(n_steps):
        f0 = forcing_half[2 * i]
        fm = forcing_half[2 * i + 1]
        f1 = forcing_half[2 * i + 2]
        k1x = v
        k1v = f0 - c * v - w2 * x
        x2 = x + 0.5 * dt * k1x
        v2 = v + 0.5 * dt * k1v
        k2x = v2
        k2v = fm - c * v2 - w2 * x2
        x3 = x + 0.5 * dt * k2x
        v3 = v + 0.5 * dt * k2v
        k3x = v3
        k3v = fm - c * v3 - w2 * x3
        x4 = x + dt * k3x
        v4 = v + dt * k3v
        k4x = v4
        k4v = f1 - c * v4 - w2 * x4
        x = x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        out[i + 1, 0] = x
        out[i + 1, 1] = v
    return out


def _frame_rates(x, v, z, e, ag, m, k, cmat, alpha, a_vec, beta, gamma,
                 delta_v, delta_eta, q_pinch, p_pinch, delta_psi, lam,
                 zeta_s, psi0):
    """State derivatives of the hysteretic shear frame."""
    n = x.shape[0]
    dx = np.empty(n)
    dv = np.empty(n)
    dz = np.empty(n)
    de = np.empty(n)
    fs = np.empty(n)
    for j in range(n):
        drift = x[j] - (x[j - 1] if j > 0 else 0.0)
        fs[j] = alpha * k[j] * drift + (1.0 - alpha) * k[j] * z[j]
    for j in range(n):
        cv = 0.0
        for l in range(n):
            cv += cmat[j, l] * v[l]
        net = fs[j] - (fs[j + 1] if j + 1 < n else 0.0)
        dx[j] = v[j]
        dv[j] = -ag - (cv + net) / m[j]
    for j in range(n):
        vd = v[j] - (v[j - 1] if j > 0 else 0.0)
        ej = e[j]
        zj = z[j]
        zu = a_vec[j] / ((1.0 + delta_v * ej) * (beta + gamma))
        z1 = zeta_s * (1.0 - np.exp(-p_pinch * ej))
        z2 = (psi0 + delta_psi * ej) * (lam + z1)
        sgn = 1.0 if vd > 0.0 else (-1.0 if vd < 0.0 else 0.0)
        u = zj * sgn - q_pinch * zu
        h = 1.0 - z1 * np.exp(-(u * u) / (z2 * z2))
        dz[j] = h / (1.0 + delta_eta * ej) * (
            a_vec[j] * vd - (1.0 + delta_v * ej)
            * (beta * abs(vd) * zj + gamma * vd * abs(zj)))
        de[j] = vd * zj
    return dx, dv, dz, de


def boucwen_rk4(ag_half: np.ndarray, dt: float, m: np.ndarray, k: np.ndarray,
                cmat: np.ndarray, alpha: float, a_vec: np.ndarray,
                beta: float, gamma: float, delta_v: float, delta_eta: float,
                q_pinch: float, p_pinch: float, delta_psi: float, lam: float,
                zeta_s: float, psi0: float):
    """RK4 for the N-story Bouc-Wen shear frame under ground acceleration.

    Returns (x_hist, v_hist, z_hist, e_hist, bad_step) where bad_step is
    the first step index producing a non-finite state, or -1.
    """
    n_steps = (ag_half.shape[0] - 1) // 2
    n = m.shape[0]
    xh = np.zeros((n_steps + 1, n))
    vh = np.zeros((n_steps + 1, n))
    zh = np.zeros((n_steps + 1, n))
    eh = np.zeros((n_steps + 1, n))
    x = np.zeros(n)
    v = np.zeros(n)
    z = np.zeros(n)
    e = np.zeros(n)
    args = (m, k, cmat, alpha, a_vec, beta, gamma, delta_v, delta_eta,
            q_pinch, p_pinch, delta_psi, lam, zeta_s, psi0)
    for i in range(n_steps):
        a0 = ag_half[2 * i]
        am = ag_half[2 * i + 1]
        a1 = ag_half[2 * i + 2]
        k1 = _frame_rates(x, v, z, e, a0, *args)
        k2 = _frame_rates(x + 0.5 * dt * k1[0], v + 0.5 * dt * k1[1],
                          z + 0.5 * dt * k1[2], e + 0.5 * dt * k1[3],
                          am, *args)
        k3 = _frame_rates(x + 0.5 * dt * k2[0], v + 0.5 * dt * k2[1],
                          z + 0.5 * dt * k2[2], e + 0.5 * dt * k2[3],
                          am, *args)
        k4 = _frame_rates(x + dt * k3[0], v + dt * k3[1],
                          z + dt * k3[2], e + dt * k3[3], a1, *args)
        x = x + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        v = v + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        z = z + dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        e = e + dt / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        xh[i + 1] = x
        vh[i + 1] = v
        zh[i + 1] = z
        eh[i + 1] = e
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))
                and np.all(np.isfinite(z)) and np.all(np.isfinite(e))):
            return xh, vh, zh, eh, i + 1
    return xh, vh, zh, eh, -1


def srm_synthesize(amps: np.ndarray, omegas: np.ndarray, phis: np.ndarray,
                   ts: np.ndarray) -> np.ndarray:
    """Sum of cosines  sum_k amps_k * cos(omegas_k * t + phis_k)."""
    return np.cos(np.outer(ts, omegas) + phis) @ amps


def kde_moments(theta: np.ndarray, w: np.ndarray, nodes: np.ndarray,
                inv_b: np.ndarray) -> np.ndarray:
    """Per-node weighted kernel moment sums for local-linear weights.

    Returns (n_nodes, 1 + d + d*(d+1)//2): [S0, S_i, S_ij (upper tri)].
    """
    n, d = theta.shape
    n_nodes = nodes.shape[0]
    n_out = 1 + d + d * (d + 1) // 2
    out = np.zeros((n_nodes, n_out))
    chunk = max(1, 2_000_000 // max(n_nodes, 1))
    for s in range(0, n, chunk):
        th = theta[s:s + chunk]
        ww = w[s:s + chunk]
        diff = th[:, None, :] - nodes[None, :, :]          # (c, m, d)
        u = diff * inv_b
        s2 = np.sum(u * u, axis=2)
        kw = np.where(s2 > 40.0, 0.0, np.exp(-0.5 * s2)) * ww[:, None]
        out[:, 0] += kw.sum(axis=0)
        col = 1
        for i in range(d):
            out[:, col] += (kw * diff[:, :, i]).sum(axis=0)
            col += 1
        for i in range(d):
            for j in range(i, d):
                out[:, col] += (kw * diff[:, :, i] * diff[:, :, j]).sum(axis=0)
                col += 1
    return out


def kde_deposit(theta: np.ndarray, w: np.ndarray, values: np.ndarray,
                nodes: np.ndarray, inv_b: np.ndarray, coef: np.ndarray,
                edges: np.ndarray) -> np.ndarray:
    """Deposit local-linear equivalent weights into value bins per node.

    ``coef`` holds per-node [c0, c_i] so the equivalent weight of point q
    at a node is  K_q * (c0 + sum_i c_i * diff_i).  Returns an
    (n_nodes, n_bins) histogram of weights over ``values``.
    """
    n, d = theta.shape
    n_nodes = nodes.shape[0]
    nb = edges.shape[0] - 1
    hist = np.zeros((n_nodes, nb))
    bins = np.clip(np.searchsorted(edges, values, side="right") - 1, 0, nb - 1)
    hist_t = hist.T  # (nb, n_nodes) view for scatter-add over bins
    chunk = max(1, 2_000_000 // max(n_nodes, 1))
    for s in range(0, n, chunk):
        th = theta[s:s + chunk]
        ww = w[s:s + chunk]
        bb = bins[s:s + chunk]
        diff = th[:, None, :] - nodes[None, :, :]
        u = diff * inv_b
        s2 = np.sum(u * u, axis=2)
        kw = np.where(s2 > 40.0, 0.0, np.exp(-0.5 * s2)) * ww[:, None]
        eq = kw * (coef[None, :, 0]
                   + np.sum(diff * coef[None, :, 1:], axis=2))
        np.add.at(hist_t, bb, eq)
    return hist
