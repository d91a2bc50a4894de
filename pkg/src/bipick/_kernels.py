"""Hot numeric kernels with numba and pure-numpy implementations.

Kernels here are the inner loops that dominate runtime: the cyclic Hermitian
Jacobi sweep, the Aberth simultaneous root iteration, the Dykstra projection
loop for Agler pairs, and batched complex determinants for resultant
evaluation.  `_backend.BACKEND` selects the implementation at import time;
``PICK_NUMBA=0`` forces the numpy path.

Both paths implement the same arithmetic.  The one deliberate asymmetry is
the PSD projection inside the Dykstra loop: the numpy path clips eigenvalues
with ``numpy.linalg.eigh`` (per-rotation Python overhead would dominate
otherwise), while the numba path reuses the jitted Jacobi sweep.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import BACKEND, NUMBA_AVAILABLE

# Off-diagonal Frobenius target for the Jacobi sweep, relative to ||H||_F.
_JACOBI_REL_TARGET = 1e-13
# Per-root relative step size at which the Aberth iteration is converged.
_ABERTH_STEP_TOL = 1e-15


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _jacobi_numpy(h, max_rot):
    """Cyclic complex Jacobi. Returns (unsorted real diag, V, converged).

    A sweep that performs no rotation means every off-diagonal entry sits
    below target/n, so the off-diagonal Frobenius norm is below target.
    """
    n = h.shape[0]
    a = h.astype(np.complex128, copy=True)
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([a[0, 0].real]), v, True
    fro = math.sqrt(float(np.sum(np.abs(a) ** 2)))
    if fro == 0.0:
        return np.zeros(n), v, True
    entry_skip = _JACOBI_REL_TARGET * fro / n
    skip_sq = entry_skip * entry_skip
    rot = 0
    while True:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r_sq = apq.real * apq.real + apq.imag * apq.imag
                if r_sq <= skip_sq:
                    continue
                if rot >= max_rot:
                    return np.real(np.diagonal(a)).copy(), v, False
                rot += 1
                rotated = True
                r = math.sqrt(r_sq)
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / r
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cp = c * phase
                sp = s * phase
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                newp = cp * colp - s * colq
                newq = sp * colp + c * colq
                a[:, p] = newp
                a[:, q] = newq
                a[p, :] = np.conj(newp)
                a[q, :] = np.conj(newq)
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = cp * vp - s * vq
                v[:, q] = sp * vp + c * vq
        if not rotated:
            return np.real(np.diagonal(a)).copy(), v, True


def _horner_numpy(c, z):
    out = np.full_like(z, c[-1])
    for j in range(len(c) - 2, -1, -1):
        out = out * z + c[j]
    return out


def _aberth_numpy(c, z0, max_iter):
    """Aberth-Ehrlich iteration on a monic polynomial (ascending coeffs)."""
    n = z0.shape[0]
    z = z0.astype(np.complex128, copy=True)
    dc = c[1:] * np.arange(1, n + 1)
    for it in range(1, max_iter + 1):
        p = _horner_numpy(c, z)
        dp = _horner_numpy(dc, z)
        dp = np.where(np.abs(dp) > 1e-300, dp, 1e-300 + 0j)
        alpha = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        diff = np.where(np.abs(diff) > 1e-300, diff, 1e-300 + 0j)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        ssum = inv.sum(axis=1)
        denom = 1.0 - alpha * ssum
        denom = np.where(np.abs(denom) > 1e-300, denom, 1e-300 + 0j)
        w = alpha / denom
        z = z - w
        if np.all(np.abs(w) <= _ABERTH_STEP_TOL * (1.0 + np.abs(z))):
            return z, it, True
    return z, max_iter, False


def _psd_clip_numpy(z):
    zh = (z + z.conj().T) * 0.5
    w, v = np.linalg.eigh(zh)
    w = np.maximum(w, 0.0)
    out = (v * w) @ v.conj().T
    return (out + out.conj().T) * 0.5


def _dykstra_numpy(w, l1, l2, g0, d0, res_tol, max_iter):
    """Dykstra alternating projections onto {G.L1 + D.L2 = W} and PSD x PSD."""
    xg = g0.astype(np.complex128, copy=True)
    xd = d0.astype(np.complex128, copy=True)
    pg = np.zeros_like(xg)
    pd = np.zeros_like(xg)
    qg = np.zeros_like(xg)
    qd = np.zeros_like(xg)
    cl1 = np.conj(l1)
    cl2 = np.conj(l2)
    denom = np.abs(l1) ** 2 + np.abs(l2) ** 2
    res = math.inf
    it = 0
    for it in range(1, max_iter + 1):
        yg = xg + pg
        yd = xd + pd
        corr = (w - yg * l1 - yd * l2) / denom
        ag = yg + cl1 * corr
        ad = yd + cl2 * corr
        pg = yg - ag
        pd = yd - ad
        zg = ag + qg
        zd = ad + qd
        xg = _psd_clip_numpy(zg)
        xd = _psd_clip_numpy(zd)
        qg = zg - xg
        qd = zd - xd
        res = float(np.linalg.norm(w - xg * l1 - xd * l2))
        if res <= res_tol:
            return xg, xd, res, it, True
    return xg, xd, res, it, False


def _det_batch_numpy(mats):
    if mats.shape[0] == 0:
        return np.zeros(0, dtype=np.complex128)
    return np.linalg.det(mats)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if NUMBA_AVAILABLE:
    from numba import njit

    @njit(cache=True)
    def _jacobi_nb(h, max_rot):  # pragma: no cover - exercised via dispatch
        n = h.shape[0]
        a = h.copy()
        v = np.eye(n, dtype=np.complex128)
        if n == 1:
            return np.array([a[0, 0].real]), v, True
        fro_sq = 0.0
        for i in range(n):
            for j in range(n):
                re = a[i, j].real
                im = a[i, j].imag
                fro_sq += re * re + im * im
        if fro_sq == 0.0:
            return np.zeros(n), v, True
        entry_skip = _JACOBI_REL_TARGET * math.sqrt(fro_sq) / n
        skip_sq = entry_skip * entry_skip
        rot = 0
        while True:
            rotated = False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    r_sq = apq.real * apq.real + apq.imag * apq.imag
                    if r_sq <= skip_sq:
                        continue
                    if rot >= max_rot:
                        diag = np.empty(n)
                        for i in range(n):
                            diag[i] = a[i, i].real
                        return diag, v, False
                    rot += 1
                    rotated = True
                    r = math.sqrt(r_sq)
                    app = a[p, p].real
                    aqq = a[q, q].real
                    phase = apq / r
                    tau = (aqq - app) / (2.0 * r)
                    if tau >= 0.0:
                        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    cp = c * phase
                    sp = s * phase
                    for k in range(n):
                        if k != p and k != q:
                            akp = a[k, p]
                            akq = a[k, q]
                            newp = cp * akp - s * akq
                            newq = sp * akp + c * akq
                            a[k, p] = newp
                            a[k, q] = newq
                            a[p, k] = np.conj(newp)
                            a[q, k] = np.conj(newq)
                    a[p, p] = app - t * r
                    a[q, q] = aqq + t * r
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for k in range(n):
                        vp = v[k, p]
                        vq = v[k, q]
                        v[k, p] = cp * vp - s * vq
                        v[k, q] = sp * vp + c * vq
            if not rotated:
                diag = np.empty(n)
                for i in range(n):
                    diag[i] = a[i, i].real
                return diag, v, True

    @njit(cache=True)
    def _aberth_nb(c, z0, max_iter):  # pragma: no cover
        n = z0.shape[0]
        z = z0.copy()
        m = c.shape[0]
        dc = np.empty(m - 1, dtype=np.complex128)
        for j in range(1, m):
            dc[j - 1] = c[j] * j
        w = np.empty(n, dtype=np.complex128)
        for it in range(1, max_iter + 1):
            done = True
            for k in range(n):
                zk = z[k]
                p = c[m - 1]
                for j in range(m - 2, -1, -1):
                    p = p * zk + c[j]
                dp = dc[m - 2]
                for j in range(m - 3, -1, -1):
                    dp = dp * zk + dc[j]
                if abs(dp) <= 1e-300:
                    dp = 1e-300 + 0j
                alpha = p / dp
                ssum = 0.0 + 0.0j
                for j in range(n):
                    if j != k:
                        d = zk - z[j]
                        if abs(d) <= 1e-300:
                            d = 1e-300 + 0j
                        ssum += 1.0 / d
                denom = 1.0 - alpha * ssum
                if abs(denom) <= 1e-300:
                    denom = 1e-300 + 0j
                w[k] = alpha / denom
            for k in range(n):
                z[k] = z[k] - w[k]
                if abs(w[k]) > _ABERTH_STEP_TOL * (1.0 + abs(z[k])):
                    done = False
            if done:
                return z, it, True
        return z, max_iter, False

    @njit(cache=True)
    def _psd_clip_nb(z, max_rot):  # pragma: no cover
        n = z.shape[0]
        zh = np.empty_like(z)
        for i in range(n):
            for j in range(n):
                zh[i, j] = (z[i, j] + np.conj(z[j, i])) * 0.5
        w, v, _ = _jacobi_nb(zh, max_rot)
        out = np.zeros_like(z)
        for r in range(n):
            if w[r] > 0.0:
                for i in range(n):
                    for j in range(n):
                        out[i, j] += w[r] * v[i, r] * np.conj(v[j, r])
        for i in range(n):
            for j in range(i, n):
                m = (out[i, j] + np.conj(out[j, i])) * 0.5
                out[i, j] = m
                out[j, i] = np.conj(m)
        return out

    @njit(cache=True)
    def _dykstra_nb(w, l1, l2, g0, d0, res_tol, max_iter):  # pragma: no cover
        n = w.shape[0]
        max_rot = 100 * n * n
        xg = g0.copy()
        xd = d0.copy()
        pg = np.zeros_like(xg)
        pd = np.zeros_like(xg)
        qg = np.zeros_like(xg)
        qd = np.zeros_like(xg)
        res = 1e300
        it = 0
        for it in range(1, max_iter + 1):
            yg = xg + pg
            yd = xd + pd
            ag = np.empty_like(xg)
            ad = np.empty_like(xg)
            for i in range(n):
                for j in range(n):
                    a1 = l1[i, j]
                    a2 = l2[i, j]
                    corr = (w[i, j] - yg[i, j] * a1 - yd[i, j] * a2) / (
                        abs(a1) ** 2 + abs(a2) ** 2
                    )
                    ag[i, j] = yg[i, j] + np.conj(a1) * corr
                    ad[i, j] = yd[i, j] + np.conj(a2) * corr
            for i in range(n):
                for j in range(n):
                    pg[i, j] = yg[i, j] - ag[i, j]
                    pd[i, j] = yd[i, j] - ad[i, j]
            zg = ag + qg
            zd = ad + qd
            xg = _psd_clip_nb(zg, max_rot)
            xd = _psd_clip_nb(zd, max_rot)
            qg = zg - xg
            qd = zd - xd
            res_sq = 0.0
            for i in range(n):
                for j in range(n):
                    res_sq += abs(w[i, j] - xg[i, j] * l1[i, j] - xd[i, j] * l2[i, j]) ** 2
            res = math.sqrt(res_sq)
            if res <= res_tol:
                return xg, xd, res, it, True
        return xg, xd, res, it, False

    @njit(cache=True)
    def _det_batch_nb(mats):  # pragma: no cover
        m = mats.shape[0]
        s = mats.shape[1]
        out = np.empty(m, dtype=np.complex128)
        for k in range(m):
            a = mats[k].copy()
            det = 1.0 + 0.0j
            sign = 1.0
            singular = False
            for col in range(s):
                piv = col
                big = abs(a[col, col])
                for r in range(col + 1, s):
                    if abs(a[r, col]) > big:
                        big = abs(a[r, col])
                        piv = r
                if big == 0.0:
                    singular = True
                    break
                if piv != col:
                    for cc in range(s):
                        tmp = a[col, cc]
                        a[col, cc] = a[piv, cc]
                        a[piv, cc] = tmp
                    sign = -sign
                det *= a[col, col]
                inv = 1.0 / a[col, col]
                for r in range(col + 1, s):
                    f = a[r, col] * inv
                    if f != 0.0 + 0.0j:
                        for cc in range(col + 1, s):
                            a[r, cc] -= f * a[col, cc]
            out[k] = 0.0 + 0.0j if singular else det * sign
        return out

    _NUMBA_IMPLS = {
        "jacobi": _jacobi_nb,
        "aberth": _aberth_nb,
        "dykstra": _dykstra_nb,
        "det_batch": _det_batch_nb,
    }
else:
    _NUMBA_IMPLS = None

_NUMPY_IMPLS = {
    "jacobi": _jacobi_numpy,
    "aberth": _aberth_numpy,
    "dykstra": _dykstra_numpy,
    "det_batch": _det_batch_numpy,
}

#: Implementations by backend name; the numba entry is None when unavailable.
IMPLEMENTATIONS = {"numpy": _NUMPY_IMPLS, "numba": _NUMBA_IMPLS}

_ACTIVE = _NUMBA_IMPLS if BACKEND == "numba" else _NUMPY_IMPLS

jacobi_hermitian = _ACTIVE["jacobi"]
aberth = _ACTIVE["aberth"]
dykstra_pair = _ACTIVE["dykstra"]
det_batch = _ACTIVE["det_batch"]
