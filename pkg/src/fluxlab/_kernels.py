"""Numerical kernels for the Hamiltonian flow integration.

The classical Runge-Kutta stepper is compiled with numba when available
(every point advances independently, so the parallel loop stays bit
deterministic); a pure-numpy fallback keeps the package importable
without it.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit, prange
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def _flow_numpy(z0, hx, hy, h, nsteps):
    from numpy.polynomial.polynomial import polyval2d

    def vel(z):
        out = np.empty_like(z)
        out[:, 0] = polyval2d(z[:, 0], z[:, 1], hy)
        out[:, 1] = -polyval2d(z[:, 0], z[:, 1], hx)
        return out

    z = z0.copy()
    for _ in range(nsteps):
        k1 = vel(z)
        k2 = vel(z + 0.5 * h * k1)
        k3 = vel(z + 0.5 * h * k2)
        k4 = vel(z + h * k3)
        z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return z


def _flow_jac_numpy(z0, hx, hy, hxx, hxy, hyy, h, nsteps):
    from numpy.polynomial.polynomial import polyval2d

    def vel(z):
        out = np.empty_like(z)
        out[:, 0] = polyval2d(z[:, 0], z[:, 1], hy)
        out[:, 1] = -polyval2d(z[:, 0], z[:, 1], hx)
        return out

    def dvel_mul(z, j):
        x, y = z[:, 0], z[:, 1]
        a = polyval2d(x, y, hxy)
        b = polyval2d(x, y, hyy)
        c = -polyval2d(x, y, hxx)
        out = np.empty_like(j)
        out[:, 0, 0] = a * j[:, 0, 0] + b * j[:, 1, 0]
        out[:, 0, 1] = a * j[:, 0, 1] + b * j[:, 1, 1]
        out[:, 1, 0] = c * j[:, 0, 0] - a * j[:, 1, 0]
        out[:, 1, 1] = c * j[:, 0, 1] - a * j[:, 1, 1]
        return out

    z = z0.copy()
    jac = np.broadcast_to(np.eye(2), z.shape[:1] + (2, 2)).copy()
    for _ in range(nsteps):
        k1z, k1j = vel(z), dvel_mul(z, jac)
        k2z, k2j = vel(z + 0.5 * h * k1z), dvel_mul(z + 0.5 * h * k1z,
                                                   jac + 0.5 * h * k1j)
        k3z, k3j = vel(z + 0.5 * h * k2z), dvel_mul(z + 0.5 * h * k2z,
                                                    jac + 0.5 * h * k2j)
        k4z, k4j = vel(z + h * k3z), dvel_mul(z + h * k3z, jac + h * k3j)
        z += (h / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
        jac += (h / 6.0) * (k1j + 2.0 * k2j + 2.0 * k3j + k4j)
    return z, jac


if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _pv2(c, x, y):
        acc = 0.0
        for i in range(c.shape[0] - 1, -1, -1):
            inner = c[i, c.shape[1] - 1]
            for j in range(c.shape[1] - 2, -1, -1):
                inner = inner * y + c[i, j]
            acc = acc * x + inner
        return acc

    @njit(cache=True, parallel=True)
    def _flow_numba(z0, hx, hy, h, nsteps):
        n = z0.shape[0]
        out = np.empty_like(z0)
        for p in prange(n):
            x = z0[p, 0]
            y = z0[p, 1]
            for _ in range(nsteps):
                k1x = _pv2(hy, x, y)
                k1y = -_pv2(hx, x, y)
                x2 = x + 0.5 * h * k1x
                y2 = y + 0.5 * h * k1y
                k2x = _pv2(hy, x2, y2)
                k2y = -_pv2(hx, x2, y2)
                x3 = x + 0.5 * h * k2x
                y3 = y + 0.5 * h * k2y
                k3x = _pv2(hy, x3, y3)
                k3y = -_pv2(hx, x3, y3)
                x4 = x + h * k3x
                y4 = y + h * k3y
                k4x = _pv2(hy, x4, y4)
                k4y = -_pv2(hx, x4, y4)
                x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
                y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            out[p, 0] = x
            out[p, 1] = y
        return out

    @njit(cache=True, parallel=True)
    def _flow_jac_numba(z0, hx, hy, hxx, hxy, hyy, h, nsteps):
        n = z0.shape[0]
        out = np.empty_like(z0)
        jac = np.empty((n, 2, 2))
        for p in prange(n):
            x = z0[p, 0]
            y = z0[p, 1]
            j00 = 1.0
            j01 = 0.0
            j10 = 0.0
            j11 = 1.0
            for _ in range(nsteps):
                # stage 1
                k1x = _pv2(hy, x, y)
                k1y = -_pv2(hx, x, y)
                a = _pv2(hxy, x, y)
                b = _pv2(hyy, x, y)
                c = -_pv2(hxx, x, y)
                m100 = a * j00 + b * j10
                m101 = a * j01 + b * j11
                m110 = c * j00 - a * j10
                m111 = c * j01 - a * j11
                # stage 2
                x2 = x + 0.5 * h * k1x
                y2 = y + 0.5 * h * k1y
                t00 = j00 + 0.5 * h * m100
                t01 = j01 + 0.5 * h * m101
                t10 = j10 + 0.5 * h * m110
                t11 = j11 + 0.5 * h * m111
                k2x = _pv2(hy, x2, y2)
                k2y = -_pv2(hx, x2, y2)
                a = _pv2(hxy, x2, y2)
                b = _pv2(hyy, x2, y2)
                c = -_pv2(hxx, x2, y2)
                m200 = a * t00 + b * t10
                m201 = a * t01 + b * t11
                m210 = c * t00 - a * t10
                m211 = c * t01 - a * t11
                # stage 3
                x3 = x + 0.5 * h * k2x
                y3 = y + 0.5 * h * k2y
                t00 = j00 + 0.5 * h * m200
                t01 = j01 + 0.5 * h * m201
                t10 = j10 + 0.5 * h * m210
                t11 = j11 + 0.5 * h * m211
                k3x = _pv2(hy, x3, y3)
                k3y = -_pv2(hx, x3, y3)
                a = _pv2(hxy, x3, y3)
                b = _pv2(hyy, x3, y3)
                c = -_pv2(hxx, x3, y3)
                m300 = a * t00 + b * t10
                m301 = a * t01 + b * t11
                m310 = c * t00 - a * t10
                m311 = c * t01 - a * t11
                # stage 4
                x4 = x + h * k3x
                y4 = y + h * k3y
                t00 = j00 + h * m300
                t01 = j01 + h * m301
                t10 = j10 + h * m310
                t11 = j11 + h * m311
                k4x = _pv2(hy, x4, y4)
                k4y = -_pv2(hx, x4, y4)
                a = _pv2(hxy, x4, y4)
                b = _pv2(hyy, x4, y4)
                c = -_pv2(hxx, x4, y4)
                m400 = a * t00 + b * t10
                m401 = a * t01 + b * t11
                m410 = c * t00 - a * t10
                m411 = c * t01 - a * t11
                x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
                y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
                j00 += (h / 6.0) * (m100 + 2.0 * m200 + 2.0 * m300 + m400)
                j01 += (h / 6.0) * (m101 + 2.0 * m201 + 2.0 * m301 + m401)
                j10 += (h / 6.0) * (m110 + 2.0 * m210 + 2.0 * m310 + m410)
                j11 += (h / 6.0) * (m111 + 2.0 * m211 + 2.0 * m311 + m411)
            out[p, 0] = x
            out[p, 1] = y
            jac[p, 0, 0] = j00
            jac[p, 0, 1] = j01
            jac[p, 1, 0] = j10
            jac[p, 1, 1] = j11
        return out, jac

    ham_flow = _flow_numba
    ham_flow_jac = _flow_jac_numba
else:  # pragma: no cover
    ham_flow = _flow_numpy
    ham_flow_jac = _flow_jac_numpy
