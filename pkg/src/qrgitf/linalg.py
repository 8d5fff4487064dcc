"""Cyclic Jacobi eigensolver for small complex Hermitian matrices.

Works on plain Python lists of complex numbers; at dimension 4 this is
faster than routing through LAPACK with numpy's per-call overhead.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import StructuralError

OFF_TOL = 1e-14
MAX_SWEEPS = 60


def _off_norm(a, n):
    s = 0.0
    for i in range(n):
        row = a[i]
        for j in range(n):
            if i != j:
                z = row[j]
                s += z.real * z.real + z.imag * z.imag
    return math.sqrt(s)


def jacobi_eigh(m, tol=OFF_TOL, vectors=True):
    """Diagonalize a Hermitian matrix with cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Hermitian matrix. Only Hermiticity up to rounding is assumed; the
        caller validates anything stricter.
    tol : float
        Stop once the off-diagonal Frobenius norm drops below
        ``tol * max(1, ||m||_F)``.
    vectors : bool
        Accumulate eigenvectors.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    v : ndarray or None
        Unitary whose columns are the matching eigenvectors.
    """
    arr = np.asarray(m, dtype=complex)
    n = arr.shape[0]
    if n == 2 and not vectors:
        # a single rotation diagonalizes a 2x2 block exactly
        return eigvalsh2(arr), None
    a = [[complex(arr[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)] if vectors else None
    scale = max(1.0, float(np.linalg.norm(arr)))
    thresh = tol * scale

    for _ in range(MAX_SWEEPS):
        if _off_norm(a, n) <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                r = abs(apq)
                if r == 0.0:
                    continue
                app = a[p][p].real
                aqq = a[q][q].real
                phase = apq / r
                # real symmetric 2x2 problem after removing the phase of a_pq
                tau = (aqq - app) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau)) if tau != 0 else 1.0
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g00, g01 = c, s
                g10, g11 = -s * phase.conjugate(), c * phase.conjugate()
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = akp * g00 + akq * g10
                    a[k][q] = akp * g01 + akq * g11
                rp, rq = a[p], a[q]
                for k in range(n):
                    apk, aqk = rp[k], rq[k]
                    rp[k] = g00 * apk + g10.conjugate() * aqk
                    rq[k] = g01 * apk + g11.conjugate() * aqk
                a[p][q] = a[q][p] = 0j
                a[p][p] = complex(a[p][p].real)
                a[q][q] = complex(a[q][q].real)
                if v is not None:
                    for k in range(n):
                        vkp, vkq = v[k][p], v[k][q]
                        v[k][p] = vkp * g00 + vkq * g10
                        v[k][q] = vkp * g01 + vkq * g11
    else:
        if _off_norm(a, n) > thresh:
            raise StructuralError("Jacobi iteration did not converge")

    w = np.array([a[i][i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    w = w[order]
    if v is None:
        return w, None
    vec = np.array(v, dtype=complex)[:, order]
    return w, vec


def eigvalsh2(m):
    """Eigenvalues (ascending) of a stack of 2x2 Hermitian matrices, closed form."""
    m = np.asarray(m)
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    b = m[..., 0, 1]
    half_tr = 0.5 * (a + d)
    rad = np.sqrt(0.25 * (a - d) ** 2 + np.abs(b) ** 2)
    return np.stack([half_tr - rad, half_tr + rad], axis=-1)
