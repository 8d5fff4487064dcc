"""Definition-level evaluation of the correlation measures on arbitrary two-qubit states.

These work from the defining optimizations or formulas rather than from
the ground-state closed forms, and are used to cross-check them.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize

from ..errors import ConfigurationError
from ..linalg import eigvalsh2
from ..qcore import (
    PAULI_PAIRS,
    PAULIS,
    _bloch,
    _density_and_spectrum,
    _dephase,
    _marginal_entropy,
    _mutual_information,
    _ptrace,
    check_density_matrix,
    hermitian_eigenvalues,
    marginal_eigenbasis,
    partial_transpose,
    shannon_entropy,
    trace_norm,
)

DISCORD_REFINE_ROUNDS = 3
DISCORD_SHRINK = 10.0
MIN_RESOLUTION = 8
_SIGMA = np.stack(PAULIS)


def oracle_negativity(rho):
    """(||rho^T_A||_1 - 1) / 2."""
    rho = check_density_matrix(rho, dims=(4,))
    return max(0.0, 0.5 * (trace_norm(partial_transpose(rho, "A")) - 1.0))


def _directions(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def conditional_entropy_b(rho, directions):
    """sum_k p_k S(rho_A|k) in bits after a projective measurement on B.

    ``directions`` has shape (K, 3); each row fixes the projector pair
    (I +- n.sigma)/2 on B. Returns an array of length K.
    """
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    nsig = np.einsum("ki,iab->kab", directions, _SIGMA)
    eye = np.eye(2)
    total = np.zeros(len(directions))
    for sign in (1.0, -1.0):
        proj = 0.5 * (eye + sign * nsig)
        # tr_B[(I x P) rho]: sum_{b,c} P_bc rho[a, c, a', b]
        cond = np.einsum("kbc,acdb->kad", proj, r)
        lam = np.clip(eigvalsh2(cond), 0.0, None)
        p = lam.sum(axis=-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            term = np.where(lam > 0, lam * np.log2(np.where(lam > 0, lam, 1.0)), 0.0).sum(axis=-1)
            plogp = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
        total += plogp - term
    return total


def min_conditional_entropy(rho, resolution=64):
    """Minimize the post-measurement conditional entropy over B's projective bases.

    Grid of ``resolution`` x ``2*resolution`` (theta, phi) points followed by
    three rounds that re-grid a window ten times narrower around the best
    point. Returns ``(value, theta, phi)``.
    """
    if resolution < MIN_RESOLUTION:
        raise ConfigurationError(f"resolution must be >= {MIN_RESOLUTION}, got {resolution}")
    n_t, n_p = resolution, 2 * resolution
    t_axis = np.linspace(0.0, math.pi, n_t)
    p_axis = np.linspace(0.0, 2.0 * math.pi, n_p, endpoint=False)
    t_span, p_span = math.pi, 2.0 * math.pi
    best = (math.inf, 0.0, 0.0)
    for rnd in range(DISCORD_REFINE_ROUNDS + 1):
        if rnd:
            t_span /= DISCORD_SHRINK
            p_span /= DISCORD_SHRINK
            t_axis = best[1] + np.linspace(-0.5, 0.5, n_t) * t_span
            p_axis = best[2] + np.linspace(-0.5, 0.5, n_p) * p_span
        tt, pp = np.meshgrid(t_axis, p_axis, indexing="ij")
        vals = conditional_entropy_b(rho, _directions(tt.ravel(), pp.ravel()))
        k = int(np.argmin(vals))
        if vals[k] < best[0]:
            best = (float(vals[k]), float(tt.ravel()[k]), float(pp.ravel()[k]))
    return best


def oracle_discord(rho, resolution=64):
    """Quantum discord with measurement on B, in bits."""
    arr, w = _density_and_spectrum(rho, dims=(4,))
    s_b = _marginal_entropy(arr, "B", "bits")
    cond, _, _ = min_conditional_entropy(arr, resolution)
    return max(0.0, s_b - shannon_entropy(w, "bits") + cond)


def _marginal_bases(rho):
    return marginal_eigenbasis(_ptrace(rho, "A")), marginal_eigenbasis(_ptrace(rho, "B"))


def oracle_mid(rho):
    """I(rho) - I(Pi(rho)) with Pi the dephasing in the marginal eigenbases, in bits.

    Degenerate marginals fall back to the computational basis.
    """
    arr, w = _density_and_spectrum(rho, dims=(4,))
    dephased = _dephase(arr, *_marginal_bases(arr))
    _, w_d = _density_and_spectrum(dephased, dims=(4,))
    return max(0.0, _mutual_information(arr, w, "bits") - _mutual_information(dephased, w_d, "bits"))


def decohered_weights(rho):
    """P_ab = <a b| rho |a b> in the product frame of the marginal eigenbases."""
    return _decohered_weights(check_density_matrix(rho, dims=(4,)))


def _decohered_weights(rho):
    ba, bb = _marginal_bases(rho)
    weights = []
    for ka in ba.kets():
        for kb in bb.kets():
            v = np.kron(ka, kb)
            weights.append((v.conj() @ rho @ v).real)
    return np.array(weights)


def oracle_quantum_deficit(rho):
    """S(rho || rho^d) = sum l ln l - sum P ln P, in nats."""
    arr, w = _density_and_spectrum(rho, dims=(4,))
    return max(0.0, shannon_entropy(_decohered_weights(arr), "nats") - shannon_entropy(w, "nats"))


def oracle_min_gqd(rho, tol=1e-12):
    """(MIN, GQD) from the Bloch decomposition, measurement on A."""
    bd = _bloch(check_density_matrix(rho, dims=(4,)))
    a, T = bd.a, bd.T
    ttt = T @ T.T
    t2 = float(np.sum(T * T))
    a2 = float(a @ a)
    if a2 <= tol:
        nonloc = 0.25 * (t2 - hermitian_eigenvalues(ttt)[-1])
    else:
        nonloc = 0.25 * (t2 - float(a @ ttt @ a) / a2)
    gqd = 0.25 * (a2 + t2 - hermitian_eigenvalues(np.outer(a, a) + ttt)[0])
    return max(0.0, float(nonloc)), max(0.0, float(gqd))


def oracle_chsh(rho):
    """Horodecki value 2 sqrt(u1 + u2), u1 >= u2 the top eigenvalues of T^T T."""
    T = _bloch(check_density_matrix(rho, dims=(4,))).T
    u = hermitian_eigenvalues(T.T @ T)
    return 2.0 * math.sqrt(max(0.0, u[0] + u[1]))


def _unit(theta, phi):
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def chsh_operator(a, a2, b, b2):
    """a.s x (b + b').s + a'.s x (b - b').s for unit 3-vectors."""
    coeff = np.outer(a, np.add(b, b2)) + np.outer(a2, np.subtract(b, b2))
    return np.einsum("ij,ijkl->kl", coeff, PAULI_PAIRS)


def _chsh_from_angles(x, rho):
    vecs = [_unit(x[2 * i], x[2 * i + 1]) for i in range(4)]
    return float(np.trace(rho @ chsh_operator(*vecs)).real)


_GRID_DIRS = np.array(
    [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
    + [[sx, sy, sz] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)],
    dtype=float,
)
_GRID_DIRS /= np.linalg.norm(_GRID_DIRS, axis=1, keepdims=True)


def chsh_direct(rho, starts=6):
    """Maximize tr(rho B_CHSH) over the four measurement directions directly.

    A coarse search over axis and cube-diagonal directions seeds ``starts``
    BFGS refinements in the eight spherical angles.
    """
    rho = check_density_matrix(rho, dims=(4,))
    ops = np.einsum("di,iab->dab", _GRID_DIRS, _SIGMA)
    pair = np.einsum("xab,ycd->xyacbd", ops, ops).reshape(len(ops), len(ops), 4, 4)
    e = np.einsum("xyij,ji->xy", pair, rho).real  # tr(rho (a.s x b.s)) on the grid
    # value(a, a', b, b') = E[a,b] + E[a,b'] + E[a',b] - E[a',b']
    v = (
        e[:, None, :, None]
        + e[:, None, None, :]
        + e[None, :, :, None]
        - e[None, :, None, :]
    )
    flat = np.argsort(v.ravel(), kind="stable")[::-1][:starts]
    best = -math.inf
    for idx in flat:
        ia, ia2, ib, ib2 = np.unravel_index(idx, v.shape)
        x0 = []
        for d in (ia, ia2, ib, ib2):
            x, y, z = _GRID_DIRS[d]
            x0 += [math.acos(max(-1.0, min(1.0, z))), math.atan2(y, x)]
        res = minimize(lambda x: -_chsh_from_angles(x, rho), np.array(x0), method="BFGS", options={"gtol": 1e-9})
        best = max(best, -float(res.fun), float(v.ravel()[idx]))
    return best
